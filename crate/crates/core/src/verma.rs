//! The Verma module `M(λ)` on `ℳ`, its dual on delta functions, and `L(λ)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::catalog::{Catalog, IsoClass};
use crate::embed::{choose_nu_from_socle, embed};
use crate::error::{Error, Result};
use crate::field::{abs, format_rational, rat, Rational, Rationals};
use crate::grassmann::{PointCounter, StratifiedSum};
use crate::hall::{factorial, Hall, MElem, WordBasis};
use crate::matrix;
use crate::pp_algebra::injective_sum;
use crate::root_datum::{DimVector, Weight};

/// `Σ c_x δ_x` at one slice. `beta` is `None` for the zero vector below the
/// positive cone, which is what `E*_i` produces from a slice without `α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSum {
    pub beta: Option<DimVector>,
    pub terms: BTreeMap<IsoClass, Rational>,
}

impl DeltaSum {
    pub fn zero(beta: DimVector) -> Self {
        DeltaSum { beta: Some(beta), terms: BTreeMap::new() }
    }

    pub fn vanishing() -> Self {
        DeltaSum { beta: None, terms: BTreeMap::new() }
    }

    pub fn delta(cat: &Catalog, x: &IsoClass) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(x.clone(), rat(1));
        DeltaSum { beta: Some(cat.dim_of(x)), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &IsoClass) -> Rational {
        self.terms.get(x).copied().unwrap_or_else(|| rat(0))
    }

    fn add_term(&mut self, x: IsoClass, c: Rational) {
        let v = self.coeff(&x) + c;
        if v == rat(0) {
            self.terms.remove(&x);
        } else {
            self.terms.insert(x, v);
        }
    }

    /// `self + c·other`.
    pub fn axpy(&mut self, c: Rational, other: &DeltaSum) -> Result<()> {
        if other.beta.is_none() || c == rat(0) {
            return Ok(());
        }
        match &self.beta {
            None => self.beta = other.beta.clone(),
            Some(b) if Some(b) != other.beta.as_ref() => {
                if other.is_zero() {
                    return Ok(());
                }
                if self.is_zero() {
                    self.beta = other.beta.clone();
                } else {
                    return Err(Error::DimMismatch(format!("adding slices {b} and {}", other.beta.as_ref().unwrap())));
                }
            }
            _ => {}
        }
        for (x, v) in &other.terms {
            self.add_term(x.clone(), c * v);
        }
        Ok(())
    }

    pub fn scaled(&self, c: Rational) -> DeltaSum {
        let mut out = DeltaSum { beta: self.beta.clone(), terms: BTreeMap::new() };
        for (x, v) in &self.terms {
            out.add_term(x.clone(), c * v);
        }
        out
    }

    /// Terms ordered by fingerprint.
    pub fn sorted_terms(&self, cat: &Catalog) -> Vec<(IsoClass, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(x, c)| (x.clone(), *c)).collect();
        v.sort_by_cached_key(|(x, _)| cat.fingerprint(x));
        v
    }

    /// `2 d(q1+s1) - d(s1+s1+s2)`; `0` when empty.
    pub fn display(&self, cat: &Catalog) -> String {
        let mut s = String::new();
        for (x, c) in self.sorted_terms(cat) {
            let neg = c < rat(0);
            let a = abs(&c);
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if a != rat(1) {
                s.push_str(&format_rational(&a));
                s.push(' ');
            }
            s.push_str(&format!("d({})", cat.class_name(&x)));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// One of the Chevalley generators acting on `M(λ)` or `M(λ)*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Op {
    E(usize),
    F(usize),
    H(usize),
}

impl Op {
    /// Change in height of `β`.
    fn shift(self) -> i64 {
        match self {
            Op::E(_) => -1,
            Op::F(_) => 1,
            Op::H(_) => 0,
        }
    }
}

/// `Σ c·(op₁∘⋯∘op_r)`; operators apply right to left.
pub type OpPoly = Vec<(Rational, Vec<Op>)>;

/// Largest height reached above the input slice.
fn raise(p: &OpPoly) -> u32 {
    let mut best = 0i64;
    for (_, w) in p {
        let mut h = 0;
        for op in w.iter().rev() {
            h += op.shift();
            best = best.max(h);
        }
    }
    best as u32
}

/// A relation family checked on one slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorReport {
    pub relation: String,
    pub slice: DimVector,
    /// Largest absolute coordinate of any defect; zero exactly when the relation holds.
    pub defect: Rational,
    pub witnesses: Vec<String>,
}

impl OperatorReport {
    fn new(relation: &str, slice: DimVector) -> Self {
        OperatorReport { relation: relation.into(), slice, defect: rat(0), witnesses: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.defect == rat(0)
    }

    fn record(&mut self, d: Rational, witness: impl FnOnce() -> String) {
        if d != rat(0) {
            if self.witnesses.len() < 8 {
                self.witnesses.push(witness());
            }
            if d > self.defect {
                self.defect = d;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterRow {
    pub beta: DimVector,
    /// Kostant partition count, the graded dimension of `M(λ)`.
    pub verma_dim: u64,
    pub word_rank: usize,
    /// Rank of the delta functionals of all classes.
    pub delta_rank: usize,
    pub l_dim: Option<u64>,
    pub freudenthal: Option<u64>,
}

type UpKey = (IsoClass, Weight, usize);

/// Operators of `M(λ)` and `M(λ)*` over a catalog.
/// Images of a word basis under a primal operator.
type Columns = Rc<Vec<MElem>>;

pub struct Engine<'c> {
    pub hall: Hall<'c>,
    up: RefCell<BTreeMap<UpKey, Rc<StratifiedSum>>>,
    f_cols: RefCell<BTreeMap<(DimVector, usize), Columns>>,
}

impl<'c> Engine<'c> {
    pub fn new(counter: PointCounter<'c>) -> Self {
        Engine { hall: Hall::new(counter), up: RefCell::new(BTreeMap::new()), f_cols: RefCell::new(BTreeMap::new()) }
    }

    pub fn catalog(&self) -> &'c Catalog {
        self.hall.catalog()
    }

    pub fn basis(&self, beta: &DimVector) -> Result<Rc<WordBasis>> {
        self.hall.word_basis(beta)
    }

    pub fn delta(&self, x: &IsoClass) -> DeltaSum {
        DeltaSum::delta(self.catalog(), x)
    }

    /// `ν` with `(ν;α_i) = max(a_i, (λ;α_i), 0)`, `a` the socle of `x`.
    pub fn nu_for(&self, x: &IsoClass, lambda: &Weight) -> Weight {
        choose_nu_from_socle(&self.catalog().socle_of(x), lambda)
    }

    /// Cached `𝒢(x,ν,i)` strata.
    pub fn up(&self, x: &IsoClass, nu: &Weight, i: usize) -> Result<Rc<StratifiedSum>> {
        let key = (x.clone(), nu.clone(), i);
        if let Some(s) = self.up.borrow().get(&key) {
            return Ok(s.clone());
        }
        let s = Rc::new(self.hall.counter.grass_up(x, nu, i)?);
        self.up.borrow_mut().insert(key, s.clone());
        Ok(s)
    }

    pub fn embeddable(&self, x: &IsoClass, lambda: &Weight) -> bool {
        self.catalog().socle_of(x).0.iter().zip(&lambda.0).all(|(&a, &l)| a as i64 <= l)
    }

    // dual side

    pub fn e_star(&self, i: usize, d: &DeltaSum) -> Result<DeltaSum> {
        let Some(beta) = &d.beta else {
            return Ok(DeltaSum::vanishing());
        };
        let Some(lower) = beta.sub_simple(i) else {
            return Ok(DeltaSum::vanishing());
        };
        let mut out = DeltaSum::zero(lower);
        for (x, c) in &d.terms {
            for (y, chi) in &self.hall.down(x, i)?.strata {
                out.add_term(y.clone(), c * rat(*chi as i128));
            }
        }
        Ok(out)
    }

    pub fn f_star(&self, i: usize, lambda: &Weight, d: &DeltaSum) -> Result<DeltaSum> {
        self.f_star_enlarged(i, lambda, d, None)
    }

    /// `F^{λ*}_i` computed with `ν + extra` in place of the minimal choice.
    pub fn f_star_enlarged(&self, i: usize, lambda: &Weight, d: &DeltaSum, extra: Option<&Weight>) -> Result<DeltaSum> {
        let Some(beta) = &d.beta else {
            return Ok(DeltaSum::vanishing());
        };
        let cat = self.catalog();
        let mut out = DeltaSum::zero(beta.add_simple(i));
        let s = cat.simple(i);
        for (x, c) in &d.terms {
            let mut nu = self.nu_for(x, lambda);
            if let Some(e) = extra {
                nu = nu.plus(e);
            }
            for (y, chi) in &self.up(x, &nu, i)?.strata {
                out.add_term(y.clone(), c * rat(*chi as i128));
            }
            let corr = nu.0[i] - lambda.0[i];
            out.add_term(x.add_one(s), -(c * rat(corr as i128)));
        }
        Ok(out)
    }

    /// `F^{λ*}_i δ_x` for an explicitly chosen admissible `ν`.
    pub fn f_star_at(&self, i: usize, lambda: &Weight, x: &IsoClass, nu: &Weight) -> Result<DeltaSum> {
        let cat = self.catalog();
        let socle = cat.socle_of(x);
        if nu.0.iter().zip(&socle.0).any(|(&v, &a)| v < a as i64) {
            return Err(Error::NoEmbedding);
        }
        let mut out = DeltaSum::zero(cat.dim_of(x).add_simple(i));
        for (y, chi) in &self.up(x, nu, i)?.strata {
            out.add_term(y.clone(), rat(*chi as i128));
        }
        out.add_term(x.add_one(cat.simple(i)), -rat((nu.0[i] - lambda.0[i]) as i128));
        Ok(out)
    }

    pub fn h_star(&self, i: usize, lambda: &Weight, d: &DeltaSum) -> DeltaSum {
        match &d.beta {
            None => DeltaSum::vanishing(),
            Some(b) => d.scaled(rat(self.catalog().cartan().weight_pairing(lambda, b, i) as i128)),
        }
    }

    pub fn apply_dual(&self, op: Op, lambda: &Weight, d: &DeltaSum) -> Result<DeltaSum> {
        match op {
            Op::E(i) => self.e_star(i, d),
            Op::F(i) => self.f_star(i, lambda, d),
            Op::H(i) => Ok(self.h_star(i, lambda, d)),
        }
    }

    pub fn apply_dual_word(&self, ops: &[Op], lambda: &Weight, d: &DeltaSum) -> Result<DeltaSum> {
        let mut cur = d.clone();
        for &op in ops.iter().rev() {
            cur = self.apply_dual(op, lambda, &cur)?;
        }
        Ok(cur)
    }

    /// Values of `d` on every word of its slice; empty below the cone.
    pub fn functional(&self, d: &DeltaSum) -> Result<Vec<Rational>> {
        let Some(beta) = &d.beta else {
            return Ok(Vec::new());
        };
        let b = self.basis(beta)?;
        let mut out = vec![rat(0); b.all_words.len()];
        for (x, c) in &d.terms {
            let k = b.class_index(x).ok_or_else(|| Error::DimMismatch(format!("class outside {beta}")))?;
            for (r, o) in out.iter_mut().enumerate() {
                *o += c * b.eval.get(r, k);
            }
        }
        Ok(out)
    }

    /// `⟨d, f⟩ = Σ c_x f(x)`.
    pub fn pair(&self, d: &DeltaSum, f: &MElem) -> Result<Rational> {
        match &d.beta {
            Some(b) if *b == f.beta => {}
            _ if d.is_zero() => return Ok(rat(0)),
            _ => return Err(Error::DimMismatch("pairing across slices".into())),
        }
        let basis = self.basis(&f.beta)?;
        let vals = basis.values(f);
        let mut acc = rat(0);
        for (x, c) in &d.terms {
            let k = basis.class_index(x).ok_or_else(|| Error::DimMismatch("class outside slice".into()))?;
            acc += c * vals[k];
        }
        Ok(acc)
    }

    /// Largest coordinate of `a − b` as a functional.
    pub fn dual_defect(&self, a: &DeltaSum, b: &DeltaSum) -> Result<Rational> {
        let mut d = a.clone();
        d.axpy(rat(-1), b)?;
        Ok(self.functional(&d)?.iter().map(abs).max().unwrap_or_else(|| rat(0)))
    }

    // primal side

    pub fn unit(&self) -> Result<MElem> {
        Ok(self.basis(&DimVector::zero(self.catalog().vertex_count()))?.unit(0))
    }

    pub fn primal_f(&self, i: usize, f: &MElem) -> Result<MElem> {
        let key = (f.beta.clone(), i);
        let cached = self.f_cols.borrow().get(&key).cloned();
        let cols = match cached {
            Some(c) => c,
            None => {
                let src = self.basis(&f.beta)?;
                let dst = self.basis(&f.beta.add_simple(i))?;
                let cols = Rc::new(src.words.iter().map(|w| dst.word(&w.prepend(i))).collect::<Result<Vec<_>>>()?);
                self.f_cols.borrow_mut().insert(key, cols.clone());
                cols
            }
        };
        let beta = f.beta.add_simple(i);
        let mut coeffs = vec![rat(0); self.basis(&beta)?.rank()];
        for (c, col) in f.coeffs.iter().zip(cols.iter()) {
            if *c != rat(0) {
                for (o, v) in coeffs.iter_mut().zip(&col.coeffs) {
                    *o += c * v;
                }
            }
        }
        Ok(MElem { beta, coeffs })
    }

    pub fn primal_e(&self, i: usize, lambda: &Weight, f: &MElem) -> Result<MElem> {
        self.primal_e_enlarged(i, lambda, f, None)
    }

    /// `(E^λ_i f)(x) = ∫_{𝒢(x,ν,i)} f − (ν−λ;α_i) f(x⊕s_i)` on each class `x`.
    pub fn primal_e_enlarged(&self, i: usize, lambda: &Weight, f: &MElem, extra: Option<&Weight>) -> Result<MElem> {
        let cat = self.catalog();
        let lower = f.beta.sub_simple(i).ok_or_else(|| Error::DimMismatch(format!("{} has no α_{}", f.beta, i + 1)))?;
        let top = self.basis(&f.beta)?;
        let vals = top.values(f);
        let at = |y: &IsoClass| vals[top.class_index(y).expect("stratum lies in the slice")];
        let bottom = self.basis(&lower)?;
        let s = cat.simple(i);
        let mut target = Vec::with_capacity(bottom.classes.len());
        for x in &bottom.classes {
            let mut nu = self.nu_for(x, lambda);
            if let Some(e) = extra {
                nu = nu.plus(e);
            }
            let mut v = rat(0);
            for (y, chi) in &self.up(x, &nu, i)?.strata {
                v += rat(*chi as i128) * at(y);
            }
            v -= rat((nu.0[i] - lambda.0[i]) as i128) * at(&x.add_one(s));
            target.push(v);
        }
        bottom.solve(&target)
    }

    pub fn primal_h(&self, i: usize, lambda: &Weight, f: &MElem) -> MElem {
        let c = rat(self.catalog().cartan().weight_pairing(lambda, &f.beta, i) as i128);
        MElem { beta: f.beta.clone(), coeffs: f.coeffs.iter().map(|v| c * v).collect() }
    }

    fn apply_primal(&self, op: Op, lambda: &Weight, f: Option<MElem>) -> Result<Option<MElem>> {
        let Some(f) = f else { return Ok(None) };
        Ok(match op {
            Op::E(i) if f.beta.0[i] == 0 => None,
            Op::E(i) => Some(self.primal_e(i, lambda, &f)?),
            Op::F(i) => Some(self.primal_f(i, &f)?),
            Op::H(i) => Some(self.primal_h(i, lambda, &f)),
        })
    }

    fn apply_primal_word(&self, ops: &[Op], lambda: &Weight, f: &MElem) -> Result<Option<MElem>> {
        let mut cur = Some(f.clone());
        for &op in ops.iter().rev() {
            cur = self.apply_primal(op, lambda, cur)?;
        }
        Ok(cur)
    }

    // L(λ)

    pub fn l_lambda_dim(&self, lambda: &Weight, beta: &DimVector) -> Result<u64> {
        let b = self.basis(beta)?;
        let cols: Vec<usize> = (0..b.classes.len()).filter(|&k| self.embeddable(&b.classes[k], lambda)).collect();
        Ok(matrix::rank(&Rationals, &b.eval.select_columns(&cols)) as u64)
    }

    /// `f` restricted to the classes embeddable in `q_λ`.
    pub fn restrict_r_lambda(&self, f: &MElem, lambda: &Weight) -> Result<Vec<(IsoClass, Rational)>> {
        let b = self.basis(&f.beta)?;
        let vals = b.values(f);
        Ok(b.classes
            .iter()
            .zip(vals)
            .filter(|(x, _)| self.embeddable(x, lambda))
            .map(|(x, v)| (x.clone(), v))
            .collect())
    }

    pub fn character(&self, lambda: &Weight, cutoff: u32) -> Result<Vec<CharacterRow>> {
        let n = self.catalog().vertex_count();
        let roots = self.hall.roots().ok_or(Error::NotFiniteType(n))?;
        let dominant = lambda.is_dominant();
        let mut rows = Vec::new();
        for beta in DimVector::all_up_to(n, cutoff) {
            let b = self.basis(&beta)?;
            let (l_dim, freudenthal) = if dominant {
                (Some(self.l_lambda_dim(lambda, &beta)?), Some(roots.freudenthal_mult(lambda, &beta)?))
            } else {
                (None, None)
            };
            rows.push(CharacterRow {
                verma_dim: roots.kostant_count(&beta),
                word_rank: b.rank(),
                delta_rank: matrix::rank(&Rationals, &b.eval),
                beta,
                l_dim,
                freudenthal,
            });
        }
        Ok(rows)
    }

    // relation harness

    /// The relation families as operator polynomials that must vanish.
    pub fn relations(&self) -> Vec<(&'static str, usize, usize, OpPoly)> {
        let c = self.catalog().cartan();
        let n = self.catalog().vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let a = rat(c.entry(i, j) as i128);
                let mut ef = vec![(rat(1), vec![Op::E(i), Op::F(j)]), (rat(-1), vec![Op::F(j), Op::E(i)])];
                if i == j {
                    ef.push((rat(-1), vec![Op::H(i)]));
                }
                out.push(("[E,F]", i, j, ef));
                out.push((
                    "[H,E]",
                    i,
                    j,
                    vec![(rat(1), vec![Op::H(i), Op::E(j)]), (rat(-1), vec![Op::E(j), Op::H(i)]), (-a, vec![Op::E(j)])],
                ));
                out.push((
                    "[H,F]",
                    i,
                    j,
                    vec![(rat(1), vec![Op::H(i), Op::F(j)]), (rat(-1), vec![Op::F(j), Op::H(i)]), (a, vec![Op::F(j)])],
                ));
                if i != j {
                    let m = (1 - c.entry(i, j)) as usize;
                    for (name, g) in [("Serre E", Op::E as fn(usize) -> Op), ("Serre F", Op::F)] {
                        let mut p = Vec::new();
                        for k in 0..=m {
                            let mut w = vec![g(j); k];
                            w.push(g(i));
                            w.extend(core::iter::repeat_n(g(j), m - k));
                            let s = if k % 2 == 0 { rat(1) } else { rat(-1) };
                            p.push((s / (factorial(k) * factorial(m - k)), w));
                        }
                        out.push((name, i, j, p));
                    }
                }
            }
        }
        out
    }

    /// Every relation family on both sides plus the duality pairings, per slice.
    pub fn verify_relations(&self, lambda: &Weight, cutoff: u32) -> Result<Vec<OperatorReport>> {
        let cat = self.catalog();
        let n = cat.vertex_count();
        let rels = self.relations();
        let mut reports = Vec::new();
        for beta in DimVector::all_up_to(n, cutoff) {
            let h = beta.height();
            let basis = self.basis(&beta)?;
            let mut fams: BTreeMap<String, OperatorReport> = BTreeMap::new();
            for (name, i, j, poly) in &rels {
                if h + raise(poly) > cutoff {
                    continue;
                }
                let dual = fams
                    .entry(format!("dual {name}"))
                    .or_insert_with(|| OperatorReport::new(&format!("dual {name}"), beta.clone()));
                for x in &basis.classes {
                    let d = self.delta(x);
                    let mut acc = DeltaSum::vanishing();
                    for (c, w) in poly {
                        acc.axpy(*c, &self.apply_dual_word(w, lambda, &d)?)?;
                    }
                    let v = self.functional(&acc)?.iter().map(abs).max().unwrap_or_else(|| rat(0));
                    dual.record(v, || {
                        format!("i={} j={} x={} -> {}", i + 1, j + 1, cat.class_name(x), acc.display(cat))
                    });
                }
                let primal = fams
                    .entry(format!("primal {name}"))
                    .or_insert_with(|| OperatorReport::new(&format!("primal {name}"), beta.clone()));
                for k in 0..basis.rank() {
                    let f = basis.unit(k);
                    let mut acc: Option<MElem> = None;
                    for (c, w) in poly {
                        if let Some(g) = self.apply_primal_word(w, lambda, &f)? {
                            let a = acc.get_or_insert_with(|| MElem {
                                beta: g.beta.clone(),
                                coeffs: vec![rat(0); g.coeffs.len()],
                            });
                            for (o, v) in a.coeffs.iter_mut().zip(&g.coeffs) {
                                *o += c * v;
                            }
                        }
                    }
                    let v =
                        acc.map(|a| a.coeffs.iter().map(abs).max().unwrap_or_else(|| rat(0))).unwrap_or_else(|| rat(0));
                    primal.record(v, || format!("i={} j={} word={:?}", i + 1, j + 1, basis.words[k].0));
                }
            }
            let mut pe = OperatorReport::new("pairing E*/F", beta.clone());
            let mut pf = OperatorReport::new("pairing F*/E", beta.clone());
            for i in 0..n {
                if let Some(lower) = beta.sub_simple(i) {
                    let lb = self.basis(&lower)?;
                    for x in &basis.classes {
                        let ed = self.e_star(i, &self.delta(x))?;
                        for k in 0..lb.rank() {
                            let f = lb.unit(k);
                            let d = abs(&(self.pair(&ed, &f)? - self.pair(&self.delta(x), &self.primal_f(i, &f)?)?));
                            pe.record(d, || format!("i={} x={} word={:?}", i + 1, cat.class_name(x), lb.words[k].0));
                        }
                    }
                }
                if h < cutoff {
                    let ub = self.basis(&beta.add_simple(i))?;
                    for x in &basis.classes {
                        let fd = self.f_star(i, lambda, &self.delta(x))?;
                        for k in 0..ub.rank() {
                            let f = ub.unit(k);
                            let d =
                                abs(&(self.pair(&fd, &f)?
                                    - self.pair(&self.delta(x), &self.primal_e(i, lambda, &f)?)?));
                            pf.record(d, || format!("i={} x={} word={:?}", i + 1, cat.class_name(x), ub.words[k].0));
                        }
                    }
                }
            }
            reports.extend(fams.into_values());
            reports.push(pe);
            if h < cutoff {
                reports.push(pf);
            }
        }
        Ok(reports)
    }

    /// `(F*_i)^{(λ;α_i)+1} δ_𝟎` vanishes, also against restricted word functions.
    pub fn integrability_check(&self, lambda: &Weight) -> Result<OperatorReport> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant);
        }
        let cat = self.catalog();
        let n = cat.vertex_count();
        let mut rep = OperatorReport::new("integrability", DimVector::zero(n));
        for i in 0..n {
            let k = lambda.0[i] as usize + 1;
            let mut d = self.delta(&cat.zero_class());
            for _ in 0..k {
                d = self.f_star(i, lambda, &d)?;
            }
            let v = self.functional(&d)?.iter().map(abs).max().unwrap_or_else(|| rat(0));
            rep.record(v, || format!("i={} -> {}", i + 1, d.display(cat)));
            let beta = DimVector::simple(n, i);
            let beta = DimVector(beta.0.iter().map(|b| b * k as u32).collect());
            let b = self.basis(&beta)?;
            for u in 0..b.rank() {
                let f = b.unit(u);
                let mut acc = rat(0);
                for (y, val) in self.restrict_r_lambda(&f, lambda)? {
                    acc += d.coeff(&y) * val;
                }
                rep.record(abs(&acc), || format!("i={} word={:?}", i + 1, b.words[u].0));
            }
        }
        Ok(rep)
    }

    /// `r_λ` commutes with `E_i` (integrating over `𝒢(x,λ,i)`) and `F_i` on every slice.
    pub fn intertwining_check(&self, lambda: &Weight, cutoff: u32) -> Result<Vec<OperatorReport>> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant);
        }
        let cat = self.catalog();
        let n = cat.vertex_count();
        let mut out = Vec::new();
        for beta in DimVector::all_up_to(n, cutoff) {
            let basis = self.basis(&beta)?;
            let mut re = OperatorReport::new("r_lambda E", beta.clone());
            let mut rf = OperatorReport::new("r_lambda F", beta.clone());
            for k in 0..basis.rank() {
                let f = basis.unit(k);
                let rest: BTreeMap<IsoClass, Rational> = self.restrict_r_lambda(&f, lambda)?.into_iter().collect();
                for i in 0..n {
                    if beta.0[i] > 0 {
                        let lhs = self.restrict_r_lambda(&self.primal_e(i, lambda, &f)?, lambda)?;
                        for (x, v) in lhs {
                            let mut w = rat(0);
                            for (y, chi) in &self.up(&x, lambda, i)?.strata {
                                w += rat(*chi as i128) * rest[y];
                            }
                            re.record(abs(&(v - w)), || {
                                format!("i={} x={} word={:?}", i + 1, cat.class_name(&x), basis.words[k].0)
                            });
                        }
                    }
                    if beta.height() < cutoff {
                        let lhs = self.restrict_r_lambda(&self.primal_f(i, &f)?, lambda)?;
                        for (x, v) in lhs {
                            let mut w = rat(0);
                            for (y, chi) in &self.hall.down(&x, i)?.strata {
                                w += rat(*chi as i128) * rest[y];
                            }
                            rf.record(abs(&(v - w)), || {
                                format!("i={} x={} word={:?}", i + 1, cat.class_name(&x), basis.words[k].0)
                            });
                        }
                    }
                }
            }
            out.push(re);
            if beta.height() < cutoff {
                out.push(rf);
            }
        }
        Ok(out)
    }

    /// `F*` and `E^λ` agree for `ν` and every `ν + ϖ_j`.
    pub fn nu_independence_check(&self, lambda: &Weight, cutoff: u32) -> Result<Vec<OperatorReport>> {
        let cat = self.catalog();
        let n = cat.vertex_count();
        let mut out = Vec::new();
        for beta in DimVector::all_up_to(n, cutoff) {
            let basis = self.basis(&beta)?;
            let mut rs = OperatorReport::new("nu-independence F*", beta.clone());
            let mut re = OperatorReport::new("nu-independence E", beta.clone());
            for j in 0..n {
                let extra = Weight::fundamental(n, j);
                for i in 0..n {
                    if beta.height() < cutoff {
                        for x in &basis.classes {
                            let d = self.delta(x);
                            let a = self.f_star(i, lambda, &d)?;
                            let b = self.f_star_enlarged(i, lambda, &d, Some(&extra))?;
                            rs.record(self.dual_defect(&a, &b)?, || {
                                format!("i={} j={} x={}", i + 1, j + 1, cat.class_name(x))
                            });
                        }
                    }
                    if beta.0[i] > 0 {
                        for k in 0..basis.rank() {
                            let f = basis.unit(k);
                            let a = self.primal_e(i, lambda, &f)?;
                            let b = self.primal_e_enlarged(i, lambda, &f, Some(&extra))?;
                            let d = a
                                .coeffs
                                .iter()
                                .zip(&b.coeffs)
                                .map(|(u, v)| abs(&(u - v)))
                                .max()
                                .unwrap_or_else(|| rat(0));
                            re.record(d, || format!("i={} j={} word={:?}", i + 1, j + 1, basis.words[k].0));
                        }
                    }
                }
            }
            if beta.height() < cutoff {
                out.push(rs);
            }
            out.push(re);
        }
        Ok(out)
    }

    /// `φ_i` of `x ⊂ q_λ`, from an embedding over the first prime.
    pub fn phi(&self, x: &IsoClass, lambda: &Weight) -> Result<Vec<i64>> {
        let cat = self.catalog();
        let dq = cat.quiver();
        let red = self.hall.counter.field_at(0)?;
        let q = injective_sum(dq, lambda)?.reduce(&red.field)?;
        let e = embed(dq, &cat.representative(x).reduce(&red.field)?, &q)?;
        Ok((0..cat.vertex_count()).map(|i| e.phi(dq, i) as i64).collect())
    }

    /// `φ_i − ε_i = (λ−β;α_i)` on embeddable classes and the step law along `𝒢(x,λ,i)`.
    pub fn phi_epsilon_check(&self, lambda: &Weight, cutoff: u32) -> Result<Vec<OperatorReport>> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant);
        }
        let cat = self.catalog();
        let c = cat.cartan();
        let n = cat.vertex_count();
        let mut out = Vec::new();
        for beta in DimVector::all_up_to(n, cutoff) {
            let mut law = OperatorReport::new("phi-epsilon", beta.clone());
            let mut step = OperatorReport::new("phi-epsilon step", beta.clone());
            for x in cat.classes_at(&beta)? {
                if !self.embeddable(&x, lambda) {
                    continue;
                }
                let phi = self.phi(&x, lambda)?;
                let eps = cat.head_of(&x);
                let diff: Vec<i64> = (0..n).map(|i| phi[i] - eps.0[i] as i64).collect();
                for i in 0..n {
                    let d = diff[i] - c.weight_pairing(lambda, &beta, i);
                    law.record(rat(d.abs() as i128), || format!("i={} x={}", i + 1, cat.class_name(&x)));
                }
                if beta.height() == cutoff {
                    continue;
                }
                for i in 0..n {
                    for (y, _) in &self.up(&x, lambda, i)?.strata {
                        let phy = self.phi(y, lambda)?;
                        let epy = cat.head_of(y);
                        for j in 0..n {
                            let d = (phy[j] - epy.0[j] as i64) - (diff[j] - c.entry(i, j));
                            step.record(rat(d.abs() as i128), || {
                                format!("i={} j={} x={} y={}", i + 1, j + 1, cat.class_name(&x), cat.class_name(y))
                            });
                        }
                    }
                }
            }
            out.push(law);
            if beta.height() < cutoff {
                out.push(step);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::DEFAULT_PRIMES;
    use crate::root_datum::Graph;

    fn a2(cutoff: u32) -> Catalog {
        Catalog::build(&Graph::builtin("A2").unwrap(), cutoff).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn dual_operators_on_small_classes() {
        let cat = a2(4);
        let eng = Engine::new(PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap());
        let lam = w(&[1, 1]);
        let c = |s: &str| cat.class_by_name(s).unwrap();
        let zero = eng.delta(&cat.zero_class());
        assert_eq!(eng.f_star(0, &lam, &zero).unwrap(), eng.delta(&c("s1")));
        assert_eq!(eng.e_star(0, &eng.delta(&c("s1"))).unwrap(), zero);
        assert!(eng.e_star(0, &zero).unwrap().beta.is_none());
        let x = eng.delta(&c("s1+s1"));
        assert_eq!(eng.e_star(0, &x).unwrap(), eng.delta(&c("s1")).scaled(rat(2)));
        assert!(eng.e_star(1, &eng.delta(&c("q2"))).unwrap().is_zero());
        assert_eq!(eng.f_star(1, &lam, &x).unwrap().display(&cat), "2 d(q1+s1) + d(s1+s1+s2)");
        assert_eq!(eng.f_star(0, &lam, &x).unwrap().display(&cat), "-d(s1+s1+s1)");
        assert_eq!(eng.h_star(0, &lam, &eng.delta(&c("s1"))).coeff(&c("s1")), rat(-1));
        assert_eq!(eng.h_star(1, &lam, &eng.delta(&c("s1"))).coeff(&c("s1")), rat(2));
    }

    #[test]
    fn primal_operators() {
        let cat = a2(4);
        let eng = Engine::new(PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap());
        let u = eng.unit().unwrap();
        let f1 = eng.primal_f(0, &u).unwrap();
        assert_eq!(f1.coeffs, vec![rat(1)]);
        assert_eq!(eng.primal_e(0, &w(&[1, 1]), &f1).unwrap(), u);
        assert_eq!(eng.primal_e(0, &w(&[0, 0]), &f1).unwrap().coeffs, vec![rat(0)]);
        assert!(eng.primal_e(0, &w(&[1, 1]), &u).is_err());
        let f21 = eng.primal_f(1, &f1).unwrap();
        let b = eng.basis(&DimVector(vec![1, 1])).unwrap();
        assert_eq!(f21, b.word(&crate::hall::Word(vec![1, 0])).unwrap());
        let f12 = b.word(&crate::hall::Word(vec![0, 1])).unwrap();
        let r: Vec<Rational> = eng.restrict_r_lambda(&f12, &w(&[1, 1])).unwrap().into_iter().map(|(_, v)| v).collect();
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn small_relations_hold() {
        let cat = a2(4);
        let eng = Engine::new(PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap());
        for lam in [w(&[1, 1]), w(&[-1, 0])] {
            for r in eng.verify_relations(&lam, 4).unwrap() {
                assert!(r.pass(), "{} at {}: {:?}", r.relation, r.slice, r.witnesses);
            }
        }
        let total: u64 = eng.character(&w(&[1, 1]), 4).unwrap().iter().map(|r| r.l_dim.unwrap()).sum();
        assert_eq!(total, 8);
        assert!(eng.integrability_check(&w(&[1, 1])).unwrap().pass());
    }
}
