//! Catalog of indecomposable modules up to a height cutoff, and
//! classification of arbitrary modules by their hom-vector against it.
//!
//! A module `y` is determined up to isomorphism by the numbers
//! `dim Hom(m_k, y)` over the indecomposables `m_k`. With
//! `H[k][j] = dim Hom(m_k, m_j)` invertible, the multiplicities of the
//! summands of `y` are `H⁻¹ v`. Invertibility is checked, never assumed,
//! and `H` is checked to be the same over every field in use.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{rat, Field, Fp, Rational, Rationals};
use crate::lambda_mod::{hom_dim, indecomposables_isomorphic, is_indecomposable, Module};
use crate::matrix::{self, Matrix};
use crate::pp_algebra::{double_quiver, injective_module, DoubleQuiver};
use crate::root_datum::{build_cartan, CartanMatrix, DimVector, Graph};

/// Tuples per slice above which the cross-check over a second field is
/// skipped.
const CROSS_CHECK_BUDGET: u64 = 200_000;

/// Iso-class of a module: multiplicity of each catalog indecomposable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoClass(pub Vec<u32>);

impl IsoClass {
    pub fn zero(n_indecs: usize) -> Self {
        IsoClass(vec![0; n_indecs])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn plus(&self, other: &IsoClass) -> IsoClass {
        IsoClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_one(&self, k: usize) -> IsoClass {
        let mut v = self.clone();
        v.0[k] += 1;
        v
    }
}

#[derive(Clone, Debug)]
pub struct Indecomposable {
    pub name: String,
    pub dim: DimVector,
    pub rep: Module<Rationals>,
}

/// The indecomposables reduced to one field, with the hom matrix checked.
#[derive(Clone, Debug)]
pub struct Reduced<F: Field> {
    pub field: F,
    pub mods: Vec<Module<F>>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    graph: Graph,
    dq: DoubleQuiver,
    cartan: CartanMatrix,
    cutoff: u32,
    indecs: Vec<Indecomposable>,
    hom: Matrix<Rational>,
    hom_inv: Matrix<Rational>,
    simple_index: Vec<usize>,
    over_q: Reduced<Rationals>,
}

/// Summary of the catalog build, for reporting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// `(β, indecomposables over F₂, over F₃ if checked, over F₅ if checked)`.
    pub slices: Vec<(DimVector, usize, Option<usize>, Option<usize>)>,
}

impl Catalog {
    pub fn build(graph: &Graph, cutoff: u32) -> Result<Self> {
        Ok(Self::build_with_stats(graph, cutoff)?.0)
    }

    pub fn build_with_stats(graph: &Graph, cutoff: u32) -> Result<(Self, BuildStats)> {
        let dq = double_quiver(graph);
        let cartan = build_cartan(graph)?;
        let n = graph.vertex_count();
        let f2 = Fp::new(2)?;
        let f3 = Fp::new(3)?;
        let f5 = Fp::new(5)?;
        let injectives: Vec<Module<Rationals>> = (0..n).map(|i| injective_module(&dq, i)).collect::<Result<_>>()?;
        let max_ind = injectives.iter().map(|q| q.total_dim() as u32).max().unwrap_or(1);
        let enum_height = cutoff.min(max_ind + 1);
        let mut stats = BuildStats::default();
        let mut found: Vec<Indecomposable> = Vec::new();
        for beta in DimVector::all_up_to(n, enum_height) {
            if beta.is_zero() {
                continue;
            }
            let dims: Vec<usize> = beta.0.iter().map(|&b| b as usize).collect();
            let reps2 = indecomposables_over(&dq, &f2, &dims, 64)?;
            let budget = tuple_count(&dq, &dims, 3);
            let c3 =
                if budget <= CROSS_CHECK_BUDGET { Some(indecomposables_over(&dq, &f3, &dims, 1)?.len()) } else { None };
            let c5 = if tuple_count(&dq, &dims, 5) <= CROSS_CHECK_BUDGET / 4 {
                Some(indecomposables_over(&dq, &f5, &dims, 1)?.len())
            } else {
                None
            };
            for c in [c3, c5].into_iter().flatten() {
                if c != reps2.len() {
                    return Err(Error::LiftMismatch(format!(
                        "{} indecomposables of dimension {beta} over F2 but {c} over a larger field",
                        reps2.len()
                    )));
                }
            }
            stats.slices.push((beta.clone(), reps2.len(), c3, c5));
            for class_reps in reps2 {
                let rep = lift_to_rationals(&dq, &class_reps)
                    .ok_or_else(|| Error::LiftMismatch(format!("no rational lift of a class at {beta}")))?;
                found.push(Indecomposable { name: String::new(), dim: beta.clone(), rep });
            }
        }
        if enum_height == max_ind + 1 && found.iter().any(|m| m.dim.height() == enum_height) {
            return Err(Error::LiftMismatch(format!("indecomposable of height {enum_height} exceeds every injective")));
        }
        name_indecomposables(&dq, &injectives, &mut found)?;
        let catalog = Self::assemble(graph.clone(), dq, cartan, cutoff, found)?;
        // the hom matrix over F₃ must agree with the rational one
        catalog.reduced(f3)?;
        Ok((catalog, stats))
    }

    fn assemble(
        graph: Graph,
        dq: DoubleQuiver,
        cartan: CartanMatrix,
        cutoff: u32,
        indecs: Vec<Indecomposable>,
    ) -> Result<Self> {
        let q = Rationals;
        let k = indecs.len();
        let mut hom = matrix::zeros(&q, k, k);
        for a in 0..k {
            for b in 0..k {
                hom.set(a, b, rat(hom_dim(&dq, &indecs[a].rep, &indecs[b].rep)? as i128));
            }
        }
        let hom_inv = matrix::inverse(&q, &hom)
            .ok_or_else(|| Error::ClassMatchFailure("hom matrix of the indecomposables is singular".into()))?;
        let n = graph.vertex_count();
        let simple_index = (0..n)
            .map(|i| indecs.iter().position(|m| m.dim == DimVector::simple(n, i)).ok_or(Error::CatalogMissing))
            .collect::<Result<_>>()?;
        let over_q = Reduced { field: Rationals, mods: indecs.iter().map(|m| m.rep.clone()).collect() };
        Ok(Catalog { graph, dq, cartan, cutoff, indecs, hom, hom_inv, simple_index, over_q })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn quiver(&self) -> &DoubleQuiver {
        &self.dq
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn indecomposables(&self) -> &[Indecomposable] {
        &self.indecs
    }

    /// `H[k][j] = dim Hom(m_k, m_j)`.
    pub fn hom_matrix(&self) -> &Matrix<Rational> {
        &self.hom
    }

    /// Catalog index of the simple `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        self.simple_index[i]
    }

    pub fn over_rationals(&self) -> &Reduced<Rationals> {
        &self.over_q
    }

    /// Reductions modulo `p`, checked indecomposable with the same hom matrix.
    pub fn reduced(&self, fp: Fp) -> Result<Reduced<Fp>> {
        let mods: Vec<Module<Fp>> = self.indecs.iter().map(|m| m.rep.reduce(&fp)).collect::<Result<_>>()?;
        for (m, src) in mods.iter().zip(&self.indecs) {
            if !is_indecomposable(&self.dq, m)? {
                return Err(Error::LiftMismatch(format!("{} decomposes modulo {}", src.name, fp.prime())));
            }
        }
        for a in 0..mods.len() {
            for b in 0..mods.len() {
                if rat(hom_dim(&self.dq, &mods[a], &mods[b])? as i128) != *self.hom.get(a, b) {
                    return Err(Error::LiftMismatch(format!(
                        "Hom({}, {}) changes modulo {}",
                        self.indecs[a].name,
                        self.indecs[b].name,
                        fp.prime()
                    )));
                }
            }
        }
        Ok(Reduced { field: fp, mods })
    }

    pub fn zero_class(&self) -> IsoClass {
        IsoClass::zero(self.indecs.len())
    }

    pub fn simple_class(&self, i: usize) -> IsoClass {
        self.zero_class().add_one(self.simple(i))
    }

    pub fn dim_of(&self, c: &IsoClass) -> DimVector {
        let mut d = DimVector::zero(self.vertex_count());
        for (k, &m) in c.0.iter().enumerate() {
            for _ in 0..m {
                d = d.plus(&self.indecs[k].dim);
            }
        }
        d
    }

    /// Hom-vector `(dim Hom(m_k, x))_k` of a class.
    pub fn fingerprint(&self, c: &IsoClass) -> Vec<u64> {
        (0..self.indecs.len())
            .map(|k| c.0.iter().enumerate().map(|(j, &m)| m as u64 * self.hom.get(k, j).to_integer() as u64).sum())
            .collect()
    }

    /// Socle multiplicities `dim Hom(s_i, x)`.
    pub fn socle_of(&self, c: &IsoClass) -> DimVector {
        let fp = self.fingerprint(c);
        DimVector((0..self.vertex_count()).map(|i| fp[self.simple(i)] as u32).collect())
    }

    /// Head multiplicities `ε_i(x) = dim Hom(x, s_i)`.
    pub fn head_of(&self, c: &IsoClass) -> DimVector {
        DimVector(
            (0..self.vertex_count())
                .map(|i| {
                    let s = self.simple(i);
                    c.0.iter().enumerate().map(|(j, &m)| m * self.hom.get(j, s).to_integer() as u32).sum()
                })
                .collect(),
        )
    }

    pub fn fingerprint_hex(&self, c: &IsoClass) -> String {
        let mut s = String::new();
        for v in self.fingerprint(c) {
            let _ = write!(s, "{v:x}");
            s.push('.');
        }
        s.pop();
        s
    }

    /// Summand names joined by `+` in alphabetical order; `0` for zero.
    pub fn class_name(&self, c: &IsoClass) -> String {
        let mut parts: Vec<&str> = Vec::new();
        for (k, &m) in c.0.iter().enumerate() {
            for _ in 0..m {
                parts.push(&self.indecs[k].name);
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.sort_unstable();
        parts.join("+")
    }

    pub fn class_by_name(&self, name: &str) -> Result<IsoClass> {
        let mut c = self.zero_class();
        if name.trim() == "0" {
            return Ok(c);
        }
        for part in name.split('+') {
            let k = self
                .indecs
                .iter()
                .position(|m| m.name == part.trim())
                .ok_or_else(|| Error::Invalid(format!("unknown indecomposable {part:?}")))?;
            c.0[k] += 1;
        }
        Ok(c)
    }

    /// Canonical rational representative: direct sum of the summands in
    /// catalog order.
    pub fn representative(&self, c: &IsoClass) -> Module<Rationals> {
        let mut out = Module::zero(Rationals, &self.dq);
        for (k, &m) in c.0.iter().enumerate() {
            for _ in 0..m {
                out = out.direct_sum(&self.indecs[k].rep);
            }
        }
        out
    }

    /// Every iso-class of dimension `β`, in increasing order.
    pub fn classes_at(&self, beta: &DimVector) -> Result<Vec<IsoClass>> {
        if beta.height() > self.cutoff {
            return Err(Error::CatalogMissing);
        }
        let mut out = Vec::new();
        let mut cur = self.zero_class();
        self.partitions(beta.clone(), 0, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    fn partitions(&self, rest: DimVector, from: usize, cur: &mut IsoClass, out: &mut Vec<IsoClass>) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for k in from..self.indecs.len() {
            if let Some(r) = rest.checked_sub(&self.indecs[k].dim) {
                cur.0[k] += 1;
                self.partitions(r, k, cur, out);
                cur.0[k] -= 1;
            }
        }
    }

    /// Classify a module over a field on which the catalog was reduced.
    pub fn classify<F: Field>(&self, red: &Reduced<F>, y: &Module<F>) -> Result<IsoClass> {
        let beta = y.dim_vector();
        if beta.height() > self.cutoff {
            return Err(Error::CatalogMissing);
        }
        let v: Vec<Rational> =
            red.mods.iter().map(|m| hom_dim(&self.dq, m, y).map(|d| rat(d as i128))).collect::<Result<_>>()?;
        self.class_from_homs(&v, &beta)
    }

    /// Invert a hom-vector; fails unless the result is a nonnegative
    /// integral class of the expected dimension.
    pub fn class_from_homs(&self, v: &[Rational], beta: &DimVector) -> Result<IsoClass> {
        let q = Rationals;
        let mult = matrix::mul_vec(&q, &self.hom_inv, v);
        let mut c = Vec::with_capacity(mult.len());
        for m in &mult {
            if !m.is_integer() || *m < Rational::zero() {
                return Err(Error::ClassMatchFailure(format!("hom-vector inverts to {m}")));
            }
            c.push(m.to_integer() as u32);
        }
        let c = IsoClass(c);
        if &self.dim_of(&c) != beta {
            return Err(Error::ClassMatchFailure(format!("class has dimension {}, expected {beta}", self.dim_of(&c))));
        }
        Ok(c)
    }

    /// Krull-Schmidt decomposition of a rational module.
    pub fn decompose(&self, x: &Module<Rationals>) -> Result<IsoClass> {
        self.classify(&self.over_q, x)
    }

    pub fn iso_test(&self, x: &Module<Rationals>, y: &Module<Rationals>) -> Result<bool> {
        if x.dims() != y.dims() {
            return Ok(false);
        }
        Ok(self.decompose(x)? == self.decompose(y)?)
    }
}

fn name_indecomposables(
    dq: &DoubleQuiver,
    injectives: &[Module<Rationals>],
    found: &mut Vec<Indecomposable>,
) -> Result<()> {
    let n = dq.vertex_count();
    let f2 = Fp::new(2)?;
    let mut tagged: Vec<(u8, usize, Indecomposable)> = Vec::new();
    for (pos, m) in found.drain(..).enumerate() {
        let simple = (0..n).find(|&i| m.dim == DimVector::simple(n, i));
        let mut kind = (2u8, pos);
        if let Some(i) = simple {
            kind = (0, i);
        } else {
            let m2 = m.rep.reduce(&f2)?;
            for (i, q) in injectives.iter().enumerate() {
                if q.dims() == m.rep.dims() && indecomposables_isomorphic(dq, &q.reduce(&f2)?, &m2)? {
                    kind = (1, i);
                }
            }
        }
        tagged.push((kind.0, kind.1, m));
    }
    tagged.sort_by(|a, b| {
        a.2.dim.height().cmp(&b.2.dim.height()).then(b.2.dim.cmp(&a.2.dim)).then((a.0, a.1).cmp(&(b.0, b.1)))
    });
    let mut other = 0;
    for (kind, i, mut m) in tagged {
        m.name = match kind {
            0 => format!("s{}", i + 1),
            1 => format!("q{}", i + 1),
            _ => {
                other += 1;
                format!("m{other}")
            }
        };
        found.push(m);
    }
    Ok(())
}

/// Matrix shapes and the arrow brought to rank normal form.
fn layout(dq: &DoubleQuiver, dims: &[usize]) -> (Vec<(usize, usize)>, Option<usize>) {
    let shapes: Vec<(usize, usize)> = dq.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let first = shapes.iter().position(|&(r, c)| r * c > 0);
    (shapes, first)
}

fn tuple_count(dq: &DoubleQuiver, dims: &[usize], p: u64) -> u64 {
    let (shapes, first) = layout(dq, dims);
    let mut bits = 0u32;
    let mut ranks = 1u64;
    for (a, &(r, c)) in shapes.iter().enumerate() {
        if Some(a) == first {
            ranks = r.min(c) as u64 + 1;
        } else {
            bits += (r * c) as u32;
        }
    }
    p.checked_pow(bits).map(|v| v.saturating_mul(ranks)).unwrap_or(u64::MAX)
}

/// Representatives of the indecomposable classes of dimension `dims` over
/// `F_p`: up to `keep` sample modules per class.
fn indecomposables_over(dq: &DoubleQuiver, fp: &Fp, dims: &[usize], keep: usize) -> Result<Vec<Vec<Module<Fp>>>> {
    let (shapes, first) = layout(dq, dims);
    let height: usize = dims.iter().sum();
    let mut classes: Vec<Vec<Module<Fp>>> = Vec::new();
    if height == 1 {
        classes.push(vec![Module::all_zero(*fp, dq, dims.to_vec())]);
        return Ok(classes);
    }
    let Some(first) = first else {
        // semisimple of height > 1 only
        return Ok(classes);
    };
    let p = fp.prime();
    let free: Vec<usize> = (0..shapes.len()).filter(|&a| a != first).collect();
    let total: usize = free.iter().map(|&a| shapes[a].0 * shapes[a].1).sum();
    let (fr, fc) = shapes[first];
    for r in 0..=fr.min(fc) {
        let mut normal = matrix::zeros(fp, fr, fc);
        for k in 0..r {
            normal.set(k, k, 1);
        }
        let mut digits = vec![0u32; total];
        loop {
            let mut maps = vec![Matrix::filled(0, 0, 0u32); shapes.len()];
            maps[first] = normal.clone();
            let mut off = 0;
            for &a in &free {
                let (rr, cc) = shapes[a];
                maps[a] = Matrix::from_rows(rr, cc, digits[off..off + rr * cc].to_vec());
                off += rr * cc;
            }
            let m = Module::from_matrices_unchecked(*fp, dq, dims.to_vec(), maps)?;
            if !m.is_semisimple() && m.validate(dq).is_ok() && is_indecomposable(dq, &m)? {
                let mut placed = false;
                for cls in classes.iter_mut() {
                    if indecomposables_isomorphic(dq, &cls[0], &m)? {
                        if cls.len() < keep {
                            cls.push(m.clone());
                        }
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    classes.push(vec![m]);
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == total {
                    break;
                }
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == total {
                break;
            }
        }
    }
    Ok(classes)
}

/// Sign choices on the nonzero entries of an `F₂` sample that give a valid
/// rational module, indecomposable over `Q`.
fn lift_to_rationals(dq: &DoubleQuiver, samples: &[Module<Fp>]) -> Option<Module<Rationals>> {
    for s in samples {
        let ones: Vec<(usize, usize, usize)> = s
            .maps()
            .iter()
            .enumerate()
            .flat_map(|(a, m)| {
                (0..m.rows())
                    .flat_map(move |r| (0..m.cols()).map(move |c| (a, r, c)))
                    .filter(|&(_, r, c)| *m.get(r, c) != 0)
                    .collect::<Vec<_>>()
            })
            .collect();
        if ones.len() > 16 {
            continue;
        }
        for signs in 0u32..(1 << ones.len()) {
            let mut maps: Vec<Matrix<Rational>> =
                s.maps().iter().map(|m| matrix::zeros(&Rationals, m.rows(), m.cols())).collect();
            for (bit, &(a, r, c)) in ones.iter().enumerate() {
                maps[a].set(r, c, if signs >> bit & 1 == 1 { rat(-1) } else { rat(1) });
            }
            let Ok(m) = Module::from_matrices(Rationals, dq, s.dims().to_vec(), maps) else {
                continue;
            };
            if is_indecomposable(dq, &m).unwrap_or(false) {
                return Some(m);
            }
        }
    }
    None
}

/// Class lists keyed by dimension vector.
pub fn classes_by_slice(cat: &Catalog, cutoff: u32) -> Result<BTreeMap<DimVector, Vec<IsoClass>>> {
    let mut out = BTreeMap::new();
    for beta in DimVector::all_up_to(cat.vertex_count(), cutoff.min(cat.cutoff())) {
        out.insert(beta.clone(), cat.classes_at(&beta)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Catalog {
        Catalog::build(&Graph::builtin("A2").unwrap(), 4).unwrap()
    }

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn a2_indecomposables() {
        let cat = a2();
        let names: Vec<&str> = cat.indecomposables().iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["s1", "s2", "q1", "q2"]);
        let hom: Vec<i128> = cat.hom_matrix().data().iter().map(|r| r.to_integer()).collect();
        assert_eq!(hom, [1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1]);
    }

    #[test]
    fn a2_slices() {
        let cat = a2();
        let names =
            |b: &[u32]| -> Vec<String> { cat.classes_at(&dv(b)).unwrap().iter().map(|c| cat.class_name(c)).collect() };
        assert_eq!(names(&[1, 0]), ["s1"]);
        let mut n11 = names(&[1, 1]);
        n11.sort();
        assert_eq!(n11, ["q1", "q2", "s1+s2"]);
        let mut n21 = names(&[2, 1]);
        n21.sort();
        assert_eq!(n21, ["q1+s1", "q2+s1", "s1+s1+s2"]);
        assert_eq!(names(&[0, 0]), ["0"]);
        assert_eq!(cat.classes_at(&dv(&[3, 2])), Err(Error::CatalogMissing));
    }

    #[test]
    fn decompose_and_iso() {
        let cat = a2();
        let q2 = cat.indecomposables().iter().find(|m| m.name == "q2").unwrap().rep.clone();
        let dq = cat.quiver().clone();
        let x6 = q2.add_simple(&dq, 0);
        assert_eq!(cat.class_name(&cat.decompose(&x6).unwrap()), "q2+s1");
        let s1 = Module::simple(Rationals, &dq, 0);
        assert_eq!(cat.class_name(&cat.decompose(&s1.direct_sum(&s1)).unwrap()), "s1+s1");
        assert!(cat.iso_test(&x6, &s1.direct_sum(&q2)).unwrap());
        assert!(!cat.iso_test(&q2, &s1.add_simple(&dq, 1)).unwrap());
        assert_eq!(cat.class_by_name("s1+q2").unwrap(), cat.decompose(&x6).unwrap());
    }

    #[test]
    fn classification_over_primes() {
        let cat = a2();
        let f7 = Fp::new(7).unwrap();
        let red = cat.reduced(f7).unwrap();
        for beta in DimVector::all_up_to(2, 4) {
            for c in cat.classes_at(&beta).unwrap() {
                let rep = cat.representative(&c).reduce(&f7).unwrap();
                assert_eq!(cat.classify(&red, &rep).unwrap(), c);
            }
        }
    }

    #[test]
    fn a3_catalog() {
        let (cat, stats) = Catalog::build_with_stats(&Graph::builtin("A3").unwrap(), 5).unwrap();
        assert_eq!(cat.indecomposables().len(), 12);
        for (_, c2, c3, c5) in &stats.slices {
            assert!(c3.is_none_or(|c| c == *c2) && c5.is_none_or(|c| c == *c2));
        }
    }
}
