//! Word functions `1_{i₁}⋆⋯⋆1_{i_r}` of Lusztig's algebra `ℳ`, evaluated on
//! iso-classes, and word bases of the graded pieces `ℳ_β`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::catalog::{Catalog, IsoClass};
use crate::error::{Error, Result};
use crate::field::{rat, Rational, Rationals};
use crate::grassmann::{PointCounter, StratifiedSum};
use crate::matrix::{self, Matrix};
use crate::root_datum::{DimVector, RootSystem};

/// A sequence of vertices; `(i₁,…,i_r)` stands for `1_{i₁}⋆⋯⋆1_{i_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn content(&self, n: usize) -> DimVector {
        let mut d = DimVector::zero(n);
        for &i in &self.0 {
            d.0[i] += 1;
        }
        d
    }

    pub fn prepend(&self, i: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Word(v)
    }
}

/// All words of content `β`, lexicographically.
pub fn words_of(beta: &DimVector) -> Vec<Word> {
    let mut out = Vec::new();
    let mut rest = beta.clone();
    let mut cur = Vec::new();
    fn go(rest: &mut DimVector, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
        if rest.is_zero() {
            out.push(Word(cur.clone()));
            return;
        }
        for i in 0..rest.len() {
            if rest.0[i] > 0 {
                rest.0[i] -= 1;
                cur.push(i);
                go(rest, cur, out);
                cur.pop();
                rest.0[i] += 1;
            }
        }
    }
    go(&mut rest, &mut cur, &mut out);
    out
}

/// Values of `δ_x` on every word of content `dim x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalVector {
    pub beta: DimVector,
    pub values: Vec<Rational>,
}

impl EvalVector {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == rat(0))
    }
}

/// Element of `ℳ_β` written in the word basis of `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MElem {
    pub beta: DimVector,
    pub coeffs: Vec<Rational>,
}

/// Word basis of `ℳ_β` and the data to solve into it.
#[derive(Clone, Debug)]
pub struct WordBasis {
    pub beta: DimVector,
    pub all_words: Vec<Word>,
    pub words: Vec<Word>,
    pub classes: Vec<IsoClass>,
    /// `eval[w][x]` over all words and classes.
    pub eval: Matrix<Rational>,
    basis_rows: Vec<usize>,
    pivot_classes: Vec<usize>,
    /// Inverse of the basis × pivot-classes block, transposed.
    solver: Matrix<Rational>,
}

impl WordBasis {
    pub fn rank(&self) -> usize {
        self.words.len()
    }

    pub fn class_index(&self, c: &IsoClass) -> Option<usize> {
        self.classes.binary_search(c).ok()
    }

    /// Values of a basis combination on every class.
    pub fn values(&self, f: &MElem) -> Vec<Rational> {
        let mut out = vec![rat(0); self.classes.len()];
        for (k, c) in f.coeffs.iter().enumerate() {
            if *c == rat(0) {
                continue;
            }
            let row = self.eval.row(self.basis_rows[k]);
            for (o, v) in out.iter_mut().zip(row) {
                *o += c * v;
            }
        }
        out
    }

    /// The element with the given values on the classes of `β`.
    pub fn solve(&self, values: &[Rational]) -> Result<MElem> {
        let rhs: Vec<Rational> = self.pivot_classes.iter().map(|&c| values[c]).collect();
        let coeffs = matrix::mul_vec(&Rationals, &self.solver, &rhs);
        let f = MElem { beta: self.beta.clone(), coeffs };
        if self.values(&f) != values {
            return Err(Error::NotInSpan);
        }
        Ok(f)
    }

    /// Coordinates of a word, through its values.
    pub fn word(&self, w: &Word) -> Result<MElem> {
        let row = self.all_words.binary_search(w).map_err(|_| Error::DimMismatch(format!("word {:?}", w.0)))?;
        self.solve(self.eval.row(row))
    }

    pub fn unit(&self, k: usize) -> MElem {
        let mut coeffs = vec![rat(0); self.rank()];
        coeffs[k] = rat(1);
        MElem { beta: self.beta.clone(), coeffs }
    }
}

/// Evaluation of word functions with memoized Grassmannian strata.
pub struct Hall<'c> {
    pub counter: PointCounter<'c>,
    roots: Option<RootSystem>,
    down: RefCell<BTreeMap<(IsoClass, usize), Rc<StratifiedSum>>>,
    evals: RefCell<BTreeMap<(Word, IsoClass), i64>>,
    bases: RefCell<BTreeMap<DimVector, Rc<WordBasis>>>,
    /// Skip the memo table (for checking it).
    pub memoize: bool,
}

impl<'c> Hall<'c> {
    pub fn new(counter: PointCounter<'c>) -> Self {
        let roots = RootSystem::new(counter.catalog().cartan()).ok();
        Hall {
            counter,
            roots,
            down: RefCell::new(BTreeMap::new()),
            evals: RefCell::new(BTreeMap::new()),
            bases: RefCell::new(BTreeMap::new()),
            memoize: true,
        }
    }

    pub fn catalog(&self) -> &'c Catalog {
        self.counter.catalog()
    }

    pub fn roots(&self) -> Option<&RootSystem> {
        self.roots.as_ref()
    }

    /// Cached `𝒢(i,x)` strata.
    pub fn down(&self, x: &IsoClass, i: usize) -> Result<Rc<StratifiedSum>> {
        let key = (x.clone(), i);
        if let Some(s) = self.down.borrow().get(&key) {
            return Ok(s.clone());
        }
        let s = Rc::new(self.counter.grass_down(x, i)?);
        self.down.borrow_mut().insert(key, s.clone());
        Ok(s)
    }

    /// `(1_{i₁}⋆⋯⋆1_{i_r})(x)`.
    pub fn eval_word(&self, w: &Word, x: &IsoClass) -> Result<i64> {
        let cat = self.catalog();
        if w.content(cat.vertex_count()) != cat.dim_of(x) {
            return Err(Error::DimMismatch(format!("word {:?} against {}", w.0, cat.class_name(x))));
        }
        self.eval_rec(&w.0, x)
    }

    fn eval_rec(&self, w: &[usize], x: &IsoClass) -> Result<i64> {
        if w.is_empty() {
            return Ok(if x.is_zero() { 1 } else { 0 });
        }
        let key = (Word(w.to_vec()), x.clone());
        if self.memoize {
            if let Some(v) = self.evals.borrow().get(&key) {
                return Ok(*v);
            }
        }
        let mut acc = 0i64;
        for (y, chi) in &self.down(x, w[0])?.strata {
            if *chi != 0 {
                acc += chi * self.eval_rec(&w[1..], y)?;
            }
        }
        if self.memoize {
            self.evals.borrow_mut().insert(key, acc);
        }
        Ok(acc)
    }

    pub fn eval_delta_vector(&self, x: &IsoClass) -> Result<EvalVector> {
        let beta = self.catalog().dim_of(x);
        let values =
            words_of(&beta).iter().map(|w| self.eval_word(w, x).map(|v| rat(v as i128))).collect::<Result<_>>()?;
        Ok(EvalVector { beta, values })
    }

    /// `Σ_p (−1)^p 1_j^{(p)} 1_i 1_j^{(m−p)}` at `x`, `m = 1 − a_ij`.
    pub fn serre_defect(&self, i: usize, j: usize, x: &IsoClass) -> Result<Rational> {
        let cat = self.catalog();
        let m = (1 - cat.cartan().entry(i, j)) as usize;
        let mut acc = rat(0);
        for p in 0..=m {
            let mut w = vec![j; p];
            w.push(i);
            w.extend(core::iter::repeat_n(j, m - p));
            let v = rat(self.eval_word(&Word(w), x)? as i128) / (factorial(p) * factorial(m - p));
            acc += if p % 2 == 0 { v } else { -v };
        }
        Ok(acc)
    }

    pub fn word_basis(&self, beta: &DimVector) -> Result<Rc<WordBasis>> {
        if let Some(b) = self.bases.borrow().get(beta) {
            return Ok(b.clone());
        }
        let cat = self.catalog();
        let classes = cat.classes_at(beta)?;
        let all_words = words_of(beta);
        let mut eval = matrix::zeros(&Rationals, all_words.len(), classes.len());
        for (r, w) in all_words.iter().enumerate() {
            for (c, x) in classes.iter().enumerate() {
                eval.set(r, c, rat(self.eval_word(w, x)? as i128));
            }
        }
        // first independent rows: pivots of the transpose
        let (_, basis_rows) = matrix::rref(&Rationals, &eval.transpose());
        let expected = self.roots.as_ref().map(|r| r.kostant_count(beta));
        if let Some(e) = expected {
            if basis_rows.len() as u64 != e {
                return Err(Error::RankDeficient { rank: basis_rows.len(), expected: e });
            }
        }
        let block = eval.select_rows(&basis_rows);
        let (_, pivot_classes) = matrix::rref(&Rationals, &block);
        let square = block.select_columns(&pivot_classes);
        let solver = matrix::inverse(&Rationals, &square.transpose()).ok_or(Error::NotInSpan)?;
        let words = basis_rows.iter().map(|&r| all_words[r].clone()).collect();
        let b = Rc::new(WordBasis {
            beta: beta.clone(),
            all_words,
            words,
            classes,
            eval,
            basis_rows,
            pivot_classes,
            solver,
        });
        self.bases.borrow_mut().insert(beta.clone(), b.clone());
        Ok(b)
    }

    /// `f^{(i)}: x ↦ f(x ⊕ s_i)`, on `β − α_i`.
    pub fn f_component(&self, f: &MElem, i: usize) -> Result<MElem> {
        let cat = self.catalog();
        let lower = f.beta.sub_simple(i).ok_or_else(|| Error::DimMismatch(format!("{} has no α_{}", f.beta, i + 1)))?;
        let top = self.word_basis(&f.beta)?;
        let vals = top.values(f);
        let bottom = self.word_basis(&lower)?;
        let s = cat.simple(i);
        let target: Vec<Rational> = bottom
            .classes
            .iter()
            .map(|x| vals[top.class_index(&x.add_one(s)).expect("x ⊕ s_i has dimension β")])
            .collect();
        bottom.solve(&target)
    }
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n).fold(rat(1), |acc, k| acc * rat(k as i128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::DEFAULT_PRIMES;
    use crate::root_datum::Graph;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn word_lists() {
        let w = words_of(&dv(&[1, 1]));
        assert_eq!(w, vec![Word(vec![0, 1]), Word(vec![1, 0])]);
        assert_eq!(words_of(&dv(&[2, 1])).len(), 3);
        assert_eq!(words_of(&dv(&[0, 0])), vec![Word(vec![])]);
    }

    #[test]
    fn a2_evaluations() {
        let cat = Catalog::build(&Graph::builtin("A2").unwrap(), 4).unwrap();
        let hall = Hall::new(PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap());
        let x3 = cat.class_by_name("s1+s2").unwrap();
        let x4 = cat.class_by_name("q2").unwrap();
        let x5 = cat.class_by_name("q1").unwrap();
        let v = |x: &IsoClass| -> Vec<i128> {
            hall.eval_delta_vector(x).unwrap().values.iter().map(|r| r.to_integer()).collect()
        };
        assert_eq!(v(&x3), [1, 1]);
        assert_eq!(v(&x4), [1, 0]);
        assert_eq!(v(&x5), [0, 1]);
        assert_eq!(v(&cat.zero_class()), [1]);
        assert_eq!(hall.eval_word(&Word(vec![0]), &cat.simple_class(0)).unwrap(), 1);
        assert!(matches!(hall.eval_word(&Word(vec![0]), &x3), Err(Error::DimMismatch(_))));
        for name in ["s1+s1+s2", "q2+s1", "q1+s1"] {
            assert_eq!(hall.serre_defect(1, 0, &cat.class_by_name(name).unwrap()).unwrap(), rat(0));
        }
        assert_eq!(hall.word_basis(&dv(&[1, 1])).unwrap().rank(), 2);
        assert_eq!(hall.word_basis(&dv(&[1, 0])).unwrap().rank(), 1);
        assert_eq!(hall.word_basis(&dv(&[2, 1])).unwrap().rank(), 2);
    }

    #[test]
    fn components() {
        let cat = Catalog::build(&Graph::builtin("A2").unwrap(), 4).unwrap();
        let hall = Hall::new(PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap());
        let b1 = hall.word_basis(&dv(&[1, 0])).unwrap();
        let f = b1.word(&Word(vec![0])).unwrap();
        let g = hall.f_component(&f, 0).unwrap();
        assert_eq!(g.coeffs, vec![rat(1)]);
        let b11 = hall.word_basis(&dv(&[1, 1])).unwrap();
        let f12 = b11.word(&Word(vec![0, 1])).unwrap();
        let h = hall.f_component(&f12, 1).unwrap();
        assert_eq!(h, b1.word(&Word(vec![0])).unwrap());
        let b20 = hall.word_basis(&dv(&[2, 0])).unwrap();
        let f11 = b20.word(&Word(vec![0, 0])).unwrap();
        assert!(matches!(hall.f_component(&f11, 1), Err(Error::DimMismatch(_))));
    }
}
