//! Cartan data of the symmetric Kac-Moody algebra attached to a loop-free
//! graph, and the classical dimension formulas for finite type.
//!
//! Weights are stored through their pairings `(λ;α_i)` only. Every formula
//! downstream needs nothing else.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{rat, Rational};

/// Finite graph with vertices `0..n` and a multiset of undirected edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge {a}-{b} out of range for {n} vertices")));
            }
        }
        Ok(Graph { n, edges })
    }
    /// `An`, `Dn` (n ≥ 4), `E6`, and `Ã1` (spelled `A1~`, two vertices
    /// `A1`..`A8`, `D4`..`D6`, `E6`, and `Ã1` (spelled `A1~`, two vertices
    /// joined by a double edge).
    pub fn builtin(name: &str) -> Result<Self> {
        let upper = name.trim().to_ascii_uppercase();
        if upper == "A1~" || upper == "AFFINE-A1" {
            return Graph::new(2, vec![(0, 1), (0, 1)]);
        }
        let bad = || Error::Invalid(format!("unknown graph type {name:?}"));
        let (kind, rank) = upper.split_at(1);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        match kind {
            "A" if rank >= 1 => Graph::new(rank, (1..rank).map(|i| (i - 1, i)).collect()),
            "D" if rank >= 4 => {
                let mut e: Vec<_> = (1..rank - 1).map(|i| (i - 1, i)).collect();
                e.push((rank - 3, rank - 1));
                Graph::new(rank, e)
            }
            "E" if rank == 6 => Graph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
            _ => Err(bad()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Element of `Q₊`: multiplicity of each simple root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn plus(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_simple(&self, i: usize) -> DimVector {
        let mut v = self.clone();
        v.0[i] += 1;
        v
    }

    /// `self − α_i`, if it stays in `Q₊`.
    pub fn sub_simple(&self, i: usize) -> Option<DimVector> {
        let mut v = self.clone();
        v.0[i] = v.0[i].checked_sub(1)?;
        Some(v)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(DimVector)
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All dimension vectors with height at most `cutoff`, ordered by
    /// height and then lexicographically.
    pub fn all_up_to(n: usize, cutoff: u32) -> Vec<DimVector> {
        let mut out = Vec::new();
        for h in 0..=cutoff {
            let mut cur = vec![0u32; n];
            compositions(n, h, 0, &mut cur, &mut out);
        }
        out
    }
}

fn compositions(n: usize, remaining: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
    if n == 0 {
        if remaining == 0 {
            out.push(DimVector(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = remaining;
        out.push(DimVector(cur.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        cur[pos] = v;
        compositions(n, remaining - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// Integral weight, stored as its pairings `c_i = (λ;α_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// Fundamental weight `ϖ_i`.
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Weight(v)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| format!("{c}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Symmetric generalized Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
    a: Vec<i64>,
}

pub fn build_cartan(g: &Graph) -> Result<CartanMatrix> {
    let n = g.n;
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        a[i * n + i] = 2;
    }
    for &(x, y) in &g.edges {
        if x == y {
            return Err(Error::LoopEdge(x));
        }
        a[x * n + y] -= 1;
        a[y * n + x] -= 1;
    }
    Ok(CartanMatrix { n, a })
}

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    /// `βᵀ A γ`.
    pub fn sym_form(&self, beta: &DimVector, gamma: &DimVector) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            if beta.0[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += beta.0[i] as i64 * self.entry(i, j) * gamma.0[j] as i64;
            }
        }
        s
    }

    /// `(β;α_i)`.
    pub fn root_pairing(&self, beta: &DimVector, i: usize) -> i64 {
        (0..self.n).map(|j| self.entry(i, j) * beta.0[j] as i64).sum()
    }

    /// `(λ−β;α_i)`.
    pub fn weight_pairing(&self, lambda: &Weight, beta: &DimVector, i: usize) -> i64 {
        lambda.0[i] - self.root_pairing(beta, i)
    }

    /// The weight `λ − β` as pairings.
    pub fn shift(&self, lambda: &Weight, beta: &DimVector) -> Weight {
        Weight((0..self.n).map(|i| self.weight_pairing(lambda, beta, i)).collect())
    }
}

/// Height above which root generation gives up.
pub const ROOT_HEIGHT_BOUND: u32 = 1000;

/// Positive roots of a finite-type simply-laced Cartan matrix, by closing the
/// simple roots under reflections.
pub fn positive_roots(c: &CartanMatrix) -> Result<Vec<DimVector>> {
    let n = c.n;
    let mut seen: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let s = DimVector::simple(n, i);
        seen.insert(s.clone());
        queue.push_back(s);
    }
    while let Some(alpha) = queue.pop_front() {
        for i in 0..n {
            let p = c.root_pairing(&alpha, i);
            let coeff = alpha.0[i] as i64 - p;
            if coeff < 0 {
                continue;
            }
            let mut r = alpha.clone();
            r.0[i] = coeff as u32;
            if r.is_zero() || seen.contains(&r) {
                continue;
            }
            if r.height() > ROOT_HEIGHT_BOUND {
                return Err(Error::NotFiniteType(ROOT_HEIGHT_BOUND as usize));
            }
            seen.insert(r.clone());
            queue.push_back(r);
        }
    }
    let mut roots: Vec<_> = seen.into_iter().collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    Ok(roots)
}

/// A finite root system with the oracle formulas of classical Lie theory.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<DimVector>,
}

impl RootSystem {
    pub fn new(c: &CartanMatrix) -> Result<Self> {
        Ok(RootSystem { cartan: c.clone(), roots: positive_roots(c)? })
    }

    pub fn positive_roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Number of multisets of positive roots summing to `β`.
    pub fn kostant_count(&self, beta: &DimVector) -> u64 {
        let boxed = BoxIndex::new(beta);
        let mut ways = vec![0u64; boxed.size()];
        ways[0] = 1;
        for root in &self.roots {
            if !root.le(beta) {
                continue;
            }
            // unbounded knapsack in increasing box order
            for idx in 0..boxed.size() {
                let v = boxed.vector(idx);
                if let Some(prev) = v.checked_sub(root) {
                    ways[idx] += ways[boxed.index(&prev)];
                }
            }
        }
        ways[boxed.index(beta)]
    }

    /// Multiplicity of the weight `λ − β` in `L(λ)`.
    pub fn freudenthal_mult(&self, lambda: &Weight, beta: &DimVector) -> Result<u64> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant);
        }
        let mut memo = BTreeMap::new();
        let m = self.freudenthal_rec(lambda, beta, &mut memo);
        if !m.is_integer() || m < Rational::zero() {
            return Err(Error::Invalid(format!("Freudenthal recursion produced {m}")));
        }
        Ok(*m.numer() as u64)
    }

    fn is_weight(&self, lambda: &Weight, beta: &DimVector) -> bool {
        let n = self.cartan.n;
        let mut b: Vec<i64> = beta.0.iter().map(|&x| x as i64).collect();
        for _ in 0..10_000 {
            if b.iter().any(|&x| x < 0) {
                return false;
            }
            let bv = DimVector(b.iter().map(|&x| x as u32).collect());
            match (0..n).find(|&i| self.cartan.weight_pairing(lambda, &bv, i) < 0) {
                None => return true,
                Some(i) => b[i] += self.cartan.weight_pairing(lambda, &bv, i),
            }
        }
        false
    }

    fn freudenthal_rec(&self, lambda: &Weight, beta: &DimVector, memo: &mut BTreeMap<DimVector, Rational>) -> Rational {
        if beta.is_zero() {
            return rat(1);
        }
        if let Some(v) = memo.get(beta) {
            return *v;
        }
        if !self.is_weight(lambda, beta) {
            memo.insert(beta.clone(), Rational::zero());
            return Rational::zero();
        }
        let c = &self.cartan;
        let lam_rho_beta: i64 = beta.0.iter().zip(&lambda.0).map(|(&b, &l)| b as i64 * (l + 1)).sum();
        let denom = 2 * lam_rho_beta - c.sym_form(beta, beta);
        let mut num = Rational::zero();
        for alpha in &self.roots {
            let lam_alpha: i64 = alpha.0.iter().zip(&lambda.0).map(|(&a, &l)| a as i64 * l).sum();
            let mut gamma = beta.clone();
            while let Some(g) = gamma.checked_sub(alpha) {
                let m = self.freudenthal_rec(lambda, &g, memo);
                if !m.is_zero() {
                    num += m * rat((lam_alpha - c.sym_form(&g, alpha)) as i128);
                }
                gamma = g;
            }
        }
        let v = if denom == 0 { Rational::zero() } else { num * rat(2) / rat(denom as i128) };
        memo.insert(beta.clone(), v);
        v
    }

    /// `dim L(λ)` by the Weyl dimension formula.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant);
        }
        let mut d = rat(1);
        for alpha in &self.roots {
            let top: i64 = alpha.0.iter().zip(&lambda.0).map(|(&a, &l)| a as i64 * (l + 1)).sum();
            d = d * rat(top as i128) / rat(alpha.height() as i128);
        }
        Ok(*d.numer() as u64)
    }

    /// All `β` with `λ − β` a weight of `L(λ)`, with multiplicities.
    pub fn weight_diagram(&self, lambda: &Weight) -> Result<Vec<(DimVector, u64)>> {
        let n = self.cartan.n;
        let mut out = BTreeMap::new();
        let mut queue = VecDeque::new();
        let zero = DimVector::zero(n);
        out.insert(zero.clone(), 1u64);
        queue.push_back(zero);
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let nb = b.add_simple(i);
                if out.contains_key(&nb) {
                    continue;
                }
                let m = self.freudenthal_mult(lambda, &nb)?;
                if m > 0 {
                    out.insert(nb.clone(), m);
                    queue.push_back(nb);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// Mixed-radix indexing of the box `0 ≤ γ ≤ β`.
pub(crate) struct BoxIndex {
    bounds: Vec<u32>,
}

impl BoxIndex {
    pub(crate) fn new(beta: &DimVector) -> Self {
        BoxIndex { bounds: beta.0.clone() }
    }

    pub(crate) fn size(&self) -> usize {
        self.bounds.iter().map(|&b| b as usize + 1).product()
    }

    /// Index with the first coordinate most significant, so every
    /// predecessor `γ − root` has a smaller index.
    pub(crate) fn index(&self, v: &DimVector) -> usize {
        let mut idx = 0;
        for (k, &b) in self.bounds.iter().enumerate() {
            idx = idx * (b as usize + 1) + v.0[k] as usize;
        }
        idx
    }

    pub(crate) fn vector(&self, mut idx: usize) -> DimVector {
        let mut v = vec![0u32; self.bounds.len()];
        for k in (0..self.bounds.len()).rev() {
            let r = self.bounds[k] as usize + 1;
            v[k] = (idx % r) as u32;
            idx /= r;
        }
        DimVector(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanMatrix {
        build_cartan(&Graph::builtin("A2").unwrap()).unwrap()
    }

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn cartan_examples() {
        let c = a2();
        assert_eq!((c.entry(0, 0), c.entry(0, 1), c.entry(1, 0), c.entry(1, 1)), (2, -1, -1, 2));
        let single = build_cartan(&Graph::builtin("A1").unwrap()).unwrap();
        assert_eq!(single.entry(0, 0), 2);
        let double = build_cartan(&Graph::new(2, vec![(0, 1), (0, 1)]).unwrap()).unwrap();
        assert_eq!(double.entry(0, 1), -2);
        assert_eq!(Graph::new(2, vec![(1, 1)]), Err(Error::LoopEdge(1)));
    }

    #[test]
    fn forms() {
        let c = a2();
        assert_eq!(c.sym_form(&dv(&[1, 0]), &dv(&[1, 0])), 2);
        assert_eq!(c.sym_form(&dv(&[1, 0]), &dv(&[0, 1])), -1);
        assert_eq!(c.sym_form(&dv(&[1, 1]), &dv(&[1, 1])), 2);
        let l = Weight(vec![1, 1]);
        assert_eq!(c.weight_pairing(&l, &dv(&[0, 0]), 0), 1);
        assert_eq!(c.weight_pairing(&l, &dv(&[1, 0]), 0), -1);
        assert_eq!(c.weight_pairing(&l, &dv(&[1, 1]), 0), 0);
    }

    #[test]
    fn roots() {
        let r = positive_roots(&a2()).unwrap();
        assert_eq!(r, vec![dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1])]);
        let a1 = build_cartan(&Graph::builtin("A1").unwrap()).unwrap();
        assert_eq!(positive_roots(&a1).unwrap().len(), 1);
        let affine = build_cartan(&Graph::builtin("A1~").unwrap()).unwrap();
        assert!(matches!(positive_roots(&affine), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn classical_oracles_a2() {
        let rs = RootSystem::new(&a2()).unwrap();
        assert_eq!(rs.kostant_count(&dv(&[1, 1])), 2);
        assert_eq!(rs.kostant_count(&dv(&[0, 0])), 1);
        assert_eq!(rs.kostant_count(&dv(&[2, 1])), 2);
        let l = Weight(vec![1, 1]);
        assert_eq!(rs.freudenthal_mult(&l, &dv(&[1, 1])).unwrap(), 2);
        assert_eq!(rs.freudenthal_mult(&l, &dv(&[0, 0])).unwrap(), 1);
        assert_eq!(rs.freudenthal_mult(&l, &dv(&[2, 1])).unwrap(), 1);
        assert_eq!(rs.weyl_dim(&l).unwrap(), 8);
        assert_eq!(rs.weyl_dim(&Weight(vec![0, 0])).unwrap(), 1);
        assert_eq!(rs.weyl_dim(&Weight(vec![1, 0])).unwrap(), 3);
        assert_eq!(rs.weyl_dim(&Weight(vec![-1, 0])), Err(Error::NotDominant));
    }

    #[test]
    fn box_index_roundtrip() {
        let b = BoxIndex::new(&dv(&[2, 3, 1]));
        for k in 0..b.size() {
            assert_eq!(b.index(&b.vector(k)), k);
        }
    }
}
