//! Slow, independent recomputations of the submodule varieties.
//!
//! Points are found by exhaustive enumeration of subspaces in echelon form
//! and classified by full hom-vector; nothing here uses socles, radicals or
//! the jump-locus counting of [`grassmann`](crate::grassmann).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{Catalog, IsoClass};
use crate::embed::embed;
use crate::error::{Error, Result};
use crate::field::{ratio, Fp, Rational};
use crate::grassmann::{PointCounter, StratifiedSum};
use crate::lambda_mod::{Module, Subspace};
use crate::matrix::{self, Matrix};
use crate::pp_algebra::{injective_sum, DoubleQuiver};
use crate::root_datum::{DimVector, Weight};

/// Primes the oracles enumerate over.
pub const ORACLE_PRIMES: [u32; 3] = [2, 3, 5];
const MAX_DIM: usize = 6;

/// Point counts per class and prime, from exhaustive enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BruteStrata {
    pub counts: BTreeMap<IsoClass, Vec<(u32, u64)>>,
}

/// All `k`-dimensional subspaces of `F_p^n`, as `n × k` column bases in
/// reduced echelon form.
pub fn subspaces(fp: &Fp, n: usize, k: usize) -> Vec<Matrix<u32>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let p = fp.prime();
    let mut pivots = Vec::with_capacity(k);
    fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            all.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            choose(n, k, c + 1, cur, all);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    choose(n, k, 0, &mut pivots, &mut all);
    for piv in all {
        // free entries: row r, column c > piv[r], c not a pivot
        let free: Vec<(usize, usize)> =
            (0..k).flat_map(|r| (piv[r] + 1..n).filter(|c| !piv.contains(c)).map(move |c| (r, c))).collect();
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = Matrix::filled(k, n, 0u32);
            for (r, &c) in piv.iter().enumerate() {
                rows.set(r, c, 1);
            }
            let mut rest = code;
            for &(r, c) in &free {
                rows.set(r, c, (rest % p as u64) as u32);
                rest /= p as u64;
            }
            out.push(rows.transpose());
        }
    }
    out
}

fn stable(fp: &Fp, dq: &DoubleQuiver, x: &Module<Fp>, sub: &Subspace<u32>) -> bool {
    dq.arrows().iter().enumerate().all(|(a, arrow)| {
        let img = matrix::mul(fp, x.map(a), &sub[arrow.source]);
        matrix::rank(fp, &sub[arrow.target].hstack(&img)) == sub[arrow.target].cols()
    })
}

/// Every tuple of subspaces of dimension `γ` stable under all arrows.
pub fn brute_submodules(dq: &DoubleQuiver, x: &Module<Fp>, gamma: &DimVector) -> Result<Vec<Subspace<u32>>> {
    let fp = *x.field();
    if x.total_dim() > MAX_DIM || fp.prime() > 5 {
        return Err(Error::TooLarge(format!("dim {} over F_{}", x.total_dim(), fp.prime())));
    }
    let n = dq.vertex_count();
    if (0..n).any(|i| gamma.0[i] as usize > x.dims()[i]) {
        return Ok(Vec::new());
    }
    let choices: Vec<Vec<Matrix<u32>>> = (0..n).map(|i| subspaces(&fp, x.dims()[i], gamma.0[i] as usize)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let sub: Subspace<u32> = (0..n).map(|i| choices[i][idx[i]].clone()).collect();
        if stable(&fp, dq, x, &sub) {
            out.push(sub);
        }
        let mut v = 0;
        loop {
            if v == n {
                return Ok(out);
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// `𝒢(i,x)` by enumerating every hyperplane of `x_i`.
pub fn brute_down(cat: &Catalog, x: &IsoClass, i: usize, primes: &[u32]) -> Result<BruteStrata> {
    let dq = cat.quiver();
    let n = dq.vertex_count();
    let mut per_prime = Vec::new();
    let rep = cat.representative(x);
    for &p in primes {
        let fp = Fp::new(p)?;
        let red = cat.reduced(fp)?;
        let xm = rep.reduce(&fp)?;
        if xm.total_dim() > MAX_DIM || p > 5 {
            return Err(Error::TooLarge(format!("dim {} over F_{p}", xm.total_dim())));
        }
        let mut tally: BTreeMap<IsoClass, u64> = BTreeMap::new();
        let d = xm.dims()[i];
        if d > 0 {
            for h in subspaces(&fp, d, d - 1) {
                let sub: Subspace<u32> =
                    (0..n).map(|j| if j == i { h.clone() } else { matrix::identity(&fp, xm.dims()[j]) }).collect();
                if stable(&fp, dq, &xm, &sub) {
                    *tally.entry(cat.classify(&red, &xm.submodule(dq, &sub)?)?).or_insert(0) += 1;
                }
            }
        }
        per_prime.push((p, tally));
    }
    Ok(collect(per_prime))
}

/// `𝒢(x,ν,i)` by enumerating every line of `(q_ν)_i` modulo the image of `x`.
pub fn brute_up(cat: &Catalog, x: &IsoClass, nu: &Weight, i: usize, primes: &[u32]) -> Result<BruteStrata> {
    let dq = cat.quiver();
    let mut per_prime = Vec::new();
    let rep = cat.representative(x);
    let q = injective_sum(dq, nu)?;
    for &p in primes {
        let fp = Fp::new(p)?;
        let red = cat.reduced(fp)?;
        let xm = rep.reduce(&fp)?;
        if xm.total_dim() > MAX_DIM || p > 5 {
            return Err(Error::TooLarge(format!("dim {} over F_{p}", xm.total_dim())));
        }
        let qm = q.reduce(&fp)?;
        let inj = embed(dq, &xm, &qm)?.inj;
        let comp = matrix::complement(&fp, &inj[i]);
        let mut tally: BTreeMap<IsoClass, u64> = BTreeMap::new();
        for line in subspaces(&fp, comp.cols(), 1) {
            let v = matrix::mul(&fp, &comp, &line);
            let mut sub = inj.clone();
            sub[i] = sub[i].hstack(&v);
            if stable(&fp, dq, &qm, &sub) {
                *tally.entry(cat.classify(&red, &qm.submodule(dq, &sub)?)?).or_insert(0) += 1;
            }
        }
        per_prime.push((p, tally));
    }
    Ok(collect(per_prime))
}

fn collect(per_prime: Vec<(u32, BTreeMap<IsoClass, u64>)>) -> BruteStrata {
    let mut out = BruteStrata::default();
    for (_, t) in &per_prime {
        for c in t.keys() {
            out.counts.entry(c.clone()).or_default();
        }
    }
    for (c, v) in out.counts.iter_mut() {
        for (p, t) in &per_prime {
            v.push((*p, t.get(c).copied().unwrap_or(0)));
        }
    }
    out
}

/// Lagrange interpolation through `(x, y)` evaluated at `at`.
fn lagrange(points: &[(u64, u64)], at: i128) -> Rational {
    let mut acc = ratio(0, 1);
    for (j, &(xj, yj)) in points.iter().enumerate() {
        let mut term = ratio(yj as i128, 1);
        for (m, &(xm, _)) in points.iter().enumerate() {
            if m != j {
                term *= ratio(at - xm as i128, xj as i128 - xm as i128);
            }
        }
        acc += term;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub pass: bool,
    pub engine: StratifiedSum,
    pub brute: BruteStrata,
    pub diff: Vec<String>,
}

/// Engine strata against exhaustive enumeration: the engine's counting
/// polynomials must predict the brute counts at every oracle prime, the
/// Euler characteristics must agree when the brute counts determine them,
/// and `Σχ` must be the dimension of the parameter space.
pub fn brute_grass_compare(pc: &PointCounter, x: &IsoClass, i: usize, nu: Option<&Weight>) -> Result<Comparison> {
    let cat = pc.catalog();
    let (engine, brute) = match nu {
        None => (pc.grass_down(x, i)?, brute_down(cat, x, i, &ORACLE_PRIMES)?),
        Some(nu) => (pc.grass_up(x, nu, i)?, brute_up(cat, x, nu, i, &ORACLE_PRIMES)?),
    };
    let mut diff = Vec::new();
    let zero = |p: u32| (p, 0u64);
    let mut classes: Vec<IsoClass> = engine.counts.keys().cloned().collect();
    for c in brute.counts.keys() {
        if !classes.contains(c) {
            classes.push(c.clone());
        }
    }
    let e = engine.ambient;
    for c in &classes {
        let name = cat.class_name(c);
        let eng: Vec<(u64, u64)> =
            engine.counts.get(c).map(|v| v.iter().map(|&(p, n)| (p as u64, n)).collect()).unwrap_or_default();
        let bru: Vec<(u32, u64)> =
            brute.counts.get(c).cloned().unwrap_or_else(|| ORACLE_PRIMES.iter().map(|&p| zero(p)).collect());
        for &(p, n) in &bru {
            let predicted = if eng.is_empty() { ratio(0, 1) } else { lagrange(&eng, p as i128) };
            if predicted != ratio(n as i128, 1) {
                diff.push(format!("{name}: {n} points over F_{p}, engine polynomial gives {predicted}"));
            }
        }
        let chi_engine = engine.strata.iter().find(|(k, _)| k == c).map(|(_, v)| *v).unwrap_or(0);
        // a polynomial of degree < e is fixed by e values
        if e <= bru.len() {
            let pts: Vec<(u64, u64)> = bru.iter().map(|&(p, n)| (p as u64, n)).collect();
            let chi_brute = lagrange(&pts, 1);
            if chi_brute != ratio(chi_engine as i128, 1) {
                diff.push(format!("{name}: χ {chi_engine} from the engine, {chi_brute} from enumeration"));
            }
        }
    }
    if engine.total_chi() != e as i64 {
        diff.push(format!("Σχ = {} but the parameter space has dimension {e}", engine.total_chi()));
    }
    Ok(Comparison { pass: diff.is_empty(), engine, brute, diff })
}

/// `ε_i(x)` by counting: the number of hyperplanes of `x_i` that are stable
/// is `[ε]_p`, recovered here from the smallest prime.
pub fn brute_epsilon(cat: &Catalog, x: &IsoClass, i: usize) -> Result<usize> {
    let s = brute_down(cat, x, i, &ORACLE_PRIMES[..1])?;
    let total: u64 = s.counts.values().map(|v| v[0].1).sum();
    let p = ORACLE_PRIMES[0] as u64;
    let mut e = 0usize;
    let mut acc = 0u64;
    while acc < total {
        acc += p.pow(e as u32);
        e += 1;
    }
    if acc != total {
        return Err(Error::Invalid(String::from("hyperplane count is not a projective count")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::DEFAULT_PRIMES;
    use crate::root_datum::Graph;

    #[test]
    fn subspace_counts() {
        let f = Fp::new(3).unwrap();
        assert_eq!(subspaces(&f, 3, 1).len(), 13);
        assert_eq!(subspaces(&f, 4, 2).len(), 130);
        assert_eq!(subspaces(&f, 2, 0).len(), 1);
        assert!(subspaces(&f, 1, 2).is_empty());
    }

    #[test]
    fn brute_examples() {
        let cat = Catalog::build(&Graph::builtin("A2").unwrap(), 4).unwrap();
        let dq = cat.quiver();
        let f2 = Fp::new(2).unwrap();
        let x3 = cat.representative(&cat.class_by_name("s1+s2").unwrap()).reduce(&f2).unwrap();
        assert_eq!(brute_submodules(dq, &x3, &DimVector(vec![0, 1])).unwrap().len(), 1);
        assert_eq!(brute_submodules(dq, &x3, &DimVector(vec![0, 0])).unwrap().len(), 1);
        let q = injective_sum(dq, &Weight(vec![1, 1])).unwrap().reduce(&f2).unwrap();
        let subs = brute_submodules(dq, &q, &DimVector(vec![1, 1])).unwrap();
        let red = cat.reduced(f2).unwrap();
        let mut names: Vec<String> =
            subs.iter().map(|s| cat.class_name(&cat.classify(&red, &q.submodule(dq, s).unwrap()).unwrap())).collect();
        names.sort();
        names.dedup();
        assert_eq!(names, ["q1", "q2", "s1+s2"]);
        let f7 = Fp::new(7).unwrap();
        assert!(matches!(
            brute_submodules(dq, &x3.lift().reduce(&f7).unwrap(), &DimVector(vec![0, 1])),
            Err(Error::TooLarge(_))
        ));

        let pc = PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap();
        let x = cat.class_by_name("s1+s1").unwrap();
        let up2 = brute_grass_compare(&pc, &x, 1, Some(&Weight(vec![2, 0]))).unwrap();
        assert!(up2.pass, "{:?}", up2.diff);
        assert_eq!(up2.engine.strata, vec![(cat.class_by_name("q1+s1").unwrap(), 2)]);
        let up1 = brute_grass_compare(&pc, &x, 0, Some(&Weight(vec![2, 0]))).unwrap();
        assert!(up1.pass && up1.engine.strata.is_empty() && up1.brute.counts.is_empty());
        assert_eq!(brute_epsilon(&cat, &x, 0).unwrap(), 2);
    }
}
