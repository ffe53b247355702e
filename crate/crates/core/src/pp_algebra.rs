//! The double quiver of a graph, the preprojective algebra `Λ` by path
//! degree, and its indecomposable projective and injective modules.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{rat, Rational, Rationals};
use crate::lambda_mod::Module;
use crate::matrix::{self, Matrix};
use crate::root_datum::{Graph, Weight};

/// Default degree cap for [`algebra_basis`].
pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub mate: usize,
    /// `+1` along the chosen orientation, `−1` for the reversed arrow.
    pub sign: i8,
}

/// Doubled quiver. Edge `k` gives arrows `2k` (oriented) and `2k+1` (mate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleQuiver {
    n: usize,
    arrows: Vec<Arrow>,
    names: Vec<String>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

/// Double quiver with every edge `(a, b)` oriented `a → b`.
pub fn double_quiver(g: &Graph) -> DoubleQuiver {
    double_quiver_oriented(g, &vec![false; g.edges().len()])
}

/// `flip[k]` reverses the orientation of edge `k`.
pub fn double_quiver_oriented(g: &Graph, flip: &[bool]) -> DoubleQuiver {
    let n = g.vertex_count();
    let mut arrows = Vec::new();
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        let (s, t) = if flip.get(k).copied().unwrap_or(false) { (b, a) } else { (a, b) };
        arrows.push(Arrow { source: s, target: t, mate: 2 * k + 1, sign: 1 });
        arrows.push(Arrow { source: t, target: s, mate: 2 * k, sign: -1 });
    }
    let mut outgoing = vec![Vec::new(); n];
    let mut incoming = vec![Vec::new(); n];
    for (idx, a) in arrows.iter().enumerate() {
        outgoing[a.source].push(idx);
        incoming[a.target].push(idx);
    }
    let names = arrows
        .iter()
        .map(|a| {
            let parallel: Vec<usize> =
                (0..arrows.len()).filter(|&j| arrows[j].source == a.source && arrows[j].target == a.target).collect();
            let base = format!("{}>{}", a.source + 1, a.target + 1);
            if parallel.len() > 1 {
                let pos = parallel.iter().position(|&j| arrows[j] == *a).unwrap_or(0);
                format!("{base}:{}", pos + 1)
            } else {
                base
            }
        })
        .collect();
    DoubleQuiver { n, arrows, names, outgoing, incoming }
}

impl DoubleQuiver {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    /// Arrows leaving vertex `i`.
    pub fn outgoing(&self, i: usize) -> &[usize] {
        &self.outgoing[i]
    }

    /// Arrows arriving at vertex `i`.
    pub fn incoming(&self, i: usize) -> &[usize] {
        &self.incoming[i]
    }

    /// Textual arrow name `s>t` (1-based), with `:k` for parallel arrows.
    pub fn arrow_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A path residue of `Λ`: a basis element of `e_end Λ_d e_start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Residue {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebraBasis {
    /// `degrees[d]` lists the standard residues of degree `d`.
    pub degrees: Vec<Vec<Residue>>,
    pub total: usize,
}

/// `Λe_i`, kept degree by degree: the residues of each degree and, for each
/// arrow, how it maps degree `d` residues into degree `d+1`.
struct ProjectiveLevels {
    ends: Vec<Vec<usize>>,
    // steps[d][a]: (#residues deg d+1) x (#residues deg d), full level matrices
    steps: Vec<Vec<Matrix<Rational>>>,
}

fn projective_levels(dq: &DoubleQuiver, i: usize, cap: usize) -> Result<ProjectiveLevels> {
    let q = Rationals;
    let mut ends = vec![vec![i]];
    let mut steps: Vec<Vec<Matrix<Rational>>> = Vec::new();
    loop {
        let d = ends.len() - 1;
        if ends[d].is_empty() {
            ends.pop();
            break;
        }
        if d >= cap {
            return Err(Error::CapExceeded(cap));
        }
        let prev = &ends[d];
        // ambient space: pairs (arrow a, residue r of degree d at source(a))
        let mut cells = Vec::new();
        for (a, arrow) in dq.arrows().iter().enumerate() {
            for (r, &e) in prev.iter().enumerate() {
                if e == arrow.source {
                    cells.push((a, r));
                }
            }
        }
        let cell_index = |a: usize, r: usize| cells.iter().position(|&c| c == (a, r));
        // relations ρ_k · u for residues u of degree d−1 ending at k
        let mut rel_rows = Vec::new();
        if d >= 1 {
            let before = &ends[d - 1];
            for (u, &k) in before.iter().enumerate() {
                let mut row = vec![rat(0); cells.len()];
                for &a in dq.incoming(k) {
                    let arrow = dq.arrow(a);
                    let m = &steps[d - 1][arrow.mate];
                    for r in 0..prev.len() {
                        let c = m.get(r, u);
                        if *c != rat(0) {
                            let cell = cell_index(a, r).expect("mate lands at source of a");
                            row[cell] += c * rat(arrow.sign as i128);
                        }
                    }
                }
                rel_rows.push(row);
            }
        }
        let rel = Matrix::from_rows(rel_rows.len(), cells.len(), rel_rows.concat());
        let (red, pivots) = matrix::rref(&q, &rel);
        let standard: Vec<usize> = (0..cells.len()).filter(|c| !pivots.contains(c)).collect();
        // projection of each cell onto the standard cells
        let mut proj = matrix::zeros(&q, standard.len(), cells.len());
        for (s, &c) in standard.iter().enumerate() {
            proj.set(s, c, rat(1));
        }
        for (row, &p) in pivots.iter().enumerate() {
            for (s, &c) in standard.iter().enumerate() {
                proj.set(s, p, -*red.get(row, c));
            }
        }
        let mut step = Vec::with_capacity(dq.arrows().len());
        for a in 0..dq.arrows().len() {
            let mut m = matrix::zeros(&q, standard.len(), prev.len());
            for r in 0..prev.len() {
                if let Some(cell) = cell_index(a, r) {
                    for s in 0..standard.len() {
                        m.set(s, r, *proj.get(s, cell));
                    }
                }
            }
            step.push(m);
        }
        steps.push(step);
        ends.push(standard.iter().map(|&c| dq.arrow(cells[c].0).target).collect());
    }
    Ok(ProjectiveLevels { ends, steps })
}

/// Basis of `Λ` by path degree, computed from the projectives `Λe_i`.
pub fn algebra_basis(dq: &DoubleQuiver, degree_cap: usize) -> Result<GradedAlgebraBasis> {
    let mut degrees: Vec<Vec<Residue>> = Vec::new();
    for i in 0..dq.vertex_count() {
        let lv = projective_levels(dq, i, degree_cap)?;
        for (d, ends) in lv.ends.iter().enumerate() {
            if degrees.len() <= d {
                degrees.push(Vec::new());
            }
            degrees[d].extend(ends.iter().map(|&e| Residue { start: i, end: e }));
        }
    }
    let total = degrees.iter().map(Vec::len).sum();
    Ok(GradedAlgebraBasis { degrees, total })
}

/// The indecomposable projective `Λe_i`; arrows act by extending paths.
pub fn projective_module(dq: &DoubleQuiver, i: usize) -> Result<Module<Rationals>> {
    let lv = projective_levels(dq, i, DEFAULT_DEGREE_CAP)?;
    let n = dq.vertex_count();
    // global position (vertex, index within vertex) of each residue
    let mut dims = vec![0usize; n];
    let mut pos = Vec::new();
    for ends in &lv.ends {
        let mut lvl = Vec::new();
        for &e in ends {
            lvl.push(dims[e]);
            dims[e] += 1;
        }
        pos.push(lvl);
    }
    let mut maps = Vec::new();
    for (a, arrow) in dq.arrows().iter().enumerate() {
        let mut m = matrix::zeros(&Rationals, dims[arrow.target], dims[arrow.source]);
        for d in 0..lv.ends.len() - 1 {
            let step = &lv.steps[d][a];
            for r in 0..lv.ends[d].len() {
                if lv.ends[d][r] != arrow.source {
                    continue;
                }
                for s in 0..lv.ends[d + 1].len() {
                    let c = step.get(s, r);
                    if *c != rat(0) {
                        m.set(pos[d + 1][s], pos[d][r], *c);
                    }
                }
            }
        }
        maps.push(m);
    }
    Module::from_matrices(Rationals, dq, dims, maps)
}

/// The injective hull `q_i` of `s_i`: the dual of `Λe_i`, with each arrow
/// acting by the transpose of its mate.
pub fn injective_module(dq: &DoubleQuiver, i: usize) -> Result<Module<Rationals>> {
    let p = projective_module(dq, i)?;
    let maps = (0..dq.arrows().len()).map(|b| p.map(dq.arrow(b).mate).transpose()).collect();
    Module::from_matrices(Rationals, dq, p.dims().to_vec(), maps)
}

/// `q_ν = ⊕ q_i^{(ν;α_i)}`.
pub fn injective_sum(dq: &DoubleQuiver, nu: &Weight) -> Result<Module<Rationals>> {
    if !nu.is_dominant() {
        return Err(Error::NotDominant);
    }
    let mut out = Module::zero(Rationals, dq);
    for (i, &c) in nu.0.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let qi = injective_module(dq, i)?;
        for _ in 0..c {
            out = out.direct_sum(&qi);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(name: &str) -> DoubleQuiver {
        double_quiver(&Graph::builtin(name).unwrap())
    }

    #[test]
    fn arrows_and_mates() {
        let dq = quiver("A2");
        assert_eq!(dq.arrows().len(), 2);
        assert_eq!(dq.arrow(0), &Arrow { source: 0, target: 1, mate: 1, sign: 1 });
        assert_eq!(dq.arrow(1), &Arrow { source: 1, target: 0, mate: 0, sign: -1 });
        assert_eq!(quiver("A3").arrows().len(), 4);
        let dbl = quiver("A1~");
        assert_eq!(dbl.arrows().len(), 4);
        assert_eq!(dbl.incoming(0).len(), 2);
        assert_eq!(dbl.arrow_name(0), "1>2:1");
        assert_eq!(dbl.arrow_name(2), "1>2:2");
        assert_eq!(dq.arrow_name(1), "2>1");
    }

    #[test]
    fn basis_dimensions() {
        // Λ(A_n) has dimension n(n+1)(n+2)/6
        for (name, dim) in [("A1", 1), ("A2", 4), ("A3", 10), ("A4", 20)] {
            let b = algebra_basis(&quiver(name), 8).unwrap();
            assert_eq!(b.total, dim, "{name}");
        }
        let a2 = algebra_basis(&quiver("A2"), 8).unwrap();
        assert_eq!(a2.degrees.len(), 2);
        let a1 = algebra_basis(&quiver("A1"), 2).unwrap();
        assert_eq!(a1.degrees, vec![vec![Residue { start: 0, end: 0 }]]);
        assert_eq!(algebra_basis(&quiver("A1~"), 50), Err(Error::CapExceeded(50)));
    }

    #[test]
    fn d4_is_finite() {
        // Λ(D4): dim = Σ_i dim Λe_i, middle projective has dimension 12
        let b = algebra_basis(&quiver("D4"), 16).unwrap();
        assert_eq!(b.total, 28);
    }

    #[test]
    fn injectives_of_a2() {
        let dq = quiver("A2");
        let q1 = injective_module(&dq, 0).unwrap();
        assert_eq!(q1.dims(), &[1, 1]);
        // v1 <- v2: only the arrow 2 -> 1 acts
        assert!(matrix::is_zero(&Rationals, q1.map(0)));
        assert!(!matrix::is_zero(&Rationals, q1.map(1)));
        let q2 = injective_module(&dq, 1).unwrap();
        assert!(!matrix::is_zero(&Rationals, q2.map(0)));
        assert!(matrix::is_zero(&Rationals, q2.map(1)));
        let s = injective_module(&quiver("A1"), 0).unwrap();
        assert_eq!(s.dims(), &[1]);
    }

    #[test]
    fn injective_sums() {
        let dq = quiver("A2");
        let q = injective_sum(&dq, &Weight(vec![1, 1])).unwrap();
        assert_eq!(q.dims(), &[2, 2]);
        assert_eq!(q.socle_dims(&dq), vec![1, 1]);
        let q20 = injective_sum(&dq, &Weight(vec![2, 0])).unwrap();
        assert_eq!(q20.socle_dims(&dq), vec![2, 0]);
        assert_eq!(injective_sum(&dq, &Weight(vec![0, 0])).unwrap().dims(), &[0, 0]);
        assert_eq!(injective_sum(&dq, &Weight(vec![-1, 0])).unwrap_err(), Error::NotDominant);
    }

    #[test]
    fn injective_dims_ignore_orientation() {
        let g = Graph::builtin("A3").unwrap();
        let a = double_quiver(&g);
        let b = double_quiver_oriented(&g, &[true, false]);
        for i in 0..3 {
            assert_eq!(injective_module(&a, i).unwrap().dims(), injective_module(&b, i).unwrap().dims());
        }
    }
}
