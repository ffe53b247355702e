//! Finite-dimensional nilpotent modules over the preprojective algebra,
//! given as one matrix per arrow of the double quiver.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rational, Rationals};
use crate::matrix::{self, Matrix};
use crate::pp_algebra::DoubleQuiver;
use crate::root_datum::{CartanMatrix, DimVector};

/// Per-vertex subspace, each given by a matrix whose columns form a basis.
pub type Subspace<E> = Vec<Matrix<E>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module<F: Field> {
    field: F,
    dims: Vec<usize>,
    /// `maps[a]` is `dims[target(a)] × dims[source(a)]`.
    maps: Vec<Matrix<F::Elem>>,
}

impl<F: Field> Module<F> {
    pub fn zero(field: F, dq: &DoubleQuiver) -> Self {
        Self::all_zero(field, dq, vec![0; dq.vertex_count()])
    }

    /// The semisimple module with the given dimensions.
    pub fn all_zero(field: F, dq: &DoubleQuiver, dims: Vec<usize>) -> Self {
        let maps = dq.arrows().iter().map(|a| matrix::zeros(&field, dims[a.target], dims[a.source])).collect();
        Module { field, dims, maps }
    }

    pub fn simple(field: F, dq: &DoubleQuiver, i: usize) -> Self {
        let mut dims = vec![0; dq.vertex_count()];
        dims[i] = 1;
        Self::all_zero(field, dq, dims)
    }

    /// Build and validate.
    pub fn from_matrices(field: F, dq: &DoubleQuiver, dims: Vec<usize>, maps: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let m = Self::from_matrices_unchecked(field, dq, dims, maps)?;
        m.validate(dq)?;
        Ok(m)
    }

    /// Build after checking shapes only.
    pub fn from_matrices_unchecked(
        field: F,
        dq: &DoubleQuiver,
        dims: Vec<usize>,
        maps: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        if dims.len() != dq.vertex_count() || maps.len() != dq.arrows().len() {
            return Err(Error::DimMismatch(format!(
                "{} dims and {} maps for {} vertices and {} arrows",
                dims.len(),
                maps.len(),
                dq.vertex_count(),
                dq.arrows().len()
            )));
        }
        for (a, (m, arrow)) in maps.iter().zip(dq.arrows()).enumerate() {
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::DimMismatch(format!(
                    "arrow {} should be {}x{}, got {}x{}",
                    dq.arrow_name(a),
                    dims[arrow.target],
                    dims[arrow.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Module { field, dims, maps })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as u32).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, a: usize) -> &Matrix<F::Elem> {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    pub fn is_semisimple(&self) -> bool {
        self.maps.iter().all(|m| matrix::is_zero(&self.field, m))
    }

    /// Check the preprojective relations and nilpotency.
    pub fn validate(&self, dq: &DoubleQuiver) -> Result<()> {
        let f = &self.field;
        for i in 0..dq.vertex_count() {
            let mut rho = matrix::zeros(f, self.dims[i], self.dims[i]);
            for &a in dq.incoming(i) {
                let arrow = dq.arrow(a);
                let prod = matrix::mul(f, &self.maps[a], &self.maps[arrow.mate]);
                rho = if arrow.sign > 0 { matrix::add(f, &rho, &prod) } else { matrix::sub(f, &rho, &prod) };
            }
            if !matrix::is_zero(f, &rho) {
                return Err(Error::RelationViolated(i));
            }
        }
        let mut layer: Subspace<F::Elem> = self.dims.iter().map(|&d| matrix::identity(f, d)).collect();
        for _ in 0..=self.total_dim() {
            if layer.iter().all(|m| m.cols() == 0) {
                return Ok(());
            }
            layer = self.radical_of(dq, &layer);
        }
        Err(Error::NotNilpotent)
    }

    /// `Σ_a x_a(U_source(a))` at every vertex.
    pub fn radical_of(&self, dq: &DoubleQuiver, sub: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        let f = &self.field;
        (0..dq.vertex_count())
            .map(|t| {
                let mut span = matrix::zeros(f, self.dims[t], 0);
                for &a in dq.incoming(t) {
                    let img = matrix::mul(f, &self.maps[a], &sub[dq.arrow(a).source]);
                    span = span.hstack(&img);
                }
                matrix::column_space(f, &span)
            })
            .collect()
    }

    /// Radical `Σ_a im x_a`.
    pub fn radical(&self, dq: &DoubleQuiver) -> Subspace<F::Elem> {
        let full: Subspace<F::Elem> = self.dims.iter().map(|&d| matrix::identity(&self.field, d)).collect();
        self.radical_of(dq, &full)
    }

    /// Socle: at each vertex, the common kernel of the arrows leaving it.
    pub fn socle(&self, dq: &DoubleQuiver) -> Subspace<F::Elem> {
        let f = &self.field;
        (0..dq.vertex_count())
            .map(|i| {
                let mut stacked = matrix::zeros(f, 0, self.dims[i]);
                for &a in dq.outgoing(i) {
                    stacked = stacked.vstack(&self.maps[a]);
                }
                matrix::nullspace(f, &stacked)
            })
            .collect()
    }

    pub fn socle_dims(&self, dq: &DoubleQuiver) -> Vec<usize> {
        self.socle(dq).iter().map(Matrix::cols).collect()
    }

    pub fn head_dims(&self, dq: &DoubleQuiver) -> Vec<usize> {
        let rad = self.radical(dq);
        self.dims.iter().zip(&rad).map(|(d, r)| d - r.cols()).collect()
    }

    /// Multiplicity of `s_i` in the head.
    pub fn epsilon(&self, dq: &DoubleQuiver, i: usize) -> usize {
        self.head_dims(dq)[i]
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = &self.field;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let top = a.hstack(&matrix::zeros(f, a.rows(), b.cols()));
                let bottom = matrix::zeros(f, b.rows(), a.cols()).hstack(b);
                top.vstack(&bottom)
            })
            .collect();
        Module { field: self.field.clone(), dims, maps }
    }

    /// `x ⊕ s_i`.
    pub fn add_simple(&self, dq: &DoubleQuiver, i: usize) -> Self {
        self.direct_sum(&Module::simple(self.field.clone(), dq, i))
    }

    pub fn is_stable(&self, dq: &DoubleQuiver, sub: &Subspace<F::Elem>) -> bool {
        let f = &self.field;
        dq.arrows().iter().enumerate().all(|(a, arrow)| {
            let img = matrix::mul(f, &self.maps[a], &sub[arrow.source]);
            matrix::in_span(f, &sub[arrow.target], &img)
        })
    }

    /// The quotient `x/sub` together with the projections `V_i → V_i/sub_i`.
    pub fn quotient_with_projection(
        &self,
        dq: &DoubleQuiver,
        sub: &Subspace<F::Elem>,
    ) -> Result<(Self, Vec<Matrix<F::Elem>>)> {
        let f = &self.field;
        let mut proj = Vec::new();
        let mut sections = Vec::new();
        for (i, u) in sub.iter().enumerate() {
            let comp = matrix::complement(f, u);
            let basis = u.hstack(&comp);
            let inv =
                matrix::inverse(f, &basis).ok_or_else(|| Error::Invalid(format!("dependent basis at vertex {i}")))?;
            proj.push(inv.block(u.cols(), self.dims[i], 0, self.dims[i]));
            sections.push(comp);
        }
        let mut maps = Vec::new();
        for (a, arrow) in dq.arrows().iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            if !matrix::is_zero(f, &matrix::mul(f, &proj[t], &matrix::mul(f, &self.maps[a], &sub[s]))) {
                return Err(Error::NotStable);
            }
            maps.push(matrix::mul(f, &proj[t], &matrix::mul(f, &self.maps[a], &sections[s])));
        }
        let dims = sections.iter().map(Matrix::cols).collect();
        Ok((Module { field: self.field.clone(), dims, maps }, proj))
    }

    pub fn quotient(&self, dq: &DoubleQuiver, sub: &Subspace<F::Elem>) -> Result<Self> {
        Ok(self.quotient_with_projection(dq, sub)?.0)
    }

    /// The submodule spanned by `sub`, in the given bases.
    pub fn submodule(&self, dq: &DoubleQuiver, sub: &Subspace<F::Elem>) -> Result<Self> {
        let f = &self.field;
        let mut coords = Vec::new();
        for (i, u) in sub.iter().enumerate() {
            let comp = matrix::complement(f, u);
            let inv = matrix::inverse(f, &u.hstack(&comp))
                .ok_or_else(|| Error::Invalid(format!("dependent basis at vertex {i}")))?;
            coords.push(inv);
        }
        let mut maps = Vec::new();
        for (a, arrow) in dq.arrows().iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            let c = matrix::mul(f, &coords[t], &matrix::mul(f, &self.maps[a], &sub[s]));
            let k = sub[t].cols();
            if !matrix::is_zero(f, &c.block(k, self.dims[t], 0, c.cols())) {
                return Err(Error::NotStable);
            }
            maps.push(c.block(0, k, 0, c.cols()));
        }
        Ok(Module { field: self.field.clone(), dims: sub.iter().map(Matrix::cols).collect(), maps })
    }
}

impl Module<Rationals> {
    /// Reduction modulo `p` (entries must be `p`-integral).
    pub fn reduce(&self, fp: &Fp) -> Result<Module<Fp>> {
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let data = m.data().iter().map(|r| fp.reduce(r)).collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_rows(m.rows(), m.cols(), data))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Module { field: *fp, dims: self.dims.clone(), maps })
    }
}

impl Module<Fp> {
    /// Symmetric integer lift of every entry.
    pub fn lift(&self) -> Module<Rationals> {
        let fp = self.field;
        let maps = self.maps.iter().map(|m| m.map(|&x| Rational::from_integer(fp.lift(x) as i128))).collect();
        Module { field: Rationals, dims: self.dims.clone(), maps }
    }
}

/// Offsets of the unknowns `φ_i` (row-major `dy_i × dx_i` blocks).
fn hom_offsets(dx: &[usize], dy: &[usize]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(dx.len());
    let mut n = 0;
    for (a, b) in dx.iter().zip(dy) {
        off.push(n);
        n += a * b;
    }
    (off, n)
}

/// The linear system whose kernel is `Hom_Λ(x, y)`.
fn hom_system<F: Field>(dq: &DoubleQuiver, x: &Module<F>, y: &Module<F>) -> Matrix<F::Elem> {
    let f = &x.field;
    let (off, unknowns) = hom_offsets(&x.dims, &y.dims);
    let rows: usize = dq.arrows().iter().map(|a| y.dims[a.target] * x.dims[a.source]).sum();
    let mut sys = matrix::zeros(f, rows, unknowns);
    let mut row = 0;
    for (a, arrow) in dq.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (xa, ya) = (&x.maps[a], &y.maps[a]);
        for r in 0..y.dims[t] {
            for c in 0..x.dims[s] {
                // (φ_t x_a)[r,c] = Σ_k φ_t[r,k] x_a[k,c]
                for k in 0..x.dims[t] {
                    let v = xa.get(k, c);
                    if !f.is_zero(v) {
                        let idx = off[t] + r * x.dims[t] + k;
                        let cur = f.add(sys.get(row, idx), v);
                        sys.set(row, idx, cur);
                    }
                }
                // (y_a φ_s)[r,c] = Σ_k y_a[r,k] φ_s[k,c]
                for k in 0..y.dims[s] {
                    let v = ya.get(r, k);
                    if !f.is_zero(v) {
                        let idx = off[s] + k * x.dims[s] + c;
                        let cur = f.sub(sys.get(row, idx), v);
                        sys.set(row, idx, cur);
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

/// A homomorphism as per-vertex matrices `φ_i : X_i → Y_i`.
pub type Hom<E> = Vec<Matrix<E>>;

/// Basis of `Hom_Λ(x, y)`.
pub fn hom_basis<F: Field>(dq: &DoubleQuiver, x: &Module<F>, y: &Module<F>) -> Result<Vec<Hom<F::Elem>>> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    let f = &x.field;
    let (off, _) = hom_offsets(&x.dims, &y.dims);
    let ns = matrix::nullspace(f, &hom_system(dq, x, y));
    Ok((0..ns.cols())
        .map(|k| {
            (0..x.dims.len())
                .map(|i| {
                    let data = (0..y.dims[i] * x.dims[i]).map(|e| ns.get(off[i] + e, k).clone()).collect();
                    Matrix::from_rows(y.dims[i], x.dims[i], data)
                })
                .collect()
        })
        .collect())
}

pub fn hom_dim<F: Field>(dq: &DoubleQuiver, x: &Module<F>, y: &Module<F>) -> Result<usize> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    let sys = hom_system(dq, x, y);
    Ok(sys.cols() - matrix::rank(&x.field, &sys))
}

/// `dim Ext¹(x, y) = hom(x,y) + hom(y,x) − (dim x, dim y)`.
pub fn ext1_dim<F: Field>(dq: &DoubleQuiver, c: &CartanMatrix, x: &Module<F>, y: &Module<F>) -> Result<i64> {
    let h = hom_dim(dq, x, y)? as i64 + hom_dim(dq, y, x)? as i64;
    Ok(h - c.sym_form(&x.dim_vector(), &y.dim_vector()))
}

/// Block-diagonal matrix of a homomorphism on the total space.
pub fn hom_total<F: Field>(f: &F, phi: &Hom<F::Elem>) -> Matrix<F::Elem> {
    let rows: usize = phi.iter().map(Matrix::rows).sum();
    let cols: usize = phi.iter().map(Matrix::cols).sum();
    let mut out = matrix::zeros(f, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for m in phi {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r0 + r, c0 + c, m.get(r, c).clone());
            }
        }
        r0 += m.rows();
        c0 += m.cols();
    }
    out
}

pub fn compose<F: Field>(f: &F, psi: &Hom<F::Elem>, phi: &Hom<F::Elem>) -> Hom<F::Elem> {
    psi.iter().zip(phi).map(|(a, b)| matrix::mul(f, a, b)).collect()
}

/// Whether `End(x)` is local with residue field the base field.
pub fn is_indecomposable<F: Field>(dq: &DoubleQuiver, x: &Module<F>) -> Result<bool> {
    if x.total_dim() == 0 {
        return Ok(false);
    }
    let f = &x.field;
    let ends: Vec<Matrix<F::Elem>> = hom_basis(dq, x, x)?.iter().map(|h| hom_total(f, h)).collect();
    if ends.len() == 1 {
        return Ok(true);
    }
    if f.characteristic() == 0 {
        // In characteristic 0 the radical of End(x) is the kernel of the
        // trace form (a, b) ↦ tr(ab) on x.
        let m = ends.len();
        let mut gram = matrix::zeros(f, m, m);
        for i in 0..m {
            for j in 0..m {
                let p = matrix::mul(f, &ends[i], &ends[j]);
                let mut tr = f.zero();
                for k in 0..p.rows() {
                    tr = f.add(&tr, p.get(k, k));
                }
                gram.set(i, j, tr);
            }
        }
        return Ok(matrix::rank(f, &gram) == 1);
    }
    local_by_scalars(f, &ends)
}

fn local_by_scalars<F: Field>(f: &F, ends: &[Matrix<F::Elem>]) -> Result<bool> {
    let n = ends[0].rows();
    let q = f.size().ok_or_else(|| Error::Invalid("scalar search needs a finite field".into()))?;
    let mut nil = Vec::new();
    for b in ends {
        let mut found = None;
        for k in 0..q {
            let c = f.nth(k);
            let shifted = matrix::sub(f, b, &matrix::scalar(f, n, c));
            if matrix::is_nilpotent(f, &shifted) {
                found = Some(shifted);
                break;
            }
        }
        match found {
            Some(s) => nil.push(s),
            None => return Ok(false),
        }
    }
    let flat = |ms: &[Matrix<F::Elem>]| {
        let data: Vec<F::Elem> = ms.iter().flat_map(|m| m.data().iter().cloned()).collect();
        Matrix::from_rows(ms.len(), n * n, data)
    };
    let span = flat(&nil);
    let (red, piv) = matrix::rref(f, &span);
    if piv.len() != ends.len() - 1 {
        return Ok(false);
    }
    let rad: Vec<Matrix<F::Elem>> = (0..piv.len()).map(|r| Matrix::from_rows(n, n, red.row(r).to_vec())).collect();
    // closed under products and nilpotent as an ideal
    let mut power = rad.clone();
    for _ in 0..=n {
        let prods: Vec<Matrix<F::Elem>> =
            power.iter().flat_map(|a| rad.iter().map(move |b| matrix::mul(f, a, b))).collect();
        if prods.is_empty() {
            return Ok(true);
        }
        let pm = flat(&prods);
        if !matrix::in_span(f, &span.transpose(), &pm.transpose()) {
            return Ok(false);
        }
        let cs = matrix::column_space(f, &pm.transpose());
        if cs.cols() == 0 {
            return Ok(true);
        }
        power = (0..cs.cols()).map(|c| Matrix::from_rows(n, n, cs.column(c))).collect();
    }
    Ok(false)
}

/// For indecomposable `x` and `y`: an isomorphism exists iff some basis
/// composite `ψ∘φ` is invertible.
pub fn indecomposables_isomorphic<F: Field>(dq: &DoubleQuiver, x: &Module<F>, y: &Module<F>) -> Result<bool> {
    if x.dims != y.dims {
        return Ok(false);
    }
    let f = &x.field;
    let xy = hom_basis(dq, x, y)?;
    if xy.is_empty() {
        return Ok(false);
    }
    let yx = hom_basis(dq, y, x)?;
    for phi in &xy {
        for psi in &yx {
            if matrix::is_invertible(f, &hom_total(f, &compose(f, psi, phi))) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::pp_algebra::{double_quiver, injective_module, injective_sum};
    use crate::root_datum::{build_cartan, Graph, Weight};

    fn a2() -> (DoubleQuiver, CartanMatrix) {
        let g = Graph::builtin("A2").unwrap();
        (double_quiver(&g), build_cartan(&g).unwrap())
    }

    fn q(rows: usize, cols: usize, v: &[i128]) -> Matrix<Rational> {
        Matrix::from_rows(rows, cols, v.iter().map(|&x| rat(x)).collect())
    }

    /// `u₁ → u₂`
    fn x4(dq: &DoubleQuiver) -> Module<Rationals> {
        Module::from_matrices(Rationals, dq, vec![1, 1], vec![q(1, 1, &[1]), q(1, 1, &[0])]).unwrap()
    }

    #[test]
    fn construction() {
        let (dq, _) = a2();
        let s1 = Module::simple(Rationals, &dq, 0);
        assert_eq!(s1.dims(), &[1, 0]);
        let x = s1.direct_sum(&s1).add_simple(&dq, 1);
        assert_eq!(x.dims(), &[2, 1]);
        assert!(x.is_semisimple());
        x.validate(&dq).unwrap();
        x4(&dq).validate(&dq).unwrap();
    }

    #[test]
    fn validation_errors() {
        let (dq, _) = a2();
        let bad = Module::from_matrices(Rationals, &dq, vec![1, 1], vec![q(1, 1, &[1]), q(1, 1, &[1])]);
        assert!(matches!(bad, Err(Error::RelationViolated(_))));
        // a cycle satisfying the relations on the double edge
        let g = Graph::builtin("A1~").unwrap();
        let dq2 = double_quiver(&g);
        let one = q(1, 1, &[1]);
        let maps = vec![one.clone(), one.clone(), one, q(1, 1, &[-1])];
        let cyc = Module::from_matrices(Rationals, &dq2, vec![1, 1], maps);
        assert_eq!(cyc.unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn homs_and_exts() {
        let (dq, c) = a2();
        let s1 = Module::simple(Rationals, &dq, 0);
        let s2 = Module::simple(Rationals, &dq, 1);
        assert_eq!(hom_dim(&dq, &s1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&dq, &s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&dq, &x4(&dq), &s1).unwrap(), 1);
        assert_eq!(ext1_dim(&dq, &c, &s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&dq, &c, &s1, &s1).unwrap(), 0);
        let q1 = injective_module(&dq, 0).unwrap();
        assert_eq!(ext1_dim(&dq, &c, &q1, &s1).unwrap(), 0);
    }

    #[test]
    fn socle_and_head() {
        let (dq, _) = a2();
        let ql = injective_sum(&dq, &Weight(vec![1, 1])).unwrap();
        assert_eq!(ql.socle_dims(&dq), vec![1, 1]);
        let s1 = Module::simple(Rationals, &dq, 0);
        assert_eq!(s1.direct_sum(&s1).epsilon(&dq, 0), 2);
        assert_eq!(x4(&dq).epsilon(&dq, 1), 0);
        assert_eq!(x4(&dq).head_dims(&dq), vec![1, 0]);
    }

    #[test]
    fn quotients() {
        let (dq, _) = a2();
        let x = x4(&dq);
        let line = vec![q(1, 0, &[]), q(1, 1, &[1])];
        let quo = x.quotient(&dq, &line).unwrap();
        assert_eq!(quo, Module::simple(Rationals, &dq, 0));
        let full = vec![q(1, 1, &[1]), q(1, 1, &[1])];
        assert_eq!(x.quotient(&dq, &full).unwrap(), Module::zero(Rationals, &dq));
        let not_stable = vec![q(1, 1, &[1]), q(1, 0, &[])];
        assert_eq!(x.quotient(&dq, &not_stable).unwrap_err(), Error::NotStable);
        let ql = injective_sum(&dq, &Weight(vec![1, 1])).unwrap();
        let soc = ql.socle(&dq);
        let top = ql.quotient(&dq, &soc).unwrap();
        assert!(top.is_semisimple());
        assert_eq!(top.dims(), &[1, 1]);
        assert_eq!(ql.submodule(&dq, &soc).unwrap().dims(), &[1, 1]);
    }

    #[test]
    fn indecomposability() {
        let (dq, _) = a2();
        let f5 = Fp::new(5).unwrap();
        let q1 = injective_module(&dq, 0).unwrap();
        assert!(is_indecomposable(&dq, &q1).unwrap());
        assert!(is_indecomposable(&dq, &q1.reduce(&f5).unwrap()).unwrap());
        let s1 = Module::simple(Rationals, &dq, 0);
        assert!(!is_indecomposable(&dq, &s1.direct_sum(&s1)).unwrap());
        let x6 = x4(&dq).add_simple(&dq, 0);
        assert!(!is_indecomposable(&dq, &x6.reduce(&f5).unwrap()).unwrap());
        assert!(!is_indecomposable(&dq, &x6).unwrap());
    }

    #[test]
    fn isomorphic_submodules() {
        // x₄ and x₄' = ((u₁+v₁) → u₂) inside q = (u₁→u₂ ; v₁←v₂)
        let (dq, _) = a2();
        let ql = injective_sum(&dq, &Weight(vec![1, 1])).unwrap();
        let subs: Vec<_> = [[1, 0], [1, 1]]
            .iter()
            .filter_map(|v| {
                let l = q(2, 1, &[v[0], v[1]]);
                let img = matrix::mul(&Rationals, ql.map(0), &l);
                ql.submodule(&dq, &vec![l, matrix::column_space(&Rationals, &img)]).ok()
            })
            .collect();
        let x4q = x4(&dq);
        let hits = subs.iter().filter(|s| indecomposables_isomorphic(&dq, s, &x4q).unwrap()).count();
        assert!(hits >= 1);
        let s12 = Module::simple(Rationals, &dq, 0).add_simple(&dq, 1);
        assert!(!indecomposables_isomorphic(&dq, &s12, &x4q).unwrap());
    }
}
