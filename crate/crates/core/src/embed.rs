//! Embeddings `x ↪ q_ν` and the cokernel `q_ν/x`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lambda_mod::{hom_basis, Module, Subspace};
use crate::matrix::{self, Matrix};
use crate::pp_algebra::DoubleQuiver;
use crate::root_datum::{DimVector, Weight};

/// Multiplicities of the simples in the socle.
pub fn socle_mults<F: Field>(dq: &DoubleQuiver, x: &Module<F>) -> DimVector {
    DimVector(x.socle_dims(dq).iter().map(|&d| d as u32).collect())
}

/// `(ν;α_i) = max(a_i, (λ;α_i), 0)` with `a` the socle multiplicities.
pub fn choose_nu_from_socle(socle: &DimVector, lambda: &Weight) -> Weight {
    Weight(socle.0.iter().zip(&lambda.0).map(|(&a, &l)| (a as i64).max(l).max(0)).collect())
}

pub fn choose_nu<F: Field>(dq: &DoubleQuiver, x: &Module<F>, lambda: &Weight) -> Weight {
    choose_nu_from_socle(&socle_mults(dq, x), lambda)
}

#[derive(Clone, Debug)]
pub struct Embedding<F: Field> {
    pub target: Module<F>,
    /// `inj[i]` is `dim q_i × dim x_i`, injective.
    pub inj: Vec<Matrix<F::Elem>>,
    pub cokernel: Module<F>,
    /// `V_i → (q/x)_i`.
    pub proj: Vec<Matrix<F::Elem>>,
    /// Columns completing `inj[i]` to a basis; a section of `proj[i]`.
    pub section: Vec<Matrix<F::Elem>>,
}

impl<F: Field> Embedding<F> {
    pub fn image(&self) -> Subspace<F::Elem> {
        self.inj.clone()
    }

    /// `φ_i`: multiplicity of `s_i` in the socle of the cokernel.
    pub fn phi(&self, dq: &DoubleQuiver, i: usize) -> usize {
        self.cokernel.socle_dims(dq)[i]
    }
}

/// Socle map sending the socle basis of `x` into the socle basis of `q`,
/// variant `k` shifts and shears the assignment. Every variant is injective.
pub fn socle_map<F: Field>(f: &F, x_dim: usize, q_dim: usize, k: usize) -> Option<Matrix<F::Elem>> {
    if x_dim > q_dim {
        return None;
    }
    let mut m = matrix::zeros(f, q_dim, x_dim);
    for j in 0..x_dim {
        m.set((j + k) % q_dim, j, f.one());
        if k > 0 {
            for l in 0..j {
                let r = (l + k) % q_dim;
                let v = f.add(m.get(r, j), &f.one());
                m.set(r, j, v);
            }
        }
    }
    Some(m)
}

/// Embed `x` into the injective module `q` (of socle `ν`).
pub fn embed<F: Field>(dq: &DoubleQuiver, x: &Module<F>, q: &Module<F>) -> Result<Embedding<F>> {
    embed_variant(dq, x, q, 0)
}

pub fn embed_variant<F: Field>(
    dq: &DoubleQuiver,
    x: &Module<F>,
    q: &Module<F>,
    variant: usize,
) -> Result<Embedding<F>> {
    let f = x.field().clone();
    let n = dq.vertex_count();
    let sx = x.socle(dq);
    let sq = q.socle(dq);
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let s = socle_map(&f, sx[i].cols(), sq[i].cols(), variant).ok_or(Error::NoEmbedding)?;
        // target values in q, as columns
        sigma.push(matrix::mul(&f, &sq[i], &s));
    }
    let homs = hom_basis(dq, x, q)?;
    // restriction of each basis hom to the socle, flattened
    let width: usize = (0..n).map(|i| q.dims()[i] * sx[i].cols()).sum();
    let mut sys = matrix::zeros(&f, width, homs.len());
    for (k, h) in homs.iter().enumerate() {
        let mut row = 0;
        for i in 0..n {
            let r = matrix::mul(&f, &h[i], &sx[i]);
            for e in r.data() {
                sys.set(row, k, e.clone());
                row += 1;
            }
        }
    }
    let rhs_data: Vec<F::Elem> = sigma.iter().flat_map(|m| m.data().iter().cloned()).collect();
    let rhs = Matrix::from_rows(width, 1, rhs_data);
    let coeffs = matrix::solve(&f, &sys, &rhs).ok_or(Error::NoEmbedding)?;
    let mut inj: Vec<Matrix<F::Elem>> = (0..n).map(|i| matrix::zeros(&f, q.dims()[i], x.dims()[i])).collect();
    for (k, h) in homs.iter().enumerate() {
        let c = coeffs.get(k, 0);
        if f.is_zero(c) {
            continue;
        }
        for i in 0..n {
            inj[i] = matrix::add(&f, &inj[i], &matrix::scale(&f, c, &h[i]));
        }
    }
    for (i, m) in inj.iter().enumerate() {
        if matrix::rank(&f, m) != x.dims()[i] {
            return Err(Error::NoEmbedding);
        }
    }
    let section: Vec<_> = inj.iter().map(|u| matrix::complement(&f, u)).collect();
    let (cokernel, proj) = q.quotient_with_projection(dq, &inj)?;
    Ok(Embedding { target: q.clone(), inj, cokernel, proj, section })
}
