//! Koszul complexes `∧^{p+1}W ⊗ M_{q-1} → ∧^p W ⊗ M_q → ∧^{p-1}W ⊗ M_{q+1}`.
//!
//! `W` is a subspace of `S_1` and `M_q` a subspace of `S_q` closed under
//! multiplication by `W` (in practice: full pieces, or `W_x` in degree 1).
//! Targets of differentials are always written in the ambient `S_{q+1}`;
//! ranks do not depend on that choice.

use super::wedge::{binomial, binomial_i, combinations_colex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, SparseMatrix, SparseVec};
use crate::models::{sections_vanishing_at, to_sparse, CurveModel, PointedModel, MAX_DEGREE};

#[derive(Clone, Debug)]
pub struct KoszulModule<'a, F: Field> {
    model: &'a CurveModel<F>,
    w_dim: usize,
    source_dims: Vec<usize>,
    /// `products[q][i][j] = w_i * m_j` in the basis of `S_{q+1}`.
    products: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
}

fn unit_vectors<F: Field>(f: &F, n: usize) -> Vec<SparseVec<F::Elem>> {
    (0..n).map(|i| vec![(i, f.one())]).collect()
}

impl<'a, F: Field> KoszulModule<'a, F> {
    /// `W = S_1`, `M = S`: the groups `K_{p,q}(C, L)`.
    pub fn full(model: &'a CurveModel<F>) -> Result<Self> {
        let w = unit_vectors(model.field(), model.h0());
        Self::build(model, w, Vec::new())
    }

    /// `W` given by independent vectors of `S_1`, `M = S`: the groups
    /// `K_{p,q}(C, L, W)`.
    pub fn with_subspace(model: &'a CurveModel<F>, w: &[Vec<F::Elem>]) -> Result<Self> {
        let f = model.field();
        if let Some(v) = w.iter().find(|v| v.len() != model.h0()) {
            return Err(Error::DimensionMismatch {
                expected: model.h0(),
                found: v.len(),
            });
        }
        let cols: Vec<SparseVec<F::Elem>> = w.iter().map(|v| to_sparse(f, v.clone())).collect();
        let m = SparseMatrix::from_columns(f.clone(), model.h0(), &cols)?;
        if rank(&m) != w.len() {
            return Err(Error::Precondition("W must be given by independent vectors".into()));
        }
        Self::build(model, cols, Vec::new())
    }

    /// The one-point module: `W = M_1 = H^0(L(-x))`, `M_0 = S_0`,
    /// `M_q = S_q` for `q >= 2`. Its `K_{p,1}` is `K_{p,1}(C, L(-x))`.
    pub fn one_point(pm: &'a PointedModel<F>) -> Result<Self> {
        let model = pm.base();
        let f = model.field();
        let wx: Vec<SparseVec<F::Elem>> = sections_vanishing_at(pm, 1)?
            .into_iter()
            .map(|v| to_sparse(f, v))
            .collect();
        Self::build(model, wx.clone(), vec![(1, wx)])
    }

    fn build(
        model: &'a CurveModel<F>,
        w: Vec<SparseVec<F::Elem>>,
        overrides: Vec<(usize, Vec<SparseVec<F::Elem>>)>,
    ) -> Result<Self> {
        let f = model.field();
        let mut sources: Vec<Vec<SparseVec<F::Elem>>> =
            (0..=MAX_DEGREE).map(|q| unit_vectors(f, model.dim(q as i64))).collect();
        for (q, basis) in overrides {
            sources[q] = basis;
        }
        let products = (0..MAX_DEGREE)
            .map(|q| {
                w.iter()
                    .map(|wi| {
                        sources[q]
                            .iter()
                            .map(|mj| model.multiply(1, wi, q, mj))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            model,
            w_dim: w.len(),
            source_dims: sources.iter().map(Vec::len).collect(),
            products,
        })
    }

    pub fn model(&self) -> &CurveModel<F> {
        self.model
    }

    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    /// `dim M_q`, zero for `q` outside the built range.
    pub fn source_dim(&self, q: i64) -> usize {
        if q < 0 {
            0
        } else {
            self.source_dims.get(q as usize).copied().unwrap_or(0)
        }
    }

    /// `dim ∧^p W ⊗ M_q`.
    pub fn term_dim(&self, p: i64, q: i64) -> usize {
        binomial_i(self.w_dim as i64, p) * self.source_dim(q)
    }

    /// The differential `d_{p,q}: ∧^p W ⊗ M_q → ∧^{p-1} W ⊗ S_{q+1}`, with
    /// row index `rank(J) * dim S_{q+1} + t` and column index
    /// `rank(I) * dim M_q + s` in colex order.
    pub fn differential(&self, p: i64, q: i64) -> Result<SparseMatrix<F>> {
        let f = self.model.field().clone();
        let n = self.w_dim;
        let target = self.model.dim(q + 1);
        let rows = binomial_i(n as i64, p - 1) * target;
        let cols = self.term_dim(p, q);
        if p <= 0 || p as usize > n || q < 0 || q as usize >= MAX_DEGREE || rows == 0 || cols == 0 {
            return Ok(SparseMatrix::zeros(f, rows, cols));
        }
        let (p, q) = (p as usize, q as usize);
        let src = self.source_dims[q];
        let prods = &self.products[q];
        let mut triplets = Vec::new();
        for (col_block, combo) in combinations_colex(n, p).enumerate() {
            for (k, &ik) in combo.iter().enumerate() {
                let before: usize = combo[..k].iter().enumerate().map(|(l, &c)| binomial(c, l + 1)).sum();
                let after_shifted: usize = combo[k + 1..]
                    .iter()
                    .enumerate()
                    .map(|(l, &c)| binomial(c, l + k + 1))
                    .sum();
                // colex rank of the combination with its k-th entry removed
                let row_block = before + after_shifted;
                let negate = k % 2 == 1;
                for s in 0..src {
                    for (t, c) in &prods[ik][s] {
                        let v = if negate { f.neg(c) } else { c.clone() };
                        triplets.push((row_block * target + t, col_block * src + s, v));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(f, rows, cols, triplets)
    }

    pub fn differential_rank(&self, p: i64, q: i64) -> Result<usize> {
        if self.term_dim(p, q) == 0 || p <= 0 {
            return Ok(0);
        }
        Ok(rank(&self.differential(p, q)?))
    }

    /// `dim K_{p,q} = dim(∧^p W ⊗ M_q) - rank d_{p,q} - rank d_{p+1,q-1}`.
    pub fn koszul_dim(&self, p: i64, q: i64) -> Result<usize> {
        let dim = self.term_dim(p, q);
        if dim == 0 {
            return Ok(0);
        }
        Ok(dim - self.differential_rank(p, q)? - self.differential_rank(p + 1, q - 1)?)
    }
}

/// Matrix of `d_{p,q}` for `K(C, L, W)`; `w = None` means `W = S_1`.
pub fn koszul_differential<F: Field>(
    model: &CurveModel<F>,
    w: Option<&[Vec<F::Elem>]>,
    p: i64,
    q: i64,
) -> Result<SparseMatrix<F>> {
    match w {
        None => KoszulModule::full(model)?.differential(p, q),
        Some(w) => KoszulModule::with_subspace(model, w)?.differential(p, q),
    }
}

/// `dim K_{p,q}(C, L, W)`; `w = None` means `W = S_1`.
pub fn koszul_dim<F: Field>(model: &CurveModel<F>, w: Option<&[Vec<F::Elem>]>, p: i64, q: i64) -> Result<usize> {
    match w {
        None => KoszulModule::full(model)?.koszul_dim(p, q),
        Some(w) => KoszulModule::with_subspace(model, w)?.koszul_dim(p, q),
    }
}
