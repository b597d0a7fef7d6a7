//! Exact linear algebra over a [`Field`].
//!
//! Matrices are sparse and immutable once built. Ranks over a prime field go
//! through a dense elimination for narrow matrices and a Markowitz-pivoted
//! sparse elimination (finishing densely once fill-in takes over) for wide
//! ones; see [`prime_rank`].

mod dense;
mod exact;
mod sparse;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

pub use exact::rational_rank;

/// Column count at or below which prime-field ranks use dense elimination.
pub const DENSE_COLUMN_THRESHOLD: usize = 2000;

/// Sparse vector: `(index, nonzero value)` pairs sorted by index.
pub type SparseVec<E> = Vec<(usize, E)>;

/// A sparse matrix over `F`, stored by rows.
///
/// No stored entry is zero, no `(row, col)` pair is stored twice, and every
/// index is in bounds.
#[derive(Clone, Debug)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, F::Elem)>>,
}

pub type PrimeFieldMatrix = SparseMatrix<PrimeField>;

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let data = (0..n).map(|i| vec![(i as u32, one.clone())]).collect();
        Self {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate positions
    /// are summed and zeros dropped.
    pub fn from_triplets<I>(field: F, rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, F::Elem)>,
    {
        let mut data: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            data[r].push((c as u32, v));
        }
        for row in &mut data {
            normalize_row(&field, row);
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: F, rows: usize, columns: &[SparseVec<F::Elem>]) -> Result<Self> {
        let cols = columns.len();
        let triplets = columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone())));
        Self::from_triplets(field, rows, cols, triplets)
    }

    pub fn from_dense(field: F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                if !field.is_zero(v) {
                    triplets.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(field, nrows, ncols, triplets)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(u32, F::Elem)] {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.data[i].binary_search_by_key(&(j as u32), |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Iterates over the stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j as usize, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j as usize].push((i as u32, v.clone()));
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Applies row and column permutations: entry `(i, j)` moves to
    /// `(row_perm[i], col_perm[j])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: row_perm.len(),
            });
        }
        let triplets = self
            .entries()
            .map(|(i, j, v)| (row_perm[i], col_perm[j], v.clone()))
            .collect::<Vec<_>>();
        Self::from_triplets(self.field.clone(), self.rows, self.cols, triplets)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(f.zero(), |acc, (j, a)| f.add(&acc, &f.mul(a, &v[*j as usize])))
            })
            .collect())
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: Vec<(u32, F::Elem)> = Vec::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k as usize] {
                    acc.push((*j, f.mul(a, b)));
                }
            }
            normalize_row(f, &mut acc);
            data.push(acc);
        }
        Ok(Self {
            field: f.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub(crate) fn raw_rows(&self) -> &[Vec<(u32, F::Elem)>] {
        &self.data
    }
}

fn normalize_row<F: Field>(field: &F, row: &mut Vec<(u32, F::Elem)>) {
    row.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(u32, F::Elem)> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = field.add(lv, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    *row = out;
}

/// Rank over the matrix's field.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    m.field().rank(m)
}

/// Brings `rows` to reduced row echelon form in place (zero rows dropped)
/// and returns the pivot column of each remaining row.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for v in rows[r][c..].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for k in c..ncols {
                if !field.is_zero(&pivot_row[k]) {
                    row[k] = field.sub(&row[k], &field.mul(&factor, &pivot_row[k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn dense_generic_rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    // Row-reduce whichever orientation has fewer rows.
    let t;
    let m = if m.rows() > m.cols() {
        t = m.transpose();
        &t
    } else {
        m
    };
    let mut rows = m.to_dense();
    rref(m.field(), &mut rows, m.cols()).len()
}

/// Rank over a prime field: dense elimination up to
/// [`DENSE_COLUMN_THRESHOLD`] columns, sparse Markowitz elimination above.
pub fn prime_rank(m: &SparseMatrix<PrimeField>) -> usize {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return 0;
    }
    let p = m.field().modulus();
    if m.cols() <= DENSE_COLUMN_THRESHOLD {
        dense::rank_of_sparse_rows(p, m.raw_rows(), m.cols())
    } else {
        sparse::markowitz_rank(p, m.raw_rows(), m.cols())
    }
}

/// Dense prime-field rank regardless of shape (reference path for tests and
/// benchmarks).
pub fn prime_rank_dense(m: &SparseMatrix<PrimeField>) -> usize {
    dense::rank_of_sparse_rows(m.field().modulus(), m.raw_rows(), m.cols())
}

/// Sparse prime-field rank regardless of shape.
pub fn prime_rank_sparse(m: &SparseMatrix<PrimeField>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    sparse::markowitz_rank(m.field().modulus(), m.raw_rows(), m.cols())
}

/// A basis of the right kernel `{v : m v = 0}`, as dense vectors.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<Vec<F::Elem>> {
    let field = m.field();
    let n = m.cols();
    let mut rows = m.to_dense();
    let pivots = rref(field, &mut rows, n);
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::with_capacity(n - pivots.len());
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            if !field.is_zero(&row[free]) {
                v[pc] = field.neg(&row[free]);
            }
        }
        basis.push(v);
    }
    basis
}

/// A complement of a subspace, selected among coordinate vectors, together
/// with the projection onto it along the subspace.
#[derive(Clone, Debug)]
pub struct QuotientBasis<F: Field> {
    field: F,
    ambient_dim: usize,
    /// Coordinate indices spanning a complement of the subspace, ascending.
    complement: Vec<usize>,
    /// Position of each ambient coordinate inside `complement`.
    complement_pos: Vec<Option<usize>>,
    /// Reduced echelon basis of the subspace: (pivot coordinate, row).
    reducers: Vec<(usize, SparseVec<F::Elem>)>,
    reducer_of: Vec<Option<usize>>,
}

/// Complement basis and reduction map for the column span of
/// `subspace_gens` inside `F^ambient_dim`.
///
/// Pivots are taken as early as possible in coordinate order, so the
/// complement consists of the latest coordinates that are independent
/// modulo the subspace.
pub fn quotient_basis<F: Field>(ambient_dim: usize, subspace_gens: &SparseMatrix<F>) -> Result<QuotientBasis<F>> {
    if subspace_gens.rows() != ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: ambient_dim,
            found: subspace_gens.rows(),
        });
    }
    let field = subspace_gens.field().clone();
    let mut rows = subspace_gens.transpose().to_dense();
    let pivots = rref(&field, &mut rows, ambient_dim);
    let mut reducer_of = vec![None; ambient_dim];
    let mut reducers = Vec::with_capacity(pivots.len());
    for (k, (row, &pc)) in rows.iter().zip(&pivots).enumerate() {
        reducer_of[pc] = Some(k);
        let sparse: SparseVec<F::Elem> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !field.is_zero(v))
            .map(|(j, v)| (j, v.clone()))
            .collect();
        reducers.push((pc, sparse));
    }
    let complement: Vec<usize> = (0..ambient_dim).filter(|&i| reducer_of[i].is_none()).collect();
    let mut complement_pos = vec![None; ambient_dim];
    for (k, &i) in complement.iter().enumerate() {
        complement_pos[i] = Some(k);
    }
    Ok(QuotientBasis {
        field,
        ambient_dim,
        complement,
        complement_pos,
        reducers,
        reducer_of,
    })
}

impl<F: Field> QuotientBasis<F> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn subspace_dim(&self) -> usize {
        self.reducers.len()
    }

    /// Position of an ambient coordinate among the complement indices.
    pub fn complement_position(&self, ambient_index: usize) -> Option<usize> {
        self.complement_pos[ambient_index]
    }

    /// Canonical representative of `v` modulo the subspace, in complement
    /// coordinates.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.complement.len()];
        for (i, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            match self.reducer_of[i] {
                None => {
                    let k = self.complement_pos[i].expect("complement coordinate");
                    out[k] = f.add(&out[k], x);
                }
                Some(r) => {
                    // x e_i = x (reducer row) - x (rest of reducer row)
                    for (j, c) in &self.reducers[r].1 {
                        if *j == i {
                            continue;
                        }
                        let k = self.complement_pos[*j].expect("reduced rows vanish at pivots");
                        out[k] = f.sub(&out[k], &f.mul(x, c));
                    }
                }
            }
        }
        out
    }

    /// Reduction of a single coordinate vector `e_i`.
    pub fn reduce_unit(&self, i: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        match self.reducer_of[i] {
            None => vec![(self.complement_pos[i].unwrap(), f.one())],
            Some(r) => self.reducers[r]
                .1
                .iter()
                .filter(|(j, _)| *j != i)
                .map(|(j, c)| (self.complement_pos[*j].unwrap(), f.neg(c)))
                .collect(),
        }
    }

    /// The reduction as an ambient vector: `v` minus its projection into the
    /// subspace.
    pub fn reduce_ambient(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let reduced = self.reduce(v);
        let mut out = vec![f.zero(); self.ambient_dim];
        for (k, x) in reduced.into_iter().enumerate() {
            out[self.complement[k]] = x;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn rank_of_empty_identity_and_all_ones() {
        let f = fp();
        assert_eq!(rank(&SparseMatrix::zeros(f, 0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::identity(f, 7)), 7);
        let ones = SparseMatrix::from_dense(f, &vec![vec![1u32; 3]; 3]).unwrap();
        assert_eq!(rank(&ones), 1);
    }

    #[test]
    fn triplets_are_normalized() {
        let f = fp();
        let m = SparseMatrix::from_triplets(
            f,
            2,
            2,
            vec![(0, 0, 1), (0, 0, DEFAULT_PRIME - 1), (1, 1, 5), (1, 1, 2)],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 7);
        assert!(SparseMatrix::from_triplets(f, 2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = fp();
        assert!(kernel_basis(&SparseMatrix::identity(f, 4)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(f, 3, 3)).len(), 3);
        let m = SparseMatrix::from_dense(f, &[vec![1, 1]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert_eq!(f.add(&k[0][0], &k[0][1]), 0);
        assert_ne!(k[0][0], 0);
    }

    #[test]
    fn quotient_examples() {
        let f = fp();
        let q = quotient_basis(3, &SparseMatrix::zeros(f, 3, 0)).unwrap();
        assert_eq!(q.complement(), &[0, 1, 2]);
        assert_eq!(q.reduce(&[4, 5, 6]), vec![4, 5, 6]);

        let q = quotient_basis(3, &SparseMatrix::identity(f, 3)).unwrap();
        assert!(q.complement().is_empty());
        assert!(q.reduce(&[4, 5, 6]).is_empty());

        let gens = SparseMatrix::from_dense(f, &[vec![1], vec![1], vec![0]]).unwrap();
        let q = quotient_basis(3, &gens).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.reduce(&[1, 1, 0]).iter().all(|x| *x == 0));
        // idempotent on the ambient representative
        let v = [3, 11, 9];
        let once = q.reduce_ambient(&v);
        assert_eq!(q.reduce_ambient(&once), once);
    }

    #[test]
    fn dense_and_sparse_paths_agree_on_structured_matrix() {
        let f = fp();
        // 2500 columns forces the sparse path; rank 2499 by construction
        let n = 2500;
        let mut t = Vec::new();
        for i in 0..n - 1 {
            t.push((i, i, 1u32));
            t.push((i, i + 1, DEFAULT_PRIME - 1));
        }
        t.push((n - 1, 0, 3));
        t.push((n - 1, 1, DEFAULT_PRIME - 3));
        let m = SparseMatrix::from_triplets(f, n, n, t).unwrap();
        assert_eq!(prime_rank_sparse(&m), n - 1);
        assert_eq!(prime_rank_dense(&m), n - 1);
        assert_eq!(rank(&m), n - 1);
    }
}
