//! Integral quadratic lattices given by Gram matrices.

mod diophantine;
mod search;
mod standard;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use diophantine::{
    cauchy_schwarz_feasible, double_plane_cubic_analysis, BruteForceSummary, CaseCertificate, DoublePlaneReport,
    Feasibility, InfeasibleReason, CASTELNUOVO_SEVERI_FLOOR,
};
pub use search::{
    clifford_search, naive_box, naive_clifford_search, CliffordSearchResult, PairingCertificate, SearchConstraints,
};
pub use standard::{
    e8_cartan_edges, nikulin_quotient_picard, standard_lattice, GlueParity, NikulinOverlattice, StandardLattice,
};

/// A divisor class as integer coordinates in its lattice's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        DivisorClass(self.0.iter().map(|x| k * x).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A nondegenerate symmetric bilinear form on `Z^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralLattice {
    name: String,
    gram: Vec<Vec<i64>>,
    labels: Vec<String>,
}

impl IntegralLattice {
    pub fn new(name: impl Into<String>, gram: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice("Gram matrix is not square".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidLattice(format!("{} labels for rank {n}", labels.len())));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!("Gram matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let l = Self {
            name: name.into(),
            gram,
            labels,
        };
        if l.determinant() == 0 {
            return Err(Error::InvalidLattice("degenerate form".into()));
        }
        Ok(l)
    }

    /// Basis labels `prefix1..prefixN`.
    pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vector(&self, i: usize) -> DivisorClass {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        DivisorClass(v)
    }

    fn check(&self, x: &DivisorClass) -> Result<()> {
        if x.0.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: x.0.len(),
            });
        }
        Ok(())
    }

    /// `G x`.
    pub fn apply(&self, x: &DivisorClass) -> Result<Vec<i64>> {
        self.check(x)?;
        Ok(self
            .gram
            .iter()
            .map(|row| row.iter().zip(&x.0).map(|(g, c)| g * c).sum())
            .collect())
    }

    pub fn inner(&self, x: &DivisorClass, y: &DivisorClass) -> Result<i64> {
        self.check(y)?;
        Ok(self.apply(x)?.iter().zip(&y.0).map(|(a, b)| a * b).sum())
    }

    pub fn self_intersection(&self, x: &DivisorClass) -> Result<i64> {
        self.inner(x, x)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn determinant(&self) -> i128 {
        determinant(&self.gram)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Self {
            name: format!("{} + {}", self.name, other.name),
            gram,
            labels,
        }
    }

    pub fn rescale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidLattice("rescaling by zero".into()));
        }
        Ok(Self {
            name: format!("{}({k})", self.name),
            gram: self.gram.iter().map(|r| r.iter().map(|g| g * k).collect()).collect(),
            labels: self.labels.clone(),
        })
    }

    /// `x` is primitive iff the gcd of its coordinates is 1.
    pub fn is_primitive(&self, x: &DivisorClass) -> Result<bool> {
        self.check(x)?;
        Ok(coordinate_gcd(&x.0) == 1)
    }
}

pub fn coordinate_gcd(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |g, &c| gcd(g, c))
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
