use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CurveModel, ModelKind};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{kernel_basis, rank, SparseMatrix};

/// A model with a marked smooth point.
///
/// For plane curves and complete intersections the point is given in the
/// ambient projective coordinates; for rational normal curves it is a
/// parameter `(s : t)` on P^1.
#[derive(Clone, Debug)]
pub struct PointedModel<F: Field> {
    base: CurveModel<F>,
    point: Vec<F::Elem>,
}

impl<F: Field> PointedModel<F> {
    pub fn new(base: CurveModel<F>, point: Vec<F::Elem>) -> Result<Self> {
        let f = base.field();
        if point.len() != base.nvars() {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, found {}",
                base.nvars(),
                point.len()
            )));
        }
        if point.iter().all(|x| f.is_zero(x)) {
            return Err(Error::InvalidPoint("all coordinates vanish".into()));
        }
        if let Some(k) = base.equations().iter().position(|e| !f.is_zero(&e.eval(f, &point))) {
            return Err(Error::InvalidPoint(format!("equation {k} does not vanish")));
        }
        if !base.equations().is_empty() {
            let jac: Vec<Vec<F::Elem>> = base
                .equations()
                .iter()
                .map(|e| (0..base.nvars()).map(|v| e.derivative(f, v).eval(f, &point)).collect())
                .collect();
            let m = SparseMatrix::from_dense(f.clone(), &jac)?;
            if rank(&m) < base.equations().len() {
                return Err(Error::InvalidPoint("the point is singular".into()));
            }
        }
        Ok(Self { base, point })
    }

    pub fn base(&self) -> &CurveModel<F> {
        &self.base
    }

    pub fn point(&self) -> &[F::Elem] {
        &self.point
    }
}

/// Basis (dense coordinate vectors) of the sections in `S_q` vanishing at
/// the marked point: the kernel of evaluation.
pub fn sections_vanishing_at<F: Field>(pm: &PointedModel<F>, q: usize) -> Result<Vec<Vec<F::Elem>>> {
    let m = pm.base();
    let f = m.field();
    let row = (0..m.piece(q)?.dim())
        .map(|j| m.eval_basis(q, j, pm.point()))
        .collect::<Result<Vec<_>>>()?;
    if row.iter().all(|x| f.is_zero(x)) {
        return Err(Error::InvalidPoint(format!(
            "every section of degree {q} vanishes at the point"
        )));
    }
    let eval = SparseMatrix::from_dense(f.clone(), &[row])?;
    Ok(kernel_basis(&eval))
}

/// Maximum number of random slices tried when searching for a point.
const POINT_SEARCH_ATTEMPTS: usize = 200;

/// Finds a smooth F_p-point on the model, deterministically from `seed`.
pub fn find_smooth_point(model: &CurveModel<PrimeField>, seed: u64) -> Result<Vec<u32>> {
    let f = *model.field();
    let p = f.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..POINT_SEARCH_ATTEMPTS {
        let candidates: Vec<Vec<u32>> = match model.kind() {
            ModelKind::Rnc { .. } => vec![vec![1, rng.gen_range(0..p)]],
            ModelKind::Plane { .. } => {
                let (y, z) = (rng.gen_range(0..p), 1);
                let coeffs = univariate(&f, model, 0, &[None, Some(y), Some(z)]);
                (0..p)
                    .filter(|&x| horner(&f, &coeffs[0], x) == 0)
                    .map(|x| vec![x, y, z])
                    .collect()
            }
            ModelKind::Ci33 => {
                let z = rng.gen_range(0..p);
                let mut found = Vec::new();
                for x in 0..p {
                    let c = univariate(&f, model, 1, &[Some(x), None, Some(z), Some(1)]);
                    let g = poly_gcd(&f, c[0].clone(), c[1].clone());
                    if g.len() >= 2 {
                        if let Some(y) = (0..p).find(|&y| horner(&f, &g, y) == 0) {
                            found.push(vec![x, y, z, 1]);
                            break;
                        }
                    }
                }
                found
            }
        };
        for pt in candidates {
            if PointedModel::new(model.clone(), pt.clone()).is_ok() {
                return Ok(pt);
            }
        }
    }
    Err(Error::InvalidPoint("no smooth point found".into()))
}

/// Each equation as a univariate polynomial (ascending coefficients) in
/// variable `var`, the other variables fixed.
fn univariate(f: &PrimeField, model: &CurveModel<PrimeField>, var: usize, values: &[Option<u32>]) -> Vec<Vec<u32>> {
    model
        .equations()
        .iter()
        .map(|e| {
            let deg = e.terms.iter().map(|(m, _)| m.0[var] as usize).max().unwrap_or(0);
            let mut c = vec![0u32; deg + 1];
            for (m, coeff) in &e.terms {
                let mut t = *coeff;
                for (i, v) in values.iter().enumerate() {
                    if let Some(v) = v {
                        t = f.mul(&t, &f.pow(v, m.0[i] as u32));
                    }
                }
                let k = m.0[var] as usize;
                c[k] = f.add(&c[k], &t);
            }
            c
        })
        .collect()
}

fn horner(f: &PrimeField, c: &[u32], x: u32) -> u32 {
    c.iter().rev().fold(0, |acc, a| f.add(&f.mul(&acc, &x), a))
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(f: &PrimeField, a: Vec<u32>, b: &[u32]) -> Vec<u32> {
    let mut a = trim(a);
    let inv = f.inv(b.last().unwrap()).unwrap();
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = f.mul(a.last().unwrap(), &inv);
        for (i, bc) in b.iter().enumerate() {
            a[shift + i] = f.sub(&a[shift + i], &f.mul(&factor, bc));
        }
        a = trim(a);
    }
    a
}

fn poly_gcd(f: &PrimeField, a: Vec<u32>, b: Vec<u32>) -> Vec<u32> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(f, a, &b);
        a = b;
        b = r;
    }
    a
}
