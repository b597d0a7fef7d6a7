//! Explicit section rings of curves, presented by monomial bases of their
//! graded pieces and a normal form for products.
//!
//! Three families are built: smooth plane curves (canonical ring
//! `S_q = H^0(O_C(q(d-3)))`), complete intersections of two cubics in P^3
//! (`S_q` = forms of degree `2q` modulo the ideal) and rational normal
//! curves (`S_q` = binary forms of degree `qn`). Pieces exist for
//! `q = 0..=MAX_DEGREE`.

mod point;
pub mod poly;
mod spec;

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{quotient_basis, SparseMatrix, SparseVec};

pub use point::{find_smooth_point, sections_vanishing_at, PointedModel};
pub use poly::{monomials, Monomial, Polynomial};
pub use spec::{EquationSpec, ModelListing, ModelSpec, TermSpec};

/// Highest graded piece built: enough for `K_{p,q}` with `q <= 3` plus one
/// guard degree.
pub const MAX_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    /// Smooth plane curve of degree `d`.
    Plane { d: usize },
    /// Complete intersection of two cubic surfaces in P^3.
    Ci33,
    /// Rational normal curve of degree `n`, with `L = O(n)`.
    Rnc { n: usize },
}

impl ModelKind {
    pub fn nvars(self) -> usize {
        match self {
            ModelKind::Plane { .. } => 3,
            ModelKind::Ci33 => 4,
            ModelKind::Rnc { .. } => 2,
        }
    }

    pub fn genus(self) -> usize {
        match self {
            ModelKind::Plane { d } => (d - 1) * (d - 2) / 2,
            ModelKind::Ci33 => 10,
            ModelKind::Rnc { .. } => 0,
        }
    }

    /// Whether the ring is the canonical ring of the curve.
    pub fn is_canonical(self) -> bool {
        !matches!(self, ModelKind::Rnc { .. })
    }

    /// Polynomial degree representing graded piece `q`.
    pub fn piece_degree(self, q: usize) -> usize {
        match self {
            ModelKind::Plane { d } => q * (d - 3),
            ModelKind::Ci33 => 2 * q,
            ModelKind::Rnc { n } => q * n,
        }
    }

    /// Closed-form dimension of piece `q`.
    pub fn expected_dim(self, q: usize) -> usize {
        match self {
            ModelKind::Rnc { n } => q * n + 1,
            ModelKind::Ci33 => {
                let c3 = |k: i64| if k < 3 { 0 } else { (k * (k - 1) * (k - 2) / 6) as usize };
                let q = q as i64;
                c3(2 * q + 3) + c3(2 * q - 3) - 2 * c3(2 * q)
            }
            ModelKind::Plane { .. } => {
                let g = self.genus();
                match q {
                    0 => 1,
                    1 => g,
                    _ => (2 * q - 1) * (g - 1),
                }
            }
        }
    }

    /// Number and degree of the defining equations.
    pub fn equation_degrees(self) -> Vec<usize> {
        match self {
            ModelKind::Plane { d } => vec![d],
            ModelKind::Ci33 => vec![3, 3],
            ModelKind::Rnc { .. } => Vec::new(),
        }
    }
}

/// How the defining equations are chosen.
#[derive(Clone, Debug)]
pub enum Equations<F: Field> {
    /// General equations drawn from a seeded generator.
    Seeded(u64),
    Explicit(Vec<Polynomial<F>>),
}

/// Graded piece `q`: a monomial basis plus the normal form of every
/// monomial of the piece's polynomial degree.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    pub q: usize,
    pub degree: usize,
    basis: Vec<Monomial>,
    normal_forms: HashMap<Monomial, SparseVec<F::Elem>>,
}

impl<F: Field> GradedPiece<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn normal_form(&self, m: &Monomial) -> Option<&SparseVec<F::Elem>> {
        self.normal_forms.get(m)
    }
}

#[derive(Clone, Debug)]
pub struct CurveModel<F: Field> {
    kind: ModelKind,
    field: F,
    seed: Option<u64>,
    equations: Vec<Polynomial<F>>,
    pieces: Vec<GradedPiece<F>>,
}

impl<F: Field> CurveModel<F> {
    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn genus(&self) -> usize {
        self.kind.genus()
    }

    pub fn nvars(&self) -> usize {
        self.kind.nvars()
    }

    pub fn equations(&self) -> &[Polynomial<F>] {
        &self.equations
    }

    pub fn pieces(&self) -> &[GradedPiece<F>] {
        &self.pieces
    }

    pub fn piece(&self, q: usize) -> Result<&GradedPiece<F>> {
        self.pieces
            .get(q)
            .ok_or_else(|| Error::Precondition(format!("graded piece {q} is not built")))
    }

    /// `dim S_q`, zero outside the built range.
    pub fn dim(&self, q: i64) -> usize {
        if q < 0 {
            return 0;
        }
        self.pieces.get(q as usize).map_or(0, GradedPiece::dim)
    }

    /// `h^0(L) = dim S_1`.
    pub fn h0(&self) -> usize {
        self.dim(1)
    }

    /// Product of basis element `i` of `S_a` and basis element `j` of
    /// `S_b`, in the basis of `S_{a+b}`.
    pub fn multiply_basis(&self, a: usize, i: usize, b: usize, j: usize) -> Result<&SparseVec<F::Elem>> {
        let m = self.piece(a)?.basis[i].mul(&self.piece(b)?.basis[j]);
        self.piece(a + b)?
            .normal_forms
            .get(&m)
            .ok_or_else(|| Error::Precondition(format!("no normal form for {m}")))
    }

    /// Product of two sparse elements of `S_a` and `S_b`.
    pub fn multiply(
        &self,
        a: usize,
        u: &SparseVec<F::Elem>,
        b: usize,
        v: &SparseVec<F::Elem>,
    ) -> Result<SparseVec<F::Elem>> {
        let f = &self.field;
        let mut acc = vec![f.zero(); self.piece(a + b)?.dim()];
        for (i, x) in u {
            for (j, y) in v {
                let xy = f.mul(x, y);
                for (k, c) in self.multiply_basis(a, *i, b, *j)? {
                    acc[*k] = f.add(&acc[*k], &f.mul(&xy, c));
                }
            }
        }
        Ok(to_sparse(f, acc))
    }

    /// Value at `point` of the representative polynomial of basis element
    /// `j` of `S_q`.
    pub fn eval_basis(&self, q: usize, j: usize, point: &[F::Elem]) -> Result<F::Elem> {
        Ok(self.piece(q)?.basis[j].eval(&self.field, point))
    }

    /// Compares every piece dimension with its closed form.
    pub fn dimension_checks(&self) -> Vec<DimensionCheck> {
        self.pieces
            .iter()
            .map(|p| DimensionCheck {
                q: p.q,
                expected: self.kind.expected_dim(p.q),
                found: p.dim(),
            })
            .collect()
    }

    fn validate_dimensions(self) -> Result<Self> {
        if let Some(c) = self.dimension_checks().into_iter().find(|c| c.expected != c.found) {
            return Err(Error::HilbertMismatch {
                degree: c.q,
                expected: c.expected,
                found: c.found,
            });
        }
        Ok(self)
    }
}

pub(crate) fn to_sparse<F: Field>(f: &F, dense: Vec<F::Elem>) -> SparseVec<F::Elem> {
    dense.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect()
}

fn random_form<F: Field>(field: &F, rng: &mut ChaCha8Rng, nvars: usize, degree: usize) -> Polynomial<F> {
    let terms = monomials(nvars, degree)
        .into_iter()
        .map(|m| {
            let c = field.random(rng);
            (m, c)
        })
        .collect();
    Polynomial::new(field, nvars, terms)
}

fn check_equations<F: Field>(kind: ModelKind, eqs: &[Polynomial<F>]) -> Result<()> {
    let degrees = kind.equation_degrees();
    if eqs.len() != degrees.len() {
        return Err(Error::InvalidModel(format!(
            "expected {} equations, found {}",
            degrees.len(),
            eqs.len()
        )));
    }
    for (e, &deg) in eqs.iter().zip(&degrees) {
        if e.nvars != kind.nvars() || e.terms.iter().any(|(m, _)| m.nvars() != kind.nvars()) {
            return Err(Error::InvalidModel(format!(
                "equations must be in {} variables",
                kind.nvars()
            )));
        }
        if e.is_zero() || !e.is_homogeneous_of(deg) {
            return Err(Error::InvalidModel(format!(
                "equation must be a nonzero form of degree {deg}"
            )));
        }
    }
    Ok(())
}

/// Smooth plane curve of degree `d >= 4`, embedded canonically by forms of
/// degree `d - 3`.
pub fn plane_curve_model<F: Field>(d: usize, equations: Equations<F>, field: F) -> Result<CurveModel<F>> {
    if d < 4 {
        return Err(Error::InvalidModel(format!("plane curve degree must be >= 4, got {d}")));
    }
    let kind = ModelKind::Plane { d };
    let (seed, mut eq) = match equations {
        Equations::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut f = random_form(&field, &mut rng, 3, d);
            // monic in x0
            let lead = Monomial(vec![d as u16, 0, 0]);
            f.terms.retain(|(m, _)| *m != lead);
            f.terms.insert(0, (lead, field.one()));
            (Some(seed), f)
        }
        Equations::Explicit(mut v) => {
            check_equations(kind, &v)?;
            (None, v.remove(0))
        }
    };
    let lead = Monomial(vec![d as u16, 0, 0]);
    let lc = eq.coefficient(&field, &lead);
    let inv = field
        .inv(&lc)
        .ok_or_else(|| Error::InvalidModel("the x0^d coefficient must be nonzero".into()))?;
    for (_, c) in eq.terms.iter_mut() {
        *c = field.mul(c, &inv);
    }

    // x0^d = -tail
    let tail: Vec<(Monomial, F::Elem)> = eq
        .terms
        .iter()
        .filter(|(m, _)| *m != lead)
        .map(|(m, c)| (m.clone(), field.neg(c)))
        .collect();
    let pieces = (0..=MAX_DEGREE).map(|q| plane_piece(&field, d, q, &tail)).collect();
    CurveModel {
        kind,
        field,
        seed,
        equations: vec![eq],
        pieces,
    }
    .validate_dimensions()
}

fn plane_piece<F: Field>(field: &F, d: usize, q: usize, tail: &[(Monomial, F::Elem)]) -> GradedPiece<F> {
    let degree = q * (d - 3);
    let all = monomials(3, degree);
    let basis: Vec<Monomial> = all.iter().filter(|m| (m.0[0] as usize) < d).cloned().collect();
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut normal_forms: HashMap<Monomial, SparseVec<F::Elem>> = HashMap::new();
    // increasing x0-exponent: the rewrite x0^d -> tail strictly lowers it
    let mut order = all.clone();
    order.sort_by_key(|m| m.0[0]);
    for m in order {
        let nf = if (m.0[0] as usize) < d {
            vec![(index[&m], field.one())]
        } else {
            let rest = Monomial(vec![m.0[0] - d as u16, m.0[1], m.0[2]]);
            let mut acc = vec![field.zero(); basis.len()];
            for (t, c) in tail {
                for (k, v) in &normal_forms[&t.mul(&rest)] {
                    acc[*k] = field.add(&acc[*k], &field.mul(c, v));
                }
            }
            to_sparse(field, acc)
        };
        normal_forms.insert(m, nf);
    }
    GradedPiece {
        q,
        degree,
        basis,
        normal_forms,
    }
}

/// Complete intersection of two cubics in P^3 (genus 10, `K = O(2)`),
/// rejected unless every piece has the complete-intersection dimension.
pub fn ci33_model<F: Field>(equations: Equations<F>, field: F) -> Result<CurveModel<F>> {
    ci33_model_unchecked(equations, field)?.validate_dimensions()
}

/// As [`ci33_model`] without the dimension validation, so that degenerate
/// pairs can be inspected with [`hilbert_check`].
pub fn ci33_model_unchecked<F: Field>(equations: Equations<F>, field: F) -> Result<CurveModel<F>> {
    let kind = ModelKind::Ci33;
    let (seed, eqs) = match equations {
        Equations::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_form(&field, &mut rng, 4, 3);
            let g = random_form(&field, &mut rng, 4, 3);
            (Some(seed), vec![f, g])
        }
        Equations::Explicit(v) => {
            check_equations(kind, &v)?;
            (None, v)
        }
    };
    let mut pieces = Vec::with_capacity(MAX_DEGREE + 1);
    for q in 0..=MAX_DEGREE {
        let degree = 2 * q;
        let ambient = monomials(4, degree);
        let index: HashMap<&Monomial, usize> = ambient.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut columns: Vec<SparseVec<F::Elem>> = Vec::new();
        if degree >= 3 {
            for m in monomials(4, degree - 3) {
                for e in &eqs {
                    let mut col: SparseVec<F::Elem> = e
                        .mul_monomial(&m)
                        .terms
                        .into_iter()
                        .map(|(t, c)| (index[&t], c))
                        .collect();
                    col.sort_by_key(|(i, _)| *i);
                    columns.push(col);
                }
            }
        }
        let gens = SparseMatrix::from_columns(field.clone(), ambient.len(), &columns)?;
        let quotient = quotient_basis(ambient.len(), &gens)?;
        let basis = quotient.complement().iter().map(|&i| ambient[i].clone()).collect();
        let normal_forms = ambient
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), quotient.reduce_unit(i)))
            .collect();
        pieces.push(GradedPiece {
            q,
            degree,
            basis,
            normal_forms,
        });
    }
    Ok(CurveModel {
        kind,
        field,
        seed,
        equations: eqs,
        pieces,
    })
}

/// Rational normal curve of degree `n >= 2`: `S_q` = binary forms of
/// degree `qn`.
pub fn rational_normal_model<F: Field>(n: usize, field: F) -> Result<CurveModel<F>> {
    if n < 2 {
        return Err(Error::InvalidModel(format!(
            "rational normal curve degree must be >= 2, got {n}"
        )));
    }
    let pieces = (0..=MAX_DEGREE)
        .map(|q| {
            let basis = monomials(2, q * n);
            let normal_forms = basis
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), vec![(i, field.one())]))
                .collect();
            GradedPiece {
                q,
                degree: q * n,
                basis,
                normal_forms,
            }
        })
        .collect();
    CurveModel {
        kind: ModelKind::Rnc { n },
        field,
        seed: None,
        equations: Vec::new(),
        pieces,
    }
    .validate_dimensions()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCheck {
    pub q: usize,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub passed: bool,
    pub dimensions: Vec<DimensionCheck>,
    pub triples_checked: usize,
    pub first_discrepancy: Option<String>,
}

/// Minimum number of sampled triples in [`hilbert_check`].
pub const HILBERT_SAMPLE_TRIPLES: usize = 100;

/// Checks piece dimensions against their closed forms, then commutativity
/// and associativity of the multiplication on seeded random triples of
/// basis elements.
pub fn hilbert_check<F: Field>(m: &CurveModel<F>, seed: u64) -> HilbertReport {
    use rand::Rng;
    let dimensions = m.dimension_checks();
    let mut first = dimensions
        .iter()
        .find(|c| c.expected != c.found)
        .map(|c| format!("dim S_{} = {}, expected {}", c.q, c.found, c.expected));

    let degree_triples: Vec<(usize, usize, usize)> = (0..=MAX_DEGREE)
        .flat_map(|a| (0..=MAX_DEGREE - a).flat_map(move |b| (0..=MAX_DEGREE - a - b).map(move |c| (a, b, c))))
        .filter(|&(a, b, c)| m.dim(a as i64) > 0 && m.dim(b as i64) > 0 && m.dim(c as i64) > 0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = m.field();
    let mut checked = 0;
    while first.is_none() && checked < HILBERT_SAMPLE_TRIPLES && !degree_triples.is_empty() {
        let (a, b, c) = degree_triples[rng.gen_range(0..degree_triples.len())];
        let i = rng.gen_range(0..m.dim(a as i64));
        let j = rng.gen_range(0..m.dim(b as i64));
        let k = rng.gen_range(0..m.dim(c as i64));
        let unit = |x: usize| vec![(x, f.one())];
        let outcome = (|| -> Result<Option<String>> {
            let ab = m.multiply(a, &unit(i), b, &unit(j))?;
            let ba = m.multiply(b, &unit(j), a, &unit(i))?;
            if ab != ba {
                return Ok(Some(format!("S_{a}[{i}]*S_{b}[{j}] is not commutative")));
            }
            let left = m.multiply(a + b, &ab, c, &unit(k))?;
            let bc = m.multiply(b, &unit(j), c, &unit(k))?;
            let right = m.multiply(a, &unit(i), b + c, &bc)?;
            if left != right {
                return Ok(Some(format!("(S_{a}[{i}]*S_{b}[{j}])*S_{c}[{k}] is not associative")));
            }
            Ok(None)
        })();
        match outcome {
            Ok(None) => checked += 1,
            Ok(Some(msg)) => first = Some(msg),
            Err(e) => first = Some(e.to_string()),
        }
    }
    HilbertReport {
        passed: first.is_none(),
        dimensions,
        triples_checked: checked,
        first_discrepancy: first,
    }
}
