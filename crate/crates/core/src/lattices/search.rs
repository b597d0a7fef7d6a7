//! Enumeration of divisor classes with bounded pairing against a positive
//! class `C`, minimizing `Cliff(D) = C·D - D² - 2`.
//!
//! For each pairing value `t`, the solutions of `C·D = t` form a coset
//! `x0 + K y` of the rank `n-1` lattice `C^⊥`, on which the form is
//! negative definite. `D² >= min_square` then confines `y` to an ellipsoid,
//! enumerated Fincke-Pohst style with a floating-point Cholesky
//! decomposition; every candidate is re-checked in exact arithmetic.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{determinant, DivisorClass, IntegralLattice};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConstraints {
    pub pairing_min: i64,
    pub pairing_max: i64,
    pub min_square: i64,
    /// Classes with `Cliff(D)` below this are reported but not minimized
    /// over.
    pub cliff_floor: Option<i64>,
}

impl SearchConstraints {
    pub fn new(pairing_min: i64, pairing_max: i64) -> Self {
        Self {
            pairing_min,
            pairing_max,
            min_square: -2,
            cliff_floor: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingCertificate {
    pub pairing: i64,
    /// Why nothing exists, or how many orbits were found.
    pub outcome: String,
    pub orbits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordSearchResult {
    pub constraints: SearchConstraints,
    /// Exact per-coordinate bound `|x_i| <= box_bounds[i]` valid for every
    /// class satisfying the constraints.
    pub box_bounds: Vec<i64>,
    /// Minimum of `C·D - D² - 2`; `None` when no class qualifies.
    pub minimum: Option<i64>,
    pub argmin: Vec<DivisorClass>,
    /// Orbits satisfying the constraints, with their Clifford values.
    pub orbits: Vec<(DivisorClass, i64)>,
    /// Orbits discarded by the Clifford floor.
    pub below_floor: Vec<(DivisorClass, i64)>,
    pub certificate: Vec<PairingCertificate>,
}

/// Unimodular `U` with `aᵀU = (gcd(a), 0, .., 0)`.
fn unimodular_reduction(a: &[i64]) -> (i64, Vec<Vec<i64>>) {
    let n = a.len();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut row = a.to_vec();
    for i in 1..n {
        if row[i] == 0 {
            continue;
        }
        // extended Euclid on (row[0], row[i])
        let (x, y, g) = ext_gcd(row[0], row[i]);
        let (p, q) = (row[0] / g, row[i] / g);
        // new col0 = x*col0 + y*coli, new coli = -q*col0 + p*coli
        for r in u.iter_mut() {
            let (c0, ci) = (r[0], r[i]);
            r[0] = x * c0 + y * ci;
            r[i] = -q * c0 + p * ci;
        }
        row[0] = g;
        row[i] = 0;
    }
    if row[0] < 0 {
        for r in u.iter_mut() {
            r[0] = -r[0];
        }
        row[0] = -row[0];
    }
    (row[0], u)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (s0, t0, r0)
}

fn quad(g: &[Vec<i64>], x: &[i64]) -> i128 {
    let mut s = 0i128;
    for (i, row) in g.iter().enumerate() {
        for (j, &gij) in row.iter().enumerate() {
            s += gij as i128 * x[i] as i128 * x[j] as i128;
        }
    }
    s
}

/// Representative of the orbit of `x` under `D ↦ C - D` (and `D ↦ -D` when
/// `C·D = 0`): the lexicographically smallest member.
fn canonical(x: &DivisorClass, c: &DivisorClass, pairing: i64) -> DivisorClass {
    let mut members = vec![x.clone(), c.sub(x)];
    if pairing == 0 {
        let neg = x.scaled(-1);
        members.push(c.sub(&neg));
        members.push(neg);
    }
    members.into_iter().min().expect("nonempty")
}

/// Exact coordinate box containing every `x` with
/// `pairing_min <= C·x <= pairing_max` and `x² >= min_square`.
///
/// With `s = C² > 0` the form `P = s·(-G) + 2 aaᵀ` (`a = G c`) is positive
/// definite on a lattice of signature `(1, n-1)`, and
/// `xᵀPx = 2(C·x)² - s·x² <= 2 t_max² - s·min_square =: R`.
/// Hence `x_i² <= R (P^{-1})_ii = R adj(P)_ii / det(P)`.
pub fn naive_box(l: &IntegralLattice, c: &DivisorClass, cons: &SearchConstraints) -> Result<Vec<i64>> {
    let a = l.apply(c)?;
    let s = l.inner(c, c)?;
    if s <= 0 {
        return Err(Error::InvalidLattice("C² must be positive".into()));
    }
    let n = l.rank();
    let p: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| -s * l.gram()[i][j] + 2 * a[i] * a[j]).collect())
        .collect();
    let det = determinant(&p);
    if det <= 0 {
        return Err(Error::InvalidLattice("form is not of signature (1, n-1)".into()));
    }
    let t_max = cons.pairing_max.abs().max(cons.pairing_min.abs()) as i128;
    let r = 2 * t_max * t_max - s as i128 * cons.min_square as i128;
    if r < 0 {
        return Ok(vec![0; n]);
    }
    Ok((0..n)
        .map(|i| {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&k| k != i)
                .map(|k| (0..n).filter(|&m| m != i).map(|m| p[k][m]).collect())
                .collect();
            let bound = r * determinant(&minor) / det;
            isqrt(bound) as i64
        })
        .collect())
}

fn isqrt(v: i128) -> i128 {
    if v <= 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as i128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// Positive definiteness by leading principal minors.
fn positive_definite(q: &[Vec<i64>]) -> bool {
    (1..=q.len()).all(|k| {
        let m: Vec<Vec<i64>> = q[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&m) > 0
    })
}

/// Relative slack added to ellipsoid radii before the exact filter.
const RADIUS_SLACK: f64 = 1e-9;

/// Integer points `y` with `(y - centre)ᵀ Q (y - centre) <= radius`.
fn ellipsoid_points(q: &[Vec<i64>], centre: &[f64], radius: f64) -> Vec<Vec<i64>> {
    let m = q.len();
    if m == 0 {
        return vec![Vec::new()];
    }
    // Q = Σ_i d_i (z_i + Σ_{j>i} mu_ij z_j)^2
    let mut d = vec![0f64; m];
    let mut mu = vec![vec![0f64; m]; m];
    for i in 0..m {
        let mut dii = q[i][i] as f64;
        for k in 0..i {
            dii -= d[k] * mu[k][i] * mu[k][i];
        }
        d[i] = dii;
        for j in i + 1..m {
            let mut v = q[i][j] as f64;
            for k in 0..i {
                v -= d[k] * mu[k][i] * mu[k][j];
            }
            mu[i][j] = v / dii;
        }
    }
    let budget = radius * (1.0 + RADIUS_SLACK) + RADIUS_SLACK;
    let mut out = Vec::new();
    let mut y = vec![0i64; m];
    descend(m - 1, budget, &d, &mu, centre, &mut y, &mut out);
    out
}

fn descend(
    i: usize,
    budget: f64,
    d: &[f64],
    mu: &[Vec<f64>],
    centre: &[f64],
    y: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let m = d.len();
    let shift: f64 = (i + 1..m).map(|j| mu[i][j] * (y[j] as f64 - centre[j])).sum();
    let c = centre[i] - shift;
    let half = (budget.max(0.0) / d[i]).sqrt();
    let lo = (c - half).ceil() as i64;
    let hi = (c + half).floor() as i64;
    for v in lo..=hi {
        let z = v as f64 - c;
        let rest = budget - d[i] * z * z;
        if rest < -RADIUS_SLACK * (1.0 + budget.abs()) {
            continue;
        }
        y[i] = v;
        if i == 0 {
            out.push(y.clone());
        } else {
            descend(i - 1, rest, d, mu, centre, y, out);
        }
    }
}

/// Solve `Q y = b` in floating point (Q positive definite, small).
fn solve(q: &[Vec<i64>], b: &[i64]) -> Vec<f64> {
    let m = q.len();
    let mut a: Vec<Vec<f64>> = q
        .iter()
        .zip(b)
        .map(|(r, &bi)| r.iter().map(|&x| x as f64).chain(std::iter::once(bi as f64)).collect())
        .collect();
    for k in 0..m {
        let piv = (k..m)
            .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap())
            .unwrap();
        a.swap(k, piv);
        for i in 0..m {
            if i != k {
                let f = a[i][k] / a[k][k];
                for j in k..=m {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
    }
    (0..m).map(|i| a[i][m] / a[i][i]).collect()
}

/// All classes `D != 0, C` with `pairing_min <= C·D <= pairing_max` and
/// `D² >= min_square`, up to `D ↦ C - D` (and `±` at pairing 0), with the
/// minimum of `C·D - D² - 2` over those not below the Clifford floor.
pub fn clifford_search(
    l: &IntegralLattice,
    c: &DivisorClass,
    cons: &SearchConstraints,
) -> Result<CliffordSearchResult> {
    let n = l.rank();
    let a = l.apply(c)?;
    let s = l.inner(c, c)?;
    if s <= 0 {
        return Err(Error::InvalidLattice("C² must be positive".into()));
    }
    let (g0, u) = unimodular_reduction(&a);
    // K = columns 1.. of U span C^⊥
    let k: Vec<Vec<i64>> = (1..n).map(|j| (0..n).map(|i| u[i][j]).collect()).collect();
    let gk: Vec<Vec<i64>> = k
        .iter()
        .map(|col| l.apply(&DivisorClass(col.clone())).expect("rank checked"))
        .collect();
    let q: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| -k[i].iter().zip(&gk[j]).map(|(x, y)| x * y).sum::<i64>())
                .collect()
        })
        .collect();
    if !positive_definite(&q) {
        return Err(Error::InvalidLattice(
            "C^⊥ is not negative definite: signature is not (1, n-1)".into(),
        ));
    }
    let box_bounds = naive_box(l, c, cons)?;

    let mut seen: BTreeSet<DivisorClass> = BTreeSet::new();
    let mut orbits = Vec::new();
    let mut certificate = Vec::new();
    for t in cons.pairing_min..=cons.pairing_max {
        if t % g0 != 0 {
            certificate.push(PairingCertificate {
                pairing: t,
                outcome: format!("gcd of C·e_i is {g0}, which does not divide {t}"),
                orbits: 0,
            });
            continue;
        }
        let x0: Vec<i64> = (0..n).map(|i| t / g0 * u[i][0]).collect();
        let gx0 = l.apply(&DivisorClass(x0.clone()))?;
        let b: Vec<i64> = k
            .iter()
            .map(|col| col.iter().zip(&gx0).map(|(x, y)| x * y).sum())
            .collect();
        let x0_sq = quad(l.gram(), &x0) as f64;
        // D² = x0² + 2bᵀy - yᵀQy >= min_square
        let centre = solve(&q, &b);
        let btqb: f64 = centre.iter().zip(&b).map(|(c, b)| c * *b as f64).sum();
        let radius = x0_sq - cons.min_square as f64 + btqb;
        let before = orbits.len();
        if radius >= -RADIUS_SLACK {
            for y in ellipsoid_points(&q, &centre, radius) {
                let x: Vec<i64> = (0..n)
                    .map(|i| x0[i] + k.iter().zip(&y).map(|(col, yj)| col[i] * yj).sum::<i64>())
                    .collect();
                let x = DivisorClass(x);
                let sq = l.self_intersection(&x)?;
                if sq < cons.min_square || x.is_zero() || x == *c {
                    continue;
                }
                debug_assert_eq!(l.inner(c, &x)?, t);
                let rep = canonical(&x, c, t);
                if seen.insert(rep.clone()) {
                    orbits.push((rep, t - sq - 2));
                }
            }
        }
        let found = orbits.len() - before;
        certificate.push(PairingCertificate {
            pairing: t,
            outcome: if found == 0 {
                "no class with the required square".into()
            } else {
                format!("{found} new orbit(s)")
            },
            orbits: found,
        });
    }
    Ok(finish(cons.clone(), box_bounds, orbits, certificate))
}

fn finish(
    constraints: SearchConstraints,
    box_bounds: Vec<i64>,
    mut orbits: Vec<(DivisorClass, i64)>,
    certificate: Vec<PairingCertificate>,
) -> CliffordSearchResult {
    orbits.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
    let (below_floor, kept): (Vec<_>, Vec<_>) = orbits
        .into_iter()
        .partition(|(_, cl)| constraints.cliff_floor.is_some_and(|f| *cl < f));
    let minimum = kept.first().map(|(_, cl)| *cl);
    let argmin = kept
        .iter()
        .filter(|(_, cl)| Some(*cl) == minimum)
        .map(|(d, _)| d.clone())
        .collect();
    CliffordSearchResult {
        constraints,
        box_bounds,
        minimum,
        argmin,
        orbits: kept,
        below_floor,
        certificate,
    }
}

/// Oracle: scans the whole [`naive_box`] instead of the ellipsoids.
pub fn naive_clifford_search(
    l: &IntegralLattice,
    c: &DivisorClass,
    cons: &SearchConstraints,
) -> Result<CliffordSearchResult> {
    let n = l.rank();
    let bounds = naive_box(l, c, cons)?;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    let mut x = bounds.iter().map(|b| -b).collect::<Vec<_>>();
    loop {
        let d = DivisorClass(x.clone());
        let t = l.inner(c, &d)?;
        if (cons.pairing_min..=cons.pairing_max).contains(&t) && !d.is_zero() && d != *c {
            let sq = l.self_intersection(&d)?;
            if sq >= cons.min_square {
                let rep = canonical(&d, c, t);
                if seen.insert(rep.clone()) {
                    orbits.push((rep, t - sq - 2));
                }
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return Ok(finish(cons.clone(), bounds, orbits, Vec::new()));
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}
