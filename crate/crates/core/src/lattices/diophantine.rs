//! The double-plane lattice `Z·h ⊕ Z R_1 ⊕ .. ⊕ Z R_6` with
//! `C = 9h - 3ΣR_i`, and the sum/sum-of-squares problems arising from
//! `φ(D) = C·D - D²`.

use serde::{Deserialize, Serialize};

use super::{clifford_search, naive_box, CliffordSearchResult, DivisorClass, IntegralLattice, SearchConstraints};
use crate::error::{Error, Result};

/// Lower bound on `φ(D)` for the double-plane curve, supplied by
/// Castelnuovo-Severi rather than by the lattice.
pub const CASTELNUOVO_SEVERI_FLOOR: i64 = 9;

/// The `φ` value ruled out by the case analysis.
const EXCLUDED_PHI: i64 = 10;
const PAIRING_BOUND: i64 = 27;
const EXCEPTIONAL: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InfeasibleReason {
    NegativeSquareSum,
    CauchySchwarz { n_times_q: i64, s_squared: i64 },
    Parity,
    Exhausted { max_abs: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Feasibility {
    Feasible { witness: Vec<i64> },
    Infeasible(InfeasibleReason),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Decides whether some `b ∈ Z^n` has `Σb_i = s` and `Σb_i² = q`.
pub fn cauchy_schwarz_feasible(s: i64, q: i64, n: usize) -> Result<Feasibility> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if q < 0 {
        return Ok(Feasibility::Infeasible(InfeasibleReason::NegativeSquareSum));
    }
    let n_times_q = n as i64 * q;
    if n_times_q < s * s {
        return Ok(Feasibility::Infeasible(InfeasibleReason::CauchySchwarz {
            n_times_q,
            s_squared: s * s,
        }));
    }
    // b² ≡ b mod 2
    if (q - s).rem_euclid(2) != 0 {
        return Ok(Feasibility::Infeasible(InfeasibleReason::Parity));
    }
    let r = (q as f64).sqrt() as i64;
    let r = (r.saturating_sub(1)..=r + 1).filter(|x| x * x <= q).max().unwrap_or(0);
    let mut b = Vec::with_capacity(n);
    if fill(n, s, q, r, &mut b) {
        Ok(Feasibility::Feasible { witness: b })
    } else {
        Ok(Feasibility::Infeasible(InfeasibleReason::Exhausted { max_abs: r }))
    }
}

fn fill(n: usize, s: i64, q: i64, r: i64, b: &mut Vec<i64>) -> bool {
    let left = n - b.len();
    if left == 0 {
        return s == 0 && q == 0;
    }
    if q < 0 || (left as i64) * q < s * s {
        return false;
    }
    for v in (-r..=r).rev() {
        b.push(v);
        if fill(n, s - v, q - v * v, r, b) {
            return true;
        }
        b.pop();
    }
    false
}

/// One value of `C·D` in the analysis of `φ(D) = 10`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCertificate {
    pub pairing: i64,
    pub square: i64,
    /// `Σb_i` and `Σb_i²` as functions of `a`.
    pub sum_b: String,
    pub sum_b_squared: String,
    /// Cauchy-Schwarz as `quadratic(a) <= 0`, content removed.
    pub quadratic: String,
    pub quadratic_coefficients: [i64; 3],
    /// Integers `a` with `quadratic(a) <= 0`.
    pub admissible_a: Vec<i64>,
    pub per_a: Vec<(i64, Feasibility)>,
    pub infeasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceSummary {
    pub box_bounds: Vec<i64>,
    pub points_scanned: u64,
    /// Classes (not orbits) with `0 <= C·D <= 27`, `D² >= -2`, `D != 0, C`.
    pub classes: u64,
    pub min_phi_above_floor: Option<i64>,
    pub below_floor: u64,
    pub excluded_phi_count: u64,
    pub odd_phi_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePlaneReport {
    pub lattice: IntegralLattice,
    pub c: DivisorClass,
    pub c_square: i64,
    pub phi_floor: i64,
    pub search: CliffordSearchResult,
    /// Minimum of `C·D - D²` over classes with `φ >= phi_floor`.
    pub phi_min: Option<i64>,
    /// `φ` has only even coefficients in `(a, b)`.
    pub phi_always_even: bool,
    pub cases: Vec<CaseCertificate>,
    pub brute_force: BruteForceSummary,
    pub certified: bool,
}

fn double_plane_lattice() -> Result<IntegralLattice> {
    let n = EXCEPTIONAL + 1;
    let gram = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        0
                    } else if i == 0 {
                        2
                    } else {
                        -2
                    }
                })
                .collect()
        })
        .collect();
    let mut labels = vec!["h".to_string()];
    labels.extend(IntegralLattice::numbered_labels("R", EXCEPTIONAL));
    IntegralLattice::new("double plane", gram, labels)
}

fn linear(coef: i64, constant: i64, var: &str) -> String {
    let head = match coef {
        1 => var.to_string(),
        -1 => format!("-{var}"),
        _ => format!("{coef}{var}"),
    };
    match constant.cmp(&0) {
        std::cmp::Ordering::Equal => head,
        std::cmp::Ordering::Greater => format!("{head}+{constant}"),
        std::cmp::Ordering::Less => format!("{head}{constant}"),
    }
}

fn quadratic_string([a, b, c]: [i64; 3]) -> String {
    let lead = if a == 1 { "a^2".to_string() } else { format!("{a}a^2") };
    let mid = match b {
        0 => String::new(),
        1 => "+a".into(),
        -1 => "-a".into(),
        _ if b > 0 => format!("+{b}a"),
        _ => format!("{b}a"),
    };
    let tail = match c {
        0 => String::new(),
        _ if c > 0 => format!("+{c}"),
        _ => format!("{c}"),
    };
    format!("{lead}{mid}{tail}")
}

/// `D = a·h - Σb_i R_i` has `C·D = 18a - 6Σb` and `D² = 2a² - 2Σb²`, so a
/// class with `C·D = t`, `D² = t - φ` has `Σb = 3a - t/6` and
/// `Σb² = a² - (t - φ)/2`.
fn case_certificate(t: i64, phi: i64) -> Result<CaseCertificate> {
    let square = t - phi;
    let k = t / 6;
    let half = square / 2;
    // 6(a² - half) >= (3a - k)²  <=>  3a² - 6ka + k² + 6·half <= 0
    let raw = [3, -6 * k, k * k + 6 * half];
    let content = raw.iter().fold(0, |g, &x| super::gcd(g, x));
    let coeffs = raw.map(|x| x / content);
    let [qa, qb, qc] = coeffs;
    let disc = qb * qb - 4 * qa * qc;
    let admissible_a: Vec<i64> = if disc < 0 {
        Vec::new()
    } else {
        let root = (disc as f64).sqrt();
        let lo = ((-qb as f64 - root) / (2 * qa) as f64).floor() as i64 - 1;
        let hi = ((-qb as f64 + root) / (2 * qa) as f64).ceil() as i64 + 1;
        (lo..=hi).filter(|&a| qa * a * a + qb * a + qc <= 0).collect()
    };
    let per_a = admissible_a
        .iter()
        .map(|&a| Ok((a, cauchy_schwarz_feasible(3 * a - k, a * a - half, EXCEPTIONAL)?)))
        .collect::<Result<Vec<_>>>()?;
    let infeasible = per_a.iter().all(|(_, f)| !f.is_feasible());
    Ok(CaseCertificate {
        pairing: t,
        square,
        sum_b: linear(3, -k, "a"),
        sum_b_squared: format!(
            "a^2{}",
            if half == 0 {
                String::new()
            } else {
                format!("{:+}", -half)
            }
        ),
        quadratic: quadratic_string(coeffs),
        quadratic_coefficients: coeffs,
        admissible_a,
        per_a,
        infeasible,
    })
}

fn brute_force(
    l: &IntegralLattice,
    c: &DivisorClass,
    cons: &SearchConstraints,
    floor: i64,
) -> Result<BruteForceSummary> {
    let bounds = naive_box(l, c, cons)?;
    let n = bounds.len();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let mut s = BruteForceSummary {
        box_bounds: bounds.clone(),
        points_scanned: 0,
        classes: 0,
        min_phi_above_floor: None,
        below_floor: 0,
        excluded_phi_count: 0,
        odd_phi_count: 0,
    };
    let diag: Vec<i64> = (0..n).map(|i| l.gram()[i][i]).collect();
    let a: Vec<i64> = l.apply(c)?;
    loop {
        s.points_scanned += 1;
        let t: i64 = a.iter().zip(&x).map(|(p, q)| p * q).sum();
        if (cons.pairing_min..=cons.pairing_max).contains(&t) {
            let sq: i64 = diag.iter().zip(&x).map(|(g, v)| g * v * v).sum();
            let nonzero = x.iter().any(|&v| v != 0);
            if sq >= cons.min_square && nonzero && x != c.0 {
                s.classes += 1;
                let phi = t - sq;
                if phi.rem_euclid(2) != 0 {
                    s.odd_phi_count += 1;
                }
                if phi == EXCLUDED_PHI {
                    s.excluded_phi_count += 1;
                }
                if phi < floor {
                    s.below_floor += 1;
                } else if s.min_phi_above_floor.is_none_or(|m| phi < m) {
                    s.min_phi_above_floor = Some(phi);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(s);
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

/// Shows `φ(D) >= 12` on the double-plane lattice for classes with
/// `0 <= C·D <= 27`, `D² >= -2` and `φ(D) >= 9`, three ways: the
/// ellipsoid search, a Cauchy-Schwarz case split for `φ = 10`, and a scan
/// of the whole coordinate box.
pub fn double_plane_cubic_analysis() -> Result<DoublePlaneReport> {
    let l = double_plane_lattice()?;
    let mut c = vec![9];
    c.extend(std::iter::repeat_n(-3, EXCEPTIONAL));
    let c = DivisorClass(c);
    let c_square = l.self_intersection(&c)?;
    if c_square != 2 * 28 - 2 {
        return Err(Error::InvalidLattice(format!("C² = {c_square}")));
    }
    let floor = CASTELNUOVO_SEVERI_FLOOR;
    let cons = SearchConstraints {
        pairing_min: 0,
        pairing_max: PAIRING_BOUND,
        min_square: -2,
        cliff_floor: Some(floor - 2),
    };
    let search = clifford_search(&l, &c, &cons)?;
    let phi_min = search.minimum.map(|m| m + 2);

    // φ = 18a - 2a² - 6Σb + 2Σb²
    let phi_always_even = [18i64, -2, -6, 2].iter().all(|x| x % 2 == 0);

    // C·D ≡ 0 mod 6, and D² = C·D - 10 >= -2
    let cases = (0..=PAIRING_BOUND)
        .filter(|t| t % 6 == 0 && t - EXCLUDED_PHI >= cons.min_square)
        .map(|t| case_certificate(t, EXCLUDED_PHI))
        .collect::<Result<Vec<_>>>()?;

    let brute = brute_force(&l, &c, &cons, floor)?;
    let certified = phi_min == Some(12)
        && phi_always_even
        && cases.iter().all(|k| k.infeasible)
        && brute.min_phi_above_floor == phi_min
        && brute.excluded_phi_count == 0
        && brute.odd_phi_count == 0;
    Ok(DoublePlaneReport {
        lattice: l,
        c,
        c_square,
        phi_floor: floor,
        search,
        phi_min,
        phi_always_even,
        cases,
        brute_force: brute,
        certified,
    })
}
