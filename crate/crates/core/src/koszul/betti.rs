//! Betti tables, their consistency checks and the Green verdict.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::KoszulModule;
use super::wedge::binomial_i;
use crate::error::Result;
use crate::field::{Field, FieldSpec};
use crate::models::{CurveModel, PointedModel};

/// Highest `q` stored in a table.
pub const MAX_Q: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub g: usize,
    pub p_max: usize,
    pub field: FieldSpec,
    /// `rows[q][p] = b_{p,q}` for `q = 0..=3`, `p = 0..=p_max`.
    pub rows: Vec<Vec<usize>>,
}

impl BettiTable {
    /// `b_{p,q}`, zero outside the table.
    pub fn b(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.rows
            .get(q as usize)
            .and_then(|r| r.get(p as usize))
            .copied()
            .unwrap_or(0)
    }

    /// Entries violating `b_{p,q} = b_{g-2-p,3-q}`.
    pub fn duality_violations(&self) -> Vec<(usize, usize)> {
        let g = self.g as i64;
        let mut out = Vec::new();
        for q in 0..=MAX_Q {
            for p in 0..=self.p_max {
                if self.b(p as i64, q as i64) != self.b(g - 2 - p as i64, 3 - q as i64) {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Compute the `q = 0, 1` strands, infer `q = 2, 3` by duality and
    /// verify `b_{p,2}` directly for `p = 0, 1, 2`.
    Duality,
    /// Compute every entry directly.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub p: usize,
    pub q: usize,
    pub inferred: usize,
    pub direct: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerWeight {
    pub weight: usize,
    pub cohomology: i64,
    pub terms: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub passed: bool,
    pub weights: Vec<EulerWeight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    /// `true` when every entry was computed, `false` when the upper strands
    /// were inferred and only spot-checked.
    pub full: bool,
    pub passed: bool,
    pub violations: Vec<(usize, usize)>,
    pub spot_checks: Vec<SpotCheck>,
}

/// A table together with the checks run while building it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub table: BettiTable,
    pub strategy: Strategy,
    /// `dim K_{0,4}`, needed by the weight-4 Euler check.
    pub k04: usize,
    pub duality: Option<DualityReport>,
    pub euler: EulerReport,
}

/// Betti table of the model with `W = S_1`. Canonical models default to
/// the duality strategy; non-canonical models are always computed directly.
pub fn betti_table<F: Field>(model: &CurveModel<F>, strategy: Strategy) -> Result<BettiReport> {
    let module = KoszulModule::full(model)?;
    let strategy = if model.kind().is_canonical() {
        strategy
    } else {
        Strategy::Direct
    };
    let n = module.w_dim();
    let p_max = n.saturating_sub(1);
    let g = model.genus() as i64;

    let mut direct: BTreeSet<(i64, i64)> = BTreeSet::new();
    let strands: Vec<i64> = match strategy {
        Strategy::Duality => vec![0, 1],
        Strategy::Direct => (0..=MAX_Q as i64).collect(),
    };
    for &q in &strands {
        for p in 0..=p_max as i64 {
            direct.insert((p, q));
        }
    }
    let spot: Vec<(i64, i64)> = match strategy {
        Strategy::Duality => (0..=2.min(p_max as i64)).map(|p| (p, 2)).collect(),
        Strategy::Direct => Vec::new(),
    };
    let mut needed: BTreeSet<(i64, i64)> = BTreeSet::new();
    for &(p, q) in direct.iter().chain(&spot).chain(std::iter::once(&(0, 4))) {
        needed.insert((p, q));
        needed.insert((p + 1, q - 1));
    }
    let ranks: BTreeMap<(i64, i64), usize> = needed
        .into_par_iter()
        .map(|(p, q)| module.differential_rank(p, q).map(|r| ((p, q), r)))
        .collect::<Result<_>>()?;
    let kdim = |p: i64, q: i64| module.term_dim(p, q) - ranks[&(p, q)] - ranks[&(p + 1, q - 1)];

    let mut rows = vec![vec![0usize; p_max + 1]; MAX_Q + 1];
    for &(p, q) in &direct {
        rows[q as usize][p as usize] = kdim(p, q);
    }
    let mut spot_checks = Vec::new();
    if strategy == Strategy::Duality {
        for p in 0..=p_max as i64 {
            let dual = g - 2 - p;
            let lookup = |q: usize| {
                if dual < 0 || dual > p_max as i64 {
                    0
                } else {
                    rows[q][dual as usize]
                }
            };
            let (b2, b3) = (lookup(1), lookup(0));
            rows[2][p as usize] = b2;
            rows[3][p as usize] = b3;
        }
        for &(p, q) in &spot {
            spot_checks.push(SpotCheck {
                p: p as usize,
                q: q as usize,
                inferred: rows[q as usize][p as usize],
                direct: kdim(p, q),
            });
        }
    }
    let table = BettiTable {
        g: model.genus(),
        p_max,
        field: model.field().spec(),
        rows,
    };
    let k04 = kdim(0, 4);
    let duality = model.kind().is_canonical().then(|| {
        let violations = table.duality_violations();
        let spots_ok = spot_checks.iter().all(|s| s.inferred == s.direct);
        DualityReport {
            full: strategy == Strategy::Direct,
            passed: violations.is_empty() && spots_ok,
            violations,
            spot_checks,
        }
    });
    let euler = euler_strand_check_with(&table, model, k04);
    Ok(BettiReport {
        table,
        strategy,
        k04,
        duality,
        euler,
    })
}

/// Highest weight checked by the Euler test.
pub const EULER_MAX_WEIGHT: usize = 4;

fn euler_strand_check_with<F: Field>(t: &BettiTable, model: &CurveModel<F>, k04: usize) -> EulerReport {
    let h0 = model.h0() as i64;
    let weights: Vec<EulerWeight> = (0..=EULER_MAX_WEIGHT as i64)
        .map(|w| {
            let mut cohomology = 0i64;
            let mut terms = 0i64;
            for q in 0..=w {
                let sign = if q % 2 == 0 { 1 } else { -1 };
                let b = if q == 4 {
                    if w == 4 {
                        k04
                    } else {
                        0
                    }
                } else {
                    t.b(w - q, q)
                };
                cohomology += sign * b as i64;
                terms += sign * (binomial_i(h0, w - q) * model.dim(q)) as i64;
            }
            EulerWeight {
                weight: w as usize,
                cohomology,
                terms,
            }
        })
        .collect();
    EulerReport {
        passed: weights.iter().all(|w| w.cohomology == w.terms),
        weights,
    }
}

/// For each weight `w <= 4`, compares `Σ_q (-1)^q b_{w-q,q}` with
/// `Σ_q (-1)^q C(h^0, w-q) dim S_q`. The `q = 4` term `K_{0,4}` is computed
/// directly.
pub fn euler_strand_check<F: Field>(t: &BettiTable, model: &CurveModel<F>) -> Result<EulerReport> {
    let k04 = KoszulModule::full(model)?.koszul_dim(0, 4)?;
    Ok(euler_strand_check_with(t, model, k04))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconsistent,
}

/// Green's prediction for Clifford index `cliff`: `b_{p,2} = 0` for
/// `p < cliff`, and `b_{cliff,2} != 0`. The second half is the dual of
/// `K_{g-c-2,1} != 0` and is vacuous when `g - c - 2 < 1`.
pub fn green_verdict(t: &BettiTable, cliff: usize) -> Verdict {
    if (0..cliff).any(|p| t.b(p as i64, 2) != 0) {
        Verdict::Fails
    } else if t.g as i64 - cliff as i64 - 2 >= 1 && t.b(cliff as i64, 2) == 0 {
        Verdict::Inconsistent
    } else {
        Verdict::Holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub p: usize,
    /// `dim K_{p+1,1}(C, L)`
    pub a: usize,
    /// `dim K_{p+1,1}(C, L, W_x)`
    pub b: usize,
    /// `dim K_{p,1}(C, L(-x))`
    pub c: usize,
    pub holds: bool,
}

/// Dimensions around `0 → K_{p+1,1}(C,L,W_x) → K_{p+1,1}(C,L) → K_{p,1}(C,L(-x))`
/// and the inequality `a <= b + c` that exactness forces.
pub fn projection_inequality_check<F: Field>(pm: &PointedModel<F>, p: usize) -> Result<ProjectionReport> {
    let model = pm.base();
    let p = p as i64;
    let wx = crate::models::sections_vanishing_at(pm, 1)?;
    let a = KoszulModule::full(model)?.koszul_dim(p + 1, 1)?;
    let b = KoszulModule::with_subspace(model, &wx)?.koszul_dim(p + 1, 1)?;
    let c = KoszulModule::one_point(pm)?.koszul_dim(p, 1)?;
    Ok(ProjectionReport {
        p: p as usize,
        a,
        b,
        c,
        holds: a <= b + c,
    })
}
