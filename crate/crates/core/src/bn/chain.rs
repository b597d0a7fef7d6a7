//! Limit pencils on `X_g = C_1 ∪ Ẽ ∪ C_2`: two general pointed curves of
//! genus `g-1` glued to an elliptic curve at points `x`, `y` with
//! `k(x - y) ~ 0`.
//!
//! A refined limit `g^1_d` is determined numerically by its vanishing
//! sequences `(a_0, a_1)` at `x` and `(b_0, b_1)` at `y` on `Ẽ`; the aspects
//! on `C_i` then vanish to orders `(d - a_1, d - a_0)` (resp. with `b`) at
//! the node, giving
//!
//! `ρ_{C_1} = a_0 + a_1 - g`, `ρ_{C_2} = b_0 + b_1 - g`,
//! `ρ_Ẽ = 2d - 1 - (a_0 + a_1 + b_0 + b_1)`.
//!
//! Generality of `[C_i, p_i]` forces `ρ_{C_i} >= 0`. On `Ẽ` some section
//! vanishes to order `a_0` at `x` and `b_1` at `y`, and another to `a_1`,
//! `b_0`, so `a_0 + b_1 <= d` and `a_1 + b_0 <= d`. When both are equalities
//! (`ρ_Ẽ = -1`), `a_0 x + b_1 y ~ a_1 x + b_0 y`, i.e.
//! `(a_1 - a_0)(x - y) ~ 0`, which holds iff `k | a_1 - a_0`.

use serde::{Deserialize, Serialize};

use super::rho;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    /// Genus of the double cover; `C_1`, `C_2` have genus `g - 1`.
    pub g: u32,
    /// Order of `x - y` in `Pic^0(Ẽ)`.
    pub torsion_order: u32,
}

impl ChainConfig {
    pub fn new(g: u32, torsion_order: u32) -> Result<Self> {
        if torsion_order == 0 {
            return Err(Error::Precondition("torsion order must be at least 1".into()));
        }
        if g < 2 {
            return Err(Error::Precondition(format!("g must be at least 2, got {g}")));
        }
        Ok(Self { g, torsion_order })
    }

    pub fn total_genus(&self) -> u32 {
        2 * self.g - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Distribution {
    pub c1: i64,
    pub c2: i64,
    pub e: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSolution {
    pub a: (u32, u32),
    pub b: (u32, u32),
    pub rho: Distribution,
    /// `ρ_Ẽ = -1`, so the torsion condition was applied.
    pub torsion_applied: bool,
    /// `a_0 = a_1` or `b_0 = b_1`: the two sections at the node agree in
    /// order, so the pair is a limit of the family rather than a vanishing
    /// sequence in the strict sense.
    pub coincident: bool,
}

/// All refined limit `g^1_d` data on the chain, `d <= g + 1`. The vanishing
/// orders range over `0 <= a_0 <= a_1 <= d` (likewise `b`).
pub fn chain_g1d_feasible(cfg: ChainConfig, d: u32) -> Result<Vec<ChainSolution>> {
    let g = cfg.g;
    if d > g + 1 {
        return Err(Error::Precondition(format!("need d <= g + 1 = {}, got {d}", g + 1)));
    }
    let (gi, di) = (i64::from(g), i64::from(d));
    let total = rho(2 * gi - 1, 1, di);
    let mut out = Vec::new();
    for a0 in 0..=d {
        for a1 in a0..=d {
            let c1 = i64::from(a0 + a1) - gi;
            if c1 < 0 {
                continue;
            }
            // a_1 + b_0 <= d and a_0 + b_1 <= d
            for b0 in 0..=d - a1 {
                for b1 in b0..=d - a0 {
                    let c2 = i64::from(b0 + b1) - gi;
                    if c2 < 0 {
                        continue;
                    }
                    let e = 2 * di - 1 - i64::from(a0 + a1 + b0 + b1);
                    debug_assert_eq!(c1 + c2 + e, total);
                    let torsion_applied = e == -1;
                    if torsion_applied && (a1 - a0) % cfg.torsion_order != 0 {
                        continue;
                    }
                    out.push(ChainSolution {
                        a: (a0, a1),
                        b: (b0, b1),
                        rho: Distribution { c1, c2, e },
                        torsion_applied,
                        coincident: a0 == a1 || b0 == b1,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub distribution: Distribution,
    /// Number of vanishing data realizing it; zero means excluded.
    pub witnesses: usize,
    pub example: Option<ChainSolution>,
    /// Candidates rejected only by the torsion condition.
    pub torsion_rejected: usize,
    pub survives: bool,
    /// `ρ_{C_1} + ρ_{C_2} + max(ρ_Ẽ, 0)`: the `C_i` aspects move in
    /// families of dimension `ρ_{C_i}`, the `Ẽ` aspect in one of dimension
    /// `ρ_Ẽ` when that is nonnegative and is rigid when it is `-1`.
    pub dimension: i64,
}

/// The `ρ`-distributions `(ρ_{C_1}, ρ_{C_2}, ρ_Ẽ)` summing to
/// `ρ(2g-1, 1, g+1) = 1` with `ρ_{C_i} >= 0`, `ρ_Ẽ >= -1`, and whether each
/// is realized by a limit `g^1_{g+1}` on the chain with `2(x - y) ~ 0`.
pub fn chain_component_dims(g: u32) -> Result<Vec<ComponentReport>> {
    if g % 2 != 0 {
        return Err(Error::Precondition(format!("g must be even, got {g}")));
    }
    let cfg = ChainConfig::new(g, 2)?;
    let free = ChainConfig::new(g, 1)?;
    let d = g + 1;
    let solutions = chain_g1d_feasible(cfg, d)?;
    let untwisted = chain_g1d_feasible(free, d)?;
    let total = rho(2 * i64::from(g) - 1, 1, i64::from(d));
    let mut out = Vec::new();
    for e in -1..=total {
        for c1 in 0..=total - e {
            let dist = Distribution {
                c1,
                c2: total - e - c1,
                e,
            };
            let hits: Vec<&ChainSolution> = solutions.iter().filter(|s| s.rho == dist).collect();
            let all = untwisted.iter().filter(|s| s.rho == dist).count();
            out.push(ComponentReport {
                distribution: dist,
                witnesses: hits.len(),
                example: hits.first().map(|s| (*s).clone()),
                torsion_rejected: all - hits.len(),
                survives: !hits.is_empty(),
                dimension: dist.c1 + dist.c2 + dist.e.max(0),
            });
        }
    }
    Ok(out)
}
