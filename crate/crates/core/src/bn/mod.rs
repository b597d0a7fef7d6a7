//! Brill-Noether numbers, Castelnuovo-Severi bounds and limit pencils on an
//! elliptic chain.

mod chain;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chain::{chain_component_dims, chain_g1d_feasible, ChainConfig, ChainSolution, ComponentReport, Distribution};

/// `ρ(g, r, d) = g - (r+1)(g - d + r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// A `g^r_d` on a curve of genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesType {
    pub g: u32,
    pub r: u32,
    pub d: u32,
}

impl SeriesType {
    pub fn new(g: u32, r: u32, d: u32) -> Self {
        Self { g, r, d }
    }

    pub fn rho(&self) -> i64 {
        rho(self.g.into(), self.r.into(), self.d.into())
    }
}

/// Orders of vanishing `a_0 < .. < a_r <= d` of a series at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct VanishingSequence(Vec<u32>);

impl VanishingSequence {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("empty vanishing sequence".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!(
                "vanishing sequence {values:?} is not strictly increasing"
            )));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// `Σ (a_i - i)`.
    pub fn weight(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &a)| i64::from(a) - i as i64).sum()
    }
}

impl TryFrom<Vec<u32>> for VanishingSequence {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<VanishingSequence> for Vec<u32> {
    fn from(v: VanishingSequence) -> Self {
        v.0
    }
}

/// `ρ` minus the weights of the given points.
pub fn adjusted_rho(st: SeriesType, points: &[VanishingSequence]) -> Result<i64> {
    let mut total = st.rho();
    for seq in points {
        if seq.0.len() != st.r as usize + 1 {
            return Err(Error::DimensionMismatch {
                expected: st.r as usize + 1,
                found: seq.0.len(),
            });
        }
        if seq.0.last().is_some_and(|&a| a > st.d) {
            return Err(Error::Precondition(format!("vanishing order exceeds d = {}", st.d)));
        }
        total -= seq.weight();
    }
    Ok(total)
}

/// Castelnuovo-Severi: a curve with covers of degrees `d1`, `d2` onto
/// curves of genera `g1`, `g2`, not factoring through a common map, has
/// genus at most `d1 g1 + d2 g2 + (d1-1)(d2-1)`.
pub fn cs_bound(d1: u64, g1: u64, d2: u64, g2: u64) -> Result<u64> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::Precondition("cover degrees must be positive".into()));
    }
    Ok(d1 * g1 + d2 * g2 + (d1 - 1) * (d2 - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverGonality {
    pub cover_degree: u64,
    pub base_genus: u64,
    pub base_gonality: u64,
    pub genus: u64,
    /// Largest genus at which a pencil of degree `< cover_degree·base_gonality`
    /// not factoring through the cover is still allowed.
    pub threshold: u64,
    /// `cover_degree·base_gonality`, always an upper bound.
    pub pullback_degree: u64,
    /// `Some` when `genus > threshold`.
    pub gonality: Option<u64>,
}

/// Gonality of a degree-`cover_deg` cover of a curve with the given genus
/// and gonality, when Castelnuovo-Severi forces every pencil to factor.
pub fn cover_gonality(cover_deg: u64, base_genus: u64, base_gon: u64, g: u64) -> Result<CoverGonality> {
    if cover_deg < 2 {
        return Err(Error::Precondition("cover degree must be at least 2".into()));
    }
    if base_gon == 0 {
        return Err(Error::Precondition("base gonality must be positive".into()));
    }
    let pullback = cover_deg * base_gon;
    let threshold = (1..pullback)
        .map(|k| cs_bound(cover_deg, base_genus, k, 0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok(CoverGonality {
        cover_degree: cover_deg,
        base_genus,
        base_gonality: base_gon,
        genus: g,
        threshold,
        pullback_degree: pullback,
        gonality: (g > threshold).then_some(pullback),
    })
}

/// `dim W^1_{d+n} <= n` for `n = 0..=g-2d+2`.
pub fn linear_growth_predicate(g: u32, d: u32, dims: &[u32]) -> Result<bool> {
    if d < 2 || d > g / 2 + 1 {
        return Err(Error::Precondition(format!(
            "need 2 <= d <= g/2 + 1, got d = {d}, g = {g}"
        )));
    }
    let expected = (g + 3 - 2 * d) as usize;
    if dims.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: dims.len(),
        });
    }
    Ok(dims.iter().enumerate().all(|(n, &w)| w as usize <= n))
}
