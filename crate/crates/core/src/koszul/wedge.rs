//! Colex ranking of `p`-subsets of `{0, .., n-1}`, the basis of `∧^p W`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n, k)` with the convention that negative arguments give zero.
pub fn binomial_i(n: i64, k: i64) -> usize {
    if n < 0 || k < 0 {
        0
    } else {
        binomial(n as usize, k as usize)
    }
}

/// A basis element of `∧^p` of an `n`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WedgeIndex {
    pub n: usize,
    pub p: usize,
    pub combination: Vec<usize>,
    pub position: usize,
}

impl WedgeIndex {
    pub fn from_combination(n: usize, combination: Vec<usize>) -> Result<Self> {
        if combination.windows(2).any(|w| w[0] >= w[1]) || combination.last().is_some_and(|&c| c >= n) {
            return Err(Error::Precondition(format!(
                "{combination:?} is not an increasing tuple below {n}"
            )));
        }
        let position = colex_rank(&combination);
        Ok(Self {
            n,
            p: combination.len(),
            combination,
            position,
        })
    }

    pub fn from_position(n: usize, p: usize, position: usize) -> Result<Self> {
        if position >= binomial(n, p) {
            return Err(Error::Precondition(format!(
                "position {position} out of range for C({n},{p})"
            )));
        }
        Ok(Self {
            n,
            p,
            combination: colex_unrank(p, position),
            position,
        })
    }
}

/// Colex rank `Σ_k C(c_k, k+1)` of an increasing tuple.
pub fn colex_rank(c: &[usize]) -> usize {
    c.iter().enumerate().map(|(k, &ck)| binomial(ck, k + 1)).sum()
}

/// Inverse of [`colex_rank`] for tuples of length `p`.
pub fn colex_unrank(p: usize, mut rank: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for k in (0..p).rev() {
        // largest c with C(c, k+1) <= rank
        let mut c = k;
        while binomial(c + 1, k + 1) <= rank {
            c += 1;
        }
        rank -= binomial(c, k + 1);
        out[k] = c;
    }
    out
}

/// All `p`-subsets of `0..n` in colex order (position `i` is the `i`-th
/// item).
pub fn combinations_colex(n: usize, p: usize) -> CombinationsColex {
    CombinationsColex {
        n,
        cur: if p <= n { Some((0..p).collect()) } else { None },
    }
}

pub struct CombinationsColex {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Iterator for CombinationsColex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.take()?;
        let p = out.len();
        let mut next = out.clone();
        let mut i = 0;
        while i < p {
            let limit = if i + 1 < p { next[i + 1] } else { self.n };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (k, v) in next[..i].iter_mut().enumerate() {
                    *v = k;
                }
                self.cur = Some(next);
                break;
            }
            i += 1;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_rank() {
        for n in 0..8 {
            for p in 0..=n + 1 {
                let all: Vec<_> = combinations_colex(n, p).collect();
                assert_eq!(all.len(), binomial(n, p));
                for (i, c) in all.iter().enumerate() {
                    assert_eq!(colex_rank(c), i);
                    assert_eq!(&colex_unrank(p, i), c);
                }
            }
        }
    }

    #[test]
    fn wedge_index_round_trip() {
        let w = WedgeIndex::from_combination(6, vec![1, 3, 4]).unwrap();
        let back = WedgeIndex::from_position(6, 3, w.position).unwrap();
        assert_eq!(back, w);
        assert!(WedgeIndex::from_combination(4, vec![2, 1]).is_err());
        assert!(WedgeIndex::from_position(4, 2, 6).is_err());
    }
}
