//! Exact rank over Q by fraction-free elimination on integer rows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;
use crate::field::Rationals;

type IntRow = Vec<(u32, BigInt)>;

fn content_normalize(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

/// `a * row - b * pivot`, dropping zeros.
fn combine(a: &BigInt, row: &IntRow, b: &BigInt, pivot: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(u32::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, a * &row[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &pivot[j].1)));
            j += 1;
        } else {
            let v = a * &row[i].1 - b * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over Q. Each row is scaled to a primitive integer vector and then
/// reduced against an echelon basis indexed by leading column.
pub fn rational_rank(m: &SparseMatrix<Rationals>) -> usize {
    let t;
    let m = if m.rows() > m.cols() {
        t = m.transpose();
        &t
    } else {
        m
    };
    let mut basis: BTreeMap<u32, IntRow> = BTreeMap::new();
    for row in m.raw_rows() {
        if row.is_empty() {
            continue;
        }
        let lcm = row.iter().fold(BigInt::one(), |l, (_, q)| l.lcm(q.denom()));
        let mut r: IntRow = row.iter().map(|(c, q)| (*c, q.numer() * (&lcm / q.denom()))).collect();
        content_normalize(&mut r);
        while let Some((lead, lv)) = r.first().cloned() {
            match basis.get(&lead) {
                None => {
                    basis.insert(lead, r);
                    break;
                }
                Some(pivot) => {
                    let pv = &pivot[0].1;
                    let g = pv.gcd(&lv);
                    r = combine(&(pv / &g), &r, &(&lv / &g), pivot);
                    content_normalize(&mut r);
                }
            }
        }
    }
    basis.len()
}
