//! Dense Gaussian elimination mod p with lazy reduction.
//!
//! Rows are `u64` accumulators; an entry is only reduced mod p when the
//! number of pending updates could overflow.

pub(super) fn rank_of_sparse_rows(p: u32, rows: &[Vec<(u32, u32)>], ncols: usize) -> usize {
    let mut dense: Vec<Vec<u64>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut v = vec![0u64; ncols];
            for (c, x) in r {
                v[*c as usize] = *x as u64;
            }
            v
        })
        .collect();
    rank_in_place(p, &mut dense, ncols)
}

pub(super) fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

/// Rank of the dense rows (entries may be any `u64`); destroys them.
pub(super) fn rank_in_place(p: u32, rows: &mut [Vec<u64>], ncols: usize) -> usize {
    let pp = p as u64;
    // after a reduction entries are < p; each update adds at most (p-1)^2
    let max_updates = ((u64::MAX - pp) / ((pp - 1) * (pp - 1))).max(1);
    let mut updates = vec![0u64; rows.len()];
    let mut active = rows.len();
    let mut rank = 0;
    let mut support: Vec<(usize, u64)> = Vec::new();

    for c in 0..ncols {
        if active == 0 {
            break;
        }
        let Some(i) = (0..active).find(|&i| rows[i][c] % pp != 0) else {
            continue;
        };
        // retire the pivot row to the tail of the active block
        rows.swap(i, active - 1);
        updates.swap(i, active - 1);
        active -= 1;
        let (rest, tail) = rows.split_at_mut(active);
        let prow = &mut tail[0];
        for x in prow[c..].iter_mut() {
            *x %= pp;
        }
        let inv = mod_inverse(prow[c], pp);
        for x in prow[c..].iter_mut() {
            *x = *x * inv % pp;
        }
        support.clear();
        support.extend(
            prow[c..]
                .iter()
                .enumerate()
                .filter(|(_, y)| **y != 0)
                .map(|(k, y)| (c + k, *y)),
        );
        let sparse_pivot = support.len() * 4 < ncols - c;

        for (row, upd) in rest.iter_mut().zip(updates[..active].iter_mut()) {
            let a = row[c] % pp;
            if a == 0 {
                row[c] = 0;
                continue;
            }
            if *upd >= max_updates {
                for x in row[c..].iter_mut() {
                    *x %= pp;
                }
                *upd = 0;
            }
            let f = pp - a;
            if sparse_pivot {
                for &(k, y) in &support {
                    row[k] += f * y;
                }
            } else {
                for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                    *x += f * *y;
                }
            }
            *upd += 1;
        }
        rank += 1;
    }
    rank
}
