//! Sparse Gaussian elimination mod p with Markowitz pivoting.
//!
//! Column singletons are eliminated first (no fill-in), then pivots are
//! taken from the lightest row at its least populated column. Once the
//! active submatrix gets dense enough the remainder goes to the dense
//! kernel.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::dense;

/// Active density above which the remaining block is finished densely.
const DENSE_SWITCH: f64 = 0.08;

struct State {
    p: u64,
    rows: Vec<Vec<(u32, u32)>>,
    active: Vec<bool>,
    col_count: Vec<u32>,
    col_rows: Vec<Vec<u32>>,
    singles: Vec<u32>,
    heap: BinaryHeap<Reverse<(usize, u32)>>,
    active_rows: usize,
    active_cols: usize,
    active_nnz: usize,
}

impl State {
    fn retire_row(&mut self, r: usize) {
        let row = std::mem::take(&mut self.rows[r]);
        for (c, _) in &row {
            let cnt = &mut self.col_count[*c as usize];
            *cnt -= 1;
            match *cnt {
                0 => self.active_cols -= 1,
                1 => self.singles.push(*c),
                _ => {}
            }
        }
        self.active_nnz -= row.len();
        self.active_rows -= 1;
        self.active[r] = false;
    }

    fn contains(&self, r: usize, c: u32) -> Option<u32> {
        self.rows[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .ok()
            .map(|k| self.rows[r][k].1)
    }

    /// row_j <- row_j + f * pivot, keeping column bookkeeping in sync.
    fn axpy_into(&mut self, j: usize, f: u64, pivot: &[(u32, u32)], scratch: &mut Vec<(u32, u32)>) {
        let p = self.p;
        scratch.clear();
        let target = std::mem::take(&mut self.rows[j]);
        let (mut a, mut b) = (0, 0);
        while a < target.len() || b < pivot.len() {
            let ca = target.get(a).map_or(u32::MAX, |e| e.0);
            let cb = pivot.get(b).map_or(u32::MAX, |e| e.0);
            if ca < cb {
                scratch.push(target[a]);
                a += 1;
            } else if cb < ca {
                let v = (f * pivot[b].1 as u64 % p) as u32;
                scratch.push((cb, v));
                let cnt = &mut self.col_count[cb as usize];
                *cnt += 1;
                if *cnt == 1 {
                    self.active_cols += 1;
                }
                self.col_rows[cb as usize].push(j as u32);
                self.active_nnz += 1;
                b += 1;
            } else {
                let v = ((target[a].1 as u64 + f * pivot[b].1 as u64) % p) as u32;
                if v == 0 {
                    let cnt = &mut self.col_count[ca as usize];
                    *cnt -= 1;
                    match *cnt {
                        0 => self.active_cols -= 1,
                        1 => self.singles.push(ca),
                        _ => {}
                    }
                    self.active_nnz -= 1;
                } else {
                    scratch.push((ca, v));
                }
                a += 1;
                b += 1;
            }
        }
        self.rows[j] = std::mem::replace(scratch, target);
    }
}

pub(super) fn markowitz_rank(p: u32, input: &[Vec<(u32, u32)>], ncols: usize) -> usize {
    let nrows = input.len();
    let mut st = State {
        p: p as u64,
        rows: input.to_vec(),
        active: vec![true; nrows],
        col_count: vec![0; ncols],
        col_rows: vec![Vec::new(); ncols],
        singles: Vec::new(),
        heap: BinaryHeap::with_capacity(nrows),
        active_rows: 0,
        active_cols: 0,
        active_nnz: 0,
    };
    for (i, row) in st.rows.iter().enumerate() {
        if row.is_empty() {
            st.active[i] = false;
            continue;
        }
        st.active_rows += 1;
        st.active_nnz += row.len();
        st.heap.push(Reverse((row.len(), i as u32)));
        for (c, _) in row {
            st.col_count[*c as usize] += 1;
            st.col_rows[*c as usize].push(i as u32);
        }
    }
    st.active_cols = st.col_count.iter().filter(|&&k| k > 0).count();
    st.singles = (0..ncols as u32).filter(|&c| st.col_count[c as usize] == 1).collect();

    let mut rank = 0;
    let mut scratch = Vec::new();
    loop {
        if let Some(c) = st.singles.pop() {
            if st.col_count[c as usize] != 1 {
                continue;
            }
            let holders = std::mem::take(&mut st.col_rows[c as usize]);
            let r = holders
                .iter()
                .map(|&r| r as usize)
                .find(|&r| st.active[r] && st.contains(r, c).is_some())
                .expect("singleton column has an active row");
            st.retire_row(r);
            rank += 1;
            continue;
        }
        let Some(Reverse((w, r))) = st.heap.pop() else {
            break;
        };
        let r = r as usize;
        if !st.active[r] || st.rows[r].len() != w {
            continue;
        }
        let density = st.active_nnz as f64 / (st.active_rows as f64 * st.active_cols as f64);
        if w > 1 && density > DENSE_SWITCH {
            st.heap.push(Reverse((w, r as u32)));
            break;
        }
        let (c, pv) = *st.rows[r]
            .iter()
            .min_by_key(|(c, _)| (st.col_count[*c as usize], *c))
            .expect("active rows are nonempty");
        let inv = dense::mod_inverse(pv as u64, st.p);
        let pivot: Vec<(u32, u32)> = st.rows[r]
            .iter()
            .map(|&(k, v)| (k, (v as u64 * inv % st.p) as u32))
            .collect();
        let holders = std::mem::take(&mut st.col_rows[c as usize]);
        for j in holders {
            let j = j as usize;
            if j == r || !st.active[j] {
                continue;
            }
            let Some(a) = st.contains(j, c) else {
                continue;
            };
            st.axpy_into(j, st.p - a as u64, &pivot, &mut scratch);
            if st.rows[j].is_empty() {
                st.active[j] = false;
                st.active_rows -= 1;
            } else {
                st.heap.push(Reverse((st.rows[j].len(), j as u32)));
            }
        }
        st.col_rows[c as usize].push(r as u32);
        st.retire_row(r);
        rank += 1;
    }

    if st.active_rows == 0 {
        return rank;
    }
    let mut remap = vec![u32::MAX; ncols];
    let mut width = 0usize;
    for (c, &k) in st.col_count.iter().enumerate() {
        if k > 0 {
            remap[c] = width as u32;
            width += 1;
        }
    }
    let mut block: Vec<Vec<u64>> = st
        .rows
        .iter()
        .zip(&st.active)
        .filter(|(_, a)| **a)
        .map(|(row, _)| {
            let mut v = vec![0u64; width];
            for (c, x) in row {
                v[remap[*c as usize] as usize] = *x as u64;
            }
            v
        })
        .collect();
    rank + dense::rank_in_place(p, &mut block, width)
}
