//! The Koszul engine against an independent construction for rational
//! normal curves, plus structural properties on every model family.

use syzygy_core::field::{Field, PrimeField, DEFAULT_PRIME};
use syzygy_core::koszul::{betti_table, projection_inequality_check, KoszulModule, Strategy};
use syzygy_core::models::{
    ci33_model, find_smooth_point, plane_curve_model, rational_normal_model, sections_vanishing_at, CurveModel,
    Equations, PointedModel,
};

const P: i64 = DEFAULT_PRIME as i64;

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Subsets of size `k` as bitmasks, in increasing numeric order.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Plain Gaussian elimination mod P on a dense i64 matrix.
fn oracle_rank(mut a: Vec<Vec<i64>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] % P != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = {
            let (mut x, mut e, mut acc) = (a[r][c].rem_euclid(P), P - 2, 1i64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * x % P;
                }
                x = x * x % P;
                e >>= 1;
            }
            acc
        };
        for i in 0..a.len() {
            if i != r && a[i][c] % P != 0 {
                let f = a[i][c].rem_euclid(P) * inv % P;
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(P);
                }
            }
        }
        r += 1;
    }
    r
}

/// Matrix of `∧^p V ⊗ S_q → ∧^{p-1} V ⊗ S_{q+1}` for the rational normal
/// curve of degree n, V = binary forms of degree n, written with bitmask
/// wedges and x-exponent indexing.
fn oracle_differential(n: usize, p: usize, q: usize) -> Vec<Vec<i64>> {
    let v = n + 1;
    let src = subsets(v, p);
    let dst = subsets(v, p - 1);
    let (ds, dt) = (q * n + 1, (q + 1) * n + 1);
    let mut m = vec![vec![0i64; src.len() * ds]; dst.len() * dt];
    for (ci, &mask) in src.iter().enumerate() {
        let elems: Vec<usize> = (0..v).filter(|i| mask >> i & 1 == 1).collect();
        for (k, &i) in elems.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let ri = dst.iter().position(|&d| d == mask & !(1 << i)).unwrap();
            for a in 0..ds {
                // x^i y^(n-i) * x^a y^(qn-a)
                m[ri * dt + i + a][ci * ds + a] += sign;
            }
        }
    }
    m
}

fn oracle_k_p1(n: usize, p: usize) -> usize {
    let v = n + 1;
    let dim = choose(v, p) * (n + 1);
    let r1 = if p >= 1 {
        oracle_rank(oracle_differential(n, p, 1))
    } else {
        0
    };
    let r0 = if p < v {
        oracle_rank(oracle_differential(n, p + 1, 0))
    } else {
        0
    };
    dim - r1 - r0
}

#[test]
fn rnc_strand_matches_oracle_and_formula() {
    for n in 2..=6 {
        let m = rational_normal_model(n, PrimeField::default()).unwrap();
        let t = betti_table(&m, Strategy::Direct).unwrap().table;
        for p in 0..=n {
            let expected = p * choose(n, p + 1);
            assert_eq!(t.b(p as i64, 1), oracle_k_p1(n, p), "n={n} p={p}");
            assert_eq!(t.b(p as i64, 1), expected, "n={n} p={p}");
            assert_eq!(t.b(p as i64, 2), 0);
        }
    }
}

#[test]
fn twisted_cubic_values() {
    let m = rational_normal_model(3, PrimeField::default()).unwrap();
    let k = KoszulModule::full(&m).unwrap();
    assert_eq!(k.koszul_dim(1, 1).unwrap(), 3);
    assert_eq!(k.koszul_dim(2, 1).unwrap(), 2);
    assert_eq!(k.koszul_dim(0, 0).unwrap(), 1);
    let d = k.differential(2, 1).unwrap();
    assert_eq!((d.rows(), d.cols()), (28, 24));
    assert_eq!(syzygy_core::linalg::rank(&d), oracle_rank(oracle_differential(3, 2, 1)));
}

#[test]
fn boundary_differentials() {
    let m = rational_normal_model(3, PrimeField::default()).unwrap();
    let k = KoszulModule::full(&m).unwrap();
    let d0 = k.differential(0, 2).unwrap();
    assert_eq!(d0.rows(), 0);
    assert!(d0.is_zero());
    let d10 = k.differential(1, 0).unwrap();
    assert_eq!((d10.rows(), d10.cols()), (4, 4));
    assert_eq!(syzygy_core::linalg::rank(&d10), 4);
    let big = k.differential(9, 1).unwrap();
    assert!(big.is_zero());
}

fn models() -> Vec<CurveModel<PrimeField>> {
    let f = PrimeField::default();
    let mut v: Vec<_> = (2..=6).map(|n| rational_normal_model(n, f).unwrap()).collect();
    v.push(plane_curve_model(4, Equations::Seeded(1), f).unwrap());
    v.push(plane_curve_model(5, Equations::Seeded(1), f).unwrap());
    v.push(plane_curve_model(6, Equations::Seeded(1), f).unwrap());
    v.push(ci33_model(Equations::Seeded(1), f).unwrap());
    v
}

#[test]
fn differentials_compose_to_zero() {
    for m in models() {
        let k = KoszulModule::full(&m).unwrap();
        let n = k.w_dim() as i64;
        for q in 0..=3i64 {
            for p in 1..=n {
                let upper = k.differential(p + 1, q - 1).unwrap();
                let lower = k.differential(p, q).unwrap();
                if upper.cols() == 0 || lower.rows() == 0 {
                    continue;
                }
                let prod = lower.matmul(&upper).unwrap();
                assert!(prod.is_zero(), "{:?} p={p} q={q}", m.kind());
            }
        }
    }
}

#[test]
fn plane_quintic_table_and_checks() {
    let m = plane_curve_model(5, Equations::Seeded(1), PrimeField::default()).unwrap();
    for s in [Strategy::Duality, Strategy::Direct] {
        let r = betti_table(&m, s).unwrap();
        assert_eq!(r.table.rows[1][..5], [0, 6, 8, 3, 0]);
        assert_ne!(r.table.b(3, 1), 0);
        assert_eq!(r.table.b(4, 1), 0);
        assert!(r.euler.passed);
        assert!(r.duality.unwrap().passed);
        let w3 = &r.euler.weights[3];
        assert_eq!(w3.cohomology, w3.terms);
    }
}

#[test]
fn projection_inequalities() {
    let f = PrimeField::default();
    let rnc = rational_normal_model(3, f).unwrap();
    let pm = PointedModel::new(rnc, vec![1, 5]).unwrap();
    let r = projection_inequality_check(&pm, 1).unwrap();
    assert_eq!(r.a, 2);
    assert!(r.holds);
    // beyond the top strand everything vanishes
    let r = projection_inequality_check(&pm, 5).unwrap();
    assert_eq!((r.a, r.b, r.c), (0, 0, 0));

    let quintic = plane_curve_model(5, Equations::Seeded(1), f).unwrap();
    let pt = find_smooth_point(&quintic, 1).unwrap();
    let pm = PointedModel::new(quintic, pt).unwrap();
    for p in 0..=4 {
        let r = projection_inequality_check(&pm, p).unwrap();
        assert!(r.holds, "{r:?}");
    }
}

#[test]
fn vanishing_sections_form_an_ideal() {
    let f = PrimeField::default();
    for m in [
        plane_curve_model(5, Equations::Seeded(3), f).unwrap(),
        ci33_model(Equations::Seeded(3), f).unwrap(),
    ] {
        let pt = find_smooth_point(&m, 3).unwrap();
        let pm = PointedModel::new(m.clone(), pt.clone()).unwrap();
        let w = sections_vanishing_at(&pm, 1).unwrap();
        for v in w.iter().take(3) {
            let sv: Vec<(usize, u32)> = v.iter().copied().enumerate().filter(|(_, x)| *x != 0).collect();
            for j in 0..m.dim(2) {
                let prod = m.multiply(1, &sv, 2, &vec![(j, 1)]).unwrap();
                let value = prod.iter().fold(0u32, |acc, (k, c)| {
                    f.add(&acc, &f.mul(c, &m.eval_basis(3, *k, &pt).unwrap()))
                });
                assert_eq!(value, 0);
            }
        }
    }
}

#[test]
fn exact_rational_tables_match_mod_p() {
    use syzygy_core::field::Rationals;
    let q = plane_curve_model(5, Equations::Seeded(2), Rationals).unwrap();
    let rq = betti_table(&q, Strategy::Direct).unwrap();
    assert_eq!(rq.table.rows[1][..5], [0, 6, 8, 3, 0]);
    assert!(rq.euler.passed);
    let rnc = rational_normal_model(4, Rationals).unwrap();
    let t = betti_table(&rnc, Strategy::Direct).unwrap().table;
    assert_eq!(t.rows[1], vec![0, 6, 8, 3, 0]);
}
