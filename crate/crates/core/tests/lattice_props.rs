use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use syzygy_core::lattices::{
    cauchy_schwarz_feasible, clifford_search, double_plane_cubic_analysis, naive_clifford_search,
    nikulin_quotient_picard, standard_lattice, DivisorClass, Feasibility, InfeasibleReason, IntegralLattice,
    SearchConstraints, StandardLattice,
};

/// Determinant by plain Gaussian elimination over Q.
fn rational_det(m: &[Vec<i64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            let f = a[i][k].clone() / a[k][k].clone();
            for j in k..n {
                let s = f.clone() * a[k][j].clone();
                a[i][j] -= s;
            }
        }
    }
    det
}

fn as_rational(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn nikulin_minimum_follows_parity() {
    for g in 5..=20usize {
        let o = nikulin_quotient_picard(g).unwrap();
        let l = &o.lattice;
        let r = clifford_search(l, &o.c_tilde, &SearchConstraints::new(0, 2 * g as i64 - 2)).unwrap();
        let expected = if g % 2 == 1 { g - 1 } else { g - 2 } as i64;
        assert_eq!(r.minimum, Some(expected), "g = {g}");
        // the glue generator is a minimizer
        let cliff = l.inner(&o.d, &o.c_tilde).unwrap() - l.self_intersection(&o.d).unwrap() - 2;
        assert_eq!(cliff, expected);
        assert!(r.argmin.iter().any(|d| *d == o.d || *d == o.c_tilde.sub(&o.d)));
        assert_eq!(r.argmin.len(), if g % 2 == 1 { 8 } else { 1 }, "g = {g}");
        assert!(o.even && o.c_tilde_primitive && o.parity.glue_even, "g = {g}");
        assert_eq!(o.v_square, if g % 2 == 1 { -8 } else { -4 });
        assert_eq!(o.determinant.abs(), o.expected_abs_determinant);
        assert_eq!(o.expected_abs_determinant, 256 * (g as i128 - 1));
        assert_eq!(rational_det(l.gram()), as_rational(o.determinant));
    }
}

#[test]
fn minimal_picard_has_no_small_pairing() {
    for g in 3..=15usize {
        let l = standard_lattice(StandardLattice::LambdaG(g)).unwrap();
        let c = l.basis_vector(0);
        let r = clifford_search(&l, &c, &SearchConstraints::new(1, g as i64 - 1)).unwrap();
        assert!(
            r.minimum.is_none() && r.argmin.is_empty() && r.orbits.is_empty(),
            "g = {g}"
        );
        assert_eq!(rational_det(l.gram()), as_rational(l.determinant()));
    }
}

#[test]
fn double_plane_certificate() {
    let r = double_plane_cubic_analysis().unwrap();
    assert_eq!(r.c_square, 54);
    assert_eq!(r.phi_min, Some(12));
    let quads: Vec<_> = r
        .cases
        .iter()
        .map(|k| (k.pairing, k.square, k.quadratic.as_str()))
        .collect();
    assert_eq!(
        quads,
        vec![(12, 2, "3a^2-12a+10"), (18, 8, "a^2-6a+11"), (24, 14, "3a^2-24a+58")]
    );
    let small = &r.cases[0];
    assert_eq!(small.admissible_a, vec![2]);
    assert_eq!(small.per_a[0].1, Feasibility::Infeasible(InfeasibleReason::Parity));
    assert!(r.cases.iter().all(|k| k.infeasible));
    assert!(r.phi_always_even);
    assert_eq!(r.brute_force.min_phi_above_floor, Some(12));
    assert_eq!((r.brute_force.excluded_phi_count, r.brute_force.odd_phi_count), (0, 0));
    assert!(r.certified);
}

/// Random symmetric 3x3 forms of signature (1, 2): `det > 0` and not
/// positive definite.
fn hyperbolic_rank3() -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(-4i64..=4, 6)
        .prop_map(|e| vec![vec![e[0], e[1], e[2]], vec![e[1], e[3], e[4]], vec![e[2], e[4], e[5]]])
        .prop_filter("signature (1, 2)", |g| {
            let det = rational_det(g);
            let m1 = g[0][0];
            let m2 = g[0][0] * g[1][1] - g[0][1] * g[0][1];
            det > BigRational::zero() && !(m1 > 0 && m2 > 0)
        })
}

fn positive_class(g: &[Vec<i64>]) -> Option<DivisorClass> {
    let l = IntegralLattice::new("t", g.to_vec(), IntegralLattice::numbered_labels("x", 3)).ok()?;
    let mut best: Option<(i64, DivisorClass)> = None;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                let x = DivisorClass(vec![a, b, c]);
                let s = l.self_intersection(&x).ok()?;
                if s > 0 && best.as_ref().is_none_or(|(t, y)| s < *t || (s == *t && x < *y)) {
                    best = Some((s, x));
                }
            }
        }
    }
    best.map(|(_, x)| x)
}

fn orbit_set(r: &[(DivisorClass, i64)]) -> BTreeSet<(DivisorClass, i64)> {
    r.iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn search_matches_box_enumeration(
        g in hyperbolic_rank3(),
        pmin in 0i64..3,
        width in 0i64..6,
        min_square in -2i64..=0,
    ) {
        let c = positive_class(&g);
        prop_assume!(c.is_some());
        let c = c.unwrap();
        let l = IntegralLattice::new("t", g.clone(), IntegralLattice::numbered_labels("x", 3)).unwrap();
        let cons = SearchConstraints { pairing_min: pmin, pairing_max: pmin + width, min_square, cliff_floor: None };
        let fast = clifford_search(&l, &c, &cons).unwrap();
        let slow = naive_clifford_search(&l, &c, &cons).unwrap();
        prop_assert_eq!(fast.minimum, slow.minimum);
        prop_assert_eq!(orbit_set(&fast.orbits), orbit_set(&slow.orbits));
        let fa: BTreeSet<_> = fast.argmin.iter().cloned().collect();
        let sa: BTreeSet<_> = slow.argmin.iter().cloned().collect();
        prop_assert_eq!(fa, sa);
    }

    #[test]
    fn determinant_matches_rational_elimination(e in proptest::collection::vec(-6i64..=6, 16)) {
        let m: Vec<Vec<i64>> = e.chunks(4).map(|r| r.to_vec()).collect();
        prop_assert_eq!(as_rational(syzygy_core::lattices::determinant(&m)), rational_det(&m));
    }

    #[test]
    fn cauchy_schwarz_is_consistent(s in -8i64..=8, q in -2i64..=24, n in 1usize..=5) {
        let f = cauchy_schwarz_feasible(s, q, n).unwrap();
        // independent brute force over |b_i| <= 5 (enough since b_i² <= q <= 24)
        let mut exists = false;
        if q >= 0 {
            let mut b = vec![-5i64; n];
            'outer: loop {
                if b.iter().sum::<i64>() == s && b.iter().map(|x| x * x).sum::<i64>() == q {
                    exists = true;
                    break;
                }
                let mut i = 0;
                loop {
                    if i == n { break 'outer; }
                    if b[i] < 5 { b[i] += 1; break; }
                    b[i] = -5;
                    i += 1;
                }
            }
        }
        match f {
            Feasibility::Feasible { witness } => {
                prop_assert_eq!(witness.len(), n);
                prop_assert_eq!(witness.iter().sum::<i64>(), s);
                prop_assert_eq!(witness.iter().map(|x| x * x).sum::<i64>(), q);
            }
            Feasibility::Infeasible(reason) => {
                prop_assert!(!exists);
                match reason {
                    InfeasibleReason::NegativeSquareSum => prop_assert!(q < 0),
                    InfeasibleReason::CauchySchwarz { n_times_q, s_squared } => {
                        prop_assert!(n_times_q < s_squared);
                        prop_assert_eq!(n_times_q, n as i64 * q);
                    }
                    InfeasibleReason::Parity => prop_assert!((q - s) % 2 != 0),
                    InfeasibleReason::Exhausted { .. } => {
                        prop_assert!(n as i64 * q >= s * s && (q - s) % 2 == 0);
                    }
                }
            }
        }
    }
}
