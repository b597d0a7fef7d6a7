//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the lines always reach the output. The
//! process fails if any criterion fails other than those listed in
//! `KNOWN_FAILURES`, and also if a known failure stops failing in the
//! recorded way, so the expectation gets revisited.

use std::collections::BTreeSet;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use syzygy_cli::{execute, to_json, Cli};
use syzygy_core::bn::{chain_component_dims, chain_g1d_feasible, cover_gonality, cs_bound, rho, ChainConfig};
use syzygy_core::field::PrimeField;
use syzygy_core::koszul::{betti_table, KoszulModule, Strategy};
use syzygy_core::lattices::{
    clifford_search, determinant, double_plane_cubic_analysis, naive_clifford_search, DivisorClass, Feasibility,
    InfeasibleReason, IntegralLattice, SearchConstraints,
};
use syzygy_core::linalg::{kernel_basis, rank, SparseMatrix};
use syzygy_core::models::{ci33_model, plane_curve_model, rational_normal_model, CurveModel, Equations};

const P: u32 = 32003;

/// Criteria expected to fail, with the reason. Each is checked to fail for
/// exactly that reason and nothing else.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    3,
    "even-g components (0,2,-1) and (2,0,-1) survive the torsion condition with dimension 2",
)];

struct Outcome {
    ok: bool,
    detail: String,
    /// For a known failure: whether it failed in the recorded way.
    as_recorded: bool,
}

impl Outcome {
    fn pass_if(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
            as_recorded: false,
        }
    }
}

struct Run {
    unexpected: Vec<u32>,
}

impl Run {
    fn criterion(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = out.ok && in_time;
        let mut detail = out.detail;
        if !in_time {
            detail.push_str(&format!("; over the {:.0} s limit", limit.as_secs_f64()));
        }
        println!(
            "{} [{id}] {name} ({:.2} s, limit {:.0} s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs_f64(),
        );
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        match known {
            None if !pass => self.unexpected.push(id),
            Some((_, why)) if pass || !out.as_recorded || !in_time => {
                println!("       known failure ({why}) did not reproduce as recorded");
                self.unexpected.push(id);
            }
            Some((_, why)) => println!("       known failure: {why}"),
            None => {}
        }
    }
}

fn run_cli(args: &[&str]) -> Value {
    let cli = Cli::try_parse_from(std::iter::once("syzygy").chain(args.iter().copied())).expect("valid arguments");
    execute(&cli).expect("command runs").json
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn nikulin() -> Outcome {
    let v = run_cli(&["lattice", "nikulin", "--g", "5..20"]);
    let mut bad = Vec::new();
    let mut mins = Vec::new();
    for r in v["results"].as_array().expect("results") {
        let g = r["g"].as_i64().unwrap();
        let expected = if g % 2 == 1 { g - 1 } else { g - 2 };
        let min = r["clifford_minimum"].as_i64();
        mins.push(min.unwrap_or(-1));
        let primitive = r["c_tilde_primitive"].as_bool() == Some(true);
        let even = r["even"].as_bool() == Some(true);
        if min != Some(expected) || !primitive || !even {
            bad.push(g);
        }
    }
    let count = mins.len();
    Outcome::pass_if(
        bad.is_empty() && count == 16,
        format!("{count} genera, minima {mins:?}, mismatches {bad:?}"),
    )
}

fn doubleplane() -> Outcome {
    let r = double_plane_cubic_analysis().expect("analysis runs");
    let case = |t: i64| r.cases.iter().find(|c| c.pairing == t);
    let mut problems = Vec::new();
    if r.phi_min != Some(12) {
        problems.push(format!("phi_min {:?}", r.phi_min));
    }
    for (t, s, quad) in [(18, 8, "a^2-6a+11"), (24, 14, "3a^2-24a+58")] {
        match case(t) {
            // no integer a satisfies quadratic(a) <= 0: Cauchy-Schwarz alone excludes the case
            Some(c) if c.square == s && c.quadratic == quad && c.admissible_a.is_empty() && c.infeasible => {
                let [q2, q1, q0] = c.quadratic_coefficients;
                if q1 * q1 - 4 * q2 * q0 >= 0 {
                    problems.push(format!("({t},{s}) quadratic has real roots"));
                }
            }
            other => problems.push(format!("({t},{s}) {:?}", other.map(|c| &c.quadratic))),
        }
    }
    match case(12) {
        Some(c) if c.square == 2 && c.admissible_a == [2] && c.infeasible => {
            let (a, f) = c.per_a[0].clone();
            let (sb, sb2) = (3 * a - 2, a * a - 1);
            if (sb, sb2) != (4, 3) || f != Feasibility::Infeasible(InfeasibleReason::Parity) {
                problems.push(format!("(12,2) at a={a}: ({sb},{sb2}) {f:?}"));
            }
        }
        other => problems.push(format!("(12,2) {:?}", other.map(|c| &c.admissible_a))),
    }
    let bf = &r.brute_force;
    if bf.min_phi_above_floor != Some(12) || bf.excluded_phi_count != 0 || bf.odd_phi_count != 0 {
        problems.push(format!("brute force {bf:?}"));
    }
    if !r.certified {
        problems.push("not certified".into());
    }
    Outcome::pass_if(
        problems.is_empty(),
        format!(
            "min phi {:?}; cases (12,2) parity of (4,3), (18,8) a^2-6a+11, (24,14) 3a^2-24a+58 infeasible; \
             box {:?} scanned {} points, min {:?}{}",
            r.phi_min,
            bf.box_bounds,
            bf.points_scanned,
            bf.min_phi_above_floor,
            if problems.is_empty() {
                String::new()
            } else {
                format!("; problems {problems:?}")
            }
        ),
    )
}

fn chain() -> Outcome {
    let mut parity_bad = Vec::new();
    let mut lower_bad = Vec::new();
    let mut dims_bad: BTreeSet<(i64, i64, i64, i64)> = BTreeSet::new();
    let mut other_bad = Vec::new();
    for g in 3..=50u32 {
        let cfg = ChainConfig::new(g, 2).unwrap();
        let at_g = chain_g1d_feasible(cfg, g).unwrap();
        let ok = if g % 2 == 1 {
            at_g.is_empty()
        } else {
            at_g.len() == (g / 2 + 1) as usize
        };
        if !ok {
            parity_bad.push(g);
        }
        if !chain_g1d_feasible(cfg, g - 1).unwrap().is_empty() {
            lower_bad.push(g);
        }
        if g % 2 == 0 {
            for c in chain_component_dims(g).unwrap().into_iter().filter(|c| c.survives) {
                if c.dimension != 1 {
                    let d = c.distribution;
                    if c.dimension == 2 && d.e == -1 && d.c1 + d.c2 == 2 && d.c1 * d.c2 == 0 {
                        dims_bad.insert((d.c1, d.c2, d.e, c.dimension));
                    } else {
                        other_bad.push((g, d, c.dimension));
                    }
                }
            }
        }
    }
    let dims_ok = dims_bad.is_empty() && other_bad.is_empty();
    let rest_ok = parity_bad.is_empty() && lower_bad.is_empty();
    let recorded: BTreeSet<_> = [(0, 2, -1, 2), (2, 0, -1, 2)].into_iter().collect();
    Outcome {
        ok: rest_ok && dims_ok,
        detail: format!(
            "d=g parity/count {}, d=g-1 empty {}, components only dimension 1 {}{}",
            if parity_bad.is_empty() {
                "ok".to_string()
            } else {
                format!("bad {parity_bad:?}")
            },
            if lower_bad.is_empty() {
                "ok".to_string()
            } else {
                format!("bad {lower_bad:?}")
            },
            if dims_ok { "ok" } else { "no" },
            if dims_bad.is_empty() {
                String::new()
            } else {
                format!(" (surviving (c1,c2,e,dim): {dims_bad:?})")
            },
        ),
        as_recorded: rest_ok && other_bad.is_empty() && dims_bad == recorded,
    }
}

/// Dense Gaussian elimination mod P.
fn oracle_rank(mut a: Vec<Vec<u64>>) -> usize {
    let p = u64::from(P);
    let pow = |mut x: u64, mut e: u64| {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * x % p;
            }
            x = x * x % p;
            e >>= 1;
        }
        acc
    };
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow(a[r][c], p - 2);
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// `∧^k V ⊗ S_q → ∧^{k-1} V ⊗ S_{q+1}` for the degree-n rational normal
/// curve, built from binary forms: V has basis `x^i y^(n-i)` and `S_q` basis
/// `x^a y^(qn-a)`.
fn oracle_differential(n: usize, k: usize, q: usize) -> Vec<Vec<u64>> {
    let v = n + 1;
    let masks = |k: usize| -> Vec<u32> { (0u32..1 << v).filter(|m| m.count_ones() as usize == k).collect() };
    let (src, dst) = (masks(k), masks(k - 1));
    let (ds, dt) = (q * n + 1, (q + 1) * n + 1);
    let mut m = vec![vec![0u64; src.len() * ds]; dst.len() * dt];
    for (ci, &mask) in src.iter().enumerate() {
        let members: Vec<usize> = (0..v).filter(|i| mask >> i & 1 == 1).collect();
        for (pos, &i) in members.iter().enumerate() {
            let ri = dst.binary_search(&(mask & !(1 << i))).unwrap();
            for a in 0..ds {
                let e = &mut m[ri * dt + i + a][ci * ds + a];
                *e = if pos % 2 == 0 {
                    (*e + 1) % u64::from(P)
                } else {
                    (*e + u64::from(P) - 1) % u64::from(P)
                };
            }
        }
    }
    m
}

fn oracle_b_p1(n: usize, p: usize) -> usize {
    let dim = choose(n + 1, p) * (n + 1);
    let into = if p >= 1 {
        oracle_rank(oracle_differential(n, p, 1))
    } else {
        0
    };
    let from = oracle_rank(oracle_differential(n, p + 1, 0));
    dim - into - from
}

fn rnc() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for n in 2..=6 {
        let m = rational_normal_model(n, PrimeField::default()).unwrap();
        let t = betti_table(&m, Strategy::Direct).unwrap().table;
        let row: Vec<usize> = (0..=n).map(|p| t.b(p as i64, 1)).collect();
        for (p, &b) in row.iter().enumerate() {
            if b != oracle_b_p1(n, p) || b != p * choose(n, p + 1) {
                bad.push((n, p));
            }
        }
        rows.push(row);
    }
    Outcome::pass_if(bad.is_empty(), format!("b[p][1] rows {rows:?}, mismatches {bad:?}"))
}

fn plane_curves() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| {
        let mut problems = Vec::new();
        let mut shown = Vec::new();
        for (d, cliff) in [(5usize, 1usize), (6, 2)] {
            let m = plane_curve_model(d, Equations::Seeded(1), PrimeField::default()).unwrap();
            let r = betti_table(&m, Strategy::Direct).unwrap();
            let t = &r.table;
            let zero_below = (0..cliff).all(|p| t.b(p as i64, 2) == 0);
            let nonzero_at = t.b(cliff as i64, 2) != 0;
            let duality = r.duality.as_ref().is_some_and(|x| x.full && x.passed) && t.duality_violations().is_empty();
            if !(zero_below && nonzero_at && duality && r.euler.passed) {
                problems.push(d);
            }
            shown.push(format!("d={d} g={} row2 {:?}", t.g, t.rows[2]));
        }
        Outcome::pass_if(
            problems.is_empty(),
            format!(
                "{}; duality and Euler checks {}",
                shown.join(", "),
                if problems.is_empty() { "pass" } else { "fail" }
            ),
        )
    })
}

fn ci33() -> Outcome {
    let m = ci33_model(Equations::Seeded(1), PrimeField::default()).unwrap();
    let r = betti_table(&m, Strategy::Direct).unwrap();
    let t = &r.table;
    let vanish = (0..=2).all(|p| t.b(p, 2) == 0);
    let (b32, b51) = (t.b(3, 2), t.b(5, 1));
    let ok = t.g == 10 && vanish && b32 == b51 && b32 != 0 && r.euler.passed;
    Outcome::pass_if(
        ok,
        format!(
            "g={} row1 {:?} row2 {:?}, b[3][2]={b32}, b[5][1]={b51}",
            t.g, t.rows[1], t.rows[2]
        ),
    )
}

fn brill_noether() -> Outcome {
    let rho_ok = (2..=100i64).all(|g| rho(2 * g - 1, 1, g) == -1 && rho(2 * g - 1, 1, g + 1) == 1);
    let plane_ok = (3..=30u64).all(|d| {
        let g1 = (d - 1) * (d - 2) / 2;
        cs_bound(2, g1, 2 * d - 3, 0).unwrap() == (d - 2) * (d + 1)
    });
    let triple = cs_bound(3, 1, 5, 0).unwrap();
    let pencils_ok = (1..=40u64).all(|k| cs_bound(k, 0, k, 0).unwrap() == (k - 1) * (k - 1));
    let quartic = cover_gonality(2, 3, 3, 17).unwrap();
    let elliptic = cover_gonality(3, 1, 2, 13).unwrap();
    let ok = rho_ok
        && plane_ok
        && triple == 11
        && pencils_ok
        && (quartic.threshold, quartic.gonality) == (10, Some(6))
        && (elliptic.threshold, elliptic.gonality) == (11, Some(6));
    Outcome::pass_if(
        ok,
        format!(
            "rho -1/1 for g=2..100 {rho_ok}; (d-2)(d+1) {plane_ok}; triple/elliptic {triple}; (k-1)^2 {pencils_ok}"
        ),
    )
}

fn models() -> Vec<CurveModel<PrimeField>> {
    let f = PrimeField::default();
    let mut v: Vec<_> = (2..=6).map(|n| rational_normal_model(n, f).unwrap()).collect();
    for d in 4..=6 {
        v.push(plane_curve_model(d, Equations::Seeded(1), f).unwrap());
    }
    v.push(ci33_model(Equations::Seeded(1), f).unwrap());
    v
}

fn d_squared() -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in models() {
        let k = KoszulModule::full(&m).unwrap();
        for q in 0..=3i64 {
            for p in 1..=k.w_dim() as i64 {
                let upper = k.differential(p + 1, q - 1).unwrap();
                let lower = k.differential(p, q).unwrap();
                if upper.cols() == 0 || lower.rows() == 0 {
                    continue;
                }
                checked += 1;
                if !lower.matmul(&upper).unwrap().is_zero() {
                    bad.push(format!("{:?} p={p} q={q}", m.kind()));
                }
            }
        }
    }
    (checked, bad)
}

fn random_matrix(rng: &mut ChaCha8Rng) -> SparseMatrix<PrimeField> {
    let f = PrimeField::default();
    let (r, c) = (rng.gen_range(1..=40), rng.gen_range(1..=40));
    let random = |r: usize, c: usize, rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..=(r * c).min(120));
        let t: Vec<_> = (0..n)
            .map(|_| (rng.gen_range(0..r), rng.gen_range(0..c), rng.gen_range(0..P)))
            .collect();
        SparseMatrix::from_triplets(f, r, c, t).unwrap()
    };
    if rng.gen_bool(0.5) {
        // force a rank deficiency through a thin product
        let k = rng.gen_range(1..=r.min(c));
        let a = random(r, k, rng);
        let b = random(k, c, rng);
        a.matmul(&b).unwrap()
    } else {
        random(r, c, rng)
    }
}

fn rank_nullity(rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut bad = Vec::new();
    for i in 0..1000 {
        let m = random_matrix(rng);
        let kernel = kernel_basis(&m);
        let in_kernel = kernel.iter().all(|v| m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
        if rank(&m) + kernel.len() != m.cols() || !in_kernel {
            bad.push(i);
        }
    }
    bad
}

fn random_hyperbolic(rng: &mut ChaCha8Rng) -> (IntegralLattice, DivisorClass) {
    loop {
        let e: Vec<i64> = (0..6).map(|_| rng.gen_range(-4..=4)).collect();
        let g = vec![vec![e[0], e[1], e[2]], vec![e[1], e[3], e[4]], vec![e[2], e[4], e[5]]];
        let positive_definite = g[0][0] > 0 && g[0][0] * g[1][1] - g[0][1] * g[0][1] > 0;
        if determinant(&g) <= 0 || positive_definite {
            continue;
        }
        let l = IntegralLattice::new("t", g, IntegralLattice::numbered_labels("x", 3)).unwrap();
        // smallest positive square in a small box, lexicographically first on ties
        let mut best: Option<(i64, DivisorClass)> = None;
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let x = DivisorClass(vec![a, b, c]);
                    let s = l.self_intersection(&x).unwrap();
                    if s > 0 && best.as_ref().is_none_or(|(t, y)| s < *t || (s == *t && x < *y)) {
                        best = Some((s, x));
                    }
                }
            }
        }
        if let Some((_, c)) = best {
            return (l, c);
        }
    }
}

fn search_vs_naive(rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut bad = Vec::new();
    for i in 0..100 {
        let (l, c) = random_hyperbolic(rng);
        let pmin = rng.gen_range(0..3);
        let cons = SearchConstraints {
            pairing_min: pmin,
            pairing_max: pmin + rng.gen_range(0..6),
            min_square: rng.gen_range(-2..=0),
            cliff_floor: None,
        };
        let fast = clifford_search(&l, &c, &cons).unwrap();
        let slow = naive_clifford_search(&l, &c, &cons).unwrap();
        let set = |v: &[(DivisorClass, i64)]| v.iter().cloned().collect::<BTreeSet<_>>();
        let arg = |v: &[DivisorClass]| v.iter().cloned().collect::<BTreeSet<_>>();
        if fast.minimum != slow.minimum
            || set(&fast.orbits) != set(&slow.orbits)
            || arg(&fast.argmin) != arg(&slow.argmin)
        {
            bad.push(i);
        }
    }
    bad
}

fn deterministic_json() -> Vec<String> {
    let runs: &[&[&str]] = &[
        &["--seed", "7", "betti", "--plane", "5"],
        &["--seed", "3", "projection", "--plane", "5"],
        &["lattice", "nikulin", "--g", "5..9"],
        &["chain", "--g", "12"],
    ];
    let mut bad = Vec::new();
    for args in runs {
        let a = to_json(&run_cli(args));
        let b = to_json(&run_cli(args));
        let bin = |args: &[&str]| {
            Process::new(env!("CARGO_BIN_EXE_syzygy"))
                .args(args)
                .output()
                .expect("binary runs")
                .stdout
        };
        let (x, y) = (bin(args), bin(args));
        if a != b || x != y || x != format!("{a}\n").into_bytes() {
            bad.push(args.join(" "));
        }
    }
    bad
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (checked, dd) = d_squared();
    let rn = rank_nullity(&mut rng);
    let sv = search_vs_naive(&mut rng);
    let js = deterministic_json();
    Outcome::pass_if(
        dd.is_empty() && rn.is_empty() && sv.is_empty() && js.is_empty(),
        format!(
            "d∘d=0 on {checked} composable pairs (bad {dd:?}); rank+nullity 1000 matrices (bad {rn:?}); \
             search vs naive 100 lattices (bad {sv:?}); repeated JSON identical (bad {js:?})"
        ),
    )
}

fn main() {
    let secs = Duration::from_secs;
    let mut run = Run { unexpected: Vec::new() };
    run.criterion(1, "Nikulin Clifford minima g=5..20", secs(1), nikulin);
    run.criterion(2, "double-plane diophantine certificate", secs(10), doubleplane);
    run.criterion(3, "chain gonality parity g=3..50", secs(1), chain);
    run.criterion(4, "rational normal curves vs oracle", secs(30), rnc);
    run.criterion(5, "plane quintic and sextic Green verdicts", secs(600), plane_curves);
    run.criterion(6, "ci33 genus 10, Cliff 3", secs(900), ci33);
    run.criterion(7, "Brill-Noether and Castelnuovo-Severi values", secs(1), brill_noether);
    run.criterion(8, "property suites", secs(600), properties);
    if !run.unexpected.is_empty() {
        eprintln!("unexpected acceptance results: {:?}", run.unexpected);
        std::process::exit(1);
    }
}
