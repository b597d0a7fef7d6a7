//! Human-readable transcripts, derived from the JSON output only.

use std::fmt::Write;

use serde_json::Value;

fn int(v: &Value) -> i64 {
    v.as_i64().unwrap_or(0)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

fn status(v: &Value) -> &'static str {
    if v["ok"].as_bool().unwrap_or(false) {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn render_text(v: &Value) -> String {
    let mut s = String::new();
    match v["command"].as_str().unwrap_or("") {
        "betti" => betti(&mut s, v),
        "projection" => projection(&mut s, v),
        "lattice nikulin" => nikulin(&mut s, v),
        "lattice doubleplane" => doubleplane(&mut s, v),
        "lattice lambda" | "lattice search" => search(&mut s, v),
        "chain" => chain(&mut s, v),
        "chain components" => components(&mut s, v),
        "cs" => cs(&mut s, v),
        "rho" => rho(&mut s, v),
        _ => s.push_str(&crate::to_json(v)),
    }
    let _ = writeln!(s, "status: {}", status(v));
    s
}

/// Row `q` lists `b_{p,q}` in column `p`; zeros are shown as `.`.
pub fn betti_diagram(rows: &[Vec<usize>]) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|b| b.to_string().len())
        .max()
        .unwrap_or(1)
        .max(rows.first().map_or(1, |r| r.len().to_string().len()));
    let mut s = String::new();
    let _ = write!(s, "{:>3}", "");
    for p in 0..rows.first().map_or(0, Vec::len) {
        let _ = write!(s, " {p:>width$}");
    }
    s.push('\n');
    for (q, row) in rows.iter().enumerate() {
        let _ = write!(s, "{q:>2}:");
        for b in row {
            let cell = if *b == 0 { ".".to_string() } else { b.to_string() };
            let _ = write!(s, " {cell:>width$}");
        }
        s.push('\n');
    }
    s
}

fn betti(s: &mut String, v: &Value) {
    let m = &v["model"];
    let _ = writeln!(
        s,
        "model {} over {}, genus {}, h0 {}, seed {}",
        compact(&m["kind"]),
        m["field"].as_str().unwrap_or("?"),
        m["genus"],
        m["h0"],
        m["seed"]
    );
    let _ = writeln!(s, "strategy: {}", v["strategy"].as_str().unwrap_or("?"));
    let rows: Vec<Vec<usize>> = serde_json::from_value(v["table"]["rows"].clone()).unwrap_or_default();
    s.push_str(&betti_diagram(&rows));
    let d = &v["duality"];
    if !d.is_null() {
        let _ = writeln!(
            s,
            "duality b[p][q] = b[g-2-p][3-q]: {} ({}{})",
            if d["passed"].as_bool().unwrap_or(false) {
                "holds"
            } else {
                "violated"
            },
            if d["full"].as_bool().unwrap_or(false) {
                "all entries computed"
            } else {
                "upper strands inferred"
            },
            d["spot_checks"]
                .as_array()
                .filter(|a| !a.is_empty())
                .map(|a| {
                    let list: Vec<String> = a
                        .iter()
                        .map(|c| format!("b[{}][{}] {}={}", c["p"], c["q"], c["inferred"], c["direct"]))
                        .collect();
                    format!("; direct spot checks {}", list.join(", "))
                })
                .unwrap_or_default()
        );
    }
    let e = &v["euler"];
    let _ = writeln!(s, "Euler strands (weight: cohomology = terms):");
    for w in e["weights"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "  {}: {} = {}", w["weight"], w["cohomology"], w["terms"]);
    }
    let g = &v["green"];
    if !g.is_null() {
        let _ = writeln!(
            s,
            "Green, Cliff = {} ({}): b[p][2] for p < Cliff = {}, b[Cliff][2] = {}, b[{}][1] = {} -> {}",
            g["cliff"],
            g["cliff_source"].as_str().unwrap_or(""),
            compact(&g["vanishing"]),
            g["b_cliff_2"],
            g["nonvanishing_p"],
            g["b_nonvanishing_1"],
            g["verdict"].as_str().unwrap_or("?")
        );
    }
}

fn projection(s: &mut String, v: &Value) {
    let _ = writeln!(
        s,
        "model {} at point {}",
        compact(&v["model"]["kind"]),
        compact(&v["point"])
    );
    for r in v["reports"].as_array().into_iter().flatten() {
        let _ = writeln!(
            s,
            "  p = {}: K_{{p+1,1}}(L) = {} <= K_{{p+1,1}}(L,W_x) + K_{{p,1}}(L(-x)) = {} + {}  {}",
            r["p"],
            r["a"],
            r["b"],
            r["c"],
            if r["holds"].as_bool().unwrap_or(false) {
                "holds"
            } else {
                "VIOLATED"
            }
        );
    }
}

fn nikulin(s: &mut String, v: &Value) {
    for r in v["results"].as_array().into_iter().flatten() {
        let _ = writeln!(
            s,
            "g = {} ({}): v^2 = {}, C~^2 = {}, glue square {} (even: {}), C~ primitive: {}, |det| = {} (expected {})",
            r["g"],
            r["parity"].as_str().unwrap_or(""),
            r["v_square"],
            r["c_tilde_square"],
            r["glue"]["glue_square"],
            r["even"],
            r["c_tilde_primitive"],
            r["determinant"].as_str().unwrap_or("").trim_start_matches('-'),
            r["expected_abs_determinant"].as_str().unwrap_or("")
        );
        let _ = writeln!(
            s,
            "  min C~.D - D^2 - 2 over 0 <= C~.D <= {} = {} (expected {}), {} minimizing orbit(s), gonality {}  {}",
            r["search"]["constraints"]["pairing_max"],
            r["clifford_minimum"],
            r["expected_minimum"],
            r["search"]["minimizers"].as_array().map_or(0, Vec::len),
            r["gonality"],
            if r["ok"].as_bool().unwrap_or(false) {
                "ok"
            } else {
                "FAILED"
            }
        );
    }
}

fn doubleplane(s: &mut String, v: &Value) {
    let _ = writeln!(s, "C = {}, C^2 = {}", compact(&v["c"]), v["c_square"]);
    let _ = writeln!(
        s,
        "phi(D) = C.D - D^2 over 0 <= C.D <= {}, D^2 >= -2, phi >= {}: minimum {}",
        v["search"]["constraints"]["pairing_max"], v["phi_floor"], v["phi_min"]
    );
    let _ = writeln!(s, "phi is even for every class: {}", v["phi_always_even"]);
    let cases = v["cases"].as_array().cloned().unwrap_or_default();
    let pairings: Vec<String> = cases.iter().map(|k| k["pairing"].to_string()).collect();
    let _ = writeln!(s, "phi = 10 forces C.D in {{{}}}:", pairings.join(", "));
    for k in &cases {
        let _ = writeln!(
            s,
            "  (C.D, D^2) = ({}, {}): sum b = {}, sum b^2 = {}; Cauchy-Schwarz gives {} <= 0",
            k["pairing"],
            k["square"],
            k["sum_b"].as_str().unwrap_or(""),
            k["sum_b_squared"].as_str().unwrap_or(""),
            k["quadratic"].as_str().unwrap_or("")
        );
        let admissible = k["per_a"].as_array().cloned().unwrap_or_default();
        if admissible.is_empty() {
            let _ = writeln!(s, "    no integer a: infeasible");
        }
        for pa in admissible {
            let a = int(&pa[0]);
            let _ = writeln!(
                s,
                "    a = {a}: (sum b, sum b^2) = ({}, {}): {}",
                3 * a - int(&k["pairing"]) / 6,
                a * a - int(&k["square"]) / 2,
                compact(&pa[1])
            );
        }
    }
    let b = &v["brute_force"];
    let _ = writeln!(
        s,
        "box scan {}: {} points, {} classes, min phi above floor {}, phi = 10 found {} times, odd phi {} times",
        compact(&b["box_bounds"]),
        b["points_scanned"],
        b["classes"],
        b["min_phi_above_floor"],
        b["excluded_phi_count"],
        b["odd_phi_count"]
    );
}

fn search(s: &mut String, v: &Value) {
    if v["command"] == "lattice lambda" {
        let _ = writeln!(
            s,
            "{} (g = {}), det {}",
            v["lattice"].as_str().unwrap_or(""),
            v["g"],
            v["determinant"].as_str().unwrap_or("")
        );
    }
    let r = &v["search"];
    let c = &r["constraints"];
    let _ = writeln!(
        s,
        "classes with {} <= C.D <= {}, D^2 >= {}: {} orbit(s); box {}",
        c["pairing_min"],
        c["pairing_max"],
        c["min_square"],
        r["orbits_examined"],
        compact(&r["box"])
    );
    if r["minimum"].is_null() {
        let _ = writeln!(s, "  empty: no such class");
    } else {
        let _ = writeln!(
            s,
            "  minimum C.D - D^2 - 2 = {}, minimizers {}",
            r["minimum"],
            compact(&r["minimizers"])
        );
    }
    for p in r["certificate"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "  C.D = {}: {}", p["pairing"], p["outcome"].as_str().unwrap_or(""));
    }
}

fn chain(s: &mut String, v: &Value) {
    let _ = writeln!(
        s,
        "X_g for g = {} (genus {}), torsion order {}, d = {}",
        v["g"], v["total_genus"], v["torsion"], v["d"]
    );
    let _ = writeln!(
        s,
        "rho(2g-1, 1, d) = {} = rho_C1 + rho_C2 + rho_E with rho_Ci = a0+a1-g >= 0, rho_E = 2d-1-sum >= -1",
        v["rho_total"]
    );
    for x in v["solutions"].as_array().into_iter().flatten() {
        let _ = writeln!(
            s,
            "  a = {}, b = {}: rho = ({}, {}, {}){}{}",
            compact(&x["a"]),
            compact(&x["b"]),
            x["rho"]["c1"],
            x["rho"]["c2"],
            x["rho"]["e"],
            if x["torsion_applied"].as_bool().unwrap_or(false) {
                ", torsion divides a1-a0"
            } else {
                ""
            },
            if x["coincident"].as_bool().unwrap_or(false) {
                ", coincident orders"
            } else {
                ""
            }
        );
    }
    let _ = writeln!(
        s,
        "{} solution(s): {}",
        v["count"],
        v["conclusion"].as_str().unwrap_or("")
    );
}

fn components(s: &mut String, v: &Value) {
    let _ = writeln!(
        s,
        "limit g^1_{} on X_g, g = {}: rho = {}",
        v["d"], v["g"], v["rho_total"]
    );
    for c in v["components"].as_array().into_iter().flatten() {
        let d = &c["distribution"];
        let _ = writeln!(
            s,
            "  ({}, {}, {}): {} witness(es), {} rejected by torsion -> {}{}",
            d["c1"],
            d["c2"],
            d["e"],
            c["witnesses"],
            c["torsion_rejected"],
            if c["survives"].as_bool().unwrap_or(false) {
                "survives"
            } else {
                "excluded"
            },
            if c["survives"].as_bool().unwrap_or(false) {
                format!(", dimension {}", c["dimension"])
            } else {
                String::new()
            }
        );
    }
    let _ = writeln!(s, "all surviving components of dimension 1: {}", v["all_dimension_one"]);
}

fn cs(s: &mut String, v: &Value) {
    let r = &v["result"];
    let _ = writeln!(
        s,
        "degree {} cover of a genus {} curve of gonality {}, g = {}",
        r["cover_degree"], r["base_genus"], r["base_gonality"], r["genus"]
    );
    let _ = writeln!(
        s,
        "pencils of degree k < {} not factoring need g <= max_k d1 g1 + (d1-1)(k-1) = {}",
        r["pullback_degree"], r["threshold"]
    );
    if r["gonality"].is_null() {
        let _ = writeln!(s, "inconclusive: g <= threshold");
    } else {
        let _ = writeln!(s, "gonality = {}", r["gonality"]);
    }
}

fn rho(s: &mut String, v: &Value) {
    let _ = writeln!(s, "rho({}, {}, {}) = {}", v["g"], v["r"], v["d"], v["rho"]);
    if v["weights"].as_array().is_some_and(|w| !w.is_empty()) {
        let _ = writeln!(
            s,
            "weights {} -> adjusted rho = {}",
            compact(&v["weights"]),
            v["adjusted"]
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_uses_dots() {
        let d = betti_diagram(&[vec![1, 0], vec![0, 3]]);
        assert_eq!(d, "    0 1\n 0: 1 .\n 1: . 3\n");
    }
}
