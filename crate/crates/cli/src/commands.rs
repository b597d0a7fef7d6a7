use serde_json::{json, Value};
use syzygy_core::bn::{
    adjusted_rho, chain_component_dims, chain_g1d_feasible, cover_gonality, rho, ChainConfig, SeriesType,
    VanishingSequence,
};
use syzygy_core::field::{Field, FieldSpec, PrimeField, Rationals};
use syzygy_core::koszul::{betti_table, green_verdict, projection_inequality_check, Strategy, Verdict};
use syzygy_core::lattices::{
    clifford_search, double_plane_cubic_analysis, nikulin_quotient_picard, standard_lattice, CliffordSearchResult,
    DivisorClass, IntegralLattice, SearchConstraints, StandardLattice,
};
use syzygy_core::models::{find_smooth_point, hilbert_check, CurveModel, ModelKind, ModelSpec, PointedModel};

use crate::{
    Cli, CliError, Command, GlobalArgs, LatticeCommand, ModelArgs, ModelCommand, Outcome, PairingBound, SCHEMA,
};

/// Largest `h^0(L)` accepted over Q.
const RATIONAL_MAX_H0: usize = 7;

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let (body, ok) = match &cli.command {
        Command::Betti { model, cliff } => with_model(model, g, |m| betti(m, g, *cliff))?,
        Command::Projection { model, p } => projection(model, g, *p)?,
        Command::Lattice(LatticeCommand::Nikulin { g: range, bound }) => nikulin(range.start, range.end, *bound)?,
        Command::Lattice(LatticeCommand::Doubleplane) => doubleplane()?,
        Command::Lattice(LatticeCommand::Lambda { g: genus }) => lambda(*genus)?,
        Command::Lattice(LatticeCommand::Search {
            gram,
            class,
            pairing_min,
            pairing_max,
            min_square,
        }) => search(gram, class, *pairing_min, *pairing_max, *min_square)?,
        Command::Chain {
            g: genus,
            d,
            torsion,
            components,
        } => {
            if *components {
                components_cmd(*genus)?
            } else {
                chain(*genus, d.unwrap_or(*genus), *torsion)?
            }
        }
        Command::Cs {
            cover,
            base_genus,
            base_gon,
            g: genus,
        } => {
            let r = cover_gonality(*cover, *base_genus, *base_gon, *genus)?;
            (json!({ "command": "cs", "result": r }), true)
        }
        Command::Rho {
            g: genus,
            r,
            d,
            vanishing,
        } => rho_cmd(*genus, *r, *d, vanishing)?,
        Command::Model(ModelCommand::Export { model }) => with_model(model, g, export)?,
    };
    let mut json = json!({ "schema": SCHEMA });
    let obj = json.as_object_mut().expect("object");
    if let Value::Object(b) = body {
        obj.extend(b);
    }
    obj.insert("ok".into(), Value::Bool(ok));
    Ok(Outcome { json, ok })
}

type Body = (Value, bool);

fn model_spec(args: &ModelArgs, g: &GlobalArgs) -> Result<ModelSpec, CliError> {
    if let Some(path) = &args.model {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        return serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())));
    }
    let kind = match (args.plane, args.ci33, args.rnc) {
        (Some(d), _, _) => ModelKind::Plane { d },
        (_, true, _) => ModelKind::Ci33,
        (_, _, Some(n)) => ModelKind::Rnc { n },
        _ => return Err(CliError::Invalid("no model given".into())),
    };
    Ok(ModelSpec::from_kind(kind, g.field, Some(g.seed)))
}

/// Builds the model over the field it names and hands it to `f`.
fn with_model<R>(
    args: &ModelArgs,
    g: &GlobalArgs,
    f: impl FnOnce(ModelAny) -> Result<R, CliError>,
) -> Result<R, CliError> {
    let spec = model_spec(args, g)?;
    let kind = spec.model_kind()?;
    match spec.field {
        FieldSpec::Prime(p) => f(ModelAny::Prime(spec.build(PrimeField::new(p)?)?)),
        _ => {
            if kind.expected_dim(1) > RATIONAL_MAX_H0 {
                return Err(CliError::Invalid(format!(
                    "exact rational computations are limited to h^0 <= {RATIONAL_MAX_H0}"
                )));
            }
            f(ModelAny::Rational(spec.build(Rationals)?))
        }
    }
}

enum ModelAny {
    Prime(CurveModel<PrimeField>),
    Rational(CurveModel<Rationals>),
}

fn model_json<F: Field>(m: &CurveModel<F>) -> Value {
    json!({
        "kind": m.kind(),
        "genus": m.genus(),
        "h0": m.h0(),
        "field": m.field().spec().to_string(),
        "seed": m.seed(),
    })
}

/// Clifford index of the general member of the family, where known.
fn derived_cliff(kind: ModelKind) -> Option<(usize, &'static str)> {
    match kind {
        ModelKind::Plane { d } if d >= 5 => Some((d - 4, "plane curve of degree d: d - 4")),
        ModelKind::Plane { d: 4 } => Some((1, "plane quartic: trigonal")),
        ModelKind::Ci33 => Some((3, "complete intersection of two cubics: Clifford dimension 3")),
        _ => None,
    }
}

fn betti(m: ModelAny, g: &GlobalArgs, cliff: Option<usize>) -> Result<Body, CliError> {
    match m {
        ModelAny::Prime(m) => betti_generic(&m, g, cliff),
        ModelAny::Rational(m) => betti_generic(&m, g, cliff),
    }
}

fn betti_generic<F: Field>(m: &CurveModel<F>, g: &GlobalArgs, cliff: Option<usize>) -> Result<Body, CliError> {
    let strategy = if g.certify { Strategy::Direct } else { Strategy::Duality };
    let r = betti_table(m, strategy)?;
    let t = &r.table;
    let source = match (cliff, derived_cliff(m.kind())) {
        (Some(c), _) => Some((c, "supplied")),
        (None, Some((c, why))) if m.kind().is_canonical() => Some((c, why)),
        _ => None,
    };
    let green = source.map(|(c, why)| {
        let verdict = green_verdict(t, c);
        let dual_p = m.genus() as i64 - c as i64 - 2;
        json!({
            "cliff": c,
            "cliff_source": why,
            "verdict": verdict,
            "vanishing": (0..c).map(|p| t.b(p as i64, 2)).collect::<Vec<_>>(),
            "b_cliff_2": t.b(c as i64, 2),
            "nonvanishing_p": dual_p,
            "b_nonvanishing_1": t.b(dual_p, 1),
        })
    });
    let ok = r.euler.passed
        && r.duality.as_ref().is_none_or(|d| d.passed)
        && source.is_none_or(|(c, _)| green_verdict(t, c) == Verdict::Holds);
    Ok((
        json!({
            "command": "betti",
            "model": model_json(m),
            "strategy": r.strategy,
            "table": { "g": t.g, "p_max": t.p_max, "rows": t.rows },
            "k04": r.k04,
            "duality": r.duality,
            "euler": r.euler,
            "green": green,
        }),
        ok,
    ))
}

fn export(m: ModelAny) -> Result<Body, CliError> {
    fn go<F: Field>(m: &CurveModel<F>) -> Body {
        let h = hilbert_check(m, m.seed().unwrap_or(0));
        let ok = h.passed;
        (
            json!({ "command": "model export", "listing": m.listing(), "hilbert": h }),
            ok,
        )
    }
    Ok(match m {
        ModelAny::Prime(m) => go(&m),
        ModelAny::Rational(m) => go(&m),
    })
}

fn projection(args: &ModelArgs, g: &GlobalArgs, only: Option<usize>) -> Result<Body, CliError> {
    let spec = model_spec(args, g)?;
    let FieldSpec::Prime(p) = spec.field else {
        return Err(CliError::Invalid("projection checks need a prime field".into()));
    };
    let m = spec.build(PrimeField::new(p)?)?;
    let point = find_smooth_point(&m, g.seed)?;
    let info = model_json(&m);
    let h0 = m.h0();
    let pm = PointedModel::new(m, point.clone())?;
    let ps: Vec<usize> = match only {
        Some(p) => vec![p],
        None => (0..h0.saturating_sub(1)).collect(),
    };
    let reports = ps
        .iter()
        .map(|&p| projection_inequality_check(&pm, p))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.holds);
    Ok((
        json!({ "command": "projection", "model": info, "point": point, "reports": reports }),
        ok,
    ))
}

/// Search summary without the full orbit list.
fn search_json(r: &CliffordSearchResult) -> Value {
    json!({
        "constraints": r.constraints,
        "box": r.box_bounds,
        "minimum": r.minimum,
        "minimizers": r.argmin,
        "orbits_examined": r.orbits.len(),
        "below_floor": r.below_floor,
        "certificate": r.certificate,
    })
}

fn nikulin(start: usize, end: usize, bound: PairingBound) -> Result<Body, CliError> {
    let mut results = Vec::new();
    let mut all_ok = true;
    for g in start..=end {
        let o = nikulin_quotient_picard(g)?;
        let max = match bound {
            PairingBound::Full => 2 * g as i64 - 2,
            PairingBound::Half => g as i64 - 1,
        };
        let r = clifford_search(&o.lattice, &o.c_tilde, &SearchConstraints::new(0, max))?;
        let expected = if g % 2 == 1 { g as i64 - 1 } else { g as i64 - 2 };
        let l = &o.lattice;
        let glue_cliff = l.inner(&o.c_tilde, &o.d)? - l.self_intersection(&o.d)? - 2;
        let ok = r.minimum == Some(expected)
            && o.c_tilde_primitive
            && o.even
            && o.determinant.abs() == o.expected_abs_determinant;
        all_ok &= ok;
        results.push(json!({
            "g": g,
            "parity": if g % 2 == 1 { "odd" } else { "even" },
            "v": o.v,
            "v_square": o.v_square,
            "c_tilde": o.c_tilde,
            "c_tilde_square": o.c_tilde_square,
            "glue": o.parity,
            "even": o.even,
            "c_tilde_primitive": o.c_tilde_primitive,
            "determinant": o.determinant.to_string(),
            "expected_abs_determinant": o.expected_abs_determinant.to_string(),
            "glue_class_clifford": glue_cliff,
            "clifford_minimum": r.minimum,
            "expected_minimum": expected,
            "gonality": r.minimum.map(|c| c + 2),
            "search": search_json(&r),
            "ok": ok,
        }));
    }
    Ok((json!({ "command": "lattice nikulin", "results": results }), all_ok))
}

fn doubleplane() -> Result<Body, CliError> {
    let r = double_plane_cubic_analysis()?;
    Ok((
        json!({
            "command": "lattice doubleplane",
            "gram": r.lattice.gram(),
            "labels": r.lattice.labels(),
            "c": r.c,
            "c_square": r.c_square,
            "phi_floor": r.phi_floor,
            "phi_min": r.phi_min,
            "phi_always_even": r.phi_always_even,
            "search": search_json(&r.search),
            "cases": r.cases,
            "brute_force": r.brute_force,
        }),
        r.certified,
    ))
}

fn lambda(g: usize) -> Result<Body, CliError> {
    let l = standard_lattice(StandardLattice::LambdaG(g))?;
    let c = l.basis_vector(0);
    let r = clifford_search(&l, &c, &SearchConstraints::new(1, g as i64 - 1))?;
    let empty = r.orbits.is_empty();
    Ok((
        json!({
            "command": "lattice lambda",
            "g": g,
            "lattice": l.name(),
            "determinant": l.determinant().to_string(),
            "empty": empty,
            "search": search_json(&r),
        }),
        empty,
    ))
}

fn search(gram: &str, class: &str, pmin: i64, pmax: i64, min_square: i64) -> Result<Body, CliError> {
    let gram: Vec<Vec<i64>> = serde_json::from_str(gram).map_err(|e| CliError::Invalid(format!("--gram: {e}")))?;
    let c: Vec<i64> = serde_json::from_str(class).map_err(|e| CliError::Invalid(format!("--class: {e}")))?;
    let labels = IntegralLattice::numbered_labels("x", gram.len());
    let l = IntegralLattice::new("input", gram, labels)?;
    let cons = SearchConstraints {
        pairing_min: pmin,
        pairing_max: pmax,
        min_square,
        cliff_floor: None,
    };
    let r = clifford_search(&l, &DivisorClass(c), &cons)?;
    Ok((json!({ "command": "lattice search", "search": search_json(&r) }), true))
}

fn chain(g: u32, d: u32, torsion: u32) -> Result<Body, CliError> {
    let cfg = ChainConfig::new(g, torsion)?;
    let sols = chain_g1d_feasible(cfg, d)?;
    let conclusion = if !sols.is_empty() {
        format!("limit g^1_{d} exist")
    } else if d == g {
        "no limit g^1_g: maximal gonality g+1".to_string()
    } else {
        format!("no limit g^1_{d}")
    };
    Ok((
        json!({
            "command": "chain",
            "g": g,
            "d": d,
            "torsion": torsion,
            "total_genus": cfg.total_genus(),
            "rho_total": rho(2 * i64::from(g) - 1, 1, i64::from(d)),
            "count": sols.len(),
            "solutions": sols,
            "conclusion": conclusion,
        }),
        true,
    ))
}

fn components_cmd(g: u32) -> Result<Body, CliError> {
    let comps = chain_component_dims(g)?;
    let all_one = comps.iter().filter(|c| c.survives).all(|c| c.dimension == 1);
    Ok((
        json!({
            "command": "chain components",
            "g": g,
            "d": g + 1,
            "rho_total": rho(2 * i64::from(g) - 1, 1, i64::from(g) + 1),
            "components": comps,
            "all_dimension_one": all_one,
        }),
        all_one,
    ))
}

fn rho_cmd(g: u32, r: u32, d: u32, vanishing: &[String]) -> Result<Body, CliError> {
    let seqs = vanishing
        .iter()
        .map(|s| {
            let values = s
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Invalid(format!("--vanishing {s}: {e}")))?;
            Ok(VanishingSequence::new(values)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let st = SeriesType::new(g, r, d);
    let adjusted = adjusted_rho(st, &seqs)?;
    let weights: Vec<i64> = seqs.iter().map(VanishingSequence::weight).collect();
    Ok((
        json!({
            "command": "rho",
            "g": g,
            "r": r,
            "d": d,
            "rho": st.rho(),
            "vanishing": seqs,
            "weights": weights,
            "adjusted": adjusted,
        }),
        true,
    ))
}
