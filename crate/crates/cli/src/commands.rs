use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use schinzel_core::constructions::{
    goldbach_decompose, spectrum_construct, GoldbachOptions, SpectrumOptions, SpectrumSpec,
};
use schinzel_core::factor::factor_multivariate;
use schinzel_core::schinzel::{
    density_probe, search_with_filter, SchinzelProblem, SearchConstraints, SearchStatus, Strategy,
    DEFAULT_SEED,
};
use schinzel_core::{is_irreducible, parse_poly, DegreeTuple, Elem, MultiPoly, Ring, VarSet};

use crate::args::{
    Cli, Command, DensityArgs, GoldbachArgs, Global, PolyArgs, SearchArgs, SpectrumArgs,
    StrategyArg, SwanArgs,
};
use crate::envelope::{ReportEnvelope, Verification};
use crate::{exit, infer_vars, infer_yvars, resolve_ring, swan_scan, verify, Run};

fn echo(cli: &Cli) -> Value {
    let mut v = serde_json::to_value(&cli.command).expect("serializable");
    let obj = v.as_object_mut().unwrap();
    if let Some(s) = cli.global.seed {
        obj.insert("seed".into(), json!(s));
    }
    if let Some(b) = cli.global.budget {
        obj.insert("budget".into(), json!(b));
    }
    v
}

fn names(v: &VarSet) -> Value {
    json!(v.names())
}

fn status_code(s: SearchStatus) -> i32 {
    match s {
        SearchStatus::Found => exit::FOUND,
        SearchStatus::ExhaustivelyNone => exit::EXHAUSTIVELY_NONE,
        SearchStatus::BudgetExhausted => exit::BUDGET_EXHAUSTED,
    }
}

pub(crate) fn parse_in(text: &str, ring: &Ring, vars: &VarSet) -> Result<MultiPoly> {
    parse_poly(text, ring, vars).with_context(|| format!("cannot parse `{text}` over {ring}"))
}

pub(crate) fn parse_elem(text: &str, ring: &Ring) -> Result<Elem> {
    let p = parse_in(text, ring, &VarSet::x(1))?;
    if !p.is_constant() {
        bail!("`{text}` is not an element of {ring}");
    }
    Ok(p.constant_coeff())
}

fn finish(cli: &Cli, ring: &Ring, inputs: Value, result: Value, code: i32, summary: String) -> Result<Run> {
    let mut envelope = ReportEnvelope::new(echo(cli), ring.to_string(), inputs, result);
    let checks = verify::check_envelope(&envelope)?;
    envelope.verification = Verification::from_checks(checks);
    let code = if envelope.verification.passed() {
        code
    } else {
        exit::VERIFY_FAILED
    };
    Ok(Run {
        envelope,
        summary,
        code,
    })
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::Factor(a) => factor(cli, a),
        Command::Irred(a) => irred(cli, a),
        Command::Schinzel(a) => schinzel(cli, a),
        Command::Density(a) => density(cli, a),
        Command::Goldbach(a) => goldbach(cli, a),
        Command::Spectrum(a) => spectrum(cli, a),
        Command::SwanScan(a) => swan(cli, a),
        Command::Verify(a) => {
            let text = std::fs::read_to_string(&a.file)
                .with_context(|| format!("cannot read {}", a.file.display()))?;
            let env: ReportEnvelope = serde_json::from_str(&text).context("not a report envelope")?;
            let checks = verify::check_envelope(&env)?;
            let v = Verification::from_checks(checks);
            let passed = v.passed();
            let ring = resolve_ring(Some(&env.ring))?;
            let summary = format!(
                "verify {}: {}",
                env.command_name().unwrap_or("?"),
                v.status
            );
            let result = json!({
                "verified_command": env.command_name(),
                "checks": v.checks,
                "status": v.status,
            });
            let mut out = ReportEnvelope::new(echo(cli), ring.to_string(), json!({ "file": a.file }), result);
            out.verification = v;
            Ok(Run {
                envelope: out,
                summary,
                code: if passed { exit::FOUND } else { exit::VERIFY_FAILED },
            })
        }
    }
}

fn poly_input(g: &Global, a: &PolyArgs) -> Result<(Ring, VarSet, MultiPoly)> {
    let ring = resolve_ring(g.ring.as_deref())?;
    let vars = infer_vars(&[&a.poly], &ring, a.vars.as_deref())?;
    let f = parse_in(&a.poly, &ring, &vars)?;
    Ok((ring, vars, f))
}

fn factor(cli: &Cli, a: &PolyArgs) -> Result<Run> {
    let (ring, vars, f) = poly_input(&cli.global, a)?;
    let fac = factor_multivariate(&f)?;
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|(g, e)| json!({ "factor": g.to_string(), "multiplicity": e }))
        .collect();
    let mut parts: Vec<String> = fac
        .factors
        .iter()
        .map(|(g, e)| if *e == 1 { format!("({g})") } else { format!("({g})^{e}") })
        .collect();
    if !ring.is_one(&fac.unit) || parts.is_empty() {
        let u = ring.format(&fac.unit);
        parts.insert(0, if ring.needs_parens(&fac.unit) { format!("({u})") } else { u });
    }
    let summary = format!("{f} = {}", parts.join(" * "));
    let result = json!({
        "unit": ring.format(&fac.unit),
        "factors": factors,
        "trace": fac.trace,
    });
    let inputs = json!({ "poly": f.to_string(), "vars": names(&vars) });
    finish(cli, &ring, inputs, result, exit::FOUND, summary)
}

fn irred(cli: &Cli, a: &PolyArgs) -> Result<Run> {
    let (ring, vars, f) = poly_input(&cli.global, a)?;
    let cert = is_irreducible(&f)?;
    let summary = format!("{f}: {}", cert.describe(&ring));
    let result = json!({
        "irreducible": cert.is_irreducible(),
        "certificate": cert.describe(&ring),
    });
    let inputs = json!({ "poly": f.to_string(), "vars": names(&vars) });
    finish(cli, &ring, inputs, result, exit::FOUND, summary)
}

/// The problem described by `a`, and its canonical inputs record.
pub(crate) fn search_problem(g: &Global, a: &SearchArgs, force_random: bool) -> Result<(SchinzelProblem, Value)> {
    let ring = resolve_ring(g.ring.as_deref())?;
    let degrees = DegreeTuple::parse(&a.deg)?;
    let xvars = match &a.vars {
        Some(v) => crate::vars_from_flag(v)?,
        None => VarSet::x(degrees.len()),
    };
    let yvars = infer_yvars(&a.p, &ring, &xvars)?;
    let all = xvars.extended(yvars.names().iter().cloned())?;
    let ps = a.p.iter().map(|s| parse_in(s, &ring, &all)).collect::<Result<Vec<_>>>()?;
    let support = match &a.support {
        Some(s) => {
            let mut out = Vec::new();
            for t in s.split(',') {
                let m = parse_in(t, &ring, &xvars)?;
                match m.terms().iter().next() {
                    Some((mono, c)) if m.nterms() == 1 && ring.is_one(c) => out.push(mono.clone()),
                    _ => bail!("`{t}` is not a monomial"),
                }
            }
            Some(out)
        }
        None => None,
    };
    let seed = g.seed.unwrap_or(DEFAULT_SEED);
    let strategy = if force_random || a.strategy == StrategyArg::Random {
        Strategy::Random { seed }
    } else {
        Strategy::Exhaustive
    };
    let constraints = SearchConstraints {
        strategy,
        coeff_bound: a.coeff_bound.unwrap_or(1),
        deg_u: a.deg_u.unwrap_or(1),
        deg_u_target: a.deg_u_target,
        exact_degrees: a.exact_degrees,
        paper_mode: a.paper_mode,
        support: support.clone(),
        max_witnesses: a.max_witnesses,
        budget: g.budget.unwrap_or(1_000_000),
        threads: g.threads,
    };
    let problem = SchinzelProblem::new(&xvars, &yvars, ps, degrees.clone(), constraints)?;
    let inputs = json!({
        "P": problem.ps.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "xvars": names(&xvars),
        "yvars": names(&yvars),
        "deg": degrees.0,
        "coeff_bound": problem.constraints.coeff_bound,
        "deg_u": problem.constraints.deg_u,
        "deg_u_target": a.deg_u_target,
        "exact_degrees": a.exact_degrees,
        "paper_mode": a.paper_mode,
        "support": support.map(|s| s.iter().map(|m| MultiPoly::monomial(&ring, &xvars, m.clone(), ring.one()).to_string()).collect::<Vec<_>>()),
    });
    Ok((problem, inputs))
}

fn schinzel(cli: &Cli, a: &SearchArgs) -> Result<Run> {
    let (problem, inputs) = search_problem(&cli.global, a, false)?;
    let rep = search_with_filter(&problem, None)?;
    let mut summary = format!(
        "{}: {} witness(es) among {} tested",
        rep.status,
        rep.witnesses.len(),
        rep.tested
    );
    for w in &problem.warnings {
        summary.push_str(&format!("\nwarning: {w}"));
    }
    let code = status_code(rep.status);
    finish(cli, &problem.ring, inputs, serde_json::to_value(&rep)?, code, summary)
}

fn density(cli: &Cli, a: &DensityArgs) -> Result<Run> {
    let (problem, mut inputs) = search_problem(&cli.global, &a.search, true)?;
    inputs["samples"] = json!(a.samples);
    let rep = density_probe(&problem, a.samples)?;
    let summary = format!(
        "{} of {} samples are witnesses ({:.4}, 95% CI [{:.4}, {:.4}])",
        rep.witnesses, rep.samples, rep.fraction, rep.ci_low, rep.ci_high
    );
    finish(cli, &problem.ring, inputs, serde_json::to_value(&rep)?, exit::FOUND, summary)
}

fn goldbach(cli: &Cli, a: &GoldbachArgs) -> Result<Run> {
    let ring = resolve_ring(cli.global.ring.as_deref())?;
    let mut vars = infer_vars(&[&a.q], &ring, a.vars.as_deref())?;
    if a.relaxed_degx && vars.len() == 1 {
        vars = vars.extended([if vars.name(0) == "y" { "x" } else { "y" }])?;
    }
    let q = parse_in(&a.q, &ring, &vars)?;
    let opts = GoldbachOptions {
        relaxed_degx: a.relaxed_degx,
        budget: cli.global.budget.unwrap_or(GoldbachOptions::default().budget),
    };
    let out = goldbach_decompose(&q, &opts)?;
    let summary = match &out.decomposition {
        Some(d) => format!("{} = ({}) + ({})", q, d.f, d.g),
        None => format!("{q}: {} after {} candidates", out.status, out.tested),
    };
    let inputs = json!({
        "Q": q.to_string(),
        "vars": names(&vars),
        "relaxed_degx": a.relaxed_degx,
        "budget": opts.budget,
    });
    let code = status_code(out.status);
    finish(cli, &ring, inputs, serde_json::to_value(&out)?, code, summary)
}

pub(crate) fn spectrum_spec(field: &Ring, inputs: &Value) -> Result<SpectrumSpec> {
    let vars = VarSet::new(
        inputs["vars"]
            .as_array()
            .context("vars")?
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string()),
    )?;
    let strs = |key: &str| -> Result<Vec<String>> {
        Ok(inputs[key]
            .as_array()
            .with_context(|| key.to_string())?
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string())
            .collect())
    };
    let degrees = DegreeTuple(
        inputs["deg"]
            .as_array()
            .context("deg")?
            .iter()
            .map(|d| d.as_u64().unwrap_or(0) as u32)
            .collect(),
    );
    Ok(SpectrumSpec {
        field: field.clone(),
        s: strs("S")?.iter().map(|s| parse_elem(s, field)).collect::<Result<_>>()?,
        a0: parse_elem(inputs["a0"].as_str().context("a0")?, field)?,
        v: parse_in(inputs["V"].as_str().context("V")?, field, &vars)?,
        w: strs("w")?.iter().map(|s| parse_in(s, field, &vars)).collect::<Result<_>>()?,
        degrees,
        vars,
    })
}

fn spectrum(cli: &Cli, a: &SpectrumArgs) -> Result<Run> {
    let field = resolve_ring(a.field.as_deref().or(cli.global.ring.as_deref()))?;
    let degrees = DegreeTuple::parse(&a.deg)?;
    let vars = VarSet::x(degrees.len());
    let s: Vec<Elem> = a
        .s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_elem(t, &field))
        .collect::<Result<_>>()?;
    let v = parse_in(&a.v, &field, &vars)?;
    let w: Vec<MultiPoly> = a.w.iter().map(|t| parse_in(t, &field, &vars)).collect::<Result<_>>()?;
    let inputs = json!({
        "field": field.to_string(),
        "vars": names(&vars),
        "S": s.iter().map(|e| field.format(e)).collect::<Vec<_>>(),
        "a0": field.format(&parse_elem(&a.a0, &field)?),
        "V": v.to_string(),
        "w": w.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "deg": degrees.0,
    });
    let spec = spectrum_spec(&field, &inputs)?;
    let opts = SpectrumOptions {
        strategy: match cli.global.seed {
            Some(seed) => Strategy::Random { seed },
            None => Strategy::Exhaustive,
        },
        coeff_bound: a.coeff_bound.unwrap_or(1),
        budget: cli.global.budget.unwrap_or(SpectrumOptions::default().budget),
        threads: cli.global.threads,
    };
    let out = spectrum_construct(&spec, &opts)?;
    let summary = match &out.result {
        Some(r) => format!("U = {}", r.u),
        None => format!("{} after {} candidates", out.status, out.tested),
    };
    let code = status_code(out.status);
    finish(cli, &field, inputs, serde_json::to_value(&out)?, code, summary)
}

/// `P` over `[x, y]`, where `x` is whatever other variable `P` uses.
pub(crate) fn swan_vars(text: &str, ring: &Ring) -> Result<VarSet> {
    let vars = infer_vars(&[text], ring, None)?;
    if vars.index_of("y").is_none() {
        bail!("P must involve y");
    }
    let others: Vec<&String> = vars.names().iter().filter(|n| n.as_str() != "y").collect();
    match others.as_slice() {
        [] => Ok(VarSet::new(["x", "y"])?),
        [x] => Ok(VarSet::new([x.as_str(), "y"])?),
        _ => bail!("P must be in two variables"),
    }
}

fn swan(cli: &Cli, a: &SwanArgs) -> Result<Run> {
    let ring = resolve_ring(cli.global.ring.as_deref())?;
    let vars = swan_vars(&a.p, &ring)?;
    let p = parse_in(&a.p, &ring, &vars)?;
    let rep = swan_scan(&p, a.max_deg, a.records)?;
    let summary = format!(
        "{} of {} candidates give an irreducible P(x, M)",
        rep.irreducible, rep.candidates
    );
    let code = if rep.irreducible > 0 {
        exit::FOUND
    } else {
        exit::EXHAUSTIVELY_NONE
    };
    let inputs = json!({
        "P": p.to_string(),
        "vars": names(&vars),
        "max_deg": a.max_deg,
        "records": a.records,
    });
    finish(cli, &ring, inputs, serde_json::to_value(&rep)?, code, summary)
}
