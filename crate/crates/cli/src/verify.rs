//! Independent re-checking of a report envelope from its canonical text.

use anyhow::{bail, Context, Result};
use serde_json::Value;

use schinzel_core::constructions::{goldbach_decompose, verify_spectrum, GoldbachOptions};
use schinzel_core::schinzel::{
    density_probe, SchinzelProblem, SearchConstraints, Strategy, DEFAULT_SEED,
};
use schinzel_core::{is_irreducible, DegreeTuple, MultiPoly, Ring, VarSet};

use crate::commands::{parse_elem, parse_in, spectrum_spec, swan_vars};
use crate::envelope::{Check, ReportEnvelope};
use crate::swan_scan;

fn str_of<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v[key].as_str().with_context(|| format!("missing `{key}`"))
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn varset(v: &Value) -> Result<VarSet> {
    Ok(VarSet::new(strs(v))?)
}

fn irr(f: &MultiPoly) -> Result<bool> {
    Ok(is_irreducible(f)?.is_irreducible())
}

/// Checks appropriate to the envelope's command. Errors only when the
/// envelope is malformed.
pub fn check_envelope(env: &ReportEnvelope) -> Result<Vec<Check>> {
    let ring = Ring::parse(&env.ring).with_context(|| format!("bad ring `{}`", env.ring))?;
    let inp = &env.inputs;
    let res = &env.result;
    match env.command_name().context("no command name")? {
        "factor" => {
            let vars = varset(&inp["vars"])?;
            let f = parse_in(str_of(inp, "poly")?, &ring, &vars)?;
            let mut prod = MultiPoly::constant(&ring, &vars, parse_elem(str_of(res, "unit")?, &ring)?);
            let mut all_irr = true;
            for fe in res["factors"].as_array().context("factors")? {
                let g = parse_in(str_of(fe, "factor")?, &ring, &vars)?;
                let e = fe["multiplicity"].as_u64().context("multiplicity")? as u32;
                all_irr &= irr(&g)?;
                prod = &prod * &g.pow(e);
            }
            Ok(vec![
                Check::new("recomposition", prod == f),
                Check::new("factors_irreducible", all_irr),
            ])
        }
        "irred" => {
            let vars = varset(&inp["vars"])?;
            let f = parse_in(str_of(inp, "poly")?, &ring, &vars)?;
            let claimed = res["irreducible"].as_bool().context("irreducible")?;
            Ok(vec![Check::new("agrees", irr(&f)? == claimed)])
        }
        "schinzel" => schinzel_checks(&ring, env),
        "density" => {
            let problem = problem_from(&ring, env, true)?;
            let samples = inp["samples"].as_u64().context("samples")?;
            let again = serde_json::to_value(density_probe(&problem, samples)?)?;
            Ok(vec![Check::new("rerun_agrees", &again == res)])
        }
        "goldbach" => goldbach_checks(&ring, env),
        "spectrum" => spectrum_checks(&ring, env),
        "swan-scan" => {
            let vars = swan_vars(str_of(inp, "P")?, &ring)?;
            let p = parse_in(str_of(inp, "P")?, &ring, &vars)?;
            let xv = VarSet::new([vars.name(0)])?;
            let witnesses = strs(&res["witnesses"]);
            let mut all_irr = true;
            for m in &witnesses {
                let m = parse_in(m, &ring, &xv)?;
                all_irr &= irr(&p.substitute(1, &m)?)?;
            }
            let count = res["irreducible"].as_u64() == Some(witnesses.len() as u64)
                && res["irreducible"].as_u64().unwrap_or(0) + res["reducible"].as_u64().unwrap_or(0)
                    == res["candidates"].as_u64().unwrap_or(u64::MAX);
            let max_deg = inp["max_deg"].as_u64().context("max_deg")? as u32;
            let records = inp["records"].as_bool().unwrap_or(false);
            let again = serde_json::to_value(swan_scan(&p, max_deg, records)?)?;
            Ok(vec![
                Check::new("count", count),
                Check::new("witnesses_irreducible", all_irr),
                Check::new("rerun_agrees", &again == res),
            ])
        }
        other => bail!("cannot verify a `{other}` report"),
    }
}

fn problem_from(ring: &Ring, env: &ReportEnvelope, random: bool) -> Result<SchinzelProblem> {
    let inp = &env.inputs;
    let xvars = varset(&inp["xvars"])?;
    let yvars = varset(&inp["yvars"])?;
    let all = xvars.extended(yvars.names().iter().cloned())?;
    let ps = strs(&inp["P"])
        .iter()
        .map(|s| parse_in(s, ring, &all))
        .collect::<Result<Vec<_>>>()?;
    let degrees = DegreeTuple(
        inp["deg"]
            .as_array()
            .context("deg")?
            .iter()
            .map(|d| d.as_u64().unwrap_or(0) as u32)
            .collect(),
    );
    let support = match inp["support"].as_array() {
        Some(_) => {
            let mut out = Vec::new();
            for s in strs(&inp["support"]) {
                let m = parse_in(&s, ring, &xvars)?;
                out.push(m.leading_term().context("empty support monomial")?.0.clone());
            }
            Some(out)
        }
        None => None,
    };
    let seed = env.command["seed"].as_u64().unwrap_or(DEFAULT_SEED);
    let random = random || env.command["strategy"].as_str() == Some("random");
    let constraints = SearchConstraints {
        strategy: if random {
            Strategy::Random { seed }
        } else {
            Strategy::Exhaustive
        },
        coeff_bound: inp["coeff_bound"].as_u64().unwrap_or(1),
        deg_u: inp["deg_u"].as_u64().unwrap_or(1) as u32,
        deg_u_target: inp["deg_u_target"].as_u64().map(|d| d as u32),
        exact_degrees: inp["exact_degrees"].as_bool().unwrap_or(false),
        paper_mode: inp["paper_mode"].as_bool().unwrap_or(false),
        support,
        max_witnesses: env.command["max_witnesses"].as_u64().map(|k| k as usize),
        budget: env.command["budget"].as_u64().unwrap_or(1_000_000),
        threads: None,
    };
    Ok(SchinzelProblem::new(&xvars, &yvars, ps, degrees, constraints)?)
}

fn schinzel_checks(ring: &Ring, env: &ReportEnvelope) -> Result<Vec<Check>> {
    let problem = problem_from(ring, env, false)?;
    let res = &env.result;
    let n = problem.xvars.len();
    let ws = res["witnesses"].as_array().context("witnesses")?;
    let (mut irr_ok, mut values_ok, mut deg_ok) = (true, true, true);
    for w in ws {
        let ms = strs(&w["m"]);
        let mut cur = problem.ps.clone();
        for m in &ms {
            let m = parse_in(m, ring, &problem.xvars)?;
            deg_ok &= (0..n).all(|j| m.pdeg(j) <= problem.degrees.0[j]);
            cur = cur
                .iter()
                .map(|p| Ok(p.substitute(n, &m)?))
                .collect::<Result<_>>()?;
        }
        let claimed = strs(&w["values"]);
        values_ok &= claimed.len() == cur.len()
            && cur.iter().zip(&claimed).all(|(v, c)| &v.to_string() == c);
        for v in &cur {
            irr_ok &= irr(v)?;
        }
    }
    let tested = res["tested"].as_u64().context("tested")?;
    let rejected: u64 = res["rejected"]
        .as_object()
        .context("rejected")?
        .values()
        .filter_map(Value::as_u64)
        .sum();
    let complete = res["complete"].as_bool().unwrap_or(false);
    let status_ok = match res["status"].as_str() {
        Some("found") => !ws.is_empty(),
        Some("exhaustively_none") => ws.is_empty() && complete,
        Some("budget_exhausted") => ws.is_empty() && !complete,
        _ => false,
    };
    Ok(vec![
        Check::new("witnesses_irreducible", irr_ok),
        Check::new("values_match", values_ok),
        Check::new("witness_degrees", deg_ok),
        Check::new("accounting", tested == ws.len() as u64 + rejected),
        Check::new("status_consistent", status_ok),
    ])
}

fn goldbach_checks(ring: &Ring, env: &ReportEnvelope) -> Result<Vec<Check>> {
    let inp = &env.inputs;
    let res = &env.result;
    let vars = varset(&inp["vars"])?;
    let q = parse_in(str_of(inp, "Q")?, ring, &vars)?;
    let relaxed = inp["relaxed_degx"].as_bool().unwrap_or(false);
    let d = &res["decomposition"];
    if d.is_null() {
        let opts = GoldbachOptions {
            relaxed_degx: relaxed,
            budget: inp["budget"].as_u64().unwrap_or(GoldbachOptions::default().budget),
        };
        let again = serde_json::to_value(goldbach_decompose(&q, &opts)?)?;
        return Ok(vec![Check::new("rerun_agrees", &again == res)]);
    }
    let f = parse_in(str_of(d, "f")?, ring, &vars)?;
    let g = parse_in(str_of(d, "g")?, ring, &vars)?;
    let degree = if relaxed {
        f.pdeg(0) <= q.pdeg(0) && g.pdeg(0) <= q.pdeg(0)
    } else {
        f.tdeg() <= q.tdeg() && g.tdeg() <= q.tdeg()
    };
    let mut checks = vec![
        Check::new("identity", &f + &g == q),
        Check::new("f_irreducible", irr(&f)?),
        Check::new("g_irreducible", irr(&g)?),
        Check::new("degree_clause", degree),
    ];
    if !relaxed && q.tdeg() == 1 && vars.len() == 1 {
        checks.push(Check::new("f_binomial", f.nterms() <= 2));
    }
    Ok(checks)
}

fn spectrum_checks(ring: &Ring, env: &ReportEnvelope) -> Result<Vec<Check>> {
    let spec = spectrum_spec(ring, &env.inputs)?;
    let r = &env.result["result"];
    if r.is_null() {
        return Ok(vec![Check::new(
            "status_consistent",
            env.result["status"].as_str() != Some("found"),
        )]);
    }
    let p = |key: &str| parse_in(str_of(r, key)?, ring, &spec.vars);
    let (u, u0, m) = (p("u")?, p("u0")?, p("m")?);
    let ww = spec
        .w
        .iter()
        .fold(MultiPoly::one(ring, &spec.vars), |acc, w| &acc * w);
    let (_, checks) = verify_spectrum(&spec, &u)?;
    let reported = serde_json::to_value(&checks)? == r["checks"];
    Ok(vec![
        Check::new("construction", u == &u0 + &(&m * &ww)),
        Check::new("a", checks.a),
        Check::new("b", checks.b),
        Check::new("c", checks.c),
        Check::new("a0_irreducible", checks.a0_irreducible),
        Check::new("reducible", checks.reducible.iter().all(|&x| x)),
        Check::new("matches_report", reported),
    ])
}
