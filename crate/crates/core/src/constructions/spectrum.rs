//! Polynomials `U` with `U - a_i V` divisible by prescribed `w_i` and
//! irreducible cofactors, and `U - a_0 V` irreducible.

use serde::Serialize;

use super::crt::{bezout_witness, poly_crt};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::multipoly::{poly_gcd, DegreeTuple, MultiPoly, VarSet};
use crate::rings::{Elem, Ring};
use crate::schinzel::{
    linear_family, search_with_filter, Rejections, SchinzelProblem, SearchConstraints,
    SearchStatus, Strategy,
};

#[derive(Clone, Debug)]
pub struct SpectrumSpec {
    pub field: Ring,
    pub vars: VarSet,
    /// `a_1..a_t`, distinct.
    pub s: Vec<Elem>,
    pub a0: Elem,
    pub v: MultiPoly,
    /// `w_1..w_t`; `w_0 = 1` is implicit.
    pub w: Vec<MultiPoly>,
    pub degrees: DegreeTuple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumOptions {
    pub strategy: Strategy,
    pub coeff_bound: u64,
    pub budget: u64,
    pub threads: Option<usize>,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            strategy: Strategy::Exhaustive,
            coeff_bound: 1,
            budget: 100_000,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumChecks {
    /// `U - a_i V = w_i H_i`, `H_i` irreducible and not dividing `w_i`.
    pub a: bool,
    /// `deg(U - a_0 V) = max(deg U, deg V)`.
    pub b: bool,
    /// `deg_{x_i} U = d_i`.
    pub c: bool,
    /// `U - a_0 V` irreducible.
    pub a0_irreducible: bool,
    /// `U - a_i V` reducible, for each `i` where the degree condition
    /// forces it.
    pub reducible: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumResult {
    pub u: MultiPoly,
    pub u0: MultiPoly,
    pub m: MultiPoly,
    /// `H_1..H_t`.
    pub h: Vec<MultiPoly>,
    /// `p_0..p_t`.
    pub p: Vec<MultiPoly>,
    pub checks: SpectrumChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumOutcome {
    pub status: SearchStatus,
    pub result: Option<SpectrumResult>,
    pub tested: u64,
    pub rejected: Rejections,
}

fn validate(spec: &SpectrumSpec) -> Result<()> {
    let k = &spec.field;
    if !k.is_field() {
        return Err(Error::Unsupported(format!("{k} is not a field")));
    }
    if spec.w.len() != spec.s.len() {
        return Err(Error::Hypothesis(format!(
            "{} values of S but {} moduli",
            spec.s.len(),
            spec.w.len()
        )));
    }
    if spec.degrees.len() != spec.vars.len() {
        return Err(Error::VarMismatch("one degree per variable".into()));
    }
    if spec.v.is_zero() {
        return Err(Error::ZeroInput("V"));
    }
    for (i, a) in spec.s.iter().enumerate() {
        if spec.s[..i].contains(a) {
            return Err(Error::Hypothesis(format!("{} repeated in S", k.format(a))));
        }
    }
    if spec.s.contains(&spec.a0) {
        return Err(Error::Hypothesis(format!("a0 = {} lies in S", k.format(&spec.a0))));
    }
    for (i, w) in spec.w.iter().enumerate() {
        if w.is_zero() {
            return Err(Error::ZeroInput("w_i"));
        }
        let g = poly_gcd(w, &spec.v)?;
        if !g.is_constant() {
            return Err(Error::NotCoprime {
                i: i + 1,
                j: 0,
                gcd: format!("gcd(w_{}, V) = {g}", i + 1),
            });
        }
        for (j, w2) in spec.w.iter().enumerate().skip(i + 1) {
            let g = poly_gcd(w, w2)?;
            if !g.is_constant() {
                return Err(Error::NotCoprime {
                    i: i + 1,
                    j: j + 1,
                    gcd: g.to_string(),
                });
            }
            if bezout_witness(w, w2)?.is_none() {
                return Err(Error::Hypothesis(format!(
                    "could not certify (w_{}) + (w_{}) = k[x]",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Conclusions re-derived from `U` alone by division and factorization.
pub fn verify_spectrum(spec: &SpectrumSpec, u: &MultiPoly) -> Result<(Vec<MultiPoly>, SpectrumChecks)> {
    let k = &spec.field;
    let minus = |a: &Elem| u - &spec.v.scale(a);
    let mut a_ok = true;
    let mut hs = Vec::new();
    for (a, w) in spec.s.iter().zip(&spec.w) {
        let (h, r) = minus(a).divrem(w)?;
        a_ok &= r.is_zero() && is_irreducible(&h)?.is_irreducible() && !h.divides(w);
        hs.push(h);
    }
    let h0 = minus(&spec.a0);
    let b = !h0.is_zero() && h0.tdeg() == u.tdeg().max(spec.v.tdeg());
    let c = (0..spec.vars.len()).all(|i| u.pdeg(i) == spec.degrees.0[i]) && !u.is_zero();
    let a0_irreducible = !h0.is_zero() && is_irreducible(&h0)?.is_irreducible();
    let d1 = spec.degrees.0.first().copied().unwrap_or(0);
    let mut reducible = Vec::new();
    for (a, w) in spec.s.iter().zip(&spec.w) {
        if w.tdeg() > 0 && d1 > spec.v.tdeg().max(w.tdeg()) {
            reducible.push(!is_irreducible(&minus(a))?.is_irreducible());
        }
    }
    let _ = k;
    Ok((
        hs,
        SpectrumChecks {
            a: a_ok,
            b,
            c,
            a0_irreducible,
            reducible,
        },
    ))
}

/// `U = U_0 + M * prod w_i` with `U_0` from Chinese remaindering and `M`
/// found by the witness search on `p_i + M * prod_{j != i} w_j`.
pub fn spectrum_construct(spec: &SpectrumSpec, opts: &SpectrumOptions) -> Result<SpectrumOutcome> {
    validate(spec)?;
    let k = &spec.field;
    let vars = &spec.vars;
    let one = MultiPoly::one(k, vars);
    let ww = spec.w.iter().fold(one.clone(), |acc, w| &acc * w);
    let mut u0 = if spec.w.is_empty() {
        MultiPoly::zero(k, vars)
    } else {
        let res: Vec<(MultiPoly, MultiPoly)> = spec
            .s
            .iter()
            .zip(&spec.w)
            .map(|(a, w)| (spec.v.scale(a), w.clone()))
            .collect();
        poly_crt(&res)?
    };
    let cofactors = |u0: &MultiPoly| -> Vec<MultiPoly> {
        let mut p = vec![u0 - &spec.v.scale(&spec.a0)];
        for (a, w) in spec.s.iter().zip(&spec.w) {
            p.push((u0 - &spec.v.scale(a)).div_exact(w).expect("congruence holds"));
        }
        p
    };
    let mut p = cofactors(&u0);
    while p.iter().any(MultiPoly::is_zero) {
        u0 = &u0 + &ww;
        p = cofactors(&u0);
    }
    // B_0 = prod w_j, B_i = prod_{j != i} w_j
    let mut b = vec![ww.clone()];
    for i in 0..spec.w.len() {
        b.push(
            spec.w
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(one.clone(), |acc, (_, w)| &acc * w),
        );
    }
    let mut delta = Vec::new();
    for (i, &d) in spec.degrees.0.iter().enumerate() {
        let dw = ww.pdeg(i);
        if d < dw {
            return Err(Error::Hypothesis(format!(
                "d_{} = {d} is below deg_x{}(prod w) = {dw}",
                i + 1,
                i + 1
            )));
        }
        delta.push(d - dw);
    }
    let pairs: Vec<(MultiPoly, MultiPoly)> = p.iter().cloned().zip(b.iter().cloned()).collect();
    let (xvars, yvars, ps) = linear_family(&pairs, false).map_err(|e| match e {
        Error::NotCoprime { i, gcd, .. } => {
            Error::Hypothesis(format!("p_{i} and its B_{i} share the factor {gcd}"))
        }
        e => e,
    })?;
    let constraints = SearchConstraints {
        strategy: opts.strategy,
        coeff_bound: opts.coeff_bound,
        exact_degrees: true,
        max_witnesses: Some(1),
        budget: opts.budget,
        threads: opts.threads,
        ..Default::default()
    };
    let problem = SchinzelProblem::new(&xvars, &yvars, ps, DegreeTuple(delta), constraints)?;
    let filter = |ms: &[MultiPoly]| -> bool {
        let u = &u0 + &(&ms[0] * &ww);
        let h0 = &u - &spec.v.scale(&spec.a0);
        (0..vars.len()).all(|i| u.pdeg(i) == spec.degrees.0[i])
            && h0.tdeg() == u.tdeg().max(spec.v.tdeg())
            && (0..spec.w.len()).all(|i| {
                let h = &p[i + 1] + &(&ms[0] * &b[i + 1]);
                !h.divides(&spec.w[i])
            })
    };
    let rep = search_with_filter(&problem, Some(&filter))?;
    let result = match rep.witnesses.first() {
        Some(wit) => {
            let m = wit.m[0].clone();
            let u = &u0 + &(&m * &ww);
            let (h, checks) = verify_spectrum(spec, &u)?;
            if !(checks.a && checks.b && checks.c && checks.a0_irreducible)
                || checks.reducible.iter().any(|r| !r)
            {
                return Err(Error::Hypothesis(format!("U = {u} failed verification")));
            }
            Some(SpectrumResult {
                u,
                u0: u0.clone(),
                m,
                h,
                p: p.clone(),
                checks,
            })
        }
        None => None,
    };
    Ok(SpectrumOutcome {
        status: rep.status,
        result,
        tested: rep.tested,
        rejected: rep.rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;

    #[test]
    fn two_point_spectrum() {
        let q = Ring::rationals();
        let vars = VarSet::x(2);
        let p = |s: &str| parse_poly(s, &q, &vars).unwrap();
        let spec = SpectrumSpec {
            field: q.clone(),
            vars: vars.clone(),
            s: vec![q.from_i64(0), q.from_i64(1)],
            a0: q.from_i64(2),
            v: p("1"),
            w: vec![p("x1"), p("x1 + 1")],
            degrees: DegreeTuple(vec![4, 4]),
        };
        let out = spectrum_construct(&spec, &SpectrumOptions::default()).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let r = out.result.unwrap();
        assert_eq!(r.u0, p("-x1"));
        assert_eq!(r.p, vec![p("-x1 - 2"), p("-1"), p("-1")]);
        assert!(p("x1").divides(&r.u));
        assert!(p("x1 + 1").divides(&(&r.u - &p("1"))));
        assert!(is_irreducible(&(&r.u - &p("2"))).unwrap().is_irreducible());
        assert_eq!(r.checks.reducible, vec![true, true]);
    }

    #[test]
    fn hypotheses_are_checked() {
        let q = Ring::rationals();
        let vars = VarSet::x(2);
        let p = |s: &str| parse_poly(s, &q, &vars).unwrap();
        let mut spec = SpectrumSpec {
            field: q.clone(),
            vars: vars.clone(),
            s: vec![q.from_i64(0), q.from_i64(1)],
            a0: q.from_i64(1),
            v: p("1"),
            w: vec![p("x1"), p("x1 + 1")],
            degrees: DegreeTuple(vec![4, 4]),
        };
        assert!(matches!(spectrum_construct(&spec, &Default::default()), Err(Error::Hypothesis(_))));
        spec.a0 = q.from_i64(2);
        spec.w[1] = p("x1^2");
        assert!(matches!(
            spectrum_construct(&spec, &Default::default()),
            Err(Error::NotCoprime { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn empty_s() {
        let q = Ring::rationals();
        let vars = VarSet::x(2);
        let spec = SpectrumSpec {
            field: q.clone(),
            vars: vars.clone(),
            s: vec![],
            a0: q.from_i64(0),
            v: MultiPoly::one(&q, &vars),
            w: vec![],
            degrees: DegreeTuple(vec![2, 2]),
        };
        let out = spectrum_construct(&spec, &Default::default()).unwrap();
        let r = out.result.unwrap();
        assert!(is_irreducible(&r.u).unwrap().is_irreducible());
    }
}
