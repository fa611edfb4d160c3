//! Exhaustive scan of `P(x, M(x))` over all `M` of bounded degree in
//! `F_q[x]`.

use anyhow::{bail, Result};
use serde::Serialize;

use schinzel_core::rings::FqPoly;
use schinzel_core::{Elem, Monomial, MultiPoly, Ring, VarSet};

/// Largest number of candidates scanned.
const MAX_CANDIDATES: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwanRecord {
    pub m: String,
    pub value: String,
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwanReport {
    pub max_deg: u32,
    pub candidates: u64,
    pub irreducible: u64,
    pub reducible: u64,
    /// `M` with `P(x, M)` irreducible.
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<SwanRecord>>,
}

fn ff(c: &Elem) -> u64 {
    match c {
        Elem::Ff(a) => *a,
        _ => unreachable!(),
    }
}

fn to_string(p: &FqPoly, ring: &Ring, vars: &VarSet) -> String {
    let terms = p
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (Monomial(vec![k as u32]), Elem::Ff(c)));
    MultiPoly::from_terms(ring, vars, terms).to_string()
}

/// `p` over `F_q` in two variables, the second being `y`. Every `M` of
/// degree at most `max_deg` in the first variable is tried.
pub fn swan_scan(p: &MultiPoly, max_deg: u32, records: bool) -> Result<SwanReport> {
    let Some(fld) = p.ring().finite_field() else {
        bail!("swan-scan needs a finite field, got {}", p.ring());
    };
    if p.vars().len() != 2 {
        bail!("swan-scan needs P in two variables x, y");
    }
    let q = fld.q();
    let candidates = q
        .checked_pow(max_deg + 1)
        .filter(|&c| c <= MAX_CANDIDATES)
        .ok_or_else(|| anyhow::anyhow!("{q}^{} candidates is too many", max_deg + 1))?;
    // P = sum_k c_k(x) y^k
    let ydeg = p.pdeg(1) as usize;
    let mut cs = vec![vec![0u64; p.pdeg(0) as usize + 1]; ydeg + 1];
    for (m, c) in p.terms() {
        cs[m.0[1] as usize][m.0[0] as usize] = ff(c);
    }
    let cs: Vec<FqPoly> = cs.into_iter().map(FqPoly::from_coeffs).collect();
    let xvars = VarSet::new([p.vars().name(0)])?;
    let ring = p.ring();
    let mut report = SwanReport {
        max_deg,
        candidates,
        irreducible: 0,
        reducible: 0,
        witnesses: Vec::new(),
        records: records.then(Vec::new),
    };
    for code in 0..candidates {
        let mut k = code;
        let m = FqPoly::from_coeffs(
            (0..=max_deg)
                .map(|_| {
                    let d = k % q;
                    k /= q;
                    d
                })
                .collect(),
        );
        let value = cs
            .iter()
            .rev()
            .fold(FqPoly::zero(), |acc, c| acc.mul(&m, fld).add(c, fld));
        let irr = value.is_irreducible(fld);
        if irr {
            report.irreducible += 1;
            report.witnesses.push(to_string(&m, ring, &xvars));
        } else {
            report.reducible += 1;
        }
        if let Some(r) = report.records.as_mut() {
            r.push(SwanRecord {
                m: to_string(&m, ring, &xvars),
                value: to_string(&value, ring, &xvars),
                irreducible: irr,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use schinzel_core::parse_poly;

    fn scan(ring: &str, p: &str, d: u32) -> SwanReport {
        let ring = Ring::parse(ring).unwrap();
        let vars = VarSet::new(["x", "y"]).unwrap();
        swan_scan(&parse_poly(p, &ring, &vars).unwrap(), d, false).unwrap()
    }

    #[test]
    fn small_scans() {
        let r = scan("GF(2)", "y + x", 1);
        assert_eq!(r.candidates, 4);
        assert!(r.witnesses.contains(&"1".to_string()));
        let r = scan("GF(3)", "y^2 + x", 2);
        assert!(r.irreducible > 0);
        let r = scan("GF(2)", "y^8 + x^3", 4);
        assert_eq!((r.candidates, r.irreducible), (32, 0));
    }
}
