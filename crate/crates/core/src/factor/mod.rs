//! Factorization and irreducibility in `R[x̄]`.
//!
//! Multivariate inputs are folded to one variable by Kronecker
//! substitution, the image is factored (over `F_q` or `Z`), and true factors
//! are recovered by unfolding subproducts and trial division. Over `k[u]`
//! the variable `u` is folded together with `x̄` over the base field.

pub mod capelli;
pub mod kronecker;
pub mod oracle;
pub mod univariate;
pub mod zpoly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MultiPoly, VarSet};
use crate::rings::{Elem, FqPoly, Ring, RingKind};
pub use capelli::capelli_check;
pub use kronecker::{kronecker_fold, kronecker_unfold, KroneckerMap};
pub use oracle::{brute_force_factor, brute_force_irreducible};

/// Cap on subsets tried while recombining folded factors.
pub const MAX_RECOMBINATION_SUBSETS: u64 = 1 << 20;

/// `unit * prod(factor^multiplicity)`. The unit absorbs the content over
/// `R`, so over `Z` or `k[u]` it need not be invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(MultiPoly, u32)>,
    /// Method notes such as `kronecker-fold D=3`.
    pub trace: Vec<String>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, ring: &Ring, vars: &VarSet) -> MultiPoly {
        self.factors.iter().fold(
            MultiPoly::constant(ring, vars, self.unit.clone()),
            |acc, (g, e)| &acc * &g.pow(*e),
        )
    }

    /// Total number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

/// Outcome of an irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Irreducible { method: String },
    /// Units and constants are not irreducible polynomials here.
    UnitOrConstant,
    /// Nonunit content over a non-field coefficient ring.
    ContentNonunit(Elem),
    /// A nontrivial factor.
    Factor(MultiPoly),
}

impl Certificate {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Certificate::Irreducible { .. })
    }

    /// Short human-readable reason.
    pub fn describe(&self, ring: &Ring) -> String {
        match self {
            Certificate::Irreducible { method } => format!("irreducible ({method})"),
            Certificate::UnitOrConstant => "unit/constant".into(),
            Certificate::ContentNonunit(c) => format!("content {}", ring.format(c)),
            Certificate::Factor(g) => format!("factor {g}"),
        }
    }
}

/// Canonical order on polynomials: total degree, then terms from the top.
pub fn cmp_canonical(a: &MultiPoly, b: &MultiPoly) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        let r = a.ring();
        for ((ma, ca), (mb, cb)) in a.terms().iter().rev().zip(b.terms().iter().rev()) {
            let o = ma.cmp(mb).then_with(|| r.cmp_elems(ca, cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.nterms().cmp(&b.nterms())
    })
}

fn collect(mut parts: Vec<(MultiPoly, u32)>) -> Vec<(MultiPoly, u32)> {
    parts.sort_by(|a, b| cmp_canonical(&a.0, &b.0));
    let mut out: Vec<(MultiPoly, u32)> = Vec::new();
    for (g, e) in parts {
        match out.last_mut() {
            Some((h, k)) if *h == g => *k += e,
            _ => out.push((g, e)),
        }
    }
    out
}

fn finish(f: &MultiPoly, parts: Vec<(MultiPoly, u32)>, trace: Vec<String>) -> Factorization {
    let factors = collect(parts);
    let r = f.ring();
    let lc_prod = factors
        .iter()
        .fold(r.one(), |acc, (g, e)| r.mul(&acc, &r.pow(&g.lc(), *e)));
    let unit = r
        .div_exact(&f.lc(), &lc_prod)
        .expect("leading coefficient of the product divides");
    Factorization {
        unit,
        factors,
        trace,
    }
}

/// Dense coefficients of a polynomial in variable `i` only.
fn to_dense(f: &MultiPoly, i: usize) -> Vec<Elem> {
    let mut v = vec![f.ring().zero(); f.pdeg(i) as usize + 1];
    for (m, c) in f.terms() {
        v[m.0[i] as usize] = c.clone();
    }
    v
}

fn from_dense(ring: &Ring, vars: &VarSet, i: usize, v: &[Elem]) -> MultiPoly {
    MultiPoly::from_terms(
        ring,
        vars,
        v.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            (Monomial(e), c.clone())
        }),
    )
}

/// Irreducible factors (with repetition) of a normalized polynomial in one
/// variable `i`, over `Z` or a finite field.
fn factor_one_var(g: &MultiPoly, i: usize) -> Result<Vec<(MultiPoly, u32)>> {
    let ring = g.ring();
    let dense = to_dense(g, i);
    match ring.kind() {
        RingKind::Finite(fld) => {
            let fq = FqPoly::from_coeffs(
                dense
                    .iter()
                    .map(|c| match c {
                        Elem::Ff(a) => *a,
                        _ => unreachable!(),
                    })
                    .collect(),
            );
            let (_, fs) = univariate::factor_fq(&fq, fld, univariate::DEFAULT_SEED);
            Ok(fs
                .into_iter()
                .map(|(h, e)| {
                    let v: Vec<Elem> = h.coeffs.into_iter().map(Elem::Ff).collect();
                    (from_dense(ring, g.vars(), i, &v), e)
                })
                .collect())
        }
        RingKind::Integers => {
            let ints: Vec<BigInt> = dense
                .iter()
                .map(|c| match c {
                    Elem::Int(n) => n.clone(),
                    _ => unreachable!(),
                })
                .collect();
            let (_, fs) = zpoly::factor_z(&ints)?;
            Ok(fs
                .into_iter()
                .map(|(h, e)| {
                    let v: Vec<Elem> = h.into_iter().map(Elem::Int).collect();
                    (from_dense(ring, g.vars(), i, &v), e)
                })
                .collect())
        }
        _ => unreachable!("factor_one_var over Z or F_q only"),
    }
}

/// Splits a normalized, primitive polynomial without monomial content over
/// `Z` or `F_q` into irreducible factors with multiplicities.
fn split(g: &MultiPoly, trace: &mut Vec<String>) -> Result<Vec<(MultiPoly, u32)>> {
    let active = g.support_vars();
    match active.len() {
        0 => return Ok(vec![]),
        1 => return factor_one_var(g, active[0]),
        _ => {}
    }
    // restrict to the variables that occur
    let sub_vars = VarSet::new(active.iter().map(|&i| g.vars().name(i).to_string()))?;
    let h = g.embed(&sub_vars)?;
    let map = KroneckerMap::for_poly(&h);
    trace.push(format!("kronecker-fold D={}", map.d));
    let folded = map.fold(&h)?;
    // distinct univariate factors with their multiplicities
    let mut classes = factor_one_var(&folded, 0)?;

    let mut found: Vec<MultiPoly> = Vec::new();
    let mut rem = h.clone();
    let mut tested: u64 = 0;
    let mut s = 1;
    loop {
        let caps: Vec<u32> = classes.iter().map(|c| c.1).collect();
        if 2 * s > caps.iter().sum::<u32>() {
            break;
        }
        let mut hit = None;
        each_with_sum(&caps, s, &mut Vec::new(), &mut |k| {
            tested += 1;
            if tested > MAX_RECOMBINATION_SUBSETS {
                return Err(Error::BudgetExceeded(format!(
                    "more than {MAX_RECOMBINATION_SUBSETS} recombination subsets"
                )));
            }
            let prod = k
                .iter()
                .zip(&classes)
                .fold(MultiPoly::one(h.ring(), folded.vars()), |acc, (&e, (p, _))| {
                    &acc * &p.pow(e)
                });
            let cand = map.unfold(&prod, &sub_vars)?;
            if !cand.is_constant() {
                let cand = cand.primitive_part().normalize();
                if let Some(q) = rem.div_exact(&cand) {
                    hit = Some((k.to_vec(), cand, q));
                    return Ok(true);
                }
            }
            Ok(false)
        })?;
        match hit {
            Some((k, cand, q)) => {
                found.push(cand);
                rem = q;
                for (c, e) in classes.iter_mut().zip(k) {
                    c.1 -= e;
                }
                classes.retain(|c| c.1 > 0);
            }
            None => s += 1,
        }
    }
    if !rem.is_constant() {
        found.push(rem.primitive_part().normalize());
    }
    found
        .into_iter()
        .map(|f| Ok((f.embed(g.vars())?, 1)))
        .collect()
}

/// Calls `f` on every `k` with `0 <= k[i] <= caps[i]` and `sum k = s`, until
/// `f` returns true.
fn each_with_sum(
    caps: &[u32],
    s: u32,
    k: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]) -> Result<bool>,
) -> Result<bool> {
    let i = k.len();
    if i == caps.len() {
        return if s == 0 { f(k) } else { Ok(false) };
    }
    let rest: u32 = caps[i + 1..].iter().sum();
    for e in (s.saturating_sub(rest)..=caps[i].min(s)).rev() {
        k.push(e);
        let stop = each_with_sum(caps, s - e, k, f)?;
        k.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Factorization over `Z` or `F_q`.
fn factor_base(f: &MultiPoly) -> Result<Factorization> {
    let g = f.primitive_part().normalize();
    let mut parts: Vec<(MultiPoly, u32)> = Vec::new();
    let mono = g.monomial_content();
    for (i, &e) in mono.0.iter().enumerate() {
        if e > 0 {
            parts.push((MultiPoly::var(f.ring(), f.vars(), i), e));
        }
    }
    let g = if mono.is_one() {
        g
    } else {
        g.div_exact(&MultiPoly::monomial(f.ring(), f.vars(), mono, f.ring().one()))
            .unwrap()
    };
    let mut trace = Vec::new();
    parts.extend(split(&g, &mut trace)?);
    Ok(finish(f, parts, trace))
}

fn factor_rationals(f: &MultiPoly) -> Result<Factorization> {
    let z = Ring::integers();
    let fz = crate::multipoly::rational_to_integer(f, &z);
    let fac = factor_base(&fz)?;
    let q = f.ring();
    let parts = fac
        .factors
        .into_iter()
        .map(|(g, e)| {
            let gq = g.map_coeffs(q, |c| match c {
                Elem::Int(n) => Elem::Rat(BigRational::from_integer(n.clone())),
                _ => unreachable!(),
            });
            (gq.normalize(), e)
        })
        .collect();
    Ok(finish(f, parts, fac.trace))
}

fn fresh_name(vars: &VarSet) -> String {
    let mut name = "u".to_string();
    while vars.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// `k[u][x̄] -> k[x̄, u]` with `u` appended as the last variable.
pub(crate) fn lower_ku(f: &MultiPoly, base: &Ring) -> Result<MultiPoly> {
    let vars = f.vars().extended([fresh_name(f.vars())])?;
    let n = f.vars().len();
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let Elem::Poly(v) = c else { unreachable!() };
        for (k, a) in v.iter().enumerate() {
            let mut e = m.0.clone();
            e.push(k as u32);
            debug_assert_eq!(e.len(), n + 1);
            terms.push((Monomial(e), a.clone()));
        }
    }
    Ok(MultiPoly::from_terms(base, &vars, terms))
}

/// Inverse of [`lower_ku`].
pub(crate) fn lift_ku(g: &MultiPoly, ring: &Ring, vars: &VarSet) -> MultiPoly {
    let base = g.ring();
    let n = vars.len();
    let mut acc: std::collections::BTreeMap<Monomial, Vec<Elem>> = Default::default();
    for (m, c) in g.terms() {
        let k = m.0[n] as usize;
        let v = acc.entry(Monomial(m.0[..n].to_vec())).or_default();
        if v.len() <= k {
            v.resize(k + 1, base.zero());
        }
        v[k] = c.clone();
    }
    MultiPoly::from_terms(ring, vars, acc.into_iter().map(|(m, v)| (m, Elem::Poly(v))))
}

fn factor_ku(f: &MultiPoly) -> Result<Factorization> {
    let ring = f.ring();
    let base = ring.poly_base().unwrap();
    let low = lower_ku(&f.primitive_part(), base)?;
    let fac = factor_multivariate(&low)?;
    let n = f.vars().len();
    let mask: Vec<bool> = (0..=n).map(|i| i < n).collect();
    let mut parts = Vec::new();
    for (g, e) in fac.factors {
        if g.degree_in_subset(&mask) == crate::multipoly::Degree::Finite(0) {
            // u-only factors belong to the content, removed above
            continue;
        }
        parts.push((lift_ku(&g, ring, f.vars()).primitive_part().normalize(), e));
    }
    let mut trace = fac.trace;
    trace.push("u folded over base field".into());
    Ok(finish(f, parts, trace))
}

/// Complete factorization in `R[x̄]`; the content is split off into the
/// unit first.
pub fn factor_multivariate(f: &MultiPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor_multivariate"));
    }
    match f.ring().kind() {
        RingKind::Integers | RingKind::Finite(_) => factor_base(f),
        RingKind::Rationals => factor_rationals(f),
        RingKind::UPoly(_) => factor_ku(f),
    }
}

fn require_univariate(f: &MultiPoly) -> Result<()> {
    if f.support_vars().len() > 1 {
        return Err(Error::VarMismatch(format!("{f} is not univariate")));
    }
    Ok(())
}

/// Factorization of a univariate polynomial over a finite field.
pub fn factor_univariate_finite_field(f: &MultiPoly) -> Result<Factorization> {
    if !f.ring().is_finite() {
        return Err(Error::Unsupported(format!("{} is not a finite field", f.ring())));
    }
    require_univariate(f)?;
    factor_multivariate(f)
}

/// Factorization of a univariate polynomial over `Z` or `Q`.
pub fn factor_univariate_integers(f: &MultiPoly) -> Result<Factorization> {
    if f.ring().characteristic() != 0 || f.ring().poly_base().is_some() {
        return Err(Error::Unsupported(format!("{} is not Z or Q", f.ring())));
    }
    require_univariate(f)?;
    factor_multivariate(f)
}

/// Irreducibility in `R[x̄]`: unit content and irreducibility over the
/// fraction field, both checked.
pub fn is_irreducible(f: &MultiPoly) -> Result<Certificate> {
    if f.is_zero() {
        return Err(Error::ZeroInput("is_irreducible"));
    }
    let ring = f.ring();
    if f.is_constant() {
        return Ok(Certificate::UnitOrConstant);
    }
    let c = f.content();
    if !ring.is_unit(&c) {
        return Ok(Certificate::ContentNonunit(c));
    }
    if f.total_degree() == crate::multipoly::Degree::Finite(1) {
        return Ok(Certificate::Irreducible {
            method: "primitive of degree 1".into(),
        });
    }
    let active = f.support_vars();
    if let (RingKind::Finite(fld), 1) = (ring.kind(), active.len()) {
        let dense = to_dense(f, active[0]);
        let fq = FqPoly::from_coeffs(
            dense
                .iter()
                .map(|c| match c {
                    Elem::Ff(a) => *a,
                    _ => unreachable!(),
                })
                .collect(),
        );
        if fq.is_irreducible(fld) {
            return Ok(Certificate::Irreducible {
                method: "rabin".into(),
            });
        }
    }
    let fac = factor_multivariate(f)?;
    match fac.factors.as_slice() {
        [(g, 1)] if ring.is_unit(&fac.unit) => {
            debug_assert_eq!(g.tdeg(), f.tdeg());
            let method = if fac.trace.is_empty() {
                "univariate factorization".to_string()
            } else {
                fac.trace.join(", ")
            };
            Ok(Certificate::Irreducible { method })
        }
        [(g, _), ..] => Ok(Certificate::Factor(g.clone())),
        [] => Ok(Certificate::UnitOrConstant),
    }
}

/// Convenience wrapper returning only the verdict.
pub fn irreducible(f: &MultiPoly) -> Result<bool> {
    Ok(is_irreducible(f)?.is_irreducible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;

    fn p(s: &str, ring: &Ring, vars: &VarSet) -> MultiPoly {
        parse_poly(s, ring, vars).unwrap()
    }

    fn strings(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|(g, e)| (g.to_string(), *e)).collect()
    }

    #[test]
    fn univariate_examples() {
        let f2 = Ring::prime_field(2).unwrap();
        let x = VarSet::x(1);
        let fac = factor_univariate_finite_field(&p("x^8+x^3", &f2, &x)).unwrap();
        assert_eq!(
            strings(&fac),
            vec![
                ("x".into(), 3),
                ("x + 1".into(), 1),
                ("x^4 + x^3 + x^2 + x + 1".into(), 1)
            ]
        );
        let z = Ring::integers();
        let fac = factor_univariate_integers(&p("2*x+4", &z, &x)).unwrap();
        assert_eq!(fac.unit, z.from_i64(2));
        assert_eq!(strings(&fac), vec![("x + 2".into(), 1)]);
        let fac = factor_univariate_integers(&p("x^2-1", &z, &x)).unwrap();
        assert_eq!(strings(&fac), vec![("x - 1".into(), 1), ("x + 1".into(), 1)]);
    }

    #[test]
    fn multivariate_examples() {
        let q = Ring::rationals();
        let v = VarSet::x(2);
        let fac = factor_multivariate(&p("x1^2-x2^2", &q, &v)).unwrap();
        assert_eq!(strings(&fac), vec![("x1 - x2".into(), 1), ("x1 + x2".into(), 1)]);
        assert!(irreducible(&p("x1^2+x2^2", &q, &v)).unwrap());
        let f2 = Ring::prime_field(2).unwrap();
        let fac = factor_multivariate(&p("x1^2+x2^2", &f2, &v)).unwrap();
        assert_eq!(strings(&fac), vec![("x1 + x2".into(), 2)]);
        assert!(fac.trace.iter().any(|t| t.starts_with("kronecker-fold D=")));
    }

    #[test]
    fn irreducibility_examples() {
        let z = Ring::integers();
        let x = VarSet::x(1);
        assert!(irreducible(&p("x+2", &z, &x)).unwrap());
        assert_eq!(
            is_irreducible(&p("2*x+4", &z, &x)).unwrap(),
            Certificate::ContentNonunit(z.from_i64(2))
        );
        assert!(irreducible(&p("x^2+x+3", &z, &x)).unwrap());
        assert_eq!(
            is_irreducible(&p("-1", &z, &x)).unwrap(),
            Certificate::UnitOrConstant
        );
        assert!(is_irreducible(&MultiPoly::zero(&z, &x)).is_err());
    }

    #[test]
    fn over_k_u() {
        let r = Ring::parse("GF(2)[u]").unwrap();
        let v = VarSet::x(2);
        let a = p("x1 + u*x2 + 1", &r, &v);
        let b = p("u*x1 + x2^2 + u", &r, &v);
        let f = (&a * &b).scale(&r.u().unwrap());
        let fac = factor_multivariate(&f).unwrap();
        assert_eq!(fac.count(), 2);
        assert_eq!(fac.unit, r.u().unwrap());
        assert_eq!(fac.expand(&r, &v), f);
        assert!(irreducible(&a).unwrap());
        assert!(!irreducible(&f).unwrap());
    }

    #[test]
    fn rationals_normalize_monic() {
        let q = Ring::rationals();
        let v = VarSet::x(2);
        let f = p("3*x1^2 - 3*x2^2/4", &q, &v);
        let fac = factor_multivariate(&f).unwrap();
        assert_eq!(fac.unit, q.from_i64(3));
        assert_eq!(fac.expand(&q, &v), f);
    }

    #[test]
    fn monomial_content_and_constants() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        let f = p("-6*x1^2*x2 - 6*x1*x2^2", &z, &v);
        let fac = factor_multivariate(&f).unwrap();
        assert_eq!(fac.unit, z.from_i64(-6));
        assert_eq!(
            strings(&fac),
            vec![("x2".into(), 1), ("x1".into(), 1), ("x1 + x2".into(), 1)]
        );
        let fac = factor_multivariate(&p("-5", &z, &v)).unwrap();
        assert!(fac.factors.is_empty());
        assert_eq!(fac.unit, z.from_i64(-5));
    }
}
