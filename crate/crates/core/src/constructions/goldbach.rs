//! Writing `Q` as a sum `F + G` of two irreducible polynomials with `F` a
//! binomial.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{irreducible, lift_ku, lower_ku};
use crate::multipoly::{Monomial, MultiPoly, VarSet};
use crate::rings::{Elem, Ring, RingKind, RingSpec};
use crate::schinzel::{box_monomials, ring_element, CandidateBox, SearchStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldbachOptions {
    /// Over `F_q[x, y]`, bound `deg_x(F) <= deg_x(Q)` instead of the total
    /// degree.
    pub relaxed_degx: bool,
    /// Pairs `(F, G)` examined at most.
    pub budget: u64,
}

impl Default for GoldbachOptions {
    fn default() -> Self {
        GoldbachOptions {
            relaxed_degx: false,
            budget: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldbachDecomposition {
    pub q: MultiPoly,
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub method: String,
    pub lambda0: Option<String>,
    pub lambda1: Option<String>,
    pub relaxed_degx: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldbachOutcome {
    pub status: SearchStatus,
    pub decomposition: Option<GoldbachDecomposition>,
    pub tested: u64,
}

fn degree_ok(q: &MultiPoly, f: &MultiPoly, relaxed: bool) -> bool {
    if relaxed {
        f.pdeg(0) <= q.pdeg(0)
    } else {
        f.tdeg() <= q.tdeg()
    }
}

fn both_irreducible(f: &MultiPoly, g: &MultiPoly) -> Result<bool> {
    Ok(!f.is_constant() && !g.is_constant() && irreducible(f)? && irreducible(g)?)
}

/// The three closed forms for `Q = q1*x + q0`. `None` when the third case
/// needs an `r` outside `{0, 1}` and the ring has none (that is, `F_2`).
fn closed_form(q: &MultiPoly) -> Option<(MultiPoly, MultiPoly, &'static str)> {
    let r = q.ring();
    let vars = q.vars();
    let q1 = q.coeff(&Monomial(vec![1]));
    let q0 = q.constant_coeff();
    let one = r.one();
    let lin = |a: Elem, b: Elem| {
        MultiPoly::from_terms(r, vars, [(Monomial(vec![1]), a), (Monomial(vec![0]), b)])
    };
    if q1 != one {
        let f = lin(one.clone(), r.sub(&q0, &one));
        let g = lin(r.sub(&q1, &one), one);
        return Some((f, g, "closed form, q1 != 1"));
    }
    let m1 = r.neg(&one);
    if q1 != m1 {
        let f = lin(m1, r.sub(&q0, &one));
        let g = lin(r.add(&q1, &one), one);
        return Some((f, g, "closed form, q1 != -1"));
    }
    let rr = r.u().or_else(|| r.t())?;
    let f = lin(rr.clone(), r.add(&r.mul(&rr, &q0), &one));
    let g = lin(
        r.add(&rr, &one),
        r.add(&r.add(&r.mul(&rr, &q0), &q0), &one),
    );
    Some((f, g, "closed form, q1 = 1 = -1"))
}

fn make(q: &MultiPoly, f: MultiPoly, g: MultiPoly, method: &str, relaxed: bool) -> GoldbachDecomposition {
    GoldbachDecomposition {
        q: q.clone(),
        f,
        g,
        method: method.into(),
        lambda0: None,
        lambda1: None,
        relaxed_degx: relaxed,
    }
}

/// `M = l0 + l1*Q1` with `l0 = 1 - q0 (mod q_inf)`, `l1 = 1 (mod l0)`, and
/// `F = -M`, `G = M + Q`, over an infinite ring.
fn congruence_search(q: &MultiPoly, budget: u64, relaxed: bool) -> Result<GoldbachOutcome> {
    let r = q.ring();
    let vars = q.vars();
    let (q_inf, c_inf) = q.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let deg = q.tdeg();
    let q1 = box_monomials(&vec![deg; vars.len()])
        .into_iter()
        .find(|m| m.total() >= 1 && m.total() <= deg && *m != q_inf)
        .ok_or_else(|| Error::Hypothesis(format!("no second monomial for {q}")))?;
    let q0 = q.constant_coeff();
    let base0 = r.sub(&r.one(), &q0);
    let mut tested = 0;
    // pairs by max index, then the first, then the second
    let mut level: u64 = 0;
    while tested < budget {
        let pairs = (0..=level)
            .map(|j| (level, j))
            .chain((0..level).map(|i| (i, level)))
            .collect::<Vec<_>>();
        let mut pairs = pairs;
        pairs.sort();
        for (i, j) in pairs {
            if tested >= budget {
                break;
            }
            let l0 = r.add(&base0, &r.mul(&ring_element(r, i), &c_inf));
            let l1 = r.add(&r.one(), &r.mul(&ring_element(r, j), &l0));
            tested += 1;
            if r.is_zero(&l0) || r.is_zero(&l1) {
                continue;
            }
            let m = MultiPoly::from_terms(
                r,
                vars,
                [(Monomial::one(vars.len()), l0.clone()), (q1.clone(), l1.clone())],
            );
            let f = m.neg();
            let g = &m + q;
            if degree_ok(q, &f, relaxed) && both_irreducible(&f, &g)? {
                let mut d = make(q, f, g, "congruence search", relaxed);
                d.lambda0 = Some(r.format(&l0));
                d.lambda1 = Some(r.format(&l1));
                return Ok(GoldbachOutcome {
                    status: SearchStatus::Found,
                    decomposition: Some(d),
                    tested,
                });
            }
        }
        level += 1;
    }
    Ok(GoldbachOutcome {
        status: SearchStatus::BudgetExhausted,
        decomposition: None,
        tested,
    })
}

/// Every `F` with `deg F <= deg Q` over a finite field: binomials
/// `a + b*m` first, then the rest of the box.
fn exhaustive_search(q: &MultiPoly, budget: u64) -> Result<GoldbachOutcome> {
    let r = q.ring();
    let vars = q.vars();
    let RingKind::Finite(fld) = r.kind() else {
        unreachable!()
    };
    let deg = q.tdeg();
    let monos: Vec<Monomial> = box_monomials(&vec![deg; vars.len()])
        .into_iter()
        .filter(|m| m.total() <= deg)
        .collect();
    let mut tested = 0;
    let found = |f: MultiPoly, tested: u64, method: &str| -> Result<Option<GoldbachOutcome>> {
        let g = q - &f;
        if both_irreducible(&f, &g)? {
            return Ok(Some(GoldbachOutcome {
                status: SearchStatus::Found,
                decomposition: Some(make(q, f, g, method, false)),
                tested,
            }));
        }
        Ok(None)
    };
    for m in monos.iter().rev().filter(|m| !m.is_one()) {
        for b in 1..fld.q() {
            for a in 0..fld.q() {
                if tested >= budget {
                    return Ok(GoldbachOutcome {
                        status: SearchStatus::BudgetExhausted,
                        decomposition: None,
                        tested,
                    });
                }
                tested += 1;
                let f = MultiPoly::from_terms(
                    r,
                    vars,
                    [(m.clone(), Elem::Ff(b)), (Monomial::one(vars.len()), Elem::Ff(a))],
                );
                if let Some(out) = found(f, tested, "exhaustive search, binomial")? {
                    return Ok(out);
                }
            }
        }
    }
    let cbox = CandidateBox::new(r, vars, monos, 1, 1, 0)?;
    let size = cbox.size().ok_or_else(|| Error::TooLarge("Goldbach box".into()))?;
    for i in 0..size {
        let f = cbox.exhaustive(i).unwrap().remove(0);
        let nonconst = f.terms().keys().filter(|m| !m.is_one()).count();
        if nonconst <= 1 {
            continue;
        }
        if tested >= budget {
            return Ok(GoldbachOutcome {
                status: SearchStatus::BudgetExhausted,
                decomposition: None,
                tested,
            });
        }
        tested += 1;
        if let Some(out) = found(f, tested, "exhaustive search")? {
            return Ok(out);
        }
    }
    Ok(GoldbachOutcome {
        status: SearchStatus::ExhaustivelyNone,
        decomposition: None,
        tested,
    })
}

/// `Q = F + G` with `F`, `G` irreducible and `F` a binomial of degree at
/// most `deg Q` (or `deg_x F <= deg_x Q` in relaxed mode over `F_q[x, y]`).
pub fn goldbach_decompose(q: &MultiPoly, opts: &GoldbachOptions) -> Result<GoldbachOutcome> {
    if q.is_constant() {
        return Err(Error::Hypothesis(format!("{q} is constant")));
    }
    let r = q.ring();
    let n = q.vars().len();
    let out = if opts.relaxed_degx {
        let RingKind::Finite(_) = r.kind() else {
            return Err(Error::Unsupported("relaxed mode needs a finite field".into()));
        };
        if n != 2 {
            return Err(Error::Unsupported("relaxed mode needs two variables".into()));
        }
        // F_q[x, y] = F_q[u][x] with u = y
        let ku = Ring::new(RingSpec::PolyRingOverField(Box::new(r.spec().clone())))?;
        let xv = VarSet::new([q.vars().name(0)])?;
        let lifted = lift_ku(q, &ku, &xv);
        let mut out = congruence_search(&lifted, opts.budget, true)?;
        if let Some(d) = out.decomposition.take() {
            let down = |p: &MultiPoly| -> Result<MultiPoly> {
                let low = lower_ku(p, r)?;
                Ok(MultiPoly::from_terms(
                    r,
                    q.vars(),
                    low.terms().iter().map(|(m, c)| (m.clone(), c.clone())),
                ))
            };
            out.decomposition = Some(GoldbachDecomposition {
                q: q.clone(),
                f: down(&d.f)?,
                g: down(&d.g)?,
                ..d
            });
        }
        out
    } else if n == 1 && q.tdeg() == 1 && closed_form(q).is_some() {
        let (f, g, method) = closed_form(q).unwrap();
        GoldbachOutcome {
            status: SearchStatus::Found,
            decomposition: Some(make(q, f, g, method, false)),
            tested: 1,
        }
    } else if matches!(r.kind(), RingKind::Finite(_)) {
        exhaustive_search(q, opts.budget)?
    } else {
        congruence_search(q, opts.budget, false)?
    };
    if let Some(d) = &out.decomposition {
        if &(&d.f + &d.g) != q || !both_irreducible(&d.f, &d.g)? || !degree_ok(q, &d.f, opts.relaxed_degx) {
            return Err(Error::Hypothesis(format!(
                "decomposition {} + {} failed verification",
                d.f, d.g
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;

    fn run(ring: &str, vars: &VarSet, q: &str, relaxed: bool) -> GoldbachOutcome {
        let ring = Ring::parse(ring).unwrap();
        let q = parse_poly(q, &ring, vars).unwrap();
        let opts = GoldbachOptions {
            relaxed_degx: relaxed,
            ..Default::default()
        };
        goldbach_decompose(&q, &opts).unwrap()
    }

    #[test]
    fn closed_forms() {
        let v = VarSet::x(1);
        let d = run("Z", &v, "3x + 5", false).decomposition.unwrap();
        assert_eq!((d.f.to_string(), d.g.to_string()), ("x + 4".into(), "2*x + 1".into()));
        let d = run("Z", &v, "x + 5", false).decomposition.unwrap();
        assert_eq!((d.f.to_string(), d.g.to_string()), ("-x + 4".into(), "2*x + 1".into()));
        let d = run("GF(2)[u]", &v, "x + 1", false).decomposition.unwrap();
        assert_eq!(d.method, "closed form, q1 = 1 = -1");
    }

    #[test]
    fn f2_failure_and_relaxed_success() {
        let out = run("GF(2)", &VarSet::x(1), "x^2 + x", false);
        assert_eq!(out.status, SearchStatus::ExhaustivelyNone);
        let v = VarSet::new(["x", "y"]).unwrap();
        let out = run("GF(2)", &v, "x^2 + x", true);
        assert_eq!(out.status, SearchStatus::Found);
        let d = out.decomposition.unwrap();
        assert!(d.f.pdeg(0) <= 2);
        assert_eq!(&d.f + &d.g, parse_poly("x^2 + x", &Ring::prime_field(2).unwrap(), &v).unwrap());
    }

    #[test]
    fn general_search_over_z() {
        let v = VarSet::x(2);
        let out = run("Z", &v, "x1^2*x2 + 6*x1 + 4", false);
        assert_eq!(out.status, SearchStatus::Found);
        let d = out.decomposition.unwrap();
        assert_eq!(d.f.nterms(), 2);
    }
}
