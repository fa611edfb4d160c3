//! Search for specializations `y -> M(x̄)` keeping a family of polynomials
//! irreducible.

pub mod candidates;
mod density;
mod fixed_divisor;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{is_irreducible, Certificate};
use crate::multipoly::{poly_gcd, Degree, DegreeTuple, Monomial, MultiPoly, VarSet};
use crate::rings::Ring;
pub use candidates::{box_monomials, ring_element, spiral, CandidateBox};
pub use density::{density_probe, DensityReport};
pub use fixed_divisor::check_fixed_divisor;

/// Candidates evaluated per parallel round. Fixed so that results do not
/// depend on the number of threads.
const ROUND: usize = 256;

pub const DEFAULT_SEED: u64 = crate::factor::univariate::DEFAULT_SEED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    Random { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConstraints {
    pub strategy: Strategy,
    /// Coefficients in `[-B, B]` over `Z`, `Q` and `Q[u]`.
    pub coeff_bound: u64,
    /// Coefficients of `u`-degree at most this over `k[u]`.
    pub deg_u: u32,
    /// Require `deg_u(M)` to be `δ` or `p·δ`.
    pub deg_u_target: Option<u32>,
    /// Require `deg_{x_j}(M) = d_j`.
    pub exact_degrees: bool,
    /// Require the coefficients of the two top monomials of degrees
    /// `d_1+...+d_n` and one less to be coprime.
    pub paper_mode: bool,
    /// Restrict `M` to these monomials (must contain `1`).
    pub support: Option<Vec<Monomial>>,
    pub max_witnesses: Option<usize>,
    /// Candidates examined at most.
    pub budget: u64,
    pub threads: Option<usize>,
}

impl Default for SearchConstraints {
    fn default() -> Self {
        SearchConstraints {
            strategy: Strategy::Exhaustive,
            coeff_bound: 1,
            deg_u: 1,
            deg_u_target: None,
            exact_degrees: false,
            paper_mode: false,
            support: None,
            max_witnesses: None,
            budget: 1_000_000,
            threads: None,
        }
    }
}

/// Polynomials `P_1..P_s` in `R[x̄, ȳ]` and the box of `M`.
#[derive(Clone, Debug)]
pub struct SchinzelProblem {
    pub ring: Ring,
    pub xvars: VarSet,
    pub yvars: VarSet,
    /// Over `xvars` followed by `yvars`.
    pub ps: Vec<MultiPoly>,
    pub degrees: DegreeTuple,
    pub constraints: SearchConstraints,
    pub warnings: Vec<String>,
}

impl SchinzelProblem {
    /// Checks that each `P_i` is irreducible with positive degree in `ȳ`.
    pub fn new(
        xvars: &VarSet,
        yvars: &VarSet,
        ps: Vec<MultiPoly>,
        degrees: DegreeTuple,
        constraints: SearchConstraints,
    ) -> Result<SchinzelProblem> {
        let Some(first) = ps.first() else {
            return Err(Error::Hypothesis("no polynomials given".into()));
        };
        let ring = first.ring().clone();
        if yvars.is_empty() {
            return Err(Error::Hypothesis("no y variable".into()));
        }
        if degrees.len() != xvars.len() {
            return Err(Error::VarMismatch(format!(
                "{} degrees for {} variables",
                degrees.len(),
                xvars.len()
            )));
        }
        if constraints.budget == 0 || constraints.coeff_bound == 0 {
            return Err(Error::Hypothesis("budget and coefficient bound must be positive".into()));
        }
        if let Some(s) = &constraints.support {
            if !s.iter().any(|m| m.is_one()) {
                return Err(Error::Hypothesis("support must contain the monomial 1".into()));
            }
            if s.iter().any(|m| m.0.len() != xvars.len()) {
                return Err(Error::VarMismatch("support monomial of wrong length".into()));
            }
        }
        let all = xvars.extended(yvars.names().iter().cloned())?;
        let n = xvars.len();
        let ymask: Vec<bool> = (0..all.len()).map(|i| i >= n).collect();
        let xmask: Vec<bool> = ymask.iter().map(|b| !b).collect();
        let mut out = Vec::with_capacity(ps.len());
        let mut max_xdeg = 0;
        for p in ps {
            if *p.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), p.ring().to_string()));
            }
            let p = p.embed(&all)?;
            if p.is_zero() || p.degree_in_subset(&ymask) == Degree::Finite(0) {
                return Err(Error::Hypothesis(format!("{p} has degree 0 in {yvars}")));
            }
            let cert = is_irreducible(&p)?;
            if !cert.is_irreducible() {
                return Err(Error::Hypothesis(format!(
                    "{p} is not irreducible: {}",
                    cert.describe(&ring)
                )));
            }
            max_xdeg = max_xdeg.max(p.degree_in_subset(&xmask).finite().unwrap_or(0));
            out.push(p);
        }
        let mut warnings = Vec::new();
        if degrees.sum() < max_xdeg + 2 {
            warnings.push(format!(
                "d1+...+dn = {} is below max deg_x(P_i) + 2 = {}",
                degrees.sum(),
                max_xdeg + 2
            ));
        }
        Ok(SchinzelProblem {
            ring,
            xvars: xvars.clone(),
            yvars: yvars.clone(),
            ps: out,
            degrees,
            constraints,
            warnings,
        })
    }

    fn slots(&self) -> Vec<Monomial> {
        match &self.constraints.support {
            Some(s) => s.clone(),
            None => box_monomials(&self.degrees.0),
        }
    }

    pub fn candidate_box(&self) -> Result<CandidateBox> {
        CandidateBox::new(
            &self.ring,
            &self.xvars,
            self.slots(),
            self.yvars.len(),
            self.constraints.coeff_bound,
            self.constraints.deg_u,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    ExhaustivelyNone,
    BudgetExhausted,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustivelyNone => "exhaustively none",
            SearchStatus::BudgetExhausted => "budget exhausted",
        })
    }
}

/// Why a candidate was not a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reject {
    Constant,
    ContentNonunit,
    ReducibleOverK,
    DegreeShortfall,
    Coprimality,
    YDegreeDrop,
    Filtered,
    Undecided,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Rejections {
    pub constant: u64,
    pub content_nonunit: u64,
    pub reducible_over_k: u64,
    pub degree_shortfall: u64,
    pub coprimality: u64,
    pub y_degree_drop: u64,
    pub filtered: u64,
    /// Factorization gave up (recombination budget).
    pub undecided: u64,
}

impl Rejections {
    fn bump(&mut self, r: Reject) {
        *match r {
            Reject::Constant => &mut self.constant,
            Reject::ContentNonunit => &mut self.content_nonunit,
            Reject::ReducibleOverK => &mut self.reducible_over_k,
            Reject::DegreeShortfall => &mut self.degree_shortfall,
            Reject::Coprimality => &mut self.coprimality,
            Reject::YDegreeDrop => &mut self.y_degree_drop,
            Reject::Filtered => &mut self.filtered,
            Reject::Undecided => &mut self.undecided,
        } += 1;
    }

    pub fn total(&self) -> u64 {
        self.constant
            + self.content_nonunit
            + self.reducible_over_k
            + self.degree_shortfall
            + self.coprimality
            + self.y_degree_drop
            + self.filtered
            + self.undecided
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `M_1..M_m`.
    pub m: Vec<MultiPoly>,
    /// `P_i(x̄, M̄)`.
    pub values: Vec<MultiPoly>,
    pub certificates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub status: SearchStatus,
    pub witnesses: Vec<Witness>,
    pub tested: u64,
    pub rejected: Rejections,
    pub budget: u64,
    pub budget_consumed: u64,
    pub strategy: Strategy,
    /// Number of candidates in the box, when it is finite and fits.
    pub box_size: Option<String>,
    /// True when every candidate of the box was examined.
    pub complete: bool,
    pub warnings: Vec<String>,
}

enum Outcome {
    Witness(Witness),
    Rejected(Reject),
}

fn classify(cert: &Certificate) -> Option<Reject> {
    match cert {
        Certificate::Irreducible { .. } => None,
        Certificate::UnitOrConstant => Some(Reject::Constant),
        Certificate::ContentNonunit(_) => Some(Reject::ContentNonunit),
        Certificate::Factor(_) => Some(Reject::ReducibleOverK),
    }
}

fn constraint_check(problem: &SchinzelProblem, ms: &[MultiPoly]) -> Option<Reject> {
    let c = &problem.constraints;
    let ring = &problem.ring;
    for m in ms {
        if c.exact_degrees
            && (0..problem.xvars.len()).any(|j| m.pdeg(j) != problem.degrees.0[j] || m.is_zero())
        {
            return Some(Reject::DegreeShortfall);
        }
        if let Some(delta) = c.deg_u_target {
            let du = m.terms().values().filter_map(|e| ring.u_degree(e)).max();
            let p = ring.characteristic() as u64;
            let ok = du.is_some_and(|du| {
                du as u64 == delta as u64 || (p > 0 && du as u64 == p * delta as u64)
            });
            if !ok {
                return Some(Reject::DegreeShortfall);
            }
        }
        if c.paper_mode {
            let top = Monomial(problem.degrees.0.clone());
            let below = box_monomials(&problem.degrees.0)
                .into_iter()
                .find(|q| q.total() + 1 == top.total());
            let l1 = m.coeff(&top);
            let l2 = below.map_or_else(|| ring.zero(), |q| m.coeff(&q));
            if !ring.is_unit(&ring.gcd(&l1, &l2)) {
                return Some(Reject::Coprimality);
            }
        }
    }
    None
}

/// Substitutes `y_1 -> M_1, ..., y_m -> M_m` one at a time. Intermediate
/// polynomials must stay irreducible of positive degree in the remaining
/// `y`s.
fn evaluate(
    problem: &SchinzelProblem,
    ms: &[MultiPoly],
    filter: Option<&(dyn Fn(&[MultiPoly]) -> bool + Sync)>,
) -> Outcome {
    if let Some(r) = constraint_check(problem, ms) {
        return Outcome::Rejected(r);
    }
    if let Some(f) = filter {
        if !f(ms) {
            return Outcome::Rejected(Reject::Filtered);
        }
    }
    let n = problem.xvars.len();
    let m = ms.len();
    let mut cur = problem.ps.clone();
    let mut certs = Vec::new();
    for (j, mj) in ms.iter().enumerate() {
        let last = j + 1 == m;
        let mut next = Vec::with_capacity(cur.len());
        certs.clear();
        for p in &cur {
            let q = match p.substitute(n, mj) {
                Ok(q) => q,
                Err(_) => return Outcome::Rejected(Reject::Undecided),
            };
            if q.is_zero() {
                return Outcome::Rejected(Reject::Constant);
            }
            if !last {
                let ymask: Vec<bool> = (0..q.vars().len()).map(|i| i >= n).collect();
                if q.degree_in_subset(&ymask) == Degree::Finite(0) {
                    return Outcome::Rejected(Reject::YDegreeDrop);
                }
            }
            match is_irreducible(&q) {
                Ok(cert) => {
                    if let Some(r) = classify(&cert) {
                        return Outcome::Rejected(r);
                    }
                    if let Certificate::Irreducible { method } = cert {
                        certs.push(method);
                    }
                }
                Err(_) => return Outcome::Rejected(Reject::Undecided),
            }
            next.push(q);
        }
        cur = next;
    }
    Outcome::Witness(Witness {
        m: ms.to_vec(),
        values: cur,
        certificates: certs,
    })
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Unsupported(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Shared engine for single and multiple `y`. `filter` rejects candidates
/// before any factorization.
pub fn search_with_filter(
    problem: &SchinzelProblem,
    filter: Option<&(dyn Fn(&[MultiPoly]) -> bool + Sync)>,
) -> Result<SearchReport> {
    let c = &problem.constraints;
    let cbox = problem.candidate_box()?;
    let size = cbox.size();
    let limit: u128 = match c.strategy {
        Strategy::Exhaustive => size.map_or(c.budget as u128, |s| s.min(c.budget as u128)),
        Strategy::Random { .. } => c.budget as u128,
    };
    let candidate = |i: u128| -> Vec<MultiPoly> {
        match c.strategy {
            Strategy::Exhaustive => cbox.exhaustive(i).expect("index inside the box"),
            Strategy::Random { seed } => cbox.random(seed, i as u64),
        }
    };
    let mut witnesses = Vec::new();
    let mut rejected = Rejections::default();
    let mut tested: u64 = 0;
    let mut stopped = false;
    let mut start: u128 = 0;
    with_pool(c.threads, || {
        while start < limit && !stopped {
            let end = (start + ROUND as u128).min(limit);
            let outcomes: Vec<Outcome> = (start..end)
                .into_par_iter()
                .map(|i| evaluate(problem, &candidate(i), filter))
                .collect();
            for o in outcomes {
                tested += 1;
                match o {
                    Outcome::Witness(w) => witnesses.push(w),
                    Outcome::Rejected(r) => rejected.bump(r),
                }
                if c.max_witnesses.is_some_and(|k| witnesses.len() >= k) {
                    stopped = true;
                    break;
                }
            }
            start = end;
        }
    })?;
    // certificates are recomputed rather than trusted
    for w in &witnesses {
        let mut cur = problem.ps.clone();
        for mj in &w.m {
            cur = cur
                .iter()
                .map(|p| p.substitute(problem.xvars.len(), mj))
                .collect::<Result<_>>()?;
        }
        if cur != w.values || !cur.iter().all(|v| matches!(is_irreducible(v), Ok(c) if c.is_irreducible())) {
            return Err(Error::Hypothesis(format!("witness {:?} failed re-verification", w.m)));
        }
    }
    let complete = matches!(c.strategy, Strategy::Exhaustive)
        && size.is_some_and(|s| tested as u128 == s);
    let status = if !witnesses.is_empty() {
        SearchStatus::Found
    } else if complete {
        SearchStatus::ExhaustivelyNone
    } else {
        SearchStatus::BudgetExhausted
    };
    Ok(SearchReport {
        status,
        witnesses,
        tested,
        rejected,
        budget: c.budget,
        budget_consumed: tested,
        strategy: c.strategy,
        box_size: size.map(|s| s.to_string()),
        complete,
        warnings: problem.warnings.clone(),
    })
}

/// Witnesses `M` with every `P_i(x̄, M)` irreducible, for a single `y`.
pub fn schinzel_search(problem: &SchinzelProblem) -> Result<SearchReport> {
    if problem.yvars.len() != 1 {
        return Err(Error::Hypothesis(format!(
            "expected one y variable, got {}",
            problem.yvars.len()
        )));
    }
    search_with_filter(problem, None)
}

/// Tuples `(M_1..M_m)` found by successive specialization of `y_1..y_m`.
pub fn schinzel_search_multi(problem: &SchinzelProblem) -> Result<SearchReport> {
    search_with_filter(problem, None)
}

/// The family `A_i + B_i y` (plus `y` itself when `with_m`), after checking
/// `gcd(A_i, B_i) = 1`.
pub fn linear_family(
    pairs: &[(MultiPoly, MultiPoly)],
    with_m: bool,
) -> Result<(VarSet, VarSet, Vec<MultiPoly>)> {
    let Some((a0, _)) = pairs.first() else {
        return Err(Error::Hypothesis("no pairs given".into()));
    };
    let xvars = a0.vars().clone();
    let ring = a0.ring().clone();
    let yname = if xvars.index_of("y").is_some() { "y_" } else { "y" };
    let yvars = VarSet::new([yname])?;
    let all = xvars.extended([yname])?;
    let y = MultiPoly::var(&ring, &all, xvars.len());
    let mut ps = Vec::new();
    if with_m {
        ps.push(y.clone());
    }
    for (i, (a, b)) in pairs.iter().enumerate() {
        a.check_compatible(b)?;
        let g = poly_gcd(a, b)?;
        if !g.is_constant() {
            return Err(Error::NotCoprime {
                i,
                j: i,
                gcd: g.to_string(),
            });
        }
        ps.push(&a.embed(&all)? + &(&b.embed(&all)? * &y));
    }
    Ok((xvars, yvars, ps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;

    fn problem(ring: &str, ps: &[&str], n: usize, m: usize, d: &[u32], c: SearchConstraints) -> SchinzelProblem {
        let ring = Ring::parse(ring).unwrap();
        let x = VarSet::x(n);
        let y = if m == 1 {
            VarSet::new(["y"]).unwrap()
        } else {
            VarSet::new((1..=m).map(|i| format!("y{i}"))).unwrap()
        };
        let all = x.extended(y.names().iter().cloned()).unwrap();
        let ps = ps.iter().map(|s| parse_poly(s, &ring, &all).unwrap()).collect();
        SchinzelProblem::new(&x, &y, ps, DegreeTuple(d.to_vec()), c).unwrap()
    }

    #[test]
    fn twin_problem_over_z() {
        let c = SearchConstraints {
            coeff_bound: 5,
            ..Default::default()
        };
        let pr = problem("Z", &["y", "y + 2"], 1, 1, &[2], c);
        let rep = schinzel_search(&pr).unwrap();
        assert_eq!(rep.status, SearchStatus::Found);
        assert!(rep.complete);
        assert_eq!(rep.tested, 11u64.pow(3));
        assert_eq!(rep.tested, rep.witnesses.len() as u64 + rep.rejected.total());
        assert!(rep.witnesses.iter().any(|w| w.m[0].to_string() == "x^2 + x + 1"));
    }

    #[test]
    fn swan_problem_has_no_witness() {
        let c = SearchConstraints::default();
        let pr = problem("GF(2)", &["y^8 + x^3"], 1, 1, &[4], c);
        let rep = schinzel_search(&pr).unwrap();
        assert_eq!(rep.status, SearchStatus::ExhaustivelyNone);
        assert_eq!(rep.tested, 32);
    }

    #[test]
    fn multi_y() {
        let c = SearchConstraints {
            max_witnesses: Some(3),
            ..Default::default()
        };
        let pr = problem("Z", &["y1*y2 + 1"], 1, 2, &[1], c);
        let rep = schinzel_search_multi(&pr).unwrap();
        assert_eq!(rep.status, SearchStatus::Found);
        for w in &rep.witnesses {
            let v = &(&w.m[0] * &w.m[1]) + &MultiPoly::one(&pr.ring, &pr.xvars);
            assert_eq!(w.values[0], v);
        }
    }

    #[test]
    fn constraints_are_enforced() {
        let c = SearchConstraints {
            exact_degrees: true,
            paper_mode: true,
            coeff_bound: 2,
            ..Default::default()
        };
        let pr = problem("Z", &["y^2 + x"], 1, 1, &[3], c);
        let rep = schinzel_search(&pr).unwrap();
        assert!(!rep.witnesses.is_empty());
        for w in &rep.witnesses {
            assert_eq!(w.m[0].pdeg(0), 3);
        }
        assert!(rep.rejected.degree_shortfall > 0);
        assert!(rep.rejected.coprimality > 0);
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let mk = |threads| SearchConstraints {
            coeff_bound: 3,
            max_witnesses: Some(5),
            threads,
            strategy: Strategy::Random { seed: 9 },
            budget: 500,
            ..Default::default()
        };
        let a = schinzel_search(&problem("Z", &["y", "y + 2"], 1, 1, &[2], mk(Some(1)))).unwrap();
        let b = schinzel_search(&problem("Z", &["y", "y + 2"], 1, 1, &[2], mk(Some(4)))).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_reducible_input() {
        let ring = Ring::integers();
        let x = VarSet::x(1);
        let y = VarSet::new(["y"]).unwrap();
        let all = x.extended(["y"]).unwrap();
        let p = parse_poly("y^2 - x^2", &ring, &all).unwrap();
        let r = SchinzelProblem::new(&x, &y, vec![p], DegreeTuple(vec![1]), Default::default());
        assert!(matches!(r, Err(Error::Hypothesis(_))));
    }
}
