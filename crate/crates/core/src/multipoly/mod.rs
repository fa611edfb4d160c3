//! Sparse multivariate polynomials over a [`Ring`].
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded-lex
//! order, so iteration (reversed) is the canonical printing order.

mod gcd;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

pub use gcd::{poly_gcd, poly_lcm};
pub(crate) use gcd::rational_to_integer;
pub use parse::parse_poly;

/// Ordered variable names. Equality is by name list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<[String]>,
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.names)
    }
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<VarSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::VarMismatch(format!("bad variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::VarMismatch(format!("duplicate variable `{a}`")));
            }
        }
        Ok(VarSet {
            names: names.into(),
        })
    }

    /// `x` (n = 1) or `x1..xn`.
    pub fn x(n: usize) -> VarSet {
        Self::xy(n, 0)
    }

    /// `x` or `x1..xn`, followed by `y` or `y1..ym`.
    pub fn xy(n: usize, m: usize) -> VarSet {
        let block = |stem: &str, k: usize| -> Vec<String> {
            if k == 1 {
                vec![stem.to_string()]
            } else {
                (1..=k).map(|i| format!("{stem}{i}")).collect()
            }
        };
        let mut names = block("x", n);
        names.extend(block("y", m));
        VarSet::new(names).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Position of `name`; `x` and `x1` (likewise `y`, `y1`) are accepted
    /// for each other when only one of them is present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(i);
        }
        let alias = match name {
            "x" => "x1",
            "x1" => "x",
            "y" => "y1",
            "y1" => "y",
            _ => return None,
        };
        self.names.iter().position(|n| n == alias)
    }

    /// Same names with `i` removed.
    pub fn without(&self, i: usize) -> VarSet {
        let mut names = self.names.to_vec();
        names.remove(i);
        VarSet {
            names: names.into(),
        }
    }

    /// Names appended at the end.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<VarSet> {
        let mut names = self.names.to_vec();
        names.extend(extra.into_iter().map(Into::into));
        VarSet::new(names)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the larger exponent of the earliest differing variable wins.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Per-variable degree bounds `d_1..d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeTuple(pub Vec<u32>);

impl DegreeTuple {
    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `"2,3"`.
    pub fn parse(s: &str) -> Result<DegreeTuple> {
        s.split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad degree `{p}`"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(DegreeTuple)
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    vars: VarSet,
    terms: BTreeMap<Monomial, Elem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.ring, self)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl MultiPoly {
    pub fn zero(ring: &Ring, vars: &VarSet) -> MultiPoly {
        MultiPoly {
            ring: ring.clone(),
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, vars: &VarSet, c: Elem) -> MultiPoly {
        Self::monomial(ring, vars, Monomial::one(vars.len()), c)
    }

    pub fn one(ring: &Ring, vars: &VarSet) -> MultiPoly {
        Self::constant(ring, vars, ring.one())
    }

    pub fn from_i64(ring: &Ring, vars: &VarSet, n: i64) -> MultiPoly {
        Self::constant(ring, vars, ring.from_i64(n))
    }

    pub fn monomial(ring: &Ring, vars: &VarSet, m: Monomial, c: Elem) -> MultiPoly {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            vars: vars.clone(),
            terms,
        }
    }

    /// The `i`-th variable.
    pub fn var(ring: &Ring, vars: &VarSet, i: usize) -> MultiPoly {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(ring, vars, Monomial(e), ring.one())
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms(
        ring: &Ring,
        vars: &VarSet,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> MultiPoly {
        let mut out = Self::zero(ring, vars);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub(crate) fn from_map_unchecked(
        ring: &Ring,
        vars: &VarSet,
        terms: BTreeMap<Monomial, Elem>,
    ) -> MultiPoly {
        MultiPoly {
            ring: ring.clone(),
            vars: vars.clone(),
            terms,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Elem) {
        assert_eq!(m.0.len(), self.vars.len(), "exponent vector length");
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), c);
                if self.ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Elem> {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.ring.is_one(&self.constant_coeff())
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_coeff(&self) -> Elem {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    pub fn lc(&self) -> Elem {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        if self.vars != other.vars {
            return Err(Error::VarMismatch(format!(
                "[{}] vs [{}]",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.ring, &self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Elem) -> MultiPoly {
        if self.ring.is_zero(c) {
            return Self::zero(&self.ring, &self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.ring.mul(a, c)))
            .filter(|(_, a)| !self.ring.is_zero(a))
            .collect();
        Self::from_map_unchecked(&self.ring, &self.vars, terms)
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Elem) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(k, a)| (k.mul(m), self.ring.mul(a, c)))
            .filter(|(_, a)| !self.ring.is_zero(a))
            .collect();
        Self::from_map_unchecked(&self.ring, &self.vars, terms)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.ring, &self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Maximum exponent of each variable; all zeros for the zero polynomial.
    pub fn degree_vector(&self) -> Vec<u32> {
        let mut d = vec![0; self.vars.len()];
        for m in self.terms.keys() {
            for (a, &e) in d.iter_mut().zip(&m.0) {
                *a = (*a).max(e);
            }
        }
        d
    }

    pub fn total_degree(&self) -> Degree {
        match self.leading_term() {
            None => Degree::MinusInfinity,
            Some((m, _)) => Degree::Finite(m.total()),
        }
    }

    /// Total degree with the zero polynomial mapped to 0.
    pub fn tdeg(&self) -> u32 {
        self.total_degree().finite().unwrap_or(0)
    }

    pub fn deg(&self, i: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[i])
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Partial degree with the zero polynomial mapped to 0.
    pub fn pdeg(&self, i: usize) -> u32 {
        self.deg(i).finite().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> Result<Degree> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.deg(i))
    }

    /// Total degree in the variables selected by `mask`.
    pub fn degree_in_subset(&self, mask: &[bool]) -> Degree {
        self.terms
            .keys()
            .map(|m| {
                m.0.iter()
                    .zip(mask)
                    .filter(|(_, &b)| b)
                    .map(|(e, _)| e)
                    .sum::<u32>()
            })
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Greatest common divisor of the coefficients, canonically normalized.
    /// Over a field this is 1 for any nonzero polynomial; it is 0 for zero.
    pub fn content(&self) -> Elem {
        let r = &self.ring;
        if self.is_zero() {
            return r.zero();
        }
        if r.is_field() {
            return r.one();
        }
        let mut g = r.zero();
        for c in self.terms.values() {
            g = r.gcd(&g, c);
            if r.is_one(&g) {
                break;
            }
        }
        g
    }

    /// `self / content(self)`; the zero polynomial is returned unchanged.
    pub fn primitive_part(&self) -> MultiPoly {
        let c = self.content();
        if self.is_zero() || self.ring.is_one(&c) {
            return self.clone();
        }
        self.div_scalar(&c).expect("content divides every coefficient")
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &Elem) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            terms.insert(m.clone(), self.ring.div_exact(a, c)?);
        }
        Some(Self::from_map_unchecked(&self.ring, &self.vars, terms))
    }

    /// Splits `self = unit * g` with `g` having a canonical leading
    /// coefficient (positive over `Z`, 1 over a field, monic in `u` over
    /// `k[u]`).
    pub fn unit_normal(&self) -> (Elem, MultiPoly) {
        if self.is_zero() {
            return (self.ring.one(), self.clone());
        }
        let u = self.ring.unit_part(&self.lc());
        if self.ring.is_one(&u) {
            return (u, self.clone());
        }
        let inv = self.ring.inv(&u).expect("unit part is a unit");
        (u, self.scale(&inv))
    }

    pub fn normalize(&self) -> MultiPoly {
        self.unit_normal().1
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide.
    pub fn div_exact(&self, g: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = g.leading_term()?;
        if g.nterms() == 1 {
            let mut terms = BTreeMap::new();
            for (m, a) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                terms.insert(m.div(lm), self.ring.div_exact(a, lc)?);
            }
            return Some(Self::from_map_unchecked(&self.ring, &self.vars, terms));
        }
        let mut q = Self::zero(&self.ring, &self.vars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading_term() {
            if !lm.divides(rm) {
                return None;
            }
            let c = self.ring.div_exact(rc, lc)?;
            let m = rm.div(lm);
            r = &r - &g.mul_term(&m, &c);
            q.add_term(m, &c);
        }
        Some(q)
    }

    pub fn divides(&self, f: &MultiPoly) -> bool {
        f.div_exact(self).is_some()
    }

    /// Graded-lex division with remainder by one divisor whose leading
    /// coefficient is a unit. No term of the remainder is divisible by the
    /// divisor's leading monomial.
    pub fn divrem(&self, g: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        self.check_compatible(g)?;
        let (lm, lc) = g.leading_term().ok_or(Error::DivisionByZero)?;
        let inv = self.ring.inv(lc).ok_or_else(|| {
            Error::Unsupported(format!("leading coefficient of {g} is not a unit"))
        })?;
        let mut q = Self::zero(&self.ring, &self.vars);
        let mut r = Self::zero(&self.ring, &self.vars);
        let mut p = self.clone();
        while let Some((pm, pc)) = p.leading_term() {
            let (pm, pc) = (pm.clone(), pc.clone());
            if lm.divides(&pm) {
                let c = self.ring.mul(&pc, &inv);
                let m = pm.div(lm);
                p = &p - &g.mul_term(&m, &c);
                q.add_term(m, &c);
            } else {
                p.terms.remove(&pm);
                r.add_term(pm, &pc);
            }
        }
        Ok((q, r))
    }

    /// `self` as a polynomial in variable `i`: exponent to coefficient,
    /// coefficients free of variable `i` (same `VarSet`).
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = std::mem::replace(&mut e.0[i], 0);
            out.entry(k)
                .or_insert_with(|| Self::zero(&self.ring, &self.vars))
                .terms
                .insert(e, c.clone());
        }
        out
    }

    /// Substitutes `value` for variable `i`. `value` must be over the same
    /// ring and use only variables of `self` other than `i` (matched by
    /// name); the result lives in `self`'s variables with `i` removed.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> Result<MultiPoly> {
        if self.ring != *value.ring() {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                value.ring.to_string(),
            ));
        }
        let target = self.vars.without(i);
        let value = value.embed(&target)?;
        let by_power = self.coefficients_in(i);
        let mut out = Self::zero(&self.ring, &target);
        let mut power = Self::one(&self.ring, &target);
        let mut at = 0u32;
        for (k, c) in by_power {
            while at < k {
                power = &power * &value;
                at += 1;
            }
            let c = c.drop_var(i);
            out = &out + &(&c * &power);
        }
        Ok(out)
    }

    /// Drops variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> MultiPoly {
        let vars = self.vars.without(i);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert_eq!(m.0[i], 0);
                let mut e = m.0.clone();
                e.remove(i);
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_map_unchecked(&self.ring, &vars, terms)
    }

    /// Re-expresses `self` over `target`, which must contain every variable
    /// that actually occurs in `self`.
    pub fn embed(&self, target: &VarSet) -> Result<MultiPoly> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let deg = self.degree_vector();
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if deg[i] == 0 => map.push(None),
                None => {
                    return Err(Error::VarMismatch(format!(
                        "variable `{name}` not among [{target}]"
                    )))
                }
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.len()];
            for (k, &j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[j] = m.0[k];
                }
            }
            (Monomial(e), c.clone())
        });
        Ok(Self::from_terms(&self.ring, target, terms))
    }

    /// Applies `f` to every coefficient, landing in `ring`.
    pub fn map_coeffs(&self, ring: &Ring, f: impl Fn(&Elem) -> Elem) -> MultiPoly {
        Self::from_terms(
            ring,
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let d = self.degree_vector();
        (0..d.len()).filter(|&i| d[i] > 0).collect()
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.vars.len());
        };
        let mut g = first.0.clone();
        for m in it {
            for (a, &b) in g.iter_mut().zip(&m.0) {
                *a = (*a).min(b);
            }
        }
        Monomial(g)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.ring.neg(c)))
            .collect();
        MultiPoly::from_map_unchecked(&self.ring, &self.vars, terms)
    }
}

impl MultiPoly {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> MultiPoly {
        -self
    }
}

/// `P(x̄, M(x̄))` where `P` has exactly one variable beyond those of `M`.
pub fn substitute_y(p: &MultiPoly, m: &MultiPoly) -> Result<MultiPoly> {
    let extra: Vec<usize> = (0..p.vars().len())
        .filter(|&i| m.vars().index_of(p.vars().name(i)).is_none())
        .collect();
    if extra.len() != 1 || p.vars().len() != m.vars().len() + 1 {
        return Err(Error::VarMismatch(format!(
            "P over [{}] is not M's variables [{}] plus one",
            p.vars(),
            m.vars()
        )));
    }
    let out = p.substitute(extra[0], m)?;
    out.embed(m.vars())
}

fn format_monomial(vars: &VarSet, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars.name(i).to_string()
            } else {
                format!("{}^{e}", vars.name(i))
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let r = &self.ring;
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = r.is_negative(c);
            let mag = if neg { r.neg(c) } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                let s = r.format(&mag);
                if neg && s.contains(' ') {
                    write!(f, "({s})")?;
                } else {
                    write!(f, "{s}")?;
                }
            } else if r.is_one(&mag) {
                write!(f, "{}", format_monomial(&self.vars, m))?;
            } else if r.needs_parens(&mag) {
                write!(f, "({})*{}", r.format(&mag), format_monomial(&self.vars, m))?;
            } else {
                write!(f, "{}*{}", r.format(&mag), format_monomial(&self.vars, m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, ring: &Ring, vars: &VarSet) -> MultiPoly {
        parse_poly(s, ring, vars).unwrap()
    }

    #[test]
    fn negative_ku_constant_keeps_parens() {
        let r = Ring::parse("Q[u]").unwrap();
        let v = VarSet::x(1);
        let f = p("x + 1 - 1/2*u", &r, &v);
        assert_eq!(f.to_string(), "x - (1/2*u - 1)");
        assert_eq!(p(&f.to_string(), &r, &v), f);
        let g = p("1 - 1/2*u", &r, &v);
        assert_eq!(g.to_string(), "-(1/2*u - 1)");
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial(vec![0, 0]) < Monomial(vec![0, 1]));
    }

    #[test]
    fn arithmetic_examples() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        let f = p("x1+1", &z, &v);
        let g = p("x1-1", &z, &v);
        assert_eq!(&f * &g, p("x1^2-1", &z, &v));
        assert!((&f * &MultiPoly::zero(&z, &v)).is_zero());

        let f2 = Ring::prime_field(2).unwrap();
        let v = VarSet::new(["x1", "y"]).unwrap();
        let h = p("y+x1", &f2, &v);
        assert_eq!(&h * &h, p("y^2+x1^2", &f2, &v));
    }

    #[test]
    fn substitute_examples() {
        let z = Ring::integers();
        let xy = VarSet::xy(1, 1);
        let x = VarSet::x(1);
        assert_eq!(
            substitute_y(&p("y^2+x", &z, &xy), &p("x", &z, &x)).unwrap(),
            p("x^2+x", &z, &x)
        );
        let f2 = Ring::prime_field(2).unwrap();
        assert_eq!(
            substitute_y(&p("y^8+x^3", &f2, &xy), &p("x", &f2, &x)).unwrap(),
            p("x^8+x^3", &f2, &x)
        );
        let m = p("3*x^2 - x + 7", &z, &x);
        assert_eq!(substitute_y(&p("-y", &z, &xy), &m).unwrap(), -&m);
        assert!(substitute_y(&p("y", &z, &xy), &p("y", &z, &xy)).is_err());
    }

    #[test]
    fn content_examples() {
        let z = Ring::integers();
        let v = VarSet::x(1);
        let f = p("2*x1+4", &z, &v);
        assert_eq!(f.content(), z.from_i64(2));
        assert_eq!(f.primitive_part(), p("x1+2", &z, &v));
        let q = Ring::rationals();
        assert_eq!(p("x1+2", &q, &v).content(), q.one());

        let r = Ring::parse("GF(2)[u]").unwrap();
        let f = p("(u^2+u)*x1 + (u+1)", &r, &v);
        assert_eq!(r.format(&f.content()), "u + 1");
        assert_eq!(f.primitive_part(), p("u*x1 + 1", &r, &v));
        assert!(MultiPoly::zero(&z, &v).content() == z.zero());
    }

    #[test]
    fn degree_examples() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        let f = p("x1^3*x2 + x2^2", &z, &v);
        assert_eq!(f.degree_vector(), vec![3, 2]);
        assert_eq!(f.total_degree(), Degree::Finite(4));
        assert_eq!(p("5", &z, &v).total_degree(), Degree::Finite(0));
        assert_eq!(MultiPoly::zero(&z, &v).total_degree(), Degree::MinusInfinity);
        let xy = VarSet::xy(1, 1);
        let f2 = Ring::prime_field(2).unwrap();
        assert_eq!(
            p("y^8+x^3", &f2, &xy).degree_in("y").unwrap(),
            Degree::Finite(8)
        );
        assert!(f.degree_in("z").is_err());
    }

    #[test]
    fn printing() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        assert_eq!(p("1 - x2 + 3*x1^2", &z, &v).to_string(), "3*x1^2 - x2 + 1");
        assert_eq!(p("-x1*x2 - 1", &z, &v).to_string(), "-x1*x2 - 1");
        let q = Ring::rationals();
        assert_eq!(p("x1/2 - 1/3", &q, &v).to_string(), "1/2*x1 - 1/3");
        let f4 = Ring::parse("GF(2^2)").unwrap();
        assert_eq!(p("(t+1)*x1 + t", &f4, &v).to_string(), "(t + 1)*x1 + t");
        let r = Ring::parse("GF(3)[u]").unwrap();
        assert_eq!(p("(u^2+1)*x2 + 2*u", &r, &v).to_string(), "(u^2 + 1)*x2 + 2*u");
    }

    #[test]
    fn exact_division_and_remainder() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        let f = p("x1^2 - x2^2", &z, &v);
        let g = p("x1 - x2", &z, &v);
        assert_eq!(f.div_exact(&g).unwrap(), p("x1 + x2", &z, &v));
        assert!(f.div_exact(&p("x1 + 2", &z, &v)).is_none());
        assert!(p("x1", &z, &v).div_exact(&p("2", &z, &v)).is_none());

        let q = Ring::rationals();
        let f = p("x1^3 + x2", &q, &v);
        let g = p("x1^2 + x1", &q, &v);
        let (quo, rem) = f.divrem(&g).unwrap();
        assert_eq!(&(&quo * &g) + &rem, f);
        assert_eq!(rem, p("x1 + x2", &q, &v));
    }
}
