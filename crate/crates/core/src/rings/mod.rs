//! Coefficient rings: `Z`, `Q`, `F_p`, `F_q = F_p[t]/(m)`, and `k[u]` over
//! any of those fields, behind one UFD interface.
//!
//! A [`RingSpec`] describes a ring; a [`Ring`] is the validated runtime
//! context (shared, immutable) that performs arithmetic on [`Elem`] values.

pub mod finite_field;
pub mod fq_poly;
pub mod integer;
pub(crate) mod upoly;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use finite_field::FiniteField;
pub use fq_poly::FqPoly;

/// Description of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
    ExtensionField { p: u64, k: u32, modulus: Vec<u64> },
    /// `base[u]` where `base` is a field.
    PolyRingOverField(Box<RingSpec>),
}

impl RingSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::Integers | RingSpec::Rationals => 0,
            RingSpec::PrimeField(p) | RingSpec::ExtensionField { p, .. } => *p,
            RingSpec::PolyRingOverField(base) => base.characteristic(),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers | RingSpec::PolyRingOverField(_))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "GF({p})"),
            RingSpec::ExtensionField { p, k, modulus } => {
                write!(f, "GF({p}^{k})")?;
                let default = FiniteField::extension(*p, *k, None).map(|ff| ff.modulus().to_vec());
                if default.as_deref().ok() != Some(modulus.as_slice()) {
                    let terms: Vec<String> = modulus
                        .iter()
                        .enumerate()
                        .rev()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| match (i, c) {
                            (0, _) => c.to_string(),
                            (1, 1) => "t".into(),
                            (1, _) => format!("{c}*t"),
                            (_, 1) => format!("t^{i}"),
                            _ => format!("{c}*t^{i}"),
                        })
                        .collect();
                    write!(f, "/({})", terms.join("+"))?;
                }
                Ok(())
            }
            RingSpec::PolyRingOverField(base) => write!(f, "{base}[u]"),
        }
    }
}

impl From<RingSpec> for String {
    fn from(r: RingSpec) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for RingSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn parse_modulus_in_t(text: &str, p: u64) -> Result<Vec<u64>> {
    let bad = || Error::InvalidRing(format!("cannot read modulus `{text}`"));
    let mut coeffs: Vec<u64> = Vec::new();
    for term in text.split('+').map(str::trim) {
        let (c, rest) = match term.split_once('*') {
            Some((c, r)) => (c.trim().parse::<u64>().map_err(|_| bad())?, r.trim()),
            None if term.starts_with('t') => (1, term),
            None => (term.parse::<u64>().map_err(|_| bad())?, ""),
        };
        let e = match rest {
            "" => 0,
            "t" => 1,
            r => r
                .strip_prefix("t^")
                .and_then(|e| e.parse::<usize>().ok())
                .ok_or_else(bad)?,
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = (coeffs[e] + c) % p;
    }
    Ok(coeffs)
}

/// `q = p^k` with `p` prime.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| d * d > q || q % d == 0)?;
    let p = if p * p > q { q } else { p };
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Accepts `Z`, `Q`, `GF(p)`, `GF(p^k)`, `GF(p^k)/(modulus in t)`, and
    /// any field followed by `[u]`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(base) = s.strip_suffix("[u]") {
            let base: RingSpec = base.parse()?;
            if !base.is_field() {
                return Err(Error::InvalidRing(format!("{base}[u] needs a field base")));
            }
            return Ok(RingSpec::PolyRingOverField(Box::new(base)));
        }
        match s.as_str() {
            "Z" | "ZZ" => return Ok(RingSpec::Integers),
            "Q" | "QQ" => return Ok(RingSpec::Rationals),
            _ => {}
        }
        let bad = || Error::InvalidRing(format!("unrecognised ring `{s}`"));
        let inner = s.strip_prefix("GF(").or_else(|| s.strip_prefix("F(")).ok_or_else(bad)?;
        let (size, rest) = inner.split_once(')').ok_or_else(bad)?;
        let (p, k) = match size.split_once('^') {
            Some((p, k)) => (
                p.parse::<u64>().map_err(|_| bad())?,
                k.parse::<u32>().map_err(|_| bad())?,
            ),
            None => prime_power(size.parse::<u64>().map_err(|_| bad())?).ok_or_else(bad)?,
        };
        let explicit = match rest {
            "" => None,
            r => {
                let m = r
                    .strip_prefix("/(")
                    .and_then(|m| m.strip_suffix(')'))
                    .ok_or_else(bad)?;
                Some(parse_modulus_in_t(m, p)?)
            }
        };
        if k == 1 && explicit.is_none() {
            FiniteField::prime(p)?;
            return Ok(RingSpec::PrimeField(p));
        }
        let ff = FiniteField::extension(p, k, explicit)?;
        Ok(RingSpec::ExtensionField {
            p,
            k,
            modulus: ff.modulus().to_vec(),
        })
    }
}

/// A ring element. The interpretation depends on the [`Ring`] it is used
/// with: `Int` for `Z`, `Rat` for `Q`, `Ff` for finite fields (see
/// [`FiniteField`] for the encoding) and `Poly` for `k[u]`, whose entries
/// are base-field elements lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Ff(u64),
    Poly(Vec<Elem>),
}

#[derive(Debug)]
pub(crate) enum RingKind {
    Integers,
    Rationals,
    Finite(FiniteField),
    UPoly(Ring),
}

/// Validated, shareable ring context.
#[derive(Clone)]
pub struct Ring {
    spec: RingSpec,
    kind: Arc<RingKind>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.kind, &other.kind) || self.spec == other.spec
    }
}
impl Eq for Ring {}

/// Unit times irreducible elements with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemFactorization {
    pub unit: Elem,
    pub factors: Vec<(Elem, u32)>,
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let kind = match &spec {
            RingSpec::Integers => RingKind::Integers,
            RingSpec::Rationals => RingKind::Rationals,
            RingSpec::PrimeField(p) => RingKind::Finite(FiniteField::prime(*p)?),
            RingSpec::ExtensionField { p, k, modulus } => {
                RingKind::Finite(FiniteField::extension(*p, *k, Some(modulus.clone()))?)
            }
            RingSpec::PolyRingOverField(base) => {
                if !base.is_field() {
                    return Err(Error::InvalidRing(format!("{base} is not a field")));
                }
                RingKind::UPoly(Ring::new((**base).clone())?)
            }
        };
        Ok(Ring {
            spec,
            kind: Arc::new(kind),
        })
    }

    pub fn parse(s: &str) -> Result<Ring> {
        Ring::new(s.parse()?)
    }

    pub fn integers() -> Ring {
        Ring::new(RingSpec::Integers).unwrap()
    }
    pub fn rationals() -> Ring {
        Ring::new(RingSpec::Rationals).unwrap()
    }
    pub fn prime_field(p: u64) -> Result<Ring> {
        Ring::new(RingSpec::PrimeField(p))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub(crate) fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.spec.characteristic()
    }

    pub fn is_field(&self) -> bool {
        self.spec.is_field()
    }

    pub fn is_finite(&self) -> bool {
        matches!(*self.kind, RingKind::Finite(_))
    }

    /// Number of elements, for finite fields.
    pub fn cardinality(&self) -> Option<u64> {
        self.finite_field().map(|f| f.q())
    }

    pub fn finite_field(&self) -> Option<&FiniteField> {
        match &*self.kind {
            RingKind::Finite(f) => Some(f),
            _ => None,
        }
    }

    /// The base field `k` of `k[u]`.
    pub fn poly_base(&self) -> Option<&Ring> {
        match &*self.kind {
            RingKind::UPoly(b) => Some(b),
            _ => None,
        }
    }

    fn mismatch(&self, e: &Elem) -> ! {
        panic!("element {e:?} does not belong to {}", self.spec)
    }

    pub fn zero(&self) -> Elem {
        match &*self.kind {
            RingKind::Integers => Elem::Int(BigInt::zero()),
            RingKind::Rationals => Elem::Rat(BigRational::zero()),
            RingKind::Finite(_) => Elem::Ff(0),
            RingKind::UPoly(_) => Elem::Poly(vec![]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.kind {
            RingKind::Integers => Elem::Int(n.clone()),
            RingKind::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            RingKind::Finite(f) => Elem::Ff(f.from_bigint(n)),
            RingKind::UPoly(b) => Elem::Poly(upoly::trim(b, vec![b.from_bigint(n)])),
        }
    }

    /// `u` in `k[u]`.
    pub fn u(&self) -> Option<Elem> {
        self.poly_base()
            .map(|b| Elem::Poly(vec![b.zero(), b.one()]))
    }

    /// The extension generator `t` (also inside `k[u]` over an extension).
    pub fn t(&self) -> Option<Elem> {
        match &*self.kind {
            RingKind::Finite(f) => f.generator().map(Elem::Ff),
            RingKind::UPoly(b) => b.t().map(|t| Elem::Poly(vec![t])),
            _ => None,
        }
    }

    /// Embeds an element of the base field into `k[u]`.
    pub fn from_base(&self, c: Elem) -> Elem {
        match &*self.kind {
            RingKind::UPoly(b) => Elem::Poly(upoly::trim(b, vec![c])),
            _ => c,
        }
    }

    /// `sum c_k u^k` in `k[u]`; `None` outside `k[u]`.
    pub fn from_u_coeffs(&self, coeffs: Vec<Elem>) -> Option<Elem> {
        match &*self.kind {
            RingKind::UPoly(b) => Some(Elem::Poly(upoly::trim(b, coeffs))),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(r) => r.is_zero(),
            Elem::Ff(x) => *x == 0,
            Elem::Poly(v) => v.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (RingKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (RingKind::Finite(f), Elem::Ff(x), Elem::Ff(y)) => Elem::Ff(f.add(*x, *y)),
            (RingKind::UPoly(base), Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(upoly::add(base, x, y))
            }
            _ => self.mismatch(a),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => Elem::Int(-x),
            (RingKind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (RingKind::Finite(f), Elem::Ff(x)) => Elem::Ff(f.neg(*x)),
            (RingKind::UPoly(base), Elem::Poly(x)) => Elem::Poly(upoly::neg(base, x)),
            _ => self.mismatch(a),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (RingKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (RingKind::Finite(f), Elem::Ff(x), Elem::Ff(y)) => Elem::Ff(f.mul(*x, *y)),
            (RingKind::UPoly(base), Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(upoly::mul(base, x, y))
            }
            _ => self.mismatch(a),
        }
    }

    pub fn pow(&self, a: &Elem, e: u32) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match (&*self.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => {
                (x.abs().is_one()).then(|| Elem::Int(x.clone()))
            }
            (RingKind::Rationals, Elem::Rat(x)) => (!x.is_zero()).then(|| Elem::Rat(x.recip())),
            (RingKind::Finite(f), Elem::Ff(x)) => f.inv(*x).map(Elem::Ff),
            (RingKind::UPoly(base), Elem::Poly(x)) => {
                if x.len() == 1 {
                    base.inv(&x[0]).map(|i| Elem::Poly(vec![i]))
                } else {
                    None
                }
            }
            _ => self.mismatch(a),
        }
    }

    /// True iff `a` divides 1.
    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_some()
    }

    /// `a / b` when `b` divides `a` exactly.
    pub fn div_exact(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(b) {
            return None;
        }
        match (&*self.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => {
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Elem::Int(q))
            }
            (RingKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Some(Elem::Rat(x / y)),
            (RingKind::Finite(f), Elem::Ff(x), Elem::Ff(y)) => f.div(*x, *y).map(Elem::Ff),
            (RingKind::UPoly(base), Elem::Poly(x), Elem::Poly(y)) => {
                let (q, r) = upoly::divrem(base, x, y)?;
                r.is_empty().then_some(Elem::Poly(q))
            }
            _ => self.mismatch(a),
        }
    }

    /// Canonical unit of `a`: the sign over `Z`, `a` itself over a field,
    /// the leading coefficient over `k[u]`; `1` for zero.
    pub fn unit_part(&self, a: &Elem) -> Elem {
        if self.is_zero(a) {
            return self.one();
        }
        match (&*self.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => Elem::Int(BigInt::from(x.signum())),
            (RingKind::Rationals | RingKind::Finite(_), _) => a.clone(),
            (RingKind::UPoly(_), Elem::Poly(x)) => Elem::Poly(vec![x.last().unwrap().clone()]),
            _ => self.mismatch(a),
        }
    }

    /// `a` divided by its canonical unit.
    pub fn normalize(&self, a: &Elem) -> Elem {
        if self.is_zero(a) {
            return a.clone();
        }
        self.div_exact(a, &self.unit_part(a)).unwrap()
    }

    /// Canonical greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x.gcd(y)),
            (RingKind::Rationals | RingKind::Finite(_), _, _) => {
                if self.is_zero(a) && self.is_zero(b) {
                    self.zero()
                } else {
                    self.one()
                }
            }
            (RingKind::UPoly(base), Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(upoly::gcd(base, x, y))
            }
            _ => self.mismatch(a),
        }
    }

    /// Checked gcd for elements whose ring is given explicitly.
    pub fn ring_gcd(&self, a: &Elem, ra: &Ring, b: &Elem, rb: &Ring) -> Result<Elem> {
        if ra != self || rb != self {
            return Err(Error::RingMismatch(ra.to_string(), rb.to_string()));
        }
        Ok(self.gcd(a, b))
    }

    /// Whether `a` prints with a leading minus sign: negative over `Z` and
    /// `Q`, negative leading coefficient over `Q[u]`.
    pub fn is_negative(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.is_negative(),
            Elem::Rat(x) => x.is_negative(),
            Elem::Ff(_) => false,
            Elem::Poly(v) => match (v.last(), self.poly_base()) {
                (Some(lc), Some(base)) => base.is_negative(lc),
                _ => false,
            },
        }
    }

    /// A deterministic total order used for sorting outputs.
    pub fn cmp_elems(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => x.cmp(y),
            (Elem::Rat(x), Elem::Rat(y)) => x.cmp(y),
            (Elem::Ff(x), Elem::Ff(y)) => x.cmp(y),
            (Elem::Poly(x), Elem::Poly(y)) => {
                let base = self.poly_base().expect("polynomial element outside k[u]");
                x.len().cmp(&y.len()).then_with(|| {
                    for (c, d) in x.iter().rev().zip(y.iter().rev()) {
                        let o = base.cmp_elems(c, d);
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                    Ordering::Equal
                })
            }
            _ => self.mismatch(a),
        }
    }

    /// Degree in `u` of a `k[u]` element (`None` for zero or other rings).
    pub fn u_degree(&self, a: &Elem) -> Option<usize> {
        match a {
            Elem::Poly(v) => v.len().checked_sub(1),
            _ => None,
        }
    }

    /// Whether printing `a` as a coefficient needs parentheses.
    pub fn needs_parens(&self, a: &Elem) -> bool {
        let s = self.format(a);
        let body = s.strip_prefix('-').unwrap_or(&s);
        body.contains(['+', ' ']) || (matches!(a, Elem::Poly(_)) && body.contains('/'))
    }

    pub fn format(&self, a: &Elem) -> String {
        match (&*self.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => x.to_string(),
            (RingKind::Rationals, Elem::Rat(x)) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (RingKind::Finite(f), Elem::Ff(x)) => f.format(*x),
            (RingKind::UPoly(base), Elem::Poly(v)) => {
                if v.is_empty() {
                    return "0".into();
                }
                let mut out = String::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let neg = base.is_negative(c);
                    let mag = if neg { base.neg(c) } else { c.clone() };
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "u".into(),
                        _ => format!("u^{i}"),
                    };
                    let cs = base.format(&mag);
                    let cs = if base.needs_parens(&mag) {
                        format!("({cs})")
                    } else {
                        cs
                    };
                    if i == 0 {
                        out.push_str(&cs);
                    } else if base.is_one(&mag) {
                        out.push_str(&mono);
                    } else {
                        out.push_str(&format!("{cs}*{mono}"));
                    }
                }
                out
            }
            _ => self.mismatch(a),
        }
    }

    /// Factors a nonzero element into a unit and irreducibles. Over a field
    /// the whole element is the unit.
    pub fn factor(&self, a: &Elem) -> Result<ElemFactorization> {
        if self.is_zero(a) {
            return Err(Error::ZeroInput("ring_factor"));
        }
        match (&*self.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => {
                let (sign, primes) = integer::factor_integer(x);
                let unit = if sign == Sign::Minus { -1 } else { 1 };
                Ok(ElemFactorization {
                    unit: Elem::Int(BigInt::from(unit)),
                    factors: primes
                        .into_iter()
                        .map(|(p, e)| (Elem::Int(BigInt::from(p)), e))
                        .collect(),
                })
            }
            (RingKind::Rationals | RingKind::Finite(_), _) => Ok(ElemFactorization {
                unit: a.clone(),
                factors: vec![],
            }),
            (RingKind::UPoly(base), Elem::Poly(v)) => {
                let (lc, parts) = crate::factor::univariate::factor_over_field(base, v)?;
                let mut factors: Vec<(Elem, u32)> =
                    parts.into_iter().map(|(g, e)| (Elem::Poly(g), e)).collect();
                factors.sort_by(|x, y| self.cmp_elems(&x.0, &y.0));
                Ok(ElemFactorization {
                    unit: Elem::Poly(vec![lc]),
                    factors,
                })
            }
            _ => self.mismatch(a),
        }
    }

    /// Whether `a` is an `l`-th power in this ring's fraction field,
    /// restricted to constants of the base field for `k[u]`.
    pub fn is_power_in_fraction_field(&self, a: &Elem, l: u32) -> bool {
        match (&*self.kind, a) {
            (_, _) if self.is_zero(a) => true,
            (RingKind::Integers, Elem::Int(x)) => {
                let r = BigRational::from_integer(x.clone());
                rational_is_power(&r, l)
            }
            (RingKind::Rationals, Elem::Rat(x)) => rational_is_power(x, l),
            (RingKind::Finite(f), Elem::Ff(x)) => {
                if l as u64 % f.p() == 0 {
                    true
                } else {
                    f.is_power(*x, l as u64)
                }
            }
            (RingKind::UPoly(base), Elem::Poly(v)) if v.len() == 1 => {
                base.is_power_in_fraction_field(&v[0], l)
            }
            _ => false,
        }
    }

    /// Converts a small ring element of `Z`/`Q` to `f64` (diagnostics only).
    pub fn to_f64(&self, a: &Elem) -> Option<f64> {
        match a {
            Elem::Int(x) => x.to_f64(),
            Elem::Rat(x) => x.to_f64(),
            _ => None,
        }
    }
}

fn rational_is_power(r: &BigRational, l: u32) -> bool {
    if r.is_negative() && l % 2 == 0 {
        return false;
    }
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    integer::exact_root(n, l).is_some() && integer::exact_root(d, l).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2u() -> Ring {
        Ring::parse("GF(2)[u]").unwrap()
    }

    fn upoly(r: &Ring, bits: &[u64]) -> Elem {
        let base = r.poly_base().unwrap();
        Elem::Poly(upoly::trim(base, bits.iter().map(|&b| Elem::Ff(b)).collect()))
    }

    #[test]
    fn spec_strings_roundtrip() {
        for s in ["Z", "Q", "GF(5)", "GF(2^3)", "GF(3)[u]", "GF(2^2)[u]", "Q[u]"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("GF(4)".parse::<RingSpec>().unwrap().to_string(), "GF(2^2)");
        assert!("GF(6)".parse::<RingSpec>().is_err());
        assert!("GF(1)".parse::<RingSpec>().is_err());
        assert!("Z[u]".parse::<RingSpec>().is_err());
        let custom: RingSpec = "GF(2^3)/(t^3+t+1)".parse().unwrap();
        assert_eq!(custom.to_string(), "GF(2^3)/(t^3+t+1)");
        assert_eq!(custom.to_string().parse::<RingSpec>().unwrap(), custom);
    }

    #[test]
    fn characteristic() {
        assert_eq!(Ring::parse("Q[u]").unwrap().characteristic(), 0);
        assert_eq!(Ring::parse("GF(3^2)[u]").unwrap().characteristic(), 3);
    }

    #[test]
    fn gcd_examples() {
        let z = Ring::integers();
        assert_eq!(z.gcd(&z.from_i64(12), &z.from_i64(18)), z.from_i64(6));
        assert_eq!(z.gcd(&z.zero(), &z.zero()), z.zero());
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.gcd(&f5.from_i64(3), &f5.from_i64(4)), f5.one());
        // u^2+u = u(u+1), u^2+1 = (u+1)^2
        let r = f2u();
        let g = r.gcd(&upoly(&r, &[0, 1, 1]), &upoly(&r, &[1, 0, 1]));
        assert_eq!(g, upoly(&r, &[1, 1]));
        assert_eq!(r.format(&g), "u + 1");
    }

    #[test]
    fn ring_gcd_checks_rings() {
        let z = Ring::integers();
        let q = Ring::rationals();
        let a = z.from_i64(4);
        assert!(z.ring_gcd(&a, &z, &q.from_i64(2), &q).is_err());
        assert_eq!(z.ring_gcd(&a, &z, &z.from_i64(6), &z).unwrap(), z.from_i64(2));
    }

    #[test]
    fn units() {
        let z = Ring::integers();
        assert!(z.is_unit(&z.from_i64(-1)));
        assert!(!z.is_unit(&z.from_i64(2)));
        let r = Ring::parse("GF(3)[u]").unwrap();
        assert!(r.is_unit(&r.from_i64(2)));
        assert!(!r.is_unit(&r.u().unwrap()));
    }

    #[test]
    fn factor_examples() {
        let z = Ring::integers();
        let f = z.factor(&z.from_i64(-12)).unwrap();
        assert_eq!(f.unit, z.from_i64(-1));
        assert_eq!(f.factors, vec![(z.from_i64(2), 2), (z.from_i64(3), 1)]);

        let r = f2u();
        let f = r.factor(&upoly(&r, &[0, 1, 1])).unwrap();
        assert_eq!(f.unit, r.one());
        assert_eq!(f.factors, vec![(upoly(&r, &[0, 1]), 1), (upoly(&r, &[1, 1]), 1)]);

        let q = Ring::rationals();
        let seven_thirds = Elem::Rat(BigRational::new(7.into(), 3.into()));
        let f = q.factor(&seven_thirds).unwrap();
        assert_eq!(f.unit, seven_thirds);
        assert!(f.factors.is_empty());

        assert!(z.factor(&z.zero()).is_err());
    }

    #[test]
    fn q_u_factor_normalizes_monic() {
        let r = Ring::parse("Q[u]").unwrap();
        let b = r.poly_base().unwrap();
        // 2u^2 - 2 = 2 (u - 1)(u + 1)
        let a = Elem::Poly(vec![b.from_i64(-2), b.zero(), b.from_i64(2)]);
        let f = r.factor(&a).unwrap();
        assert_eq!(f.unit, r.from_i64(2));
        assert_eq!(f.factors.len(), 2);
        let prod = f
            .factors
            .iter()
            .fold(f.unit.clone(), |acc, (g, e)| r.mul(&acc, &r.pow(g, *e)));
        assert_eq!(prod, a);
    }

    #[test]
    fn powers_in_fraction_field() {
        let q = Ring::rationals();
        let r = |n: i64, d: i64| Elem::Rat(BigRational::new(n.into(), d.into()));
        assert!(q.is_power_in_fraction_field(&r(4, 9), 2));
        assert!(!q.is_power_in_fraction_field(&r(-4, 9), 2));
        assert!(q.is_power_in_fraction_field(&r(-8, 27), 3));
        let f7 = Ring::prime_field(7).unwrap();
        // squares mod 7: 1, 2, 4
        assert!(f7.is_power_in_fraction_field(&f7.from_i64(2), 2));
        assert!(!f7.is_power_in_fraction_field(&f7.from_i64(3), 2));
        assert!(f7.is_power_in_fraction_field(&f7.from_i64(3), 7));
    }
}
