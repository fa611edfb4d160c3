//! Capelli's criterion for `b*y^rho + a` over `K(x̄)`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{cmp_canonical, factor_multivariate};
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rings::{Elem, Ring, RingKind};

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `num/den` (constants of `R`) is an `l`-th power in `K`.
fn constant_ratio_is_power(ring: &Ring, num: &Elem, den: &Elem, l: u32) -> Result<bool> {
    match ring.kind() {
        RingKind::Integers => {
            let (Elem::Int(a), Elem::Int(b)) = (num, den) else {
                unreachable!()
            };
            let q = Ring::rationals();
            Ok(q.is_power_in_fraction_field(&Elem::Rat(BigRational::new(a.clone(), b.clone())), l))
        }
        RingKind::Rationals | RingKind::Finite(_) => {
            let c = ring.div_exact(num, den).ok_or(Error::DivisionByZero)?;
            Ok(ring.is_power_in_fraction_field(&c, l))
        }
        RingKind::UPoly(base) => {
            // exponents of the irreducible factors of num/den in k[u]
            let fn_ = ring.factor(num)?;
            let fd = ring.factor(den)?;
            let mut exps: Vec<(Elem, i64)> = Vec::new();
            for (g, e) in fn_.factors {
                exps.push((g, e as i64));
            }
            for (g, e) in fd.factors {
                match exps.iter_mut().find(|(h, _)| *h == g) {
                    Some((_, k)) => *k -= e as i64,
                    None => exps.push((g, -(e as i64))),
                }
            }
            if exps.iter().any(|(_, e)| e % l as i64 != 0) {
                return Ok(false);
            }
            let (Elem::Poly(un), Elem::Poly(ud)) = (&fn_.unit, &fd.unit) else {
                unreachable!()
            };
            let c = base.div_exact(&un[0], &ud[0]).ok_or(Error::DivisionByZero)?;
            Ok(base.is_power_in_fraction_field(&c, l))
        }
    }
}

/// Whether `num/den` is an `l`-th power in `K(x̄)`.
fn ratio_is_power(num: &MultiPoly, den: &MultiPoly, l: u32) -> Result<bool> {
    let fa = factor_multivariate(num)?;
    let fb = factor_multivariate(den)?;
    let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
    let mut keys: Vec<MultiPoly> = Vec::new();
    for (sign, fac) in [(1i64, &fa), (-1i64, &fb)] {
        for (g, e) in &fac.factors {
            let k = match keys.iter().position(|h| cmp_canonical(h, g).is_eq() && h == g) {
                Some(k) => k,
                None => {
                    keys.push(g.clone());
                    keys.len() - 1
                }
            };
            *exps.entry(k).or_default() += sign * *e as i64;
        }
    }
    if exps.values().any(|e| e % l as i64 != 0) {
        return Ok(false);
    }
    constant_ratio_is_power(num.ring(), &fa.unit, &fb.unit, l)
}

/// True iff `b*y^rho + a` is irreducible over `K(x̄)`: `-a/b` is not an
/// `l`-th power for any prime `l | rho`, and, when `4 | rho`, `-a/b` is not
/// in `-4 K(x̄)^4`.
pub fn capelli_check(a: &MultiPoly, b: &MultiPoly, rho: u32) -> Result<bool> {
    a.check_compatible(b)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("capelli_check"));
    }
    if rho == 0 {
        return Err(Error::Hypothesis("rho must be positive".into()));
    }
    let neg_a = a.neg();
    for l in prime_divisors(rho) {
        if ratio_is_power(&neg_a, b, l)? {
            return Ok(false);
        }
    }
    // in characteristic 2, -4 K^4 = {0} and a != 0
    if rho % 4 == 0 && a.ring().characteristic() != 2 {
        let four_b = b.scale(&b.ring().from_i64(4));
        if ratio_is_power(a, &four_b, 4)? {
            return Ok(false);
        }
    }
    Ok(true)
}
