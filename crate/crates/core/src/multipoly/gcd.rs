//! Multivariate GCD by recursive primitive PRS on a main variable.
//! Over `Q` the inputs are scaled into `Z[x̄]` first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring, RingSpec};

/// Canonically normalized gcd in `R[x̄]`. Errors when both inputs are zero.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    f.check_compatible(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroInput("poly_gcd"));
    }
    if *f.ring().spec() == RingSpec::Rationals {
        let z = Ring::integers();
        let fz = rational_to_integer(f, &z);
        let gz = rational_to_integer(g, &z);
        let h = gcd_rec(&fz, &gz);
        let q = f.ring();
        return Ok(h.map_coeffs(q, |c| match c {
            Elem::Int(n) => Elem::Rat(BigRational::from_integer(n.clone())),
            _ => unreachable!(),
        })
        .normalize());
    }
    Ok(gcd_rec(f, g))
}

/// `f*g / gcd(f, g)`, normalized.
pub fn poly_lcm(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    if f.is_zero() || g.is_zero() {
        f.check_compatible(g)?;
        return Ok(MultiPoly::zero(f.ring(), f.vars()));
    }
    let h = poly_gcd(f, g)?;
    Ok((f * g).div_exact(&h).expect("gcd divides").normalize())
}

/// Scales a polynomial over `Q` to a primitive one over `Z`.
pub(crate) fn rational_to_integer(f: &MultiPoly, z: &Ring) -> MultiPoly {
    let mut den = BigInt::one();
    for c in f.terms().values() {
        if let Elem::Rat(r) = c {
            den = den.lcm(r.denom());
        }
    }
    f.map_coeffs(z, |c| match c {
        Elem::Rat(r) => Elem::Int(r.numer() * (&den / r.denom())),
        _ => unreachable!("rational coefficient expected"),
    })
    .primitive_part()
}

fn main_var(f: &MultiPoly, g: &MultiPoly) -> Option<usize> {
    let df = f.degree_vector();
    let dg = g.degree_vector();
    (0..df.len()).rev().find(|&i| df[i] > 0 || dg[i] > 0)
}

/// gcd of the coefficients of `f` viewed in variable `v`.
fn content_in(f: &MultiPoly, v: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(f.ring(), f.vars());
    for c in f.coefficients_in(v).into_values() {
        acc = gcd_rec(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_in(f: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_in(f, v);
    if c.is_one() {
        return f.clone();
    }
    f.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
fn prem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.pdeg(v);
    let cb = b.coefficients_in(v);
    let lb = cb[&db].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.pdeg(v) >= db {
        let dr = r.pdeg(v);
        let lr = r.coefficients_in(v).remove(&dr).unwrap();
        let mut shift = Monomial::one(a.vars().len());
        shift.0[v] = dr - db;
        let sub = (&lr * b).mul_term(&shift, &a.ring().one());
        r = &(&lb * &r) - &sub;
    }
    r
}

pub(crate) fn gcd_rec(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.normalize();
    }
    if g.is_zero() {
        return f.normalize();
    }
    let Some(v) = main_var(f, g) else {
        let r = f.ring();
        let c = r.gcd(&f.constant_coeff(), &g.constant_coeff());
        return MultiPoly::constant(r, f.vars(), c);
    };
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_rec(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.pdeg(v) < b.pdeg(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.pdeg(v) == 0 {
            return c;
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return (&c * &b).normalize();
        }
        a = b;
        b = primitive_in(&r, v).normalize();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, VarSet};

    fn p(s: &str, ring: &Ring, vars: &VarSet) -> MultiPoly {
        parse_poly(s, ring, vars).unwrap()
    }

    #[test]
    fn examples() {
        let q = Ring::rationals();
        let v = VarSet::x(2);
        assert_eq!(
            poly_gcd(&p("x1^2-x2^2", &q, &v), &p("x1-x2", &q, &v)).unwrap(),
            p("x1-x2", &q, &v)
        );
        assert!(poly_gcd(&p("x1", &q, &v), &p("x2", &q, &v)).unwrap().is_one());
        let f2 = Ring::prime_field(2).unwrap();
        let v1 = VarSet::x(1);
        assert_eq!(
            poly_gcd(&p("x^2+x", &f2, &v1), &p("x^2+1", &f2, &v1)).unwrap(),
            p("x+1", &f2, &v1)
        );
        let z = Ring::integers();
        assert!(poly_gcd(&MultiPoly::zero(&z, &v), &MultiPoly::zero(&z, &v)).is_err());
    }

    #[test]
    fn integer_contents_combine() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        let f = p("6*x1^2*x2 - 6*x2^3", &z, &v);
        let g = p("4*x1*x2 + 4*x2^2", &z, &v);
        // 6 x2 (x1-x2)(x1+x2) and 4 x2 (x1+x2)
        assert_eq!(poly_gcd(&f, &g).unwrap(), p("2*x1*x2 + 2*x2^2", &z, &v));
        assert_eq!(poly_gcd(&p("-3", &z, &v), &p("6*x1", &z, &v)).unwrap(), p("3", &z, &v));
    }

    #[test]
    fn over_k_u() {
        let r = Ring::parse("GF(3)[u]").unwrap();
        let v = VarSet::x(2);
        let a = p("x1 + u*x2 + 1", &r, &v);
        let b = p("(u+1)*x1 - x2", &r, &v);
        let c = p("x1*x2 - u", &r, &v);
        let g = poly_gcd(&(&a * &b), &(&a * &c)).unwrap();
        assert_eq!(g, a);
    }

    #[test]
    fn lcm() {
        let q = Ring::rationals();
        let v = VarSet::x(1);
        let l = poly_lcm(&p("x^2-1", &q, &v), &p("2*x+2", &q, &v)).unwrap();
        assert_eq!(l, p("x^2-1", &q, &v));
    }
}
