//! Common divisors of `prod_i P_i(x̄, M)` over a box of `M`.

use super::{box_monomials, CandidateBox};
use crate::error::{Error, Result};
use crate::multipoly::{poly_gcd, MultiPoly, VarSet};

/// Largest exhaustive box for finite fields.
const MAX_BOX: u128 = 1 << 20;

/// Over a finite field, the gcd of `prod_i P_i(x̄, M)` over every `M` with
/// `deg_{x_j} M <= d_j`, when it is nonconstant. Over an infinite ring the
/// box is walked in order (at most `samples` candidates) until the gcd
/// drops to a constant; `None` then.
pub fn check_fixed_divisor(
    ps: &[MultiPoly],
    xvars: &VarSet,
    degrees: &[u32],
    coeff_bound: u64,
    samples: u64,
) -> Result<Option<MultiPoly>> {
    let Some(first) = ps.first() else {
        return Err(Error::Hypothesis("no polynomials given".into()));
    };
    let ring = first.ring();
    let n = xvars.len();
    let cbox = CandidateBox::new(ring, xvars, box_monomials(degrees), 1, coeff_bound, 1)?;
    let size = cbox.size().unwrap_or(u128::MAX);
    let limit = if ring.is_finite() {
        if size > MAX_BOX {
            return Err(Error::TooLarge(format!("box of {size} candidates")));
        }
        size
    } else {
        size.min(samples as u128)
    };
    let all = ps
        .iter()
        .map(|p| {
            if p.vars().len() != n + 1 {
                return Err(Error::VarMismatch(format!("{p} needs exactly one y")));
            }
            Ok(p.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut g = MultiPoly::zero(ring, xvars);
    for i in 0..limit {
        let m = &cbox.exhaustive(i).expect("inside the box")[0];
        let mut prod = MultiPoly::one(ring, xvars);
        for p in &all {
            prod = &prod * &p.substitute(n, m)?.embed(xvars)?;
        }
        if prod.is_zero() {
            continue;
        }
        g = if g.is_zero() { prod.normalize() } else { poly_gcd(&g, &prod)? };
        if g.is_constant() && !ring.is_finite() {
            return Ok(None);
        }
    }
    Ok((!g.is_constant()).then_some(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;
    use crate::rings::Ring;

    fn ps(ring: &Ring, list: &[&str]) -> Vec<MultiPoly> {
        let v = VarSet::new(["x", "y"]).unwrap();
        list.iter().map(|s| parse_poly(s, ring, &v).unwrap()).collect()
    }

    #[test]
    fn f2_fixed_divisor() {
        let f2 = Ring::prime_field(2).unwrap();
        let g = check_fixed_divisor(&ps(&f2, &["y", "y + 1"]), &VarSet::x(1), &[2], 1, 0)
            .unwrap()
            .unwrap();
        let x = parse_poly("x", &f2, &VarSet::x(1)).unwrap();
        assert!(x.divides(&g));
        assert_eq!(g.to_string(), "x^2 + x");
    }

    #[test]
    fn no_fixed_divisor() {
        let z = Ring::integers();
        assert_eq!(check_fixed_divisor(&ps(&z, &["y"]), &VarSet::x(1), &[2], 2, 100).unwrap(), None);
        let f3 = Ring::prime_field(3).unwrap();
        assert_eq!(check_fixed_divisor(&ps(&f3, &["y"]), &VarSet::x(1), &[1], 1, 0).unwrap(), None);
    }
}
