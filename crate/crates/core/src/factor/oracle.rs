//! Exhaustive trial division over small finite fields. Slow and simple, kept
//! independent of the Kronecker pipeline so the two can be compared.

use std::collections::BTreeMap;

use super::cmp_canonical;
use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MultiPoly};
use crate::rings::{Elem, FiniteField, RingKind};

/// Largest number of candidate divisors enumerated.
const MAX_CANDIDATES: u64 = 1 << 22;

/// Dense coefficient array over the box `0..=dims[i]`.
struct Boxed<'a> {
    fld: &'a FiniteField,
    dims: Vec<u32>,
    /// Box monomials in descending graded-lex order, as array indices.
    order: Vec<usize>,
    exps: Vec<Vec<u32>>,
}

impl<'a> Boxed<'a> {
    fn new(fld: &'a FiniteField, dims: Vec<u32>) -> Self {
        let size: usize = dims.iter().map(|&d| d as usize + 1).product();
        let exps: Vec<Vec<u32>> = (0..size)
            .map(|mut k| {
                dims.iter()
                    .map(|&d| {
                        let e = (k % (d as usize + 1)) as u32;
                        k /= d as usize + 1;
                        e
                    })
                    .collect()
            })
            .collect();
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| Monomial(exps[b].clone()).cmp(&Monomial(exps[a].clone())));
        Boxed {
            fld,
            dims,
            order,
            exps,
        }
    }

    fn index(&self, e: &[u32]) -> Option<usize> {
        let mut k = 0;
        let mut stride = 1;
        for (&x, &d) in e.iter().zip(&self.dims) {
            if x > d {
                return None;
            }
            k += x as usize * stride;
            stride *= d as usize + 1;
        }
        Some(k)
    }

    fn dense(&self, f: &MultiPoly) -> Vec<u64> {
        let mut out = vec![0; self.exps.len()];
        for (m, c) in f.terms() {
            let Elem::Ff(a) = c else { unreachable!() };
            out[self.index(&m.0).expect("inside the box")] = *a;
        }
        out
    }

    fn sparse(&self, a: &[u64], like: &MultiPoly) -> MultiPoly {
        let terms = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (Monomial(self.exps[k].clone()), Elem::Ff(c)));
        MultiPoly::from_terms(like.ring(), like.vars(), terms)
    }

    fn leading(&self, a: &[u64]) -> Option<usize> {
        self.order.iter().copied().find(|&k| a[k] != 0)
    }

    /// Quotient `f / g` when `g` (monic, leading index `lg`) divides `f`.
    fn divide(&self, f: &[u64], g: &[(usize, u64)], lg: usize) -> Option<Vec<u64>> {
        let fld = self.fld;
        let mut r = f.to_vec();
        let mut q = vec![0u64; r.len()];
        let le = &self.exps[lg];
        while let Some(k) = self.leading(&r) {
            let m = &self.exps[k];
            if m.iter().zip(le).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Vec<u32> = m.iter().zip(le).map(|(a, b)| a - b).collect();
            let c = r[k];
            q[self.index(&shift)?] = c;
            for &(j, gc) in g {
                let e: Vec<u32> = self.exps[j].iter().zip(&shift).map(|(a, b)| a + b).collect();
                let t = self.index(&e)?;
                r[t] = fld.sub(r[t], fld.mul(c, gc));
            }
        }
        Some(q)
    }

    /// Smallest total degree monic divisor `g` with `1 <= tdeg g <= max_deg`,
    /// searched in a fixed order.
    fn smallest_divisor(&self, f: &[u64], max_deg: u32) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
        let q = self.fld.q();
        // leading monomials in ascending graded-lex order
        let leads: Vec<usize> = self
            .order
            .iter()
            .rev()
            .copied()
            .filter(|&k| {
                let t: u32 = self.exps[k].iter().sum();
                t >= 1 && t <= max_deg
            })
            .collect();
        let mut total: u64 = 0;
        for &l in &leads {
            let below = self.order.len() - 1 - self.order.iter().position(|&k| k == l).unwrap();
            let n = (q as f64).powi(below as i32);
            total = total.saturating_add(if n > u64::MAX as f64 { u64::MAX } else { n as u64 });
            if total > MAX_CANDIDATES {
                return Err(Error::TooLarge(format!(
                    "brute force needs more than {MAX_CANDIDATES} candidates"
                )));
            }
        }
        for &l in &leads {
            let pos = self.order.iter().position(|&k| k == l).unwrap();
            let free = &self.order[pos + 1..];
            let mut digits = vec![0u64; free.len()];
            loop {
                let mut g = vec![(l, 1u64)];
                g.extend(free.iter().zip(&digits).filter(|(_, &c)| c != 0).map(|(&k, &c)| (k, c)));
                if let Some(quot) = self.divide(f, &g, l) {
                    let mut dense = vec![0u64; f.len()];
                    for (k, c) in g {
                        dense[k] = c;
                    }
                    return Ok(Some((dense, quot)));
                }
                // odometer
                let mut i = 0;
                while i < digits.len() {
                    digits[i] += 1;
                    if digits[i] < q {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
        }
        Ok(None)
    }
}

fn field_of(f: &MultiPoly) -> Result<&FiniteField> {
    match f.ring().kind() {
        RingKind::Finite(fld) => Ok(fld),
        _ => Err(Error::Unsupported(format!(
            "brute force needs a finite field, got {}",
            f.ring()
        ))),
    }
}

/// Irreducibility by trying every monic divisor of total degree at most
/// `tdeg f / 2` within the partial-degree box of `f`.
pub fn brute_force_irreducible(f: &MultiPoly) -> Result<bool> {
    let fld = field_of(f)?;
    if f.is_zero() {
        return Err(Error::ZeroInput("brute_force_irreducible"));
    }
    if f.is_constant() {
        return Ok(false);
    }
    let b = Boxed::new(fld, f.degree_vector());
    let dense = b.dense(f);
    Ok(b.smallest_divisor(&dense, f.tdeg() / 2)?.is_none())
}

/// Full factorization into monic irreducibles with multiplicities, by
/// repeatedly splitting off a divisor of least total degree.
pub fn brute_force_factor(f: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    let fld = field_of(f)?;
    if f.is_zero() {
        return Err(Error::ZeroInput("brute_force_factor"));
    }
    let b = Boxed::new(fld, f.degree_vector());
    let mut rest = b.dense(f);
    let mut found: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
    loop {
        let t: u32 = match b.leading(&rest) {
            Some(k) => b.exps[k].iter().sum(),
            None => unreachable!(),
        };
        if t == 0 {
            break;
        }
        match b.smallest_divisor(&rest, t / 2)? {
            Some((g, quot)) => {
                *found.entry(g).or_default() += 1;
                rest = quot;
            }
            None => {
                // what is left is irreducible; make it monic
                let lead = b.leading(&rest).unwrap();
                let inv = fld.inv(rest[lead]).expect("nonzero");
                let g = rest.iter().map(|&c| fld.mul(c, inv)).collect();
                *found.entry(g).or_default() += 1;
                break;
            }
        }
    }
    let mut out: Vec<(MultiPoly, u32)> =
        found.into_iter().map(|(g, e)| (b.sparse(&g, f), e)).collect();
    out.sort_by(|a, b| cmp_canonical(&a.0, &b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, VarSet};
    use crate::rings::Ring;

    #[test]
    fn small_cases() {
        let f2 = Ring::prime_field(2).unwrap();
        let v = VarSet::x(2);
        let p = |s: &str| parse_poly(s, &f2, &v).unwrap();
        assert!(brute_force_irreducible(&p("x1 + x2")).unwrap());
        assert!(!brute_force_irreducible(&p("x1^2 + x2^2")).unwrap());
        assert!(brute_force_irreducible(&p("x1^2 + x1 + 1")).unwrap());
        assert!(!brute_force_irreducible(&p("1")).unwrap());
        assert!(brute_force_irreducible(&p("x1*x2 + 1")).unwrap());

        let fac = brute_force_factor(&p("x1^2*x2 + x1*x2^2")).unwrap();
        assert_eq!(
            fac,
            vec![(p("x2"), 1), (p("x1"), 1), (p("x1 + x2"), 1)]
        );
        let fac = brute_force_factor(&p("x1^2 + x2^2")).unwrap();
        assert_eq!(fac, vec![(p("x1 + x2"), 2)]);
    }

    #[test]
    fn rejects_infinite_rings() {
        let z = Ring::integers();
        let f = parse_poly("x + 1", &z, &VarSet::x(1)).unwrap();
        assert!(matches!(brute_force_irreducible(&f), Err(Error::Unsupported(_))));
    }
}
