//! Kronecker substitution `x_i -> x^(D^(i-1))` and its inverse on the box of
//! partial degrees below `D`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MultiPoly, VarSet};

/// Fold of `n` variables with base `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KroneckerMap {
    pub d: u64,
    pub n: usize,
}

impl KroneckerMap {
    /// The smallest safe map for `f`: `D = 1 + max partial degree`.
    pub fn for_poly(f: &MultiPoly) -> KroneckerMap {
        let d = f.degree_vector().into_iter().max().unwrap_or(0) as u64 + 1;
        KroneckerMap {
            d: d.max(2),
            n: f.vars().len(),
        }
    }

    fn weight(&self, i: usize) -> Result<u64> {
        self.d
            .checked_pow(i as u32)
            .ok_or_else(|| Error::TooLarge(format!("D^{i} with D={}", self.d)))
    }

    pub fn fold(&self, f: &MultiPoly) -> Result<MultiPoly> {
        kronecker_fold(f, self.d)
    }

    pub fn unfold(&self, g: &MultiPoly, vars: &VarSet) -> Result<MultiPoly> {
        let out = kronecker_unfold(g, self.d, self.n)?;
        Ok(MultiPoly::from_terms(
            out.ring(),
            vars,
            out.terms().iter().map(|(m, c)| (m.clone(), c.clone())),
        ))
    }
}

fn univariate_vars() -> VarSet {
    VarSet::x(1)
}

/// Substitutes `x_i -> x^(D^(i-1))`. Errors unless `D` exceeds every
/// partial degree of `f`.
pub fn kronecker_fold(f: &MultiPoly, d: u64) -> Result<MultiPoly> {
    let map = KroneckerMap {
        d,
        n: f.vars().len(),
    };
    for e in f.degree_vector() {
        if e as u64 >= d {
            return Err(Error::KroneckerBound { d, degree: e });
        }
    }
    let weights = (0..map.n).map(|i| map.weight(i)).collect::<Result<Vec<_>>>()?;
    let mut terms = BTreeMap::new();
    for (m, c) in f.terms() {
        let e: u64 = m.0.iter().zip(&weights).map(|(&a, &w)| a as u64 * w).sum();
        let e = u32::try_from(e).map_err(|_| Error::TooLarge(format!("folded degree {e}")))?;
        terms.insert(Monomial(vec![e]), c.clone());
    }
    Ok(MultiPoly::from_map_unchecked(f.ring(), &univariate_vars(), terms))
}

/// Inverse of [`kronecker_fold`]: reads each exponent in base `D`.
/// The result uses the variables `x1..xn` (or `x` when `n = 1`).
pub fn kronecker_unfold(g: &MultiPoly, d: u64, n: usize) -> Result<MultiPoly> {
    if g.vars().len() != 1 {
        return Err(Error::VarMismatch("unfold expects a univariate polynomial".into()));
    }
    let top = d.checked_pow(n as u32);
    let mut terms = BTreeMap::new();
    for (m, c) in g.terms() {
        let mut e = m.0[0] as u64;
        if top.is_some_and(|t| e >= t) {
            return Err(Error::UnfoldDegree { degree: e, d, n });
        }
        let mut exps = vec![0u32; n];
        for x in exps.iter_mut() {
            *x = (e % d) as u32;
            e /= d;
        }
        terms.insert(Monomial(exps), c.clone());
    }
    Ok(MultiPoly::from_map_unchecked(g.ring(), &VarSet::x(n), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;
    use crate::rings::Ring;

    #[test]
    fn examples() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        let u = VarSet::x(1);
        let f = parse_poly("x1 + x2", &z, &v).unwrap();
        let g = kronecker_fold(&f, 3).unwrap();
        assert_eq!(g, parse_poly("x + x^3", &z, &u).unwrap());
        assert_eq!(kronecker_unfold(&g, 3, 2).unwrap(), f);

        let f = parse_poly("x1^2*x2 + 1", &z, &v).unwrap();
        let g = kronecker_fold(&f, 3).unwrap();
        assert_eq!(g, parse_poly("x^5 + 1", &z, &u).unwrap());
        assert_eq!(kronecker_unfold(&g, 3, 2).unwrap(), f);

        assert!(kronecker_unfold(&MultiPoly::zero(&z, &u), 3, 2).unwrap().is_zero());
    }

    #[test]
    fn bounds_are_checked() {
        let z = Ring::integers();
        let f = parse_poly("x1^3 + x2", &z, &VarSet::x(2)).unwrap();
        assert!(matches!(
            kronecker_fold(&f, 3),
            Err(Error::KroneckerBound { d: 3, degree: 3 })
        ));
        let g = parse_poly("x^9", &z, &VarSet::x(1)).unwrap();
        assert!(matches!(
            kronecker_unfold(&g, 3, 2),
            Err(Error::UnfoldDegree { .. })
        ));
    }
}
