//! Dense univariate polynomials over a [`FiniteField`].

use num_bigint::BigUint;

use super::finite_field::FiniteField;

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqPoly {
    pub coeffs: Vec<u64>,
}

impl FqPoly {
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        FqPoly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        FqPoly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: u64) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, f: &FiniteField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Self::from_coeffs(c)
    }

    pub fn neg(&self, f: &FiniteField) -> Self {
        FqPoly {
            coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn sub(&self, other: &Self, f: &FiniteField) -> Self {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: u64, f: &FiniteField) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        if f.is_prime_field() && f.p() < (1 << 31) {
            // accumulate in u64 and reduce lazily
            let p = f.p();
            let limit = u64::MAX - p * p;
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    let slot = &mut out[i + j];
                    *slot += a * b;
                    if *slot >= limit {
                        *slot %= p;
                    }
                }
            }
            for c in &mut out {
                *c %= p;
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division; `None` when `divisor` is zero.
    pub fn divrem(&self, divisor: &Self, f: &FiniteField) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let inv = f.inv(divisor.lc()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv);
            quot[i - dd] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(factor, d));
            }
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self, f: &FiniteField) -> Self {
        self.divrem(divisor, f).expect("division by zero polynomial").1
    }

    pub fn div_exact(&self, divisor: &Self, f: &FiniteField) -> Option<Self> {
        let (q, r) = self.divrem(divisor, f)?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, f: &FiniteField) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(f.inv(self.lc()).unwrap(), f)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self, f: &FiniteField) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self, f: &FiniteField) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lc()).unwrap();
        (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f))
    }

    pub fn derivative(&self, f: &FiniteField) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_i64((i as u64 % f.p()) as i64)))
            .collect();
        Self::from_coeffs(c)
    }

    pub fn powmod(&self, e: u64, modulus: &Self, f: &FiniteField) -> Self {
        let mut base = self.rem(modulus, f);
        let mut acc = Self::one().rem(modulus, f);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            e >>= 1;
        }
        acc
    }

    pub fn powmod_big(&self, e: &BigUint, modulus: &Self, f: &FiniteField) -> Self {
        let mut acc = Self::one().rem(modulus, f);
        let base = self.rem(modulus, f);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc, f).rem(modulus, f);
            if e.bit(i) {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64, f: &FiniteField) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &FiniteField) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let m = self.monic(f);
        let x = Self::x();
        let prime_divisors: Vec<usize> = (2..=n)
            .filter(|&r| n % r == 0 && (2..r).all(|d| r % d != 0))
            .collect();
        let checkpoints: Vec<usize> = prime_divisors.iter().map(|r| n / r).collect();
        let mut h = x.clone();
        for i in 1..=n {
            h = h.powmod(f.q(), &m, f);
            if checkpoints.contains(&i) {
                let g = h.sub(&x, f).gcd(&m, f);
                if !g.is_one() {
                    return false;
                }
            }
        }
        h == x.rem(&m, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let f = FiniteField::prime(7).unwrap();
        let a = FqPoly::from_coeffs(vec![3, 0, 5, 1, 6]);
        let b = FqPoly::from_coeffs(vec![1, 2, 3]);
        let (q, r) = a.divrem(&b, &f).unwrap();
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn rabin_counts_degree_four_over_f2() {
        // number of monic irreducible quartics over F_2 is (16 - 4) / 4 = 3
        let f = f2();
        let count = (0..16u64)
            .filter(|&i| {
                let mut c: Vec<u64> = (0..4).map(|j| (i >> j) & 1).collect();
                c.push(1);
                FqPoly::from_coeffs(c).is_irreducible(&f)
            })
            .count();
        assert_eq!(count, 3);
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = FiniteField::prime(5).unwrap();
        let a = FqPoly::from_coeffs(vec![1, 0, 1]);
        let b = FqPoly::from_coeffs(vec![1, 1]);
        let (g, s, t) = a.ext_gcd(&b, &f);
        assert!(g.is_one());
        assert_eq!(s.mul(&a, &f).add(&t.mul(&b, &f), &f), g);
    }
}
