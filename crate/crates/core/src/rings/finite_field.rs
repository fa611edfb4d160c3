//! Prime fields and their extensions `F_p[t]/(m)`.
//!
//! Elements of `F_q`, `q = p^k`, are encoded as integers in `[0, q)` whose
//! base-`p` digits are the coefficients of the residue polynomial in `t`,
//! lowest degree first. Small extension fields multiply through log/exp
//! tables; larger ones fall back to schoolbook arithmetic on the digits.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::fq_poly::FqPoly;
use super::integer::is_prime_u64;
use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Arc<LogTables>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField(p={}, k={}, modulus={:?})", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p >= 1 << 62 {
            return Err(Error::InvalidRing(format!("prime {p} too large")));
        }
        Ok(FiniteField {
            p,
            k: 1,
            q: p,
            modulus: vec![0, 1],
            tables: None,
        })
    }

    /// `F_{p^k}`. Without an explicit modulus, uses the lexicographically
    /// smallest monic irreducible of degree `k` (coefficients compared from
    /// the constant term upward).
    pub fn extension(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        let base = Self::prime(p)?;
        if k == 1 && modulus.is_none() {
            return Ok(base);
        }
        if k < 1 {
            return Err(Error::InvalidRing("extension degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q < 1u128 << 62);
        let q = q.ok_or_else(|| Error::InvalidRing(format!("field size {p}^{k} too large")))? as u64;
        let modulus = match modulus {
            Some(m) => {
                let poly = FqPoly::from_coeffs(m.iter().map(|c| c % p).collect());
                if poly.degree() != Some(k as usize) || *poly.coeffs.last().unwrap() != 1 {
                    return Err(Error::InvalidRing(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if !poly.is_irreducible(&base) {
                    return Err(Error::InvalidRing("modulus is not irreducible".into()));
                }
                poly.coeffs
            }
            None => smallest_irreducible(&base, k),
        };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if k >= 2 && q <= TABLE_LIMIT {
            field.tables = Some(Arc::new(field.build_tables()));
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Defining polynomial of the extension, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut a = a;
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn encode(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p + d % self.p)
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// The generator `t` of the extension (or `None` for a prime field).
    pub fn generator(&self) -> Option<u64> {
        (self.k > 1).then_some(self.p)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (da, db) = (self.digits(a), self.digits(b));
            let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
            self.encode(&sum)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let d: Vec<u64> = self
                .digits(a)
                .iter()
                .map(|&x| (self.p - x) % self.p)
                .collect();
            self.encode(&d)
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] + t.log[b as usize];
            return t.exp[l as usize] as u64;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let sub = (c as u128 * self.modulus[j] as u128 % p as u128) as u64;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
            prod[i] = 0;
        }
        self.encode(&prod[..k])
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: u64, e: &BigUint) -> u64 {
        if a == 0 {
            return if e.bits() == 0 { 1 } else { 0 };
        }
        let e = e % BigUint::from(self.q - 1);
        self.pow(a, e.to_u64().unwrap())
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize];
            return Some(t.exp[((self.q - 1) as u32 - l) as usize % (self.q - 1) as usize] as u64);
        }
        Some(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// The unique `p`-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self, a: u64) -> u64 {
        self.pow(a, self.q / self.p)
    }

    /// Whether `a` is an `l`-th power in this field.
    pub fn is_power(&self, a: u64, l: u64) -> bool {
        if a == 0 {
            return true;
        }
        let g = (self.q - 1).gcd(&l);
        self.pow(a, (self.q - 1) / g) == 1
    }

    /// Residue polynomial in `t` (prime fields print as a plain residue).
    pub fn format(&self, a: u64) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut parts = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn build_tables(&self) -> LogTables {
        let order = (self.q - 1) as usize;
        for g in 2..self.q {
            let mut exp = vec![0u32; 2 * order];
            let mut x = 1u64;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().take(order).enumerate() {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *slot = x as u32;
                x = self.mul_slow(x, g);
            }
            if !ok || x != 1 {
                continue;
            }
            for i in order..2 * order {
                exp[i] = exp[i - order];
            }
            let mut log = vec![0u32; self.q as usize];
            for (i, &e) in exp.iter().take(order).enumerate() {
                log[e as usize] = i as u32;
            }
            return LogTables { exp, log };
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}

fn smallest_irreducible(base: &FiniteField, k: u32) -> Vec<u64> {
    let p = base.p();
    let total = p.pow(k);
    // index digits are read with the constant term most significant
    for idx in 0..total {
        let mut coeffs = vec![0u64; k as usize + 1];
        let mut rest = idx;
        for j in (0..k as usize).rev() {
            coeffs[j] = rest % p;
            rest /= p;
        }
        coeffs[k as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let f = FqPoly::from_coeffs(coeffs);
        if f.is_irreducible(base) {
            return f.coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        let f4 = FiniteField::extension(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // (1,0,1) precedes (1,1,0) when compared from the constant term up
        let f8 = FiniteField::extension(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1, 0, 1, 1]);
        let f9 = FiniteField::extension(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 5), (7, 3)] {
            let f = FiniteField::extension(p, k, None).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, f.q()), a, "GF({p}^{k}) element {a}");
            }
        }
    }

    #[test]
    fn tables_match_schoolbook() {
        let f = FiniteField::extension(3, 3, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), if a == 0 || b == 0 { 0 } else { f.mul_slow(a, b) });
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn large_extension_without_tables() {
        let f = FiniteField::extension(257, 3, None).unwrap();
        assert!(f.tables.is_none());
        let t = f.generator().unwrap();
        assert_eq!(f.mul(t, f.inv(t).unwrap()), 1);
        assert_eq!(f.pow(t, f.q()), t);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FiniteField::prime(9).is_err());
        assert!(FiniteField::extension(2, 2, Some(vec![1, 0, 1])).is_err());
    }

    #[test]
    fn format_in_t() {
        let f = FiniteField::extension(3, 2, None).unwrap();
        assert_eq!(f.format(f.encode(&[1, 2])), "2*t + 1");
        assert_eq!(f.format(f.encode(&[0, 1])), "t");
    }
}
