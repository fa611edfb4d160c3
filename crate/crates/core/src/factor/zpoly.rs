//! Univariate factorization over `Z`: squarefree decomposition, factoring
//! modulo a small prime, linear Hensel lifting past a Mignotte-style bound,
//! then subset recombination with trial division.
//!
//! Polynomials are dense `Vec<BigInt>`, lowest degree first, trimmed.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::univariate::factor_fq;
use crate::error::{Error, Result};
use crate::rings::integer::primes_from;
use crate::rings::{FiniteField, FqPoly};

type ZPoly = Vec<BigInt>;

/// Largest subset size tried during recombination.
pub const MAX_SUBSET: usize = 6;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn deg(v: &[BigInt]) -> usize {
    v.len().saturating_sub(1)
}

fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn primitive(a: &[BigInt]) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return vec![];
    }
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

fn derivative(a: &[BigInt]) -> ZPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Exact quotient over `Z`, if any.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let lb = b.last()?;
    if a.is_empty() {
        return Some(vec![]);
    }
    if a.len() < b.len() {
        return None;
    }
    let db = deg(b);
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (c, r) = rem[i].div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(q))
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = deg(b);
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r.last().unwrap().clone();
        let mut shifted = vec![BigInt::zero(); dr - db];
        shifted.extend(b.iter().map(|c| c * &lr));
        r = sub(&scale(&r, lb), &shifted);
    }
    r
}

/// Primitive gcd with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    scale(&x, &c)
}

/// Yun's squarefree decomposition of a primitive polynomial with positive
/// leading coefficient.
fn squarefree(f: &[BigInt]) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    if deg(f) == 0 {
        return out;
    }
    let df = derivative(f);
    let a0 = gcd(f, &df);
    let mut b = div_exact(f, &a0).unwrap();
    let mut c = div_exact(&df, &a0).unwrap();
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while deg(&b) > 0 {
        let a = gcd(&b, &d);
        b = div_exact(&b, &a).unwrap();
        c = div_exact(&d, &a).unwrap();
        d = sub(&c, &derivative(&b));
        if deg(&a) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn to_fp(f: &[BigInt], fld: &FiniteField) -> FqPoly {
    FqPoly::from_coeffs(f.iter().map(|c| fld.from_bigint(c)).collect())
}

fn from_fp(g: &FqPoly) -> ZPoly {
    g.coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_sym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f ≡ g*h (mod p)`, `g` monic and coprime to `h`, to `mod p^k`.
fn hensel_pair(f: &[BigInt], g: &FqPoly, h: &FqPoly, fld: &FiniteField, k: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fld.p());
    let (one, s, t) = g.ext_gcd(h, fld);
    debug_assert!(one.is_one());
    let _ = s;
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut m = p.clone();
    for _ in 1..k {
        let diff = sub(f, &mul(&gz, &hz));
        let e: ZPoly = diff.iter().map(|c| c / &m).collect();
        let e = to_fp(&e, fld);
        let dg = t.mul(&e, fld).rem(g, fld);
        let dh = e
            .sub(&dg.mul(h, fld), fld)
            .div_exact(g, fld)
            .expect("Hensel step divides");
        gz = add(&gz, &scale(&from_fp(&dg), &m));
        hz = add(&hz, &scale(&from_fp(&dh), &m));
        m *= &p;
    }
    (gz, hz)
}

fn mignotte_exponent(f: &[BigInt], p: u64) -> u32 {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << deg(f)) * (norm2.sqrt() + 1u32) * f.last().unwrap().abs();
    let twice = bound * 2u32;
    let p = BigInt::from(p);
    let mut k = 1;
    let mut pk = p.clone();
    while pk <= twice {
        pk *= &p;
        k += 1;
    }
    k
}

/// Irreducible factors of a squarefree primitive polynomial with positive
/// leading coefficient and degree at least 1.
fn factor_squarefree(f: &[BigInt]) -> Result<Vec<ZPoly>> {
    if deg(f) <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let lc = f.last().unwrap().clone();
    let mut best: Option<(FiniteField, Vec<FqPoly>)> = None;
    let mut tried = 0;
    for p in primes_from(3) {
        if tried >= 5 || p > 10_000 {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fld = FiniteField::prime(p).unwrap();
        let fp = to_fp(f, &fld);
        if !fp.gcd(&fp.derivative(&fld), &fld).is_one() {
            continue;
        }
        tried += 1;
        let (_, fs) = factor_fq(&fp, &fld, p);
        if fs.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        let fs: Vec<FqPoly> = fs.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().map_or(true, |(_, b)| fs.len() < b.len()) {
            best = Some((fld, fs));
        }
    }
    let (fld, modular) = best.ok_or_else(|| {
        Error::BudgetExceeded("no suitable prime below 10000 for Hensel lifting".into())
    })?;

    let k = mignotte_exponent(f, fld.p());
    let pk = BigInt::from(fld.p()).pow(k);

    // sequential lifting of the modular factors
    let lcp = fld.from_bigint(&lc);
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest: ZPoly = f.to_vec();
    for i in 0..modular.len() - 1 {
        let h = modular[i + 1..]
            .iter()
            .fold(FqPoly::constant(lcp), |acc, g| acc.mul(g, &fld));
        let (g, hz) = hensel_pair(&rest, &modular[i], &h, &fld, k);
        lifted.push(mod_sym(&g, &pk));
        rest = mod_sym(&hz, &pk);
    }
    let inv = mod_inv(rest.last().unwrap(), &pk);
    lifted.push(mod_sym(&scale(&rest, &inv), &pk));

    recombine(f, lifted, &pk)
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, pk: &BigInt) -> Result<Vec<ZPoly>> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        if s > MAX_SUBSET {
            return Err(Error::BudgetExceeded(format!(
                "{} modular factors remain after subsets of size {MAX_SUBSET}",
                lifted.len()
            )));
        }
        let lc = f.last().unwrap().clone();
        let target0 = &lc * &f[0];
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let mut g = vec![lc.clone()];
            for &i in &idx {
                g = mod_sym(&mul(&g, &lifted[i]), pk);
            }
            let plausible = g[0].is_zero() || (&target0 % &g[0]).is_zero();
            if plausible {
                let cand = primitive(&g);
                if let Some(q) = div_exact(&f, &cand) {
                    out.push(cand);
                    f = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    if deg(&f) > 0 {
        out.push(primitive(&f));
    }
    Ok(out)
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factors a nonzero polynomial over `Z` into a signed content and
/// primitive irreducible factors (positive leading coefficients), sorted by
/// degree and then coefficients.
#[allow(clippy::type_complexity)]
pub fn factor_z(f: &[BigInt]) -> Result<(BigInt, Vec<(ZPoly, u32)>)> {
    let f = trim(f.to_vec());
    if f.is_empty() {
        return Err(Error::ZeroInput("factor_univariate_integers"));
    }
    let mut c = content(&f);
    if f.last().unwrap().sign() == Sign::Minus {
        c = -c;
    }
    let mut g: ZPoly = f.iter().map(|x| x / &c).collect();
    let mut out: Vec<(ZPoly, u32)> = Vec::new();
    let zeros = g.iter().take_while(|x| x.is_zero()).count();
    if zeros > 0 {
        out.push((vec![BigInt::zero(), BigInt::one()], zeros as u32));
        g.drain(..zeros);
    }
    for (part, e) in squarefree(&g) {
        for h in factor_squarefree(&part)? {
            out.push((h, e));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok((c, out))
}
