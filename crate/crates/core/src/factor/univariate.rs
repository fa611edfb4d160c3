//! Univariate factorization over finite fields: squarefree decomposition,
//! distinct-degree splitting, then Cantor-Zassenhaus (odd `q`) or the trace
//! map (even `q`) for equal-degree splitting.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::zpoly;
use crate::error::Result;
use crate::rings::{Elem, FiniteField, FqPoly, Ring, RingKind};

/// Seed used when a caller has no preference.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Squarefree decomposition of a monic polynomial: `(g_i, i)` with
/// `f = prod g_i^i`, each `g_i` squarefree and monic.
pub fn squarefree(f: &FqPoly, fld: &FiniteField) -> Vec<(FqPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = f.monic(fld);
    let mut c = f.gcd(&f.derivative(fld), fld);
    let mut w = f.div_exact(&c, fld).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, fld);
        let z = w.div_exact(&y, fld).unwrap();
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w, fld).unwrap();
    }
    if !c.is_one() {
        // c is a polynomial in x^p
        let p = fld.p() as usize;
        let root: Vec<u64> = c
            .coeffs
            .iter()
            .step_by(p)
            .map(|&a| fld.pth_root(a))
            .collect();
        for (g, e) in squarefree(&FqPoly::from_coeffs(root), fld) {
            out.push((g, e * fld.p() as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &FqPoly, fld: &FiniteField) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = FqPoly::x();
    let mut h = x.clone();
    let mut d = 0;
    while let Some(dg) = g.degree() {
        d += 1;
        if dg < 2 * d {
            if dg > 0 {
                out.push((g, dg));
            }
            break;
        }
        h = h.powmod(fld.q(), &g, fld);
        let fac = g.gcd(&h.sub(&x, fld), fld);
        if !fac.is_one() {
            g = g.div_exact(&fac, fld).unwrap();
            h = h.rem(&g, fld);
            out.push((fac, d));
        }
    }
    out
}

fn random_poly(deg: usize, fld: &FiniteField, rng: &mut ChaCha8Rng) -> FqPoly {
    FqPoly::from_coeffs((0..deg).map(|_| rng.gen_range(0..fld.q())).collect())
}

/// Splits a product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &FqPoly, d: usize, fld: &FiniteField, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a = random_poly(n, fld, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if fld.p() == 2 {
            // trace map a + a^2 + ... + a^(2^(k d - 1))
            let mut t = a.rem(f, fld);
            let mut acc = t.clone();
            for _ in 1..(fld.k() as usize * d) {
                t = t.mul(&t, fld).rem(f, fld);
                acc = acc.add(&t, fld);
            }
            acc
        } else {
            let e = (BigUint::from(fld.q()).pow(d as u32) - 1u32) / 2u32;
            a.powmod_big(&e, f, fld).sub(&FqPoly::one(), fld)
        };
        let g = f.gcd(&b, fld);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let h = f.div_exact(&g, fld).unwrap();
                let mut out = equal_degree(&g, d, fld, rng);
                out.extend(equal_degree(&h, d, fld, rng));
                return out;
            }
        }
    }
}

/// Complete factorization of a nonzero polynomial: leading coefficient and
/// sorted monic irreducible factors with multiplicities.
pub fn factor_fq(f: &FqPoly, fld: &FiniteField, seed: u64) -> (u64, Vec<(FqPoly, u32)>) {
    assert!(!f.is_zero(), "factor_fq(0)");
    let lc = f.lc();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FqPoly, u32)> = Vec::new();
    for (g, e) in squarefree(f, fld) {
        for (part, d) in distinct_degree(&g, fld) {
            for h in equal_degree(&part, d, fld, &mut rng) {
                out.push((h, e));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    (lc, out)
}

fn to_fq(v: &[Elem]) -> FqPoly {
    FqPoly::from_coeffs(
        v.iter()
            .map(|c| match c {
                Elem::Ff(a) => *a,
                _ => unreachable!("finite field element expected"),
            })
            .collect(),
    )
}

/// Factors a nonzero univariate polynomial (dense, lowest degree first)
/// over a field `base` (`Q` or a finite field) into its leading coefficient
/// and monic irreducible factors.
#[allow(clippy::type_complexity)]
pub fn factor_over_field(base: &Ring, v: &[Elem]) -> Result<(Elem, Vec<(Vec<Elem>, u32)>)> {
    let lc = v.last().expect("nonzero polynomial").clone();
    match base.kind() {
        RingKind::Finite(fld) => {
            let (_, fs) = factor_fq(&to_fq(v), fld, DEFAULT_SEED);
            let fs = fs
                .into_iter()
                .map(|(g, e)| (g.coeffs.into_iter().map(Elem::Ff).collect(), e))
                .collect();
            Ok((lc, fs))
        }
        RingKind::Rationals => {
            let mut den = BigInt::one();
            for c in v {
                if let Elem::Rat(r) = c {
                    den = num_integer::Integer::lcm(&den, r.denom());
                }
            }
            let ints: Vec<BigInt> = v
                .iter()
                .map(|c| match c {
                    Elem::Rat(r) => r.numer() * (&den / r.denom()),
                    _ => unreachable!(),
                })
                .collect();
            let (_, fs) = zpoly::factor_z(&ints)?;
            let fs = fs
                .into_iter()
                .map(|(g, e)| {
                    let l = g.last().unwrap().clone();
                    let monic = g
                        .iter()
                        .map(|c| Elem::Rat(BigRational::new(c.clone(), l.clone())))
                        .collect();
                    (monic, e)
                })
                .collect();
            Ok((lc, fs))
        }
        _ => unreachable!("factor_over_field needs a field"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    fn prod(fs: &[(FqPoly, u32)], fld: &FiniteField) -> FqPoly {
        fs.iter().fold(FqPoly::one(), |acc, (g, e)| {
            (0..*e).fold(acc, |a, _| a.mul(g, fld))
        })
    }

    #[test]
    fn x2_x_1_is_irreducible_over_f2() {
        let (_, fs) = factor_fq(&FqPoly::from_coeffs(vec![1, 1, 1]), &f2(), 1);
        assert_eq!(fs, vec![(FqPoly::from_coeffs(vec![1, 1, 1]), 1)]);
    }

    #[test]
    fn swan_instance() {
        // x^8 + x^3 = x^3 (x+1)(x^4+x^3+x^2+x+1)
        let mut c = vec![0u64; 9];
        c[8] = 1;
        c[3] = 1;
        let (_, fs) = factor_fq(&FqPoly::from_coeffs(c), &f2(), 7);
        assert_eq!(
            fs,
            vec![
                (FqPoly::from_coeffs(vec![0, 1]), 3),
                (FqPoly::from_coeffs(vec![1, 1]), 1),
                (FqPoly::from_coeffs(vec![1, 1, 1, 1, 1]), 1),
            ]
        );
    }

    #[test]
    fn square_over_f3() {
        let f3 = FiniteField::prime(3).unwrap();
        let (lc, fs) = factor_fq(&FqPoly::from_coeffs(vec![0, 0, 1]), &f3, 1);
        assert_eq!(lc, 1);
        assert_eq!(fs, vec![(FqPoly::x(), 2)]);
    }

    #[test]
    fn pth_power_descent() {
        // (x^2+1)^3 * (x+2)^6 over F_3 has zero derivative parts
        let f3 = FiniteField::prime(3).unwrap();
        let a = FqPoly::from_coeffs(vec![1, 0, 1]);
        let b = FqPoly::from_coeffs(vec![2, 1]);
        let f = prod(&[(a.clone(), 3), (b.clone(), 6)], &f3).scale(2, &f3);
        let (lc, fs) = factor_fq(&f, &f3, 3);
        assert_eq!(lc, 2);
        assert_eq!(fs, vec![(b, 6), (a, 3)]);
    }

    #[test]
    fn extension_field_split() {
        // x^4 - 1 splits completely over GF(5) and x^2+1 splits over GF(3^2)
        let f9 = FiniteField::extension(3, 2, None).unwrap();
        let (_, fs) = factor_fq(&FqPoly::from_coeffs(vec![1, 0, 1]), &f9, 5);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
        let f4 = FiniteField::extension(2, 2, None).unwrap();
        // x^4 + x = x (x+1)(x+t)(x+t+1) over GF(4)
        let (_, fs) = factor_fq(&FqPoly::from_coeffs(vec![0, 1, 0, 0, 1]), &f4, 5);
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn recomposition_random() {
        let fld = FiniteField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..20);
            let mut c: Vec<u64> = (0..n).map(|_| rng.gen_range(0..5)).collect();
            c.push(rng.gen_range(1..5));
            let f = FqPoly::from_coeffs(c);
            let (lc, fs) = factor_fq(&f, &fld, 9);
            assert_eq!(prod(&fs, &fld).scale(lc, &fld), f);
            assert!(fs.iter().all(|(g, _)| g.is_irreducible(&fld)));
        }
    }
}
