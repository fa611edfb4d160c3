//! Chinese remaindering in `k[x̄]` for pairwise comaximal moduli.

use crate::error::{Error, Result};
use crate::multipoly::{poly_gcd, Monomial, MultiPoly};

fn lc_in(f: &MultiPoly, v: usize) -> (u32, MultiPoly) {
    let (e, c) = f.coefficients_in(v).into_iter().next_back().expect("nonzero");
    (e, c)
}

fn x_pow(f: &MultiPoly, v: usize, e: u32) -> MultiPoly {
    let mut m = vec![0; f.vars().len()];
    m[v] = e;
    MultiPoly::monomial(f.ring(), f.vars(), Monomial(m), f.ring().one())
}

/// `(c, q, r)` with `c*f = q*g + r` and `deg_v r < deg_v g`, where `c` is a
/// power of the leading coefficient of `g` in `x_v`.
fn pseudo_divrem(f: &MultiPoly, g: &MultiPoly, v: usize) -> (MultiPoly, MultiPoly, MultiPoly) {
    let (dg, lg) = lc_in(g, v);
    let one = MultiPoly::one(f.ring(), f.vars());
    let (mut c, mut q, mut r) = (one, MultiPoly::zero(f.ring(), f.vars()), f.clone());
    while !r.is_zero() && r.pdeg(v) >= dg {
        let (dr, lr) = lc_in(&r, v);
        let t = &lr * &x_pow(f, v, dr - dg);
        r = &(&lg * &r) - &(&t * g);
        q = &(&lg * &q) + &t;
        c = &c * &lg;
    }
    (c, q, r)
}

fn strip_common(r: &mut MultiPoly, s: &mut MultiPoly, t: &mut MultiPoly) -> Result<()> {
    let mut g = r.clone();
    for h in [&*s, &*t] {
        if !h.is_zero() {
            g = poly_gcd(&g, h)?;
        }
    }
    if !g.is_constant() {
        *r = r.div_exact(&g).expect("gcd divides");
        *s = s.div_exact(&g).expect("gcd divides");
        *t = t.div_exact(&g).expect("gcd divides");
    }
    Ok(())
}

fn bezout_in(a: &MultiPoly, b: &MultiPoly, v: usize) -> Result<Option<(MultiPoly, MultiPoly)>> {
    let ring = a.ring();
    let one = MultiPoly::one(ring, a.vars());
    let zero = MultiPoly::zero(ring, a.vars());
    let (mut r0, mut s0, mut t0) = (a.clone(), one.clone(), zero.clone());
    let (mut r1, mut s1, mut t1) = (b.clone(), zero, one);
    if r0.pdeg(v) < r1.pdeg(v) {
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
        std::mem::swap(&mut t0, &mut t1);
    }
    while r1.pdeg(v) > 0 {
        let (c, q, r) = pseudo_divrem(&r0, &r1, v);
        if r.is_zero() {
            return Ok(None);
        }
        let mut s = &(&c * &s0) - &(&q * &s1);
        let mut t = &(&c * &t0) - &(&q * &t1);
        let mut r = r;
        strip_common(&mut r, &mut s, &mut t)?;
        (r0, s0, t0) = (r1, s1, t1);
        (r1, s1, t1) = (r, s, t);
    }
    if !r1.is_constant() || r1.is_zero() {
        return Ok(None);
    }
    let inv = ring.inv(&r1.lc()).expect("field");
    Ok(Some((s1.scale(&inv), t1.scale(&inv))))
}

/// `(s, t)` with `s*a + t*b = 1`, found by a pseudo-remainder sequence in
/// one of the variables. `None` when no variable yields a constant
/// remainder, which happens whenever `(a) + (b)` is proper but may also
/// happen for comaximal pairs in several variables.
pub fn bezout_witness(a: &MultiPoly, b: &MultiPoly) -> Result<Option<(MultiPoly, MultiPoly)>> {
    a.check_compatible(b)?;
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::Unsupported(format!("{ring} is not a field")));
    }
    let zero = MultiPoly::zero(ring, a.vars());
    if a.is_constant() && !a.is_zero() {
        return Ok(Some((MultiPoly::constant(ring, a.vars(), ring.inv(&a.lc()).unwrap()), zero)));
    }
    if b.is_constant() && !b.is_zero() {
        return Ok(Some((zero, MultiPoly::constant(ring, b.vars(), ring.inv(&b.lc()).unwrap()))));
    }
    let mut vars = a.support_vars();
    vars.extend(b.support_vars());
    vars.sort();
    vars.dedup();
    for v in vars.into_iter().rev() {
        if let Some(st) = bezout_in(a, b, v)? {
            return Ok(Some(st));
        }
    }
    Ok(None)
}

/// `U_0` with `U_0 = target_i mod modulus_i`, reduced modulo the product of
/// the moduli by graded-lex division.
pub fn poly_crt(residues: &[(MultiPoly, MultiPoly)]) -> Result<MultiPoly> {
    let Some((t0, _)) = residues.first() else {
        return Err(Error::Hypothesis("no residues given".into()));
    };
    let ring = t0.ring();
    let vars = t0.vars();
    if !ring.is_field() {
        return Err(Error::Unsupported(format!("{ring} is not a field")));
    }
    let mut parts: Vec<(usize, &MultiPoly, &MultiPoly)> = Vec::new();
    for (i, (t, w)) in residues.iter().enumerate() {
        t.check_compatible(w)?;
        t.check_compatible(t0)?;
        if w.is_zero() {
            return Err(Error::ZeroInput("poly_crt modulus"));
        }
        if !w.is_constant() {
            parts.push((i, t, w));
        }
    }
    // e[k] accumulates prod_{j != k} t_kj w_j
    let mut e: Vec<MultiPoly> = vec![MultiPoly::one(ring, vars); parts.len()];
    for k in 0..parts.len() {
        for l in k + 1..parts.len() {
            let (i, _, wi) = parts[k];
            let (j, _, wj) = parts[l];
            let g = poly_gcd(wi, wj)?;
            if !g.is_constant() {
                return Err(Error::NotCoprime {
                    i,
                    j,
                    gcd: g.to_string(),
                });
            }
            let Some((s, t)) = bezout_witness(wi, wj)? else {
                return Err(Error::Hypothesis(format!(
                    "could not certify that moduli {i} and {j} generate the unit ideal"
                )));
            };
            e[k] = &e[k] * &(&t * wj);
            e[l] = &e[l] * &(&s * wi);
        }
    }
    let mut u0 = MultiPoly::zero(ring, vars);
    let mut w = MultiPoly::one(ring, vars);
    for ((_, t, m), ek) in parts.iter().zip(&e) {
        u0 = &u0 + &(*t * ek);
        w = &w * m;
    }
    Ok(u0.divrem(&w)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, VarSet};
    use crate::rings::Ring;

    #[test]
    fn two_moduli() {
        let q = Ring::rationals();
        let v = VarSet::x(1);
        let p = |s: &str| parse_poly(s, &q, &v).unwrap();
        let u = poly_crt(&[(p("1"), p("x")), (p("2"), p("x + 1"))]).unwrap();
        assert_eq!(u, p("-x + 1"));
        assert!(poly_crt(&[(p("0"), p("x")), (p("0"), p("x + 1"))]).unwrap().is_zero());
        assert_eq!(poly_crt(&[(p("x^3"), p("x^2 + 1"))]).unwrap(), p("-x"));
    }

    #[test]
    fn residues_hold_in_two_variables() {
        let q = Ring::rationals();
        let v = VarSet::x(2);
        let p = |s: &str| parse_poly(s, &q, &v).unwrap();
        let res = [(p("x2"), p("x1^2 + x2")), (p("x1"), p("x1^2 + x2 + 1"))];
        let u = poly_crt(&res).unwrap();
        for (t, w) in &res {
            assert!(w.divides(&(&u - t)), "{u} mod {w}");
        }
        // coprime but not comaximal: (x1^2 + x2, x1 - 3) = (x1 - 3, x2 + 9)
        let r = poly_crt(&[(p("x2"), p("x1^2 + x2")), (p("x1"), p("x1 - 3"))]);
        assert!(matches!(r, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn non_coprime_pair_is_reported() {
        let q = Ring::rationals();
        let v = VarSet::x(1);
        let p = |s: &str| parse_poly(s, &q, &v).unwrap();
        let r = poly_crt(&[(p("1"), p("x^2 - 1")), (p("2"), p("x + 1"))]);
        assert!(matches!(r, Err(Error::NotCoprime { i: 0, j: 1, .. })));
    }
}
