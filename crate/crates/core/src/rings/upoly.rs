//! Dense univariate polynomials in `u` over a base field, the carrier of
//! `k[u]` coefficients. Slices are lowest degree first and trimmed.

use super::{Elem, Ring};

pub(crate) fn trim(base: &Ring, mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(|c| base.is_zero(c)) {
        v.pop();
    }
    v
}

pub(crate) fn add(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let zero = base.zero();
    let v = (0..n)
        .map(|i| base.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(base, v)
}

pub(crate) fn neg(base: &Ring, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|c| base.neg(c)).collect()
}

pub(crate) fn scale(base: &Ring, a: &[Elem], c: &Elem) -> Vec<Elem> {
    trim(base, a.iter().map(|x| base.mul(x, c)).collect())
}

pub(crate) fn mul(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(x, y));
        }
    }
    trim(base, out)
}

pub(crate) fn divrem(base: &Ring, a: &[Elem], b: &[Elem]) -> Option<(Vec<Elem>, Vec<Elem>)> {
    let lb = b.last()?;
    let inv = base.inv(lb)?;
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return Some((vec![], rem));
    }
    let mut quot = vec![base.zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if base.is_zero(&rem[i]) {
            continue;
        }
        let factor = base.mul(&rem[i], &inv);
        for (j, c) in b.iter().enumerate() {
            rem[i - db + j] = base.sub(&rem[i - db + j], &base.mul(&factor, c));
        }
        quot[i - db] = factor;
    }
    rem.truncate(db);
    Some((trim(base, quot), trim(base, rem)))
}

pub(crate) fn monic(base: &Ring, a: &[Elem]) -> Vec<Elem> {
    match a.last() {
        None => vec![],
        Some(lc) => scale(base, a, &base.inv(lc).unwrap()),
    }
}

pub(crate) fn gcd(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = divrem(base, &x, &y).unwrap().1;
        x = std::mem::replace(&mut y, r);
    }
    monic(base, &x)
}

