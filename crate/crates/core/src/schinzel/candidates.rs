//! Enumeration of the coefficient box `Pol_{R,n,d}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MultiPoly, VarSet};
use crate::rings::{Elem, Ring, RingKind};

/// Largest number of distinct coefficient values per slot.
const MAX_VALUES: u64 = 1 << 20;

/// `0, 1, -1, 2, -2, ...`
pub fn spiral(i: u64) -> i64 {
    if i % 2 == 1 {
        (i / 2 + 1) as i64
    } else {
        -((i / 2) as i64)
    }
}

/// The `i`-th element of an infinite enumeration of `R` (or of `F_q`
/// for `i < q`), small elements first.
pub fn ring_element(ring: &Ring, i: u64) -> Elem {
    match ring.kind() {
        RingKind::Integers | RingKind::Rationals => ring.from_i64(spiral(i)),
        RingKind::Finite(_) => Elem::Ff(i),
        RingKind::UPoly(base) => {
            let radix = match base.kind() {
                RingKind::Finite(f) => f.q(),
                _ => 5,
            };
            let mut coeffs = Vec::new();
            let mut k = i;
            while k > 0 {
                let d = k % radix;
                coeffs.push(match base.kind() {
                    RingKind::Finite(_) => Elem::Ff(d),
                    _ => base.from_i64(spiral(d)),
                });
                k /= radix;
            }
            ring.from_u_coeffs(coeffs).unwrap()
        }
    }
}

/// Monomials of the box `deg_{x_i} <= d_i`, graded-lex largest first.
pub fn box_monomials(d: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Monomial(vec![])];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=di).map(move |e| {
                    let mut v = m.0.clone();
                    v.push(e);
                    Monomial(v)
                })
            })
            .collect();
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Coefficient values for one slot, ordered by layer, with
/// `layer_ends[L]` = number of values of layer at most `L`.
fn slot_values(ring: &Ring, bound: u64, deg_u: u32) -> Result<(Vec<Elem>, Vec<u64>)> {
    fn integers(ring: &Ring, bound: u64) -> (Vec<Elem>, Vec<u64>) {
        let vals = (0..=2 * bound).map(|i| ring.from_i64(spiral(i))).collect();
        let ends = (0..=bound).map(|l| 2 * l + 1).collect();
        (vals, ends)
    }
    match ring.kind() {
        RingKind::Integers | RingKind::Rationals => Ok(integers(ring, bound)),
        RingKind::Finite(f) => Ok(((0..f.q()).map(Elem::Ff).collect(), vec![1, f.q()])),
        RingKind::UPoly(base) => {
            let (bvals, bends) = match base.kind() {
                RingKind::Finite(f) => ((0..f.q()).map(Elem::Ff).collect(), vec![1, f.q()]),
                _ => integers(base, bound),
            };
            let slots = deg_u as usize + 1;
            let total = (bvals.len() as u64)
                .checked_pow(slots as u32)
                .filter(|&t| t <= MAX_VALUES)
                .ok_or_else(|| Error::TooLarge(format!("{} coefficient values", ring)))?;
            let layer_of = |i: u64| bends.iter().position(|&e| i < e).unwrap();
            let mut tagged: Vec<(usize, usize, Vec<u64>)> = (0..total)
                .map(|mut k| {
                    let digits: Vec<u64> = (0..slots)
                        .map(|_| {
                            let d = k % bvals.len() as u64;
                            k /= bvals.len() as u64;
                            d
                        })
                        .collect();
                    // u-degree first, then the largest coefficient layer
                    let deg = digits.iter().rposition(|&d| d != 0).map_or(0, |p| p + 1);
                    let layer = digits.iter().map(|&d| layer_of(d)).max().unwrap();
                    (deg, layer, digits)
                })
                .collect();
            tagged.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            let mut ends = Vec::new();
            let mut vals = Vec::with_capacity(tagged.len());
            for (k, (deg, layer, digits)) in tagged.iter().enumerate() {
                if k > 0 && (tagged[k - 1].0, tagged[k - 1].1) != (*deg, *layer) {
                    ends.push(k as u64);
                }
                let coeffs = digits.iter().map(|&d| bvals[d as usize].clone()).collect();
                vals.push(ring.from_u_coeffs(coeffs).unwrap());
            }
            ends.push(vals.len() as u64);
            Ok((vals, ends))
        }
    }
}

/// The box of candidates `(M_1, ..., M_m)`, each supported on `slots`.
#[derive(Clone, Debug)]
pub struct CandidateBox {
    ring: Ring,
    vars: VarSet,
    slots: Vec<Monomial>,
    copies: usize,
    values: Vec<Elem>,
    layer_ends: Vec<u64>,
}

impl CandidateBox {
    /// `slots` must be nonempty; `bound` applies over `Z`, `Q` and `Q[u]`,
    /// `deg_u` over `k[u]`.
    pub fn new(
        ring: &Ring,
        vars: &VarSet,
        mut slots: Vec<Monomial>,
        copies: usize,
        bound: u64,
        deg_u: u32,
    ) -> Result<CandidateBox> {
        slots.sort_by(|a, b| b.cmp(a));
        slots.dedup();
        let (values, layer_ends) = slot_values(ring, bound, deg_u)?;
        Ok(CandidateBox {
            ring: ring.clone(),
            vars: vars.clone(),
            slots,
            copies,
            values,
            layer_ends,
        })
    }

    pub fn slots(&self) -> &[Monomial] {
        &self.slots
    }

    fn digits(&self) -> usize {
        self.slots.len() * self.copies
    }

    /// Number of candidates, if it fits in `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.values.len() as u128).checked_pow(self.digits() as u32)
    }

    fn layer_count(&self, a: u128, b: u128) -> Option<u128> {
        let d = self.digits() as u32;
        b.checked_pow(d)?.checked_sub(a.checked_pow(d)?)
    }

    /// Candidate number `index` in the exhaustive order: layer by layer
    /// (max-norm for integers, `u`-degree for `k[u]`), and within a layer
    /// the first slot (largest monomial) changes fastest.
    pub fn exhaustive(&self, mut index: u128) -> Option<Vec<MultiPoly>> {
        let d = self.digits();
        let mut a: u128 = 0;
        for &end in &self.layer_ends {
            let b = end as u128;
            let count = self.layer_count(a, b)?;
            if index < count {
                // group by the most significant digit lying in the top layer
                for k in 0..d {
                    let g = b
                        .checked_pow(k as u32)?
                        .checked_mul(b - a)?
                        .checked_mul(a.checked_pow((d - 1 - k) as u32)?)?;
                    if index < g {
                        let mut t = vec![0u64; d];
                        let mut j = index;
                        for x in t.iter_mut().take(k) {
                            *x = (j % b) as u64;
                            j /= b;
                        }
                        t[k] = (a + j % (b - a)) as u64;
                        j /= b - a;
                        for x in t.iter_mut().skip(k + 1) {
                            *x = (j % a) as u64;
                            j /= a;
                        }
                        return Some(self.assemble(&t));
                    }
                    index -= g;
                }
                unreachable!();
            }
            index -= count;
            a = b;
        }
        None
    }

    /// Candidate drawn uniformly from the box by stream `index` of `seed`.
    pub fn random(&self, seed: u64, index: u64) -> Vec<MultiPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let n = self.values.len() as u64;
        let t: Vec<u64> = (0..self.digits()).map(|_| rng.gen_range(0..n)).collect();
        self.assemble(&t)
    }

    fn assemble(&self, t: &[u64]) -> Vec<MultiPoly> {
        t.chunks(self.slots.len())
            .map(|chunk| {
                MultiPoly::from_terms(
                    &self.ring,
                    &self.vars,
                    self.slots
                        .iter()
                        .zip(chunk)
                        .map(|(m, &k)| (m.clone(), self.values[k as usize].clone())),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn spiral_order() {
        let v: Vec<i64> = (0..7).map(spiral).collect();
        assert_eq!(v, vec![0, 1, -1, 2, -2, 3, -3]);
    }

    #[test]
    fn exhaustive_order_is_a_bijection() {
        let z = Ring::integers();
        let vars = VarSet::x(1);
        let b = CandidateBox::new(&z, &vars, box_monomials(&[2]), 1, 2, 0).unwrap();
        assert_eq!(b.size(), Some(125));
        let all: Vec<String> = (0..125).map(|i| b.exhaustive(i).unwrap()[0].to_string()).collect();
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 125);
        assert_eq!(all[0], "0");
        assert_eq!(all[1], "x^2");
        assert_eq!(all[2], "-x^2");
        assert!(b.exhaustive(125).is_none());
        // coefficients in {-1, 0, 1} come before anything with a 2
        let small = |i: u128| {
            b.exhaustive(i).unwrap()[0]
                .terms()
                .values()
                .all(|c| matches!(c, Elem::Int(n) if n.magnitude() <= &1u32.into()))
        };
        assert!((0..27).all(small));
        assert!(!(27..125).any(small));
    }

    #[test]
    fn finite_and_ku_boxes() {
        let f3 = Ring::prime_field(3).unwrap();
        let b = CandidateBox::new(&f3, &VarSet::x(2), box_monomials(&[1, 1]), 2, 1, 0).unwrap();
        assert_eq!(b.size(), Some(3u128.pow(8)));
        let f2u = Ring::parse("GF(2)[u]").unwrap();
        let b = CandidateBox::new(&f2u, &VarSet::x(1), box_monomials(&[1]), 1, 1, 2).unwrap();
        assert_eq!(b.size(), Some(64));
        let all: HashSet<String> = (0..64).map(|i| b.exhaustive(i).unwrap()[0].to_string()).collect();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn random_is_deterministic() {
        let z = Ring::integers();
        let b = CandidateBox::new(&z, &VarSet::x(1), box_monomials(&[3]), 1, 5, 0).unwrap();
        assert_eq!(b.random(7, 11), b.random(7, 11));
    }

    #[test]
    fn ring_elements() {
        let f2u = Ring::parse("GF(2)[u]").unwrap();
        let v: Vec<String> = (0..4).map(|i| f2u.format(&ring_element(&f2u, i))).collect();
        assert_eq!(v, vec!["0", "1", "u", "u + 1"]);
    }
}
