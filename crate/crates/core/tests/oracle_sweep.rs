use schinzel_core::factor::{brute_force_factor, brute_force_irreducible, factor_multivariate};
use schinzel_core::{irreducible, Elem, Monomial, MultiPoly, Ring, VarSet};

fn box22(ring: &Ring, vars: &VarSet, code: u64, q: u64) -> MultiPoly {
    let mut c = code;
    let mut terms = Vec::new();
    for i in 0..3u32 {
        for j in 0..3u32 {
            let a = c % q;
            c /= q;
            if a != 0 {
                terms.push((Monomial(vec![i, j]), Elem::Ff(a)));
            }
        }
    }
    MultiPoly::from_terms(ring, vars, terms)
}

#[test]
fn f2_box_sweep_agrees() {
    let f2 = Ring::prime_field(2).unwrap();
    let v = VarSet::x(2);
    let mut agree = 0;
    for code in 1..512 {
        let f = box22(&f2, &v, code, 2);
        let a = irreducible(&f).unwrap();
        let b = brute_force_irreducible(&f).unwrap();
        assert_eq!(a, b, "{f}");
        agree += 1;
    }
    assert_eq!(agree, 511);
}

#[test]
fn f3_box_sample_factor_counts_agree() {
    let f3 = Ring::prime_field(3).unwrap();
    let v = VarSet::x(2);
    for code in (1..3u64.pow(9)).step_by(37) {
        let f = box22(&f3, &v, code, 3);
        let fac = factor_multivariate(&f).unwrap();
        let brute = brute_force_factor(&f).unwrap();
        assert_eq!(fac.factors, brute, "{f}");
        assert_eq!(irreducible(&f).unwrap(), brute_force_irreducible(&f).unwrap(), "{f}");
    }
}
