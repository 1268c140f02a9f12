use hallcomb::hlalgebra::{
    c_cyclic, decompose_in_p, dual_p, hl_polynomial, oracle_structure_constant, pieri_multiply,
    PVector, SymPoly,
};
use hallcomb::honeycomb::{product_expansion, structure_constant};
use hallcomb::partition::enumerate_pkn;
use hallcomb::{alpha, Partition, RatFun, TPoly};

fn p(parts: &[usize], k: usize, n: usize) -> Partition {
    Partition::new(parts, k, n).unwrap()
}

fn poly(coeffs: &[i64]) -> TPoly {
    TPoly::from_t_coeffs(coeffs)
}

#[test]
fn two_variable_polynomials() {
    let p10 = hl_polynomial(&p(&[1], 2, 3)).unwrap();
    assert_eq!(p10, SymPoly::monomial_symmetric(&[1], 2));
    let p11 = hl_polynomial(&p(&[1, 1], 2, 3)).unwrap();
    assert_eq!(p11, SymPoly::monomial_symmetric(&[1, 1], 2));
    let p20 = hl_polynomial(&p(&[2], 2, 3)).unwrap();
    let expected =
        &SymPoly::monomial_symmetric(&[2], 2) + &SymPoly::monomial(vec![1, 1], poly(&[1, -1]));
    assert_eq!(p20, expected);
}

#[test]
fn leading_monomial_is_one() {
    for lam in enumerate_pkn(4, 4) {
        let f = hl_polynomial(&lam).unwrap();
        assert!(f.is_symmetric());
        assert_eq!(f.coeff(lam.parts()), TPoly::one());
        let dec = decompose_in_p(&f, 4, 4).unwrap();
        assert_eq!(dec, PVector::unit(&lam));
    }
}

#[test]
fn decompose_examples() {
    let m11 = SymPoly::monomial_symmetric(&[1, 1], 2);
    assert_eq!(
        decompose_in_p(&m11, 2, 3).unwrap(),
        PVector::unit(&p(&[1, 1], 2, 3))
    );

    let p1 = hl_polynomial(&p(&[1], 2, 3)).unwrap();
    let dec = decompose_in_p(&(&p1 * &p1), 2, 3).unwrap();
    assert_eq!(dec.len(), 2);
    assert_eq!(dec.get(&p(&[2], 2, 3)), RatFun::one());
    assert_eq!(dec.get(&p(&[1, 1], 2, 3)), poly(&[1, 1]).into());
}

#[test]
fn appendix_products() {
    let q = |parts: &[usize]| p(parts, 3, 3);
    let c = |a: &[usize], b: &[usize], d: &[usize]| {
        oracle_structure_constant(&q(a), &q(b), &q(d)).unwrap()
    };
    assert_eq!(c(&[1], &[1], &[1, 1]), poly(&[1, 1]).into());
    assert_eq!(c(&[1], &[1, 1], &[2, 1]), RatFun::one());
    assert_eq!(c(&[1], &[1, 1], &[1, 1, 1]), poly(&[1, 1, 1]).into());
    assert_eq!(c(&[2], &[1, 1], &[2, 1, 1]), RatFun::one());
    assert_eq!(c(&[1, 1], &[1, 1], &[2, 1, 1]), poly(&[1, 1]).into());
    assert_eq!(c(&[1], &[2, 1], &[2, 1, 1]), poly(&[1, 1]).into());
    assert_eq!(c(&[1], &[1, 1, 1], &[2, 1, 1]), RatFun::one());
}

#[test]
fn oracle_matches_honeycombs() {
    for (k, n) in [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let all = enumerate_pkn(k, n);
        for lam in &all {
            for mu in &all {
                for nu in &all {
                    let oracle = oracle_structure_constant(lam, mu, nu).unwrap();
                    let honey = structure_constant(lam, mu, nu);
                    assert_eq!(oracle.to_poly().unwrap(), honey, "{lam} {mu} {nu}");
                }
            }
        }
    }
}

#[test]
fn pieri_examples() {
    let e = p(&[], 2, 3);
    assert_eq!(
        pieri_multiply(&PVector::unit(&e), 1),
        PVector::unit(&p(&[1], 2, 3))
    );
    let v = pieri_multiply(&PVector::unit(&p(&[1], 2, 3)), 1);
    assert_eq!(v.get(&p(&[2], 2, 3)), RatFun::one());
    assert_eq!(v.get(&p(&[1, 1], 2, 3)), poly(&[1, 1]).into());
    let v = pieri_multiply(&PVector::unit(&p(&[1, 1], 3, 3)), 1);
    assert_eq!(v.len(), 2);
    assert_eq!(v.get(&p(&[1, 1, 1], 3, 3)), poly(&[1, 1, 1]).into());
}

#[test]
fn pieri_matches_honeycombs() {
    for (k, n) in [(2, 4), (3, 4), (4, 4), (5, 3)] {
        for lam in enumerate_pkn(k, n) {
            for r in 1..n {
                let v = pieri_multiply(&PVector::unit(&lam), r).to_polys().unwrap();
                assert_eq!(v, product_expansion(&lam, &p(&[r], k, n)));
            }
        }
    }
}

#[test]
fn pieri_operators_commute() {
    for (k, n) in [(2, 4), (3, 4), (4, 4)] {
        for lam in enumerate_pkn(k, n) {
            let u = PVector::unit(&lam);
            for r in 1..n {
                for s in 1..n {
                    assert_eq!(
                        pieri_multiply(&pieri_multiply(&u, r), s),
                        pieri_multiply(&pieri_multiply(&u, s), r)
                    );
                }
            }
        }
    }
}

#[test]
fn cyclic_invariance() {
    let all = enumerate_pkn(3, 3);
    for lam in &all {
        for mu in &all {
            for nu in &all {
                assert_eq!(c_cyclic(lam, mu, nu), c_cyclic(mu, nu, lam));
            }
        }
    }
}

#[test]
fn cyclic_examples() {
    let e = p(&[], 3, 3);
    for nu in enumerate_pkn(3, 3) {
        let expected = if nu == e.star() {
            RatFun::one().div_poly(&nu.h_factor()).unwrap()
        } else {
            RatFun::zero()
        };
        assert_eq!(c_cyclic(&e, &e, &nu), expected);
    }
    let one = p(&[1], 3, 3);
    let nu = p(&[1, 1], 3, 3).star();
    assert_eq!(
        c_cyclic(&one, &one, &nu),
        RatFun::from(poly(&[1, 1]))
            .div_poly(&nu.h_factor())
            .unwrap()
    );
}

#[test]
fn dual_basis_pairs() {
    assert_eq!(dual_p(&p(&[], 2, 2)), (alpha(2), p(&[1, 1], 2, 2)));
    assert_eq!(dual_p(&p(&[1], 2, 2)), (alpha(1) * alpha(1), p(&[1], 2, 2)));
    for lam in enumerate_pkn(3, 3) {
        let (h1, star) = dual_p(&lam);
        let (h2, back) = dual_p(&star);
        assert_eq!(back, lam);
        assert_eq!(h1 * h2, lam.h_factor() * lam.star().h_factor());
    }
}
