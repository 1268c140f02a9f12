use hallcomb::polyring::*;
use num_bigint::BigInt;
use num_traits::One;
fn t(c: &[i64]) -> TPoly {
    TPoly::from_t_coeffs(c)
}

#[test]
fn difference_of_squares() {
    assert_eq!(t(&[1, 0, -1]) * t(&[1, 0, 1]), t(&[1, 0, 0, 0, -1]));
}

#[test]
fn exact_division() {
    assert_eq!(
        t(&[1, 0, -1]).exact_divide(&t(&[1, -1])).unwrap(),
        t(&[1, 1])
    );
    assert!(matches!(
        t(&[1, -1]).exact_divide(&t(&[1, 0, -1])),
        Err(PolyError::NotDivisible { .. })
    ));
    assert!(t(&[1, 2]).exact_divide(&t(&[2])).is_err());
    assert_eq!(t(&[2, 4]).exact_divide(&t(&[2])).unwrap(), t(&[1, 2]));
}

#[test]
fn alpha_values() {
    assert_eq!(alpha(0), TPoly::one());
    assert_eq!(alpha(1), t(&[1, -1]));
    assert_eq!(alpha(2), t(&[1, -1, -1, 1]));
    for i in 0..=20 {
        assert_eq!(alpha(i).at_zero(), BigInt::one());
        assert_eq!(alpha(i).t_coeffs().unwrap().len() - 1, i * (i + 1) / 2);
    }
}

#[test]
fn rendering() {
    assert_eq!(t(&[3, 2, -1, -1]).to_string(), "3 + 2*t - t^2 - t^3");
    assert_eq!(TPoly::zero().to_string(), "0");
    assert_eq!(t(&[0, -1]).to_string(), "-t");
    assert_eq!(
        TPoly::from_s_coeffs(vec![1.into(), 0.into(), 0.into(), (-2).into()]).to_string(),
        "1 - 2*t^(3/2)"
    );
    assert_eq!(TPoly::s_monomial(1, 1).to_string(), "t^(1/2)");
    assert_eq!(TPoly::s_monomial(1, 2).to_string(), "t");
}

#[test]
fn json_round_trip() {
    for p in [
        t(&[3, 2, -1, -1]),
        TPoly::s_monomial(5, 3),
        TPoly::zero(),
        TPoly::constant(BigInt::from(1u8) << 100),
    ] {
        let s = serde_json::to_string(&p).unwrap();
        let back: TPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
    assert_eq!(
        serde_json::to_string(&t(&[1, -1])).unwrap(),
        r#"{"var":"t","coeffs":[1,-1]}"#
    );
}

#[test]
fn ratfun_basics() {
    let a2: RatFun = alpha(2).into();
    assert_eq!(&a2.invert().unwrap() * &a2, RatFun::one());
    let r = RatFun::new(t(&[1, 0, -1]), t(&[1, -1])).unwrap();
    assert_eq!(r.to_poly().unwrap(), t(&[1, 1]));
    let r = RatFun::new(TPoly::one(), t(&[1, -1])).unwrap();
    assert!(matches!(r.to_poly(), Err(PolyError::NotPolynomial(_))));
    assert!(RatFun::zero().invert().is_err());
    assert!(RatFun::new(TPoly::one(), TPoly::zero()).is_err());
}

#[test]
fn ratfun_canonical() {
    let a = RatFun::new(t(&[-2, 2]), t(&[-4, 0, 4])).unwrap();
    assert_eq!(a.num(), &TPoly::one());
    assert_eq!(a.den(), &t(&[2, 2]));
    let half = RatFun::new(TPoly::one(), TPoly::constant(2)).unwrap();
    assert_eq!(&half + &half, RatFun::one());
}

#[test]
fn gcd_examples() {
    let g = t(&[1, 0, -1]).gcd(&t(&[1, -2, 1]));
    assert_eq!(g, t(&[-1, 1]));
    assert_eq!(t(&[4, 4]).gcd(&t(&[6])), TPoly::constant(2));
}

#[test]
fn pochhammer_negative_powers() {
    // (t^{-1}; t)_2 = (1 - t^{-1})(1 - 1) = 0
    let (num, _) = q_pochhammer_monomial(-1, 2);
    assert!(num.is_zero());
    // (t^{-2}; t)_1 = 1 - t^{-2} = (t^2 - 1) t^{-2}
    let (num, shift) = q_pochhammer_monomial(-2, 1);
    assert_eq!((num, shift), (t(&[-1, 0, 1]), 2));
}
