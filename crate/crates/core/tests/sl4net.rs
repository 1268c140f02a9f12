use hallcomb::honeycomb::structure_constant;
use hallcomb::partition::enumerate_pkn;
use hallcomb::sl4net::{
    associativity_sum, check_double_puzzle_raw, check_double_puzzle_tuple, check_double_puzzles,
    check_dual_tetra, check_octa, check_tetra, contract, dd_value, double_puzzle,
    dual_tetra_networks, dual_tetra_pair_product, pairing_value, tetra_networks, tetra_special,
    triangle_entry, uu_value, EdgeType, PairingDirection, Side, Sl4Label,
};
use hallcomb::{alpha, Partition, RatFun, TPoly};

fn label(ty: EdgeType, values: &[u32]) -> Sl4Label {
    Sl4Label::from_entries(ty, values)
}

fn p(parts: &[usize], k: usize, n: usize) -> Partition {
    Partition::new(parts, k, n).unwrap()
}

fn all_labels(ty: EdgeType, bound: u32) -> Vec<Sl4Label> {
    let len = ty.entries().len();
    let mut out = Vec::new();
    let total = (bound + 1).pow(len as u32);
    for mut code in 0..total {
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            values.push(code % (bound + 1));
            code /= bound + 1;
        }
        out.push(label(ty, &values));
    }
    out
}

#[test]
fn edge_types() {
    let t = EdgeType::pair(3);
    assert_eq!(t.to_string(), "V_30");
    assert_eq!(t.complement(), EdgeType::pair(1));
    assert_eq!(
        EdgeType::pair(2).entries(),
        vec![(0, 2), (0, 3), (1, 2), (1, 3)]
    );
    assert_eq!(EdgeType::single(1).entries(), vec![(0, 1), (2, 1), (3, 1)]);
    assert_eq!(EdgeType::single(3).shift(2), EdgeType::single(1));
}

#[test]
fn weight_of_shift_is_shifted_weight() {
    for l in all_labels(EdgeType::pair(2), 2) {
        let w = l.weight();
        let s = l.shift(1).weight();
        for x in 0..4 {
            assert_eq!(s[(x + 1) % 4], w[x]);
        }
        assert_eq!(w.iter().sum::<i64>(), 0);
    }
}

#[test]
fn vertices_are_z4_covariant() {
    for a in 0..4 {
        let b = (a + 1) % 4;
        for x in all_labels(EdgeType::single(a), 1) {
            for y in all_labels(EdgeType::single(a + 1), 1) {
                for out in all_labels(EdgeType::pair(a), 1) {
                    let v = dd_value(a, &x, &y, &out).unwrap();
                    let w = dd_value(b, &x.shift(1), &y.shift(1), &out.shift(1)).unwrap();
                    assert_eq!(v, w);
                    let u = uu_value(a, &out, &y, &x).unwrap();
                    let u1 = uu_value(b, &out.shift(1), &y.shift(1), &x.shift(1)).unwrap();
                    assert_eq!(u, u1);
                }
            }
        }
    }
}

#[test]
fn vertices_conserve_weight() {
    let a = 2;
    for x in all_labels(EdgeType::single(a), 2) {
        for y in all_labels(EdgeType::single(a + 1), 2) {
            for out in all_labels(EdgeType::pair(a), 2) {
                let (wx, wy, wo) = (x.weight(), y.weight(), out.weight());
                let balanced = (0..4).all(|i| wx[i] + wy[i] == wo[i]);
                if !dd_value(a, &x, &y, &out).unwrap().is_zero() {
                    assert!(balanced, "{x} {y} {out}");
                }
                if !uu_value(a, &out, &y, &x).unwrap().is_zero() {
                    assert!(balanced, "{out} {y} {x}");
                }
            }
        }
    }
}

#[test]
fn vertex_types_are_checked() {
    let x = Sl4Label::zero(EdgeType::single(0));
    let out = Sl4Label::zero(EdgeType::pair(2));
    assert!(dd_value(2, &x, &x, &out).is_err());
    assert!(pairing_value(&out, &out, PairingDirection::Create).is_err());
}

#[test]
fn pairing_values() {
    let x = label(EdgeType::pair(2), &[1, 0, 2, 0]);
    let y = label(EdgeType::pair(0), &[1, 2, 0, 0]);
    let cap = pairing_value(&x, &y, PairingDirection::Annihilate).unwrap();
    assert_eq!(cap, RatFun::from(alpha(1) * alpha(2)));
    let cup = pairing_value(&x, &y, PairingDirection::Create).unwrap();
    assert_eq!(cup * cap, RatFun::one());
    let z = label(EdgeType::pair(0), &[1, 0, 0, 2]);
    assert!(pairing_value(&x, &z, PairingDirection::Annihilate)
        .unwrap()
        .is_zero());
}

#[test]
fn dual_tetra_example() {
    let (lhs, rhs) = dual_tetra_networks();
    // a_{xy} = a_{yx} = 1 for every pair
    let ext: Vec<Sl4Label> = (0..4)
        .map(|a| label(EdgeType::single(a), &[1, 1, 1]))
        .collect();
    let product = alpha(1).pow(6);
    assert_eq!(dual_tetra_pair_product(&ext), product);
    // the two down vertices contribute t^{a02 a13}
    let expected = RatFun::from(TPoly::t_pow(1) * product);
    assert_eq!(contract(&lhs, &ext).unwrap(), expected);
    assert_eq!(contract(&rhs, &ext).unwrap(), expected);
}

#[test]
fn dual_tetra_single_pair() {
    let (lhs, rhs) = dual_tetra_networks();
    let ext = vec![
        label(EdgeType::single(0), &[1, 0, 0]),
        label(EdgeType::single(1), &[1, 0, 0]),
        Sl4Label::zero(EdgeType::single(2)),
        Sl4Label::zero(EdgeType::single(3)),
    ];
    assert_eq!(contract(&lhs, &ext).unwrap(), alpha(1).into());
    assert_eq!(contract(&rhs, &ext).unwrap(), alpha(1).into());
    let zero: Vec<Sl4Label> = (0..4)
        .map(|a| Sl4Label::zero(EdgeType::single(a)))
        .collect();
    assert_eq!(contract(&lhs, &zero).unwrap(), RatFun::one());
}

#[test]
fn contract_rejects_wrong_externals() {
    let (lhs, _) = dual_tetra_networks();
    assert!(contract(&lhs, &[]).is_err());
}

#[test]
fn dual_tetra_sweep() {
    let report = check_dual_tetra(2).unwrap();
    assert!(report.checked > 0);
    assert!(report.passed(), "{report:?}");
    // the bare product misses the power of t whenever a02 a13 > 0
    assert!(report.secondary_failed > 0);
}

#[test]
fn octa_sweep() {
    let report = check_octa(1).unwrap();
    assert!(report.checked > 0);
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.secondary_failed, 0, "{report:?}");
}

#[test]
fn tetra_sweep() {
    let report = check_tetra(1).unwrap();
    assert!(report.checked > 0);
    assert!(report.passed(), "{report:?}");
}

#[test]
fn tetra_all_ones() {
    let expected =
        RatFun::from(TPoly::from_t_coeffs(&[1, -1]).pow(2) * TPoly::from_t_coeffs(&[1, -1, 1]));
    assert_eq!(tetra_special(1, 1, 1, 1), expected.clone());
    let (lhs, _) = tetra_networks();
    // V_3, V_2, V_1, V_0 with a02 = a13 = a20 = a31 = 1
    let ext = vec![
        label(EdgeType::single(3), &[0, 1, 0]),
        label(EdgeType::single(2), &[1, 0, 0]),
        label(EdgeType::single(1), &[0, 0, 1]),
        label(EdgeType::single(0), &[0, 1, 0]),
    ];
    let value = contract(&lhs, &ext).unwrap() * RatFun::from(alpha(1).pow(4));
    assert_eq!(value, expected);
}

#[test]
fn triangle_is_a_structure_constant() {
    let all = enumerate_pkn(2, 2);
    for lam in &all {
        for mu in &all {
            for nu in &all {
                let t = triangle_entry(lam, mu, nu).unwrap();
                assert_eq!(t, structure_constant(lam, mu, nu).into(), "{lam} {mu} {nu}");
            }
        }
    }
}

#[test]
fn double_puzzles_small() {
    let report = check_double_puzzles(2, 2);
    assert_eq!(report.checked, enumerate_pkn(2, 2).len().pow(4));
    assert!(report.passed(), "{report:?}");
    assert!(report.secondary_failed > 0);
}

#[test]
fn double_puzzle_example() {
    let q = |parts: &[usize]| p(parts, 3, 3);
    let rho = q(&[2, 1, 1]);
    let h = alpha(0) * alpha(2) * alpha(1);
    assert_eq!(h, rho.h_factor());
    let sum = TPoly::from_t_coeffs(&[2, 2, 1]);
    let (l, m, v) = (q(&[1]), q(&[1]), q(&[1, 1]));
    for side in [Side::L, Side::R] {
        assert_eq!(associativity_sum(side, &l, &m, &v, &rho), sum);
        let value = double_puzzle(side, &l, &m, &v, &rho);
        assert_eq!(value, RatFun::from(sum.clone()).div_poly(&h).unwrap());
        assert_ne!(value, RatFun::from(&h * &sum));
    }
    assert!(check_double_puzzle_tuple(&l, &m, &v, &rho).passed());
}

#[test]
fn raw_double_puzzles() {
    for k in 1..=2 {
        let report = check_double_puzzle_raw(k, 2).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
