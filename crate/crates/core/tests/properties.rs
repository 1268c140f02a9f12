use hallcomb::fugacity::{u_upper, vertex_fugacity, VertexLabels};
use hallcomb::honeycomb::{enumerate, structure_constant, HoneycombGrid};
use hallcomb::partition::enumerate_pkn;
use hallcomb::sl4net::{dd_value, uu_value, EdgeType, Sl4Label};
use hallcomb::{Partition, TPoly};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = TPoly> {
    prop::collection::vec(-5i64..=5, 0..6).prop_map(|c| TPoly::from_t_coeffs(&c))
}

/// Balanced labels from `(i, j, i', j', i'')`, when `j''` comes out
/// nonnegative.
fn balanced() -> impl Strategy<Value = VertexLabels> {
    (0usize..4, 0usize..4, 0usize..4, 0usize..4, 0usize..4).prop_filter_map(
        "unbalanced",
        |(i, j, ip, jp, ipp)| {
            (0..8)
                .map(|jpp| VertexLabels::new(i, j, ip, jp, ipp, jpp))
                .find(VertexLabels::is_balanced)
        },
    )
}

fn partition(k: usize, n: usize) -> impl Strategy<Value = Partition> {
    let all = enumerate_pkn(k, n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn label(ty: EdgeType) -> impl Strategy<Value = Sl4Label> {
    prop::collection::vec(0u32..3, ty.entries().len())
        .prop_map(move |v| Sl4Label::from_entries(ty, &v))
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn gcd_divides(a in poly(), b in poly()) {
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(a.exact_divide(&g).is_ok());
            prop_assert!(b.exact_divide(&g).is_ok());
        }
    }

    #[test]
    fn star_is_an_involution(lam in partition(4, 5)) {
        prop_assert_eq!(lam.star().star(), lam.clone());
        prop_assert_eq!(lam.star().h_factor(), lam.h_factor());
        prop_assert_eq!(lam.star().size() + lam.size(), lam.k() * (lam.n() - 1));
    }

    #[test]
    fn u_upper_is_dihedral(v in balanced()) {
        let base = u_upper(&v).unwrap();
        for w in v.d6_orbit() {
            prop_assert_eq!(u_upper(&w).unwrap(), base.clone());
        }
        prop_assert_eq!(vertex_fugacity(&v).unwrap().at_zero(), 1.into());
    }

    #[test]
    fn structure_constants_commute(
        lam in partition(3, 4),
        mu in partition(3, 4),
        nu in partition(3, 4),
    ) {
        prop_assert_eq!(structure_constant(&lam, &mu, &nu), structure_constant(&mu, &lam, &nu));
    }

    #[test]
    fn honeycombs_round_trip(
        lam in partition(3, 4),
        mu in partition(3, 4),
        nu in partition(3, 4),
    ) {
        for g in enumerate(&lam, &mu, Some(&nu)) {
            let back = HoneycombGrid::from_text(&g.to_text(), 3).unwrap();
            prop_assert_eq!(&back, &g);
            let b = g.validate().unwrap();
            prop_assert_eq!((b.lam, b.mu, b.nu), (lam.clone(), mu.clone(), nu.clone()));
        }
    }

    #[test]
    fn sl4_vertices_are_covariant(
        a in 0usize..4,
        x in label(EdgeType::single(0)),
        y in label(EdgeType::single(1)),
        z in label(EdgeType::pair(0)),
    ) {
        // place the labels at base a, then compare with base a + 1
        let (x, y, z) = (x.shift(a), y.shift(a), z.shift(a));
        let b = (a + 1) % 4;
        prop_assert_eq!(
            dd_value(a, &x, &y, &z).unwrap(),
            dd_value(b, &x.shift(1), &y.shift(1), &z.shift(1)).unwrap()
        );
        prop_assert_eq!(
            uu_value(a, &z, &y, &x).unwrap(),
            uu_value(b, &z.shift(1), &y.shift(1), &x.shift(1)).unwrap()
        );
    }
}
