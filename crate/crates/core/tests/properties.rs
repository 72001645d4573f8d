use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use mvpascal::pascal::{build_l, build_l_power, build_s, build_sign_diagonal, build_u};
use mvpascal::random::{random_basis, random_small_downset, rng};
use mvpascal::riordan::{riordan_inverse, riordan_product, RiordanBasis};
use mvpascal::series::{ts_comp_inverse, ts_compose, TruncatedSeries};
use mvpascal::{check_monomial_condition, degree_window, minimal_generators, standard_monomials, MultiIndex, PointSet};

fn downset(seed: u64) -> PointSet {
    random_small_downset(&mut rng(seed), 25)
}

/// Two-variable series from a dense coefficient list over the degree window.
fn series(cap: u32, coeffs: &[i64], constant: Option<i64>) -> TruncatedSeries {
    let terms: Vec<(MultiIndex, BigRational)> = degree_window(2, cap)
        .iter()
        .zip(coeffs.iter().cycle())
        .map(|(k, &c)| {
            let c = match (k.is_zero(), constant) {
                (true, Some(v)) => v,
                _ => c,
            };
            (k.clone(), BigRational::from_integer(c.into()))
        })
        .collect();
    TruncatedSeries::from_terms(2, cap, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lu_and_inverses_on_downsets(seed in any::<u64>()) {
        let r = downset(seed);
        let (l, u, s, d) = (build_l(&r), build_u(&r), build_s(&r), build_sign_diagonal(&r));
        prop_assert_eq!(&s, &l.mul(&u).unwrap());
        prop_assert_eq!(s.determinant().unwrap(), BigInt::from(1));
        let id = build_l_power(&r, 0).unwrap();
        prop_assert_eq!(l.mul(&d.mul(&l).unwrap().mul(&d).unwrap()).unwrap(), id);
    }

    #[test]
    fn powers_compose(seed in any::<u64>(), p in -3i64..=3, q in -3i64..=3) {
        let r = downset(seed);
        let lhs = build_l_power(&r, p).unwrap().mul(&build_l_power(&r, q).unwrap()).unwrap();
        prop_assert_eq!(lhs, build_l_power(&r, p + q).unwrap());
    }

    #[test]
    fn std_and_gens_are_inverse(seed in any::<u64>()) {
        let r = downset(seed);
        prop_assert!(check_monomial_condition(r.points()).unwrap());
        let ideal = minimal_generators(&r).unwrap();
        prop_assert_eq!(standard_monomials(&ideal, None).unwrap(), r);
    }

    #[test]
    fn reciprocal_and_composition(
        a in prop::collection::vec(-3i64..=3, 1..10),
        b in prop::collection::vec(-3i64..=3, 1..10),
        c0 in prop_oneof![-3i64..=-1, 1i64..=3],
    ) {
        let cap = 4;
        let unit = series(cap, &a, Some(c0));
        let one = TruncatedSeries::one(2, cap);
        prop_assert_eq!(unit.mul(&unit.recip().unwrap()).unwrap(), one);

        // substitution is a ring map: (f·g)(X) = f(X)·g(X)
        let g = series(cap, &b, None);
        let xs = RiordanBasis::pascal(2, cap, 1).x().to_vec();
        let lhs = ts_compose(&unit.mul(&g).unwrap(), &xs).unwrap();
        let rhs = ts_compose(&unit, &xs).unwrap().mul(&ts_compose(&g, &xs).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn comp_inverse_round_trips(seed in any::<u64>()) {
        let basis = random_basis(&mut rng(seed), 2, 4);
        let inv = ts_comp_inverse(basis.x()).unwrap();
        let z: Vec<_> = (1..=2).map(|i| TruncatedSeries::z(2, 4, i)).collect();
        for (x, zi) in basis.x().iter().zip(&z) {
            prop_assert_eq!(&ts_compose(x, &inv).unwrap(), zi);
        }
    }

    #[test]
    fn riordan_group_laws(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (random_basis(&mut rng(s1), 2, 3), random_basis(&mut rng(s2), 2, 3), random_basis(&mut rng(s3), 2, 3));
        let left = riordan_product(&riordan_product(&a, &b).unwrap(), &c).unwrap();
        let right = riordan_product(&a, &riordan_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = RiordanBasis::identity(2, 3);
        prop_assert_eq!(riordan_product(&a, &riordan_inverse(&a).unwrap()).unwrap(), id);
    }
}
