mod common;

use common::*;
use modinv::algebra::{render_class, ExtClass, LinearSubst, Poly, WeightVector};
use modinv::chern::{
    divisibility_profile, factor_multiplicity, image_generator, obstruction_table,
    power_of_regular, regular_representation, standard_extension, total_chern, ImageCase,
    WeightMultiset,
};
use modinv::invariants::{
    dickson_classes, group_generators, is_invariant_poly, membership_dickson, moore_class,
    DicksonRing, GroupKind, Membership,
};
use modinv::Error;
use proptest::prelude::*;
use rand::Rng;

fn w(c: &modinv::algebra::Config, v: &[i64]) -> WeightVector {
    WeightVector::new(c, v).unwrap()
}

/// Sum of multiplicities over nonzero weights.
fn nontrivial_dim(rho: &WeightMultiset) -> u64 {
    rho.weights()
        .filter(|(v, _)| !v.is_zero())
        .map(|(_, m)| m)
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn whitney_sum(seed: u64, ci in 1usize..5) {
        let c = small_cfg(ci);
        let mut r = rng(seed);
        let a = random_multiset(&mut r, c, 4, 3);
        let b = random_multiset(&mut r, c, 4, 3);
        prop_assert_eq!(total_chern(&a.direct_sum(&b)), &total_chern(&a) * &total_chern(&b));
    }

    #[test]
    fn insertion_order_is_irrelevant(seed: u64, ci in 1usize..5) {
        let c = small_cfg(ci);
        let mut r = rng(seed);
        let mut items: Vec<(WeightVector, u64)> =
            (0..6).map(|_| (random_weight(&mut r, &c), r.gen_range(1..4))).collect();
        let mut a = WeightMultiset::new(c);
        for (v, m) in &items {
            a.add(v.clone(), *m);
        }
        items.reverse();
        let mut b = WeightMultiset::new(c);
        for (v, m) in &items {
            for _ in 0..*m {
                b.add(v.clone(), 1);
            }
        }
        prop_assert_eq!(total_chern(&a), total_chern(&b));
    }

    #[test]
    fn top_degree(seed: u64, ci in 1usize..5) {
        let c = small_cfg(ci);
        let rho = random_multiset(&mut rng(seed), c, 5, 3);
        let f = total_chern(&rho);
        prop_assert_eq!(f.top_degree().unwrap_or(0), 2 * nontrivial_dim(&rho));
    }

    #[test]
    fn equivariance(seed: u64, ci in 1usize..5) {
        let c = small_cfg(ci);
        let mut r = rng(seed);
        let rho = random_multiset(&mut r, c, 4, 2);
        let g = random_invertible(&mut r, c);
        prop_assert_eq!(total_chern(&rho.act(&g)), g.apply_poly(&total_chern(&rho)));
    }

    #[test]
    fn profile_recovers_multiplicities(seed: u64, ci in 1usize..5) {
        let c = small_cfg(ci);
        let rho = random_multiset(&mut rng(seed), c, 4, 3);
        let profile = divisibility_profile(&total_chern(&rho), c).unwrap();
        prop_assert_eq!(profile.len() as u64, (c.p() as u64).pow(c.n() as u32) - 1);
        for (v, mu) in &profile {
            prop_assert_eq!(*mu, rho.multiplicity(v));
        }
    }

    #[test]
    fn mu_independent_of_basis_extension(seed: u64, ci in 1usize..5) {
        let c = small_cfg(ci);
        let mut r = rng(seed);
        let rho = random_multiset(&mut r, c, 4, 3);
        let f = total_chern(&rho);
        let v = loop {
            let v = random_weight(&mut r, &c);
            if !v.is_zero() {
                break v;
            }
        };
        let standard = standard_extension(c, &v).unwrap();
        let other = loop {
            let mut rows: Vec<Vec<i64>> = vec![v.coords().iter().map(|&x| x as i64).collect()];
            for _ in 1..c.n() {
                rows.push((0..c.n()).map(|_| r.gen_range(0..c.p()) as i64).collect());
            }
            if let Ok(b) = LinearSubst::new(c, &rows) {
                break b;
            }
        };
        prop_assert_eq!(
            factor_multiplicity(&f, &v, &standard).unwrap(),
            factor_multiplicity(&f, &v, &other).unwrap()
        );
    }

    #[test]
    fn sl_stable_multisets_are_powers_of_reg(seed: u64, ci in 1usize..5) {
        let c = small_cfg(ci);
        let mut r = rng(seed);
        let a = r.gen_range(0..3);
        let b = r.gen_range(0..4);
        let rho = regular_representation(c).unwrap().repeat(a).direct_sum(&WeightMultiset::trivial(c, b));
        let sl = group_generators(c, GroupKind::SL);
        for g in sl.generators() {
            prop_assert_eq!(&rho.act(g), &rho);
        }
        let f = total_chern(&rho);
        prop_assert!(is_invariant_poly(&f, &sl));
        let profile = divisibility_profile(&f, c).unwrap();
        prop_assert!(profile.values().all(|&m| m == a));
        prop_assert_eq!(power_of_regular(&f, c).unwrap(), Some(a));
    }
}

#[test]
fn total_chern_examples() {
    let c = cfg(3, 1);
    assert_eq!(total_chern(&WeightMultiset::trivial(c, 5)), Poly::one(c));
    let reg = regular_representation(c).unwrap();
    assert_eq!(reg.dimension(), 3);
    assert_eq!(render_class(&total_chern(&reg).into()), "1 - t1^2");
    let c2 = cfg(3, 2);
    assert_eq!(regular_representation(c2).unwrap().dimension(), 9);
    let mut single = WeightMultiset::new(c2);
    single.add(w(&c2, &[1, 0]), 1);
    assert_eq!(render_class(&total_chern(&single).into()), "1 + t1");
}

#[test]
fn regular_representation_identity() {
    for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let c = cfg(p, n);
        let reg = total_chern(&regular_representation(c).unwrap());
        assert_eq!(reg, dickson_classes(c).unwrap().alternating_sum(), "{c}");
    }
}

#[test]
fn profile_examples() {
    let c = cfg(3, 1);
    let f = total_chern(&regular_representation(c).unwrap());
    let profile = divisibility_profile(&f, c).unwrap();
    assert_eq!(profile.get(&w(&c, &[1])), Some(&1));
    assert_eq!(profile.get(&w(&c, &[2])), Some(&1));

    let c = cfg(3, 2);
    let reg = total_chern(&regular_representation(c).unwrap());
    assert!(divisibility_profile(&reg.pow(3), c)
        .unwrap()
        .values()
        .all(|&m| m == 3));
    let sq = (&Poly::one(c) + &Poly::var(c, 0)).pow(2);
    let profile = divisibility_profile(&sq, c).unwrap();
    for (v, m) in profile {
        assert_eq!(m, if v == w(&c, &[1, 0]) { 2 } else { 0 });
    }
    assert_eq!(
        divisibility_profile(&Poly::var(c, 0), c),
        Err(Error::ConstantTermNotOne)
    );
}

#[test]
fn power_of_regular_examples() {
    let c = cfg(3, 2);
    let reg = total_chern(&regular_representation(c).unwrap());
    assert_eq!(power_of_regular(&reg.pow(2), c).unwrap(), Some(2));
    assert_eq!(power_of_regular(&Poly::one(c), c).unwrap(), Some(0));
    let lin = &Poly::one(c) + &Poly::var(c, 0);
    assert_eq!(power_of_regular(&lin, c).unwrap(), None);
}

#[test]
fn weights_file_format() {
    let c = cfg(3, 3);
    let rho =
        WeightMultiset::parse("# header\n1,0,2 x3\n0,1,1\n\n2, 2, 2 # trailing\n", c).unwrap();
    assert_eq!(rho.multiplicity(&w(&c, &[1, 0, 2])), 3);
    assert_eq!(rho.dimension(), 5);
    assert!(matches!(
        WeightMultiset::parse("1,0\n", c),
        Err(Error::Weights { line: 1, .. })
    ));
    assert!(matches!(
        WeightMultiset::parse("1,0,0\n1,0,q\n", c),
        Err(Error::Weights { line: 2, .. })
    ));
}

#[test]
fn image_generators() {
    let pu = image_generator(cfg(3, 2), ImageCase::PU).unwrap();
    assert_eq!(render_class(&pu), "t1^3*t2 - t1*t2^3");
    assert_eq!(pu.degree(), Some(8));
    for p in [3, 5] {
        let c = cfg(p, 3);
        let x = image_generator(c, ImageCase::Rank3).unwrap();
        assert!(x.is_polynomial());
        let e = moore_class(c);
        assert!(x.polynomial_part() == e || x.polynomial_part() == -&e);
        assert_eq!(x.degree(), Some(if p == 3 { 26 } else { 62 }));
    }
    assert!(matches!(
        image_generator(cfg(3, 3), ImageCase::PU),
        Err(Error::WrongRank { .. })
    ));
    assert_eq!(ExtClass::from(moore_class(cfg(3, 2))), -&pu);
}

#[test]
fn obstruction_tables() {
    let rows = obstruction_table(cfg(3, 2), ImageCase::PU, 4).unwrap();
    let flags: Vec<bool> = rows.iter().map(|r| r.in_d).collect();
    assert_eq!(flags, vec![false, true, false, true]);
    let rows = obstruction_table(cfg(7, 2), ImageCase::PU, 6).unwrap();
    assert!(rows.iter().all(|r| r.in_d == (r.a == 6)));
    let rows = obstruction_table(cfg(3, 3), ImageCase::Rank3, 4).unwrap();
    assert_eq!(
        serde_json::to_string(&rows[0]).unwrap(),
        r#"{"a":1,"in_D":false}"#
    );

    let c = cfg(5, 3);
    let rows = obstruction_table(c, ImageCase::Rank3, 4).unwrap();
    assert!(rows[3].in_d && !rows[..3].iter().any(|r| r.in_d));
    let e4 = moore_class(c).pow(4);
    match membership_dickson(&e4, DicksonRing::D).unwrap() {
        Membership::Member(dec) => assert_eq!(dec.to_string(), "c3_0"),
        Membership::NotMember => panic!("e3^4 is c3_0"),
    }
}
