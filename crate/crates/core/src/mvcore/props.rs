use proptest::prelude::*;

use super::*;

const CGA: Signature = Signature::CGA;

fn mv() -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-2.0f64..2.0, 32)
        .prop_map(|c| Multivector::from_coeffs(CGA, c).expect("32 coefficients"))
}

fn vector() -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-2.0f64..2.0, 5).prop_map(|c| Multivector::vector(CGA, &c).unwrap())
}

fn close(a: &Multivector, b: &Multivector, rel: f64) -> bool {
    let scale = 1.0 + a.norm_inf().max(b.norm_inf());
    (a - b).norm_inf() <= rel * scale
}

#[test]
fn blade_products_match_oracle_in_several_signatures() {
    for (p, q) in [(4, 1), (3, 0), (1, 3), (0, 2), (2, 2), (5, 3)] {
        let sig = Signature::new(p, q).unwrap();
        let n = sig.blade_count() as u32;
        for a in 0..n {
            for b in 0..n {
                let (a, b) = (BasisBlade::new(a), BasisBlade::new(b));
                let (sign, blade) = oracle_product(a, b, sig);
                let got = Multivector::blade(sig, a, 1.0) * Multivector::blade(sig, b, 1.0);
                let want = Multivector::blade(sig, blade, sign as f64);
                assert_eq!(got, want, "{sig}: {a} * {b}");
            }
        }
    }
}

#[test]
fn double_dual_negates_blades() {
    for bits in 0..32u32 {
        let a = Multivector::blade(CGA, BasisBlade::new(bits), 1.5);
        assert_eq!(a.dual().dual(), -&a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn associativity(a in mv(), b in mv(), c in mv()) {
        prop_assert!(close(&((&a * &b) * &c), &(&a * (&b * &c)), 1e-12));
        prop_assert!(close(&((&a ^ &b) ^ &c), &(&a ^ (&b ^ &c)), 1e-12));
    }

    #[test]
    fn distributivity(a in mv(), b in mv(), c in mv()) {
        prop_assert!(close(&(&a * (&b + &c)), &(&a * &b + &a * &c), 1e-12));
    }

    #[test]
    fn vector_product_splits(a in vector(), b in vector()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.clone(), ab.grade_part(0) + ab.grade_part(2));
        let dot: f64 = (0..5).map(|i| CGA.metric(i) * a.coeffs()[1 << i] * b.coeffs()[1 << i]).sum();
        prop_assert!((ab.scalar_part() - dot).abs() <= 1e-12 * (1.0 + dot.abs()));
        prop_assert!(close(&ab.grade_part(2), &(&a ^ &b), 1e-15));
        prop_assert!(close(&ab, &((&a | &b) + (&a ^ &b)), 1e-15));
    }

    #[test]
    fn reverse_is_an_anti_automorphism(a in mv(), b in mv()) {
        prop_assert!(close(&(&a * &b).reverse(), &(b.reverse() * a.reverse()), 1e-12));
        prop_assert_eq!(a.reverse().reverse(), a);
    }

    #[test]
    fn involution_is_an_automorphism(a in mv(), b in mv()) {
        let lhs = (&a * &b).grade_involution();
        prop_assert!(close(&lhs, &(a.grade_involution() * b.grade_involution()), 1e-12));
        prop_assert_eq!(a.grade_involution().grade_involution(), a);
    }

    #[test]
    fn grade_parts_sum_to_whole(a in mv()) {
        let sum = (0..=5).fold(Multivector::zero(CGA), |acc, k| acc + a.grade_part(k));
        prop_assert_eq!(sum, a.clone());
        prop_assert_eq!(a.parity_part(false) + a.parity_part(true), a);
    }

    #[test]
    fn dual_undual_round_trip(a in mv()) {
        prop_assert!(close(&a.dual().undual(), &a, 1e-15));
        prop_assert!(close(&a.dual().dual(), &(-&a), 1e-15));
    }

    #[test]
    fn exp_of_bivector_blade_is_unit(a in vector(), b in vector(), t in -3.0f64..3.0) {
        let blade = (&a ^ &b).scale(t);
        if let Ok(r) = blade.exp_special() {
            let unit = &r * &r.reverse();
            let sq = (&blade * &blade).scalar_part();
            // unit for the trigonometric and nilpotent branches
            if sq <= 0.0 {
                prop_assert!(close(&unit, &Multivector::one(CGA), 1e-12));
            }
        }
    }

    #[test]
    fn versor_inverse_of_vector_products(a in vector(), b in vector()) {
        let v = &a * &b;
        if let Ok(inv) = v.versor_inverse() {
            prop_assert!(close(&(&v * &inv), &Multivector::one(CGA), 1e-9));
        }
    }

    #[test]
    fn literal_round_trip(a in mv()) {
        prop_assert_eq!(Multivector::parse_literal(&a.to_string(), CGA).unwrap(), a);
    }
}
