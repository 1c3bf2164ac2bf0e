//! Randomized invariants over generated polynomials and fields.

use jetlift::admissibility::{check_extension, extend_admissible};
use jetlift::field::{lie_bracket, lie_d, lie_d_powers, lie_d_powers_mod};
use jetlift::gen;
use jetlift::jet::flow_jet;
use jetlift::parse::parse_poly;
use jetlift::symplectic::{ham_field, poisson_bracket};
use jetlift::*;
use proptest::prelude::*;

fn plane() -> std::sync::Arc<Vars> {
    Vars::chart_named(["x", "y"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let v = plane();
        let mut rng = gen::stream(seed, "ring");
        let all = [0, 1, 2];
        let [p, q, r] = [0, 1, 2].map(|_| gen::poly(&mut rng, &v, &all, 3, 4));
        let lhs = p.try_mul(&q.try_add(&r).unwrap()).unwrap();
        let rhs = p.try_mul(&q).unwrap().try_add(&p.try_mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(p.try_mul(&q).unwrap(), q.try_mul(&p).unwrap());
        prop_assert!(p.try_sub(&p).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), idx in 0usize..3) {
        let v = plane();
        let mut rng = gen::stream(seed, "leibniz");
        let p = gen::poly(&mut rng, &v, &[0, 1, 2], 3, 4);
        let q = gen::poly(&mut rng, &v, &[0, 1, 2], 3, 4);
        let lhs = p.try_mul(&q).unwrap().partial(idx);
        let rhs = p.partial(idx).try_mul(&q).unwrap().try_add(&p.try_mul(&q.partial(idx)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_text_parses_back(seed in any::<u64>()) {
        let v = plane();
        let mut rng = gen::stream(seed, "text");
        let p = gen::poly(&mut rng, &v, &[0, 1, 2], 4, 5);
        prop_assert_eq!(parse_poly(&p.to_string(), &v).unwrap(), p);
    }

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(seed in any::<u64>()) {
        let v = plane();
        let mut rng = gen::stream(seed, "jacobi");
        let [a, b, c] = [0, 1, 2].map(|_| gen::td_field(&mut rng, &v, 2, 1, 3));
        let ab = lie_bracket(&a, &b).unwrap();
        prop_assert!(ab.add(&lie_bracket(&b, &a).unwrap()).is_zero());
        let j = lie_bracket(&a, &lie_bracket(&b, &c).unwrap()).unwrap()
            .add(&lie_bracket(&b, &lie_bracket(&c, &a).unwrap()).unwrap())
            .add(&lie_bracket(&c, &ab).unwrap());
        prop_assert!(j.is_zero());
    }

    #[test]
    fn d_derivative_is_a_derivation_of_the_bracket(seed in any::<u64>()) {
        let v = plane();
        let mut rng = gen::stream(seed, "derivation");
        let [a, b, c] = [0, 1, 2].map(|_| gen::td_field(&mut rng, &v, 2, 2, 3));
        let lhs = lie_d(&a, &lie_bracket(&b, &c).unwrap()).unwrap();
        let rhs = lie_bracket(&lie_d(&a, &b).unwrap(), &c).unwrap().add(&lie_bracket(&b, &lie_d(&a, &c).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncated_lie_powers_agree_at_time_zero(seed in any::<u64>()) {
        let v = plane();
        let mut rng = gen::stream(seed, "powers");
        let a = gen::td_field(&mut rng, &v, 2, 2, 3);
        let full = lie_d_powers(&a, &a, 3).unwrap();
        let cut = lie_d_powers_mod(&a, &a, 3).unwrap();
        for (f, c) in full.iter().zip(&cut) {
            prop_assert_eq!(f.at_time_zero(), c.at_time_zero());
        }
    }

    #[test]
    fn flow_jets_are_compatible_under_truncation(seed in any::<u64>()) {
        let v = plane();
        let mut rng = gen::stream(seed, "flow");
        let a = gen::td_field(&mut rng, &v, 2, 2, 3);
        let j4 = flow_jet(&a, 4);
        prop_assert_eq!(j4.truncate(2).unwrap(), flow_jet(&a, 2));
        prop_assert_eq!(j4.coeffs()[0][1].clone(), a.at_time_zero().component(0).clone());
    }

    #[test]
    fn hamiltonian_map_is_a_lie_morphism(seed in any::<u64>()) {
        let s = DarbouxSpace::new(1);
        let v = s.vars();
        let mut rng = gen::stream(seed, "poisson");
        let h = gen::poly(&mut rng, &v, &[0, 1], 3, 3);
        let k = gen::poly(&mut rng, &v, &[0, 1], 3, 3);
        let lhs = ham_field(&h, &s).bracket(&ham_field(&k, &s)).unwrap();
        prop_assert_eq!(lhs, ham_field(&poisson_bracket(&h, &k, &s), &s));
        prop_assert_eq!(poisson_bracket(&h, &k, &s), poisson_bracket(&k, &h, &s).scale(&Scalar::from(-1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn extensions_satisfy_their_postconditions(seed in any::<u64>(), which in 0usize..2) {
        let geos = [gen::symplectic_geometries().remove(0), gen::parabola_foliation(true)];
        let setup = &geos[which].setup;
        let mut rng = gen::stream(seed, "extend");
        let (a, _, _) = gen::admissible_field(&mut rng, setup, 2);
        let delta = gen::g_correction(&mut rng, setup);
        let ext = extend_admissible(&a, &delta, 2, setup).unwrap();
        prop_assert!(check_extension(&a, &ext.field, &delta, 2, setup).unwrap().passed());
    }
}

#[test]
fn parse_rejects_unknown_variable() {
    assert!(parse_poly("x*z", &plane()).is_err());
}
