//! Randomized invariants: scalar ring laws, rewriting idempotence and
//! associativity, degree additivity, and the commutation-factor laws on
//! generated (sigma, omega) data.

use num_rational::BigRational;
use proptest::prelude::*;

use gradex::algebra::{
    multiply, normal_form, word_degree, AlgebraSpec, BaseAlgebraSpec, Element, Letter,
};
use gradex::bicharacter::CommutationFactor;
use gradex::group::GroupElement;
use gradex::scalar::{QSpec, Scalar};

fn qspec_strategy() -> impl Strategy<Value = QSpec> {
    prop_oneof![
        Just(QSpec::Formal),
        (2u32..=12).prop_map(QSpec::RootOfUnity),
    ]
}

fn scalar_strategy(qspec: QSpec) -> impl Strategy<Value = Scalar> {
    proptest::collection::vec((-6i64..=6, -5i64..=5, 1i64..=4), 0..4).prop_map(move |terms| {
        Scalar::from_terms(
            terms
                .into_iter()
                .map(|(e, n, d)| (e, BigRational::new(n.into(), d.into()))),
            qspec,
        )
    })
}

fn scalar_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    qspec_strategy().prop_flat_map(|q| {
        (scalar_strategy(q), scalar_strategy(q), scalar_strategy(q))
    })
}

fn flux_word(n: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(1..=n, 0..6)
        .prop_map(|slots| slots.into_iter().map(|s| Letter::new(s, 1)).collect())
}

fn flux_spec(n: usize) -> AlgebraSpec {
    AlgebraSpec::new(
        BaseAlgebraSpec::default(),
        CommutationFactor::from_flux(n).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_laws((a, b, c) in scalar_triple()) {
        prop_assert_eq!(
            a.checked_add(&b).unwrap(),
            b.checked_add(&a).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b).unwrap(),
            b.checked_mul(&a).unwrap()
        );
        prop_assert_eq!(
            a.checked_add(&b).unwrap().checked_add(&c).unwrap(),
            a.checked_add(&b.checked_add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.checked_sub(&a).unwrap(), Scalar::zero(a.qspec()));
    }

    #[test]
    fn scalar_inverse_round_trip(q in 2u32..=12, e in -6i64..=6, n in 1i64..=5, d in 1i64..=4) {
        let qs = QSpec::RootOfUnity(q);
        let s = Scalar::from_rational(BigRational::new(n.into(), d.into()), qs)
            .checked_mul(&Scalar::q_power(e, qs)).unwrap();
        prop_assume!(!s.is_zero());
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.checked_mul(&inv).unwrap(), Scalar::one(qs));
    }

    #[test]
    fn normal_form_is_idempotent(w in flux_word(3)) {
        let spec = flux_spec(3);
        let one = Scalar::one(spec.qspec());
        let nf = normal_form(&spec, &w, one.clone()).unwrap();
        for m in nf.monomials() {
            let again = normal_form(&spec, &m.word, m.coeff.clone()).unwrap();
            prop_assert_eq!(again, Element::from_monomial(m.word, m.coeff));
        }
    }

    #[test]
    fn multiplication_is_associative(u in flux_word(3), v in flux_word(3), w in flux_word(3)) {
        let spec = flux_spec(3);
        let one = Scalar::one(spec.qspec());
        let eu = normal_form(&spec, &u, one.clone()).unwrap();
        let ev = normal_form(&spec, &v, one.clone()).unwrap();
        let ew = normal_form(&spec, &w, one).unwrap();
        let left = multiply(&spec, &multiply(&spec, &eu, &ev).unwrap(), &ew).unwrap();
        let right = multiply(&spec, &eu, &multiply(&spec, &ev, &ew).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn degree_is_additive(u in flux_word(3), v in flux_word(3)) {
        let spec = flux_spec(3);
        let du = word_degree(&spec, &u).unwrap();
        let dv = word_degree(&spec, &v).unwrap();
        let mut uv = u.clone();
        uv.extend(v.iter().copied());
        prop_assert_eq!(word_degree(&spec, &uv).unwrap(), du.compose(&dv).unwrap());
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn commutation_factor_laws(
        s11 in 0i64..=3, s12 in 0i64..=3, s22 in 0i64..=3, o12 in -3i64..=3,
    ) {
        // Rank-2 factor over Z4^2 with q of order 4; symmetric sigma and
        // antisymmetric omega by construction.
        let cf = CommutationFactor::new(
            vec![vec![s11, s12], vec![s12, s22]],
            vec![vec![0, o12], vec![-o12, 0]],
            QSpec::RootOfUnity(4),
            2,
            4,
        ).unwrap();
        let one = Scalar::one(cf.qspec());
        let elems = GroupElement::enumerate(2, 4).unwrap();
        for g in &elems {
            for h in &elems {
                let skew = cf.eval(g, h).unwrap().checked_mul(&cf.eval(h, g).unwrap()).unwrap();
                prop_assert_eq!(&skew, &one);
                let gh = g.compose(h).unwrap();
                for k in elems.iter().take(4) {
                    let lhs = cf.eval(&gh, k).unwrap();
                    let rhs = cf.eval(g, k).unwrap().checked_mul(&cf.eval(h, k).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
