use daha::daha::Daha;
use daha::ext_weyl::{elements_up_to_length, reduced_word};
use daha::laurent::{monomial_sym, LaurentPoly};
use daha::{ParamScalar, RootDatum, Weight};
use proptest::prelude::*;

fn datum(t: &str) -> RootDatum {
    t.parse().unwrap()
}

fn arb_laurent(n: usize) -> impl Strategy<Value = LaurentPoly> {
    let term = (proptest::collection::vec(-2i64..3, n), -3i64..4)
        .prop_map(|(e, c)| (Weight::from_slice(&e), ParamScalar::from(c)));
    proptest::collection::vec(term, 1..4).prop_map(LaurentPoly::from_terms)
}

/// Random integer combinations of orbit sums `m_b`, `b` antidominant.
fn arb_invariant(d: &'static str) -> impl Strategy<Value = LaurentPoly> {
    let n = datum(d).rank();
    let term = (proptest::collection::vec(-2i64..1, n), -2i64..3);
    proptest::collection::vec(term, 1..3).prop_map(move |ts| {
        let d = datum(d);
        ts.into_iter().fold(LaurentPoly::zero(), |acc, (b, c)| {
            acc.add(&monomial_sym(&d, &Weight::from_slice(&b)).unwrap().scale(&ParamScalar::from(c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn t_preserves_polynomials_and_normal_forms_agree(f in arb_laurent(2), j in 0usize..3) {
        let d = datum("B2");
        let h = Daha::new(&d);
        let direct = h.apply_t(j, &f).unwrap();
        prop_assert_eq!(h.demazure_lusztig(j).unwrap().apply(&d, &f).unwrap(), direct.clone());
        prop_assert_eq!(h.apply_t_inv(j, &direct).unwrap(), f);
    }

    #[test]
    fn word_operators_act_like_their_letters(f in arb_laurent(2), k in 0usize..40) {
        let d = datum("A2");
        let h = Daha::new(&d);
        let elts = elements_up_to_length(&d, 3);
        let w = reduced_word(&d, &elts[k % elts.len()]);
        let mut g = f.clone();
        for &j in w.word.iter().rev() {
            g = h.apply_t(j, &g).unwrap();
        }
        g = h.apply_pi(w.r, &g).unwrap();
        prop_assert_eq!(h.t_word(&w).unwrap().apply(&d, &f).unwrap(), g);
    }

    #[test]
    fn y_operators_commute_on_polynomials(f in arb_laurent(2)) {
        let d = datum("A2");
        let h = Daha::new(&d);
        let (b1, b2) = (Weight::basis(2, 0), Weight::basis(2, 1).neg());
        let a = h.apply_y(&b1, &h.apply_y(&b2, &f).unwrap()).unwrap();
        let b = h.apply_y(&b2, &h.apply_y(&b1, &f).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn fourier_pairing_is_symmetric_on_invariants(f in arb_invariant("A2"), g in arb_invariant("A2")) {
        let d = datum("A2");
        let h = Daha::new(&d);
        prop_assert_eq!(h.fourier_pairing(&f, &g).unwrap(), h.fourier_pairing(&g, &f).unwrap());
    }

    #[test]
    fn action_is_a_group_action(f in arb_laurent(1), k in 0usize..12, l in 0usize..12) {
        let d = datum("A1");
        let elts = elements_up_to_length(&d, 5);
        let (g1, g2) = (&elts[k % elts.len()], &elts[l % elts.len()]);
        prop_assert_eq!(f.act(&d, &g1.mul(g2)), f.act(&d, g2).act(&d, g1));
    }
}
