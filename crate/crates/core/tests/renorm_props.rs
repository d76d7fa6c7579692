use std::sync::OnceLock;

use proptest::prelude::*;
use qmf_core::modular::{generator_series, Generator, MeroModForm};
use qmf_core::rational::int;
use qmf_core::renorm::{iter_primitive, iter_primitive_holo, r_fold_primitive, Engine};
use qmf_core::{AElement, AEpsElement};

const ORDER: i64 = 30;

fn pool() -> &'static [AElement] {
    static POOL: OnceLock<Vec<AElement>> = OnceLock::new();
    POOL.get_or_init(|| {
        let q = |e| AElement::monomial(int(1), e, 0);
        vec![
            AElement::one(),
            q(1),
            q(-1),
            q(-2),
            AElement::from_series(generator_series(Generator::E4, ORDER)),
            AElement::from_series(MeroModForm::delta().inv().unwrap().expand(ORDER)),
        ]
    })
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..6, 1..=4)
}

/// Letters with nonnegative valuation: `1`, `q` and `E4`.
fn holomorphic_word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(prop::sample::select(vec![0usize, 1, 4]), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_of_primitive(w in word()) {
        let mut e = Engine::new(pool().to_vec(), 4);
        let value = e.iter_primitive(&w).unwrap();
        let rest = e.iter_primitive(&w[1..]).unwrap();
        let lhs = value.delta();
        let rhs = pool()[w[0]].mul(&rest);
        let order = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_to(&rhs, order).unwrap());

        let plus = e.i_plus(&w);
        let plus_rest = e.i_plus(&w[1..]);
        let lhs = plus.delta();
        let rhs = AEpsElement::from(&pool()[w[0]]).mul(&plus_rest);
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn counterterm_is_constant(w in word()) {
        let mut e = Engine::new(pool().to_vec(), 4);
        let minus = e.i_minus(&w);
        prop_assert!(minus.is_q_and_t_free());
        prop_assert!(minus.delta().is_zero());
    }

    #[test]
    fn holomorphic_lists_need_no_counterterm(w in holomorphic_word()) {
        let mut e = Engine::new(pool().to_vec(), 4);
        prop_assert!(e.i_minus(&w).is_zero());
        let renormalized = e.iter_primitive(&w).unwrap();
        let letters: Vec<AElement> = w.iter().map(|&i| pool()[i].clone()).collect();
        let plain = iter_primitive_holo(&letters).unwrap();
        let order = renormalized.order().min(plain.order());
        prop_assert!(order >= ORDER - 4);
        prop_assert!(renormalized.agrees_to(&plain, order).unwrap());
    }

    #[test]
    fn r_fold_matches_iterated_primitive(i in 0usize..6, r in 1usize..=4) {
        let f = &pool()[i];
        let folded = r_fold_primitive(f, r).unwrap();
        let mut letters = vec![AElement::one(); r - 1];
        letters.push(f.clone());
        let iterated = iter_primitive(&letters).unwrap();
        let order = folded.order().min(iterated.order());
        prop_assert!(folded.agrees_to(&iterated, order).unwrap());
    }

    #[test]
    fn two_part_shuffle_identity(w in prop::collection::vec(0usize..6, 0..=4), cut in 0usize..=4) {
        let m = cut.min(w.len());
        let mut e = Engine::new(pool().to_vec(), 4);
        let report = e.verify_shuffle(&w[..m], &w[m..], ORDER - 10).unwrap();
        prop_assert!(report.equal);
    }
}
