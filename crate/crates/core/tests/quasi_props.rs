use proptest::prelude::*;
use qmf_core::acceptance::{random_mero, random_qm};
use qmf_core::quasi::{decompose_complement, delta_power_bol, qm_delta, reassemble, QMForm};
use qmf_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn qm(max_weight: i64, max_depth: usize) -> impl Strategy<Value = QMForm> {
    (any::<u64>(), -2i64..=max_weight / 2).prop_map(move |(seed, h)| {
        random_qm(&mut ChaCha8Rng::seed_from_u64(seed), 2 * h, max_depth)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_graded(f in qm(16, 4)) {
        let d = qm_delta(&f).unwrap();
        prop_assert_eq!(d.weight(), f.weight() + 2);
        if f.is_zero() {
            prop_assert!(d.is_zero());
        } else {
            let (k, r) = (f.weight(), f.depth() as i64);
            // The top coefficient picks up the factor (k - r) / 12.
            if k != r {
                prop_assert_eq!(d.depth(), f.depth() + 1);
            } else {
                prop_assert!(d.depth() <= f.depth());
            }
        }
    }

    #[test]
    fn bol_image_is_modular(seed in any::<u64>(), h in 1i64..=5) {
        let k = 2 * h;
        let g = random_mero(&mut ChaCha8Rng::seed_from_u64(seed), 2 - k);
        match delta_power_bol(&g, k) {
            Ok(image) => prop_assert_eq!(image.weight(), k),
            Err(Error::BolViolation { .. }) => prop_assert!(false, "E2 survived for k = {}", k),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn decomposition_reassembles(f in qm(10, 2)) {
        let d = decompose_complement(&f, None).unwrap();
        prop_assert_eq!(reassemble(&d).unwrap(), f.clone());
        let order = d.verified_order;
        let lhs = f.expand(order);
        let rhs = reassemble(&d).unwrap().expand(order);
        prop_assert!(lhs.agrees_to(&rhs, order).unwrap());
    }

    #[test]
    fn class_ignores_derivatives(f in qm(8, 2), seed in any::<u64>()) {
        let k = f.weight();
        let h = random_qm(&mut ChaCha8Rng::seed_from_u64(seed), k - 2, 1);
        let shifted = f.add(&qm_delta(&h).unwrap()).unwrap();
        let a = decompose_complement(&f, None).unwrap();
        let b = decompose_complement(&shifted, None).unwrap();
        prop_assert_eq!(a.class, b.class);
    }
}
