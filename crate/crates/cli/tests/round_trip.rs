use proptest::prelude::*;
use qmf_cli::commands::parse_form;
use qmf_core::acceptance::{random_mero, random_qm};
use qmf_core::quasi::QMForm;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rendered_forms_parse_back(seed in any::<u64>(), h in -2i64..=8, depth in 0usize..=3) {
        let f = random_qm(&mut ChaCha8Rng::seed_from_u64(seed), 2 * h, depth);
        let text = f.render();
        let back = parse_form(&text).unwrap();
        if f.is_zero() {
            prop_assert!(back.is_zero());
        } else {
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn rendered_modular_forms_parse_back(seed in any::<u64>(), h in -4i64..=8) {
        let f = random_mero(&mut ChaCha8Rng::seed_from_u64(seed), 2 * h);
        prop_assume!(!f.is_zero());
        let back = parse_form(&f.render()).unwrap();
        prop_assert_eq!(back, QMForm::from_modular(f));
    }
}

#[test]
fn rendering_examples_parse_back() {
    for src in [
        "12 * E2",
        "-E4 + E2^2",
        "(-1/2) * E2",
        "E4^-2 * Delta * (j-2)/(j^2-5)",
        "j",
    ] {
        let f = parse_form(src).unwrap();
        assert_eq!(parse_form(&f.render()).unwrap(), f, "{src}");
    }
}
