use proptest::prelude::*;
use qmf_core::acceptance::random_mero;
use qmf_core::linalg;
use qmf_core::modular::{basis_mk_d, mmf_divisor, valence_check, Divisor, MeroModForm, PointKey};
use qmf_core::poly::UniPoly;
use qmf_core::rational::{int, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn factor(i: usize) -> MeroModForm {
    match i {
        0 => MeroModForm::e4(),
        1 => MeroModForm::e6(),
        2 => MeroModForm::delta(),
        3 => MeroModForm::j(),
        4 => MeroModForm::rational_in_j(UniPoly::from_ints(&[-2, 1]), UniPoly::one()).unwrap(),
        _ => MeroModForm::rational_in_j(UniPoly::one(), UniPoly::from_ints(&[-5, 0, 1])).unwrap(),
    }
}

fn factors() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..6, -2i64..=2), 1..=6)
}

fn product(fs: &[MeroModForm]) -> MeroModForm {
    fs.iter().fold(MeroModForm::one(), |acc, f| acc.mul(f))
}

/// Multiplies as a balanced tree instead of left to right.
fn tree_product(fs: &[MeroModForm]) -> MeroModForm {
    match fs.len() {
        0 => MeroModForm::one(),
        1 => fs[0].clone(),
        n => tree_product(&fs[..n / 2]).mul(&tree_product(&fs[n / 2..])),
    }
}

fn even_weight() -> impl Strategy<Value = i64> {
    (-4i64..=8).prop_map(|h| 2 * h)
}

fn form() -> impl Strategy<Value = MeroModForm> {
    (any::<u64>(), even_weight())
        .prop_map(|(seed, w)| random_mero(&mut ChaCha8Rng::seed_from_u64(seed), w))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn pair() -> impl Strategy<Value = (MeroModForm, MeroModForm, MeroModForm)> {
    (any::<u64>(), even_weight())
        .prop_map(|(seed, w)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                random_mero(&mut rng, w),
                random_mero(&mut rng, w),
                random_mero(&mut rng, w),
            )
        })
        .prop_filter("nonzero", |(a, b, c)| {
            !(a.is_zero() || b.is_zero() || c.is_zero())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_form_ignores_association(fs in factors(), rot in 0usize..6) {
        let forms: Vec<MeroModForm> = fs
            .iter()
            .map(|&(i, e)| factor(i).pow(e).unwrap())
            .collect();
        let mut rotated = forms.clone();
        rotated.rotate_left(rot % forms.len());
        rotated.reverse();
        prop_assert_eq!(product(&forms), tree_product(&rotated));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_form_of_sums((a, b, c) in pair()) {
        let left = a.add(&b).unwrap().add(&c).unwrap();
        let right = a.add(&c.add(&b).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let combo = MeroModForm::linear_combination(
            a.weight(),
            [(int(1), &a), (int(1), &b), (int(1), &c)],
        )
        .unwrap();
        prop_assert_eq!(&combo, &left);
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn expansion_is_a_homomorphism((a, b, _) in pair()) {
        let order = 20;
        let prod = a.mul(&b).expand(order);
        let series = &a.expand(order) * &b.expand(order);
        prop_assert!(prod.agrees_to(&series, series.order().min(order)).unwrap());
        let sum = a.add(&b).unwrap().expand(order);
        let series = &a.expand(order) + &b.expand(order);
        prop_assert!(sum.agrees_to(&series, order).unwrap());
    }

    #[test]
    fn divisors_add_under_products((a, b, _) in pair()) {
        let da = mmf_divisor(&a, &[]).unwrap();
        let db = mmf_divisor(&b, &[]).unwrap();
        let dab = mmf_divisor(&a.mul(&b), &[]).unwrap();
        let sum = da.add(&db);
        let rational = |d: &Divisor| d.entries().filter(|(_, n)| *n != 0).map(|(p, n)| (p.clone(), n)).collect::<Vec<_>>();
        prop_assert_eq!(rational(&dab), rational(&sum));
        prop_assert_eq!(dab.degree(), sum.degree());
    }

    #[test]
    fn valence_formula(f in form(), fs in factors()) {
        prop_assert!(valence_check(&f).is_ok());
        let g = product(&fs.iter().map(|&(i, e)| factor(i).pow(e).unwrap()).collect::<Vec<_>>());
        let d = mmf_divisor(&g, &[]).unwrap();
        prop_assert_eq!(d.degree(), Rational::new(g.weight().into(), 12.into()));
    }

    #[test]
    fn cusp_order_is_expansion_valuation(f in form()) {
        let v = mmf_divisor(&f, &[]).unwrap().get(&PointKey::Infinity);
        prop_assert_eq!(v, f.v_infinity());
        let s = f.expand(v + 3);
        prop_assert_eq!(s.valuation(), v);
        prop_assert!(s.coeff(v).unwrap() != int(0));
    }

    #[test]
    fn basis_members_have_bounded_poles(
        k in (-2i64..=8).prop_map(|h| 2 * h),
        n in (0i64..=3, 0i64..=3, 0i64..=3, 0i64..=2),
    ) {
        let support = [
            (PointKey::Infinity, n.0),
            (PointKey::I, n.1),
            (PointKey::Rho, n.2),
            (PointKey::from_j(int(2)), n.3),
        ];
        let d = Divisor::from_entries(support.iter().cloned());
        let basis = basis_mk_d(k, &d).unwrap();
        for g in &basis {
            prop_assert_eq!(g.weight(), k);
            let div = mmf_divisor(g, &[]).unwrap();
            prop_assert!(div.residual().is_empty());
            for (p, m) in div.entries() {
                prop_assert!(m >= -d.get(p), "v_{:?} = {} below -{}", p, m, d.get(p));
            }
        }
        let low = -n.0;
        let count = (Rational::new(k.into(), 12.into()) + d.degree()).floor().to_integer();
        let high = low + i64::try_from(count).unwrap() + 2;
        let rows: Vec<Vec<Rational>> = basis
            .iter()
            .map(|g| {
                let s = g.expand(high);
                (low..high).map(|e| s.coeff(e).unwrap()).collect()
            })
            .collect();
        prop_assert_eq!(linalg::rank(&rows), basis.len());
    }
}
