use super::*;
use crate::modular::{generator_series, Generator, MeroModForm, PointKey};
use crate::rational::{frac, int};

fn e2() -> QMForm {
    QMForm::e2()
}

fn modular(f: MeroModForm) -> QMForm {
    QMForm::from_modular(f)
}

fn sigma1(n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

fn f4a() -> MeroModForm {
    MeroModForm::monomial(int(1), -2, 0, 1)
}

fn f4b() -> MeroModForm {
    MeroModForm::monomial(int(1), 1, -2, 1)
}

fn f6() -> MeroModForm {
    MeroModForm::monomial(int(1), -3, 1, 1)
}

#[test]
fn e2_expansion_matches_divisor_sums() {
    let s = e2().expand(3);
    assert_eq!(s.to_string(), "1 - 24*q - 72*q^2 + O(q^3)");
    let s = e2().expand(50);
    for n in 1..50 {
        assert_eq!(s.coeff(n).unwrap(), int(-24 * sigma1(n)));
    }
    assert_eq!(QMForm::one().expand(1).to_string(), "1 + O(q)");
}

#[test]
fn delta_of_generators() {
    let d = qm_delta(&e2()).unwrap();
    let expected = e2()
        .pow(2)
        .unwrap()
        .sub(&modular(MeroModForm::e4()))
        .unwrap()
        .scale(&frac(1, 12));
    assert_eq!(d, expected);
    let series = e2().expand(50).delta();
    assert!(d.expand(50).agrees_to(&series, 50).unwrap());
    assert_eq!(d.expand(2).to_string(), "-24*q + O(q^2)");

    let dd = qm_delta(&modular(MeroModForm::delta())).unwrap();
    assert_eq!(dd, QMForm::e2_power(MeroModForm::delta(), 1));
    let series = generator_series(Generator::Delta, 40).delta();
    assert!(dd.expand(40).agrees_to(&series, 40).unwrap());

    let dj = qm_delta(&modular(MeroModForm::j())).unwrap();
    assert_eq!(dj.depth(), 0);
    assert_eq!(dj.modular_part(), delta_j());
    let series = MeroModForm::j().expand(30).delta();
    assert!(dj.expand(30).agrees_to(&series, 30).unwrap());
}

#[test]
fn theta_on_rational_functions_of_j() {
    let f = j_rational(&[-2, 1], &[-5, 0, 1])
        .unwrap()
        .mul(&MeroModForm::monomial(int(3), -2, 0, 1));
    let d = qm_delta(&modular(f.clone())).unwrap();
    let series = f.expand(30).delta();
    assert!(d.expand(30).agrees_to(&series, 30).unwrap());
    assert_eq!(d.weight(), f.weight() + 2);
    assert!(d.depth() <= 1);
}

#[test]
fn coefficient_function_examples() {
    let cf = coefficient_functions(&e2());
    assert_eq!(cf, vec![e2(), QMForm::one()]);
    let e4 = modular(MeroModForm::e4());
    assert_eq!(coefficient_functions(&e4), vec![e4.clone()]);
    let sq = e2().pow(2).unwrap();
    assert_eq!(
        coefficient_functions(&sq),
        vec![sq.clone(), e2().scale(&int(2)), QMForm::one()]
    );
}

#[test]
fn depth_reduce_examples() {
    let (g, m, f) = depth_reduce(&e2()).unwrap();
    assert!(g.is_zero());
    assert_eq!(m, MeroModForm::one());
    assert!(f.is_zero());

    let (g, m, f) = depth_reduce(&e2().pow(2).unwrap()).unwrap();
    assert_eq!(g, e2().scale(&int(12)));
    assert!(m.is_zero());
    assert_eq!(f, MeroModForm::e4());
    let lhs = e2().pow(2).unwrap().expand(30);
    let rhs = &e2().expand(30).delta().scale(&int(12)) + &MeroModForm::e4().expand(30);
    assert!(lhs.agrees_to(&rhs, 30).unwrap());

    let (g, m, f) = depth_reduce(&modular(MeroModForm::e4())).unwrap();
    assert!(g.is_zero() && m.is_zero());
    assert_eq!(f, MeroModForm::e4());
}

#[test]
fn bol_examples() {
    assert_eq!(delta_power_bol(&MeroModForm::j(), 2).unwrap(), delta_j());
    assert!(delta_power_bol(&MeroModForm::one(), 2).unwrap().is_zero());
    let inv = MeroModForm::delta().inv().unwrap();
    let image = delta_power_bol(&inv, 14).unwrap();
    assert_eq!(image.weight(), 14);
    let series = inv.expand(20).delta_pow(13);
    assert!(image.expand(20).agrees_to(&series, 20).unwrap());
    assert!(delta_power_bol(&MeroModForm::e4(), 2).is_err());
}

#[test]
fn bol_split_examples() {
    let support = [PointKey::Infinity];
    let f = MeroModForm::delta();
    let (g, tilde, _) = bol_split(&f, 12, &support).unwrap();
    assert!(g.is_zero());
    assert_eq!(tilde, f);

    let (g, tilde, _) = bol_split(&delta_j(), 2, &support).unwrap();
    assert!(tilde.is_zero());
    // j - 744 has vanishing constant term.
    let expected = MeroModForm::j()
        .add(&MeroModForm::constant(int(-744)))
        .unwrap();
    assert_eq!(g, expected);

    let (g, tilde, _) = bol_split(&f4a(), 4, &[PointKey::Infinity, PointKey::Rho]).unwrap();
    assert!(g.is_zero());
    assert_eq!(tilde, f4a());
}

#[test]
fn bol_split_removes_large_poles() {
    // A pole of order 5 at rho exceeds k - 1 = 3.
    let f = MeroModForm::monomial(int(1), -5, 0, 2);
    let f = f.add(&MeroModForm::monomial(int(7), 1, 0, 0)).unwrap();
    let s = [PointKey::Infinity, PointKey::Rho];
    let (g, tilde, _) = bol_split(&f, 4, &s).unwrap();
    assert!(!g.is_zero());
    assert!(tilde_membership(&tilde, 4).unwrap());
    let rebuilt = delta_power_bol(&g, 4).unwrap().add(&tilde).unwrap();
    assert_eq!(rebuilt, f);

    // A cusp pole beyond dim S_k.
    let f = MeroModForm::monomial(int(1), 8, 0, -2);
    let (g, tilde, _) = bol_split(&f, 8, &[PointKey::Infinity]).unwrap();
    assert!(!g.is_zero());
    assert!(tilde_membership(&tilde, 8).unwrap());
}

#[test]
fn decompose_examples() {
    let d = decompose_complement(&e2().pow(2).unwrap(), None).unwrap();
    assert_eq!(d.g, e2().scale(&int(12)));
    assert!(d.class.m_part.is_zero());
    assert_eq!(d.class.tilde_part, MeroModForm::e4());
    let json = d.to_json();
    assert_eq!(json["g"], "12 * E2");
    assert_eq!(json["tilde"], "E4");

    let d = decompose_complement(&e2(), None).unwrap();
    assert!(d.g.is_zero());
    assert_eq!(d.class.m_part, MeroModForm::one());
    assert!(d.class.tilde_part.is_zero());

    let e4 = modular(MeroModForm::e4());
    let d = decompose_complement(&qm_delta(&e4).unwrap(), None).unwrap();
    assert_eq!(d.g, e4);
    assert!(d.class.is_zero());
}

#[test]
fn membership_examples() {
    assert!(tilde_membership(&f4a(), 4).unwrap());
    assert!(tilde_membership(&f4b(), 4).unwrap());
    assert!(tilde_membership(&f6(), 6).unwrap());
    let inv = MeroModForm::delta().inv().unwrap();
    assert!(tilde_membership(&inv, 12).is_err());
    // A pole of order 5 at rho exceeds k - 1 = 3.
    assert!(!tilde_membership(&MeroModForm::monomial(int(1), -5, 0, 2), 4).unwrap());
}

#[test]
fn dimension_examples() {
    assert_eq!(dim_tilde_m(12, &[PointKey::Infinity]).unwrap(), (3, 3));
    let (formula, basis) = dim_tilde_m(14, &[PointKey::Infinity, PointKey::I]).unwrap();
    assert_eq!(formula, basis);
    assert_eq!(
        formula - dim_tilde_m(14, &[PointKey::Infinity]).unwrap().0,
        7
    );
    assert_eq!(
        dim_tilde_m(4, &[PointKey::Infinity, PointKey::Rho]).unwrap(),
        (2, 2)
    );
}

#[test]
fn independence_examples() {
    let fs: Vec<QMForm> = [f4a(), f4b(), f6(), MeroModForm::one()]
        .into_iter()
        .map(modular)
        .collect();
    let r = independence_check(&fs).unwrap();
    assert!(r.independent());
    assert_eq!(r.rank, 4);

    let e4 = modular(MeroModForm::e4());
    let r = independence_check(&[qm_delta(&e4).unwrap()]).unwrap();
    assert_eq!(r.rank, 0);

    let a = e2().pow(2).unwrap();
    let b = qm_delta(&e2()).unwrap().scale(&int(12)).add(&e4).unwrap();
    let r = independence_check(&[a, b]).unwrap();
    assert_eq!(r.rank, 1);
    assert!(!r.independent());
}

#[test]
fn render_forms() {
    assert_eq!(e2().scale(&int(12)).to_string(), "12 * E2");
    let f = e2()
        .pow(2)
        .unwrap()
        .add(&modular(MeroModForm::e4()).scale(&int(-1)))
        .unwrap();
    assert_eq!(f.to_string(), "-E4 + E2^2");
    assert_eq!(e2().scale(&frac(-1, 2)).to_string(), "(-1/2) * E2");
}
