//! Elaboration of parsed expressions into quasimodular forms or q-series.

use qmf_core::modular::{generator_series, Generator, MeroModForm};
use qmf_core::quasi::{qm_delta, QMForm};
use qmf_core::renorm::{iter_primitive, r_fold_primitive};
use qmf_core::{AElement, Error, Rational};

use crate::error::CliError;
use crate::expr::{Atom, Expr};

fn generator(a: Atom) -> Option<Generator> {
    Generator::from_name(a.name())
}

fn not_modular(what: &str) -> CliError {
    CliError::Elab(Error::InvalidArgument(format!(
        "{what} is not allowed where a (quasi)modular form is required"
    )))
}

/// Elaborates `e` as a weight-homogeneous quasimodular form.
pub fn to_form(e: &Expr) -> Result<QMForm, CliError> {
    Ok(match e {
        Expr::Atom(Atom::Q) => return Err(not_modular("q")),
        Expr::Atom(Atom::E2) => QMForm::e2(),
        Expr::Atom(a) => QMForm::from_modular(match a {
            Atom::E4 => MeroModForm::e4(),
            Atom::E6 => MeroModForm::e6(),
            Atom::Delta => MeroModForm::delta(),
            _ => MeroModForm::j(),
        }),
        Expr::Int(n) => {
            QMForm::from_modular(MeroModForm::constant(Rational::from_integer(n.clone())))
        }
        Expr::Neg(a) => to_form(a)?.neg(),
        Expr::Add(a, b) => sum(&to_form(a)?, &to_form(b)?)?,
        Expr::Sub(a, b) => sum(&to_form(a)?, &to_form(b)?.neg())?,
        Expr::Mul(a, b) => to_form(a)?.mul(&to_form(b)?)?,
        Expr::Div(a, b) => {
            let den = to_form(b)?;
            if !den.is_modular() {
                return Err(not_modular("division by a form involving E2"));
            }
            let den = den.modular_part();
            if den.is_zero() {
                return Err(CliError::Compute(Error::DivisionByZero));
            }
            to_form(a)?.mul_modular(&den.inv()?)
        }
        Expr::Pow(a, n) => {
            let base = to_form(a)?;
            if base.is_modular() {
                QMForm::from_modular(base.modular_part().pow(*n)?)
            } else if *n >= 0 {
                base.pow(*n as u32)?
            } else {
                return Err(not_modular("a negative power of a form involving E2"));
            }
        }
        Expr::D(a) => qm_delta(&to_form(a)?)?,
        Expr::I(_) | Expr::Ir(..) => return Err(not_modular("an iterated primitive")),
    })
}

/// Sums of forms must share a weight; the zero form adapts to the other side.
fn sum(a: &QMForm, b: &QMForm) -> Result<QMForm, CliError> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    if a.weight() != b.weight() {
        return Err(CliError::Elab(Error::NotHomogeneous(
            a.weight(),
            b.weight(),
        )));
    }
    Ok(a.add(b)?)
}

/// Elaborates `e` as a series with generators expanded to q-order `order`.
/// The result carries its own guaranteed order, which may be lower.
pub fn to_series(e: &Expr, order: i64) -> Result<AElement, CliError> {
    Ok(match e {
        Expr::Atom(Atom::Q) => AElement::monomial(Rational::from_integer(1.into()), 1, 0),
        Expr::Atom(Atom::J) => AElement::from_series(MeroModForm::j().expand(order)),
        Expr::Atom(a) => AElement::from_series(generator_series(
            generator(*a).expect("generator atom"),
            order,
        )),
        Expr::Int(n) => AElement::constant(Rational::from_integer(n.clone())),
        Expr::Neg(a) => to_series(a, order)?.neg(),
        Expr::Add(a, b) => to_series(a, order)?.add(&to_series(b, order)?),
        Expr::Sub(a, b) => to_series(a, order)?.sub(&to_series(b, order)?),
        Expr::Mul(a, b) => to_series(a, order)?.mul(&to_series(b, order)?),
        Expr::Div(a, b) => {
            let den = to_series(b, order)?.as_series().ok_or_else(|| {
                CliError::Elab(Error::InvalidArgument(
                    "cannot divide by an expression involving t".into(),
                ))
            })?;
            // Exact polynomials other than monomials have infinite inverses.
            let den = if den.is_exact() && den.terms().count() > 1 {
                den.with_order(order)
            } else {
                den
            };
            to_series(a, order)?.mul_series(&den.invert()?)
        }
        Expr::Pow(a, n) => {
            let base = to_series(a, order)?;
            match base.as_series() {
                Some(s) if *n < 0 && s.is_exact() && s.terms().count() > 1 => {
                    AElement::from_series(s.with_order(order).pow(*n)?)
                }
                Some(s) => AElement::from_series(s.pow(*n)?),
                None if *n >= 0 => (0..*n).fold(AElement::one(), |acc, _| acc.mul(&base)),
                None => {
                    return Err(CliError::Elab(Error::InvalidArgument(
                        "negative power of an expression involving t".into(),
                    )))
                }
            }
        }
        Expr::D(a) => to_series(a, order)?.delta(),
        Expr::I(args) => {
            let fs = args
                .iter()
                .map(|a| to_series(a, order))
                .collect::<Result<Vec<_>, _>>()?;
            iter_primitive(&fs)?
        }
        Expr::Ir(a, r) => r_fold_primitive(&to_series(a, order)?, *r as usize)?,
    })
}
