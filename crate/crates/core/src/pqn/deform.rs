use super::structure::{check_pqn, PqnStructure};
use crate::calculus::{d_n, exterior_d, koszul_bracket};
use crate::error::{Error, Result};
use crate::polyring::rational;
use crate::report::{CheckReport, CheckResult};
use crate::tensorfield::{compose_sharp_flat, same_chart, Form};

pub(crate) fn require_closed(omega: &Form) -> Result<()> {
    if omega.degree() != 2 {
        return Err(Error::DegreeMismatch {
            left: omega.degree(),
            right: 2,
        });
    }
    let d = exterior_d(omega);
    if d.is_zero() {
        Ok(())
    } else {
        Err(Error::NotClosed { witness: d.to_string() })
    }
}

/// `d_N Omega + 1/2 [Omega, Omega]_pi`.
fn twist_term(s: &PqnStructure, omega: &Form) -> Result<Form> {
    let half = rational(1, 2);
    let dn = d_n(s.n(), omega)?;
    let bb = koszul_bracket(omega, omega, s.pi())?;
    Ok(&dn + &bb.scale(&half))
}

/// `(pi, N + pi# Omega_flat, phi + d_N Omega + 1/2 [Omega, Omega]_pi)` with no
/// checks on the input structure or on `Omega`.
pub fn twist(s: &PqnStructure, omega: &Form) -> Result<PqnStructure> {
    same_chart(s.chart(), omega.chart())?;
    let n_hat = s.n().try_add(&compose_sharp_flat(s.pi(), omega)?)?;
    let phi_hat = s.phi().try_add(&twist_term(s, omega)?)?;
    PqnStructure::new(s.pi().clone(), n_hat, phi_hat)
}

/// Deformation of a PqN structure by a closed 2-form. The input structure is
/// verified first; the output is not.
pub fn deform(s: &PqnStructure, omega: &Form) -> Result<PqnStructure> {
    same_chart(s.chart(), omega.chart())?;
    require_closed(omega)?;
    let report = check_pqn(s)?;
    if !report.passed() {
        let failing: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
        return Err(Error::InvalidStructure {
            failing: failing.join(", "),
        });
    }
    twist(s, omega)
}

/// `d_N Omega + 1/2 [Omega, Omega]_pi + phi`; vanishes iff the deformation is
/// Poisson-Nijenhuis.
pub fn mc_residual(s: &PqnStructure, omega: &Form) -> Result<Form> {
    same_chart(s.chart(), omega.chart())?;
    require_closed(omega)?;
    twist_term(s, omega)?.try_add(s.phi())
}

/// Compares `Omega1.(Omega2.S)` with `(Omega1 + Omega2).S`.
pub fn action_compose(s: &PqnStructure, omega1: &Form, omega2: &Form) -> Result<CheckReport> {
    require_closed(omega1)?;
    require_closed(omega2)?;
    let lhs = deform(&deform(s, omega2)?, omega1)?;
    let rhs = deform(s, &omega1.try_add(omega2)?)?;
    Ok(CheckReport::new(vec![
        CheckResult::zero("action.pi", "pi - pi", &(lhs.pi() - rhs.pi())),
        CheckResult::zero("action.N", "N(O1.(O2.S)) - N((O1+O2).S)", &(lhs.n() - rhs.n())),
        CheckResult::zero(
            "action.phi",
            "phi(O1.(O2.S)) - phi((O1+O2).S)",
            &(lhs.phi() - rhs.phi()),
        ),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorfield::{Chart, EndoField, MultiVector};
    use std::sync::Arc;

    fn canonical(c: &Arc<Chart>) -> PqnStructure {
        PqnStructure::poisson_nijenhuis(MultiVector::basis(c, &[0, 1]), EndoField::identity(c)).unwrap()
    }

    #[test]
    fn deform_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let s = canonical(&c);
        let d1 = deform(&s, &Form::basis(&c, &[0, 1])).unwrap();
        assert!(d1.n().is_zero());
        assert!(d1.phi().is_zero());
        let d2 = deform(&s, &Form::monomial(&c, &[0, 1], c.coord(0))).unwrap();
        assert_eq!(d2.n(), &EndoField::scalar(&c, &c.poly("1 - x").unwrap()));
        assert!(d2.phi().is_zero());
        assert_eq!(deform(&s, &Form::zero(&c, 2)).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        let c = Chart::standard(3).unwrap();
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::identity(&c)).unwrap();
        let open = Form::monomial(&c, &[0, 1], c.coord(2));
        assert!(matches!(deform(&s, &open), Err(Error::NotClosed { .. })));
        assert!(matches!(mc_residual(&s, &open), Err(Error::NotClosed { .. })));

        let c2 = Chart::new(["x", "y"]).unwrap();
        let bad = PqnStructure::poisson_nijenhuis(
            MultiVector::basis(&c2, &[0, 1]),
            EndoField::from_columns(
                &c2,
                &[
                    crate::tensorfield::VectorField::basis(&c2, 1),
                    crate::tensorfield::VectorField::basis(&c2, 0).mul_poly(&c2.coord(0)),
                ],
            ),
        )
        .unwrap();
        assert!(matches!(
            deform(&bad, &Form::zero(&c2, 2)),
            Err(Error::InvalidStructure { .. })
        ));
    }

    #[test]
    fn residual_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let s = canonical(&c);
        assert!(mc_residual(&s, &Form::zero(&c, 2)).unwrap().is_zero());
        assert!(mc_residual(&s, &Form::monomial(&c, &[0, 1], c.coord(0))).unwrap().is_zero());

        let c3 = Chart::standard(3).unwrap();
        let phi = Form::basis(&c3, &[0, 1, 2]);
        let s3 = PqnStructure::new(MultiVector::zero(&c3, 2), EndoField::identity(&c3), phi.clone()).unwrap();
        assert_eq!(mc_residual(&s3, &Form::zero(&c3, 2)).unwrap(), phi);
    }

    #[test]
    fn action_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let s = canonical(&c);
        let zero = Form::zero(&c, 2);
        assert!(action_compose(&s, &zero, &zero).unwrap().passed());
        let o1 = Form::basis(&c, &[0, 1]);
        let o2 = Form::monomial(&c, &[0, 1], c.coord(0));
        assert!(action_compose(&s, &o1, &o2).unwrap().passed());
        let both = deform(&s, &(&o1 + &o2)).unwrap();
        assert_eq!(both.n(), &EndoField::scalar(&c, &c.poly("-x").unwrap()));
    }
}
