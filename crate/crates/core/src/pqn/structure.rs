use std::sync::Arc;

use crate::calculus::{exterior_d, koszul_bracket, nijenhuis_torsion, schouten};
use crate::error::{Error, Result};
use crate::polyring::{degree_cap, Polynomial};
use crate::report::{CheckReport, CheckResult};
use crate::tensorfield::{
    contract_pair, insert_n, same_chart, sharp, sharp_matrix, Chart, EndoField, Form, MultiVector, VectorField,
};

/// A candidate Poisson quasi-Nijenhuis structure `(pi, N, phi)` on a chart.
/// Construction only checks shapes; the axioms are checked by [`check_pqn`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqnStructure {
    pi: MultiVector,
    n: EndoField,
    phi: Form,
}

impl PqnStructure {
    pub fn new(pi: MultiVector, n: EndoField, phi: Form) -> Result<Self> {
        same_chart(pi.chart(), n.chart())?;
        same_chart(pi.chart(), phi.chart())?;
        if pi.degree() != 2 {
            return Err(Error::DegreeMismatch { left: pi.degree(), right: 2 });
        }
        if phi.degree() != 3 {
            return Err(Error::DegreeMismatch { left: phi.degree(), right: 3 });
        }
        let cap = degree_cap();
        pi.check_degree(cap)?;
        n.check_degree(cap)?;
        phi.check_degree(cap)?;
        Ok(PqnStructure { pi, n, phi })
    }

    /// `(pi, N, 0)`.
    pub fn poisson_nijenhuis(pi: MultiVector, n: EndoField) -> Result<Self> {
        let phi = Form::zero(pi.chart(), 3);
        Self::new(pi, n, phi)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.pi.chart()
    }

    pub fn pi(&self) -> &MultiVector {
        &self.pi
    }

    pub fn n(&self) -> &EndoField {
        &self.n
    }

    pub fn phi(&self) -> &Form {
        &self.phi
    }
}

/// Fixed polynomial multiplier used by the f-linearity guards.
pub fn guard_function(chart: &Arc<Chart>) -> Polynomial {
    let n = chart.dim();
    let x1 = chart.coord(0);
    let xn = chart.coord(n - 1);
    &(&(&x1 * &x1) + &(&x1 * &xn)) - &chart.constant(2)
}

pub fn check_poisson(pi: &MultiVector) -> Result<CheckReport> {
    let pp = schouten(pi, pi)?;
    Ok(CheckReport::new(vec![CheckResult::zero("poisson", "[pi,pi]", &pp)]))
}

/// `N pi# - pi# N*` as an endomorphism of `T*M -> TM`, column `i` being the
/// defect on `dx^i`.
pub fn compatibility_defect(pi: &MultiVector, n: &EndoField) -> Result<EndoField> {
    same_chart(pi.chart(), n.chart())?;
    let s = sharp_matrix(pi)?;
    let lhs = n.compose(&s)?;
    let rhs = s.compose(&n.transpose())?;
    Ok(&lhs - &rhs)
}

/// `pi_N` with `pi_N# = N pi#`; requires `N pi# = pi# N*`.
pub fn make_pi_n(pi: &MultiVector, n: &EndoField) -> Result<MultiVector> {
    let defect = compatibility_defect(pi, n)?;
    if !defect.is_zero() {
        return Err(Error::NotAntisymmetric {
            witness: defect.to_string(),
        });
    }
    let chart = pi.chart();
    let m = n.compose(&sharp_matrix(pi)?)?;
    // pi_N(dx^i, dx^j) = <dx^j, N pi# dx^i>
    let entries = crate::tensorfield::increasing_tuples(chart.dim(), 2)
        .into_iter()
        .map(|idx| {
            let f = m.entry(idx[1], idx[0]).clone();
            (idx, f)
        })
        .collect::<Vec<_>>();
    Ok(MultiVector::from_components(chart, 2, entries))
}

/// The concomitant
/// `C(a, b) = [a, b]_{pi_N} - [N* a, b]_pi - [a, N* b]_pi + N*[a, b]_pi`.
pub fn concomitant(pi: &MultiVector, pi_n: &MultiVector, n: &EndoField, a: &Form, b: &Form) -> Result<Form> {
    let mut c = koszul_bracket(a, b, pi_n)?;
    c = &c - &koszul_bracket(&n.apply_dual(a)?, b, pi)?;
    c = &c - &koszul_bracket(a, &n.apply_dual(b)?, pi)?;
    Ok(&c + &n.apply_dual(&koszul_bracket(a, b, pi)?)?)
}

pub fn check_compatibility(pi: &MultiVector, n: &EndoField) -> Result<CheckReport> {
    let chart = pi.chart();
    let dim = chart.dim();
    let defect = compatibility_defect(pi, n)?;
    let mut checks = vec![CheckResult::zero("compat.a", "N pi# - pi# N*", &defect)];
    if !defect.is_zero() {
        checks.push(CheckResult::fail("compat.b", "not evaluated: compat.a failed"));
        return Ok(CheckReport::new(checks));
    }
    let pi_n = make_pi_n(pi, n)?;
    let dx = |i: usize| Form::basis(chart, &[i]);
    let names = chart.names();
    for i in 0..dim {
        for j in i + 1..dim {
            let c = concomitant(pi, &pi_n, n, &dx(i), &dx(j))?;
            checks.push(CheckResult::zero(
                format!("compat.b({},{})", i + 1, j + 1),
                format!("C(d{},d{})", names[i], names[j]),
                &c,
            ));
        }
    }
    if dim >= 2 {
        let f = guard_function(chart);
        let lhs = concomitant(pi, &pi_n, n, &dx(0).mul_poly(&f), &dx(1))?;
        let rhs = concomitant(pi, &pi_n, n, &dx(0), &dx(1))?.mul_poly(&f);
        checks.push(CheckResult::zero("compat.b.guard", "C(f a, b) - f C(a, b)", &(&lhs - &rhs)));
    }
    Ok(CheckReport::new(checks))
}

/// `T_N(X, Y) - pi#(i_{X^Y} phi)`.
pub fn torsion_defect(s: &PqnStructure, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    let t = nijenhuis_torsion(&s.n, x, y)?;
    let rhs = sharp(&s.pi, &contract_pair(x, y, &s.phi)?)?;
    Ok(&t - &rhs)
}

pub fn check_pqn(s: &PqnStructure) -> Result<CheckReport> {
    let chart = s.chart();
    let names = chart.names();
    let mut checks = check_poisson(&s.pi)?.checks;
    checks.extend(check_compatibility(&s.pi, &s.n)?.checks);
    checks.push(CheckResult::zero("closed.phi", "d phi", &exterior_d(&s.phi)));
    checks.push(CheckResult::zero(
        "closed.iNphi",
        "d(i_N phi)",
        &exterior_d(&insert_n(&s.n, &s.phi)?),
    ));
    let phi_zero = s.phi.is_zero();
    let e = |i: usize| VectorField::basis(chart, i);
    for i in 0..chart.dim() {
        for j in i + 1..chart.dim() {
            let t = torsion_defect(s, &e(i), &e(j))?;
            let args = format!("d/d{},d/d{}", names[i], names[j]);
            let label = if phi_zero {
                format!("T_N({args})")
            } else {
                format!("T_N({args}) - pi#(phi({args},.))")
            };
            checks.push(CheckResult::zero(format!("torsion({},{})", i + 1, j + 1), label, &t));
        }
    }
    if chart.dim() >= 2 {
        let f = guard_function(chart);
        let lhs = torsion_defect(s, &e(0).mul_poly(&f), &e(1))?;
        let rhs = torsion_defect(s, &e(0), &e(1))?.mul_poly(&f);
        checks.push(CheckResult::zero(
            "torsion.guard",
            "D(f X, Y) - f D(X, Y)",
            &(&lhs - &rhs),
        ));
    }
    Ok(CheckReport::new(checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Arc<Chart> {
        Chart::new(["x", "y"]).unwrap()
    }

    fn std_pi(c: &Arc<Chart>) -> MultiVector {
        MultiVector::basis(c, &[0, 1])
    }

    #[test]
    fn poisson_verdicts() {
        let c = r2();
        assert!(check_poisson(&std_pi(&c)).unwrap().passed());
        let any = MultiVector::monomial(&c, &[0, 1], c.poly("x^3*y + 7").unwrap());
        assert!(check_poisson(&any).unwrap().passed());

        // x3 d1^d2 + d1^d3 is Poisson; d1^d2 + x2 d2^d3 is not
        let c3 = Chart::standard(3).unwrap();
        let p = MultiVector::monomial(&c3, &[0, 1], c3.coord(2)) + MultiVector::basis(&c3, &[0, 2]);
        assert!(check_poisson(&p).unwrap().passed());
        let q = MultiVector::basis(&c3, &[0, 1]) + MultiVector::monomial(&c3, &[1, 2], c3.coord(1));
        let r = check_poisson(&q).unwrap();
        assert!(!r.passed());
        let w = r.checks[0].witness.as_ref().unwrap();
        assert_eq!(w.components["e1^e2^e3"], "2");
    }

    #[test]
    fn compatibility_examples() {
        let c = r2();
        let pi = std_pi(&c);
        assert!(check_compatibility(&pi, &EndoField::identity(&c)).unwrap().passed());
        let xid = EndoField::scalar(&c, &c.coord(0));
        assert!(check_compatibility(&pi, &xid).unwrap().passed());
        let proj = EndoField::from_columns(&c, &[VectorField::basis(&c, 0), VectorField::zero(&c)]);
        let r = check_compatibility(&pi, &proj).unwrap();
        assert!(!r.get("compat.a").unwrap().pass);
    }

    #[test]
    fn pi_n_examples() {
        let c = r2();
        let pi = std_pi(&c);
        assert_eq!(make_pi_n(&pi, &EndoField::identity(&c)).unwrap(), pi);
        let xid = EndoField::scalar(&c, &c.coord(0));
        assert_eq!(
            make_pi_n(&pi, &xid).unwrap(),
            MultiVector::monomial(&c, &[0, 1], c.coord(0))
        );
        let proj = EndoField::from_columns(&c, &[VectorField::basis(&c, 0), VectorField::zero(&c)]);
        assert!(matches!(make_pi_n(&pi, &proj), Err(Error::NotAntisymmetric { .. })));
    }

    #[test]
    fn pqn_examples() {
        let c = r2();
        let pi = std_pi(&c);
        let s = PqnStructure::poisson_nijenhuis(pi.clone(), EndoField::identity(&c)).unwrap();
        assert!(check_pqn(&s).unwrap().passed());
        let s = PqnStructure::poisson_nijenhuis(pi.clone(), EndoField::scalar(&c, &c.coord(0))).unwrap();
        assert!(check_pqn(&s).unwrap().passed());

        let n = EndoField::from_columns(
            &c,
            &[VectorField::basis(&c, 1), VectorField::basis(&c, 0).mul_poly(&c.coord(0))],
        );
        let r = check_pqn(&PqnStructure::poisson_nijenhuis(pi, n).unwrap()).unwrap();
        assert!(!r.passed());
        let t = r.get("torsion(1,2)").unwrap();
        assert_eq!(t.witness.as_ref().unwrap().to_string(), "T_N(d/dx,d/dy) = -d/dy");
    }
}
