use std::sync::Arc;

use super::section::CourantSection;
use crate::calculus::{bracket_n, d_n, exterior_d, koszul_bracket, lichnerowicz_d, lichnerowicz_d_function};
use crate::error::{Error, Result};
use crate::polyring::{rational, Polynomial};
use crate::pqn::{check_pqn, PqnStructure};
use crate::tensorfield::{
    contract, contract_form, contract_pair, pairing, same_chart, sharp, Chart, EndoField, Form, MultiVector,
    VectorField,
};

/// The Courant algebroid `(TM)_N + (T*M)_pi` of a PqN structure, with
/// pairing, anchor `NX + pi# a` and the bracket built from `d_N`, `[.,.]_N`,
/// the Koszul bracket and `d_pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CourantStructure {
    pi: MultiVector,
    n: EndoField,
    phi: Form,
}

impl CourantStructure {
    /// Assembles `E` from a structure that passes every PqN check.
    pub fn from_pqn(s: &PqnStructure) -> Result<Self> {
        let report = check_pqn(s)?;
        if !report.passed() {
            let failing: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
            return Err(Error::InvalidStructure {
                failing: failing.join(", "),
            });
        }
        Ok(Self::unchecked(s))
    }

    /// The standard algebroid `TM + T*M` (`pi = 0`, `N = Id`, `phi = 0`).
    pub fn standard(chart: &Arc<Chart>) -> Self {
        CourantStructure {
            pi: MultiVector::zero(chart, 2),
            n: EndoField::identity(chart),
            phi: Form::zero(chart, 3),
        }
    }

    /// The standard algebroid twisted by a closed 3-form.
    pub fn twisted(phi: &Form) -> Result<Self> {
        if phi.degree() != 3 {
            return Err(Error::DegreeMismatch { left: phi.degree(), right: 3 });
        }
        let d = exterior_d(phi);
        if !d.is_zero() {
            return Err(Error::NotClosed { witness: d.to_string() });
        }
        let mut c = Self::standard(phi.chart());
        c.phi = phi.clone();
        Ok(c)
    }

    /// Assembly with no axiom checks, for negative controls.
    pub fn unchecked(s: &PqnStructure) -> Self {
        CourantStructure {
            pi: s.pi().clone(),
            n: s.n().clone(),
            phi: s.phi().clone(),
        }
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

    /// The frame `d/dx_1, .., d/dx_n, dx_1, .., dx_n`.
    pub fn frame(&self) -> Vec<CourantSection> {
        let chart = self.chart();
        (0..2 * chart.dim()).map(|a| CourantSection::frame(chart, a)).collect()
    }

    pub fn anchor(&self, s: &CourantSection) -> Result<VectorField> {
        same_chart(self.chart(), s.chart())?;
        self.n.apply(&s.vec)?.try_add(&sharp(&self.pi, &s.form)?)
    }

    /// `[[a, Y]]`: vector part `i_a d_pi Y + 1/2 d_pi(Y(a))`, form part
    /// `-(i_Y d_N a + 1/2 d_N(Y(a)))`.
    fn mixed(&self, alpha: &Form, y: &VectorField) -> Result<CourantSection> {
        let chart = self.chart();
        if alpha.is_zero() || y.is_zero() {
            return Ok(CourantSection::zero(chart));
        }
        let half = rational(1, 2);
        let ya = pairing(alpha, y)?;
        let dpy = lichnerowicz_d(&self.pi, &y.to_multivector())?;
        let v = VectorField::from_multivector(&contract_form(alpha, &dpy)?);
        let v = v.try_add(&lichnerowicz_d_function(&self.pi, &ya)?.scale(&half))?;
        let t = contract(y, &d_n(&self.n, alpha)?)?;
        let t = t.try_add(&d_n(&self.n, &Form::scalar(chart, ya))?.scale(&half))?;
        CourantSection::new(v, -t)
    }

    pub fn bracket(&self, s1: &CourantSection, s2: &CourantSection) -> Result<CourantSection> {
        same_chart(s1.chart(), s2.chart())?;
        same_chart(self.chart(), s1.chart())?;
        let (x, a) = (&s1.vec, &s1.form);
        let (y, b) = (&s2.vec, &s2.form);
        let mut out = CourantSection::zero(self.chart());
        if !x.is_zero() && !y.is_zero() {
            out.vec = bracket_n(&self.n, x, y)?;
            out.form = contract_pair(x, y, &self.phi)?;
        }
        if !a.is_zero() && !b.is_zero() {
            out.form = out.form.try_add(&koszul_bracket(a, b, &self.pi)?)?;
        }
        out = out.try_add(&self.mixed(a, y)?)?;
        out = out.try_add(&-self.mixed(b, x)?)?;
        Ok(out)
    }

    /// The section `D f` with `<D f, A> = 1/2 rho(A)(f)`, solved on the
    /// frame: form components `rho(d/dx_i)(f)`, vector components
    /// `rho(dx_i)(f)`.
    pub fn d_operator(&self, f: &Polynomial) -> Result<CourantSection> {
        let chart = self.chart();
        let n = chart.dim();
        let rho = |a: usize| self.anchor(&CourantSection::frame(chart, a)).map(|v| v.apply(f));
        let form = (0..n).map(|i| Ok((vec![i], rho(i)?))).collect::<Result<Vec<_>>>()?;
        let vec = (0..n).map(|i| rho(n + i)).collect::<Result<Vec<_>>>()?;
        CourantSection::new(VectorField::new(chart, vec), Form::from_components(chart, 1, form))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::courant::pairing_e;
    use crate::random::Sampler;

    fn r2() -> Arc<Chart> {
        Chart::new(["x", "y"]).unwrap()
    }

    fn sec(c: &Arc<Chart>, a: usize) -> CourantSection {
        CourantSection::frame(c, a)
    }

    #[test]
    fn anchor_examples() {
        let c = r2();
        let std = CourantStructure::standard(&c);
        let s = &sec(&c, 0) + &sec(&c, 3);
        assert_eq!(std.anchor(&s).unwrap(), VectorField::basis(&c, 0));
        let pqn = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::scalar(&c, &c.coord(0)))
            .unwrap();
        let e = CourantStructure::from_pqn(&pqn).unwrap();
        let expect = VectorField::basis(&c, 0).mul_poly(&c.poly("x - 1").unwrap());
        assert_eq!(e.anchor(&s).unwrap(), expect);
        assert!(e.anchor(&CourantSection::zero(&c)).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let c = r2();
        let std = CourantStructure::standard(&c);
        let ydx = CourantSection::from_form(Form::monomial(&c, &[0], c.coord(1))).unwrap();
        let got = std.bracket(&sec(&c, 0), &ydx).unwrap();
        let expect = CourantSection::from_form(Form::monomial(&c, &[1], c.poly("-1/2").unwrap())).unwrap();
        assert_eq!(got, expect);

        let c3 = Chart::new(["x", "y", "z"]).unwrap();
        let tw = CourantStructure::twisted(&Form::monomial(&c3, &[0, 1, 2], c3.coord(0))).unwrap();
        let got = tw.bracket(&sec(&c3, 0), &sec(&c3, 1)).unwrap();
        assert_eq!(got, CourantSection::from_form(Form::monomial(&c3, &[2], c3.coord(0))).unwrap());

        let pqn = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::identity(&c)).unwrap();
        let e = CourantStructure::from_pqn(&pqn).unwrap();
        assert!(e.bracket(&sec(&c, 2), &sec(&c, 3)).unwrap().is_zero());
    }

    #[test]
    fn twisted_requires_closed() {
        let c = Chart::standard(4).unwrap();
        let phi = Form::monomial(&c, &[0, 1, 2], c.coord(3));
        assert!(matches!(CourantStructure::twisted(&phi), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn d_operator_examples() {
        let c = r2();
        let std = CourantStructure::standard(&c);
        let f = c.poly("x^2*y").unwrap();
        let df = CourantSection::from_form(exterior_d(&Form::scalar(&c, f.clone()))).unwrap();
        assert_eq!(std.d_operator(&f).unwrap(), df);
        assert!(std.d_operator(&c.one()).unwrap().is_zero());

        let pqn = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::identity(&c)).unwrap();
        let e = CourantStructure::from_pqn(&pqn).unwrap();
        let dx = e.d_operator(&c.coord(0)).unwrap();
        assert_eq!(dx, &sec(&c, 2) - &sec(&c, 1));
    }

    #[test]
    fn d_operator_defining_relation() {
        let c = Chart::standard(3).unwrap();
        let mut s = Sampler::new(&c, 11);
        let pi = s.poisson_bivector(1);
        let e = CourantStructure {
            pi,
            n: s.endo(1),
            phi: Form::zero(&c, 3),
        };
        let f = s.polynomial(3);
        let df = e.d_operator(&f).unwrap();
        for _ in 0..5 {
            let a = CourantSection::new(s.vector_field(2), s.form(1, 2)).unwrap();
            let rhs = e.anchor(&a).unwrap().apply(&f).scale(&rational(1, 2));
            assert_eq!(pairing_e(&df, &a).unwrap(), rhs);
        }
    }

    #[test]
    fn matches_standard_formula() {
        // [[X + a, Y + b]] = [X,Y] + L_X b - L_Y a + 1/2 d(a(Y) - b(X))
        use crate::calculus::{lie_bracket, lie_derivative_form};
        let c = Chart::standard(3).unwrap();
        let std = CourantStructure::standard(&c);
        let mut s = Sampler::new(&c, 5);
        for _ in 0..10 {
            let (x, y) = (s.vector_field(2), s.vector_field(2));
            let (a, b) = (s.form(1, 2), s.form(1, 2));
            let got = std
                .bracket(
                    &CourantSection::new(x.clone(), a.clone()).unwrap(),
                    &CourantSection::new(y.clone(), b.clone()).unwrap(),
                )
                .unwrap();
            let g = &pairing(&a, &y).unwrap() - &pairing(&b, &x).unwrap();
            let form = &(&lie_derivative_form(&x, &b).unwrap() - &lie_derivative_form(&y, &a).unwrap())
                + &exterior_d(&Form::scalar(&c, g)).scale(&rational(1, 2));
            let expect = CourantSection::new(lie_bracket(&x, &y).unwrap(), form).unwrap();
            assert_eq!(got, expect);
        }
    }
}
