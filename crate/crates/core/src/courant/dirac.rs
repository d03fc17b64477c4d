use std::sync::Arc;

use super::section::{pairing_e, CourantSection};
use super::structure::CourantStructure;
use crate::calculus::{bracket_n, d_n, frame_differential, koszul_bracket, Frame};
use crate::error::{Error, Result};
use crate::polyring::{integer, rational};
use crate::pqn::{form_battery, guard_function, require_closed, twist, PqnStructure};
use crate::report::{CheckReport, CheckResult, ScalarOn};
use crate::tensorfield::{
    compose_sharp_flat, contract_pair, flat, increasing_tuples, Chart, Form, VectorField,
};

/// A Lagrangian subbundle of `TM + T*M`: the graph of a 2-form over `TM`, or
/// the fiber `T*M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LagrangianGraph {
    Graph(Form),
    Cotangent(Arc<Chart>),
}

/// `Gr(B) = {X + i_X B}`; isotropy is verified on the frame.
pub fn graph_subbundle(b: &Form) -> Result<LagrangianGraph> {
    if b.degree() != 2 {
        return Err(Error::DegreeMismatch { left: b.degree(), right: 2 });
    }
    let l = LagrangianGraph::Graph(b.clone());
    let frame = l.frame()?;
    for s in &frame {
        for t in &frame {
            let p = pairing_e(s, t)?;
            assert!(p.is_zero(), "graph of a 2-form is isotropic");
        }
    }
    Ok(l)
}

impl LagrangianGraph {
    pub fn chart(&self) -> &Arc<Chart> {
        match self {
            LagrangianGraph::Graph(b) => b.chart(),
            LagrangianGraph::Cotangent(c) => c,
        }
    }

    /// `d/dx_i + i_{d/dx_i} B`, or `dx_i`.
    pub fn frame(&self) -> Result<Vec<CourantSection>> {
        let chart = self.chart();
        (0..chart.dim())
            .map(|i| match self {
                LagrangianGraph::Graph(b) => {
                    let x = VectorField::basis(chart, i);
                    CourantSection::new(x.clone(), flat(b, &x)?)
                }
                LagrangianGraph::Cotangent(_) => Ok(CourantSection::frame(chart, chart.dim() + i)),
            })
            .collect()
    }

    /// Component of `s` along the fixed complement: `T*M` for a graph
    /// (`a - i_X B`), `TM` for the cotangent fiber.
    pub fn transverse(&self, s: &CourantSection) -> Result<CourantSection> {
        match self {
            LagrangianGraph::Graph(b) => CourantSection::from_form(s.form.try_add(&-flat(b, &s.vec)?)?),
            LagrangianGraph::Cotangent(_) => Ok(CourantSection::from_vec(s.vec.clone())),
        }
    }
}

/// Closure of the frame of `L` under the bracket, with an f-linearity guard on
/// the closure defect.
pub fn is_dirac(c: &CourantStructure, l: &LagrangianGraph) -> Result<CheckReport> {
    let chart = c.chart();
    let frame = l.frame()?;
    let mut checks = Vec::new();
    for i in 0..frame.len() {
        for j in i + 1..frame.len() {
            let t = l.transverse(&c.bracket(&frame[i], &frame[j])?)?;
            checks.push(CheckResult::zero(
                format!("dirac.closure({},{})", i + 1, j + 1),
                format!("transverse part of [[s{}, s{}]]", i + 1, j + 1),
                &t,
            ));
        }
    }
    let mut iso = chart.zero();
    for s in &frame {
        for t in &frame {
            iso += &pairing_e(s, t)?.pow(2);
        }
    }
    checks.push(CheckResult::zero("dirac.isotropic", "sum of squared frame pairings", &ScalarOn(chart, iso)));
    if frame.len() >= 2 {
        let f = guard_function(chart);
        let lhs = l.transverse(&c.bracket(&frame[0].mul_poly(&f), &frame[1])?)?;
        let rhs = l.transverse(&c.bracket(&frame[0], &frame[1])?)?.mul_poly(&f);
        checks.push(CheckResult::zero("dirac.guard", "D(f s1, s2) - f D(s1, s2)", &(&lhs - &rhs)));
    }
    Ok(CheckReport::new(checks))
}

/// The quasi-Lie bialgebroid `(T*M, d_L, phi_L)` induced by a Lagrangian
/// complement `L = Gr(Omega)` of the Dirac structure `T*M`.
#[derive(Debug, Clone)]
pub struct InducedQlba {
    /// Anchors `rho(X~_a)` and brackets `[X~_a, X~_b]_L` of the lifted frame.
    pub frame: Frame,
    pub phi: Form,
}

impl InducedQlba {
    pub fn d(&self, eta: &Form) -> Form {
        frame_differential(eta, &self.frame)
    }

    /// `d_L` on each of `forms`.
    pub fn table(&self, forms: &[Form]) -> Vec<(Form, Form)> {
        forms.iter().map(|f| (f.clone(), self.d(f))).collect()
    }
}

pub fn induced_qlba(c: &CourantStructure, l: &LagrangianGraph) -> Result<InducedQlba> {
    let LagrangianGraph::Graph(_) = l else {
        return Err(Error::NotTransversal);
    };
    let chart = c.chart();
    let n = chart.dim();
    let lifts = l.frame()?;
    let anchors = lifts.iter().map(|s| c.anchor(s)).collect::<Result<Vec<_>>>()?;
    let mut brackets = vec![vec![vec![chart.zero(); n]; n]; n];
    let mut table = vec![vec![None; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let br = c.bracket(&lifts[a], &lifts[b])?;
            brackets[a][b] = br.vec.comps().to_vec();
            brackets[b][a] = (-&br.vec).comps().to_vec();
            table[a][b] = Some(br);
        }
    }
    let two = integer(2);
    let phi_entries = increasing_tuples(n, 3)
        .into_iter()
        .map(|idx| {
            let br = table[idx[0]][idx[1]].as_ref().expect("filled for a < b");
            Ok((idx.clone(), pairing_e(br, &lifts[idx[2]])?.scale(&two)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InducedQlba {
        frame: Frame { anchors, brackets },
        phi: Form::from_components(chart, 3, phi_entries),
    })
}

/// For closed `Omega`, compares `[[X + O_flat X, Y + O_flat Y]]` on frame
/// fields with `[X,Y]_N^ + O_flat [X,Y]_N^ + i_{X^Y}(phi + d_N O + 1/2[O,O]_pi)`.
pub fn verify_graph_bracket(c: &CourantStructure, omega: &Form) -> Result<CheckReport> {
    require_closed(omega)?;
    let chart = c.chart();
    let n_hat = c.n().try_add(&compose_sharp_flat(c.pi(), omega)?)?;
    let phi_hat = c
        .phi()
        .try_add(&d_n(c.n(), omega)?)?
        .try_add(&koszul_bracket(omega, omega, c.pi())?.scale(&rational(1, 2)))?;
    let lift = |x: &VectorField| -> Result<CourantSection> { CourantSection::new(x.clone(), flat(omega, x)?) };
    let mut fields: Vec<VectorField> = (0..chart.dim()).map(|i| VectorField::basis(chart, i)).collect();
    if chart.dim() >= 1 {
        fields.push(fields[0].mul_poly(&guard_function(chart)));
    }
    let mut checks = Vec::new();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let (x, y) = (&fields[i], &fields[j]);
            let lhs = c.bracket(&lift(x)?, &lift(y)?)?;
            let v = bracket_n(&n_hat, x, y)?;
            let form = flat(omega, &v)?.try_add(&contract_pair(x, y, &phi_hat)?)?;
            let rhs = CourantSection::new(v, form)?;
            let id = if j < chart.dim() {
                format!("graph.bracket({},{})", i + 1, j + 1)
            } else {
                format!("graph.bracket.guard({})", i + 1)
            };
            checks.push(CheckResult::zero(id, "[[X~, Y~]] - expected", &(&lhs - &rhs)));
        }
    }
    Ok(CheckReport::new(checks))
}

/// The induced `(d_L, phi_L)` of `Gr(Omega)` inside the algebroid of `s`
/// against `(d_N^, phi^)` of the deformed structure, over the form battery.
pub fn check_induced_matches_deform(s: &PqnStructure, omega: &Form, seed: u64) -> Result<CheckReport> {
    require_closed(omega)?;
    let c = CourantStructure::from_pqn(s)?;
    let induced = induced_qlba(&c, &LagrangianGraph::Graph(omega.clone()))?;
    let deformed = twist(s, omega)?;
    let mut check_d = CheckResult::pass("thm.dL");
    let battery = form_battery(s.chart(), seed);
    for eta in &battery {
        let d = &induced.d(eta) - &d_n(deformed.n(), eta)?;
        if !d.is_zero() {
            check_d = CheckResult::zero("thm.dL", format!("d_L - d_N^ on {eta}"), &d);
            break;
        }
    }
    if check_d.pass {
        check_d = check_d.with_detail(format!("{} forms", battery.len()));
    }
    let check_phi = CheckResult::zero("thm.phi", "phi_L - phi^", &(&induced.phi - deformed.phi()));
    Ok(CheckReport::new(vec![check_d, check_phi]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::exterior_d;
    use crate::tensorfield::{EndoField, MultiVector};

    fn r2() -> Arc<Chart> {
        Chart::new(["x", "y"]).unwrap()
    }

    #[test]
    fn graph_frames() {
        let c = r2();
        let l = graph_subbundle(&Form::zero(&c, 2)).unwrap();
        assert_eq!(l.frame().unwrap(), vec![CourantSection::frame(&c, 0), CourantSection::frame(&c, 1)]);
        let l = graph_subbundle(&Form::basis(&c, &[0, 1])).unwrap();
        let f = l.frame().unwrap();
        assert_eq!(f[0], &CourantSection::frame(&c, 0) + &CourantSection::frame(&c, 3));
        assert_eq!(f[1], &CourantSection::frame(&c, 1) - &CourantSection::frame(&c, 2));
    }

    #[test]
    fn dirac_verdicts() {
        let c = r2();
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::scalar(&c, &c.coord(0)))
            .unwrap();
        let e = CourantStructure::from_pqn(&s).unwrap();
        assert!(is_dirac(&e, &LagrangianGraph::Cotangent(c.clone())).unwrap().passed());

        let c3 = Chart::standard(3).unwrap();
        let std = CourantStructure::standard(&c3);
        let closed = exterior_d(&Form::monomial(&c3, &[0], c3.poly("x2*x3^2").unwrap()));
        assert!(is_dirac(&std, &graph_subbundle(&closed).unwrap()).unwrap().passed());

        let open = Form::monomial(&c3, &[0, 1], c3.coord(2));
        let r = is_dirac(&std, &graph_subbundle(&open).unwrap()).unwrap();
        assert!(!r.passed());
        // the defect is i_{X^Y} dO up to sign: here dO = dx1^dx2^dx3
        let w = r.get("dirac.closure(1,2)").unwrap().witness.as_ref().unwrap();
        assert_eq!(w.value, "dx3");
    }

    #[test]
    fn induced_examples() {
        let c3 = Chart::new(["x", "y", "z"]).unwrap();
        let phi = Form::monomial(&c3, &[0, 1, 2], c3.coord(0));
        let tw = CourantStructure::twisted(&phi).unwrap();
        let om = exterior_d(&Form::monomial(&c3, &[1], c3.poly("x*z").unwrap()));
        let q = induced_qlba(&tw, &graph_subbundle(&om).unwrap()).unwrap();
        assert_eq!(q.phi, phi);
        let eta = Form::monomial(&c3, &[0], c3.poly("y*z^2").unwrap());
        assert_eq!(q.d(&eta), exterior_d(&eta));

        let c = r2();
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::identity(&c)).unwrap();
        let e = CourantStructure::from_pqn(&s).unwrap();
        let q = induced_qlba(&e, &graph_subbundle(&Form::monomial(&c, &[0, 1], c.coord(0))).unwrap()).unwrap();
        assert!(q.phi.is_zero());
        let n_hat = EndoField::scalar(&c, &c.poly("1 - x").unwrap());
        for eta in form_battery(&c, 1) {
            assert_eq!(q.d(&eta), d_n(&n_hat, &eta).unwrap());
        }
        let q0 = induced_qlba(&e, &graph_subbundle(&Form::zero(&c, 2)).unwrap()).unwrap();
        let eta = Form::monomial(&c, &[1], c.poly("x*y").unwrap());
        assert_eq!(q0.d(&eta), d_n(s.n(), &eta).unwrap());

        assert!(matches!(
            induced_qlba(&e, &LagrangianGraph::Cotangent(c.clone())),
            Err(Error::NotTransversal)
        ));
    }

    #[test]
    fn graph_bracket_examples() {
        let c = r2();
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::identity(&c)).unwrap();
        let e = CourantStructure::from_pqn(&s).unwrap();
        assert!(verify_graph_bracket(&e, &Form::zero(&c, 2)).unwrap().passed());
        assert!(verify_graph_bracket(&e, &Form::basis(&c, &[0, 1])).unwrap().passed());
        assert!(check_induced_matches_deform(&s, &Form::monomial(&c, &[0, 1], c.coord(0)), 0)
            .unwrap()
            .passed());
    }

    #[test]
    fn koszul_lemma_through_bracket() {
        // form part of [[O_flat X, O_flat Y]] = O_flat [X,Y]_(pi# O_flat) + 1/2 i_{X^Y}[O,O]_pi
        let c = Chart::standard(3).unwrap();
        let pi = MultiVector::monomial(&c, &[0, 1], c.coord(2)) + MultiVector::basis(&c, &[0, 2]);
        let s = PqnStructure::poisson_nijenhuis(pi.clone(), EndoField::zero(&c)).unwrap();
        let e = CourantStructure::unchecked(&s);
        let om = exterior_d(&Form::monomial(&c, &[2], c.poly("x1*x2").unwrap()));
        let m = compose_sharp_flat(&pi, &om).unwrap();
        let oo = koszul_bracket(&om, &om, &pi).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let (x, y) = (VectorField::basis(&c, a), VectorField::basis(&c, b));
                let lhs = e
                    .bracket(
                        &CourantSection::from_form(flat(&om, &x).unwrap()).unwrap(),
                        &CourantSection::from_form(flat(&om, &y).unwrap()).unwrap(),
                    )
                    .unwrap();
                let rhs = &flat(&om, &bracket_n(&m, &x, &y).unwrap()).unwrap()
                    + &contract_pair(&x, &y, &oo).unwrap().scale(&rational(1, 2));
                assert_eq!(lhs.form, rhs);
            }
        }
    }
}
