//! The quasi-Lie bialgebroid `((T*M)_pi, d_N, phi)` attached to a PqN
//! structure, and the anchor and bracket recovered from `d_N`.

use std::sync::Arc;

use super::structure::{guard_function, PqnStructure};
use crate::calculus::{bracket_n, d_n, koszul_bracket};
use crate::error::Result;
use crate::polyring::Polynomial;
use crate::random::Sampler;
use crate::report::{CheckReport, CheckResult, ScalarOn, Witnessed};
use crate::tensorfield::{evaluate_form, increasing_tuples, pairing, Chart, Form, VectorField};

/// Function multipliers `1, x_i` and, when `quadratic`, `x_i x_j` (`i <= j`).
pub fn multipliers(chart: &Arc<Chart>, quadratic: bool) -> Vec<Polynomial> {
    let n = chart.dim();
    let mut out = vec![chart.one()];
    out.extend((0..n).map(|i| chart.coord(i)));
    if quadratic {
        for i in 0..n {
            for j in i..n {
                out.push(&chart.coord(i) * &chart.coord(j));
            }
        }
    }
    out
}

/// Forms `f dx^I` over all index tuples, with `f` ranging over
/// [`multipliers`] (quadratic ones only in degrees 0 and 1), plus one seeded
/// random form per degree.
pub fn form_battery(chart: &Arc<Chart>, seed: u64) -> Vec<Form> {
    let n = chart.dim();
    let mut sampler = Sampler::new(chart, seed);
    let mut out = Vec::new();
    for k in 0..=n {
        let mults = multipliers(chart, k <= 1);
        for idx in increasing_tuples(n, k) {
            for f in &mults {
                out.push(Form::monomial(chart, &idx, f.clone()));
            }
        }
        out.push(sampler.form(k, 2));
    }
    out
}

/// Generators of the form algebra: functions `x_i`, `x_i x_j`, a random
/// function, the coordinate differentials, and one random form per degree.
pub fn generator_battery(chart: &Arc<Chart>, seed: u64) -> Vec<Form> {
    let n = chart.dim();
    let mut sampler = Sampler::new(chart, seed);
    let mut out: Vec<Form> = multipliers(chart, true)
        .into_iter()
        .skip(1)
        .map(|f| Form::scalar(chart, f))
        .collect();
    out.extend((0..n).map(|i| Form::basis(chart, &[i])));
    for k in 0..=n {
        out.push(sampler.form(k, 2));
    }
    out
}

/// Runs `defect` over `items`, passing iff every defect vanishes; the first
/// nonzero defect is the witness.
fn all_zero<T, W: Witnessed>(
    id: &str,
    items: &[T],
    mut defect: impl FnMut(&T) -> Result<(String, W)>,
) -> Result<CheckResult> {
    for item in items {
        let (label, d) = defect(item)?;
        if !d.is_zero() {
            return Ok(CheckResult::zero(id, label, &d));
        }
    }
    Ok(CheckResult::pass(id).with_detail(format!("{} cases", items.len())))
}

fn sign_pow(k: usize) -> bool {
    k % 2 == 1
}

/// `d_N(a ^ b) - d_N a ^ b - (-1)^{|a|} a ^ d_N b`.
pub fn wedge_derivation_defect(s: &PqnStructure, a: &Form, b: &Form) -> Result<Form> {
    let lhs = d_n(s.n(), &a.wedge(b)?)?;
    let t1 = d_n(s.n(), a)?.wedge(b)?;
    let t2 = a.wedge(&d_n(s.n(), b)?)?;
    let t2 = if sign_pow(a.degree()) { -t2 } else { t2 };
    Ok(&(&lhs - &t1) - &t2)
}

/// `d_N[a, b]_pi - [d_N a, b]_pi - (-1)^{|a|-1} [a, d_N b]_pi`.
pub fn bracket_derivation_defect(s: &PqnStructure, a: &Form, b: &Form) -> Result<Form> {
    let pi = s.pi();
    // two functions bracket to zero, so the left side is a zero function too
    let lhs = if a.degree() + b.degree() == 0 {
        Form::zero(s.chart(), 0)
    } else {
        d_n(s.n(), &koszul_bracket(a, b, pi)?)?
    };
    let t1 = koszul_bracket(&d_n(s.n(), a)?, b, pi)?;
    let t2 = koszul_bracket(a, &d_n(s.n(), b)?, pi)?;
    let t2 = if sign_pow(a.degree() + 1) { -t2 } else { t2 };
    let mut out = lhs.try_add(&-t1)?;
    out = out.try_add(&-t2)?;
    Ok(out)
}

/// `d_N(d_N eta) - [phi, eta]_pi`.
pub fn square_defect(s: &PqnStructure, eta: &Form) -> Result<Form> {
    let dd = d_n(s.n(), &d_n(s.n(), eta)?)?;
    let br = koszul_bracket(s.phi(), eta, s.pi())?;
    dd.try_add(&-br)
}

/// Anchor recovered from `d_N`: `rho(X)(f) = <d_N f, X>`.
pub fn recovered_anchor(s: &PqnStructure, x: &VectorField, f: &Polynomial) -> Result<Polynomial> {
    let dnf = d_n(s.n(), &Form::scalar(s.chart(), f.clone()))?;
    pairing(&dnf, x)
}

/// Bracket recovered from `d_N`:
/// `[X, Y](a) = rho(X)(a(Y)) - rho(Y)(a(X)) - (d_N a)(X, Y)`, read off on the
/// coordinate differentials.
pub fn recovered_bracket(s: &PqnStructure, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    let chart = s.chart();
    let comps = (0..chart.dim())
        .map(|c| {
            let a = Form::basis(chart, &[c]);
            let t1 = recovered_anchor(s, x, &pairing(&a, y)?)?;
            let t2 = recovered_anchor(s, y, &pairing(&a, x)?)?;
            let t3 = evaluate_form(&d_n(s.n(), &a)?, &[x, y])?;
            Ok(&(&t1 - &t2) - &t3)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorField::new(chart, comps))
}

/// Coordinate fields and their products with `x_i` and the guard function.
pub fn field_battery(chart: &Arc<Chart>) -> Vec<VectorField> {
    let n = chart.dim();
    let mut mults = multipliers(chart, false);
    mults.push(guard_function(chart));
    let mut out = Vec::new();
    for a in 0..n {
        for f in &mults {
            out.push(VectorField::basis(chart, a).mul_poly(f));
        }
    }
    out
}

/// Laws of a quasi-Lie bialgebroid for `((T*M)_pi, d_N, phi)`, plus the
/// recovered anchor and bracket.
pub fn check_qlba(s: &PqnStructure, seed: u64) -> Result<CheckReport> {
    let chart = s.chart();
    let gens = generator_battery(chart, seed);
    let pairs: Vec<(Form, Form)> = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let battery = form_battery(chart, seed.wrapping_add(1));
    let mut checks = Vec::new();

    checks.push(all_zero("qlba.dN.wedge", &pairs, |(a, b)| {
        Ok((format!("wedge defect on ({a}, {b})"), wedge_derivation_defect(s, a, b)?))
    })?);
    checks.push(all_zero("qlba.dN.bracket", &pairs, |(a, b)| {
        Ok((format!("bracket defect on ({a}, {b})"), bracket_derivation_defect(s, a, b)?))
    })?);
    checks.push(CheckResult::zero("qlba.dN.phi", "d_N phi", &d_n(s.n(), s.phi())?));
    checks.push(all_zero("qlba.dN.square", &battery, |eta| {
        Ok((format!("d_N^2 - [phi,.] on {eta}"), square_defect(s, eta)?))
    })?);

    let fields = field_battery(chart);
    let funcs: Vec<Polynomial> = multipliers(chart, true).into_iter().skip(1).collect();
    let anchor_cases: Vec<(VectorField, Polynomial)> = fields
        .iter()
        .flat_map(|x| funcs.iter().map(move |f| (x.clone(), f.clone())))
        .collect();
    checks.push(all_zero("recovered.anchor", &anchor_cases, |(x, f)| {
        let lhs = recovered_anchor(s, x, f)?;
        let rhs = s.n().apply(x)?.apply(f);
        Ok((format!("<d_N f, X> - (NX)(f) for X = {x}"), ScalarOn(chart, &lhs - &rhs)))
    })?);
    let field_pairs: Vec<(VectorField, VectorField)> = fields
        .iter()
        .enumerate()
        .flat_map(|(i, x)| fields[i + 1..].iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    checks.push(all_zero("recovered.bracket", &field_pairs, |(x, y)| {
        let d = &recovered_bracket(s, x, y)? - &bracket_n(s.n(), x, y)?;
        Ok((format!("recovered bracket - [X,Y]_N on ({x}, {y})"), d))
    })?);
    Ok(CheckReport::new(checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorfield::{EndoField, MultiVector};

    #[test]
    fn laws_on_pn_fixture() {
        let c = Chart::new(["x", "y"]).unwrap();
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::scalar(&c, &c.coord(0)))
            .unwrap();
        let r = check_qlba(&s, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn incompatible_pair_breaks_bracket_derivation() {
        let c = Chart::new(["x", "y"]).unwrap();
        let proj = EndoField::from_columns(&c, &[VectorField::basis(&c, 0), VectorField::zero(&c)]);
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), proj).unwrap();
        let r = check_qlba(&s, 3).unwrap();
        assert!(!r.get("qlba.dN.bracket").unwrap().pass);
    }
}
