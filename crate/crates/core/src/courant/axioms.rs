use rayon::prelude::*;

use super::section::{pairing_e, CourantSection};
use super::structure::CourantStructure;
use crate::calculus::lie_bracket;
use crate::error::Result;
use crate::polyring::{rational, Polynomial};
use crate::pqn::{guard_function, multipliers};
use crate::random::Sampler;
use crate::report::{CheckReport, CheckResult, ScalarOn, Witnessed};

/// Section battery for the non-tensorial axioms.
#[derive(Debug, Clone)]
pub struct AxiomBattery {
    /// Frame sections are multiplied by all monomials up to this degree
    /// (`0`: frame only, `1`: adds `x_i`, `2`: adds `x_i x_j`).
    pub multiplier_degree: u32,
    /// Seeded random sections checked against each other.
    pub random_sections: usize,
    pub random_degree: u32,
    pub seed: u64,
}

impl Default for AxiomBattery {
    fn default() -> Self {
        AxiomBattery {
            multiplier_degree: 2,
            random_sections: 3,
            random_degree: 2,
            seed: 0,
        }
    }
}

fn battery_multipliers(c: &CourantStructure, degree: u32) -> Vec<Polynomial> {
    let chart = c.chart();
    match degree {
        0 => vec![chart.one()],
        1 => multipliers(chart, false),
        _ => multipliers(chart, true),
    }
}

/// The five axiom defects for one choice of arguments.
pub fn anchor_defect(c: &CourantStructure, a: &CourantSection, b: &CourantSection) -> Result<crate::tensorfield::VectorField> {
    let lhs = c.anchor(&c.bracket(a, b)?)?;
    let rhs = lie_bracket(&c.anchor(a)?, &c.anchor(b)?)?;
    lhs.try_add(&-rhs)
}

/// `Jac(A, B, C) - 1/3 D(T(A, B, C))`.
pub fn jacobi_defect(
    c: &CourantStructure,
    a: &CourantSection,
    b: &CourantSection,
    e: &CourantSection,
) -> Result<CourantSection> {
    let ab = c.bracket(a, b)?;
    let be = c.bracket(b, e)?;
    let ea = c.bracket(e, a)?;
    let jac = &(&c.bracket(&ab, e)? + &c.bracket(&be, a)?) + &c.bracket(&ea, b)?;
    let t = &(&pairing_e(&ab, e)? + &pairing_e(&be, a)?) + &pairing_e(&ea, b)?;
    let dt = c.d_operator(&t)?.scale(&rational(1, 3));
    Ok(&jac - &dt)
}

/// `[[A, fB]] - f[[A, B]] - rho(A)(f) B + <A, B> D f`.
pub fn leibniz_defect(
    c: &CourantStructure,
    a: &CourantSection,
    b: &CourantSection,
    f: &Polynomial,
) -> Result<CourantSection> {
    let lhs = c.bracket(a, &b.mul_poly(f))?;
    let t1 = c.bracket(a, b)?.mul_poly(f);
    let t2 = b.mul_poly(&c.anchor(a)?.apply(f));
    let t3 = c.d_operator(f)?.mul_poly(&pairing_e(a, b)?);
    Ok(&(&(&lhs - &t1) - &t2) + &t3)
}

pub fn d_isotropy_defect(c: &CourantStructure, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    pairing_e(&c.d_operator(f)?, &c.d_operator(g)?)
}

/// `rho(A)<B, C> - <[[A, B]] + D<A, B>, C> - <B, [[A, C]] + D<A, C>>`.
pub fn invariance_defect(
    c: &CourantStructure,
    a: &CourantSection,
    b: &CourantSection,
    e: &CourantSection,
) -> Result<Polynomial> {
    let lhs = c.anchor(a)?.apply(&pairing_e(b, e)?);
    let ab = &c.bracket(a, b)? + &c.d_operator(&pairing_e(a, b)?)?;
    let ae = &c.bracket(a, e)? + &c.d_operator(&pairing_e(a, e)?)?;
    Ok(&(&lhs - &pairing_e(&ab, e)?) - &pairing_e(b, &ae)?)
}

/// First nonzero defect over `cases`, evaluated in parallel; ties resolve to
/// the earliest case so the verdict is deterministic.
fn scan<T: Sync, W: Witnessed + Send>(
    id: &str,
    cases: &[T],
    defect: impl Fn(&T) -> Result<Option<(String, W)>> + Sync,
) -> Result<CheckResult> {
    let found = cases
        .par_iter()
        .map(&defect)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .find(|(_, w)| !w.is_zero());
    Ok(match found {
        Some((label, w)) => CheckResult::zero(id, label, &w),
        None => CheckResult::pass(id).with_detail(format!("{} cases", cases.len())),
    })
}

/// `Jac - 1/3 D(T)` from the three inner brackets `[[A,B]]`, `[[B,C]]`,
/// `[[C,A]]`.
fn jacobi_from(
    c: &CourantStructure,
    (a, b, e): (&CourantSection, &CourantSection, &CourantSection),
    (ab, be, ea): (&CourantSection, &CourantSection, &CourantSection),
) -> Result<CourantSection> {
    let jac = &(&c.bracket(ab, e)? + &c.bracket(be, a)?) + &c.bracket(ea, b)?;
    let t = &(&pairing_e(ab, e)? + &pairing_e(be, a)?) + &pairing_e(ea, b)?;
    Ok(&jac - &c.d_operator(&t)?.scale(&rational(1, 3)))
}

fn invariance_from(
    c: &CourantStructure,
    (a, b, e): (&CourantSection, &CourantSection, &CourantSection),
    (ab, ae): (&CourantSection, &CourantSection),
) -> Result<Polynomial> {
    let lhs = c.anchor(a)?.apply(&pairing_e(b, e)?);
    let ab = ab + &c.d_operator(&pairing_e(a, b)?)?;
    let ae = ae + &c.d_operator(&pairing_e(a, e)?)?;
    Ok(&(&lhs - &pairing_e(&ab, e)?) - &pairing_e(b, &ae)?)
}

fn label(args: &[&CourantSection]) -> String {
    let parts: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    parts.join(", ")
}

/// Checks axioms (i)-(v) on frame sections times the multiplier battery and
/// on seeded random sections.
pub fn check_courant_axioms(c: &CourantStructure, battery: &AxiomBattery) -> Result<CheckReport> {
    let chart = c.chart();
    let frame = c.frame();
    let m = frame.len();
    let mults = battery_multipliers(c, battery.multiplier_degree);
    // all[..m] is the frame itself (multiplier 1 comes first)
    let mut all: Vec<CourantSection> = Vec::new();
    for f in &mults {
        for e in &frame {
            all.push(e.mul_poly(f));
        }
    }
    let n_battery = all.len();
    let mut sampler = Sampler::new(chart, battery.seed);
    for _ in 0..battery.random_sections {
        let d = battery.random_degree;
        all.push(CourantSection::new(sampler.vector_field(d), sampler.form(1, d))?);
    }
    let random: Vec<usize> = (n_battery..all.len()).collect();
    let mut funcs: Vec<Polynomial> = mults.iter().filter(|f| !f.is_constant()).cloned().collect();
    funcs.push(guard_function(chart));
    funcs.push(sampler.polynomial(battery.random_degree.max(1)));

    // table[s][b] = [[all[s], frame[b]]]
    let table: Vec<Vec<CourantSection>> = all
        .par_iter()
        .map(|s| frame.iter().map(|e| c.bracket(s, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let anchors: Vec<_> = all.par_iter().map(|s| c.anchor(s)).collect::<Result<Vec<_>>>()?;

    // (i): every section against the frame, plus random pairs
    let mut pairs: Vec<(usize, usize)> = (0..all.len()).flat_map(|s| (0..m).map(move |b| (s, b))).collect();
    pairs.extend(random.iter().flat_map(|&s| random.iter().map(move |&t| (s, m + t))));
    let anchor = scan("courant.i.anchor", &pairs, |&(s, b)| {
        let (br, rb) = if b < m {
            (table[s][b].clone(), &anchors[b])
        } else {
            (c.bracket(&all[s], &all[b - m])?, &anchors[b - m])
        };
        let other = if b < m { &frame[b] } else { &all[b - m] };
        let d = c.anchor(&br)?.try_add(&-lie_bracket(&anchors[s], rb)?)?;
        Ok(Some((format!("rho[[A,B]] - [rho A, rho B] at ({})", label(&[&all[s], other])), d)))
    })?;

    // (ii): the defect alternates, so two frame slots and one battery slot
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            triples.extend((0..all.len()).map(|s| (i, j, s)));
        }
    }
    let jacobi_frame = scan("courant.ii.jacobi", &triples, |&(i, j, s)| {
        let (a, b, e) = (&frame[i], &frame[j], &all[s]);
        let d = jacobi_from(c, (a, b, e), (&table[i][j], &-&table[s][j], &table[s][i]))?;
        Ok(Some((format!("Jac - D(T)/3 at ({})", label(&[a, b, e])), d)))
    })?;
    let mut rtriples = Vec::new();
    for (x, &i) in random.iter().enumerate() {
        for &j in &random[x + 1..] {
            rtriples.extend((0..n_battery).map(|s| (i, j, s)));
        }
    }
    let jacobi_random = scan("courant.ii.jacobi", &rtriples, |&(i, j, s)| {
        let (a, b, e) = (&all[i], &all[j], &all[s]);
        Ok(Some((format!("Jac - D(T)/3 at ({})", label(&[a, b, e])), jacobi_defect(c, a, b, e)?)))
    })?;
    let jacobi = if jacobi_frame.pass && jacobi_random.pass {
        CheckResult::pass("courant.ii.jacobi").with_detail(format!("{} cases", triples.len() + rtriples.len()))
    } else if !jacobi_frame.pass {
        jacobi_frame
    } else {
        jacobi_random
    };

    // (iii)
    let mut leib = Vec::new();
    let firsts: Vec<usize> = (0..m).chain(random.iter().copied()).collect();
    for &a in &firsts {
        for &b in &firsts {
            leib.extend((0..funcs.len()).map(|f| (a, b, f)));
        }
    }
    let leibniz = scan("courant.iii.leibniz", &leib, |&(a, b, f)| {
        let (a, b, f) = (&all[a], &all[b], &funcs[f]);
        Ok(Some((
            format!("Leibniz defect at ({}), f = {}", label(&[a, b]), chart.render(f)),
            leibniz_defect(c, a, b, f)?,
        )))
    })?;

    // (iv)
    let mut fg = Vec::new();
    for i in 0..funcs.len() {
        fg.extend((i..funcs.len()).map(|j| (i, j)));
    }
    let iso = scan("courant.iv.d-isotropic", &fg, |&(i, j)| {
        let (f, g) = (&funcs[i], &funcs[j]);
        let d = d_isotropy_defect(c, f, g)?;
        Ok(Some((format!("<Df, Dg>, f = {}, g = {}", chart.render(f), chart.render(g)), ScalarOn(chart, d))))
    })?;

    // (v): symmetric in the last two slots
    let mut inv: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..all.len() {
        for b in 0..m {
            inv.extend((b..m).map(|e| (s, b, e)));
        }
    }
    let invariance_a = scan("courant.v.invariance", &inv, |&(s, b, e)| {
        let (a, bb, ee) = (&all[s], &frame[b], &frame[e]);
        let d = invariance_from(c, (a, bb, ee), (&table[s][b], &table[s][e]))?;
        Ok(Some((format!("pairing invariance at ({})", label(&[a, bb, ee])), ScalarOn(chart, d))))
    })?;
    let mut inv2: Vec<(usize, usize, usize)> = Vec::new();
    for &a in &firsts {
        for s in 0..all.len() {
            inv2.extend(firsts.iter().map(|&e| (a, s, e)));
        }
    }
    let invariance_b = scan("courant.v.invariance", &inv2, |&(a, s, e)| {
        let (aa, bb, ee) = (&all[a], &all[s], &all[e]);
        let ab = if a < m { -&table[s][a] } else { c.bracket(aa, bb)? };
        let ae = if e < m { table[a][e].clone() } else { c.bracket(aa, ee)? };
        let d = invariance_from(c, (aa, bb, ee), (&ab, &ae))?;
        Ok(Some((format!("pairing invariance at ({})", label(&[aa, bb, ee])), ScalarOn(chart, d))))
    })?;
    let invariance = if invariance_a.pass && invariance_b.pass {
        CheckResult::pass("courant.v.invariance").with_detail(format!("{} cases", inv.len() + inv2.len()))
    } else if !invariance_a.pass {
        invariance_a
    } else {
        invariance_b
    };

    Ok(CheckReport::new(vec![anchor, jacobi, leibniz, iso, invariance]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorfield::{Chart, EndoField, Form, MultiVector};
    use crate::pqn::PqnStructure;

    fn light() -> AxiomBattery {
        AxiomBattery {
            multiplier_degree: 1,
            random_sections: 2,
            ..AxiomBattery::default()
        }
    }

    #[test]
    fn standard_plane() {
        let c = Chart::new(["x", "y"]).unwrap();
        let r = check_courant_axioms(&CourantStructure::standard(&c), &AxiomBattery::default()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn twisted_space() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let tw = CourantStructure::twisted(&Form::monomial(&c, &[0, 1, 2], c.coord(0))).unwrap();
        let r = check_courant_axioms(&tw, &light()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn pn_plane() {
        let c = Chart::new(["x", "y"]).unwrap();
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), EndoField::scalar(&c, &c.coord(0)))
            .unwrap();
        let r = check_courant_axioms(&CourantStructure::from_pqn(&s).unwrap(), &light()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn torsion_fixture_breaks_axioms() {
        let c = Chart::new(["x", "y"]).unwrap();
        let n = EndoField::from_columns(
            &c,
            &[
                crate::tensorfield::VectorField::basis(&c, 1),
                crate::tensorfield::VectorField::basis(&c, 0).mul_poly(&c.coord(0)),
            ],
        );
        let s = PqnStructure::poisson_nijenhuis(MultiVector::basis(&c, &[0, 1]), n).unwrap();
        let r = check_courant_axioms(&CourantStructure::unchecked(&s), &light()).unwrap();
        assert!(!r.passed());
    }
}
