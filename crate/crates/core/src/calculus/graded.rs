//! Generalized Schouten bracket on the exterior algebra of a Lie algebroid,
//! computed by reduction to generators.

use std::sync::Arc;

use super::cartan::{differential, lie_bracket, lie_derivative_form};
use crate::error::Result;
use crate::polyring::Polynomial;
use crate::tensorfield::{pairing, same_chart, sharp, Alt, Chart, Form, MultiVector, Variance, VectorField};

/// The degree-1 data a graded bracket is built from.
pub trait Algebroid: Sync {
    type V: Variance;
    fn chart(&self) -> &Arc<Chart>;
    /// Anchor of a degree-1 section.
    fn anchor(&self, a: &Alt<Self::V>) -> Result<VectorField>;
    /// Bracket of two degree-1 sections.
    fn bracket1(&self, a: &Alt<Self::V>, b: &Alt<Self::V>) -> Result<Alt<Self::V>>;
}

/// `TM` with the Lie bracket and identity anchor; its bracket is Schouten.
pub struct TangentAlgebroid {
    pub chart: Arc<Chart>,
}

impl Algebroid for TangentAlgebroid {
    type V = crate::tensorfield::Contra;

    fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    fn anchor(&self, a: &MultiVector) -> Result<VectorField> {
        Ok(VectorField::from_multivector(a))
    }

    fn bracket1(&self, a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
        let x = VectorField::from_multivector(a);
        let y = VectorField::from_multivector(b);
        Ok(lie_bracket(&x, &y)?.to_multivector())
    }
}

/// `T*M` with anchor `pi#` and the bracket
/// `[a, b]_pi = L_{pi# a} b - L_{pi# b} a - d<b, pi# a>`.
pub struct PoissonCotangent<'a> {
    pub pi: &'a MultiVector,
}

impl Algebroid for PoissonCotangent<'_> {
    type V = crate::tensorfield::Co;

    fn chart(&self) -> &Arc<Chart> {
        self.pi.chart()
    }

    fn anchor(&self, a: &Form) -> Result<VectorField> {
        sharp(self.pi, a)
    }

    fn bracket1(&self, a: &Form, b: &Form) -> Result<Form> {
        let pa = sharp(self.pi, a)?;
        let pb = sharp(self.pi, b)?;
        let mut out = lie_derivative_form(&pa, b)?;
        out = &out - &lie_derivative_form(&pb, a)?;
        let f = pairing(b, &pa)?;
        Ok(&out - &differential(self.chart(), &f))
    }
}

/// Sign used when swapping the arguments of a bracket.
///
/// `Standard` is `[a, b] = -(-1)^{(p-1)(q-1)} [b, a]`; `FlippedSymmetry`
/// drops the leading minus and exists only as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BracketSigns {
    #[default]
    Standard,
    FlippedSymmetry,
}

impl BracketSigns {
    /// True when `[a, b] = -[b, a]` for degrees `p`, `q`.
    fn swap_negates(self, p: usize, q: usize) -> bool {
        // parity of (p-1)(q-1), written without underflow
        let odd = (p + 1) * (q + 1) % 2 == 1;
        match self {
            BracketSigns::Standard => !odd,
            BracketSigns::FlippedSymmetry => odd,
        }
    }
}

/// The graded bracket of two elements of degrees `p` and `q`, of degree
/// `p + q - 1`. Two functions bracket to the zero function.
pub fn graded_bracket<A: Algebroid>(
    alg: &A,
    a: &Alt<A::V>,
    b: &Alt<A::V>,
    signs: BracketSigns,
) -> Result<Alt<A::V>> {
    let chart = alg.chart();
    same_chart(chart, a.chart())?;
    same_chart(chart, b.chart())?;
    let degree = (a.degree() + b.degree()).saturating_sub(1);
    let mut out = Alt::zero(chart, degree);
    if a.degree() + b.degree() == 0 {
        return Ok(out);
    }
    for (i, f) in a.terms() {
        for (j, g) in b.terms() {
            out = out.try_add(&monomial_bracket(alg, i, f, j, g, signs)?)?;
        }
    }
    Ok(out)
}

/// `[f e_I, g e_J]` by the derivation rule on the right argument, the swap
/// rule, and the degree (1,0), (0,1), (1,1) base cases.
fn monomial_bracket<A: Algebroid>(
    alg: &A,
    i: &[usize],
    f: &Polynomial,
    j: &[usize],
    g: &Polynomial,
    signs: BracketSigns,
) -> Result<Alt<A::V>> {
    let chart = alg.chart();
    let (p, q) = (i.len(), j.len());
    if q >= 2 {
        // b = (g e_{j1}) ^ e_{J'}
        let (head, tail) = j.split_at(1);
        let one = chart.one();
        let first = monomial_bracket(alg, i, f, head, g, signs)?.wedge(&Alt::basis(chart, tail))?;
        let second = Alt::monomial(chart, head, g.clone())
            .wedge(&monomial_bracket(alg, i, f, tail, &one, signs)?)?;
        // (-1)^{p-1}
        return if p % 2 == 1 {
            first.try_add(&second)
        } else {
            first.try_add(&-second)
        };
    }
    if p >= 2 {
        let swapped = monomial_bracket(alg, j, g, i, f, signs)?;
        return Ok(if signs.swap_negates(p, q) { -swapped } else { swapped });
    }
    match (p, q) {
        (1, 0) => {
            let x = alg.anchor(&Alt::monomial(chart, i, f.clone()))?;
            Ok(Alt::scalar(chart, x.apply(g)))
        }
        (0, 1) => {
            let y = alg.anchor(&Alt::monomial(chart, j, g.clone()))?;
            let v = y.apply(f);
            Ok(Alt::scalar(chart, if signs.swap_negates(0, 1) { -v } else { v }))
        }
        (1, 1) => alg.bracket1(&Alt::monomial(chart, i, f.clone()), &Alt::monomial(chart, j, g.clone())),
        _ => Ok(Alt::zero(chart, 0)),
    }
}

/// Schouten bracket of multivector fields; `[X, P] = L_X P`.
pub fn schouten(p: &MultiVector, q: &MultiVector) -> Result<MultiVector> {
    schouten_with(p, q, BracketSigns::Standard)
}

pub fn schouten_with(p: &MultiVector, q: &MultiVector, signs: BracketSigns) -> Result<MultiVector> {
    let alg = TangentAlgebroid { chart: p.chart().clone() };
    graded_bracket(&alg, p, q, signs)
}

/// The bracket `[., .]_pi` on forms of all degrees.
pub fn koszul_bracket(a: &Form, b: &Form, pi: &MultiVector) -> Result<Form> {
    koszul_bracket_with(a, b, pi, BracketSigns::Standard)
}

pub fn koszul_bracket_with(a: &Form, b: &Form, pi: &MultiVector, signs: BracketSigns) -> Result<Form> {
    graded_bracket(&PoissonCotangent { pi }, a, b, signs)
}
