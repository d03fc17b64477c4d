use super::cartan::{exterior_d, lie_bracket};
use super::frame::Frame;
use super::graded::{koszul_bracket, schouten};
use crate::error::Result;
use crate::polyring::Polynomial;
use crate::tensorfield::{contract, evaluate_form, flat, same_chart, sharp, Form, MultiVector, VectorField};

/// `d_pi P = [pi, P]`; on functions `d_pi f = -pi# df`.
pub fn lichnerowicz_d(pi: &MultiVector, p: &MultiVector) -> Result<MultiVector> {
    schouten(pi, p)
}

/// `d_pi f` as a vector field.
pub fn lichnerowicz_d_function(pi: &MultiVector, f: &Polynomial) -> Result<VectorField> {
    let p = lichnerowicz_d(pi, &MultiVector::scalar(pi.chart(), f.clone()))?;
    Ok(VectorField::from_multivector(&p))
}

/// The coordinate coframe of `(T*M)_pi`: anchor `pi#` and bracket `[., .]_pi`.
pub fn poisson_frame(pi: &MultiVector) -> Result<Frame> {
    let chart = pi.chart();
    let dim = chart.dim();
    let anchors = (0..dim)
        .map(|a| sharp(pi, &Form::basis(chart, &[a])))
        .collect::<Result<Vec<_>>>()?;
    let mut brackets = vec![vec![vec![chart.zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in a + 1..dim {
            let v = koszul_bracket(&Form::basis(chart, &[a]), &Form::basis(chart, &[b]), pi)?.to_dense();
            brackets[b][a] = v.iter().map(|f| -f).collect();
            brackets[a][b] = v;
        }
    }
    Ok(Frame { anchors, brackets })
}

/// `L^pi_alpha Y = [pi# alpha, Y] + pi#(i_Y d alpha)`.
pub fn pi_lie_derivative(alpha: &Form, y: &VectorField, pi: &MultiVector) -> Result<VectorField> {
    same_chart(alpha.chart(), y.chart())?;
    let first = lie_bracket(&sharp(pi, alpha)?, y)?;
    let second = sharp(pi, &contract(y, &exterior_d(alpha))?)?;
    Ok(&first + &second)
}

/// `[X, Y]^pi_Omega = L^pi_{Omega_flat X} Y - L^pi_{Omega_flat Y} X - d_pi(Omega(X, Y))`.
pub fn omega_pi_bracket(x: &VectorField, y: &VectorField, omega: &Form, pi: &MultiVector) -> Result<VectorField> {
    let a = pi_lie_derivative(&flat(omega, x)?, y, pi)?;
    let b = pi_lie_derivative(&flat(omega, y)?, x, pi)?;
    let c = lichnerowicz_d_function(pi, &evaluate_form(omega, &[x, y])?)?;
    Ok(&(&a - &b) - &c)
}
