use super::cartan::{exterior_d, lie_bracket};
use super::frame::{frame_differential, Frame};
use crate::error::Result;
use crate::tensorfield::{insert_n, same_chart, EndoField, Form, VectorField};

/// `d_N = i_N d - d i_N`; on functions `d_N f = N* df`.
pub fn d_n(n: &EndoField, eta: &Form) -> Result<Form> {
    same_chart(n.chart(), eta.chart())?;
    let a = insert_n(n, &exterior_d(eta))?;
    let b = exterior_d(&insert_n(n, eta)?);
    a.try_add(&-b)
}

/// `[X, Y]_N = [NX, Y] + [X, NY] - N[X, Y]`.
pub fn bracket_n(n: &EndoField, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    let a = lie_bracket(&n.apply(x)?, y)?;
    let b = lie_bracket(x, &n.apply(y)?)?;
    let c = n.apply(&lie_bracket(x, y)?)?;
    Ok(&(&a + &b) - &c)
}

/// `T_N(X, Y) = [NX, NY] - N[X, Y]_N`.
pub fn nijenhuis_torsion(n: &EndoField, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    let a = lie_bracket(&n.apply(x)?, &n.apply(y)?)?;
    let b = n.apply(&bracket_n(n, x, y)?)?;
    Ok(&a - &b)
}

/// `T_N(d/dx^i, d/dx^j)` for all `i < j`.
pub fn torsion_on_frame(n: &EndoField) -> Result<Vec<((usize, usize), VectorField)>> {
    let chart = n.chart();
    let mut out = Vec::new();
    for i in 0..chart.dim() {
        for j in i + 1..chart.dim() {
            let t = nijenhuis_torsion(n, &VectorField::basis(chart, i), &VectorField::basis(chart, j))?;
            out.push(((i, j), t));
        }
    }
    Ok(out)
}

/// The coordinate frame of `TM` with anchor `N` and bracket `[., .]_N`.
pub fn nijenhuis_frame(n: &EndoField) -> Result<Frame> {
    let chart = n.chart();
    let dim = chart.dim();
    let anchors = (0..dim).map(|a| n.column(a)).collect();
    let mut brackets = vec![vec![vec![chart.zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in a + 1..dim {
            let v = bracket_n(n, &VectorField::basis(chart, a), &VectorField::basis(chart, b))?;
            brackets[b][a] = (-&v).comps().to_vec();
            brackets[a][b] = v.comps().to_vec();
        }
    }
    Ok(Frame { anchors, brackets })
}

/// `d_N` evaluated from its expansion on vector fields rather than from
/// `i_N d - d i_N`.
pub fn d_n_expanded(n: &EndoField, eta: &Form) -> Result<Form> {
    same_chart(n.chart(), eta.chart())?;
    Ok(frame_differential(eta, &nijenhuis_frame(n)?))
}
