use std::sync::Arc;

use crate::error::Result;
use crate::polyring::Polynomial;
use crate::tensorfield::{same_chart, Chart, Form, MultiVector, VectorField};

/// Exterior derivative. On a top-degree form the result is the zero form of
/// degree `n + 1`, which reports `exceeds_dim()`.
pub fn exterior_d(eta: &Form) -> Form {
    let chart = eta.chart();
    let mut out = Form::zero(chart, eta.degree() + 1);
    for (idx, f) in eta.terms() {
        for i in 0..chart.dim() {
            let df = f.d(i);
            if df.is_zero() {
                continue;
            }
            let mut target = Vec::with_capacity(idx.len() + 1);
            target.push(i);
            target.extend_from_slice(idx);
            out.add_signed(&target, df);
        }
    }
    out
}

/// `d f` as a 1-form.
pub fn differential(chart: &Arc<Chart>, f: &Polynomial) -> Form {
    exterior_d(&Form::scalar(chart, f.clone()))
}

/// `[X, Y]^i = X(Y^i) - Y(X^i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(x.chart(), y.chart())?;
    let comps = (0..x.chart().dim())
        .map(|i| &x.apply(y.comp(i)) - &y.apply(x.comp(i)))
        .collect();
    Ok(VectorField::new(x.chart(), comps))
}

/// `L_X eta` from the coordinate formula
/// `(L_X eta)_I = X(eta_I) + sum_a eta_{i1..m..ik} d_{i_a} X^m`.
pub fn lie_derivative_form(x: &VectorField, eta: &Form) -> Result<Form> {
    same_chart(x.chart(), eta.chart())?;
    let chart = eta.chart();
    let jac: Vec<Vec<_>> = x
        .comps()
        .iter()
        .map(|xm| (0..chart.dim()).map(|j| xm.d(j)).collect())
        .collect();
    let mut out = Form::zero(chart, eta.degree());
    for (idx, f) in eta.terms() {
        out.add_signed(idx, x.apply(f));
        for (a, &m) in idx.iter().enumerate() {
            for (j, dj) in jac[m].iter().enumerate() {
                if dj.is_zero() {
                    continue;
                }
                let mut target = idx.clone();
                target[a] = j;
                out.add_signed(&target, f * dj);
            }
        }
    }
    Ok(out)
}

/// `L_X P` for a multivector, using `L_X d/dx^m = -sum_i (d_m X^i) d/dx^i`.
pub fn lie_derivative_multivector(x: &VectorField, p: &MultiVector) -> Result<MultiVector> {
    same_chart(x.chart(), p.chart())?;
    let chart = p.chart();
    let mut out = MultiVector::zero(chart, p.degree());
    for (idx, f) in p.terms() {
        out.add_signed(idx, x.apply(f));
        for (a, &m) in idx.iter().enumerate() {
            for i in 0..chart.dim() {
                let dm = x.comp(i).d(m);
                if dm.is_zero() {
                    continue;
                }
                let mut target = idx.clone();
                target[a] = i;
                out.add_signed(&target, -(f * &dm));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorfield::contract;

    #[test]
    fn d_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let ydx = Form::monomial(&c, &[0], c.coord(1));
        assert_eq!(exterior_d(&ydx), -Form::basis(&c, &[0, 1]));
        let x2 = Form::scalar(&c, c.poly("x^2").unwrap());
        assert_eq!(exterior_d(&x2), Form::monomial(&c, &[0], c.poly("2*x").unwrap()));
        let top = exterior_d(&Form::basis(&c, &[0, 1]));
        assert!(top.is_zero() && top.exceeds_dim());
    }

    #[test]
    fn bracket_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let dx = VectorField::basis(&c, 0);
        let dy = VectorField::basis(&c, 1);
        assert_eq!(lie_bracket(&dx, &dy.mul_poly(&c.coord(0))).unwrap(), dy);
        assert!(lie_bracket(&dx, &dy).unwrap().is_zero());
        assert!(lie_bracket(&dx.mul_poly(&c.coord(0)), &dy).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let dy_ = VectorField::basis(&c, 1);
        let ydx = Form::monomial(&c, &[0], c.coord(1));
        assert_eq!(lie_derivative_form(&dy_, &ydx).unwrap(), Form::basis(&c, &[0]));
        let dx_ = VectorField::basis(&c, 0);
        assert!(lie_derivative_form(&dx_, &Form::basis(&c, &[0, 1])).unwrap().is_zero());
        let xdx = dx_.mul_poly(&c.coord(0));
        let y = Form::scalar(&c, c.coord(1));
        assert!(lie_derivative_form(&xdx, &y).unwrap().is_zero());

        // L_{d/dx}(x d/dx ^ d/dy) = d/dx ^ d/dy
        let p = MultiVector::monomial(&c, &[0, 1], c.coord(0));
        assert_eq!(
            lie_derivative_multivector(&dx_, &p).unwrap(),
            MultiVector::basis(&c, &[0, 1])
        );
    }

    #[test]
    fn cartan_on_sample() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let x = VectorField::new(&c, vec![c.poly("y*z").unwrap(), c.poly("x^2").unwrap(), c.one()]);
        let eta = Form::monomial(&c, &[0, 2], c.poly("x*y + z").unwrap());
        let lhs = lie_derivative_form(&x, &eta).unwrap();
        let rhs = contract(&x, &exterior_d(&eta)).unwrap() + exterior_d(&contract(&x, &eta).unwrap());
        assert_eq!(lhs, rhs);
    }
}
