//! Contractions, the musical maps and the canonical pairing.

use super::alt::{Alt, Form, MultiVector, Variance};
use super::chart::same_chart;
use super::endo::EndoField;
use super::vector::VectorField;
use crate::error::{Error, Result};
use crate::polyring::Polynomial;

pub fn wedge<V: Variance>(a: &Alt<V>, b: &Alt<V>) -> Result<Alt<V>> {
    a.wedge(b)
}

/// `i_X eta`, contraction into the first slot.
pub fn contract(x: &VectorField, eta: &Form) -> Result<Form> {
    same_chart(x.chart(), eta.chart())?;
    eta.interior(x.comps())
}

/// `i_{X^Y} eta = i_Y(i_X eta)`, so that `<i_{X^Y} phi, Z> = phi(X, Y, Z)`.
pub fn contract_pair(x: &VectorField, y: &VectorField, eta: &Form) -> Result<Form> {
    contract(y, &contract(x, eta)?)
}

/// Contraction of a 1-form into the first slot of a multivector.
pub fn contract_form(alpha: &Form, p: &MultiVector) -> Result<MultiVector> {
    same_chart(alpha.chart(), p.chart())?;
    expect_degree(alpha, 1)?;
    p.interior(&alpha.to_dense())
}

/// `eta(X1, .., Xk)`.
pub fn evaluate_form(eta: &Form, xs: &[&VectorField]) -> Result<Polynomial> {
    if xs.len() != eta.degree() {
        return Err(Error::DegreeMismatch {
            left: eta.degree(),
            right: xs.len(),
        });
    }
    let mut cur = eta.clone();
    for x in xs {
        cur = contract(x, &cur)?;
    }
    Ok(cur.as_scalar())
}

/// `P(a1, .., ak)` for a multivector and 1-forms.
pub fn evaluate_multivector(p: &MultiVector, alphas: &[&Form]) -> Result<Polynomial> {
    if alphas.len() != p.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: alphas.len(),
        });
    }
    let mut cur = p.clone();
    for a in alphas {
        cur = contract_form(a, &cur)?;
    }
    Ok(cur.as_scalar())
}

/// `(i_N eta)(X1..Xp) = sum_i eta(X1, .., N Xi, .., Xp)`; zero on functions.
pub fn insert_n(n: &EndoField, eta: &Form) -> Result<Form> {
    same_chart(n.chart(), eta.chart())?;
    let dim = n.chart().dim();
    let mut out = Form::zero(eta.chart(), eta.degree());
    for (idx, f) in eta.terms() {
        for (a, &m) in idx.iter().enumerate() {
            for j in 0..dim {
                let c = n.entry(m, j);
                if c.is_zero() {
                    continue;
                }
                let mut target = idx.clone();
                target[a] = j;
                out.add_signed(&target, f * c);
            }
        }
    }
    Ok(out)
}

/// `pi# alpha`, characterised by `<beta, pi# alpha> = pi(alpha, beta)`.
pub fn sharp(pi: &MultiVector, alpha: &Form) -> Result<VectorField> {
    expect_degree(pi, 2)?;
    Ok(VectorField::from_multivector(&contract_form(alpha, pi)?))
}

/// `Omega_flat X = i_X Omega`.
pub fn flat(omega: &Form, x: &VectorField) -> Result<Form> {
    expect_degree(omega, 2)?;
    contract(x, omega)
}

/// The endomorphism `X -> pi#(Omega_flat X)`.
pub fn compose_sharp_flat(pi: &MultiVector, omega: &Form) -> Result<EndoField> {
    same_chart(pi.chart(), omega.chart())?;
    let chart = pi.chart();
    let cols = (0..chart.dim())
        .map(|j| sharp(pi, &flat(omega, &VectorField::basis(chart, j))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoField::from_columns(chart, &cols))
}

/// The endomorphism `pi#` viewed as a matrix: column `i` is `pi# dx^i`.
pub fn sharp_matrix(pi: &MultiVector) -> Result<EndoField> {
    let chart = pi.chart();
    let cols = (0..chart.dim())
        .map(|i| sharp(pi, &Form::basis(chart, &[i])))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoField::from_columns(chart, &cols))
}

pub fn transpose(n: &EndoField) -> EndoField {
    n.transpose()
}

/// `<alpha, X> = sum_i alpha_i X^i`.
pub fn pairing(alpha: &Form, x: &VectorField) -> Result<Polynomial> {
    same_chart(alpha.chart(), x.chart())?;
    expect_degree(alpha, 1)?;
    let mut acc = x.chart().zero();
    for (idx, f) in alpha.terms() {
        let xi = x.comp(idx[0]);
        if !xi.is_zero() {
            acc += &(f * xi);
        }
    }
    Ok(acc)
}

fn expect_degree<V: Variance>(a: &Alt<V>, k: usize) -> Result<()> {
    if a.degree() == k {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            left: a.degree(),
            right: k,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorfield::Chart;
    use std::sync::Arc;

    fn r2() -> Arc<Chart> {
        Chart::new(["x", "y"]).unwrap()
    }

    fn std_pi(c: &Arc<Chart>) -> MultiVector {
        MultiVector::basis(c, &[0, 1])
    }

    #[test]
    fn contractions() {
        let c = r2();
        let dxdy = Form::basis(&c, &[0, 1]);
        let dx_ = VectorField::basis(&c, 0);
        let dy_ = VectorField::basis(&c, 1);
        assert_eq!(contract(&dx_, &dxdy).unwrap(), Form::basis(&c, &[1]));
        assert!(contract(&dy_, &Form::basis(&c, &[0])).unwrap().is_zero());
        assert_eq!(
            contract(&dx_, &Form::scalar(&c, c.one())),
            Err(Error::ContractFunction)
        );

        let c3 = Chart::new(["x", "y", "z"]).unwrap();
        let phi = Form::monomial(&c3, &[0, 1, 2], c3.coord(0));
        let got = contract_pair(&VectorField::basis(&c3, 0), &VectorField::basis(&c3, 1), &phi).unwrap();
        assert_eq!(got, Form::monomial(&c3, &[2], c3.coord(0)));
    }

    #[test]
    fn insert_n_examples() {
        let c = r2();
        let dxdy = Form::basis(&c, &[0, 1]);
        let id = EndoField::identity(&c);
        assert_eq!(insert_n(&id, &dxdy).unwrap(), dxdy.scale(&crate::polyring::integer(2)));
        let xid = EndoField::scalar(&c, &c.coord(0));
        assert_eq!(
            insert_n(&xid, &dxdy).unwrap(),
            Form::monomial(&c, &[0, 1], c.poly("2*x").unwrap())
        );
        let f = Form::scalar(&c, c.poly("x*y + 1").unwrap());
        assert!(insert_n(&xid, &f).unwrap().is_zero());
    }

    #[test]
    fn sharp_and_flat() {
        let c = r2();
        let pi = std_pi(&c);
        let dx = Form::basis(&c, &[0]);
        let dy = Form::basis(&c, &[1]);
        assert_eq!(sharp(&pi, &dx).unwrap(), VectorField::basis(&c, 1));
        assert_eq!(sharp(&pi, &dy).unwrap(), -VectorField::basis(&c, 0));
        assert!(sharp(&MultiVector::zero(&c, 2), &dx).unwrap().is_zero());

        let om = Form::basis(&c, &[0, 1]);
        assert_eq!(flat(&om, &VectorField::basis(&c, 0)).unwrap(), dy);
        assert_eq!(flat(&om, &VectorField::basis(&c, 1)).unwrap(), -dx.clone());
        assert!(flat(&om, &VectorField::zero(&c)).unwrap().is_zero());
    }

    #[test]
    fn compose_sharp_flat_examples() {
        let c = r2();
        let pi = std_pi(&c);
        let minus_id = EndoField::scalar(&c, &c.constant(-1));
        assert_eq!(compose_sharp_flat(&pi, &Form::basis(&c, &[0, 1])).unwrap(), minus_id);
        let om = Form::monomial(&c, &[0, 1], c.coord(0));
        assert_eq!(
            compose_sharp_flat(&pi, &om).unwrap(),
            EndoField::scalar(&c, &c.poly("-x").unwrap())
        );
        assert!(compose_sharp_flat(&pi, &Form::zero(&c, 2)).unwrap().is_zero());
    }

    #[test]
    fn transpose_and_pairing() {
        let c = r2();
        // N d/dx = d/dy, N d/dy = 0
        let n = EndoField::from_columns(&c, &[VectorField::basis(&c, 1), VectorField::zero(&c)]);
        let nt = transpose(&n);
        assert!(n.apply_dual(&Form::basis(&c, &[0])).unwrap().is_zero());
        assert_eq!(n.apply_dual(&Form::basis(&c, &[1])).unwrap(), Form::basis(&c, &[0]));
        assert_eq!(transpose(&nt), n);
        assert_eq!(transpose(&EndoField::identity(&c)), EndoField::identity(&c));

        let dx = Form::basis(&c, &[0]);
        assert_eq!(pairing(&dx, &VectorField::basis(&c, 0)).unwrap(), c.one());
        assert!(pairing(&dx, &VectorField::basis(&c, 1)).unwrap().is_zero());
        let xdy = Form::monomial(&c, &[1], c.coord(0));
        assert_eq!(pairing(&xdy, &VectorField::basis(&c, 1)).unwrap(), c.coord(0));
    }

    #[test]
    fn evaluation() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let phi = Form::monomial(&c, &[0, 1, 2], c.coord(2));
        let e: Vec<_> = (0..3).map(|i| VectorField::basis(&c, i)).collect();
        assert_eq!(evaluate_form(&phi, &[&e[1], &e[0], &e[2]]).unwrap(), -c.coord(2));
        let p = MultiVector::basis(&c, &[0, 2]);
        let dx = Form::basis(&c, &[0]);
        let dz = Form::basis(&c, &[2]);
        assert_eq!(evaluate_multivector(&p, &[&dz, &dx]).unwrap(), c.constant(-1));
    }
}
