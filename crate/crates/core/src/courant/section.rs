use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{rational, Polynomial, Rational};
use crate::report::Witnessed;
use crate::tensorfield::{flat, pairing, same_chart, Chart, Form, VectorField};

/// A section `X + alpha` of `TM + T*M`.
#[derive(Clone, PartialEq, Eq)]
pub struct CourantSection {
    pub vec: VectorField,
    pub form: Form,
}

impl CourantSection {
    pub fn new(vec: VectorField, form: Form) -> Result<Self> {
        same_chart(vec.chart(), form.chart())?;
        if form.degree() != 1 {
            return Err(Error::DegreeMismatch { left: form.degree(), right: 1 });
        }
        Ok(CourantSection { vec, form })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        CourantSection {
            vec: VectorField::zero(chart),
            form: Form::zero(chart, 1),
        }
    }

    pub fn from_vec(vec: VectorField) -> Self {
        let form = Form::zero(vec.chart(), 1);
        CourantSection { vec, form }
    }

    pub fn from_form(form: Form) -> Result<Self> {
        Self::new(VectorField::zero(form.chart()), form)
    }

    /// `d/dx_a` for `a < n`, `dx_{a-n}` for `n <= a < 2n`.
    pub fn frame(chart: &Arc<Chart>, a: usize) -> Self {
        let n = chart.dim();
        if a < n {
            Self::from_vec(VectorField::basis(chart, a))
        } else {
            CourantSection {
                vec: VectorField::zero(chart),
                form: Form::basis(chart, &[a - n]),
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.vec.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        CourantSection {
            vec: self.vec.mul_poly(f),
            form: self.form.mul_poly(f),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CourantSection {
            vec: self.vec.scale(c),
            form: self.form.scale(c),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(CourantSection {
            vec: self.vec.try_add(&other.vec)?,
            form: self.form.try_add(&other.form)?,
        })
    }

    pub fn max_coeff_degree(&self) -> u32 {
        self.vec.max_coeff_degree().max(self.form.max_coeff_degree())
    }
}

/// `<X1 + a1, X2 + a2> = 1/2 (a2(X1) + a1(X2))`.
pub fn pairing_e(s1: &CourantSection, s2: &CourantSection) -> Result<Polynomial> {
    same_chart(s1.chart(), s2.chart())?;
    let p = &pairing(&s2.form, &s1.vec)? + &pairing(&s1.form, &s2.vec)?;
    Ok(p.scale(&rational(1, 2)))
}

/// `X + a -> X + i_X Omega + a`.
pub fn gauge(omega: &Form, s: &CourantSection) -> Result<CourantSection> {
    Ok(CourantSection {
        vec: s.vec.clone(),
        form: s.form.try_add(&flat(omega, &s.vec)?)?,
    })
}

impl fmt::Display for CourantSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.vec.is_zero(), self.form.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.vec),
            (true, false) => write!(f, "{}", self.form),
            (false, false) => {
                let form = self.form.to_string();
                match form.strip_prefix('-') {
                    Some(rest) => write!(f, "{} - {}", self.vec, rest),
                    None => write!(f, "{} + {}", self.vec, form),
                }
            }
        }
    }
}

impl fmt::Debug for CourantSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CourantSection({self})")
    }
}

impl Add for &CourantSection {
    type Output = CourantSection;
    fn add(self, rhs: &CourantSection) -> CourantSection {
        self.try_add(rhs).expect("adding sections")
    }
}

impl Sub for &CourantSection {
    type Output = CourantSection;
    fn sub(self, rhs: &CourantSection) -> CourantSection {
        self.try_add(&-rhs).expect("subtracting sections")
    }
}

impl Neg for &CourantSection {
    type Output = CourantSection;
    fn neg(self) -> CourantSection {
        CourantSection {
            vec: -&self.vec,
            form: -&self.form,
        }
    }
}

impl Neg for CourantSection {
    type Output = CourantSection;
    fn neg(self) -> CourantSection {
        -&self
    }
}

impl Witnessed for CourantSection {
    fn chart(&self) -> &Arc<Chart> {
        CourantSection::chart(self)
    }
    fn is_zero(&self) -> bool {
        CourantSection::is_zero(self)
    }
    fn display(&self) -> String {
        self.to_string()
    }
    fn entries(&self) -> Vec<(String, Polynomial)> {
        let mut out = Witnessed::entries(&self.vec);
        out.extend(Witnessed::entries(&self.form));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Arc<Chart> {
        Chart::new(["x", "y"]).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let c = r2();
        let (ex, ey) = (CourantSection::frame(&c, 0), CourantSection::frame(&c, 1));
        let (dx, dy) = (CourantSection::frame(&c, 2), CourantSection::frame(&c, 3));
        assert_eq!(pairing_e(&(&ex + &dy), &(&ey + &dx)).unwrap(), c.one());
        assert!(pairing_e(&ex, &ey).unwrap().is_zero());
        assert!(pairing_e(&dx, &dy).unwrap().is_zero());
        assert_eq!(pairing_e(&ex, &dx).unwrap(), c.poly("1/2").unwrap());
    }

    #[test]
    fn gauge_examples() {
        let c = r2();
        let om = Form::basis(&c, &[0, 1]);
        let (ex, ey) = (CourantSection::frame(&c, 0), CourantSection::frame(&c, 1));
        let (dx, dy) = (CourantSection::frame(&c, 2), CourantSection::frame(&c, 3));
        assert_eq!(gauge(&om, &ex).unwrap(), &ex + &dy);
        assert_eq!(gauge(&om, &dx).unwrap(), dx);
        assert_eq!(gauge(&om, &(&ey + &dx)).unwrap(), ey);
        assert_eq!((&ex + &dy).to_string(), "d/dx + dy");
    }
}
