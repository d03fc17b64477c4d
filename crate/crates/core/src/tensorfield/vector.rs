use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::alt::{render_sum, MultiVector};
use super::chart::{same_chart, Chart};
use crate::error::Result;
use crate::polyring::{Polynomial, Rational};

/// Vector field with dense polynomial components `X = X^i d/dx^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Arc<Chart>,
    comps: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(chart: &Arc<Chart>, comps: Vec<Polynomial>) -> Self {
        assert_eq!(comps.len(), chart.dim(), "vector field arity");
        VectorField {
            chart: chart.clone(),
            comps,
        }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Self::new(chart, vec![chart.zero(); chart.dim()])
    }

    /// Coordinate field `d/dx^i`.
    pub fn basis(chart: &Arc<Chart>, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = chart.one();
        v
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = self.chart.zero();
        for (i, xi) in self.comps.iter().enumerate() {
            if !xi.is_zero() {
                acc += &(xi * &f.d(i));
            }
        }
        acc
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        Self::new(&self.chart, self.comps.iter().map(|c| f * c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.chart, self.comps.iter().map(|x| x.scale(c)).collect())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self::new(
            &self.chart,
            self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn to_multivector(&self) -> MultiVector {
        MultiVector::from_dense(&self.chart, self.comps.clone())
    }

    pub fn from_multivector(m: &MultiVector) -> Self {
        Self::new(m.chart(), m.to_dense())
    }

    pub fn max_coeff_degree(&self) -> u32 {
        self.comps.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn check_degree(&self, cap: u32) -> Result<()> {
        self.comps.iter().try_for_each(|f| f.check_degree(cap))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_sum(
            &self.chart,
            self.comps
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (format!("d/d{}", self.chart.names()[i]), c.clone())),
        );
        f.write_str(&s)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.try_add(rhs).expect("adding vector fields")
    }
}

impl Add for VectorField {
    type Output = VectorField;
    fn add(self, rhs: VectorField) -> VectorField {
        &self + &rhs
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::new(&self.chart, self.comps.iter().map(|c| -c).collect())
    }
}

impl Neg for VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        -&self
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self + &(-rhs)
    }
}

impl Sub for VectorField {
    type Output = VectorField;
    fn sub(self, rhs: VectorField) -> VectorField {
        &self - &rhs
    }
}
