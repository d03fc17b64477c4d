use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use super::alt::Form;
use super::chart::{same_chart, Chart};
use super::vector::VectorField;
use crate::error::Result;
use crate::polyring::Polynomial;

/// A (1,1) tensor field, stored as a dense matrix whose column `j` holds the
/// components of `N(d/dx^j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct EndoField {
    chart: Arc<Chart>,
    rows: Vec<Vec<Polynomial>>,
}

impl EndoField {
    /// `rows[i][j]` is the `d/dx^i` component of `N(d/dx^j)`.
    pub fn from_rows(chart: &Arc<Chart>, rows: Vec<Vec<Polynomial>>) -> Self {
        let n = chart.dim();
        assert!(rows.len() == n && rows.iter().all(|r| r.len() == n), "matrix shape");
        EndoField {
            chart: chart.clone(),
            rows,
        }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        let n = chart.dim();
        Self::from_rows(chart, vec![vec![chart.zero(); n]; n])
    }

    /// `f * Id`.
    pub fn scalar(chart: &Arc<Chart>, f: &Polynomial) -> Self {
        let mut m = Self::zero(chart);
        for i in 0..chart.dim() {
            m.rows[i][i] = f.clone();
        }
        m
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        Self::scalar(chart, &chart.one())
    }

    /// Endomorphism whose columns are the given vector fields.
    pub fn from_columns(chart: &Arc<Chart>, cols: &[VectorField]) -> Self {
        let n = chart.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| cols[j].comp(i).clone()).collect())
            .collect();
        Self::from_rows(chart, rows)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Polynomial::is_zero)
    }

    /// `N(d/dx^j)`.
    pub fn column(&self, j: usize) -> VectorField {
        VectorField::new(
            &self.chart,
            self.rows.iter().map(|r| r[j].clone()).collect(),
        )
    }

    /// `N X`.
    pub fn apply(&self, x: &VectorField) -> Result<VectorField> {
        same_chart(&self.chart, x.chart())?;
        let n = self.chart.dim();
        let comps = (0..n)
            .map(|i| {
                let mut acc = self.chart.zero();
                for j in 0..n {
                    if !self.rows[i][j].is_zero() && !x.comp(j).is_zero() {
                        acc += &(&self.rows[i][j] * x.comp(j));
                    }
                }
                acc
            })
            .collect();
        Ok(VectorField::new(&self.chart, comps))
    }

    /// `N* alpha`, defined by `<N* alpha, X> = <alpha, N X>`.
    pub fn apply_dual(&self, alpha: &Form) -> Result<Form> {
        same_chart(&self.chart, alpha.chart())?;
        let a = alpha.to_dense();
        let n = self.chart.dim();
        let comps = (0..n)
            .map(|j| {
                let mut acc = self.chart.zero();
                for (i, ai) in a.iter().enumerate() {
                    if !ai.is_zero() && !self.rows[i][j].is_zero() {
                        acc += &(ai * &self.rows[i][j]);
                    }
                }
                acc
            })
            .collect();
        Ok(Form::from_dense(&self.chart, comps))
    }

    /// Matrix transpose, i.e. the coordinate matrix of `N*`.
    pub fn transpose(&self) -> EndoField {
        let n = self.chart.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect())
            .collect();
        Self::from_rows(&self.chart, rows)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &EndoField) -> Result<EndoField> {
        same_chart(&self.chart, other.chart())?;
        let cols = (0..self.chart.dim())
            .map(|j| self.apply(&other.column(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_columns(&self.chart, &cols))
    }

    pub fn try_add(&self, other: &EndoField) -> Result<EndoField> {
        same_chart(&self.chart, other.chart())?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self::from_rows(&self.chart, rows))
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> EndoField {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect())
            .collect();
        Self::from_rows(&self.chart, rows)
    }

    pub fn max_coeff_degree(&self) -> u32 {
        self.rows.iter().flatten().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn check_degree(&self, cap: u32) -> Result<()> {
        self.rows.iter().flatten().try_for_each(|f| f.check_degree(cap))
    }
}

impl fmt::Display for EndoField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|p| self.chart.render(p)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for EndoField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndoField({self})")
    }
}

impl Add for &EndoField {
    type Output = EndoField;
    fn add(self, rhs: &EndoField) -> EndoField {
        self.try_add(rhs).expect("adding endomorphism fields")
    }
}

impl Sub for &EndoField {
    type Output = EndoField;
    fn sub(self, rhs: &EndoField) -> EndoField {
        self + &rhs.map_entries(|p| -p)
    }
}
