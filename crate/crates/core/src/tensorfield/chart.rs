use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{parse_polynomial, Polynomial};

/// A coordinate chart of `R^n` with named coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Chart>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidChart("dimension must be at least 1".into()));
        }
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidChart(format!("'{name}' is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidChart(format!("duplicate variable '{name}'")));
            }
        }
        Ok(Arc::new(Chart { names }))
    }

    /// Chart with coordinates `x1..xn`.
    pub fn standard(dim: usize) -> Result<Arc<Chart>> {
        Chart::new((1..=dim).map(|i| format!("x{i}")))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coord(&self, i: usize) -> Polynomial {
        Polynomial::var(self.dim(), i)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::from_i64(self.dim(), c)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.dim())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.dim())
    }

    /// Parses a polynomial in this chart's variables.
    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.names)
    }

    pub fn render(&self, p: &Polynomial) -> String {
        p.display_with(&self.names).to_string()
    }
}

pub(crate) fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_validation() {
        assert!(Chart::new(Vec::<String>::new()).is_err());
        assert!(Chart::new(["x", "x"]).is_err());
        assert!(Chart::new(["x", "2y"]).is_err());
        let c = Chart::new(["x", "y"]).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(Chart::standard(3).unwrap().names()[2], "x3");
    }
}
