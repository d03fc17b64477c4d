//! Pass/fail records with exact defect tensors as witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::polyring::{Polynomial, Rational};
use crate::tensorfield::{Alt, Chart, EndoField, Variance, VectorField};

/// A nonzero defect, printed canonically, with its value at the sample point
/// `(1, 2, .., n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub value: String,
    pub components: BTreeMap<String, String>,
    pub sample_point: Vec<String>,
    pub sample_values: BTreeMap<String, String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.label, self.value)
    }
}

/// Things that can be printed as a witness.
pub trait Witnessed {
    fn chart(&self) -> &Arc<Chart>;
    fn is_zero(&self) -> bool;
    fn display(&self) -> String;
    /// Canonical component keys and coefficients.
    fn entries(&self) -> Vec<(String, Polynomial)>;

    fn witness(&self, label: impl Into<String>) -> Witness {
        let chart = self.chart();
        let point: Vec<Rational> = (1..=chart.dim()).map(|i| crate::polyring::integer(i as i64)).collect();
        let mut components = BTreeMap::new();
        let mut sample_values = BTreeMap::new();
        for (key, f) in self.entries() {
            let v = f.evaluate(&point).expect("sample point matches chart");
            components.insert(key.clone(), chart.render(&f));
            sample_values.insert(key, v.to_string());
        }
        Witness {
            label: label.into(),
            value: self.display(),
            components,
            sample_point: point.iter().map(|r| r.to_string()).collect(),
            sample_values,
        }
    }
}

impl<V: Variance> Witnessed for Alt<V> {
    fn chart(&self) -> &Arc<Chart> {
        Alt::chart(self)
    }
    fn is_zero(&self) -> bool {
        Alt::is_zero(self)
    }
    fn display(&self) -> String {
        self.to_string()
    }
    fn entries(&self) -> Vec<(String, Polynomial)> {
        self.terms()
            .map(|(idx, f)| (Self::component_key(idx), f.clone()))
            .collect()
    }
}

impl Witnessed for VectorField {
    fn chart(&self) -> &Arc<Chart> {
        VectorField::chart(self)
    }
    fn is_zero(&self) -> bool {
        VectorField::is_zero(self)
    }
    fn display(&self) -> String {
        self.to_string()
    }
    fn entries(&self) -> Vec<(String, Polynomial)> {
        self.comps()
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| (format!("e{}", i + 1), f.clone()))
            .collect()
    }
}

impl Witnessed for EndoField {
    fn chart(&self) -> &Arc<Chart> {
        EndoField::chart(self)
    }
    fn is_zero(&self) -> bool {
        EndoField::is_zero(self)
    }
    fn display(&self) -> String {
        self.to_string()
    }
    fn entries(&self) -> Vec<(String, Polynomial)> {
        let n = self.chart().dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let f = self.entry(i, j);
                if !f.is_zero() {
                    out.push((format!("({},{})", i + 1, j + 1), f.clone()));
                }
            }
        }
        out
    }
}

/// A polynomial on a chart, for scalar defects.
pub struct ScalarOn<'a>(pub &'a Arc<Chart>, pub Polynomial);

impl Witnessed for ScalarOn<'_> {
    fn chart(&self) -> &Arc<Chart> {
        self.0
    }
    fn is_zero(&self) -> bool {
        self.1.is_zero()
    }
    fn display(&self) -> String {
        self.0.render(&self.1)
    }
    fn entries(&self) -> Vec<(String, Polynomial)> {
        if self.1.is_zero() {
            Vec::new()
        } else {
            vec![("1".into(), self.1.clone())]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckResult {
            id: id.into(),
            pass: true,
            detail: None,
            witness: None,
        }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            id: id.into(),
            pass: false,
            detail: Some(detail.into()),
            witness: None,
        }
    }

    /// Passes iff `defect` vanishes; otherwise carries it as the witness.
    pub fn zero(id: impl Into<String>, label: impl Into<String>, defect: &impl Witnessed) -> Self {
        if defect.is_zero() {
            Self::pass(id)
        } else {
            CheckResult {
                id: id.into(),
                pass: false,
                detail: None,
                witness: Some(defect.witness(label)),
            }
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.id)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// Results ordered by check id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn new(mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        CheckReport { checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Merges reports, prefixing each id.
    pub fn merge(parts: impl IntoIterator<Item = (String, CheckReport)>) -> Self {
        let checks = parts
            .into_iter()
            .flat_map(|(prefix, r)| {
                r.checks.into_iter().map(move |mut c| {
                    c.id = if prefix.is_empty() { c.id } else { format!("{prefix}.{}", c.id) };
                    c
                })
            })
            .collect();
        Self::new(checks)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorfield::Form;

    #[test]
    fn witness_printing() {
        let c = Chart::new(["x", "y"]).unwrap();
        let v = -VectorField::basis(&c, 1).mul_poly(&c.poly("x + y").unwrap());
        let w = v.witness("T");
        assert_eq!(w.to_string(), "T = (-x - y)*d/dy");
        assert_eq!(w.components["e2"], "-x - y");
        assert_eq!(w.sample_values["e2"], "-3");
        let r = CheckResult::zero("a", "defect", &Form::zero(&c, 1));
        assert!(r.pass && r.witness.is_none());
    }

    #[test]
    fn ordering() {
        let r = CheckReport::new(vec![CheckResult::pass("b"), CheckResult::fail("a", "x")]);
        assert_eq!(r.checks[0].id, "a");
        assert!(!r.passed());
    }
}
