//! The JSON structure specification.
//!
//! ```json
//! {"dim": 2, "vars": ["x", "y"],
//!  "pi": {"(1,2)": "1"},
//!  "N": [["1", "0"], ["0", "1"]],
//!  "phi": {},
//!  "omega": {"(1,2)": "x"}}
//! ```
//!
//! Sparse tensors are keyed by strictly increasing 1-based index tuples.
//! Polynomials use the polyring grammar in the chart's variables.

use std::collections::BTreeMap;
use std::sync::Arc;

use pqn_core::pqn::PqnStructure;
use pqn_core::tensorfield::{Alt, Chart, EndoField, Form, MultiVector, Variance};
use pqn_core::Error as CoreError;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub dim: usize,
    /// Coordinate names; `x1..xn` when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vars: Vec<String>,
    #[serde(default)]
    pub pi: BTreeMap<String, String>,
    /// Row-major: `N[i][j]` is the `d/dx_i` component of `N(d/dx_j)`.
    #[serde(rename = "N")]
    pub n: Vec<Vec<String>>,
    #[serde(default)]
    pub phi: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suite: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<BTreeMap<String, Value>>,
}

/// The tensors a spec describes.
#[derive(Debug, Clone)]
pub struct Structure {
    pub chart: Arc<Chart>,
    pub pqn: PqnStructure,
    pub omega: Option<Form>,
}

/// Parses and validates a spec.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let spec = SpecFile::from_json(text)?;
    spec.validate(text)?;
    Ok(spec)
}

impl SpecFile {
    /// Syntax and field checks only.
    pub fn from_json(text: &str) -> Result<SpecFile> {
        serde_json::from_str(text).map_err(|e| CliError::Spec {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Canonical pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    /// Builds the tensors, locating errors in `text` (the source of `self`).
    pub fn validate(&self, text: &str) -> Result<Structure> {
        Builder { spec: self, text }.build()
    }

    /// Builds the tensors; errors are located in the canonical JSON.
    pub fn structure(&self) -> Result<Structure> {
        self.validate(&self.to_json())
    }

    /// Canonical spec of a structure and an optional 2-form.
    pub fn from_structure(s: &PqnStructure, omega: Option<&Form>) -> SpecFile {
        let chart = s.chart();
        SpecFile {
            dim: chart.dim(),
            vars: chart.names().to_vec(),
            pi: sparse(s.pi()),
            n: s
                .n()
                .rows()
                .iter()
                .map(|row| row.iter().map(|f| chart.render(f)).collect())
                .collect(),
            phi: sparse(s.phi()),
            omega: omega.map(sparse),
            ..SpecFile::default()
        }
    }
}

fn sparse<V: Variance>(a: &Alt<V>) -> BTreeMap<String, String> {
    let chart = a.chart();
    a.terms()
        .map(|(idx, f)| (tuple_key(idx), chart.render(f)))
        .collect()
}

fn tuple_key(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// 1-based line and column of `offset` in `text`.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    (line, column)
}

struct Builder<'a> {
    spec: &'a SpecFile,
    text: &'a str,
}

impl Builder<'_> {
    /// Offset of the last of `anchors`, each searched after the previous one.
    fn find(&self, anchors: &[String]) -> usize {
        let mut at = 0;
        for a in anchors {
            match self.text[at..].find(a.as_str()) {
                Some(i) => at += i,
                None => break,
            }
        }
        at
    }

    fn error_at(&self, offset: usize, message: String) -> CliError {
        let (line, column) = line_col(self.text, offset);
        CliError::Spec { line, column, message }
    }

    fn error(&self, anchors: &[String], message: String) -> CliError {
        self.error_at(self.find(anchors), message)
    }

    fn build(&self) -> Result<Structure> {
        let spec = self.spec;
        let key = |k: &str| vec![format!("\"{k}\"")];
        if !(1..=6).contains(&spec.dim) {
            return Err(self.error(&key("dim"), format!("dim {} outside 1..=6", spec.dim)));
        }
        let chart = if spec.vars.is_empty() {
            Chart::standard(spec.dim)
        } else if spec.vars.len() != spec.dim {
            return Err(self.error(
                &key("vars"),
                format!("{} variable names for dim {}", spec.vars.len(), spec.dim),
            ));
        } else {
            Chart::new(spec.vars.iter().cloned())
        }
        .map_err(|e| self.error(&key("vars"), e.to_string()))?;

        let pi: MultiVector = self.sparse(&chart, "pi", &spec.pi, 2)?;
        let phi: Form = self.sparse(&chart, "phi", &spec.phi, 3)?;
        let omega: Option<Form> = match &spec.omega {
            Some(m) => Some(self.sparse(&chart, "omega", m, 2)?),
            None => None,
        };
        let n = self.matrix(&chart)?;
        let pqn = PqnStructure::new(pi, n, phi).map_err(|e| self.error(&[], e.to_string()))?;
        if let Some(o) = &omega {
            o.check_degree(pqn_core::polyring::degree_cap())
                .map_err(|e| self.error(&key("omega"), e.to_string()))?;
        }
        Ok(Structure { chart, pqn, omega })
    }

    fn poly(&self, chart: &Chart, text: &str, anchors: &[String]) -> Result<pqn_core::polyring::Polynomial> {
        chart.poly(text).map_err(|e| match e {
            CoreError::Parse { offset, message } => {
                // skip the opening quote of the string value
                self.error_at(self.find(anchors) + 1 + offset, format!("{text:?}: {message}"))
            }
            other => self.error(anchors, format!("{text:?}: {other}")),
        })
    }

    fn sparse<V: Variance>(
        &self,
        chart: &Arc<Chart>,
        field: &str,
        entries: &BTreeMap<String, String>,
        degree: usize,
    ) -> Result<Alt<V>> {
        let mut comps = Vec::new();
        for (k, v) in entries {
            let at_key = vec![format!("\"{field}\""), format!("\"{k}\"")];
            let idx = parse_tuple(k, chart.dim(), degree).map_err(|m| self.error(&at_key, format!("{field} key {k:?}: {m}")))?;
            let mut at_value = at_key.clone();
            at_value.push(format!("{v:?}"));
            comps.push((idx, self.poly(chart, v, &at_value)?));
        }
        Ok(Alt::from_components(chart, degree, comps))
    }

    fn matrix(&self, chart: &Arc<Chart>) -> Result<EndoField> {
        let n = chart.dim();
        let anchor = vec!["\"N\"".to_string()];
        if self.spec.n.len() != n || self.spec.n.iter().any(|r| r.len() != n) {
            return Err(self.error(&anchor, format!("N must be a {n}x{n} matrix")));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in self.spec.n.iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (j, v) in row.iter().enumerate() {
                let f = chart.poly(v).map_err(|e| self.error(&anchor, format!("N[{}][{}] = {v:?}: {e}", i + 1, j + 1)))?;
                out.push(f);
            }
            rows.push(out);
        }
        Ok(EndoField::from_rows(chart, rows))
    }
}

/// Parses `"(i,j,..)"` into sorted 0-based indices.
fn parse_tuple(key: &str, dim: usize, degree: usize) -> std::result::Result<Vec<usize>, String> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or("expected a tuple like \"(1,2)\"")?;
    let idx = inner
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad index {:?}", p.trim())))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if idx.len() != degree {
        return Err(format!("expected {degree} indices, got {}", idx.len()));
    }
    if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > dim) {
        return Err(format!("index {bad} outside 1..={dim}"));
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err("index tuple is not strictly increasing".into());
    }
    Ok(idx.into_iter().map(|i| i - 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANONICAL: &str = r#"{"dim":2,"vars":["x","y"],"pi":{"(1,2)":"1"},"N":[["1","0"],["0","1"]],"phi":{}}"#;

    #[test]
    fn canonical_fixture() {
        let spec = parse_spec(CANONICAL).unwrap();
        let s = spec.structure().unwrap();
        assert_eq!(s.pqn.pi(), &MultiVector::basis(&s.chart, &[0, 1]));
        assert_eq!(s.pqn.n(), &EndoField::identity(&s.chart));
        assert!(s.pqn.phi().is_zero());
        assert!(s.omega.is_none());
    }

    #[test]
    fn rejects_non_increasing_tuple() {
        let text = CANONICAL.replace("(1,2)", "(2,1)");
        let err = parse_spec(&text).unwrap_err();
        let CliError::Spec { line, column, message } = err else { panic!("{err}") };
        assert!(message.contains("strictly increasing"), "{message}");
        assert_eq!((line, column), (1, 1 + text.find("\"(2,1)\"").unwrap()));
    }

    #[test]
    fn polynomial_entries() {
        let text = CANONICAL.replace(r#"[["1","0"]"#, r#"[["x^2-1/3*y","0"]"#);
        let s = parse_spec(&text).unwrap().structure().unwrap();
        assert_eq!(s.pqn.n().entry(0, 0), &s.chart.poly("x^2 - 1/3*y").unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_spec("{\"dim\": 2,\n  \"pi\": {\"(1,2)\": 1}}").unwrap_err();
        let CliError::Spec { line, .. } = err else { panic!("{err}") };
        assert_eq!(line, 2);

        let err = parse_spec(r#"{"dim":2,"N":[["1","0"],["0","1"]],"colour":1}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");
    }

    #[test]
    fn semantic_errors() {
        let bad_index = CANONICAL.replace("(1,2)", "(1,3)");
        assert!(parse_spec(&bad_index).unwrap_err().to_string().contains("outside 1..=2"));
        let bad_arity = CANONICAL.replace("\"phi\":{}", "\"phi\":{\"(1,2)\":\"1\"}");
        assert!(parse_spec(&bad_arity).unwrap_err().to_string().contains("expected 3 indices"));
        let bad_shape = CANONICAL.replace(r#"["0","1"]]"#, r#"["0"]]"#);
        assert!(parse_spec(&bad_shape).unwrap_err().to_string().contains("2x2"));

        let bad_poly = "{\"dim\":2,\"vars\":[\"x\",\"y\"],\n\"pi\":{\"(1,2)\":\"x + z\"},\"N\":[[\"1\",\"0\"],[\"0\",\"1\"]]}";
        let CliError::Spec { line, column, .. } = parse_spec(bad_poly).unwrap_err() else { panic!() };
        assert_eq!(line, 2);
        assert_eq!(column, 1 + "\"pi\":{\"(1,2)\":\"x + ".len());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"dim":3,"pi":{"(1,2)":"x3","(1,3)":"1"},"N":[["x1^2 - 1/3*x2","0","0"],["0","1","0"],["0","0","2"]],
            "phi":{"(1,2,3)":"-x1"},"omega":{"(2,3)":"x1*x2"},"suite":["pqn-axioms"],"seed":5,"degree_cap":10}"#;
        let spec = parse_spec(text).unwrap();
        let printed = spec.to_json();
        let again = parse_spec(&printed).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.to_json(), printed);

        let s = spec.structure().unwrap();
        let canon = SpecFile::from_structure(&s.pqn, s.omega.as_ref());
        let back = canon.structure().unwrap();
        assert_eq!(back.pqn, s.pqn);
        assert_eq!(back.omega, s.omega);
        assert_eq!(SpecFile::from_structure(&back.pqn, back.omega.as_ref()), canon);
    }
}
