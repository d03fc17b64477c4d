//! Verification suites over a spec, and the run report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use pqn_core::calculus::exterior_d;
use pqn_core::courant::{
    check_courant_axioms, check_induced_matches_deform, is_dirac, verify_graph_bracket, AxiomBattery,
    CourantStructure, LagrangianGraph,
};
use pqn_core::identities::{bracket_identities, lemma_identities, IdentityConfig};
use pqn_core::pqn::{action_compose, check_pqn, check_qlba, deform, PqnStructure};
use pqn_core::report::{CheckReport, CheckResult};
use pqn_core::tensorfield::Form;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use crate::spec::{SpecFile, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    PqnAxioms,
    DeformTheorem,
    BracketIdentities,
    CourantAxioms,
    ThmCourant,
    LemmaIdentities,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::PqnAxioms,
        Suite::DeformTheorem,
        Suite::BracketIdentities,
        Suite::CourantAxioms,
        Suite::ThmCourant,
        Suite::LemmaIdentities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PqnAxioms => "pqn-axioms",
            Suite::DeformTheorem => "deform-theorem",
            Suite::BracketIdentities => "bracket-identities",
            Suite::CourantAxioms => "courant-axioms",
            Suite::ThmCourant => "thm-courant",
            Suite::LemmaIdentities => "lemma-identities",
        }
    }

    /// Whether the suite reads `omega` from the spec.
    pub fn needs_omega(self) -> bool {
        matches!(self, Suite::DeformTheorem | Suite::ThmCourant)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                CliError::Usage(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the spec's suite list when nonempty.
    pub suites: Vec<Suite>,
    /// Overrides the spec's seed.
    pub seed: Option<u64>,
    /// Record wall-clock time per suite. Breaks byte-stability of the report.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    /// SHA-256 of the input bytes.
    pub input_digest: String,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
    /// The deformed structure, when `deform-theorem` ran to completion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformed: Option<SpecFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "[{}] {}", s.suite, if s.passed { "PASS" } else { "FAIL" })?;
            for c in &s.checks {
                writeln!(f, "  {c}")?;
            }
        }
        write!(f, "{}", if self.passed { "all checks passed" } else { "some checks failed" })
    }
}

pub fn digest(input: &[u8]) -> String {
    let hash = Sha256::digest(input);
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// Suites to run: the options' list, else the spec's, else `pqn-axioms`.
pub fn selected_suites(spec: &SpecFile, opts: &RunOptions) -> Result<Vec<Suite>> {
    let mut suites = if !opts.suites.is_empty() {
        opts.suites.clone()
    } else if !spec.suite.is_empty() {
        spec.suite.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?
    } else {
        vec![Suite::PqnAxioms]
    };
    suites.dedup();
    Ok(suites)
}

/// Runs the selected suites concurrently and assembles the report in
/// selection order. `input` is the raw spec text, used for the digest.
pub fn run_suite(spec: &SpecFile, input: &[u8], opts: &RunOptions) -> Result<RunReport> {
    let structure = spec.validate(std::str::from_utf8(input).unwrap_or(""))?;
    let suites = selected_suites(spec, opts)?;
    if structure.omega.is_none() {
        if let Some(s) = suites.iter().find(|s| s.needs_omega()) {
            return Err(CliError::Usage(format!("suite {s} needs an omega in the spec")));
        }
    }
    let seed = opts.seed.or(spec.seed).unwrap_or(0);
    let results = suites
        .par_iter()
        .map(|&suite| {
            let start = Instant::now();
            let out = run_one(suite, &structure, seed)?;
            Ok((out, start.elapsed().as_millis() as u64))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut outcomes = Vec::new();
    let mut deformed = None;
    let mut timing = BTreeMap::new();
    for (suite, ((report, def), ms)) in suites.iter().zip(results) {
        outcomes.push(SuiteOutcome {
            suite: suite.name().to_string(),
            passed: report.passed(),
            checks: report.checks,
        });
        if def.is_some() {
            deformed = def;
        }
        timing.insert(suite.name().to_string(), ms);
    }
    Ok(RunReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: digest(input),
        seed,
        passed: outcomes.iter().all(|o| o.passed),
        suites: outcomes,
        deformed,
        timing_ms: opts.timing.then_some(timing),
    })
}

type SuiteResult = (CheckReport, Option<SpecFile>);

fn run_one(suite: Suite, s: &Structure, seed: u64) -> Result<SuiteResult> {
    let identity_cfg = IdentityConfig {
        seed,
        ..IdentityConfig::default()
    };
    let report = match suite {
        Suite::PqnAxioms => pqn_axioms(&s.pqn, seed)?,
        Suite::DeformTheorem => return deform_theorem(&s.pqn, omega(s), seed),
        Suite::BracketIdentities => bracket_identities(&identity_cfg)?,
        Suite::LemmaIdentities => lemma_identities(&identity_cfg)?,
        Suite::CourantAxioms => courant_axioms(&s.pqn, seed)?,
        Suite::ThmCourant => thm_courant(&s.pqn, omega(s), seed)?,
    };
    Ok((report, None))
}

fn omega(s: &Structure) -> &Form {
    s.omega.as_ref().expect("omega presence checked before dispatch")
}

fn not_evaluated(id: &str, why: &str) -> CheckResult {
    CheckResult::fail(id, format!("not evaluated: {why}"))
}

/// `check_pqn`, then the quasi-Lie bialgebroid laws when it passes.
fn pqn_axioms(s: &PqnStructure, seed: u64) -> Result<CheckReport> {
    let base = check_pqn(s)?;
    let qlba = if base.passed() {
        check_qlba(s, seed)?
    } else {
        CheckReport::new(vec![not_evaluated("qlba", "structure is not PqN")])
    };
    Ok(CheckReport::merge([("pqn".to_string(), base), (String::new(), qlba)]))
}

fn closed_check(omega: &Form) -> CheckResult {
    CheckResult::zero("omega.closed", "d omega", &exterior_d(omega))
}

fn deform_theorem(s: &PqnStructure, omega: &Form, seed: u64) -> Result<SuiteResult> {
    let closed = closed_check(omega);
    let input = check_pqn(s)?;
    if !closed.pass || !input.passed() {
        let parts = [
            (String::new(), CheckReport::new(vec![closed])),
            ("input".to_string(), input),
        ];
        return Ok((CheckReport::merge(parts), None));
    }
    let hat = deform(s, omega)?;
    let zero = Form::zero(s.chart(), 2);
    let identity = if deform(s, &zero)? == *s {
        CheckResult::pass("action.identity")
    } else {
        CheckResult::fail("action.identity", "deform(S, 0) differs from S")
    };
    let parts = vec![
        (String::new(), CheckReport::new(vec![closed, identity])),
        ("input".to_string(), input),
        ("deformed".to_string(), check_pqn(&hat)?),
        ("deformed".to_string(), check_qlba(&hat, seed)?),
        (String::new(), relabel(action_compose(s, omega, omega)?, "action.", "action.twice.")),
        (String::new(), relabel(action_compose(s, omega, &-omega)?, "action.", "action.inverse.")),
    ];
    Ok((CheckReport::merge(parts), Some(SpecFile::from_structure(&hat, None))))
}

fn relabel(mut r: CheckReport, from: &str, to: &str) -> CheckReport {
    for c in &mut r.checks {
        if let Some(rest) = c.id.strip_prefix(from) {
            c.id = format!("{to}{rest}");
        }
    }
    r
}

/// The Courant structure, or a failing check when `s` is not PqN.
fn assemble(s: &PqnStructure) -> Result<std::result::Result<CourantStructure, CheckResult>> {
    match CourantStructure::from_pqn(s) {
        Ok(c) => Ok(Ok(c)),
        Err(pqn_core::Error::InvalidStructure { failing }) => {
            Ok(Err(CheckResult::fail("courant.assemble", format!("structure is not PqN: {failing}"))))
        }
        Err(e) => Err(e.into()),
    }
}

fn courant_axioms(s: &PqnStructure, seed: u64) -> Result<CheckReport> {
    let c = match assemble(s)? {
        Ok(c) => c,
        Err(fail) => return Ok(CheckReport::new(vec![fail])),
    };
    let battery = AxiomBattery {
        seed,
        ..AxiomBattery::default()
    };
    let axioms = check_courant_axioms(&c, &battery)?;
    let cotangent = is_dirac(&c, &LagrangianGraph::Cotangent(s.chart().clone()))?;
    Ok(CheckReport::merge([(String::new(), axioms), ("cotangent".to_string(), cotangent)]))
}

fn thm_courant(s: &PqnStructure, omega: &Form, seed: u64) -> Result<CheckReport> {
    let closed = closed_check(omega);
    if !closed.pass {
        return Ok(CheckReport::new(vec![closed]));
    }
    let c = match assemble(s)? {
        Ok(c) => c,
        Err(fail) => return Ok(CheckReport::new(vec![closed, fail])),
    };
    Ok(CheckReport::merge([
        (String::new(), CheckReport::new(vec![closed])),
        (String::new(), check_induced_matches_deform(s, omega, seed)?),
        (String::new(), verify_graph_bracket(&c, omega)?),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_spec;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("pqn".parse::<Suite>().is_err());
    }

    #[test]
    fn omega_required() {
        let text = r#"{"dim":2,"pi":{"(1,2)":"1"},"N":[["1","0"],["0","1"]],"suite":["thm-courant"]}"#;
        let spec = parse_spec(text).unwrap();
        let err = run_suite(&spec, text.as_bytes(), &RunOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn non_closed_omega_fails() {
        let text = r#"{"dim":3,"pi":{},"N":[["1","0","0"],["0","1","0"],["0","0","1"]],
            "omega":{"(1,2)":"x3"},"suite":["deform-theorem","thm-courant"]}"#;
        let spec = parse_spec(text).unwrap();
        let r = run_suite(&spec, text.as_bytes(), &RunOptions::default()).unwrap();
        assert!(!r.passed);
        for s in &r.suites {
            let c = s.checks.iter().find(|c| c.id == "omega.closed").unwrap();
            assert_eq!(c.witness.as_ref().unwrap().value, "dx1^dx2^dx3");
        }
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
