use std::collections::BTreeMap;

use pqn_core::pqn::seeded_instance;
use serde_json::Value;

use crate::error::Result;
use crate::spec::SpecFile;

/// A seeded spec: constant PN data `(pi, N, 0)` and `omega = d theta`, with
/// `theta` of coefficient degree at most `theta_degree`. Running the
/// `deform-theorem` suite on it verifies the deformed structure.
///
/// With `deformed`, the spec holds the deformed structure itself and no omega.
pub fn generate(seed: u64, dim: usize, theta_degree: u32, deformed: bool) -> Result<SpecFile> {
    let g = seeded_instance(seed, dim, theta_degree)?;
    let mut spec = if deformed {
        SpecFile::from_structure(&g.pqn()?, None)
    } else {
        SpecFile::from_structure(&g.pn, Some(&g.omega))
    };
    spec.suite = if deformed {
        vec!["pqn-axioms".into(), "courant-axioms".into()]
    } else {
        vec!["deform-theorem".into(), "thm-courant".into()]
    };
    spec.seed = Some(seed);
    let mut prov = BTreeMap::new();
    let construction = if deformed {
        "constant Poisson-Nijenhuis seed deformed by omega = d(theta)"
    } else {
        "constant Poisson-Nijenhuis seed; omega = d(theta)"
    };
    prov.insert("construction".to_string(), Value::from(construction));
    prov.insert("generator_seed".to_string(), Value::from(seed));
    prov.insert("dim".to_string(), Value::from(dim));
    prov.insert("theta_degree".to_string(), Value::from(theta_degree));
    prov.insert("symplectic_blocks".to_string(), Value::from(g.blocks));
    if deformed {
        prov.insert("omega".to_string(), serde_json::to_value(SpecFile::from_structure(&g.pn, Some(&g.omega)).omega).expect("map"));
    }
    spec.provenance = Some(prov);
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_spec;

    #[test]
    fn deterministic_and_parseable() {
        let a = generate(1, 2, 2, false).unwrap().to_json();
        let b = generate(1, 2, 2, false).unwrap().to_json();
        assert_eq!(a, b);
        let spec = parse_spec(&a).unwrap();
        assert_eq!(spec.dim, 2);
        assert!(spec.omega.is_some());
        assert_ne!(generate(2, 2, 2, false).unwrap().to_json(), a);
    }

    #[test]
    fn deformed_variant_matches_twist() {
        let plain = generate(4, 3, 2, false).unwrap().structure().unwrap();
        let hat = generate(4, 3, 2, true).unwrap().structure().unwrap();
        let expect = pqn_core::pqn::deform(&plain.pqn, plain.omega.as_ref().unwrap()).unwrap();
        assert_eq!(hat.pqn, expect);
        assert!(!hat.pqn.phi().is_zero());
    }

    #[test]
    fn unsupported_dim() {
        assert_eq!(generate(1, 7, 2, false).unwrap_err().exit_code(), 2);
        assert_eq!(generate(1, 1, 2, false).unwrap_err().exit_code(), 2);
    }
}
