//! Seeded PqN instances: constant Poisson-Nijenhuis data deformed by an exact
//! 2-form.

use std::sync::Arc;

use rand::Rng;

use super::deform::twist;
use super::structure::PqnStructure;
use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::random::Sampler;
use crate::tensorfield::{Chart, EndoField, Form, MultiVector};

/// A constant PN structure together with the exact 2-form that deforms it.
#[derive(Debug, Clone)]
pub struct Seeded {
    pub pn: PqnStructure,
    pub omega: Form,
    /// Number of planar blocks `d_{2k-1}^d_{2k}` in `pi`.
    pub blocks: usize,
}

impl Seeded {
    /// The deformed structure, generally not PN.
    pub fn pqn(&self) -> Result<PqnStructure> {
        twist(&self.pn, &self.omega)
    }
}

/// Draws of `theta` tried before settling for a deformation with `phi^ = 0`.
const THETA_DRAWS: usize = 16;

/// Draws `pi = d1^d2 + .. + d_{2k-1}^d_{2k}` (with `k` possibly below
/// `n/2`), a constant `N = [[A, B], [0, D]]` whose symplectic block `A` is
/// scalar on each plane, and `Omega = d theta` for a random 1-form `theta` with
/// coefficients of degree at most `theta_degree`.
pub fn seeded_instance(seed: u64, dim: usize, theta_degree: u32) -> Result<Seeded> {
    if !(2..=6).contains(&dim) {
        return Err(Error::UnsupportedDim { dim });
    }
    let chart: Arc<Chart> = Chart::standard(dim)?;
    let mut sampler = Sampler::new(&chart, seed);
    let max_blocks = dim / 2;
    let blocks = if max_blocks > 1 && sampler.rng().gen_bool(0.3) {
        max_blocks - 1
    } else {
        max_blocks
    };
    let pi = MultiVector::from_components(
        &chart,
        2,
        (0..blocks).map(|k| (vec![2 * k, 2 * k + 1], chart.one())),
    );
    let sym = 2 * blocks;
    let mut rows = vec![vec![chart.zero(); dim]; dim];
    for k in 0..blocks {
        let a = small_constant(&mut sampler);
        rows[2 * k][2 * k] = a.clone();
        rows[2 * k + 1][2 * k + 1] = a;
    }
    // B (symplectic rows, kernel columns) and D are unconstrained
    for row in rows.iter_mut() {
        for cell in row.iter_mut().skip(sym) {
            if sampler.rng().gen_bool(0.5) {
                *cell = small_constant(&mut sampler);
            }
        }
    }
    let n = EndoField::from_rows(&chart, rows);
    let pn = PqnStructure::poisson_nijenhuis(pi, n)?;
    // on n >= 3 keep drawing until the deformation is not PN
    let mut omega = sampler.exact_form(2, theta_degree);
    for _ in 1..THETA_DRAWS {
        if dim < 3 || !twist(&pn, &omega)?.phi().is_zero() {
            break;
        }
        omega = sampler.exact_form(2, theta_degree);
    }
    Ok(Seeded { pn, omega, blocks })
}

fn small_constant(sampler: &mut Sampler) -> Polynomial {
    let c = sampler.coefficient();
    Polynomial::constant(sampler.chart().dim(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pqn::check_pqn;

    #[test]
    fn seeds_are_pn_and_deform_to_pqn() {
        for dim in 2..=4 {
            for seed in 0..4 {
                let s = seeded_instance(seed, dim, 2).unwrap();
                assert!(check_pqn(&s.pn).unwrap().passed());
                let q = s.pqn().unwrap();
                let r = check_pqn(&q).unwrap();
                assert!(r.passed(), "dim {dim} seed {seed}: {r}");
                if dim >= 3 {
                    assert!(!q.phi().is_zero(), "dim {dim} seed {seed} stayed PN");
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = seeded_instance(7, 3, 3).unwrap();
        let b = seeded_instance(7, 3, 3).unwrap();
        assert_eq!(a.pn, b.pn);
        assert_eq!(a.omega, b.omega);
    }

    #[test]
    fn rejects_unsupported_dim() {
        assert!(seeded_instance(0, 1, 2).is_err());
        assert!(seeded_instance(0, 7, 2).is_err());
    }
}
