//! Seeded pseudo-random tensors for property checks and instance generation.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::exterior_d;
use crate::polyring::{rational, Monomial, Polynomial, Rational};
use crate::tensorfield::{increasing_tuples, Chart, EndoField, Form, MultiVector, VectorField};

/// A reproducible source of polynomial tensors on a fixed chart.
pub struct Sampler {
    chart: Arc<Chart>,
    rng: ChaCha8Rng,
    /// Upper bound on the number of terms in a random polynomial.
    pub max_terms: usize,
}

impl Sampler {
    pub fn new(chart: &Arc<Chart>, seed: u64) -> Self {
        Sampler {
            chart: chart.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_terms: 3,
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A small nonzero rational `p/q` with `|p| <= 3`, `q` in `{1, 2}`.
    pub fn coefficient(&mut self) -> Rational {
        let mut p = self.rng.gen_range(1..=3i64);
        if self.rng.gen_bool(0.5) {
            p = -p;
        }
        let q = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        rational(p, q)
    }

    /// Random monomial of total degree at most `max_degree`.
    pub fn monomial(&mut self, max_degree: u32) -> Monomial {
        let n = self.chart.dim();
        let degree = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..degree {
            exps[self.rng.gen_range(0..n)] += 1;
        }
        Monomial::from_exponents(exps)
    }

    /// Random polynomial with up to `max_terms` terms (zero only when two
    /// draws cancel).
    pub fn polynomial(&mut self, max_degree: u32) -> Polynomial {
        let n = self.chart.dim();
        let terms = self.rng.gen_range(1..=self.max_terms);
        let mut p = Polynomial::zero(n);
        for _ in 0..terms {
            let m = self.monomial(max_degree);
            let c = self.coefficient();
            p += &Polynomial::monomial(m, c);
        }
        p
    }

    /// Polynomial that is zero with probability `zero_prob`.
    pub fn sparse_polynomial(&mut self, max_degree: u32, zero_prob: f64) -> Polynomial {
        if self.rng.gen_bool(zero_prob) {
            Polynomial::zero(self.chart.dim())
        } else {
            self.polynomial(max_degree)
        }
    }

    pub fn vector_field(&mut self, max_degree: u32) -> VectorField {
        let n = self.chart.dim();
        let comps = (0..n).map(|_| self.sparse_polynomial(max_degree, 0.3)).collect();
        VectorField::new(&self.chart, comps)
    }

    /// Random form of degree `k`; each component is present with
    /// probability `0.6`.
    pub fn form(&mut self, k: usize, max_degree: u32) -> Form {
        let chart = self.chart.clone();
        let entries: Vec<_> = increasing_tuples(chart.dim(), k)
            .into_iter()
            .map(|idx| (idx, self.sparse_polynomial(max_degree, 0.4)))
            .collect();
        Form::from_components(&chart, k, entries)
    }

    pub fn multivector(&mut self, k: usize, max_degree: u32) -> MultiVector {
        let chart = self.chart.clone();
        let entries: Vec<_> = increasing_tuples(chart.dim(), k)
            .into_iter()
            .map(|idx| (idx, self.sparse_polynomial(max_degree, 0.4)))
            .collect();
        MultiVector::from_components(&chart, k, entries)
    }

    pub fn endo(&mut self, max_degree: u32) -> EndoField {
        let n = self.chart.dim();
        let rows = (0..n)
            .map(|_| (0..n).map(|_| self.sparse_polynomial(max_degree, 0.4)).collect())
            .collect();
        EndoField::from_rows(&self.chart, rows)
    }

    /// Exact form `d theta` for a random `(k-1)`-form `theta` with
    /// coefficients of degree at most `theta_degree`.
    pub fn exact_form(&mut self, k: usize, theta_degree: u32) -> Form {
        assert!(k >= 1);
        exterior_d(&self.form(k - 1, theta_degree))
    }

    /// A Poisson bivector with coefficients of degree at most `max_degree`:
    /// arbitrary on a 2-chart, `g * (i_{dh} vol)` on a 3-chart, and a sum of
    /// planar blocks `f_k(x_{2k-1}, x_{2k}) d_{2k-1}^d_{2k}` otherwise.
    pub fn poisson_bivector(&mut self, max_degree: u32) -> MultiVector {
        let chart = self.chart.clone();
        let n = chart.dim();
        match n {
            1 => MultiVector::zero(&chart, 2),
            2 => MultiVector::monomial(&chart, &[0, 1], self.polynomial(max_degree)),
            3 => {
                let hdeg = max_degree.clamp(1, 2);
                let h = self.polynomial(hdeg);
                let g = self.polynomial(max_degree + 1 - hdeg);
                // pi^{ij} = g eps^{ijk} d_k h
                let entries = [([0, 1], 2), ([1, 2], 0), ([0, 2], 1)].map(|(idx, k)| {
                    let c = &g * &h.d(k);
                    (idx.to_vec(), if idx == [0, 2] { -c } else { c })
                });
                MultiVector::from_components(&chart, 2, entries)
            }
            _ => {
                let mut entries = Vec::new();
                for b in 0..n / 2 {
                    let (i, j) = (2 * b, 2 * b + 1);
                    let f = self.planar_polynomial(i, j, max_degree);
                    entries.push((vec![i, j], f));
                }
                MultiVector::from_components(&chart, 2, entries)
            }
        }
    }

    /// Polynomial in the two variables `x_i`, `x_j` only.
    fn planar_polynomial(&mut self, i: usize, j: usize, max_degree: u32) -> Polynomial {
        let n = self.chart.dim();
        let terms = self.rng.gen_range(1..=self.max_terms);
        let mut p = Polynomial::zero(n);
        for _ in 0..terms {
            let d = self.rng.gen_range(0..=max_degree);
            let a = self.rng.gen_range(0..=d);
            let mut exps = vec![0u32; n];
            exps[i] = a;
            exps[j] = d - a;
            let c = self.coefficient();
            p += &Polynomial::monomial(Monomial::from_exponents(exps), c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::schouten;

    #[test]
    fn deterministic() {
        let c = Chart::standard(3).unwrap();
        let a = Sampler::new(&c, 9).form(2, 3);
        let b = Sampler::new(&c, 9).form(2, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn poisson_samples_are_poisson() {
        for n in 2..=5 {
            let c = Chart::standard(n).unwrap();
            for seed in 0..5 {
                let pi = Sampler::new(&c, seed).poisson_bivector(2);
                assert!(schouten(&pi, &pi).unwrap().is_zero(), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn exact_forms_are_closed() {
        let c = Chart::standard(3).unwrap();
        let mut s = Sampler::new(&c, 4);
        let om = s.exact_form(2, 3);
        assert!(exterior_d(&om).is_zero());
    }
}
