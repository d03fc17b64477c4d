//! Seeded randomized identity suites for the bracket calculus.
//!
//! Each identity draws fresh random inputs per case; a suite entry passes when
//! every case yields an exactly zero defect, and otherwise carries the first
//! nonzero defect as its witness.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::calculus::{
    bracket_n, d_n, d_n_expanded, exterior_d, koszul_bracket_with, lie_bracket, lie_derivative_form,
    lichnerowicz_d_function, nijenhuis_torsion, omega_pi_bracket, schouten_with, BracketSigns,
};
use crate::error::Result;
use crate::polyring::{rational, Polynomial};
use crate::random::Sampler;
use crate::report::{CheckReport, CheckResult, ScalarOn};
use crate::tensorfield::{
    compose_sharp_flat, contract, contract_pair, evaluate_form, flat, pairing, sharp, Alt, Chart, Form,
    MultiVector, Variance, VectorField,
};

#[derive(Debug, Clone)]
pub struct IdentityConfig {
    pub dims: Vec<usize>,
    /// Random cases per identity and dimension.
    pub cases: usize,
    /// Coefficient degree bound for random tensors.
    pub degree: u32,
    pub seed: u64,
    /// Sign rule used by every graded bracket in the suite.
    pub signs: BracketSigns,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            dims: vec![2, 3],
            cases: 50,
            degree: 3,
            seed: 0,
            signs: BracketSigns::Standard,
        }
    }
}

/// Per-case inputs: a sampler, the degree bound, and the sign rule.
pub struct Case {
    pub sampler: Sampler,
    pub degree: u32,
    pub signs: BracketSigns,
}

/// Outcome of one case: `None` if the defect vanished, else the failing check.
type Outcome = Result<Option<CheckResult>>;

type CaseFn = fn(&str, &mut Case) -> Outcome;

impl Case {
    fn chart(&self) -> Arc<Chart> {
        self.sampler.chart().clone()
    }

    fn dim(&self) -> usize {
        self.sampler.chart().dim()
    }

    fn form_degree(&mut self, lo: usize, hi: usize) -> usize {
        self.sampler.rng().gen_range(lo..=hi)
    }

    fn form(&mut self, k: usize) -> Form {
        let d = self.degree;
        self.sampler.form(k, d)
    }

    fn field(&mut self) -> VectorField {
        let d = self.degree;
        self.sampler.vector_field(d)
    }

    /// Poisson bivector; its coefficient degree is kept at most 2.
    fn poisson(&mut self) -> MultiVector {
        let d = self.degree.min(2);
        self.sampler.poisson_bivector(d)
    }

    fn koszul(&self, a: &Form, b: &Form, pi: &MultiVector) -> Result<Form> {
        koszul_bracket_with(a, b, pi, self.signs)
    }
}

/// Sums signed terms, dropping zero terms whose degree is off by the
/// function-function convention (two functions bracket to a degree-0 zero).
pub fn graded_sum<V: Variance>(terms: &[(bool, Alt<V>)]) -> Result<Alt<V>> {
    let mut out: Option<Alt<V>> = None;
    for (neg, t) in terms {
        if t.is_zero() {
            continue;
        }
        let t = if *neg { -t.clone() } else { t.clone() };
        out = Some(match out {
            None => t,
            Some(acc) => acc.try_add(&t)?,
        });
    }
    Ok(out.unwrap_or_else(|| terms[0].1.clone()))
}

fn parity(k: usize) -> bool {
    k % 2 == 1
}

fn zero_or<W: crate::report::Witnessed>(id: &str, label: String, defect: &W) -> Outcome {
    Ok((!defect.is_zero()).then(|| CheckResult::zero(id, label, defect)))
}

fn d_squared(id: &str, c: &mut Case) -> Outcome {
    let k = c.form_degree(0, c.dim());
    let eta = c.form(k);
    zero_or(id, format!("d(d eta) for eta = {eta}"), &exterior_d(&exterior_d(&eta)))
}

fn cartan(id: &str, c: &mut Case) -> Outcome {
    let k = c.form_degree(0, c.dim());
    let eta = c.form(k);
    let x = c.field();
    let lhs = lie_derivative_form(&x, &eta)?;
    let mut rhs = contract(&x, &exterior_d(&eta))?;
    if k > 0 {
        rhs = rhs.try_add(&exterior_d(&contract(&x, &eta)?))?;
    }
    zero_or(id, format!("L_X eta - (i_X d + d i_X) eta, X = {x}"), &(&lhs - &rhs))
}

fn cartan_commutator(id: &str, c: &mut Case) -> Outcome {
    let k = c.form_degree(1, c.dim());
    let eta = c.form(k);
    let x = c.field();
    let y = c.field();
    let a = lie_derivative_form(&x, &contract(&y, &eta)?)?;
    let b = contract(&y, &lie_derivative_form(&x, &eta)?)?;
    let r = contract(&lie_bracket(&x, &y)?, &eta)?;
    zero_or(id, format!("[L_X, i_Y] eta - i_[X,Y] eta, X = {x}, Y = {y}"), &(&(&a - &b) - &r))
}

fn k1(id: &str, c: &mut Case) -> Outcome {
    let n = c.dim();
    let p = c.form_degree(0, n);
    let q = c.form_degree(if p == 0 { 1 } else { 0 }, n);
    let pi = c.poisson();
    let a = c.form(p);
    let b = c.form(q);
    let ab = c.koszul(&a, &b, &pi)?;
    let ba = c.koszul(&b, &a, &pi)?;
    let sign = parity((p + 1) * (q + 1));
    // [a,b] + (-1)^{(p-1)(q-1)} [b,a]
    let d = graded_sum(&[(false, ab), (sign, ba)])?;
    zero_or(id, format!("graded antisymmetry on degrees ({p},{q})"), &d)
}

fn k3(id: &str, c: &mut Case) -> Outcome {
    let n = c.dim();
    let p = c.form_degree(0, n);
    let q = c.form_degree(0, n);
    let r = c.form_degree(0, n - q);
    let pi = c.poisson();
    let (a, b, e) = (c.form(p), c.form(q), c.form(r));
    let lhs = c.koszul(&a, &b.wedge(&e)?, &pi)?;
    let t1 = c.koszul(&a, &b, &pi)?.wedge(&e)?;
    let t2 = b.wedge(&c.koszul(&a, &e, &pi)?)?;
    let sign = parity((p + 1) * q);
    let d = graded_sum(&[(false, lhs), (true, t1), (!sign, t2)])?;
    zero_or(id, format!("Leibniz defect on degrees ({p},{q},{r})"), &d)
}

fn k2_all(id: &str, c: &mut Case) -> Outcome {
    let k = c.form_degree(1, c.dim());
    let pi = c.poisson();
    let f = c.sampler.polynomial(c.degree);
    let eta = c.form(k);
    let chart = c.chart();
    let lhs = c.koszul(&Form::scalar(&chart, f.clone()), &eta, &pi)?;
    let hf = sharp(&pi, &exterior_d(&Form::scalar(&chart, f)))?;
    let rhs = contract(&hf, &eta)?;
    zero_or(id, "[f, eta]_pi - i_{pi# df} eta".into(), &(&lhs - &rhs))
}

/// Graded Jacobi sum for three brackets of the given degrees.
fn jacobi_sum<V: Variance>(
    xs: [&Alt<V>; 3],
    br: &dyn Fn(&Alt<V>, &Alt<V>) -> Result<Alt<V>>,
) -> Result<Alt<V>> {
    let q: Vec<usize> = xs.iter().map(|x| x.degree()).collect();
    let t1 = br(xs[0], &br(xs[1], xs[2])?)?;
    let t2 = br(xs[1], &br(xs[2], xs[0])?)?;
    let t3 = br(xs[2], &br(xs[0], xs[1])?)?;
    let s = |a: usize, b: usize| parity((q[a] + 1) * (q[b] + 1));
    graded_sum(&[(s(0, 2), t1), (s(1, 0), t2), (s(2, 1), t3)])
}

fn jacobi_degrees(c: &mut Case, lo: usize) -> [usize; 3] {
    let hi = c.dim().min(3);
    [c.form_degree(lo, hi), c.form_degree(lo, hi), c.form_degree(lo, hi)]
}

fn jacobi_koszul(id: &str, c: &mut Case) -> Outcome {
    let pi = c.poisson();
    let [p, q, r] = jacobi_degrees(c, 1);
    let (a, b, e) = (c.form(p), c.form(q), c.form(r));
    let signs = c.signs;
    let br = move |u: &Form, v: &Form| koszul_bracket_with(u, v, &pi, signs);
    let d = jacobi_sum([&a, &b, &e], &br)?;
    zero_or(id, format!("Koszul Jacobiator on degrees ({p},{q},{r})"), &d)
}

fn jacobi_schouten(id: &str, c: &mut Case) -> Outcome {
    let [p, q, r] = jacobi_degrees(c, 1);
    let d = c.degree.min(2);
    let (a, b, e) = (
        c.sampler.multivector(p, d),
        c.sampler.multivector(q, d),
        c.sampler.multivector(r, d),
    );
    let signs = c.signs;
    let br = move |u: &MultiVector, v: &MultiVector| schouten_with(u, v, signs);
    let d = jacobi_sum([&a, &b, &e], &br)?;
    zero_or(id, format!("Schouten Jacobiator on degrees ({p},{q},{r})"), &d)
}

/// `d1^d2 + x2 d2^d3` on a 3-chart: `[pi, pi] = 2 d1^d2^d3`.
pub fn non_poisson_bivector(chart: &Arc<Chart>) -> MultiVector {
    MultiVector::basis(chart, &[0, 1]) + MultiVector::monomial(chart, &[1, 2], chart.coord(1))
}

fn d_n_agree(id: &str, c: &mut Case) -> Outcome {
    let k = c.form_degree(0, c.dim());
    let n = c.sampler.endo(c.degree.min(2));
    let eta = c.form(k);
    let d = &d_n(&n, &eta)? - &d_n_expanded(&n, &eta)?;
    zero_or(id, format!("d_N eta two ways, N = {n}"), &d)
}

fn torsion_tensorial(id: &str, c: &mut Case) -> Outcome {
    let n = c.sampler.endo(c.degree.min(2));
    let (x, y) = (c.field(), c.field());
    let f = c.sampler.polynomial(2);
    let lhs = nijenhuis_torsion(&n, &x.mul_poly(&f), &y)?;
    let rhs = nijenhuis_torsion(&n, &x, &y)?.mul_poly(&f);
    zero_or(id, format!("T_N(fX,Y) - f T_N(X,Y), N = {n}"), &(&lhs - &rhs))
}

fn dorfman(id: &str, c: &mut Case) -> Outcome {
    let pi = c.poisson();
    let om = c.form(2);
    let xs = [c.field(), c.field(), c.field()];
    let lhs = evaluate_form(&c.koszul(&om, &om, &pi)?, &[&xs[0], &xs[1], &xs[2]])?;
    let mut rhs = Polynomial::zero(c.dim());
    for s in 0..3 {
        let (x, y, z) = (&xs[s], &xs[(s + 1) % 3], &xs[(s + 2) % 3]);
        let br = c.koszul(&flat(&om, x)?, &flat(&om, y)?, &pi)?;
        rhs += &pairing(&br, z)?;
        rhs -= &sharp(&pi, &flat(&om, x)?)?.apply(&evaluate_form(&om, &[y, z])?);
    }
    let rhs = rhs.scale(&rational(2, 1));
    zero_or(id, "[O,O]_pi(X,Y,Z) - 2 sum_cyc(...)".into(), &ScalarOn(&c.chart(), &lhs - &rhs))
}

fn monella(id: &str, c: &mut Case) -> Outcome {
    let pi = c.poisson();
    let om = c.sampler.exact_form(2, c.degree);
    let k = c.form_degree(0, c.dim());
    let eta = c.form(k);
    let lhs = d_n(&compose_sharp_flat(&pi, &om)?, &eta)?;
    let rhs = c.koszul(&om, &eta, &pi)?;
    zero_or(id, format!("d_(pi# O_flat) eta - [O, eta]_pi, O = {om}"), &(&lhs - &rhs))
}

fn dn_omega(id: &str, c: &mut Case) -> Outcome {
    let n = c.sampler.endo(c.degree.min(2));
    let om = c.form(2);
    let (x, y) = (c.field(), c.field());
    let chart = c.chart();
    let lhs = d_n(&n, &Form::scalar(&chart, evaluate_form(&om, &[&x, &y])?))?;
    let t1 = contract(&x, &d_n(&n, &flat(&om, &y)?)?)?;
    let t2 = contract(&y, &d_n(&n, &flat(&om, &x)?)?)?;
    let t3 = contract_pair(&x, &y, &d_n(&n, &om)?)?;
    let t4 = flat(&om, &bracket_n(&n, &x, &y)?)?;
    let d = graded_sum(&[(false, lhs), (true, t1), (false, t2), (false, t3), (false, t4)])?;
    zero_or(id, format!("d_N(O(X,Y)) defect, N = {n}"), &d)
}

/// `[O_flat X, O_flat Y]_pi - O_flat B - 1/2 i_{X^Y}[O,O]_pi`.
fn koszul_defect(c: &Case, pi: &MultiVector, om: &Form, x: &VectorField, y: &VectorField, b: &VectorField) -> Result<Form> {
    let lhs = c.koszul(&flat(om, x)?, &flat(om, y)?, pi)?;
    let t = flat(om, b)?;
    let oo = contract_pair(x, y, &c.koszul(om, om, pi)?)?.scale(&rational(1, 2));
    Ok(&(&lhs - &t) - &oo)
}

fn koszul_closed(id: &str, c: &mut Case) -> Outcome {
    let pi = c.poisson();
    let om = c.sampler.exact_form(2, c.degree);
    let (x, y) = (c.field(), c.field());
    let b = bracket_n(&compose_sharp_flat(&pi, &om)?, &x, &y)?;
    zero_or(id, format!("closed O = {om}"), &koszul_defect(c, &pi, &om, &x, &y, &b)?)
}

fn koszul_bis(id: &str, c: &mut Case) -> Outcome {
    let pi = c.poisson();
    let om = c.form(2);
    let (x, y) = (c.field(), c.field());
    let b = omega_pi_bracket(&x, &y, &om, &pi)?;
    zero_or(id, format!("O = {om}"), &koszul_defect(c, &pi, &om, &x, &y, &b)?)
}

fn koszul_reduction(id: &str, c: &mut Case) -> Outcome {
    let pi = c.poisson();
    let om = c.sampler.exact_form(2, c.degree);
    let (x, y) = (c.field(), c.field());
    let d = &omega_pi_bracket(&x, &y, &om, &pi)? - &bracket_n(&compose_sharp_flat(&pi, &om)?, &x, &y)?;
    zero_or(id, format!("[X,Y]^pi_O - [X,Y]_(pi# O_flat), O = {om}"), &d)
}

fn lichnerowicz_functions(id: &str, c: &mut Case) -> Outcome {
    let pi = c.poisson();
    let f = c.sampler.polynomial(c.degree);
    let chart = c.chart();
    let rhs = -sharp(&pi, &exterior_d(&Form::scalar(&chart, f.clone())))?;
    zero_or(id, "d_pi f + pi# df".into(), &(&lichnerowicz_d_function(&pi, &f)? - &rhs))
}

fn run_identity(id: &'static str, f: CaseFn, cfg: &IdentityConfig, salt: u64) -> Result<CheckResult> {
    let mut total = 0;
    for &n in &cfg.dims {
        let chart = Chart::standard(n)?;
        for k in 0..cfg.cases {
            let seed = cfg
                .seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(salt << 32)
                .wrapping_add((n as u64) << 24)
                .wrapping_add(k as u64);
            let mut case = Case {
                sampler: Sampler::new(&chart, seed),
                degree: cfg.degree,
                signs: cfg.signs,
            };
            if let Some(fail) = f(id, &mut case)? {
                return Ok(fail.with_detail(format!("n = {n}, case {k}, seed {seed}")));
            }
            total += 1;
        }
    }
    Ok(CheckResult::pass(id).with_detail(format!("{total} cases")))
}

fn run_table(table: &[(&'static str, CaseFn)], cfg: &IdentityConfig) -> Result<CheckReport> {
    let checks = table
        .par_iter()
        .enumerate()
        .map(|(i, (id, f))| run_identity(id, *f, cfg, i as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::new(checks))
}

const BRACKET_TABLE: &[(&str, CaseFn)] = &[
    ("d.squared", d_squared),
    ("cartan.homotopy", cartan),
    ("cartan.commutator", cartan_commutator),
    ("koszul.K1", k1),
    ("koszul.K3", k3),
    ("koszul.K2", k2_all),
    ("jacobi.koszul", jacobi_koszul),
    ("jacobi.schouten", jacobi_schouten),
    ("dN.two-ways", d_n_agree),
    ("lichnerowicz.functions", lichnerowicz_functions),
    ("torsion.tensorial", torsion_tensorial),
];

const LEMMA_TABLE: &[(&str, CaseFn)] = &[
    ("dorfman", dorfman),
    ("monella", monella),
    ("dN-Omega", dn_omega),
    ("koszul.closed", koszul_closed),
    ("koszul.bis", koszul_bis),
    ("koszul.reduction", koszul_reduction),
];

/// Cartan calculus, generalized Schouten axioms, graded Jacobi and the two
/// computations of `d_N`.
pub fn bracket_identities(cfg: &IdentityConfig) -> Result<CheckReport> {
    let mut report = run_table(BRACKET_TABLE, cfg)?;
    report.checks.push(non_poisson_counterexample(cfg)?);
    Ok(CheckReport::new(report.checks))
}

/// Identities relating a 2-form, its Koszul self-bracket and the deformed
/// Nijenhuis calculus.
pub fn lemma_identities(cfg: &IdentityConfig) -> Result<CheckReport> {
    run_table(LEMMA_TABLE, cfg)
}

/// Searches seeded random triples for a Koszul Jacobi failure under the
/// non-Poisson bivector of [`non_poisson_bivector`]; passes iff one is found.
pub fn non_poisson_counterexample(cfg: &IdentityConfig) -> Result<CheckResult> {
    let id = "jacobi.non-poisson";
    let chart = Chart::standard(3)?;
    let pi = non_poisson_bivector(&chart);
    for k in 0..cfg.cases.max(1) {
        let mut case = Case {
            sampler: Sampler::new(&chart, cfg.seed.wrapping_add(k as u64)),
            degree: cfg.degree.min(2),
            signs: cfg.signs,
        };
        let [p, q, r] = jacobi_degrees(&mut case, 1);
        let (a, b, e) = (case.form(p), case.form(q), case.form(r));
        let signs = cfg.signs;
        let br = |u: &Form, v: &Form| koszul_bracket_with(u, v, &pi, signs);
        let d = jacobi_sum([&a, &b, &e], &br)?;
        if !d.is_zero() {
            let w = CheckResult::zero(id, "Koszul Jacobiator", &d).witness;
            let mut res = CheckResult::pass(id).with_detail(format!("counterexample at case {k}: {}", w.as_ref().unwrap()));
            res.witness = w;
            return Ok(res);
        }
    }
    Ok(CheckResult::fail(id, "no Jacobi counterexample found for a non-Poisson bivector"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> IdentityConfig {
        IdentityConfig {
            cases: 6,
            ..IdentityConfig::default()
        }
    }

    #[test]
    fn bracket_suite_small() {
        let r = bracket_identities(&small()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn lemma_suite_small() {
        let r = lemma_identities(&small()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn flipped_signs_break_jacobi() {
        let cfg = IdentityConfig {
            signs: BracketSigns::FlippedSymmetry,
            ..small()
        };
        let r = bracket_identities(&cfg).unwrap();
        let j = r.get("jacobi.schouten").unwrap();
        assert!(!j.pass);
        assert!(j.witness.is_some());
    }
}
