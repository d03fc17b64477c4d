use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::chart::{same_chart, Chart};
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};

/// Marker distinguishing covariant (forms) from contravariant (multivector)
/// alternating tensors.
pub trait Variance: Copy + Eq + fmt::Debug + Send + Sync + 'static {
    const COVARIANT: bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Co;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Contra;

impl Variance for Co {
    const COVARIANT: bool = true;
}

impl Variance for Contra {
    const COVARIANT: bool = false;
}

/// Sorts an index tuple, returning the sorted tuple and whether the sorting
/// permutation is odd. `None` when an index repeats.
pub fn sort_indices(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    // insertion sort keeps track of transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Strictly increasing `k`-tuples drawn from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A degree-`k` alternating tensor field with polynomial coefficients,
/// stored on strictly increasing index tuples only.
///
/// Degrees above the chart dimension are allowed and always zero; see
/// [`Alt::exceeds_dim`].
pub struct Alt<V> {
    chart: Arc<Chart>,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
    _variance: PhantomData<V>,
}

/// Differential form.
pub type Form = Alt<Co>;
/// Multivector field.
pub type MultiVector = Alt<Contra>;

impl<V> Clone for Alt<V> {
    fn clone(&self) -> Self {
        Alt {
            chart: self.chart.clone(),
            degree: self.degree,
            comps: self.comps.clone(),
            _variance: PhantomData,
        }
    }
}

impl<V> PartialEq for Alt<V> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.comps == other.comps && *self.chart == *other.chart
    }
}

impl<V> Eq for Alt<V> {}

impl<V: Variance> Alt<V> {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        Alt {
            chart: chart.clone(),
            degree,
            comps: BTreeMap::new(),
            _variance: PhantomData,
        }
    }

    /// Degree-0 element.
    pub fn scalar(chart: &Arc<Chart>, f: Polynomial) -> Self {
        let mut a = Self::zero(chart, 0);
        a.accumulate(Vec::new(), f);
        a
    }

    /// `f dx^{i1}^..^dx^{ik}` (or the multivector analogue); the index tuple
    /// need not be sorted.
    pub fn monomial(chart: &Arc<Chart>, idx: &[usize], f: Polynomial) -> Self {
        let mut a = Self::zero(chart, idx.len());
        a.add_signed(idx, f);
        a
    }

    /// Basis element for an index tuple.
    pub fn basis(chart: &Arc<Chart>, idx: &[usize]) -> Self {
        Self::monomial(chart, idx, chart.one())
    }

    /// Builds from arbitrary (possibly unsorted) tuples; entries are summed.
    pub fn from_components<I>(chart: &Arc<Chart>, degree: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut a = Self::zero(chart, degree);
        for (idx, f) in entries {
            assert_eq!(idx.len(), degree, "index tuple length must equal degree");
            a.add_signed(&idx, f);
        }
        a
    }

    /// Degree-1 element from dense components.
    pub fn from_dense(chart: &Arc<Chart>, comps: Vec<Polynomial>) -> Self {
        assert_eq!(comps.len(), chart.dim());
        Self::from_components(chart, 1, comps.into_iter().enumerate().map(|(i, f)| (vec![i], f)))
    }

    fn accumulate(&mut self, idx: Vec<usize>, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        assert!(idx.iter().all(|&i| i < self.chart.dim()), "index out of range");
        match self.comps.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &f;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_signed(&mut self, idx: &[usize], f: Polynomial) {
        if let Some((sorted, odd)) = sort_indices(idx) {
            self.accumulate(sorted, if odd { -f } else { f });
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// True for degrees above the chart dimension, where the space of
    /// tensors is trivial.
    pub fn exceeds_dim(&self) -> bool {
        self.degree > self.chart.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Component on an arbitrary tuple, with the antisymmetry sign applied.
    pub fn component(&self, idx: &[usize]) -> Polynomial {
        match sort_indices(idx) {
            Some((sorted, odd)) => match self.comps.get(&sorted) {
                Some(f) if odd => -f,
                Some(f) => f.clone(),
                None => self.chart.zero(),
            },
            None => self.chart.zero(),
        }
    }

    /// Nonzero components on strictly increasing tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.comps.iter()
    }

    /// Coefficient of a degree-0 element.
    pub fn as_scalar(&self) -> Polynomial {
        assert_eq!(self.degree, 0, "not a degree-0 element");
        self.component(&[])
    }

    /// Dense components of a degree-1 element.
    pub fn to_dense(&self) -> Vec<Polynomial> {
        assert_eq!(self.degree, 1, "not a degree-1 element");
        (0..self.dim()).map(|i| self.component(&[i])).collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (idx, f) in &other.comps {
            out.accumulate(idx.clone(), f.clone());
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a function.
    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, g) in &self.comps {
            out.accumulate(idx.clone(), f * g);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, g) in &self.comps {
            out.accumulate(idx.clone(), g.scale(c));
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, g) in &self.comps {
            out.accumulate(idx.clone(), f(g));
        }
        out
    }

    /// Exterior product; degrees above the dimension give zero.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        let mut out = Self::zero(&self.chart, self.degree + other.degree);
        for (i, f) in &self.comps {
            for (j, g) in &other.comps {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.add_signed(&idx, f * g);
            }
        }
        Ok(out)
    }

    /// Contraction of a dual degree-1 element (given densely) into the first
    /// slot.
    pub fn interior(&self, v: &[Polynomial]) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::ContractFunction);
        }
        assert_eq!(v.len(), self.dim());
        let mut out = Self::zero(&self.chart, self.degree - 1);
        for (idx, f) in &self.comps {
            for (a, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(a);
                let term = &v[i] * f;
                out.accumulate(rest, if a % 2 == 1 { -term } else { term });
            }
        }
        Ok(out)
    }

    /// Largest total degree among the coefficients.
    pub fn max_coeff_degree(&self) -> u32 {
        self.comps.values().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn check_degree(&self, cap: u32) -> Result<()> {
        self.comps.values().try_for_each(|f| f.check_degree(cap))
    }

    /// Symbol of the `i`-th basis covector or vector.
    fn basis_symbol(&self, i: usize) -> String {
        if V::COVARIANT {
            format!("d{}", self.chart.names()[i])
        } else {
            format!("d/d{}", self.chart.names()[i])
        }
    }

    /// Canonical component key, 1-based: `dx1^dx2` or `e1^e2`.
    pub fn component_key(idx: &[usize]) -> String {
        if idx.is_empty() {
            return "1".into();
        }
        idx.iter()
            .map(|i| {
                if V::COVARIANT {
                    format!("dx{}", i + 1)
                } else {
                    format!("e{}", i + 1)
                }
            })
            .collect::<Vec<_>>()
            .join("^")
    }
}

/// Joins coefficient/basis pairs into a readable sum.
pub(crate) fn render_sum(chart: &Chart, terms: impl Iterator<Item = (String, Polynomial)>) -> String {
    let mut out = String::new();
    for (basis, f) in terms {
        let coeff = chart.render(&f);
        let piece = if basis.is_empty() {
            coeff
        } else if coeff == "1" {
            basis
        } else if coeff == "-1" {
            format!("-{basis}")
        } else if f.is_compound() {
            format!("({coeff})*{basis}")
        } else {
            format!("{coeff}*{basis}")
        };
        if out.is_empty() {
            out = piece;
        } else if let Some(stripped) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl<V: Variance> fmt::Display for Alt<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_sum(
            &self.chart,
            self.comps.iter().map(|(idx, g)| {
                let basis = idx
                    .iter()
                    .map(|&i| self.basis_symbol(i))
                    .collect::<Vec<_>>()
                    .join("^");
                (basis, g.clone())
            }),
        );
        f.write_str(&s)
    }
}

impl<V: Variance> fmt::Debug for Alt<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if V::COVARIANT { "Form" } else { "MultiVector" };
        write!(f, "{kind}<{}>({self})", self.degree)
    }
}

impl<V: Variance> Add for &Alt<V> {
    type Output = Alt<V>;
    fn add(self, rhs: &Alt<V>) -> Alt<V> {
        self.try_add(rhs).expect("adding alternating tensors")
    }
}

impl<V: Variance> Add for Alt<V> {
    type Output = Alt<V>;
    fn add(self, rhs: Alt<V>) -> Alt<V> {
        &self + &rhs
    }
}

impl<V: Variance> Neg for &Alt<V> {
    type Output = Alt<V>;
    fn neg(self) -> Alt<V> {
        self.map_coeffs(|g| -g)
    }
}

impl<V: Variance> Neg for Alt<V> {
    type Output = Alt<V>;
    fn neg(self) -> Alt<V> {
        -&self
    }
}

impl<V: Variance> Sub for &Alt<V> {
    type Output = Alt<V>;
    fn sub(self, rhs: &Alt<V>) -> Alt<V> {
        self + &(-rhs)
    }
}

impl<V: Variance> Sub for Alt<V> {
    type Output = Alt<V>;
    fn sub(self, rhs: Alt<V>) -> Alt<V> {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Arc<Chart> {
        Chart::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(sort_indices(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_indices(&[1, 0]), Some((vec![0, 1], true)));
        assert_eq!(sort_indices(&[1, 1]), None);
    }

    #[test]
    fn antisymmetric_reads() {
        let c = chart();
        let f = Form::monomial(&c, &[1, 0], c.coord(0));
        assert_eq!(f.component(&[0, 1]), -c.coord(0));
        assert_eq!(f.component(&[1, 0]), c.coord(0));
        assert!(f.component(&[1, 1]).is_zero());
        assert_eq!(f.to_string(), "-x*dx^dy");
    }

    #[test]
    fn wedge_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let dx = Form::basis(&c, &[0]);
        let dy = Form::basis(&c, &[1]);
        assert_eq!(dx.wedge(&dy).unwrap(), Form::basis(&c, &[0, 1]));
        assert!(dx.wedge(&dx).unwrap().is_zero());
        let xdx = dx.mul_poly(&c.coord(0));
        let ydy = dy.mul_poly(&c.coord(1));
        assert_eq!(
            xdx.wedge(&ydy).unwrap(),
            Form::monomial(&c, &[0, 1], c.poly("x*y").unwrap())
        );
        let top = Form::basis(&c, &[0, 1]).wedge(&dx).unwrap();
        assert_eq!(top.degree(), 3);
        assert!(top.exceeds_dim() && top.is_zero());
    }

    #[test]
    fn chart_mismatch_rejected() {
        let a = Form::basis(&chart(), &[0]);
        let b = Form::basis(&Chart::new(["u", "v", "w"]).unwrap(), &[1]);
        assert_eq!(a.wedge(&b), Err(Error::ChartMismatch));
    }

    #[test]
    fn tuples() {
        assert_eq!(increasing_tuples(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(increasing_tuples(2, 0), vec![Vec::<usize>::new()]);
        assert!(increasing_tuples(2, 3).is_empty());
    }
}
