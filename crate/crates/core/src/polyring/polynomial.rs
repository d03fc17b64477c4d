use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{degree_cap, Monomial, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial in `Q[x1..xn]`.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal. The arithmetic operators panic when the
/// operands have different numbers of variables; the `try_*` methods report
/// the mismatch instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The coordinate function `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), Rational::one());
        p
    }

    pub fn monomial(mono: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Product, rejecting results above the process-wide degree cap.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let degree = if self.is_zero() || other.is_zero() {
            0
        } else {
            self.degree() + other.degree()
        };
        let cap = degree_cap();
        if degree > cap {
            return Err(Error::DegreeCap { degree, cap });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative along `axis`.
    pub fn partial(&self, axis: usize) -> Result<Polynomial> {
        if axis >= self.nvars {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(axis) {
                out.add_term(lowered, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Partial derivative for an axis already known to be in range.
    pub(crate) fn d(&self, axis: usize) -> Polynomial {
        self.partial(axis).expect("axis in range")
    }

    /// Exact substitution of a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::PointLength {
                got: point.len(),
                expected: self.nvars,
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Fails when the total degree exceeds `cap`.
    pub fn check_degree(&self, cap: u32) -> Result<()> {
        let degree = self.degree();
        if degree > cap {
            return Err(Error::DegreeCap { degree, cap });
        }
        Ok(())
    }

    /// Canonical rendering with the given variable names.
    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        Rendered { poly: self, names }
    }

    /// Whether the printed form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

struct Rendered<'a, S> {
    poly: &'a Polynomial,
    names: &'a [S],
}

fn fmt_monomial<S: AsRef<str>>(m: &Monomial, names: &[S], out: &mut String) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(names[i].as_ref());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl<S: AsRef<str>> fmt::Display for Rendered<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                fmt_monomial(m, self.names, &mut out);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let shown = self.display_with(&names).to_string();
        f.write_str(&shown)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_dim(rhs).expect("polynomial addition");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_dim(rhs).expect("polynomial subtraction");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_dim(rhs).expect("polynomial multiplication");
        self.mul_unchecked(rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{integer, parse_polynomial, rational};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("x + y") + &p("x - y"), p("2*x"));
        assert_eq!(&p("x^2*y + 3") + &Polynomial::zero(2), p("x^2*y + 3"));
        assert!((&p("x^2*y") + &p("-x^2*y")).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert_eq!(&p("x*y - 2") * &Polynomial::one(2), p("x*y - 2"));
        assert!((&p("x*y - 2") * &Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("x^2*y").partial(0).unwrap(), p("2*x*y"));
        assert!(p("x^2").partial(1).unwrap().is_zero());
        assert_eq!(p("x*y + y^2").partial(0).unwrap(), p("y"));
        assert_eq!(
            p("x").partial(2),
            Err(Error::AxisOutOfRange { axis: 2, dim: 2 })
        );
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            p("x^2 + y").evaluate(&[integer(2), integer(3)]).unwrap(),
            integer(7)
        );
        assert_eq!(
            Polynomial::zero(2)
                .evaluate(&[integer(5), integer(-1)])
                .unwrap(),
            integer(0)
        );
        assert_eq!(
            p("x*y")
                .evaluate(&[rational(1, 2), rational(2, 3)])
                .unwrap(),
            rational(1, 3)
        );
        assert!(matches!(
            p("x").evaluate(&[integer(1)]),
            Err(Error::PointLength { got: 1, expected: 2 })
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert_eq!(
            a.try_add(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn degree_cap_guard() {
        let x = p("x^13");
        assert!(matches!(x.try_mul(&x), Err(Error::DegreeCap { degree: 26, .. })));
        assert!(x.check_degree(12).is_err());
        assert!(x.check_degree(13).is_ok());
    }

    #[test]
    fn canonical_printing() {
        let names = ["x", "y"];
        let q = p("-1/3 + 2*y*x^2");
        assert_eq!(q.display_with(&names).to_string(), "2*x^2*y - 1/3");
        assert_eq!(p("-x + y^2 - x*y").display_with(&names).to_string(), "-x*y + y^2 - x");
        assert_eq!(Polynomial::zero(2).display_with(&names).to_string(), "0");
        assert_eq!(p("x").to_string(), "x1");
    }
}
