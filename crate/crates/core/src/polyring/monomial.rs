use std::cmp::Ordering;

/// Exponent vector `[e1, .., en]` standing for `x1^e1 * .. * xn^en`.
///
/// Ordered graded-lexicographically: higher total degree is greater, ties
/// are broken lexicographically with `x1 > x2 > .. > xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps.into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Exponent lowered by one along `axis`, together with the old exponent.
    /// `None` when the variable does not occur.
    pub(crate) fn lower(&self, axis: usize) -> Option<(u32, Monomial)> {
        let e = self.0[axis];
        if e == 0 {
            return None;
        }
        let mut exps = self.0.clone();
        exps[axis] -= 1;
        Some((e, Monomial(exps)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x2 = Monomial::from_exponents(vec![2, 0]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let x = Monomial::var(2, 0);
        assert!(x2 > xy && xy > y2 && y2 > x);
        assert!(x > Monomial::var(2, 1));
        assert!(Monomial::var(2, 1) > Monomial::one(2));
    }
}
