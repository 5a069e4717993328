use std::fmt;

use smallvec::SmallVec;

use super::PolyError;

/// Exponent vector of a monomial, one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Self {
        Monomial(SmallVec::from_vec(exponents.into()))
    }

    pub fn from_slice(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    /// The monomial `1` in `num_vars` variables.
    pub fn one(num_vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, num_vars))
    }

    /// `z_i^e` in `num_vars` variables.
    pub fn var_power(num_vars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(num_vars);
        m.0[i] = e;
        m
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// If the monomial is a pure power `z_i^e` with `e > 0`, returns `(i, e)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> Result<u64, PolyError> {
        weighted_degree(self, weights)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` set iff variable `i` occurs. Used as a cheap divisibility prefilter.
    pub(crate) fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1u64 << (i % 64)))
    }
}

/// Σ αᵢ·wᵢ for the exponent vector α of `m`.
pub fn weighted_degree(m: &Monomial, weights: &[u64]) -> Result<u64, PolyError> {
    if weights.len() != m.num_vars() {
        return Err(PolyError::LengthMismatch {
            expected: m.num_vars(),
            found: weights.len(),
        });
    }
    Ok(m.0.iter().zip(weights).map(|(&e, &w)| u64::from(e) * w).sum())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{i}")?;
            } else {
                write!(f, "z{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_degree_examples() {
        let m = Monomial::new(vec![5, 0, 0, 0, 1]);
        assert_eq!(weighted_degree(&m, &[10, 12, 13, 15, 25]).unwrap(), 75);
        assert_eq!(weighted_degree(&Monomial::one(5), &[7, 1, 2, 3, 4]).unwrap(), 0);
        let m = Monomial::new(vec![3, 3, 3, 3, 3]);
        assert_eq!(weighted_degree(&m, &[1, 1, 1, 1, 1]).unwrap(), 15);
    }

    #[test]
    fn weighted_degree_length_mismatch() {
        let m = Monomial::new(vec![1, 2]);
        assert!(matches!(
            weighted_degree(&m, &[1, 2, 3]),
            Err(PolyError::LengthMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::new(vec![2, 0, 1]);
        let b = Monomial::new(vec![3, 1, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).unwrap(), Monomial::new(vec![1, 1, 0]));
        assert_eq!(a.lcm(&Monomial::new(vec![0, 4, 0])), Monomial::new(vec![2, 4, 1]));
        assert!(Monomial::new(vec![2, 0, 0]).is_coprime(&Monomial::new(vec![0, 1, 3])));
        assert_eq!(Monomial::new(vec![0, 4, 0]).as_pure_power(), Some((1, 4)));
        assert_eq!(a.as_pure_power(), None);
    }
}
