use serde::Serialize;

use super::GroebnerError;
use crate::polyring::Monomial;

/// Minimal monomial generators of a leading-term ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    num_vars: usize,
    generators: Vec<Monomial>,
}

impl Staircase {
    /// Builds the staircase from any generating set, discarding non-minimal
    /// generators and duplicates. Generators are kept in ascending
    /// (total degree, exponent vector) order for determinism.
    pub fn from_generators(num_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in all {
            assert_eq!(m.num_vars(), num_vars, "monomial arity mismatch");
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        Staircase {
            num_vars,
            generators: minimal,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// A monomial is standard iff no generator divides it.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.generators.iter().any(|g| g.divides(m))
    }

    /// For each variable, the smallest exponent `k` with `z_i^k` a generator.
    pub fn pure_power_bounds(&self) -> Vec<Option<u32>> {
        let mut bounds = vec![None; self.num_vars];
        for g in &self.generators {
            if let Some((i, e)) = g.as_pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds
    }

    pub fn is_zero_dimensional(&self) -> bool {
        // the unit ideal contains every pure power
        self.generators.iter().any(Monomial::is_one)
            || self.pure_power_bounds().iter().all(Option::is_some)
    }

    /// Streams the standard monomials. Errors unless the ideal is zero-dimensional.
    pub fn standard_monomials(&self) -> Result<StandardMonomials<'_>, GroebnerError> {
        if !self.is_zero_dimensional() {
            return Err(GroebnerError::NotZeroDimensional);
        }
        Ok(StandardMonomials::new(self))
    }

    pub fn quotient_dimension(&self) -> QuotientDimension {
        match self.standard_monomials() {
            Ok(it) => QuotientDimension::Finite(it.count() as u64),
            Err(_) => QuotientDimension::Infinite,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(n) => Some(n),
            QuotientDimension::Infinite => None,
        }
    }
}

/// Odometer walk over the box bounded by the pure-power generators, with the
/// last variable moving fastest. When bumping a digit lands on a non-standard
/// monomial, every larger value of that digit is non-standard too (the
/// trailing digits are zero at that point), so the walk carries immediately.
/// Working memory is one exponent vector.
pub struct StandardMonomials<'a> {
    staircase: &'a Staircase,
    current: Vec<u32>,
    started: bool,
    finished: bool,
}

impl<'a> StandardMonomials<'a> {
    fn new(staircase: &'a Staircase) -> Self {
        StandardMonomials {
            staircase,
            current: vec![0; staircase.num_vars],
            started: false,
            finished: false,
        }
    }

    fn current_is_standard(&self) -> bool {
        let cur = &self.current;
        !self
            .staircase
            .generators
            .iter()
            .any(|g| g.exponents().iter().zip(cur).all(|(a, b)| a <= b))
    }
}

impl Iterator for StandardMonomials<'_> {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.current_is_standard() {
                return Some(Monomial::from_slice(&self.current));
            }
            self.finished = true;
            return None;
        }
        let mut k = self.current.len();
        while k > 0 {
            let i = k - 1;
            self.current[i] += 1;
            if self.current_is_standard() {
                return Some(Monomial::from_slice(&self.current));
            }
            self.current[i] = 0;
            k -= 1;
        }
        self.finished = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(gens: &[&[u32]]) -> Staircase {
        let n = gens[0].len();
        Staircase::from_generators(n, gens.iter().map(|g| Monomial::from_slice(g)))
    }

    fn collect(s: &Staircase) -> Vec<Vec<u32>> {
        s.standard_monomials()
            .unwrap()
            .map(|m| m.exponents().to_vec())
            .collect()
    }

    #[test]
    fn box_x2_y3() {
        let s = st(&[&[2, 0], &[0, 3]]);
        let got = collect(&s);
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(s.quotient_dimension(), QuotientDimension::Finite(6));
    }

    #[test]
    fn mixed_generator_prunes() {
        let s = st(&[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(collect(&s), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        let s = st(&[&[2, 0], &[0, 3], &[1, 1]]);
        assert!(s.is_zero_dimensional());
        assert_eq!(s.quotient_dimension(), QuotientDimension::Finite(4));
    }

    #[test]
    fn zero_dimensionality() {
        assert!(!st(&[&[1, 1]]).is_zero_dimensional());
        assert_eq!(st(&[&[1, 1]]).quotient_dimension(), QuotientDimension::Infinite);
        assert!(st(&[&[1]]).is_zero_dimensional());
        assert_eq!(st(&[&[1]]).quotient_dimension(), QuotientDimension::Finite(1));
        assert!(matches!(
            st(&[&[1, 1]]).standard_monomials(),
            Err(GroebnerError::NotZeroDimensional)
        ));
        // unit ideal: nothing is standard
        assert_eq!(st(&[&[0, 0]]).quotient_dimension(), QuotientDimension::Finite(0));
    }

    #[test]
    fn minimalization() {
        let s = st(&[&[2, 1], &[1, 0], &[1, 0], &[0, 4]]);
        assert_eq!(s.generators(), &[Monomial::from_slice(&[1, 0]), Monomial::from_slice(&[0, 4])]);
    }

    #[test]
    fn fermat_box() {
        let s = Staircase::from_generators(5, (0..5).map(|i| Monomial::var_power(5, i, 4)));
        let all: Vec<_> = s.standard_monomials().unwrap().collect();
        assert_eq!(all.len(), 1024);
        assert!(all.iter().all(|m| m.exponents().iter().all(|&e| e <= 3)));
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 1024);
    }
}
