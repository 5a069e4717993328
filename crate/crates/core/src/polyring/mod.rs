//! Exact scalars, sparse multivariate polynomials, monomial orders and the
//! weighted-homogeneity check.

mod monomial;
mod order;
mod parse;
mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use monomial::{weighted_degree, Monomial};
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use poly::Polynomial;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for `num / den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable z{index} at position {position} is out of range (ring has {num_vars} variables)")]
    UnknownVariable {
        position: usize,
        index: usize,
        num_vars: usize,
    },
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("a polynomial ring needs at least one variable")]
    NoVariables,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogeneityError {
    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("weights must be positive integers")]
    NonPositiveWeight,
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("expected {expected} weights for {expected} variables, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("term {monomial} has weighted degree {found}, expected {expected}")]
    Violation {
        monomial: String,
        exponents: Vec<u32>,
        found: u64,
        expected: u64,
    },
}

/// A polynomial together with its claimed weights and weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedInput {
    pub f: Polynomial,
    pub weights: Vec<u64>,
    pub degree: u64,
}

impl WeightedInput {
    pub fn new(f: Polynomial, weights: Vec<u64>, degree: u64) -> Self {
        WeightedInput { f, weights, degree }
    }

    pub fn num_vars(&self) -> usize {
        self.f.num_vars()
    }

    pub fn check(&self) -> Result<(), HomogeneityError> {
        check_weighted_homogeneous(self)
    }
}

/// Verifies that every term of `input.f` has weighted degree `input.degree`.
/// Reports the first offending term in descending grevlex order.
pub fn check_weighted_homogeneous(input: &WeightedInput) -> Result<(), HomogeneityError> {
    if input.f.is_zero() {
        return Err(HomogeneityError::ZeroPolynomial);
    }
    if input.weights.len() != input.f.num_vars() {
        return Err(HomogeneityError::WeightCount {
            expected: input.f.num_vars(),
            found: input.weights.len(),
        });
    }
    if input.weights.contains(&0) {
        return Err(HomogeneityError::NonPositiveWeight);
    }
    if input.degree == 0 {
        return Err(HomogeneityError::NonPositiveDegree);
    }
    let order = MonomialOrder::grevlex(input.f.num_vars());
    for (m, _) in input.f.sorted_terms(&order) {
        let found = weighted_degree(m, &input.weights).expect("arity checked above");
        if found != input.degree {
            return Err(HomogeneityError::Violation {
                monomial: m.to_string(),
                exponents: m.exponents().to_vec(),
                found,
                expected: input.degree,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn input(f: &str, w: &[u64], d: u64) -> WeightedInput {
        WeightedInput::new(parse_polynomial(f, w.len()).unwrap(), w.to_vec(), d)
    }

    #[test]
    fn homogeneity_examples() {
        assert!(input("z0^5+z1^5+z2^5+z3^5+z4^5", &[1, 1, 1, 1, 1], 5).check().is_ok());
        assert!(input("z0^135+z1^5*z4+z2^3*z3+z3^3*z1+z4^3", &[1, 18, 32, 39, 45], 135)
            .check()
            .is_ok());
        match input("z0+z1^2", &[1, 1], 1).check() {
            Err(HomogeneityError::Violation { exponents, found: 2, expected: 1, .. }) => {
                assert_eq!(exponents, vec![0, 2])
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(input("0", &[1, 1], 1).check(), Err(HomogeneityError::ZeroPolynomial));
        assert!(matches!(
            input("z0^5+z1^5+z2^5+z3^5+z4^5", &[1, 1, 1, 1, 2], 5).check(),
            Err(HomogeneityError::Violation { found: 10, .. })
        ));
    }

    fn euler_lhs(f: &Polynomial, w: &[u64]) -> Polynomial {
        let n = f.num_vars();
        let mut acc = Polynomial::zero(n);
        for (i, &wi) in w.iter().enumerate() {
            let zi = Polynomial::var(n, i);
            let term = &zi * &f.partial_derivative(i).unwrap();
            acc = &acc + &term.scale(&rat(wi as i64, 1));
        }
        acc
    }

    #[test]
    fn euler_identity_on_table_rows() {
        let f = parse_polynomial("z0^5*z4+z1^5*z3+z2^5*z0+z3^5+z4^3", 5).unwrap();
        let w = [10, 12, 13, 15, 25];
        assert_eq!(euler_lhs(&f, &w), f.scale(&rat(75, 1)));
    }

    // Random weighted-homogeneous polynomials: pick weights and a degree, then keep only
    // exponent vectors that land exactly on that degree.
    fn weighted_homogeneous() -> impl Strategy<Value = (Polynomial, Vec<u64>, u64)> {
        (proptest::collection::vec(1u64..5, 3), 4u64..12).prop_flat_map(|(w, d)| {
            let w2 = w.clone();
            proptest::collection::vec((-9i64..9, proptest::collection::vec(0u32..12, 3)), 1..10)
                .prop_map(move |ts| {
                    let f = Polynomial::from_terms(
                        3,
                        ts.into_iter()
                            .map(|(c, e)| (rat(c, 1), Monomial::new(e)))
                            .filter(|(_, m)| weighted_degree(m, &w2).unwrap() == d),
                    );
                    (f, w2.clone(), d)
                })
                .prop_map(move |(f, w, d)| (f, w, d))
        })
    }

    proptest! {
        #[test]
        fn euler_identity((f, w, d) in weighted_homogeneous()) {
            prop_assert_eq!(euler_lhs(&f, &w), f.scale(&rat(d as i64, 1)));
        }

        #[test]
        fn ring_axioms(
            a in proptest::collection::vec((-5i64..5, proptest::collection::vec(0u32..3, 2)), 0..5),
            b in proptest::collection::vec((-5i64..5, proptest::collection::vec(0u32..3, 2)), 0..5),
            c in proptest::collection::vec((-5i64..5, proptest::collection::vec(0u32..3, 2)), 0..5),
        ) {
            let mk = |v: Vec<(i64, Vec<u32>)>| Polynomial::from_terms(2, v.into_iter().map(|(c, e)| (rat(c, 3), Monomial::new(e))));
            let (a, b, c) = (mk(a), mk(b), mk(c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }
    }
}
