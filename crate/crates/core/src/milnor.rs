//! Jacobian ideals, the isolated-singularity test, and the Milnor number by
//! two independent routes: the quotient dimension of a Gröbner basis and the
//! closed form Π(d/wᵢ − 1) for weighted-homogeneous polynomials.
//!
//! The graded Poincaré series Π (t^{d−wᵢ} − 1)/(t^{wᵢ} − 1) of the Milnor
//! algebra is provided as an oracle for the weighted degrees of any monomial
//! basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::groebner::{buchberger, GroebnerBasis, GroebnerConfig, GroebnerError};
use crate::polyring::{weighted_degree, MonomialOrder, Polynomial, Rational, WeightedInput};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("the zero polynomial has no Jacobian ideal")]
    ZeroPolynomial,
    #[error("singularity at the origin is not isolated: the Jacobian ideal is not zero-dimensional")]
    NonIsolatedSingularity,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("degree and weights must be positive")]
    NonPositive,
    #[error("Π(d/wᵢ − 1) = {product} is not a non-negative integer; (d, w) is not a valid isolated weighted-homogeneous setup")]
    NonIntegralMilnorNumber { product: String },
    #[error("Poincaré series division is not exact for d = {degree}, w = {weights:?}")]
    InexactPoincareDivision { degree: u64, weights: Vec<u64> },
    #[error("integrity failure: Gröbner quotient dimension {groebner} ≠ closed-form Milnor number {closed_form}")]
    MilnorMismatch { groebner: u64, closed_form: u64 },
}

/// Multiset of weighted degrees, stored as degree → multiplicity.
pub type DegreeMultiset = BTreeMap<u64, u64>;

/// The n+1 partial derivatives of `f`; zero derivatives are kept in place.
pub fn jacobian_ideal(f: &Polynomial) -> Result<Vec<Polynomial>, MilnorError> {
    if f.is_zero() {
        return Err(MilnorError::ZeroPolynomial);
    }
    Ok((0..f.num_vars())
        .map(|i| f.partial_derivative(i).expect("index in range"))
        .collect())
}

#[derive(Clone, Debug)]
pub struct MilnorAnalysis {
    pub jacobian_generators: Vec<Polynomial>,
    /// Indices of partial derivatives that vanish identically.
    pub zero_partials: Vec<usize>,
    pub gb: GroebnerBasis,
    pub milnor_number: u64,
    pub closed_form_milnor: u64,
    pub basis_weighted_degrees: DegreeMultiset,
}

impl MilnorAnalysis {
    /// χ(F) = 1 + (−1)ⁿ μ for the Milnor fibre of f in n+1 variables.
    pub fn euler_characteristic(&self) -> i64 {
        let n = self.jacobian_generators.len() as i64 - 1;
        let mu = self.milnor_number as i64;
        if n % 2 == 0 {
            1 + mu
        } else {
            1 - mu
        }
    }
}

/// Certifies that `input.f` has an isolated singularity at the origin by
/// computing a Gröbner basis of its Jacobian ideal, and cross-checks the
/// resulting Milnor number against the closed form.
///
/// `input` must already be known to be weighted homogeneous.
pub fn check_isolated_singularity(
    input: &WeightedInput,
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<MilnorAnalysis, MilnorError> {
    let jac = jacobian_ideal(&input.f)?;
    let zero_partials: Vec<usize> = jac
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_zero())
        .map(|(i, _)| i)
        .collect();
    let gb = match buchberger(&jac, order, config) {
        Ok(gb) => gb,
        // all partials zero means f is constant: the Jacobian ideal is (0)
        Err(GroebnerError::NoGenerators) => return Err(MilnorError::NonIsolatedSingularity),
        Err(e) => return Err(e.into()),
    };
    if !gb.is_zero_dimensional() {
        return Err(MilnorError::NonIsolatedSingularity);
    }
    let closed_form = milnor_number_closed_form(input.degree, &input.weights)?;
    let mut degrees = DegreeMultiset::new();
    let mut count = 0u64;
    for m in gb.standard_monomials()? {
        let deg = weighted_degree(&m, &input.weights).expect("arity");
        *degrees.entry(deg).or_default() += 1;
        count += 1;
    }
    if count != closed_form {
        return Err(MilnorError::MilnorMismatch {
            groebner: count,
            closed_form,
        });
    }
    Ok(MilnorAnalysis {
        jacobian_generators: jac,
        zero_partials,
        gb,
        milnor_number: count,
        closed_form_milnor: closed_form,
        basis_weighted_degrees: degrees,
    })
}

/// Π(d/wᵢ − 1), evaluated exactly and required to be a non-negative integer.
pub fn milnor_number_closed_form(degree: u64, weights: &[u64]) -> Result<u64, MilnorError> {
    if degree == 0 || weights.contains(&0) {
        return Err(MilnorError::NonPositive);
    }
    let d = BigInt::from(degree);
    let product = weights.iter().fold(Rational::one(), |acc, &w| {
        acc * (Rational::new(d.clone(), BigInt::from(w)) - Rational::one())
    });
    let non_integral = || MilnorError::NonIntegralMilnorNumber {
        product: product.to_string(),
    };
    if !product.is_integer() || product < Rational::zero() {
        return Err(non_integral());
    }
    u64::try_from(product.to_integer()).map_err(|_| non_integral())
}

/// Coefficients of Π (1 − t^{d−wᵢ}) / Π (1 − t^{wᵢ}), as a degree multiset.
///
/// Individual factors need not divide; the full product must, and a nonzero
/// remainder is reported as an error.
pub fn poincare_degree_multiset(degree: u64, weights: &[u64]) -> Result<DegreeMultiset, MilnorError> {
    if degree == 0 || weights.contains(&0) {
        return Err(MilnorError::NonPositive);
    }
    let inexact = || MilnorError::InexactPoincareDivision {
        degree,
        weights: weights.to_vec(),
    };
    if weights.iter().any(|&w| w > degree) {
        return Err(inexact());
    }
    // numerator Π (1 − t^{d−wᵢ}) as a dense coefficient vector
    let mut num: Vec<i128> = vec![1];
    for &w in weights {
        let shift = (degree - w) as usize;
        if shift == 0 {
            // factor 1 − t^0 = 0 kills the series; w = d makes the quotient 0
            return Ok(DegreeMultiset::new());
        }
        let mut next = vec![0i128; num.len() + shift];
        for (k, &c) in num.iter().enumerate() {
            if c != 0 {
                next[k] += c;
                next[k + shift] -= c;
            }
        }
        num = next;
    }
    // divide by each (1 − t^{w}): q[k] = num[k] + q[k − w]
    for &w in weights {
        let w = w as usize;
        if num.len() <= w {
            return Err(inexact());
        }
        let qlen = num.len() - w;
        let mut q = vec![0i128; qlen];
        for k in 0..qlen {
            q[k] = num[k] + if k >= w { q[k - w] } else { 0 };
        }
        for k in qlen..num.len() {
            let carry = if k >= w && k - w < qlen { q[k - w] } else { 0 };
            if num[k] + carry != 0 {
                return Err(inexact());
            }
        }
        num = q;
    }
    let mut out = DegreeMultiset::new();
    for (k, &c) in num.iter().enumerate() {
        if c < 0 {
            return Err(inexact());
        }
        if c > 0 {
            out.insert(k as u64, c as u64);
        }
    }
    Ok(out)
}

pub fn multiset_size(m: &DegreeMultiset) -> u64 {
    m.values().sum()
}
