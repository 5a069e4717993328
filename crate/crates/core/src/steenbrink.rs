//! Steenbrink's signature count for weighted-homogeneous isolated
//! singularities.
//!
//! Every basis monomial z^α of the Milnor algebra carries the exact rational
//! l(α) = Σ (αᵢ + 1)·wᵢ / d. Integral values count towards μ₀; the others
//! count towards μ₊ when ⌊l⌋ is even and μ₋ when ⌊l⌋ is odd.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::milnor::DegreeMultiset;
use crate::polyring::{Monomial, Rational};

/// Above this many basis elements the l-values are not retained by default.
pub const DEFAULT_RETENTION_LIMIT: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Plus,
    Minus,
    Zero,
}

pub fn l_value(alpha: &Monomial, weights: &[u64], degree: u64) -> Rational {
    assert_eq!(alpha.num_vars(), weights.len(), "weights/monomial arity mismatch");
    assert!(degree > 0, "degree must be positive");
    let numer: BigInt = alpha
        .exponents()
        .iter()
        .zip(weights)
        .map(|(&a, &w)| BigInt::from(u64::from(a) + 1) * BigInt::from(w))
        .sum();
    Rational::new(numer, BigInt::from(degree))
}

/// Classifies a positive rational. The integrality test and the floor are
/// exact.
pub fn classify(l: &Rational) -> SignClass {
    if l.is_integer() {
        return SignClass::Zero;
    }
    let fl = l.floor().to_integer();
    if (fl % 2u32) == BigInt::from(0) {
        SignClass::Plus
    } else {
        SignClass::Minus
    }
}

/// Integer-only classification of l = numer/degree; agrees with [`classify`].
#[inline]
fn classify_ratio(numer: u64, degree: u64) -> SignClass {
    if numer % degree == 0 {
        SignClass::Zero
    } else if (numer / degree) % 2 == 0 {
        SignClass::Plus
    } else {
        SignClass::Minus
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SteenbrinkCounts {
    pub mu_minus: u64,
    pub mu_zero: u64,
    pub mu_plus: u64,
    /// Sorted l-values, present only when retention was requested and the
    /// basis was small enough.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_l_values")]
    pub l_values: Option<Vec<Rational>>,
}

impl SteenbrinkCounts {
    pub fn total(&self) -> u64 {
        self.mu_minus + self.mu_zero + self.mu_plus
    }

    fn bump(&mut self, class: SignClass, by: u64) {
        match class {
            SignClass::Plus => self.mu_plus += by,
            SignClass::Minus => self.mu_minus += by,
            SignClass::Zero => self.mu_zero += by,
        }
    }

    /// Folds another partial count into this one. Retained l-values are
    /// dropped unless both sides have them.
    pub fn merge(mut self, other: SteenbrinkCounts) -> SteenbrinkCounts {
        self.mu_minus += other.mu_minus;
        self.mu_zero += other.mu_zero;
        self.mu_plus += other.mu_plus;
        self.l_values = match (self.l_values, other.l_values) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            _ => None,
        };
        self
    }
}

fn serialize_l_values<S: serde::Serializer>(ls: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let ls = ls.as_deref().unwrap_or_default();
    let mut seq = s.serialize_seq(Some(ls.len()))?;
    for l in ls {
        seq.serialize_element(&l.to_string())?;
    }
    seq.end()
}

/// σ = μ₊ − μ₋.
pub fn signature(counts: &SteenbrinkCounts) -> i64 {
    counts.mu_plus as i64 - counts.mu_minus as i64
}

/// Result of a single pass over a basis stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureScan {
    pub counts: SteenbrinkCounts,
    /// Σ (αᵢ + 1)·wᵢ → multiplicity; l = key / d.
    pub l_numerators: BTreeMap<u64, u64>,
    /// Smallest and largest l seen, as numerators over d.
    pub l_range: Option<(u64, u64)>,
}

impl SignatureScan {
    /// True iff the l-multiset is invariant under l ↦ (n+1) − l.
    pub fn is_palindromic(&self, num_vars: usize, degree: u64) -> bool {
        let top = num_vars as u64 * degree;
        self.l_numerators.iter().all(|(&k, &c)| {
            k <= top && self.l_numerators.get(&(top - k)).copied() == Some(c)
        })
    }

    /// True iff 0 < l < n+1 for every basis element.
    pub fn in_open_range(&self, num_vars: usize, degree: u64) -> bool {
        match self.l_range {
            None => true,
            Some((lo, hi)) => lo > 0 && hi < num_vars as u64 * degree,
        }
    }

    /// Weighted degrees of the basis: Σ αᵢwᵢ = numerator − Σwᵢ.
    pub fn weighted_degrees(&self, weights: &[u64]) -> DegreeMultiset {
        let shift: u64 = weights.iter().sum();
        self.l_numerators.iter().map(|(&k, &c)| (k - shift, c)).collect()
    }
}

/// Counts (μ₋, μ₀, μ₊) over a basis stream in one pass, without retaining
/// l-values.
pub fn signature_counts<I>(basis: I, weights: &[u64], degree: u64) -> SteenbrinkCounts
where
    I: IntoIterator<Item = Monomial>,
{
    scan_basis(basis, weights, degree, false).counts
}

/// One pass over the basis: counts, l-numerator histogram, and optionally
/// the sorted l-values themselves.
pub fn scan_basis<I>(basis: I, weights: &[u64], degree: u64, retain_l_values: bool) -> SignatureScan
where
    I: IntoIterator<Item = Monomial>,
{
    assert!(degree > 0, "degree must be positive");
    let shift: u64 = weights.iter().sum();
    let mut counts = SteenbrinkCounts::default();
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for m in basis {
        assert_eq!(m.num_vars(), weights.len(), "weights/monomial arity mismatch");
        let numer = shift
            + m.exponents()
                .iter()
                .zip(weights)
                .map(|(&a, &w)| u64::from(a) * w)
                .sum::<u64>();
        counts.bump(classify_ratio(numer, degree), 1);
        *hist.entry(numer).or_default() += 1;
    }
    let l_range = match (hist.keys().next(), hist.keys().next_back()) {
        (Some(&lo), Some(&hi)) => Some((lo, hi)),
        _ => None,
    };
    if retain_l_values {
        let mut ls = Vec::with_capacity(counts.total() as usize);
        for (&k, &c) in &hist {
            let l = Rational::new(BigInt::from(k), BigInt::from(degree));
            ls.extend(std::iter::repeat_n(l, c as usize));
        }
        counts.l_values = Some(ls);
    }
    SignatureScan {
        counts,
        l_numerators: hist,
        l_range,
    }
}

/// Counts directly from a weighted-degree multiset. Because l(α) depends on α
/// only through its weighted degree, this gives the counts of any monomial
/// basis with those degrees.
pub fn counts_from_degrees(degrees: &DegreeMultiset, weights: &[u64], degree: u64) -> SteenbrinkCounts {
    let shift: u64 = weights.iter().sum();
    let mut counts = SteenbrinkCounts::default();
    for (&deg, &mult) in degrees {
        counts.bump(classify_ratio(deg + shift, degree), mult);
    }
    counts
}
