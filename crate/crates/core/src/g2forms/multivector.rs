use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::G2Error;
use crate::polyring::Rational;

pub const DIM: usize = 7;
const FULL: u8 = 0b111_1111;

/// A basis blade e^{i₁…i_k} with i₁ < … < i_k, stored as a bitmask where bit
/// `i − 1` stands for index `i`.
pub type Blade = u8;

fn blade_indices(b: Blade) -> impl Iterator<Item = usize> {
    (0..DIM).filter(move |i| b & (1 << i) != 0).map(|i| i + 1)
}

/// Sign of e^A ∧ e^B, or `None` when the blades overlap.
fn wedge_sign(a: Blade, b: Blade) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in A, j in B) with i > j
    let mut swaps = 0u32;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    Some(swaps % 2 == 1)
}

/// An element of the exterior algebra Λ(R⁷)* with exact coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiVector {
    terms: BTreeMap<Blade, Rational>,
}

impl MultiVector {
    pub fn zero() -> Self {
        MultiVector::default()
    }

    pub fn scalar(c: Rational) -> Self {
        let mut m = MultiVector::zero();
        m.add_term(0, c);
        m
    }

    /// e^{i₁} ∧ … ∧ e^{i_k} for indices in 1..=7, in any order. Repeated
    /// indices give zero.
    pub fn basis(indices: &[usize]) -> Self {
        let mut out = MultiVector::scalar(Rational::one());
        for &i in indices {
            assert!((1..=DIM).contains(&i), "index {i} out of range 1..=7");
            out = out.wedge(&MultiVector::blade(1 << (i - 1)));
        }
        out
    }

    fn blade(b: Blade) -> Self {
        let mut m = MultiVector::zero();
        m.terms.insert(b, Rational::one());
        m
    }

    /// The 1-form Σ vᵢ eⁱ.
    pub fn one_form(v: &[Rational; DIM]) -> Self {
        let mut m = MultiVector::zero();
        for (i, c) in v.iter().enumerate() {
            m.add_term(1 << i, c.clone());
        }
        m
    }

    pub fn volume() -> Self {
        MultiVector::blade(FULL)
    }

    fn add_term(&mut self, b: Blade, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of e^{indices}, indices strictly increasing.
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        let b = indices.iter().fold(0u8, |acc, &i| acc | 1 << (i - 1));
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms as (increasing index tuple, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        self.terms.iter().map(|(&b, c)| (blade_indices(b).collect(), c))
    }

    /// The common degree of all terms; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|b| b.count_ones() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn homogeneous_degree(&self) -> Result<Option<usize>, G2Error> {
        if self.is_zero() {
            return Ok(None);
        }
        self.degree().map(Some).ok_or(G2Error::NotHomogeneous)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiVector::zero();
        }
        MultiVector {
            terms: self.terms.iter().map(|(&b, x)| (b, x * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &MultiVector) -> MultiVector {
        let mut out = MultiVector::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if let Some(neg) = wedge_sign(a, b) {
                    let c = x * y;
                    out.add_term(a | b, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Hodge star for the standard metric and orientation e^{1…7}:
    /// x ∧ ∗a = ⟨x, a⟩ e^{1…7}.
    pub fn hodge_star(&self) -> Result<MultiVector, G2Error> {
        self.homogeneous_degree()?;
        let mut out = MultiVector::zero();
        for (&a, x) in &self.terms {
            let comp = FULL & !a;
            let neg = wedge_sign(a, comp).expect("disjoint");
            out.add_term(comp, if neg { -x.clone() } else { x.clone() });
        }
        Ok(out)
    }

    /// Interior product v ⌟ self.
    pub fn contract(&self, v: &[Rational; DIM]) -> MultiVector {
        let mut out = MultiVector::zero();
        for (&b, x) in &self.terms {
            for (pos, i) in blade_indices(b).enumerate() {
                let vi = &v[i - 1];
                if vi.is_zero() {
                    continue;
                }
                let c = x * vi;
                out.add_term(b & !(1 << (i - 1)), if pos % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// Euclidean inner product in the orthonormal basis {e^I}.
    pub fn inner(&self, other: &MultiVector) -> Rational {
        self.terms
            .iter()
            .filter_map(|(b, x)| other.terms.get(b).map(|y| x * y))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn norm_squared(&self) -> Rational {
        self.inner(self)
    }

    /// Coefficient of e^{1…7}.
    pub fn top_coefficient(&self) -> Rational {
        self.terms.get(&FULL).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn from_blade_coefficient(b: Blade, c: Rational) -> Self {
        let mut m = MultiVector::zero();
        m.add_term(b, c);
        m
    }
}

impl Add for &MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: &MultiVector) -> MultiVector {
        let mut out = self.clone();
        for (&b, c) in &rhs.terms {
            out.add_term(b, c.clone());
        }
        out
    }
}

impl Sub for &MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: &MultiVector) -> MultiVector {
        let mut out = self.clone();
        for (&b, c) in &rhs.terms {
            out.add_term(b, -c.clone());
        }
        out
    }
}

impl Neg for &MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        MultiVector {
            terms: self.terms.iter().map(|(&b, c)| (b, -c.clone())).collect(),
        }
    }
}

impl Mul<&MultiVector> for &Rational {
    type Output = MultiVector;
    fn mul(self, rhs: &MultiVector) -> MultiVector {
        rhs.scale(self)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiVector {
            type Output = MultiVector;
            fn $m(self, rhs: MultiVector) -> MultiVector {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl Neg for MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        -&self
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // low degree first, then lexicographic on index tuples
        let mut terms: Vec<(Vec<usize>, &Rational)> = self.terms().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        for (k, (idx, c)) in terms.iter().enumerate() {
            let neg = c < &&Rational::zero();
            let mag = if neg { -(*c).clone() } else { (*c).clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let name: String = idx.iter().map(|i| i.to_string()).collect();
            let blade = if idx.is_empty() { String::new() } else { format!("e{name}") };
            if mag.is_one() && !idx.is_empty() {
                write!(f, "{blade}")?;
            } else if idx.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{blade}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiVector({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use proptest::prelude::*;

    fn e(idx: &[usize]) -> MultiVector {
        MultiVector::basis(idx)
    }

    #[test]
    fn basic_products() {
        assert_eq!(e(&[5]).wedge(&e(&[6])).wedge(&e(&[7])), e(&[5, 6, 7]));
        assert!(e(&[1]).wedge(&e(&[1])).is_zero());
        assert_eq!(e(&[2, 1]), -e(&[1, 2]));
        assert_eq!(e(&[3, 1, 2]), e(&[1, 2, 3]));
        let w1 = e(&[1, 2]) - e(&[3, 4]);
        assert_eq!(w1.wedge(&w1), e(&[1, 2, 3, 4]).scale(&rat(-2, 1)));
    }

    #[test]
    fn star_examples() {
        assert_eq!(e(&[5, 6, 7]).hodge_star().unwrap(), e(&[1, 2, 3, 4]));
        assert_eq!(MultiVector::volume().hodge_star().unwrap(), MultiVector::scalar(rat(1, 1)));
        assert_eq!(MultiVector::zero().hodge_star().unwrap(), MultiVector::zero());
        let mixed = &e(&[1]) + &e(&[1, 2]);
        assert_eq!(mixed.hodge_star(), Err(G2Error::NotHomogeneous));
    }

    #[test]
    fn star_star_is_identity_and_defines_inner_product() {
        for b in 0..=FULL {
            let a = MultiVector::blade(b);
            let s = a.hodge_star().unwrap();
            assert_eq!(s.hodge_star().unwrap(), a, "blade {b:07b}");
            assert_eq!(a.wedge(&s), MultiVector::volume());
        }
    }

    #[test]
    fn contraction_is_a_graded_derivation() {
        let v = [rat(1, 1), rat(0, 1), rat(2, 1), rat(0, 1), rat(0, 1), rat(-1, 3), rat(0, 1)];
        let a = &e(&[1, 3]) + &e(&[2, 6]);
        let b = &e(&[1, 5, 7]) - &e(&[3, 4, 6]);
        let lhs = a.wedge(&b).contract(&v);
        let rhs = &a.contract(&v).wedge(&b) + &a.wedge(&b.contract(&v));
        assert_eq!(lhs, rhs);
        assert_eq!(e(&[1, 2]).contract(&[rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]), -e(&[1]));
    }

    #[test]
    fn display() {
        let m = &(&e(&[1, 2]) - &e(&[3, 4])).scale(&rat(1, 2)) + &e(&[5, 6, 7]);
        assert_eq!(m.to_string(), "1/2*e12 - 1/2*e34 + e567");
        assert_eq!(MultiVector::zero().to_string(), "0");
    }

    fn homogeneous(deg: usize) -> impl Strategy<Value = MultiVector> {
        let blades: Vec<Blade> = (0..=FULL).filter(|b| b.count_ones() as usize == deg).collect();
        let n = blades.len();
        prop::collection::vec(-3i64..=3, n).prop_map(move |cs| {
            let mut m = MultiVector::zero();
            for (b, c) in blades.iter().zip(cs) {
                m.add_term(*b, rat(c, 1));
            }
            m
        })
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(
            (a, b, pq) in (0usize..=7, 0usize..=7)
                .prop_flat_map(|(p, q)| (homogeneous(p), homogeneous(q), Just(p * q)))
        ) {
            let ab = a.wedge(&b);
            let ba = b.wedge(&a);
            if pq % 2 == 0 { prop_assert_eq!(ab, ba); } else { prop_assert_eq!(ab, -ba); }
        }

        #[test]
        fn wedge_is_associative(a in homogeneous(2), b in homogeneous(1), c in homogeneous(3)) {
            prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        }

        #[test]
        fn star_gives_inner_product(a in homogeneous(3), b in homogeneous(3)) {
            prop_assert_eq!(a.wedge(&b.hodge_star().unwrap()), MultiVector::volume().scale(&a.inner(&b)));
        }
    }
}
