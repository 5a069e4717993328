use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, OrderKind, PolyError, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The term map never stores a zero coefficient; the zero polynomial has no
/// terms. Storage order is independent of any monomial order; callers ask for
/// `sorted_terms(order)` when they need one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::term(c, Monomial::one(num_vars))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero(m.num_vars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `z_i`.
    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::term(Rational::one(), Monomial::var_power(num_vars, i, 1))
    }

    /// Builds a polynomial by summing `(coefficient, monomial)` pairs; repeated
    /// monomials are combined.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Monomial)>,
    {
        let mut p = Self::zero(num_vars);
        for (c, m) in terms {
            assert_eq!(m.num_vars(), num_vars, "monomial arity mismatch");
            p.add_term(c, m);
        }
        p
    }

    pub(crate) fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::constant(self.num_vars, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact formal partial derivative ∂/∂z_i.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.num_vars {
            return Err(PolyError::VariableOutOfRange {
                index: i,
                num_vars: self.num_vars,
            });
        }
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(c * Rational::from_integer(BigInt::from(e)), Monomial::new(exps));
        }
        Ok(out)
    }

    /// Substitutes `z_i ↦ values[i]` and evaluates exactly.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.num_vars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// True iff every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = Polynomial::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Renders terms in descending grevlex order with default precedence. Integer
/// coefficients render in the parser's grammar; non-integral ones render as
/// `(p/q)`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::new(OrderKind::Grevlex, self.num_vars);
        for (k, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs.is_one();
            if !unit || m.is_one() {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "({}/{})", abs.numer(), abs.denom())?;
                }
                if !m.is_one() {
                    write!(f, "*")?;
                }
            }
            if !m.is_one() {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, rat};

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn partial_derivative_examples() {
        assert_eq!(p("z0^5", 5).partial_derivative(0).unwrap(), p("5*z0^4", 5));
        assert_eq!(p("z0^5*z4", 5).partial_derivative(4).unwrap(), p("z0^5", 5));
        assert!(p("7", 5).partial_derivative(0).unwrap().is_zero());
        assert!(matches!(
            p("z0", 2).partial_derivative(2),
            Err(PolyError::VariableOutOfRange { index: 2, num_vars: 2 })
        ));
    }

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let a = p("z0^2*z1 - z1^2 + 3", 3);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z, Polynomial::zero(3));
        let sq = &p("z0 + z1", 2) * &p("z0 - z1", 2);
        assert_eq!(sq, p("z0^2 - z1^2", 2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p("z0^2*z1 - z1^2 + 3", 3).to_string(), "z0^2*z1 - z1^2 + 3");
        assert_eq!(p("-z1 + 2z0", 2).to_string(), "2*z0 - z1");
        let half = Polynomial::term(rat(1, 2), Monomial::var_power(1, 0, 1));
        assert_eq!(half.to_string(), "(1/2)*z0");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn evaluate_matches_hand_value() {
        let f = p("z0^2*z1 - z1^2 + 3", 2);
        assert_eq!(f.evaluate(&[rat(2, 1), rat(1, 3)]), rat(4, 3) - rat(1, 9) + rat(3, 1));
    }
}
