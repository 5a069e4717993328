use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grevlex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::Grevlex => "grevlex",
        })
    }
}

impl FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" | "lp" => Ok(OrderKind::Lex),
            "grevlex" | "dp" => Ok(OrderKind::Grevlex),
            other => Err(format!("unknown monomial order `{other}` (expected lex or grevlex)")),
        }
    }
}

/// A global monomial order on a fixed number of variables.
///
/// `precedence[0]` is the most significant variable. The default precedence
/// is `z0 > z1 > … > zn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, num_vars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..num_vars).collect(),
        }
    }

    pub fn lex(num_vars: usize) -> Self {
        Self::new(OrderKind::Lex, num_vars)
    }

    pub fn grevlex(num_vars: usize) -> Self {
        Self::new(OrderKind::Grevlex, num_vars)
    }

    /// Returns `None` unless `precedence` is a permutation of `0..len`.
    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            if p >= seen.len() || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(MonomialOrder { kind, precedence })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn num_vars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.precedence {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &i in self.precedence.iter().rev() {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// A key whose plain lexicographic comparison agrees with `self.cmp`.
    pub fn sort_key(&self, m: &Monomial) -> SmallVec<[i64; 8]> {
        let e = m.exponents();
        match self.kind {
            OrderKind::Lex => self.precedence.iter().map(|&i| i64::from(e[i])).collect(),
            OrderKind::Grevlex => {
                let mut key = SmallVec::with_capacity(e.len() + 1);
                key.push(m.total_degree() as i64);
                key.extend(self.precedence.iter().rev().map(|&i| -i64::from(e[i])));
                key
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_slice(e)
    }

    #[test]
    fn grevlex_textbook_sequence() {
        // x > y > z, degree 3 then lower
        let ord = MonomialOrder::grevlex(3);
        let seq = [
            m(&[3, 0, 0]),
            m(&[2, 1, 0]),
            m(&[1, 2, 0]),
            m(&[0, 3, 0]),
            m(&[2, 0, 1]),
            m(&[1, 1, 1]),
            m(&[0, 2, 1]),
            m(&[1, 0, 2]),
            m(&[0, 1, 2]),
            m(&[0, 0, 3]),
            m(&[1, 0, 0]),
            m(&[0, 0, 0]),
        ];
        for w in seq.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater, "{:?} vs {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn lex_and_precedence() {
        let ord = MonomialOrder::lex(2);
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let rev = MonomialOrder::with_precedence(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(rev.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Less);
        assert!(MonomialOrder::with_precedence(OrderKind::Lex, vec![0, 0]).is_none());
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 4).prop_map(Monomial::new)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        (prop_oneof![Just(OrderKind::Lex), Just(OrderKind::Grevlex)], Just(vec![0usize, 1, 2, 3]).prop_shuffle())
            .prop_map(|(k, p)| MonomialOrder::with_precedence(k, p).unwrap())
    }

    proptest! {
        #[test]
        fn total_multiplicative_global(ord in order(), a in mono3(), b in mono3(), c in mono3()) {
            let ab = ord.cmp(&a, &b);
            // totality: Equal only for identical monomials, antisymmetric
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&b, &a), ab.reverse());
            // transitivity
            if ab == Ordering::Less && ord.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(ord.cmp(&a, &c), Ordering::Less);
            }
            // multiplicative
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            // global: 1 is the minimum
            prop_assert_ne!(ord.cmp(&Monomial::one(4), &a), Ordering::Greater);
            // sort key agrees with cmp
            prop_assert_eq!(ord.sort_key(&a).cmp(&ord.sort_key(&b)), ab);
        }
    }
}
