//! Parser for the polynomial input grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := coeff? ('*'? factor)*
//! factor := var ('^' nat)?
//! var    := 'z' nat
//! coeff  := int
//! ```
//!
//! Whitespace is ignored and the leading term may carry a unary sign.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial, Rational};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, pos: usize, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            position: pos,
            message: message.into(),
        }
    }

    /// Digits only; whitespace inside a number is not allowed.
    fn digits(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            // ASCII digits are valid UTF-8
            Some((start, std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
        }
    }

    fn small_nat(&mut self, what: &str) -> Result<(usize, u32), PolyError> {
        let here = {
            self.skip_ws();
            self.pos
        };
        let (start, s) = self
            .digits()
            .ok_or_else(|| self.err(here, format!("expected {what}")))?;
        let v = s
            .parse::<u32>()
            .map_err(|_| self.err(start, format!("{what} `{s}` is too large")))?;
        Ok((start, v))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        let at = self.pos;
        debug_assert_eq!(self.src.get(at), Some(&b'z'));
        self.pos += 1;
        let (idx_pos, idx) = self.small_nat("variable index after `z`")?;
        let idx = idx as usize;
        if idx >= self.num_vars {
            return Err(PolyError::UnknownVariable {
                position: idx_pos,
                index: idx,
                num_vars: self.num_vars,
            });
        }
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            e = self.small_nat("exponent after `^`")?.1;
        }
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or_else(|| self.err(at, "exponent overflow"))?;
        Ok(())
    }

    fn term(&mut self) -> Result<(BigInt, Monomial), PolyError> {
        let start = self.pos;
        let mut coeff = BigInt::one();
        let mut saw_anything = false;
        if let Some((_, s)) = self.digits() {
            coeff = s.parse::<BigInt>().expect("digit string");
            saw_anything = true;
        }
        let mut exps = vec![0u32; self.num_vars];
        loop {
            match self.peek() {
                Some(b'*') => {
                    let star = self.pos;
                    self.pos += 1;
                    if self.peek() != Some(b'z') {
                        return Err(self.err(star, "expected variable after `*`"));
                    }
                    self.factor(&mut exps)?;
                    saw_anything = true;
                }
                Some(b'z') => {
                    self.factor(&mut exps)?;
                    saw_anything = true;
                }
                _ => break,
            }
        }
        if !saw_anything {
            self.skip_ws();
            let at = self.pos.max(start);
            return Err(match self.src.get(at) {
                Some(&c) => self.err(at, format!("unexpected character `{}`", c as char)),
                None => self.err(at, "unexpected end of input"),
            });
        }
        Ok((coeff, Monomial::new(exps)))
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut poly = Polynomial::zero(self.num_vars);
        let mut sign = BigInt::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -BigInt::one();
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, m) = self.term()?;
            poly.add_term(Rational::from_integer(sign * c), m);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigInt::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigInt::one();
                }
                None => break,
                Some(c) => {
                    return Err(self.err(self.pos, format!("unexpected character `{}`", c as char)))
                }
            }
        }
        Ok(poly)
    }
}

/// Parses `text` into a canonical polynomial in `z0 … z{num_vars-1}`.
pub fn parse_polynomial(text: &str, num_vars: usize) -> Result<Polynomial, PolyError> {
    if num_vars == 0 {
        return Err(PolyError::NoVariables);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        num_vars,
    };
    let poly = p.expr()?;
    debug_assert!(poly.terms().all(|(_, c)| !c.is_zero()));
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use proptest::prelude::*;

    #[test]
    fn fermat_quintic() {
        let f = parse_polynomial("z0^5+z1^5+z2^5+z3^5+z4^5", 5).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.terms().all(|(_, c)| c == &rat(1, 1)));
        assert_eq!(f.coefficient(&Monomial::var_power(5, 3, 5)), rat(1, 1));
    }

    #[test]
    fn zero_and_mixed_signs() {
        assert!(parse_polynomial("0", 5).unwrap().is_zero());
        let f = parse_polynomial("z0^2*z1 - z1^2 + 3", 3).unwrap();
        assert_eq!(f.len(), 3);
        let mut cs: Vec<_> = f.terms().map(|(_, c)| c.clone()).collect();
        cs.sort();
        assert_eq!(cs, vec![rat(-1, 1), rat(1, 1), rat(3, 1)]);
    }

    #[test]
    fn implicit_products_and_whitespace() {
        let a = parse_polynomial(" - 3 z0 z1^2 + z1 *z0^ 2", 2).unwrap();
        let b = parse_polynomial("-3*z0*z1^2+z0^2*z1", 2).unwrap();
        assert_eq!(a, b);
        // repeated variables multiply
        assert_eq!(parse_polynomial("z0*z0^2", 1).unwrap(), parse_polynomial("z0^3", 1).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("z0 + z7", 5) {
            Err(PolyError::UnknownVariable { position: 6, index: 7, num_vars: 5 }) => {}
            other => panic!("{other:?}"),
        }
        match parse_polynomial("z0 + + z1", 2) {
            Err(PolyError::Syntax { position: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("z0^", 1), Err(PolyError::Syntax { position: 3, .. })));
        assert!(matches!(parse_polynomial("", 1), Err(PolyError::Syntax { position: 0, .. })));
        assert!(matches!(parse_polynomial("2 3", 1), Err(PolyError::Syntax { position: 2, .. })));
        assert!(matches!(parse_polynomial("x0", 1), Err(PolyError::Syntax { position: 0, .. })));
        assert!(matches!(parse_polynomial("z0*", 1), Err(PolyError::Syntax { position: 2, .. })));
    }

    fn sparse_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (-50i64..50, proptest::collection::vec(0u32..7, 3)),
            0..8,
        )
        .prop_map(|ts| {
            Polynomial::from_terms(
                3,
                ts.into_iter().map(|(c, e)| (rat(c, 1), Monomial::new(e))),
            )
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in sparse_poly()) {
            let text = p.to_string();
            prop_assert_eq!(parse_polynomial(&text, 3).unwrap(), p);
        }
    }
}
