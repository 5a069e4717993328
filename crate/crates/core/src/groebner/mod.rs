//! Buchberger's algorithm, multivariate division, reduced Gröbner bases and
//! streaming enumeration of standard monomials.

mod engine;
mod staircase;

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational};
use engine::{reduce, s_polynomial, Buchberger, IPoly, Reducers, StepCounter};

pub use staircase::{QuotientDimension, StandardMonomials, Staircase};

/// Default cap on reduction steps for a single Buchberger run.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Gröbner computation exceeded the reduction-step budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("no nonzero generators")]
    NoGenerators,
    #[error("generators live in different polynomial rings")]
    ArityMismatch,
    #[error("ideal is not zero-dimensional: the quotient is infinite-dimensional")]
    NotZeroDimensional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub step_budget: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

/// Counters surfaced in reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub monomial_fast_path: bool,
    pub pairs_created: u64,
    pub pairs_pruned: u64,
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub reduction_steps: u64,
    pub basis_size: usize,
    pub max_coeff_bits: u64,
}

/// A reduced Gröbner basis with monic generators, sorted ascending by leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    staircase: Staircase,
    stats: GbStats,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn num_vars(&self) -> usize {
        self.staircase.num_vars()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.staircase.is_zero_dimensional()
    }

    pub fn standard_monomials(&self) -> Result<StandardMonomials<'_>, GroebnerError> {
        self.staircase.standard_monomials()
    }

    pub fn quotient_dimension(&self) -> QuotientDimension {
        self.staircase.quotient_dimension()
    }

    /// Normal form modulo this basis; unique since the basis is reduced.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.generators, &self.order)
    }

    /// Buchberger's criterion as a post-hoc certificate: every S-polynomial of
    /// a pair of generators reduces to zero. Returns the first failing pair.
    pub fn certify(&self) -> Result<(), (usize, usize)> {
        let ipolys: Vec<IPoly> = self
            .generators
            .iter()
            .map(|g| IPoly::from_polynomial(g, &self.order))
            .collect();
        let reducers = Reducers::new(ipolys.iter().collect());
        let mut steps = 0;
        for i in 0..ipolys.len() {
            for j in i + 1..ipolys.len() {
                let s = s_polynomial(&ipolys[i], &ipolys[j], &self.order);
                let mut counter = StepCounter {
                    steps: &mut steps,
                    budget: u64::MAX,
                };
                let r = reduce(s, &reducers, &self.order, &mut counter).expect("unbounded budget");
                if !r.is_zero() {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// True iff no monomial of any generator is divisible by another
    /// generator's leading monomial and every generator is monic.
    pub fn is_reduced(&self) -> bool {
        let lms: Vec<&Monomial> = self
            .generators
            .iter()
            .map(|g| g.leading_monomial(&self.order).expect("nonzero generator"))
            .collect();
        self.generators.iter().enumerate().all(|(k, g)| {
            g.leading_term(&self.order).map(|(_, c)| c == &Rational::from_integer(1.into()))
                == Some(true)
                && g.monomials()
                    .all(|m| lms.iter().enumerate().all(|(o, lm)| o == k || !lm.divides(m)))
        })
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `generators`.
///
/// When every generator is a single term the ideal is monomial and the
/// staircase is read off directly.
pub fn buchberger(
    generators: &[Polynomial],
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    let nonzero: Vec<&Polynomial> = generators.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Err(GroebnerError::NoGenerators);
    };
    let num_vars = first.num_vars();
    if nonzero.iter().any(|g| g.num_vars() != num_vars) || order.num_vars() != num_vars {
        return Err(GroebnerError::ArityMismatch);
    }

    if nonzero.iter().all(|g| g.is_monomial()) {
        let staircase =
            Staircase::from_generators(num_vars, nonzero.iter().map(|g| g.monomials().next().unwrap().clone()));
        let mut gens: Vec<Monomial> = staircase.generators().to_vec();
        gens.sort_by(|a, b| order.cmp(a, b));
        let generators = gens
            .into_iter()
            .map(|m| Polynomial::term(Rational::from_integer(1.into()), m))
            .collect::<Vec<_>>();
        let stats = GbStats {
            monomial_fast_path: true,
            basis_size: generators.len(),
            max_coeff_bits: 1,
            ..GbStats::default()
        };
        return Ok(GroebnerBasis {
            generators,
            order: order.clone(),
            staircase,
            stats,
        });
    }

    let mut input: Vec<IPoly> = nonzero.iter().map(|g| IPoly::from_polynomial(g, order)).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut engine = Buchberger::new(order.clone(), config.step_budget);
    for f in input {
        engine.add_generator(f)?;
    }
    engine.run()?;
    let (reduced, stats) = engine.finish()?;
    let staircase = Staircase::from_generators(num_vars, reduced.iter().map(|p| p.lm().clone()));
    debug_assert_eq!(staircase.generators().len(), reduced.len());
    Ok(GroebnerBasis {
        generators: reduced.iter().map(|p| p.to_monic_polynomial(num_vars)).collect(),
        order: order.clone(),
        staircase,
        stats,
    })
}

/// Multivariate division with remainder over the rationals.
///
/// Returns `r` with `f − r` in the ideal of `basis` and no monomial of `r`
/// divisible by a leading monomial of `basis`. Divisors are tried in the
/// given sequence. Zero entries of `basis` are ignored.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let divisors: Vec<(Monomial, Rational, &Polynomial)> = basis
        .iter()
        .filter_map(|g| {
            g.leading_term(order)
                .map(|(m, c)| (m.clone(), c.clone(), g))
        })
        .collect();
    let mut remainder = Polynomial::zero(f.num_vars());
    let mut p = f.clone();
    while let Some((lm, lc)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match divisors.iter().find(|(dm, _, _)| dm.divides(&lm)) {
            Some((dm, dc, g)) => {
                let q = dm.quotient_of(&lm).unwrap();
                let c = &lc / dc;
                p = &p - &g.mul_monomial(&c, &q);
            }
            None => {
                remainder.add_term(lc.clone(), lm.clone());
                p.add_term(-lc, lm);
            }
        }
    }
    remainder
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, OrderKind};

    fn polys(src: &[&str], n: usize) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()
    }

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let lex = MonomialOrder::lex(2);
        // x = z0, y = z1
        assert!(normal_form(&p("z0^2", 2), &polys(&["z0^2"], 2), &lex).is_zero());
        assert_eq!(normal_form(&p("z0^2*z1 + 1", 2), &polys(&["z0^2 - 1"], 2), &lex), p("z1 + 1", 2));
        assert_eq!(normal_form(&p("1", 2), &polys(&["z0", "z1"], 2), &lex), p("1", 2));
        let grevlex = MonomialOrder::grevlex(2);
        assert!(normal_form(&p("z0^2", 2), &polys(&["z0^2"], 2), &grevlex).is_zero());
    }

    #[test]
    fn monomial_generators_are_their_own_basis() {
        let gens = polys(&["z0^4", "z1^4", "z2^4", "z3^4", "z4^4"], 5);
        let gb = buchberger(&gens, &MonomialOrder::grevlex(5), &GroebnerConfig::default()).unwrap();
        assert!(gb.stats().monomial_fast_path);
        assert_eq!(gb.generators().len(), 5);
        for g in &gens {
            assert!(gb.generators().contains(g));
        }
        assert!(gb.certify().is_ok());
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(1024));
    }

    #[test]
    fn textbook_lex_basis() {
        // {x² − y, x³ − x}, lex x > y: hand run gives {x² − y, xy − x, y² − y}
        let gens = polys(&["z0^2 - z1", "z0^3 - z0"], 2);
        let gb = buchberger(&gens, &MonomialOrder::lex(2), &GroebnerConfig::default()).unwrap();
        let mut got = gb.generators().to_vec();
        got.sort_by_key(|g| g.to_string());
        let mut want = polys(&["z0^2 - z1", "z0*z1 - z0", "z1^2 - z1"], 2);
        want.sort_by_key(|g| g.to_string());
        assert_eq!(got, want);
        assert!(gb.is_reduced());
        assert!(gb.certify().is_ok());
        // membership both ways
        for g in &gens {
            assert!(gb.reduce(g).is_zero());
        }
        let mut extended = gens.clone();
        extended.extend(gb.generators().iter().cloned());
        for g in gb.generators() {
            assert!(normal_form(g, &extended, &MonomialOrder::lex(2)).is_zero());
        }
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(3));
    }

    #[test]
    fn fermat_jacobian_staircase() {
        let gens = polys(&["5*z0^4", "5*z1^4", "5*z2^4", "5*z3^4", "5*z4^4"], 5);
        for kind in [OrderKind::Lex, OrderKind::Grevlex] {
            let gb = buchberger(&gens, &MonomialOrder::new(kind, 5), &GroebnerConfig::default()).unwrap();
            let want: Vec<Monomial> = (0..5).map(|i| Monomial::var_power(5, i, 4)).collect();
            let mut got = gb.staircase().generators().to_vec();
            got.sort();
            let mut want_sorted = want.clone();
            want_sorted.sort();
            assert_eq!(got, want_sorted);
        }
    }

    #[test]
    fn cyclic_like_system_certifies() {
        let gens = polys(&["z0 + z1 + z2", "z0*z1 + z1*z2 + z2*z0", "z0*z1*z2 - 1"], 3);
        for kind in [OrderKind::Lex, OrderKind::Grevlex] {
            let order = MonomialOrder::new(kind, 3);
            let gb = buchberger(&gens, &order, &GroebnerConfig::default()).unwrap();
            assert!(gb.certify().is_ok());
            assert!(gb.is_reduced());
            for g in &gens {
                assert!(gb.reduce(g).is_zero());
            }
            // x³ = 1 style system: 6 solutions with multiplicity
            assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(6));
        }
    }

    #[test]
    fn budget_error_is_explicit() {
        let gens = polys(&["z0 + z1 + z2", "z0*z1 + z1*z2 + z2*z0", "z0*z1*z2 - 1"], 3);
        let err = buchberger(&gens, &MonomialOrder::lex(3), &GroebnerConfig { step_budget: 2 }).unwrap_err();
        assert_eq!(err, GroebnerError::BudgetExceeded { budget: 2 });
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            buchberger(&[Polynomial::zero(2)], &MonomialOrder::lex(2), &GroebnerConfig::default()).unwrap_err(),
            GroebnerError::NoGenerators
        );
        let gb = buchberger(&polys(&["z0*z1"], 2), &MonomialOrder::grevlex(2), &GroebnerConfig::default()).unwrap();
        assert!(!gb.is_zero_dimensional());
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Infinite);
        let gb = buchberger(&polys(&["z0^2", "z1^3", "z0*z1"], 2), &MonomialOrder::grevlex(2), &GroebnerConfig::default())
            .unwrap();
        assert!(gb.is_zero_dimensional());
        // unit ideal
        let gb = buchberger(&polys(&["z0 + 1", "z0"], 1), &MonomialOrder::lex(1), &GroebnerConfig::default()).unwrap();
        assert_eq!(gb.generators(), &[p("1", 1)]);
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(0));
    }

    #[test]
    fn deterministic_output() {
        let gens = polys(&["z0^3 - z1*z2", "z1^2 - z0*z2 + 3", "z2^2 - 2*z0"], 3);
        let order = MonomialOrder::grevlex(3);
        let a = buchberger(&gens, &order, &GroebnerConfig::default()).unwrap();
        let b = buchberger(&gens, &order, &GroebnerConfig::default()).unwrap();
        assert_eq!(a.generators(), b.generators());
        assert_eq!(a.stats(), b.stats());
        assert!(a.certify().is_ok());
    }
}
