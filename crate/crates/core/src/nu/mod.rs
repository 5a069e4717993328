//! The ν invariant of a weighted Calabi-Yau link:
//!
//! ν = Π(d/wᵢ − 1) − 3(μ₊ − μ₋) + 1  (mod 48)
//!
//! evaluated from the Milnor number and the Steenbrink counts, cross-checked
//! against χ − 3σ with χ = 1 + μ, and required to be odd.

mod corpus;
mod report;

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{GroebnerConfig, GroebnerError};
use crate::milnor::{check_isolated_singularity, poincare_degree_multiset, MilnorError};
use crate::polyring::{
    check_weighted_homogeneous, parse_polynomial, weighted_degree, HomogeneityError, MonomialOrder,
    OrderKind, PolyError, Rational, WeightedInput,
};
use crate::steenbrink::{scan_basis, signature, SteenbrinkCounts, DEFAULT_RETENTION_LIMIT};

pub use corpus::{
    parse_corpus, run_corpus, CorpusEntry, CorpusRow, CorpusSummary, RowStatus, TABLE1_JSONL,
};
pub use report::{Checks, Diagnostics, NuReport, ReportInput, StageTimings, REPORT_SCHEMA};

/// Residue representatives are taken in `0..MODULUS`.
pub const MODULUS: i64 = 48;

/// Number of variables for which ν is defined (links of dimension 7).
pub const LINK_VARIABLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NuError {
    #[error("not a Calabi-Yau link: degree {degree} ≠ Σw = {weight_sum}")]
    NotCalabiYau { degree: u64, weight_sum: u64 },
    #[error("ν is only defined for {LINK_VARIABLES} variables, got {0}")]
    WrongVariableCount(usize),
    #[error("Π(d/wᵢ − 1) is not an integer")]
    NonIntegralProduct,
    #[error("integrity failure: ν = {0} is even")]
    ParityViolation(i64),
}

/// d = Σ wᵢ.
pub fn cy_check(degree: u64, weights: &[u64]) -> bool {
    weights.iter().sum::<u64>() == degree
}

/// ν from the closed-form Milnor number and the Steenbrink counts, reduced to
/// `0..48` and checked for oddness.
pub fn nu_invariant(degree: u64, weights: &[u64], counts: &SteenbrinkCounts) -> Result<i64, NuError> {
    if weights.len() != LINK_VARIABLES {
        return Err(NuError::WrongVariableCount(weights.len()));
    }
    if !cy_check(degree, weights) {
        return Err(NuError::NotCalabiYau {
            degree,
            weight_sum: weights.iter().sum(),
        });
    }
    let d = BigInt::from(degree);
    let product = weights.iter().fold(Rational::one(), |acc, &w| {
        acc * (Rational::new(d.clone(), BigInt::from(w)) - Rational::one())
    });
    if !product.is_integer() {
        return Err(NuError::NonIntegralProduct);
    }
    let sigma = BigInt::from(signature(counts));
    let raw = product.to_integer() - BigInt::from(3) * sigma + BigInt::one();
    let nu = i64::try_from(raw.mod_floor(&BigInt::from(MODULUS))).expect("residue fits");
    if nu % 2 == 0 {
        return Err(NuError::ParityViolation(nu));
    }
    Ok(nu)
}

/// ν = χ − 3σ (mod 48), the second evaluation route.
pub fn nu_from_chi_sigma(chi: i64, sigma: i64) -> i64 {
    (chi - 3 * sigma).rem_euclid(MODULUS)
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub order: OrderKind,
    pub groebner: GroebnerConfig,
    /// Keep the l-values in the report when the basis has at most this many
    /// elements.
    pub retention_limit: u64,
    /// Run the all-S-pairs certificate on the computed basis.
    pub certify: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            order: OrderKind::Grevlex,
            groebner: GroebnerConfig::default(),
            retention_limit: DEFAULT_RETENTION_LIMIT,
            certify: true,
        }
    }
}

/// Analysis input as it arrives from the CLI or a corpus row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub poly: String,
    pub weights: Vec<u64>,
    /// Inferred from the polynomial when absent.
    pub degree: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "message", rename_all = "snake_case")]
pub enum AnalysisError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not weighted homogeneous: {0}")]
    NotWeightedHomogeneous(String),
    #[error("{0}")]
    NonIsolatedSingularity(String),
    #[error("{0}")]
    BudgetExceeded(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
}

impl From<PolyError> for AnalysisError {
    fn from(e: PolyError) -> Self {
        AnalysisError::InvalidInput(e.to_string())
    }
}

impl From<HomogeneityError> for AnalysisError {
    fn from(e: HomogeneityError) -> Self {
        match e {
            HomogeneityError::Violation { .. } => AnalysisError::NotWeightedHomogeneous(e.to_string()),
            other => AnalysisError::InvalidInput(other.to_string()),
        }
    }
}

impl From<MilnorError> for AnalysisError {
    fn from(e: MilnorError) -> Self {
        match e {
            MilnorError::NonIsolatedSingularity => AnalysisError::NonIsolatedSingularity(e.to_string()),
            MilnorError::Groebner(GroebnerError::BudgetExceeded { .. }) => {
                AnalysisError::BudgetExceeded(e.to_string())
            }
            MilnorError::MilnorMismatch { .. } => AnalysisError::Integrity(e.to_string()),
            other => AnalysisError::InvalidInput(other.to_string()),
        }
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Parses and analyzes a textual request.
pub fn analyze_request(request: &AnalysisRequest, opts: &AnalyzeOptions) -> Result<NuReport, AnalysisError> {
    let start = Instant::now();
    if request.weights.is_empty() {
        return Err(AnalysisError::InvalidInput("at least one weight is required".into()));
    }
    let f = parse_polynomial(&request.poly, request.weights.len())?;
    if f.is_zero() {
        return Err(HomogeneityError::ZeroPolynomial.into());
    }
    if request.weights.contains(&0) {
        return Err(HomogeneityError::NonPositiveWeight.into());
    }
    let parse_ms = ms(start);
    let (degree, inferred) = match request.degree {
        Some(d) => (d, false),
        None => {
            let order = MonomialOrder::grevlex(f.num_vars());
            let (m, _) = f.sorted_terms(&order)[0];
            (weighted_degree(m, &request.weights)?, true)
        }
    };
    let input = WeightedInput::new(f, request.weights.clone(), degree);
    let mut report = analyze(&input, opts)?;
    report.input.poly = request.poly.clone();
    report.input.degree_inferred = inferred;
    report.diagnostics.timings_ms.parse = parse_ms;
    report.diagnostics.timings_ms.total = ms(start);
    Ok(report)
}

/// Full pipeline on a weighted input: homogeneity, Gröbner basis of the
/// Jacobian ideal, Steenbrink counts, σ, χ and (for CY links) ν.
pub fn analyze(input: &WeightedInput, opts: &AnalyzeOptions) -> Result<NuReport, AnalysisError> {
    let start = Instant::now();
    let n_vars = input.num_vars();
    let t = Instant::now();
    check_weighted_homogeneous(input)?;
    let homogeneity_ms = ms(t);

    let order = MonomialOrder::new(opts.order, n_vars);
    let t = Instant::now();
    let milnor = check_isolated_singularity(input, &order, &opts.groebner)?;
    let groebner_ms = ms(t);

    let t = Instant::now();
    let mu = milnor.milnor_number;
    let retain = mu <= opts.retention_limit;
    let scan = scan_basis(
        milnor.gb.standard_monomials().map_err(MilnorError::from)?,
        &input.weights,
        input.degree,
        retain,
    );
    let enumeration_ms = ms(t);

    let t = Instant::now();
    let gb_certified = if opts.certify {
        Some(milnor.gb.certify().is_ok())
    } else {
        None
    };
    let certificate_ms = ms(t);

    let t = Instant::now();
    let poincare_match = match poincare_degree_multiset(input.degree, &input.weights) {
        Ok(oracle) => oracle == scan.weighted_degrees(&input.weights),
        Err(_) => false,
    };
    let oracle_ms = ms(t);

    let counts = scan.counts.clone();
    if counts.total() != mu {
        return Err(AnalysisError::Integrity(format!(
            "μ₋ + μ₀ + μ₊ = {} ≠ μ = {mu}",
            counts.total()
        )));
    }
    let sigma = signature(&counts);
    let chi = milnor.euler_characteristic();
    let is_cy = cy_check(input.degree, &input.weights);

    let (nu, nu_alt) = if is_cy && n_vars == LINK_VARIABLES {
        let nu = nu_invariant(input.degree, &input.weights, &counts)
            .map_err(|e| AnalysisError::Integrity(e.to_string()))?;
        let alt = nu_from_chi_sigma(chi, sigma);
        if alt != nu {
            return Err(AnalysisError::Integrity(format!(
                "closed-form ν = {nu} but χ − 3σ gives {alt}"
            )));
        }
        (Some(nu), Some(alt))
    } else {
        (None, None)
    };

    Ok(NuReport {
        schema: REPORT_SCHEMA,
        input: ReportInput {
            poly: input.f.to_string(),
            weights: input.weights.clone(),
            degree: input.degree,
            degree_inferred: false,
        },
        order: opts.order,
        is_weighted_homogeneous: true,
        is_cy,
        milnor_number: mu,
        closed_form_milnor: milnor.closed_form_milnor,
        counts,
        sigma,
        euler_chi: chi,
        nu,
        nu_via_chi_sigma: nu_alt,
        parity_ok: nu.map(|v| v % 2 == 1),
        checks: Checks {
            mu_routes_agree: milnor.milnor_number == milnor.closed_form_milnor,
            gb_certified,
            poincare_match,
            l_palindromic: scan.is_palindromic(n_vars, input.degree),
            l_in_open_range: scan.in_open_range(n_vars, input.degree),
        },
        diagnostics: Diagnostics {
            groebner: milnor.gb.stats().clone(),
            staircase: milnor.gb.staircase().generators().iter().map(|m| m.to_string()).collect(),
            zero_partials: milnor.zero_partials.clone(),
            timings_ms: StageTimings {
                parse: 0.0,
                homogeneity: homogeneity_ms,
                groebner: groebner_ms,
                enumeration: enumeration_ms,
                certificate: certificate_ms,
                poincare_oracle: oracle_ms,
                total: ms(start),
            },
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(m: u64, z: u64, p: u64) -> SteenbrinkCounts {
        SteenbrinkCounts {
            mu_minus: m,
            mu_zero: z,
            mu_plus: p,
            l_values: None,
        }
    }

    #[test]
    fn cy_examples() {
        assert!(cy_check(5, &[1, 1, 1, 1, 1]));
        assert!(cy_check(75, &[10, 12, 13, 15, 25]));
        assert!(!cy_check(6, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_invariant(5, &[1; 5], &counts(240, 204, 580)).unwrap(), 5);
        assert_eq!(nu_from_chi_sigma(1025, 340), 5);
        assert!(matches!(
            nu_invariant(6, &[1; 5], &counts(240, 204, 580)),
            Err(NuError::NotCalabiYau { degree: 6, weight_sum: 5 })
        ));
        // d=75 row: μ = 1302, counts from the Poincaré route (416, 20, 866)
        assert_eq!(nu_invariant(75, &[10, 12, 13, 15, 25], &counts(416, 20, 866)).unwrap(), 1);
    }

    #[test]
    fn symmetric_counts_collapse_to_mu_plus_one() {
        // μ₊ = μ₋ ⇒ ν ≡ μ + 1; Fermat μ = 1024 ⇒ 1025 mod 48 = 17
        assert_eq!(nu_invariant(5, &[1; 5], &counts(400, 224, 400)).unwrap(), 1025 % 48);
    }

    #[test]
    fn parity_violation_is_fatal() {
        // μ = 1024, σ = 1 ⇒ 1024 − 3 + 1 = 1022 ≡ 14
        assert_eq!(nu_invariant(5, &[1; 5], &counts(0, 1023, 1)), Err(NuError::ParityViolation(14)));
    }

    #[test]
    fn analyze_fermat() {
        let req = AnalysisRequest {
            poly: "z0^5+z1^5+z2^5+z3^5+z4^5".into(),
            weights: vec![1; 5],
            degree: Some(5),
        };
        let r = analyze_request(&req, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.milnor_number, 1024);
        assert_eq!((r.counts.mu_minus, r.counts.mu_zero, r.counts.mu_plus), (240, 204, 580));
        assert_eq!(r.sigma, 340);
        assert_eq!(r.euler_chi, 1025);
        assert_eq!(r.nu, Some(5));
        assert_eq!(r.nu_via_chi_sigma, Some(5));
        assert_eq!(r.parity_ok, Some(true));
        assert!(r.checks.all_pass());
        assert_eq!(r.counts.l_values.as_ref().map(Vec::len), Some(1024));
    }

    #[test]
    fn analyze_infers_degree() {
        let req = AnalysisRequest {
            poly: "z0^2+z1^3+z2^12+z3^24+z4^24".into(),
            weights: vec![12, 8, 2, 1, 1],
            degree: None,
        };
        let r = analyze_request(&req, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.input.degree, 24);
        assert!(r.input.degree_inferred);
        assert_eq!(r.nu, Some(23));
    }

    #[test]
    fn analyze_rejects_inhomogeneous() {
        let req = AnalysisRequest {
            poly: "z0^5+z1^5+z2^5+z3^5+z4^5".into(),
            weights: vec![1, 1, 1, 1, 2],
            degree: Some(5),
        };
        match analyze_request(&req, &AnalyzeOptions::default()) {
            Err(AnalysisError::NotWeightedHomogeneous(msg)) => assert!(msg.contains("z4^5"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_cy_still_gets_signature() {
        // Fermat sextic in 5 variables: homogeneous, isolated, d ≠ Σw
        let req = AnalysisRequest {
            poly: "z0^6+z1^6+z2^6+z3^6+z4^6".into(),
            weights: vec![1; 5],
            degree: None,
        };
        let r = analyze_request(&req, &AnalyzeOptions::default()).unwrap();
        assert!(!r.is_cy);
        assert_eq!(r.milnor_number, 3125);
        assert_eq!(r.counts.total(), 3125);
        assert_eq!(r.nu, None);
        assert_eq!(r.parity_ok, None);
    }

    #[test]
    fn error_classification() {
        let opts = AnalyzeOptions::default();
        let req = |p: &str, w: Vec<u64>| AnalysisRequest { poly: p.into(), weights: w, degree: None };
        assert!(matches!(analyze_request(&req("z0 +", vec![1]), &opts), Err(AnalysisError::InvalidInput(_))));
        assert!(matches!(
            analyze_request(&req("z0^2*z1", vec![1, 1]), &opts),
            Err(AnalysisError::NonIsolatedSingularity(_))
        ));
        let tight = AnalyzeOptions {
            groebner: GroebnerConfig { step_budget: 1 },
            ..AnalyzeOptions::default()
        };
        assert!(matches!(
            analyze_request(&req("z0^5*z4+z1^5*z3+z2^5*z0+z3^5+z4^3", vec![10, 12, 13, 15, 25]), &tight),
            Err(AnalysisError::BudgetExceeded(_))
        ));
    }
}
