use std::fmt;

use serde::Serialize;

use crate::groebner::GbStats;
use crate::polyring::OrderKind;
use crate::steenbrink::SteenbrinkCounts;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ReportInput {
    pub poly: String,
    pub weights: Vec<u64>,
    pub degree: u64,
    pub degree_inferred: bool,
}

/// Cross-checks run on every analysis. `gb_certified` is `None` when the
/// certificate was skipped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub mu_routes_agree: bool,
    pub gb_certified: Option<bool>,
    pub poincare_match: bool,
    pub l_palindromic: bool,
    pub l_in_open_range: bool,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.mu_routes_agree
            && self.gb_certified != Some(false)
            && self.poincare_match
            && self.l_palindromic
            && self.l_in_open_range
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.mu_routes_agree {
            out.push("mu_routes_agree");
        }
        if self.gb_certified == Some(false) {
            out.push("gb_certified");
        }
        if !self.poincare_match {
            out.push("poincare_match");
        }
        if !self.l_palindromic {
            out.push("l_palindromic");
        }
        if !self.l_in_open_range {
            out.push("l_in_open_range");
        }
        out
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StageTimings {
    pub parse: f64,
    pub homogeneity: f64,
    pub groebner: f64,
    pub enumeration: f64,
    pub certificate: f64,
    pub poincare_oracle: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    pub groebner: GbStats,
    pub staircase: Vec<String>,
    pub zero_partials: Vec<usize>,
    pub timings_ms: StageTimings,
}

#[derive(Clone, Debug, Serialize)]
pub struct NuReport {
    pub schema: u32,
    pub input: ReportInput,
    pub order: OrderKind,
    pub is_weighted_homogeneous: bool,
    pub is_cy: bool,
    pub milnor_number: u64,
    pub closed_form_milnor: u64,
    pub counts: SteenbrinkCounts,
    pub sigma: i64,
    pub euler_chi: i64,
    /// `None` when ν is not applicable (not Calabi-Yau, or not 5 variables).
    pub nu: Option<i64>,
    pub nu_via_chi_sigma: Option<i64>,
    pub parity_ok: Option<bool>,
    pub checks: Checks,
    pub diagnostics: Diagnostics,
}

impl NuReport {
    /// JSON with the timing fields zeroed, for byte-level comparisons.
    pub fn to_json_without_timings(&self) -> String {
        let mut r = self.clone();
        r.diagnostics.timings_ms = StageTimings::default();
        serde_json::to_string(&r).expect("report serializes")
    }
}

impl fmt::Display for NuReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.counts;
        writeln!(f, "f         = {}", self.input.poly)?;
        writeln!(
            f,
            "weights   = {:?}, degree = {}{}",
            self.input.weights,
            self.input.degree,
            if self.input.degree_inferred { " (inferred)" } else { "" }
        )?;
        writeln!(f, "order     = {}", self.order)?;
        writeln!(f, "CY        = {}", self.is_cy)?;
        writeln!(f, "mu        = {} (closed form {})", self.milnor_number, self.closed_form_milnor)?;
        writeln!(f, "mu-,mu0,mu+ = {}, {}, {}", c.mu_minus, c.mu_zero, c.mu_plus)?;
        writeln!(f, "sigma     = {}", self.sigma)?;
        writeln!(f, "chi       = {}", self.euler_chi)?;
        match self.nu {
            Some(nu) => writeln!(f, "nu        = {nu} (mod 48)")?,
            None => writeln!(f, "nu        = n/a")?,
        }
        let failures = self.checks.failures();
        if failures.is_empty() {
            write!(f, "checks    = ok")?;
        } else {
            write!(f, "checks    = FAILED: {}", failures.join(", "))?;
        }
        writeln!(f, " ({:.1} ms)", self.diagnostics.timings_ms.total)
    }
}
