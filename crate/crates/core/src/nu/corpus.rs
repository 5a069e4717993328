use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{analyze_request, AnalysisRequest, AnalyzeOptions, LINK_VARIABLES};

/// The reference table of weighted Calabi-Yau links with printed ν values.
pub const TABLE1_JSONL: &str = include_str!("../../../../data/table1.jsonl");

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub degree: u64,
    pub weights: Vec<u64>,
    pub poly: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_nu: Option<i64>,
}

/// One entry per non-blank line, each parsed independently so a corrupt line
/// does not affect the others. The `usize` is the 1-based line number.
pub fn parse_corpus(text: &str) -> Vec<(usize, Result<CorpusEntry, String>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let parsed = serde_json::from_str::<CorpusEntry>(line)
                .map_err(|e| e.to_string())
                .and_then(|e| {
                    if e.weights.len() == LINK_VARIABLES {
                        Ok(e)
                    } else {
                        Err(format!("expected {LINK_VARIABLES} weights, found {}", e.weights.len()))
                    }
                });
            (i + 1, parsed)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Mismatch,
    /// Analyzed, but no expected value to compare against.
    Unchecked,
    /// A cross-check inside the analysis failed.
    CheckFailed,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusRow {
    pub line: usize,
    pub degree: Option<u64>,
    pub weights: Option<Vec<u64>>,
    pub mu: Option<u64>,
    pub sigma: Option<i64>,
    pub nu: Option<i64>,
    pub expected: Option<i64>,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub rows: Vec<CorpusRow>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusSummary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

fn run_entry(line: usize, entry: &Result<CorpusEntry, String>, opts: &AnalyzeOptions) -> CorpusRow {
    let start = Instant::now();
    let e = match entry {
        Ok(e) => e,
        Err(msg) => {
            return CorpusRow {
                line,
                degree: None,
                weights: None,
                mu: None,
                sigma: None,
                nu: None,
                expected: None,
                status: RowStatus::Error,
                error: Some(msg.clone()),
                ms: 0.0,
            }
        }
    };
    let req = AnalysisRequest {
        poly: e.poly.clone(),
        weights: e.weights.clone(),
        degree: Some(e.degree),
    };
    let mut row = CorpusRow {
        line,
        degree: Some(e.degree),
        weights: Some(e.weights.clone()),
        mu: None,
        sigma: None,
        nu: None,
        expected: e.expected_nu,
        status: RowStatus::Error,
        error: None,
        ms: 0.0,
    };
    match analyze_request(&req, opts) {
        Ok(report) => {
            row.mu = Some(report.milnor_number);
            row.sigma = Some(report.sigma);
            row.nu = report.nu;
            row.status = if !report.checks.all_pass() {
                row.error = Some(format!("failed checks: {}", report.checks.failures().join(", ")));
                RowStatus::CheckFailed
            } else {
                match e.expected_nu {
                    None => RowStatus::Unchecked,
                    Some(x) if report.nu == Some(x) => RowStatus::Pass,
                    Some(_) => RowStatus::Mismatch,
                }
            };
        }
        Err(err) => row.error = Some(err.to_string()),
    }
    row.ms = start.elapsed().as_secs_f64() * 1e3;
    row
}

/// Runs every entry on a pool of `jobs` threads (0 = rayon default). Rows come
/// back in input order regardless of scheduling.
pub fn run_corpus(
    entries: &[(usize, Result<CorpusEntry, String>)],
    jobs: usize,
    opts: &AnalyzeOptions,
) -> CorpusSummary {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let rows: Vec<CorpusRow> = pool.install(|| {
        entries
            .par_iter()
            .map(|(line, e)| run_entry(*line, e, opts))
            .collect()
    });
    let passed = rows
        .iter()
        .filter(|r| matches!(r.status, RowStatus::Pass | RowStatus::Unchecked))
        .count();
    CorpusSummary {
        failed: rows.len() - passed,
        passed,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupt_line_is_isolated() {
        let text = r#"{"degree":5,"weights":[1,1,1,1,1],"poly":"z0^5+z1^5+z2^5+z3^5+z4^5","expected_nu":5}
{"degree":5,"weights":[1,1,1,1
{"degree":5,"weights":[1,1,1,1],"poly":"z0^5"}

{"degree":5,"weights":[1,1,1,1,1],"poly":"z0^5+z1^5+z2^5+z3^5+z4^5","expected_nu":7}
"#;
        let entries = parse_corpus(text);
        assert_eq!(entries.len(), 4);
        assert_eq!(entries.iter().map(|e| e.0).collect::<Vec<_>>(), vec![1, 2, 3, 5]);
        assert!(entries[1].1.is_err());
        assert!(entries[2].1.as_ref().unwrap_err().contains("5 weights"));
        let summary = run_corpus(&entries, 2, &AnalyzeOptions::default());
        let st: Vec<_> = summary.rows.iter().map(|r| r.status).collect();
        assert_eq!(st, vec![RowStatus::Pass, RowStatus::Error, RowStatus::Error, RowStatus::Mismatch]);
        assert_eq!(summary.passed, 1);
        assert!(!summary.all_pass());
    }

    #[test]
    fn bundled_table_parses() {
        let entries = parse_corpus(TABLE1_JSONL);
        assert_eq!(entries.len(), 20);
        assert!(entries.iter().all(|(_, e)| e.as_ref().is_ok_and(|e| e.expected_nu.is_some())));
    }
}
