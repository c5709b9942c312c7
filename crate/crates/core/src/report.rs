//! Law-check reports shared by the sampled (numeric) and exhaustive (finite)
//! verification suites.

use serde::{Deserialize, Serialize};

/// Outcome of one sampled law check: worst residual seen over all trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawCheck {
    pub law: String,
    pub trials: usize,
    pub max_residual: f64,
    pub pass: bool,
}

/// Outcome of one exhaustive law check over a finite structure.
///
/// `witness` holds a human-readable description of the first violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactCheck {
    pub law: String,
    pub cases: usize,
    pub violations: usize,
    pub witness: Option<String>,
    pub pass: bool,
}

pub fn all_pass(checks: &[LawCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}

pub fn all_hold(checks: &[ExactCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Accumulates per-law residual maxima across trials, preserving the order in
/// which laws are first observed so reports are stable for a fixed seed.
#[derive(Debug, Default)]
pub struct ResidualTable {
    entries: Vec<(String, f64)>,
}

impl ResidualTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, law: &str, residual: f64) {
        match self.entries.iter_mut().find(|(name, _)| name == law) {
            Some((_, max)) => {
                if residual > *max {
                    *max = residual;
                }
            }
            None => self.entries.push((law.to_string(), residual)),
        }
    }

    pub fn into_report(self, trials: usize, tol: f64) -> Vec<LawCheck> {
        self.entries
            .into_iter()
            .map(|(law, max_residual)| LawCheck {
                law,
                trials,
                max_residual,
                pass: max_residual <= tol,
            })
            .collect()
    }
}

/// Accumulates exhaustive pass/fail counts, keeping the first witness per law.
#[derive(Debug, Default)]
pub struct ExactTable {
    entries: Vec<ExactCheck>,
}

impl ExactTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        let entry = match self.entries.iter_mut().find(|c| c.law == law) {
            Some(entry) => entry,
            None => {
                self.entries.push(ExactCheck {
                    law: law.to_string(),
                    cases: 0,
                    violations: 0,
                    witness: None,
                    pass: true,
                });
                self.entries.last_mut().unwrap()
            }
        };
        entry.cases += 1;
        if !ok {
            entry.violations += 1;
            entry.pass = false;
            if entry.witness.is_none() {
                entry.witness = Some(witness());
            }
        }
    }

    pub fn into_report(self) -> Vec<ExactCheck> {
        self.entries
    }
}

/// Fixed-width text rendering of a sampled report, for terminal output.
pub fn render_law_table(checks: &[LawCheck]) -> String {
    let width = checks.iter().map(|c| c.law.len()).max().unwrap_or(3).max(3);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<width$}  {:>7}  {:>12}  result\n",
        "law",
        "trials",
        "max residual",
        width = width
    ));
    for c in checks {
        out.push_str(&format!(
            "{:<width$}  {:>7}  {:>12.3e}  {}\n",
            c.law,
            c.trials,
            c.max_residual,
            if c.pass { "pass" } else { "FAIL" },
            width = width
        ));
    }
    out
}

/// Fixed-width text rendering of an exhaustive report.
pub fn render_exact_table(checks: &[ExactCheck]) -> String {
    let width = checks.iter().map(|c| c.law.len()).max().unwrap_or(3).max(3);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<width$}  {:>8}  {:>10}  result\n",
        "law",
        "cases",
        "violations",
        width = width
    ));
    for c in checks {
        out.push_str(&format!(
            "{:<width$}  {:>8}  {:>10}  {}\n",
            c.law,
            c.cases,
            c.violations,
            if c.pass { "pass" } else { "FAIL" },
            width = width
        ));
        if let Some(w) = &c.witness {
            out.push_str(&format!("{:width$}  first violation: {}\n", "", w, width = width));
        }
    }
    out
}
