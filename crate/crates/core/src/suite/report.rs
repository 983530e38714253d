use serde::Serialize;

use crate::outcome::{ParamEcho, RelationOutcome};
use crate::scalar::Region;

/// Everything needed to replay one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct TrialParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
}

impl TrialParams {
    pub fn matrix(dim: Option<usize>) -> Self {
        TrialParams {
            dim,
            ..Self::default()
        }
    }

    pub fn scalar(a: f64, b: f64) -> Self {
        TrialParams {
            a: Some(a),
            b: Some(b),
            ..Self::default()
        }
    }

    pub fn with_echo(mut self, echo: &ParamEcho) -> Self {
        self.t = echo.t;
        self.nu = echo.nu;
        self.tau = echo.tau;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub params: TrialParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    /// Set when evaluation itself failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryReport {
    pub relation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<String>,
    pub evaluations: usize,
    /// Smallest `margin / max(|lhs|, |rhs|, 1)` seen.
    pub min_relative_margin: Option<f64>,
    pub failures: Vec<FailureRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub relative: f64,
    pub boundary_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cond_cap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<(usize, usize)>,
    pub tolerances: Tolerances,
    pub evaluations: usize,
    pub failures_total: usize,
    pub entries: Vec<EntryReport>,
    /// Subreports of a combined run.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<VerificationReport>,
}

impl VerificationReport {
    pub(crate) fn new(
        suite: &str,
        seed: u64,
        trials: usize,
        dims: Option<(usize, usize)>,
        tolerances: Tolerances,
        tallies: Vec<Tally>,
    ) -> Self {
        let entries: Vec<EntryReport> = tallies.into_iter().map(Tally::finish).collect();
        VerificationReport {
            suite: suite.to_string(),
            seed,
            trials,
            dims,
            tolerances,
            evaluations: entries.iter().map(|e| e.evaluations).sum(),
            failures_total: entries.iter().map(|e| e.failures.len()).sum(),
            entries,
            parts: Vec::new(),
        }
    }

    /// A report holding `parts` in order, with summed counts.
    pub fn combine(suite: &str, parts: Vec<VerificationReport>) -> Self {
        let first = parts.first();
        VerificationReport {
            suite: suite.to_string(),
            seed: first.map_or(0, |p| p.seed),
            trials: first.map_or(0, |p| p.trials),
            dims: parts.iter().find_map(|p| p.dims),
            tolerances: first.map_or(
                Tolerances {
                    relative: 0.0,
                    boundary_margin: 0.0,
                    cond_cap: None,
                },
                |p| p.tolerances,
            ),
            evaluations: parts.iter().map(|p| p.evaluations).sum(),
            failures_total: parts.iter().map(|p| p.failures_total).sum(),
            entries: Vec::new(),
            parts,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures_total == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// All entries, including those of subreports.
    pub fn all_entries(&self) -> Vec<&EntryReport> {
        let mut out: Vec<&EntryReport> = self.entries.iter().collect();
        for p in &self.parts {
            out.extend(p.all_entries());
        }
        out
    }
}

#[derive(Debug, Clone)]
pub(crate) struct EntryKey {
    pub relation: String,
    pub region: Option<Region>,
    pub norm: Option<String>,
}

#[derive(Debug)]
pub(crate) struct Tally {
    key: EntryKey,
    evaluations: usize,
    min_relative_margin: Option<f64>,
    failures: Vec<FailureRecord>,
}

impl Tally {
    pub fn new(key: EntryKey) -> Self {
        Tally {
            key,
            evaluations: 0,
            min_relative_margin: None,
            failures: Vec::new(),
        }
    }

    pub fn outcome(&mut self, trial: usize, params: TrialParams, o: &RelationOutcome) {
        self.evaluations += 1;
        let scale = o
            .lhs
            .abs()
            .max(o.rhs.abs())
            .max(o.middle.map_or(0.0, f64::abs))
            .max(1.0);
        let rel = o.margin / scale;
        self.min_relative_margin = Some(match self.min_relative_margin {
            Some(m) if !(rel < m) => m,
            _ => rel,
        });
        if !o.holds {
            self.failures.push(FailureRecord {
                trial,
                params,
                lhs: Some(o.lhs),
                rhs: Some(o.rhs),
                margin: Some(o.margin),
                error: None,
            });
        }
    }

    pub fn error(&mut self, trial: usize, params: TrialParams, message: String) {
        self.evaluations += 1;
        self.failures.push(FailureRecord {
            trial,
            params,
            lhs: None,
            rhs: None,
            margin: None,
            error: Some(message),
        });
    }

    fn finish(mut self) -> EntryReport {
        self.failures.sort_by_key(|f| f.trial);
        EntryReport {
            relation: self.key.relation,
            region: self.key.region,
            norm: self.key.norm,
            evaluations: self.evaluations,
            min_relative_margin: self.min_relative_margin,
            failures: self.failures,
        }
    }
}
