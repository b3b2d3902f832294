//! Sweep configuration, read from JSON.

use std::path::{Path, PathBuf};

use homcert::regular::MAX_GENERATED_ORDER;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `hom(G,H)` against the larger of the `K_{d,d}` and `K_{d+1}` bounds.
    Conjecture,
    /// Triangle-free graphs: `c4` is maximized only by unions of `K_{d,d}`.
    LemmaC4,
    /// `p4 - c4` is minimized only by unions of `K_{d+1}`.
    LemmaP4c4,
    /// The back-degree product bound over seeded orderings.
    MtBound,
    /// Independence polynomial against the union of `K_{d,d}`.
    LambdaIdentity,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Conjecture => "conjecture",
            Check::LemmaC4 => "lemma-c4",
            Check::LemmaP4c4 => "lemma-p4c4",
            Check::MtBound => "mt-bound",
            Check::LambdaIdentity => "lambda-identity",
        }
    }

    pub fn needs_constraints(self) -> bool {
        matches!(self, Check::Conjecture | Check::MtBound)
    }

    /// Whether the check has anything to compare at `(n, d)`.
    pub fn applies(self, n: usize, d: usize) -> bool {
        match self {
            Check::LemmaC4 | Check::LambdaIdentity => n % (2 * d) == 0,
            Check::LemmaP4c4 => n % (d + 1) == 0,
            Check::Conjecture | Check::MtBound => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Inclusive range of orders.
    pub n_range: [usize; 2],
    /// Inclusive range of degrees.
    pub d_range: [usize; 2],
    /// Restrict the per-`(G, H)` checks to connected `G`.
    #[serde(default)]
    pub connected_only: bool,
    /// Every catalog constraint graph with at most this many vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_catalog_max_order: Option<usize>,
    /// Every constraint graph with at most this many vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_all_max_order: Option<usize>,
    /// Catalog names or inline `rows:` matrices.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h_names: Vec<String>,
    /// Constraint-matrix files.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h_files: Vec<PathBuf>,
    /// graph6 files replacing the built-in generator.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub graph6_files: Vec<PathBuf>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard_limit: Option<u64>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let config: SweepConfig = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        let mut config = Self::from_json(&text)?;
        // Relative paths inside the config are relative to the config file.
        if let Some(dir) = path.parent() {
            for p in config.h_files.iter_mut().chain(config.graph6_files.iter_mut()) {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(config)
    }

    /// `(n, d)` pairs with `n d` even and `d < n`, by `n` then `d`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let [n0, n1] = self.n_range;
        let [d0, d1] = self.d_range;
        (n0..=n1)
            .flat_map(|n| (d0..=d1).map(move |d| (n, d)))
            .filter(|&(n, d)| d < n && n * d % 2 == 0)
            .collect()
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        let [n0, n1] = self.n_range;
        let [d0, d1] = self.d_range;
        if n0 > n1 || d0 > d1 {
            return bad("ranges must be [low, high]".into());
        }
        if d0 == 0 {
            return bad("degrees start at 1".into());
        }
        if self.graph6_files.is_empty() && n1 > MAX_GENERATED_ORDER {
            return bad(format!(
                "built-in generation stops at n = {MAX_GENERATED_ORDER}; supply graph6_files for larger orders"
            ));
        }
        if self.checks.is_empty() {
            return bad("no checks requested".into());
        }
        let pairs = self.pairs();
        if pairs.is_empty() {
            return bad("no (n, d) pair in range has n*d even and d < n".into());
        }
        for &check in &self.checks {
            if !pairs.iter().any(|&(n, d)| check.applies(n, d)) {
                return bad(format!("no (n, d) pair in range satisfies the divisibility {} needs", check.name()));
            }
        }
        let has_h = self.h_catalog_max_order.is_some()
            || self.h_all_max_order.is_some()
            || !self.h_names.is_empty()
            || !self.h_files.is_empty();
        if self.checks.iter().any(|c| c.needs_constraints()) && !has_h {
            return bad("conjecture and mt-bound need constraint graphs".into());
        }
        if let Some(k) = self.h_all_max_order {
            if !(1..=5).contains(&k) {
                return bad("h_all_max_order must lie in 1..=5".into());
            }
        }
        if self.workers == Some(0) {
            return bad("workers must be positive".into());
        }
        Ok(())
    }
}
