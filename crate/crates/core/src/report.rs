//! Validation reports: law violations with witnesses.

/// One law violation, witnessed by concrete elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Stable law identifier, e.g. `"ea.associativity"` or `"sea.s1"`.
    pub law: String,
    /// Human-readable witness: the elements and values that break the law.
    pub witness: String,
}

/// Outcome of an axiom/property sweep.
///
/// By default at most one witness is kept per law (the first found in the
/// deterministic scan order); constructing the report with
/// [`ValidationReport::exhaustive`] keeps every witness.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Informational notes that are not failures (e.g. which laws were
    /// asserted by construction rather than computed).
    pub notes: Vec<String>,
    /// Number of individual law instances evaluated.
    pub checks: u64,
    keep_all: bool,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport::default()
    }

    /// A report that records every witness instead of the first per law.
    pub fn exhaustive() -> Self {
        ValidationReport {
            keep_all: true,
            ..ValidationReport::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn tick(&mut self) {
        self.checks += 1;
    }

    pub fn ticks(&mut self, n: u64) {
        self.checks += n;
    }

    /// Records a violation of `law`; deduplicated per law unless exhaustive.
    pub fn record(&mut self, law: &str, witness: String) {
        if self.keep_all || !self.has_violation(law) {
            self.violations.push(Violation {
                law: law.to_owned(),
                witness,
            });
        }
    }

    pub fn has_violation(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds `other` into `self`, preserving per-law deduplication.
    pub fn merge(&mut self, other: ValidationReport) {
        self.checks += other.checks;
        self.notes.extend(other.notes);
        for v in other.violations {
            self.record(&v.law, v.witness);
        }
    }
}
