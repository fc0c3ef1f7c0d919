//! Axiom sweep reports.

/// Cap on stored counterexample strings per report. Failures beyond the cap
/// are still counted so `pass` stays faithful.
const STORED_CE_CAP: usize = 8;

/// Outcome of sweeping one axiom over sampled inputs.
///
/// Invariant: `pass()` is true exactly when no failure was recorded, and a
/// report with failures always retains at least one counterexample.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// Short axiom id, e.g. `"A5"`, `"N3"`, `"shear"`.
    pub axiom: String,
    /// Number of sampled tuples the axiom was evaluated on.
    pub trials: usize,
    /// Total number of violations observed.
    pub failure_count: usize,
    /// Up to [`STORED_CE_CAP`] formatted counterexample tuples.
    pub counterexamples: Vec<String>,
}

impl AxiomReport {
    pub fn new(axiom: impl Into<String>) -> Self {
        AxiomReport {
            axiom: axiom.into(),
            trials: 0,
            failure_count: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn record_trial(&mut self) {
        self.trials += 1;
    }

    pub fn record_failure(&mut self, counterexample: String) {
        self.failure_count += 1;
        if self.counterexamples.len() < STORED_CE_CAP {
            self.counterexamples.push(counterexample);
        }
    }

    pub fn pass(&self) -> bool {
        self.failure_count == 0
    }
}

/// True when every report in the sweep passed.
pub fn all_pass(reports: &[AxiomReport]) -> bool {
    reports.iter().all(AxiomReport::pass)
}
