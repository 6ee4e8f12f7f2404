//! Shared iteration driver for the AO solvers: stopping rule, optional
//! trace recording, termination metadata.

use crate::mi::{AOConfig, AOTrace, Termination};

pub(crate) struct Driver {
    tolerance: f64,
    max_iterations: usize,
    record: bool,
    objectives: Vec<f64>,
    previous: Option<f64>,
    iterations: usize,
    terminated_by: Termination,
    last: f64,
}

impl Driver {
    pub(crate) fn new(cfg: &AOConfig) -> Self {
        Self {
            tolerance: cfg.tolerance,
            max_iterations: cfg.max_iterations,
            record: cfg.record_trace,
            objectives: Vec::new(),
            previous: None,
            iterations: 0,
            terminated_by: Termination::MaxIterations,
            last: f64::NAN,
        }
    }

    /// Feeds one cycle's objective; true means stop.
    pub(crate) fn observe(&mut self, objective: f64) -> bool {
        self.iterations += 1;
        self.last = objective;
        if self.record {
            self.objectives.push(objective);
        }
        let done = match self.previous {
            Some(prev) => (objective - prev).abs() <= self.tolerance,
            None => false,
        };
        self.previous = Some(objective);
        if done {
            self.terminated_by = Termination::Tolerance;
            true
        } else if self.iterations >= self.max_iterations {
            self.terminated_by = Termination::MaxIterations;
            true
        } else {
            false
        }
    }

    pub(crate) fn converged(&self) -> bool {
        self.terminated_by == Termination::Tolerance
    }

    pub(crate) fn iterations(&self) -> usize {
        self.iterations
    }

    pub(crate) fn into_trace(self) -> AOTrace {
        AOTrace {
            objectives: self.objectives,
            iterations: self.iterations,
            terminated_by: self.terminated_by,
            final_value: self.last,
        }
    }
}
