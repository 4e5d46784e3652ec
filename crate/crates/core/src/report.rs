use serde::Serialize;

use crate::exec::Sampling;
use crate::real;
use crate::space::Point;

/// A failed sample. For inequality checks `margin = lhs - rhs - slack`; for
/// boolean predicates `lhs` is 1, `rhs` is 0 and `margin` is 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub witness: Vec<Point>,
    #[serde(
        serialize_with = "real::serialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub beta: Option<f64>,
    #[serde(serialize_with = "real::serialize")]
    pub lhs: f64,
    #[serde(serialize_with = "real::serialize")]
    pub rhs: f64,
    #[serde(serialize_with = "real::serialize")]
    pub margin: f64,
}

/// Result of one sample: skipped (e.g. the pair was not an edge) or checked.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleOutcome {
    Skipped,
    Checked {
        margin: f64,
        violation: Option<Violation>,
    },
}

impl SampleOutcome {
    /// `lhs <= rhs + rel * (1 + |rhs|)`.
    pub fn inequality(
        witness: Vec<Point>,
        beta: Option<f64>,
        lhs: f64,
        rhs: f64,
        rel: f64,
    ) -> Self {
        let margin = lhs - rhs - rel * (1.0 + rhs.abs());
        let violation = (margin > 0.0 || margin.is_nan()).then_some(Violation {
            witness,
            beta,
            lhs,
            rhs,
            margin,
        });
        SampleOutcome::Checked { margin, violation }
    }

    pub fn predicate(witness: Vec<Point>, holds: bool) -> Self {
        if holds {
            SampleOutcome::Checked {
                margin: 0.0,
                violation: None,
            }
        } else {
            SampleOutcome::Checked {
                margin: 1.0,
                violation: Some(Violation {
                    witness,
                    beta: None,
                    lhs: 1.0,
                    rhs: 0.0,
                    margin: 1.0,
                }),
            }
        }
    }
}

/// Outcome of a sampled or exhaustive check.
///
/// `violations` is non-empty iff `worst_margin > 0`. Reports merge by
/// concatenating violations and taking the max margin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub label: String,
    pub seed: u64,
    pub samples_tested: usize,
    /// Samples that actually reached the check (e.g. edge pairs).
    pub checked: usize,
    #[serde(serialize_with = "real::serialize_opt")]
    pub worst_margin: Option<f64>,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn empty(label: &str, seed: u64) -> Self {
        ViolationReport {
            label: label.to_string(),
            seed,
            samples_tested: 0,
            checked: 0,
            worst_margin: None,
            violations: Vec::new(),
        }
    }

    pub fn from_outcomes(label: &str, sampling: &Sampling, outcomes: Vec<SampleOutcome>) -> Self {
        let mut report = ViolationReport::empty(label, sampling.seed);
        report.samples_tested = outcomes.len();
        for outcome in outcomes {
            report.push(outcome);
        }
        report
    }

    pub fn push(&mut self, outcome: SampleOutcome) {
        if let SampleOutcome::Checked { margin, violation } = outcome {
            self.checked += 1;
            self.worst_margin = Some(match self.worst_margin {
                Some(w) if !(margin > w) && !margin.is_nan() => w,
                _ => margin,
            });
            self.violations.extend(violation);
        }
    }

    pub fn merge(mut self, other: ViolationReport) -> Self {
        self.samples_tested += other.samples_tested;
        self.checked += other.checked;
        self.worst_margin = match (self.worst_margin, other.worst_margin) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.violations.extend(other.violations);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_and_merge() {
        let s = Sampling::new(3, 1);
        let p = Point::scalar(0.0);
        let a = ViolationReport::from_outcomes(
            "a",
            &s,
            vec![
                SampleOutcome::inequality(vec![p.clone()], None, 1.0, 2.0, 1e-12),
                SampleOutcome::Skipped,
                SampleOutcome::inequality(vec![p.clone()], None, 2.0, 2.0, 1e-12),
            ],
        );
        assert_eq!(a.samples_tested, 3);
        assert_eq!(a.checked, 2);
        assert!(a.passed());
        assert!(a.worst_margin.unwrap() < 0.0);

        let b = ViolationReport::from_outcomes(
            "b",
            &s,
            vec![SampleOutcome::inequality(vec![p], None, 3.0, 2.0, 1e-12)],
        );
        assert!(!b.passed());
        let m = a.merge(b);
        assert_eq!(m.samples_tested, 4);
        assert_eq!(m.violations.len(), 1);
        assert!((m.worst_margin.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn slack_absorbs_rounding() {
        let p = Point::scalar(0.0);
        let o = SampleOutcome::inequality(vec![p], None, 1.0 + 1e-13, 1.0, 1e-12);
        assert!(matches!(
            o,
            SampleOutcome::Checked {
                violation: None,
                ..
            }
        ));
    }
}
