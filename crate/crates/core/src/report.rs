// SPDX-License-Identifier: Apache-2.0

//! Verdicts and tallies shared by every audit.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    SelfDistance,
    MonotoneInR,
    UpperSemicontinuity,
    WeakTriangle,
    WeakerTriangle,
    FullTriangle,
    Symmetry,
    BasisInclusion,
    HalfStep,
    IntersectionScale,
    Sandwich,
    TripleInclusion,
    QuasiPseudoMetric,
    DistanceToLevel,
    LevelToDistance,
    Nondegenerate,
    BallToNeighborhood,
    NeighborhoodToBall,
    CompactOpenForward,
    CompactOpenBackward,
    TranslationIdentity,
    PlotContinuity,
    PlotSmoothness,
    ContinuityWitness,
    URecovery,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = axiom_name(*self);
        f.write_str(s)
    }
}

fn axiom_name(a: Axiom) -> &'static str {
    match a {
        Axiom::SelfDistance => "self-distance",
        Axiom::MonotoneInR => "monotone-in-r",
        Axiom::UpperSemicontinuity => "upper-semicontinuity",
        Axiom::WeakTriangle => "weak-triangle",
        Axiom::WeakerTriangle => "weaker-triangle",
        Axiom::FullTriangle => "full-triangle",
        Axiom::Symmetry => "symmetry",
        Axiom::BasisInclusion => "basis-inclusion",
        Axiom::HalfStep => "half-step",
        Axiom::IntersectionScale => "intersection-scale",
        Axiom::Sandwich => "sandwich",
        Axiom::TripleInclusion => "triple-inclusion",
        Axiom::QuasiPseudoMetric => "quasi-pseudo-metric",
        Axiom::DistanceToLevel => "distance-to-level",
        Axiom::LevelToDistance => "level-to-distance",
        Axiom::Nondegenerate => "nondegenerate",
        Axiom::BallToNeighborhood => "ball-to-neighborhood",
        Axiom::NeighborhoodToBall => "neighborhood-to-ball",
        Axiom::CompactOpenForward => "compact-open-forward",
        Axiom::CompactOpenBackward => "compact-open-backward",
        Axiom::TranslationIdentity => "translation-identity",
        Axiom::PlotContinuity => "plot-continuity",
        Axiom::PlotSmoothness => "plot-smoothness",
        Axiom::ContinuityWitness => "continuity-witness",
        Axiom::URecovery => "u-recovery",
    }
}

/// The offending tuple of a failed check. `index` points into the list the
/// audit was given, so the failure can be replayed from the same inputs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub index: usize,
    pub points: Vec<String>,
    pub scales: Vec<String>,
    pub values: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    Skipped { reason: String },
}

/// Per-tuple result before folding into a report.
#[derive(Clone, Debug)]
pub enum Outcome {
    Checked,
    Vacuous,
    Failed(Witness),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    pub checked: usize,
    pub vacuous: usize,
    pub failed: usize,
    /// Set when nothing was actually tested (empty input or every tuple vacuous).
    pub uninformative: bool,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn skipped(axiom: Axiom, reason: impl Into<String>) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::Skipped {
                reason: reason.into(),
            },
            checked: 0,
            vacuous: 0,
            failed: 0,
            uninformative: true,
            notes: Vec::new(),
        }
    }

    /// Folds outcomes in input order; the first failure becomes the witness.
    pub fn from_outcomes(axiom: Axiom, outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        let mut checked = 0;
        let mut vacuous = 0;
        let mut failed = 0;
        let mut first: Option<Witness> = None;
        for o in outcomes {
            match o {
                Outcome::Checked => checked += 1,
                Outcome::Vacuous => vacuous += 1,
                Outcome::Failed(w) => {
                    checked += 1;
                    failed += 1;
                    if first.is_none() {
                        first = Some(w);
                    }
                }
            }
        }
        let verdict = match first {
            Some(witness) => Verdict::Fail { witness },
            None => Verdict::Pass,
        };
        AxiomReport {
            axiom,
            verdict,
            checked,
            vacuous,
            failed,
            uninformative: checked == 0,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self.verdict, Verdict::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let status = match &self.verdict {
            Verdict::Pass => "PASS".to_string(),
            Verdict::Fail { witness } => format!("FAIL (tuple #{}: {})", witness.index, witness.detail),
            Verdict::Skipped { reason } => format!("SKIPPED ({reason})"),
        };
        let mut s = format!(
            "{:<22} {}  checked={} vacuous={} failed={}",
            self.axiom.to_string(),
            status,
            self.checked,
            self.vacuous,
            self.failed
        );
        if self.uninformative && !self.is_skipped() {
            s.push_str("  [uninformative]");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(i: usize) -> Witness {
        Witness {
            index: i,
            points: vec![],
            scales: vec![],
            values: vec![],
            detail: String::new(),
        }
    }

    #[test]
    fn first_failure_is_witness() {
        let r = AxiomReport::from_outcomes(
            Axiom::SelfDistance,
            vec![Outcome::Checked, Outcome::Failed(w(1)), Outcome::Failed(w(2))],
        );
        assert_eq!(r.failed, 2);
        assert_eq!(r.checked, 3);
        assert_eq!(r.witness().unwrap().index, 1);
    }

    #[test]
    fn all_vacuous_is_uninformative() {
        let r = AxiomReport::from_outcomes(Axiom::WeakTriangle, vec![Outcome::Vacuous; 4]);
        assert!(r.passed());
        assert!(r.uninformative);
        assert_eq!(r.vacuous, 4);
    }
}
