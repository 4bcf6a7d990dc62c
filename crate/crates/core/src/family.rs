// SPDX-License-Identifier: Apache-2.0

//! Scale-indexed distance families, their neighborhoods, and the audit
//! engines that check the family axioms on finite samples.
//!
//! Every existential in the axioms ("there exists δ > 0 ...") is searched over
//! a finite grid. A search that comes up empty is reported as *not found on
//! grid*, never as a disproof.

use serde::Serialize;

use crate::distance::{ArithmeticMode, ExtendedDistance, Scale};
use crate::error::{Error, Result};
use crate::exec;
use crate::number::Scalar;
use crate::report::{Axiom, AxiomReport, Outcome, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleMode {
    /// Guard uses `d_{r1+r2}(x, y) < r3`.
    Weak,
    /// Guard uses `d_{r1+r2+r3}(x, y) < r3`.
    Weaker,
    Full,
}

/// Claims a family makes about itself. Audits check them; nothing trusts them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeclaredProperties {
    pub symmetric: bool,
    pub triangle: TriangleMode,
    pub nondegenerate: bool,
}

/// A point set together with a scale-indexed evaluator `(x, y, r) ↦ d_r(x, y)`.
///
/// The evaluator must be total on every point the caller hands it and must
/// not depend on anything but its arguments.
pub trait MetricFamily: Sync {
    type Point: Clone + Send + Sync;
    type Value: Scalar;

    fn distance(
        &self,
        x: &Self::Point,
        y: &Self::Point,
        r: &Scale<Self::Value>,
    ) -> Result<ExtendedDistance<Self::Value>>;

    fn declared(&self) -> DeclaredProperties;

    fn mode(&self) -> ArithmeticMode {
        ArithmeticMode::Exact
    }

    fn describe(&self, x: &Self::Point) -> String;
}

/// `N_{r,ε}(center) = { y : d_r(center, y) < ε }`.
#[derive(Clone, Debug)]
pub struct NeighborhoodSpec<P, N> {
    pub center: P,
    pub r: Scale<N>,
    pub eps: N,
}

impl<P, N: Scalar> NeighborhoodSpec<P, N> {
    pub fn new(center: P, r: Scale<N>, eps: N) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "neighborhood radius must be positive, got {}",
                eps.render()
            )));
        }
        Ok(NeighborhoodSpec { center, r, eps })
    }
}

pub fn neighborhood_contains<F: MetricFamily>(
    fam: &F,
    n: &NeighborhoodSpec<F::Point, F::Value>,
    y: &F::Point,
) -> Result<bool> {
    Ok(fam.distance(&n.center, y, &n.r)?.lt(&n.eps))
}

/// `{2^0, 2^-1, …, 2^-20}`, descending.
pub fn default_delta_grid<N: Scalar>() -> Vec<N> {
    (0..=20).map(|k| N::int_pow(2, -k)).collect()
}

fn scales_str<N: Scalar>(scales: &[&Scale<N>]) -> Vec<String> {
    scales.iter().map(|s| s.get().render()).collect()
}

fn values_str<N: Scalar>(values: &[&ExtendedDistance<N>]) -> Vec<String> {
    values.iter().map(|v| v.render()).collect()
}

fn fold(axiom: Axiom, outcomes: Vec<Result<Outcome>>) -> Result<AxiomReport> {
    let outcomes: Vec<Outcome> = outcomes.into_iter().collect::<Result<_>>()?;
    Ok(AxiomReport::from_outcomes(axiom, outcomes))
}

fn fold_nested(axiom: Axiom, outcomes: Vec<Result<Vec<Outcome>>>) -> Result<AxiomReport> {
    let outcomes: Vec<Vec<Outcome>> = outcomes.into_iter().collect::<Result<_>>()?;
    Ok(AxiomReport::from_outcomes(axiom, outcomes.into_iter().flatten()))
}

pub fn audit_self_distance<F: MetricFamily>(
    fam: &F,
    sample: &[F::Point],
    r_grid: &[Scale<F::Value>],
) -> Result<AxiomReport> {
    if sample.is_empty() || r_grid.is_empty() {
        return Ok(AxiomReport::skipped(Axiom::SelfDistance, "empty sample or scale grid"));
    }
    let mode = fam.mode();
    let outcomes = exec::map_range(sample.len(), |i| {
        let x = &sample[i];
        for r in r_grid {
            let d = fam.distance(x, x, r)?;
            if !mode.is_zero(&d) {
                return Ok(Outcome::Failed(Witness {
                    index: i,
                    points: vec![fam.describe(x)],
                    scales: scales_str(&[r]),
                    values: values_str(&[&d]),
                    detail: format!("d_r(x, x) = {} at r = {}", d, r.get().render()),
                }));
            }
        }
        Ok(Outcome::Checked)
    });
    fold(Axiom::SelfDistance, outcomes)
}

pub fn audit_monotone_in_r<F: MetricFamily>(
    fam: &F,
    pairs: &[(F::Point, F::Point)],
    r_grid: &[Scale<F::Value>],
) -> Result<AxiomReport> {
    if r_grid.windows(2).any(|w| w[0] > w[1]) {
        return Ok(AxiomReport::skipped(
            Axiom::MonotoneInR,
            "scale grid is not sorted ascending",
        ));
    }
    if pairs.is_empty() || r_grid.is_empty() {
        return Ok(AxiomReport::skipped(Axiom::MonotoneInR, "no pairs or empty scale grid"));
    }
    let mode = fam.mode();
    let outcomes = exec::map_range(pairs.len(), |i| {
        let (x, y) = &pairs[i];
        let values = r_grid
            .iter()
            .map(|r| fam.distance(x, y, r))
            .collect::<Result<Vec<_>>>()?;
        for k in 1..values.len() {
            if !mode.le(&values[k - 1], &values[k]) {
                return Ok(Outcome::Failed(Witness {
                    index: i,
                    points: vec![fam.describe(x), fam.describe(y)],
                    scales: scales_str(&[&r_grid[k - 1], &r_grid[k]]),
                    values: values_str(&[&values[k - 1], &values[k]]),
                    detail: format!("d_r1 = {} > d_r2 = {}", values[k - 1], values[k]),
                }));
            }
        }
        Ok(Outcome::Checked)
    });
    fold(Axiom::MonotoneInR, outcomes)
}

/// Searches `delta_grid` in the given order for `δ` with `d_{r+δ}(x, y) < ε`.
pub fn find_usc_delta<F: MetricFamily>(
    fam: &F,
    x: &F::Point,
    y: &F::Point,
    r: &Scale<F::Value>,
    eps: &F::Value,
    delta_grid: &[F::Value],
) -> Result<Option<F::Value>> {
    for delta in delta_grid {
        let shifted = r.plus_value(delta)?;
        if fam.distance(x, y, &shifted)?.lt(eps) {
            return Ok(Some(delta.clone()));
        }
    }
    Ok(None)
}

/// Upper semicontinuity at a single `(x, y, r, ε)`. Skipped unless
/// `d_r(x, y) < ε`; a failure means only that no grid `δ` worked.
pub fn audit_usc_in_r<F: MetricFamily>(
    fam: &F,
    x: &F::Point,
    y: &F::Point,
    r: &Scale<F::Value>,
    eps: &F::Value,
    delta_grid: &[F::Value],
) -> Result<AxiomReport> {
    let base = fam.distance(x, y, r)?;
    if !base.lt(eps) {
        return Ok(AxiomReport::skipped(
            Axiom::UpperSemicontinuity,
            format!("d_r(x, y) = {} is not below eps = {}", base, eps.render()),
        ));
    }
    Ok(match find_usc_delta(fam, x, y, r, eps, delta_grid)? {
        Some(delta) => AxiomReport::from_outcomes(Axiom::UpperSemicontinuity, [Outcome::Checked])
            .with_note(format!("delta = {}", delta.render())),
        None => AxiomReport::from_outcomes(
            Axiom::UpperSemicontinuity,
            [Outcome::Failed(Witness {
                index: 0,
                points: vec![fam.describe(x), fam.describe(y)],
                scales: scales_str(&[r]),
                values: values_str(&[&base]),
                detail: format!(
                    "no delta on a grid of {} values gives d_(r+delta) < {} (not found on grid)",
                    delta_grid.len(),
                    eps.render()
                ),
            })],
        )
        .with_note("bounded search: failure means not found on grid"),
    })
}

/// Batched upper-semicontinuity search. For every pair and scale with finite
/// `d_r(x, y)`, uses `ε = d_r(x, y) + margin` and searches `delta_grid`.
/// Pairs at infinite distance count as vacuous.
pub fn audit_usc_batch<F: MetricFamily>(
    fam: &F,
    pairs: &[(F::Point, F::Point)],
    r_grid: &[Scale<F::Value>],
    margin: &F::Value,
    delta_grid: &[F::Value],
) -> Result<AxiomReport> {
    if pairs.is_empty() || r_grid.is_empty() {
        return Ok(AxiomReport::skipped(
            Axiom::UpperSemicontinuity,
            "no pairs or empty scale grid",
        ));
    }
    let outcomes = exec::map_range(pairs.len(), |i| {
        let (x, y) = &pairs[i];
        let mut out = Vec::with_capacity(r_grid.len());
        for r in r_grid {
            let base = fam.distance(x, y, r)?;
            let Some(b) = base.as_finite() else {
                out.push(Outcome::Vacuous);
                continue;
            };
            let eps = b.clone() + margin.clone();
            out.push(match find_usc_delta(fam, x, y, r, &eps, delta_grid)? {
                Some(_) => Outcome::Checked,
                None => Outcome::Failed(Witness {
                    index: i,
                    points: vec![fam.describe(x), fam.describe(y)],
                    scales: scales_str(&[r]),
                    values: values_str(&[&base]),
                    detail: format!("not found on grid for eps = {}", eps.render()),
                }),
            });
        }
        Ok(out)
    });
    Ok(fold_nested(Axiom::UpperSemicontinuity, outcomes)?
        .with_note("bounded search: failure means not found on grid"))
}

/// Scale triple `(r1, r2, r3)` for the guarded triangle inequalities.
pub type ScaleTriple<N> = (Scale<N>, Scale<N>, Scale<N>);

fn triangle_audit<F: MetricFamily>(
    fam: &F,
    triples: &[(F::Point, F::Point, F::Point)],
    scales: &[ScaleTriple<F::Value>],
    weaker: bool,
) -> Result<AxiomReport> {
    let axiom = if weaker {
        Axiom::WeakerTriangle
    } else {
        Axiom::WeakTriangle
    };
    if triples.is_empty() || scales.is_empty() {
        return Ok(AxiomReport::skipped(axiom, "no triples or no scale triples"));
    }
    let mode = fam.mode();
    let outcomes = exec::map_range(triples.len(), |i| {
        let (x, y, z) = &triples[i];
        let mut out = Vec::with_capacity(scales.len());
        for (r1, r2, r3) in scales {
            let r12 = r1.plus(r2);
            let r123 = r12.plus(r3);
            let xy = fam.distance(x, y, if weaker { &r123 } else { &r12 })?;
            let yz = fam.distance(y, z, &r123)?;
            if !(xy.lt(r3.get()) && yz.lt(r2.get())) {
                out.push(Outcome::Vacuous);
                continue;
            }
            let xz = fam.distance(x, z, r1)?;
            let rhs = xy.add(&yz);
            out.push(if mode.le(&xz, &rhs) {
                Outcome::Checked
            } else {
                Outcome::Failed(Witness {
                    index: i,
                    points: vec![fam.describe(x), fam.describe(y), fam.describe(z)],
                    scales: scales_str(&[r1, r2, r3]),
                    values: values_str(&[&xz, &xy, &yz]),
                    detail: format!("d_r1(x, z) = {xz} > {xy} + {yz}"),
                })
            });
        }
        Ok(out)
    });
    fold_nested(axiom, outcomes)
}

/// Guarded weak triangle inequality on every `triple × scale-triple`
/// combination. Combinations whose guard fails are tallied as vacuous.
pub fn audit_weak_triangle<F: MetricFamily>(
    fam: &F,
    triples: &[(F::Point, F::Point, F::Point)],
    scales: &[ScaleTriple<F::Value>],
) -> Result<AxiomReport> {
    triangle_audit(fam, triples, scales, false)
}

pub fn audit_weaker_triangle<F: MetricFamily>(
    fam: &F,
    triples: &[(F::Point, F::Point, F::Point)],
    scales: &[ScaleTriple<F::Value>],
) -> Result<AxiomReport> {
    triangle_audit(fam, triples, scales, true)
}

/// Unguarded `d_r(x, z) ≤ d_r(x, y) + d_r(y, z)` at every grid scale.
pub fn audit_full_triangle<F: MetricFamily>(
    fam: &F,
    triples: &[(F::Point, F::Point, F::Point)],
    r_grid: &[Scale<F::Value>],
) -> Result<AxiomReport> {
    if triples.is_empty() || r_grid.is_empty() {
        return Ok(AxiomReport::skipped(
            Axiom::FullTriangle,
            "no triples or empty scale grid",
        ));
    }
    let mode = fam.mode();
    let outcomes = exec::map_range(triples.len(), |i| {
        let (x, y, z) = &triples[i];
        for r in r_grid {
            let xz = fam.distance(x, z, r)?;
            let xy = fam.distance(x, y, r)?;
            let yz = fam.distance(y, z, r)?;
            if !mode.le(&xz, &xy.add(&yz)) {
                return Ok(Outcome::Failed(Witness {
                    index: i,
                    points: vec![fam.describe(x), fam.describe(y), fam.describe(z)],
                    scales: scales_str(&[r]),
                    values: values_str(&[&xz, &xy, &yz]),
                    detail: format!("d_r(x, z) = {xz} > {xy} + {yz}"),
                }));
            }
        }
        Ok(Outcome::Checked)
    });
    fold(Axiom::FullTriangle, outcomes)
}

pub fn audit_symmetry<F: MetricFamily>(
    fam: &F,
    pairs: &[(F::Point, F::Point)],
    r_grid: &[Scale<F::Value>],
) -> Result<AxiomReport> {
    if pairs.is_empty() || r_grid.is_empty() {
        return Ok(AxiomReport::skipped(Axiom::Symmetry, "no pairs or empty scale grid"));
    }
    let mode = fam.mode();
    let outcomes = exec::map_range(pairs.len(), |i| {
        let (x, y) = &pairs[i];
        for r in r_grid {
            let xy = fam.distance(x, y, r)?;
            let yx = fam.distance(y, x, r)?;
            if !mode.eq(&xy, &yx) {
                return Ok(Outcome::Failed(Witness {
                    index: i,
                    points: vec![fam.describe(x), fam.describe(y)],
                    scales: scales_str(&[r]),
                    values: values_str(&[&xy, &yx]),
                    detail: format!("d_r(x, y) = {xy} but d_r(y, x) = {yx}"),
                }));
            }
        }
        Ok(Outcome::Checked)
    });
    fold(Axiom::Symmetry, outcomes)
}

/// A neighborhood `N_{r',ε'}(y) ⊆ N_{r,ε}(x)` produced by [`basis_witness`].
#[derive(Clone, Debug, PartialEq)]
pub struct BasisWitness<N> {
    pub delta: N,
    pub eps1: N,
    pub r_prime: Scale<N>,
    pub eps_prime: N,
}

/// Given `y ∈ N_{r,ε}(x)`, searches for `δ` (over `delta_grid`, in order) and
/// `ε₁ ∈ {ε/2, ε/4, …, ε/2^20}` with `d_{r+δ}(x, y) < ε − ε₁`, then returns
/// `ε' = min{δ, ε₁}` and `r' = r + δ + ε − ε₁`.
pub fn basis_witness<F: MetricFamily>(
    fam: &F,
    x: &F::Point,
    y: &F::Point,
    r: &Scale<F::Value>,
    eps: &F::Value,
    delta_grid: &[F::Value],
) -> Result<BasisWitness<F::Value>> {
    let base = fam.distance(x, y, r)?;
    if !base.lt(eps) {
        return Err(Error::Precondition(format!(
            "basis witness needs d_r(x, y) < eps, got {} >= {}",
            base,
            eps.render()
        )));
    }
    let eps1_grid: Vec<F::Value> = (1..=20)
        .map(|k| eps.clone() * F::Value::int_pow(2, -k))
        .collect();
    for delta in delta_grid {
        let shifted = r.plus_value(delta)?;
        let d = fam.distance(x, y, &shifted)?;
        for eps1 in &eps1_grid {
            if d.lt(&(eps.clone() - eps1.clone())) {
                let eps_prime = F::Value::min_of(delta, eps1);
                let r_prime =
                    Scale::new(r.get().clone() + delta.clone() + eps.clone() - eps1.clone())?;
                return Ok(BasisWitness {
                    delta: delta.clone(),
                    eps1: eps1.clone(),
                    r_prime,
                    eps_prime,
                });
            }
        }
    }
    Err(Error::NotFound(format!(
        "no (delta, eps1) pair on the grids ({} x {} values)",
        delta_grid.len(),
        eps1_grid.len()
    )))
}

/// Checks `d_r(x, z) ≤ ε` for every sampled `z` with `d_{r'}(y, z) < ε'`.
pub fn verify_basis_inclusion<F: MetricFamily>(
    fam: &F,
    x: &F::Point,
    y: &F::Point,
    r: &Scale<F::Value>,
    eps: &F::Value,
    witness: &BasisWitness<F::Value>,
    sample: &[F::Point],
) -> Result<AxiomReport> {
    let mode = fam.mode();
    let bound = ExtendedDistance::Finite(eps.clone());
    let outcomes = exec::map_range(sample.len(), |i| {
        let z = &sample[i];
        let yz = fam.distance(y, z, &witness.r_prime)?;
        if !yz.lt(&witness.eps_prime) {
            return Ok(Outcome::Vacuous);
        }
        let xz = fam.distance(x, z, r)?;
        Ok(if mode.le(&xz, &bound) {
            Outcome::Checked
        } else {
            Outcome::Failed(Witness {
                index: i,
                points: vec![fam.describe(x), fam.describe(y), fam.describe(z)],
                scales: scales_str(&[r, &witness.r_prime]),
                values: values_str(&[&xz, &yz]),
                detail: format!("z in N_(r',eps')(y) but d_r(x, z) = {xz} > {}", eps.render()),
            })
        })
    });
    fold(Axiom::BasisInclusion, outcomes)
}

/// Runs the triangle audit matching the family's declared mode.
pub fn audit_declared_triangle<F: MetricFamily>(
    fam: &F,
    triples: &[(F::Point, F::Point, F::Point)],
    scales: &[ScaleTriple<F::Value>],
    r_grid: &[Scale<F::Value>],
) -> Result<AxiomReport> {
    match fam.declared().triangle {
        TriangleMode::Weak => audit_weak_triangle(fam, triples, scales),
        TriangleMode::Weaker => audit_weaker_triangle(fam, triples, scales),
        TriangleMode::Full => audit_full_triangle(fam, triples, r_grid),
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{LineFamily, Twist};
    use super::*;
    use crate::number::{q, qi, Q};

    fn grid(values: &[i64]) -> Vec<Scale<Q>> {
        values.iter().map(|&v| Scale::new(qi(v)).unwrap()).collect()
    }

    #[test]
    fn neighborhood_is_strict_and_contains_center() {
        let fam = LineFamily(Twist::None);
        let n = NeighborhoodSpec::new(qi(0), Scale::new(qi(1)).unwrap(), q(1, 2)).unwrap();
        assert!(neighborhood_contains(&fam, &n, &qi(0)).unwrap());
        assert!(neighborhood_contains(&fam, &n, &q(49, 100)).unwrap());
        assert!(!neighborhood_contains(&fam, &n, &q(1, 2)).unwrap());
        assert!(NeighborhoodSpec::new(qi(0), Scale::new(qi(1)).unwrap(), qi(0)).is_err());
    }

    #[test]
    fn self_distance_counterexample_has_witness() {
        let fam = LineFamily(Twist::SelfIsR);
        let rep = audit_self_distance(&fam, &[qi(3)], &grid(&[2])).unwrap();
        let w = rep.witness().expect("failure witness");
        assert_eq!(w.points, vec!["3"]);
        assert_eq!(w.scales, vec!["2/1"]);
        assert_eq!(w.values, vec!["2/1"]);
        assert!(audit_self_distance(&LineFamily(Twist::None), &[qi(3)], &grid(&[1, 5, 20])).unwrap().passed());
    }

    #[test]
    fn monotone_detects_decreasing_family() {
        let pairs = vec![(qi(0), qi(1))];
        assert!(audit_monotone_in_r(&LineFamily(Twist::Decreasing), &pairs, &grid(&[1, 2])).unwrap().failed());
        assert!(audit_monotone_in_r(&LineFamily(Twist::None), &pairs, &grid(&[1, 2])).unwrap().passed());
        assert!(audit_monotone_in_r(&LineFamily(Twist::None), &pairs, &grid(&[2, 1])).unwrap().is_skipped());
    }

    #[test]
    fn usc_grid_exhaustion_is_reported() {
        let fam = LineFamily(Twist::Step);
        let r = Scale::new(qi(1)).unwrap();
        let rep = audit_usc_in_r(&fam, &qi(0), &qi(1), &r, &q(1, 2), &default_delta_grid()).unwrap();
        assert!(rep.failed());
        assert!(rep.witness().unwrap().detail.contains("not found on grid"));
    }

    #[test]
    fn usc_same_point_uses_largest_delta() {
        let fam = LineFamily(Twist::None);
        let r = Scale::new(qi(1)).unwrap();
        let rep = audit_usc_in_r(&fam, &qi(2), &qi(2), &r, &q(1, 10), &default_delta_grid()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.notes[0], "delta = 1/1");
        let skipped = audit_usc_in_r(&fam, &qi(0), &qi(2), &r, &q(1, 10), &default_delta_grid()).unwrap();
        assert!(skipped.is_skipped());
    }

    #[test]
    fn guard_failure_counts_as_vacuous() {
        let fam = LineFamily(Twist::None);
        let s = (
            Scale::new(qi(1)).unwrap(),
            Scale::new(qi(1)).unwrap(),
            Scale::new(q(1, 10)).unwrap(),
        );
        let rep = audit_weak_triangle(&fam, &[(qi(0), qi(1), qi(2))], &[s]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.vacuous, 1);
        assert!(rep.uninformative);
    }

    #[test]
    fn symmetry_audit_catches_lopsided() {
        let pairs = vec![(qi(0), qi(1))];
        let rep = audit_symmetry(&LineFamily(Twist::Lopsided), &pairs, &grid(&[1])).unwrap();
        assert!(rep.failed());
        assert!(audit_symmetry(&LineFamily(Twist::None), &pairs, &grid(&[1])).unwrap().passed());
    }

    #[test]
    fn basis_witness_same_point() {
        let fam = LineFamily(Twist::None);
        let r = Scale::new(qi(1)).unwrap();
        let w = basis_witness(&fam, &qi(0), &qi(0), &r, &q(1, 2), &default_delta_grid()).unwrap();
        assert_eq!(w.delta, qi(1));
        assert_eq!(w.eps1, q(1, 4));
        let sample: Vec<Q> = (-20..=20).map(|k| q(k, 40)).collect();
        assert!(verify_basis_inclusion(&fam, &qi(0), &qi(0), &r, &q(1, 2), &w, &sample).unwrap().passed());
    }

    #[test]
    fn basis_witness_precondition() {
        let fam = LineFamily(Twist::None);
        let r = Scale::new(qi(1)).unwrap();
        let err = basis_witness(&fam, &qi(0), &qi(1), &r, &q(1, 2), &default_delta_grid());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
