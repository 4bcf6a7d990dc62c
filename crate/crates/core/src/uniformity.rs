// SPDX-License-Identifier: Apache-2.0

//! Entourages `U_{r,ε} = {(x, y) : d_r(x, y) < ε}` restricted to a finite
//! sample, as dense boolean matrices.

use std::fmt;

use crate::distance::Scale;
use crate::error::{Error, Result};
use crate::exec;
use crate::family::MetricFamily;
use crate::number::Scalar;
use crate::report::{Axiom, AxiomReport, Outcome, Witness};

/// Distinct points indexed by position.
#[derive(Debug, Clone)]
pub struct FiniteSample<P> {
    points: Vec<P>,
}

impl<P: PartialEq> FiniteSample<P> {
    /// Rejects duplicates under the point type's `PartialEq`.
    pub fn new(points: Vec<P>) -> Result<Self> {
        for i in 0..points.len() {
            if points[..i].contains(&points[i]) {
                return Err(Error::InvalidArgument(format!(
                    "sample point {i} duplicates an earlier point"
                )));
            }
        }
        Ok(FiniteSample { points })
    }
}

impl<P> FiniteSample<P> {
    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    /// The diagonal `Δ`.
    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!("pair ({i}, {j}) outside size {n}")));
            }
            r.set(i, j, true);
        }
        Ok(r)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                r.bits[i * n + j] = f(i, j);
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn contains_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    fn same_size(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// First pair in `self` missing from `other`, in row-major order.
    pub fn first_outside(&self, other: &Relation) -> Result<Option<(usize, usize)>> {
        self.same_size(other)?;
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .position(|(a, b)| *a && !*b)
            .map(|p| (p / self.n, p % self.n)))
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        Ok(self.first_outside(other)?.is_none())
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_size(other)?;
        Ok(Relation {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect(),
        })
    }

    /// `U ∘ V = {(x, z) : ∃y, (x, y) ∈ U and (y, z) ∈ V}`.
    pub fn compose(&self, v: &Relation) -> Result<Relation> {
        self.same_size(v)?;
        let n = self.n;
        let rows = exec::map_range(n, |i| {
            let mut row = vec![false; n];
            for k in 0..n {
                if self.get(i, k) {
                    for (j, slot) in row.iter_mut().enumerate() {
                        *slot |= v.get(k, j);
                    }
                }
            }
            row
        });
        Ok(Relation {
            n,
            bits: rows.into_iter().flatten().collect(),
        })
    }

    /// Some `y` with `(i, y) ∈ self` and `(y, j) ∈ v`.
    pub fn middle(&self, v: &Relation, i: usize, j: usize) -> Option<usize> {
        (0..self.n).find(|&k| self.get(i, k) && v.get(k, j))
    }

    /// `U^{-1}`, the transpose.
    pub fn invert(&self) -> Relation {
        Relation::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Header line `relation size=<n>`, then `i j` per member pair.
    pub fn dump(&self) -> String {
        let mut s = format!("relation size={}\n", self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    s.push_str(&format!("{i} {j}\n"));
                }
            }
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Relation> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty relation dump".into()))?;
        let n: usize = header
            .trim()
            .strip_prefix("relation size=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad relation header `{header}`")))?;
        let mut pairs = Vec::new();
        for l in lines {
            let mut it = l.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) => pairs.push((i, j)),
                _ => return Err(Error::Parse(format!("bad relation line `{l}`"))),
            }
        }
        Relation::from_pairs(n, &pairs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// `U_{r,ε}` on the sample: entry `(i, j)` iff `d_r(x_i, x_j) < ε`.
pub fn entourage_matrix<F: MetricFamily>(
    fam: &F,
    sample: &[F::Point],
    r: &Scale<F::Value>,
    eps: &F::Value,
) -> Result<Relation> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("ε must be positive".into()));
    }
    let n = sample.len();
    let bits = exec::map_range(n * n, |p| {
        let (i, j) = (p / n, p % n);
        Ok(fam.distance(&sample[i], &sample[j], r)?.lt(eps))
    })
    .into_iter()
    .collect::<Result<Vec<bool>>>()?;
    Ok(Relation { n, bits })
}

/// `(3r, min{ε/2, r})`.
pub fn half_step<N: Scalar>(r: &N, eps: &N) -> (N, N) {
    let three = N::from_ratio(3, 1);
    (three * r.clone(), N::min_of(&eps.half(), r))
}

/// `V ∘ V ⊆ U` with `U = U_{r,ε}` and `V` at the half-step scales.
pub fn verify_half_step<F: MetricFamily>(
    fam: &F,
    sample: &[F::Point],
    r: &Scale<F::Value>,
    eps: &F::Value,
) -> Result<AxiomReport> {
    let (rp, ep) = half_step(r.get(), eps);
    let u = entourage_matrix(fam, sample, r, eps)?;
    let v = entourage_matrix(fam, sample, &Scale::new(rp.clone())?, &ep)?;
    let vv = v.compose(&v)?;
    let n = sample.len();
    let mut outcomes = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            outcomes.push(if !vv.get(i, j) {
                Outcome::Vacuous
            } else if u.get(i, j) {
                Outcome::Checked
            } else {
                let k = v.middle(&v, i, j).expect("composed pair has a middle");
                Outcome::Failed(Witness {
                    index: i * n + j,
                    points: vec![
                        fam.describe(&sample[i]),
                        fam.describe(&sample[k]),
                        fam.describe(&sample[j]),
                    ],
                    scales: vec![r.get().render(), rp.render()],
                    values: vec![eps.render(), ep.render()],
                    detail: format!("({i}, {j}) in V∘V via {k} but not in U"),
                })
            });
        }
    }
    Ok(AxiomReport::from_outcomes(Axiom::HalfStep, outcomes).with_note(format!(
        "r' = {}, eps' = {}",
        rp.render(),
        ep.render()
    )))
}

/// `U_{r1+r2, min{ε1, ε2}} ⊆ U_{r1,ε1} ∩ U_{r2,ε2}`.
pub fn verify_intersection_scale<F: MetricFamily>(
    fam: &F,
    sample: &[F::Point],
    (r1, e1): (&Scale<F::Value>, &F::Value),
    (r2, e2): (&Scale<F::Value>, &F::Value),
) -> Result<AxiomReport> {
    let left = entourage_matrix(fam, sample, &r1.plus(r2), &F::Value::min_of(e1, e2))?;
    let right = entourage_matrix(fam, sample, r1, e1)?
        .intersection(&entourage_matrix(fam, sample, r2, e2)?)?;
    let n = sample.len();
    let mut outcomes = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            outcomes.push(if !left.get(i, j) {
                Outcome::Vacuous
            } else if right.get(i, j) {
                Outcome::Checked
            } else {
                Outcome::Failed(Witness {
                    index: i * n + j,
                    points: vec![fam.describe(&sample[i]), fam.describe(&sample[j])],
                    scales: vec![r1.get().render(), r2.get().render()],
                    values: vec![e1.render(), e2.render()],
                    detail: format!("({i}, {j}) in the combined entourage only"),
                })
            });
        }
    }
    Ok(AxiomReport::from_outcomes(Axiom::IntersectionScale, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{q, qi, Q};
    use crate::tiling::{Tiling1D, TilingFamily};

    fn scale(n: i64, d: i64) -> Scale<Q> {
        Scale::new(q(n, d)).unwrap()
    }

    #[test]
    fn half_step_examples() {
        assert_eq!(half_step(&qi(1), &q(1, 2)), (qi(3), q(1, 4)));
        assert_eq!(half_step(&qi(1), &qi(4)), (qi(3), qi(1)));
        assert_eq!(half_step(&qi(2), &qi(2)), (qi(6), qi(1)));
    }

    #[test]
    fn identity_composition() {
        let u = Relation::from_pairs(3, &[(0, 1), (1, 2), (2, 2)]).unwrap();
        let d = Relation::identity(3);
        assert_eq!(d.compose(&u).unwrap(), u);
        assert_eq!(u.compose(&d).unwrap(), u);
        assert_eq!(d.invert(), d);
        assert_eq!(u.invert().invert(), u);
    }

    #[test]
    fn chain_composition() {
        let u = Relation::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let uu = u.compose(&u).unwrap();
        assert_eq!(uu, Relation::from_pairs(3, &[(0, 2)]).unwrap());
        let with_diag = u.intersection(&u).unwrap();
        let mut refl = with_diag.clone();
        for i in 0..3 {
            refl.set(i, i, true);
        }
        let rr = refl.compose(&refl).unwrap();
        assert!(rr.get(0, 2) && rr.get(0, 1) && rr.get(1, 2) && rr.contains_diagonal());
        assert!(!rr.get(2, 0));
    }

    #[test]
    fn composition_orientation() {
        let u = Relation::from_pairs(3, &[(0, 1)]).unwrap();
        let v = Relation::from_pairs(3, &[(1, 2)]).unwrap();
        assert!(u.compose(&v).unwrap().get(0, 2));
        assert_eq!(v.compose(&u).unwrap().count(), 0);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Relation::identity(2);
        let b = Relation::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dump_roundtrip() {
        let u = Relation::from_pairs(4, &[(0, 1), (3, 2), (2, 2)]).unwrap();
        let text = u.dump();
        assert!(text.starts_with("relation size=4\n0 1\n"));
        assert_eq!(Relation::parse_dump(&text).unwrap(), u);
    }

    #[test]
    fn tiling_entourage_example() {
        let t = Tiling1D::example_ab();
        let pts = vec![t.clone(), t.translate(&q(1, 10)), t.translate(&qi(2))];
        let sample = FiniteSample::new(pts).unwrap();
        let fam = TilingFamily::new(qi(4)).unwrap();
        let u = entourage_matrix(&fam, sample.points(), &scale(5, 1), &q(1, 2)).unwrap();
        assert!(u.contains_diagonal());
        assert!(u.get(0, 1) && u.get(0, 2) && u.get(1, 2));
        let tight = entourage_matrix(&fam, sample.points(), &scale(5, 1), &q(1, 20)).unwrap();
        assert!(!tight.get(0, 1));
    }

    #[test]
    fn duplicates_rejected() {
        let t = Tiling1D::example_ab();
        assert!(FiniteSample::new(vec![t.clone(), t]).is_err());
    }

    #[test]
    fn half_step_on_translates() {
        let t = Tiling1D::example_ab();
        let pts: Vec<Tiling1D> = (0..8).map(|k| t.translate(&q(k, 16))).collect();
        let fam = TilingFamily::new(qi(4)).unwrap();
        let rep = verify_half_step(&fam, &pts, &scale(1, 1), &q(1, 2)).unwrap();
        assert!(rep.passed());
        let rep = verify_half_step(&fam, &pts[..1], &scale(1, 1), &q(1, 2)).unwrap();
        assert!(rep.passed());
        let rep =
            verify_intersection_scale(&fam, &pts, (&scale(1, 1), &q(1, 2)), (&scale(2, 1), &q(1, 4)))
                .unwrap();
        assert!(rep.passed());
    }
}
