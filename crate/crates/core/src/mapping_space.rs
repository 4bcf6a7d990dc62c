// SPDX-License-Identifier: Apache-2.0

//! Piecewise-linear maps `ℝ → ℝ` with the windowed sup distances
//! `d_r(f, g) = sup_{|x| ≤ r} |f(x) - g(x)|`, and sampled checks that these
//! neighborhoods match the compact-open topology.

use std::path::Path;

use num_traits::{One, Signed, Zero};

use crate::distance::{ExtendedDistance, Scale};
use crate::error::{Error, Result};
use crate::family::{audit_full_triangle, DeclaredProperties, MetricFamily, TriangleMode};
use crate::number::{display_q, parse_q, Q};
use crate::report::{Axiom, AxiomReport, Outcome, Witness};

/// Linear interpolation through the breakpoints, constant outside them.
#[derive(Debug, Clone, PartialEq)]
pub struct PlMap {
    xs: Vec<Q>,
    ys: Vec<Q>,
}

impl PlMap {
    pub fn new(points: Vec<(Q, Q)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a PL map needs at least one breakpoint".into()));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        let (xs, ys) = points.into_iter().unzip();
        Ok(PlMap { xs, ys })
    }

    pub fn constant(c: Q) -> Self {
        PlMap {
            xs: vec![Q::zero()],
            ys: vec![c],
        }
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.xs
    }

    pub fn values(&self) -> &[Q] {
        &self.ys
    }

    pub fn eval(&self, x: &Q) -> Q {
        let n = self.xs.len();
        if x <= &self.xs[0] {
            return self.ys[0].clone();
        }
        if x >= &self.xs[n - 1] {
            return self.ys[n - 1].clone();
        }
        let i = self.xs.partition_point(|b| b <= x) - 1;
        let (x0, x1) = (&self.xs[i], &self.xs[i + 1]);
        let (y0, y1) = (&self.ys[i], &self.ys[i + 1]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Exact `(min, max)` of the map on `[a, b]`.
    pub fn range_on(&self, a: &Q, b: &Q) -> (Q, Q) {
        let mut lo = self.eval(a);
        let mut hi = lo.clone();
        for v in self
            .xs
            .iter()
            .filter(|x| *x > a && *x < b)
            .map(|x| self.eval(x))
            .chain(std::iter::once(self.eval(b)))
        {
            if v < lo {
                lo = v.clone();
            }
            if v > hi {
                hi = v;
            }
        }
        (lo, hi)
    }

    pub fn describe(&self) -> String {
        let pts: Vec<String> = self
            .xs
            .iter()
            .zip(&self.ys)
            .map(|(x, y)| format!("({}, {})", display_q(x), display_q(y)))
            .collect();
        format!("pl[{}]", pts.join(" "))
    }
}

/// Lines `x y` with rational coordinates, sorted by `x`; `#` starts a comment.
pub fn parse_pl(text: &str) -> Result<PlMap> {
    let mut pts = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 2 {
            return Err(Error::Parse(format!("line {}: expected `x y`", n + 1)));
        }
        pts.push((parse_q(f[0])?, parse_q(f[1])?));
    }
    PlMap::new(pts)
}

pub fn read_pl(path: impl AsRef<Path>) -> Result<PlMap> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_pl(&text)
}

/// `sup_{|x| ≤ r} |f(x) - g(x)|`, attained at a breakpoint inside the window
/// or at `±r`.
pub fn dr_sup(f: &PlMap, g: &PlMap, r: &Q) -> Result<ExtendedDistance<Q>> {
    if !r.is_positive() {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let lo = -r;
    let mut best = Q::zero();
    for x in f
        .xs
        .iter()
        .chain(&g.xs)
        .filter(|x| **x > lo && *x < r)
        .chain([&lo, r])
    {
        let d = (f.eval(x) - g.eval(x)).abs();
        if d > best {
            best = d;
        }
    }
    Ok(ExtendedDistance::Finite(best))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MappingFamily;

impl MetricFamily for MappingFamily {
    type Point = PlMap;
    type Value = Q;

    fn distance(&self, x: &PlMap, y: &PlMap, r: &Scale<Q>) -> Result<ExtendedDistance<Q>> {
        dr_sup(x, y, r.get())
    }

    fn declared(&self) -> DeclaredProperties {
        DeclaredProperties {
            symmetric: true,
            triangle: TriangleMode::Full,
            nondegenerate: true,
        }
    }

    fn describe(&self, x: &PlMap) -> String {
        x.describe()
    }
}

pub fn audit_mapping_full_triangle(
    triples: &[(PlMap, PlMap, PlMap)],
    r_grid: &[Scale<Q>],
) -> Result<AxiomReport> {
    audit_full_triangle(&MappingFamily, triples, r_grid)
}

/// Closed `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedInterval {
    pub lo: Q,
    pub hi: Q,
}

/// Open `(lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenInterval {
    pub lo: Q,
    pub hi: Q,
}

impl ClosedInterval {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument("empty closed interval".into()));
        }
        Ok(ClosedInterval { lo, hi })
    }
}

impl OpenInterval {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidArgument("empty open interval".into()));
        }
        Ok(OpenInterval { lo, hi })
    }
}

/// `g(K) ⊆ U`.
pub fn maps_into(g: &PlMap, k: &ClosedInterval, u: &OpenInterval) -> bool {
    let (lo, hi) = g.range_on(&k.lo, &k.hi);
    lo > u.lo && hi < u.hi
}

#[derive(Debug, Clone)]
pub struct CompactOpenRun {
    pub r: Q,
    pub eps: Q,
    pub boxes: Vec<(ClosedInterval, OpenInterval)>,
    pub report: AxiomReport,
}

/// `N_{r,ε}(f) ⊆ {g : g(K) ⊆ U}` with `r` covering `K` and `ε` half the gap
/// between `f(K)` and the complement of `U`.
pub fn compact_open_witness_forward(
    f: &PlMap,
    k: &ClosedInterval,
    u: &OpenInterval,
    sample: &[PlMap],
) -> Result<CompactOpenRun> {
    let (lo, hi) = f.range_on(&k.lo, &k.hi);
    if !(lo > u.lo && hi < u.hi) {
        return Err(Error::Precondition(format!(
            "f(K) = [{}, {}] is not inside ({}, {})",
            display_q(&lo),
            display_q(&hi),
            display_q(&u.lo),
            display_q(&u.hi)
        )));
    }
    let margin = (&lo - &u.lo).min(&u.hi - &hi);
    let eps = margin / Q::from_integer(2.into());
    let mut r = k.lo.abs().max(k.hi.abs());
    if r.is_zero() {
        r = Q::one();
    }
    let mut outcomes = Vec::with_capacity(sample.len());
    for (i, g) in sample.iter().enumerate() {
        let d = dr_sup(f, g, &r)?;
        if !d.lt(&eps) {
            outcomes.push(Outcome::Vacuous);
        } else if maps_into(g, k, u) {
            outcomes.push(Outcome::Checked);
        } else {
            outcomes.push(Outcome::Failed(Witness {
                index: i,
                points: vec![f.describe(), g.describe()],
                scales: vec![display_q(&r)],
                values: vec![d.render()],
                detail: format!("d_r = {} < {} but g(K) leaves U", d, display_q(&eps)),
            }));
        }
    }
    Ok(CompactOpenRun {
        r,
        eps,
        boxes: vec![(k.clone(), u.clone())],
        report: AxiomReport::from_outcomes(Axiom::CompactOpenForward, outcomes),
    })
}

/// Cover of `[-r, r]` by closed pieces on which `f` moves by at most `ε/4`,
/// each paired with the open `ε/2`-ball around `f`'s value at its left end.
pub fn compact_open_boxes(f: &PlMap, r: &Q, eps: &Q) -> Vec<(ClosedInterval, OpenInterval)> {
    let quarter = eps / Q::from_integer(4.into());
    let half = eps / Q::from_integer(2.into());
    let lo = -r;
    let mut cuts: Vec<Q> = vec![lo.clone()];
    cuts.extend(f.xs.iter().filter(|x| **x > lo && *x < r).cloned());
    cuts.push(r.clone());
    let mut boxes = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let rise = (f.eval(b) - f.eval(a)).abs();
        let pieces = (&rise / &quarter).ceil().to_integer().max(1.into());
        let step = (b - a) / Q::from_integer(pieces.clone());
        let mut left = a.clone();
        let mut i = num_bigint::BigInt::zero();
        while i < pieces {
            i += 1;
            let right = if i == pieces { b.clone() } else { &left + &step };
            let c = f.eval(&left);
            boxes.push((
                ClosedInterval {
                    lo: left.clone(),
                    hi: right.clone(),
                },
                OpenInterval {
                    lo: &c - &half,
                    hi: &c + &half,
                },
            ));
            left = right;
        }
    }
    boxes
}

/// `∩ W_i ⊆ N_{r,ε}(f)` for the boxes of [`compact_open_boxes`]. The check is
/// strict: members of every box must satisfy `d_r(f, g) < ε`.
pub fn compact_open_witness_backward(
    f: &PlMap,
    r: &Q,
    eps: &Q,
    sample: &[PlMap],
) -> Result<CompactOpenRun> {
    if !eps.is_positive() || !r.is_positive() {
        return Err(Error::InvalidArgument("r and ε must be positive".into()));
    }
    let boxes = compact_open_boxes(f, r, eps);
    let mut outcomes = Vec::with_capacity(sample.len());
    for (i, g) in sample.iter().enumerate() {
        if !boxes.iter().all(|(k, u)| maps_into(g, k, u)) {
            outcomes.push(Outcome::Vacuous);
            continue;
        }
        let d = dr_sup(f, g, r)?;
        outcomes.push(if d.lt(eps) {
            Outcome::Checked
        } else {
            Outcome::Failed(Witness {
                index: i,
                points: vec![f.describe(), g.describe()],
                scales: vec![display_q(r)],
                values: vec![d.render()],
                detail: format!("g in every box but d_r = {} ≥ {}", d, display_q(eps)),
            })
        });
    }
    Ok(CompactOpenRun {
        r: r.clone(),
        eps: eps.clone(),
        boxes,
        report: AxiomReport::from_outcomes(Axiom::CompactOpenBackward, outcomes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{q, qi};

    fn line() -> PlMap {
        PlMap::new(vec![(qi(-10), qi(-10)), (qi(10), qi(10))]).unwrap()
    }

    #[test]
    fn eval_and_extrapolation() {
        let f = PlMap::new(vec![(qi(0), qi(0)), (qi(2), qi(4))]).unwrap();
        assert_eq!(f.eval(&qi(1)), qi(2));
        assert_eq!(f.eval(&qi(-5)), qi(0));
        assert_eq!(f.eval(&qi(7)), qi(4));
        assert_eq!(f.eval(&q(1, 3)), q(2, 3));
    }

    #[test]
    fn sup_examples() {
        let zero = PlMap::constant(qi(0));
        assert_eq!(dr_sup(&zero, &zero, &qi(3)).unwrap(), ExtendedDistance::Finite(qi(0)));
        let c = PlMap::constant(q(-5, 2));
        for r in [1, 7, 100] {
            assert_eq!(dr_sup(&zero, &c, &qi(r)).unwrap(), ExtendedDistance::Finite(q(5, 2)));
        }
        assert_eq!(dr_sup(&zero, &line(), &qi(2)).unwrap(), ExtendedDistance::Finite(qi(2)));
        assert_eq!(dr_sup(&zero, &line(), &qi(50)).unwrap(), ExtendedDistance::Finite(qi(10)));
    }

    #[test]
    fn interior_breakpoint_sup() {
        let tent = PlMap::new(vec![(qi(-1), qi(0)), (qi(0), qi(3)), (qi(1), qi(0))]).unwrap();
        let zero = PlMap::constant(qi(0));
        assert_eq!(dr_sup(&zero, &tent, &qi(5)).unwrap(), ExtendedDistance::Finite(qi(3)));
        assert_eq!(dr_sup(&zero, &tent, &q(1, 2)).unwrap(), ExtendedDistance::Finite(qi(3)));
    }

    #[test]
    fn parse_rejects_unsorted() {
        assert!(parse_pl("0 0\n1 1\n").is_ok());
        assert!(parse_pl("1 0\n0 1\n").is_err());
        assert!(parse_pl("# nothing\n").is_err());
        assert!(parse_pl("1/2 3\n").is_ok());
    }

    #[test]
    fn forward_examples() {
        let f = PlMap::constant(qi(0));
        let k = ClosedInterval::new(qi(-1), qi(1)).unwrap();
        let u = OpenInterval::new(qi(-1), qi(1)).unwrap();
        let sample = vec![
            PlMap::constant(q(1, 4)),
            f.clone(),
            PlMap::constant(q(3, 4)),
        ];
        let run = compact_open_witness_forward(&f, &k, &u, &sample).unwrap();
        assert_eq!(run.eps, q(1, 2));
        assert_eq!(run.r, qi(1));
        assert!(run.report.passed());
        assert_eq!((run.report.checked, run.report.vacuous), (2, 1));
        let bad = OpenInterval::new(qi(1), qi(2)).unwrap();
        assert!(matches!(
            compact_open_witness_forward(&f, &k, &bad, &sample),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn backward_examples() {
        let f = PlMap::constant(qi(0));
        let sample = vec![f.clone(), PlMap::constant(q(1, 4)), PlMap::constant(qi(2))];
        let run = compact_open_witness_backward(&f, &qi(3), &qi(1), &sample).unwrap();
        assert!(run.report.passed());
        assert_eq!((run.report.checked, run.report.vacuous), (2, 1));
    }

    #[test]
    fn boxes_control_variation() {
        let f = line();
        let eps = q(1, 3);
        let boxes = compact_open_boxes(&f, &qi(2), &eps);
        assert_eq!(boxes.first().unwrap().0.lo, qi(-2));
        assert_eq!(boxes.last().unwrap().0.hi, qi(2));
        for (k, u) in &boxes {
            assert!(maps_into(&f, k, u));
            let (lo, hi) = f.range_on(&k.lo, &k.hi);
            assert!(&hi - &lo <= &eps / qi(4));
        }
    }
}
