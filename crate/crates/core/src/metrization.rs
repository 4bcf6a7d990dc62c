// SPDX-License-Identifier: Apache-2.0

//! Chain metrization on a finite sample.
//!
//! Levels `W_n = U_{3^{2n}, 3^{-n}}` give a step function `g` (1 outside
//! `W_1`, `2^-k` when the pair sits in `W_1..W_k` but not `W_{k+1}`), and `d`
//! is the cheapest chain of `g`-steps through the sample. Everything is exact:
//! weights are stored as integers in units of `2^-n_max`.
//!
//! Membership can only be tested up to `W_{n_max}`. A pair that survives every
//! level is *saturated*: its `g` is reported as 0 with a flag, and for chain
//! sums it weighs `2^-n_max`, the value `g` takes if the level after
//! `W_{n_max}` is the diagonal. That keeps `½g ≤ d ≤ g` exact for every
//! unsaturated pair.

use std::fmt;

use num_bigint::BigInt;

use crate::distance::Scale;
use crate::error::{Error, Result};
use crate::family::MetricFamily;
use crate::number::{format_q, parse_q, Scalar, Q};
use crate::report::{Axiom, AxiomReport, Outcome, Witness};
use crate::uniformity::{entourage_matrix, Relation};

pub const DEFAULT_N_MAX: usize = 8;

#[derive(Debug, Clone)]
pub struct ChainLevels {
    n_max: usize,
    levels: Vec<Relation>,
}

impl ChainLevels {
    /// From precomputed relations `W_0..W_{n_max}`.
    pub fn from_relations(levels: Vec<Relation>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidArgument("need at least W_0 and W_1".into()));
        }
        let n = levels[0].size();
        if let Some(bad) = levels.iter().find(|w| w.size() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.size(),
            });
        }
        Ok(ChainLevels {
            n_max: levels.len() - 1,
            levels,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn size(&self) -> usize {
        self.levels[0].size()
    }

    pub fn level(&self, n: usize) -> &Relation {
        &self.levels[n]
    }
}

/// `(3^{2n}, 3^{-n})`.
pub fn level_scales<N: Scalar>(n: usize) -> (N, N) {
    (N::int_pow(3, 2 * n as i32), N::int_pow(3, -(n as i32)))
}

pub fn build_levels<F: MetricFamily>(
    fam: &F,
    sample: &[F::Point],
    n_max: usize,
) -> Result<ChainLevels> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let levels = (0..=n_max)
        .map(|n| {
            let (r, eps) = level_scales::<F::Value>(n);
            entourage_matrix(fam, sample, &Scale::new(r)?, &eps)
        })
        .collect::<Result<Vec<_>>>()?;
    ChainLevels::from_relations(levels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GValue {
    Zero,
    /// `2^-k`, `1 ≤ k ≤ n_max - 1`.
    Dyadic(u32),
    One,
    /// In every level through `W_{n_max}`; reported as 0.
    Saturated,
}

impl GValue {
    pub fn value(&self) -> Q {
        match self {
            GValue::Zero | GValue::Saturated => Q::zero(),
            GValue::Dyadic(k) => Q::int_pow(2, -(*k as i32)),
            GValue::One => Q::from_ratio(1, 1),
        }
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self, GValue::Saturated)
    }

    /// Chain weight in units of `2^-n_max`.
    fn units(&self, n_max: usize) -> u128 {
        match self {
            GValue::Zero => 0,
            GValue::Dyadic(k) => 1u128 << (n_max - *k as usize),
            GValue::One => 1u128 << n_max,
            GValue::Saturated => 1,
        }
    }
}

pub fn g_value(levels: &ChainLevels, i: usize, j: usize) -> Result<GValue> {
    if levels.n_max < 2 {
        return Err(Error::Precondition("g needs n_max ≥ 2".into()));
    }
    if i == j {
        return Ok(GValue::Zero);
    }
    let k = (1..=levels.n_max)
        .take_while(|&n| levels.levels[n].get(i, j))
        .count();
    Ok(match k {
        0 => GValue::One,
        k if k == levels.n_max => GValue::Saturated,
        k => GValue::Dyadic(k as u32),
    })
}

#[derive(Debug, Clone)]
pub struct GMatrix {
    n: usize,
    n_max: usize,
    entries: Vec<GValue>,
}

impl GMatrix {
    pub fn build(levels: &ChainLevels) -> Result<Self> {
        let n = levels.size();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(g_value(levels, i, j)?);
            }
        }
        Ok(GMatrix {
            n,
            n_max: levels.n_max,
            entries,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> GValue {
        self.entries[i * self.n + j]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn saturated_count(&self) -> usize {
        self.entries.iter().filter(|g| g.is_saturated()).count()
    }
}

/// Square matrix of exact distances.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMetric {
    n_max: usize,
    n: usize,
    values: Vec<Q>,
}

impl ChainMetric {
    /// A hand-built matrix, row-major.
    pub fn from_rows(n_max: usize, rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        Ok(ChainMetric {
            n_max,
            n,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.values[i * self.n + j]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Header `chain-metric n_max=<k> size=<n>`, then one row of `p/q` per line.
    pub fn dump(&self) -> String {
        let mut s = format!("chain-metric n_max={} size={}\n", self.n_max, self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format_q(self.get(i, j))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let bad = || Error::Parse(format!("bad matrix header `{header}`"));
        let rest = header.trim().strip_prefix("chain-metric ").ok_or_else(bad)?;
        let mut n_max = None;
        let mut n = None;
        for kv in rest.split_whitespace() {
            match kv.split_once('=') {
                Some(("n_max", v)) => n_max = v.parse::<usize>().ok(),
                Some(("size", v)) => n = v.parse::<usize>().ok(),
                _ => return Err(bad()),
            }
        }
        let (n_max, n) = (n_max.ok_or_else(bad)?, n.ok_or_else(bad)?);
        let rows = lines
            .map(|l| l.split_whitespace().map(parse_q).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: rows.len(),
            });
        }
        Self::from_rows(n_max, rows)
    }
}

impl fmt::Display for ChainMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// All-pairs shortest chains over the sample with arc weights `g`
/// (saturated arcs weigh `2^-n_max`).
pub fn chain_metric(levels: &ChainLevels) -> Result<ChainMetric> {
    let g = GMatrix::build(levels)?;
    let n = g.n;
    let mut d: Vec<u128> = g.entries.iter().map(|v| v.units(g.n_max)).collect();
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            for j in 0..n {
                let via = dik + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    let unit = Q::new(BigInt::from(1), BigInt::from(1u128 << g.n_max));
    Ok(ChainMetric {
        n_max: g.n_max,
        n,
        values: d
            .into_iter()
            .map(|u| Q::from_integer(BigInt::from(u)) * &unit)
            .collect(),
    })
}

fn pair_witness(i: usize, j: usize, n: usize, values: Vec<String>, detail: String) -> Witness {
    Witness {
        index: i * n + j,
        points: vec![i.to_string(), j.to_string()],
        scales: Vec::new(),
        values,
        detail,
    }
}

/// `½ g ≤ d ≤ g` on unsaturated pairs; `d ≤ 2^-(n_max-1)` on saturated ones.
pub fn verify_sandwich(levels: &ChainLevels, metric: &ChainMetric) -> Result<AxiomReport> {
    let g = GMatrix::build(levels)?;
    if metric.n != g.n {
        return Err(Error::DimensionMismatch {
            left: g.n,
            right: metric.n,
        });
    }
    let n = g.n;
    let half = Q::from_ratio(1, 2);
    let sat_bound = Q::int_pow(2, -(g.n_max as i32 - 1));
    let mut outcomes = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let gv = g.get(i, j);
            let d = metric.get(i, j);
            let ok = if gv.is_saturated() {
                *d <= sat_bound
            } else {
                let gq = gv.value();
                &gq * &half <= *d && *d <= gq
            };
            outcomes.push(if ok {
                Outcome::Checked
            } else {
                Outcome::Failed(pair_witness(
                    i,
                    j,
                    n,
                    vec![format_q(&gv.value()), format_q(d)],
                    if gv.is_saturated() {
                        format!("saturated pair with d = {} above {}", format_q(d), format_q(&sat_bound))
                    } else {
                        format!("g = {}, d = {}", format_q(&gv.value()), format_q(d))
                    },
                ))
            });
        }
    }
    Ok(AxiomReport::from_outcomes(Axiom::Sandwich, outcomes)
        .with_note(format!("saturated entries: {}", g.saturated_count())))
}

/// `W_{n+1} ∘ W_{n+1} ∘ W_{n+1} ⊆ W_n` for `n = 0..n_max-1`.
pub fn verify_triple_inclusion(levels: &ChainLevels) -> Result<AxiomReport> {
    let n = levels.size();
    let mut outcomes = Vec::new();
    for lv in 0..levels.n_max {
        let w = &levels.levels[lv + 1];
        let www = w.compose(w)?.compose(w)?;
        let target = &levels.levels[lv];
        for i in 0..n {
            for j in 0..n {
                outcomes.push(if !www.get(i, j) {
                    Outcome::Vacuous
                } else if target.get(i, j) {
                    Outcome::Checked
                } else {
                    Outcome::Failed(Witness {
                        index: lv * n * n + i * n + j,
                        points: vec![i.to_string(), j.to_string()],
                        scales: vec![lv.to_string()],
                        values: Vec::new(),
                        detail: format!("({i}, {j}) in W_{}^3 but not in W_{lv}", lv + 1),
                    })
                });
            }
        }
    }
    Ok(AxiomReport::from_outcomes(Axiom::TripleInclusion, outcomes))
}

/// `d(x, x) = 0` and `d(x, z) ≤ d(x, y) + d(y, z)`, exactly.
pub fn verify_quasi_pseudo_metric(metric: &ChainMetric) -> AxiomReport {
    let n = metric.n;
    let mut outcomes = Vec::with_capacity(n * n * n + n);
    for i in 0..n {
        let d = metric.get(i, i);
        outcomes.push(if d == &Q::zero() {
            Outcome::Checked
        } else {
            Outcome::Failed(pair_witness(i, i, n, vec![format_q(d)], "nonzero self-distance".into()))
        });
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = metric.get(x, z);
                let rhs = metric.get(x, y) + metric.get(y, z);
                outcomes.push(if *lhs <= rhs {
                    Outcome::Checked
                } else {
                    Outcome::Failed(Witness {
                        index: (x * n + y) * n + z,
                        points: vec![x.to_string(), y.to_string(), z.to_string()],
                        scales: Vec::new(),
                        values: vec![format_q(lhs), format_q(&rhs)],
                        detail: format!("d({x},{z}) = {} > {}", format_q(lhs), format_q(&rhs)),
                    })
                });
            }
        }
    }
    AxiomReport::from_outcomes(Axiom::QuasiPseudoMetric, outcomes)
}

/// `{d < 2^-(n+1)} ⊆ W_n` for `n = 0..n_max-1`.
pub fn verify_distance_to_level(levels: &ChainLevels, metric: &ChainMetric) -> AxiomReport {
    let n = metric.n;
    let mut outcomes = Vec::new();
    for lv in 0..levels.n_max {
        let bound = Q::int_pow(2, -(lv as i32 + 1));
        for i in 0..n {
            for j in 0..n {
                outcomes.push(if metric.get(i, j) >= &bound {
                    Outcome::Vacuous
                } else if levels.levels[lv].get(i, j) {
                    Outcome::Checked
                } else {
                    Outcome::Failed(pair_witness(
                        i,
                        j,
                        n,
                        vec![format_q(metric.get(i, j))],
                        format!("d below {} but pair not in W_{lv}", format_q(&bound)),
                    ))
                });
            }
        }
    }
    AxiomReport::from_outcomes(Axiom::DistanceToLevel, outcomes)
}

/// `W_k ⊆ {d < ε}` for every `ε > 2^-k`, i.e. `d ≤ 2^-k` on `W_k`,
/// for `k = 1..n_max`.
pub fn verify_level_to_distance(levels: &ChainLevels, metric: &ChainMetric) -> AxiomReport {
    let n = metric.n;
    let mut outcomes = Vec::new();
    for lv in 1..=levels.n_max {
        let bound = Q::int_pow(2, -(lv as i32));
        for i in 0..n {
            for j in 0..n {
                outcomes.push(if !levels.levels[lv].get(i, j) {
                    Outcome::Vacuous
                } else if metric.get(i, j) <= &bound {
                    Outcome::Checked
                } else {
                    Outcome::Failed(pair_witness(
                        i,
                        j,
                        n,
                        vec![format_q(metric.get(i, j))],
                        format!("pair in W_{lv} but d above {}", format_q(&bound)),
                    ))
                });
            }
        }
    }
    AxiomReport::from_outcomes(Axiom::LevelToDistance, outcomes)
}

/// `d(i, j) = 0 ⇒ i = j` on unsaturated pairs. Meaningful only for families
/// audited nondegenerate on the sample.
pub fn verify_nondegenerate(levels: &ChainLevels, metric: &ChainMetric) -> Result<AxiomReport> {
    let g = GMatrix::build(levels)?;
    let n = metric.n;
    let mut outcomes = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || g.get(i, j).is_saturated() {
                outcomes.push(Outcome::Vacuous);
            } else if metric.get(i, j) > &Q::zero() {
                outcomes.push(Outcome::Checked);
            } else {
                outcomes.push(Outcome::Failed(pair_witness(
                    i,
                    j,
                    n,
                    vec!["0/1".into()],
                    "distinct unsaturated points at distance 0".into(),
                )));
            }
        }
    }
    Ok(AxiomReport::from_outcomes(Axiom::Nondegenerate, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{q, qi};
    use crate::tiling::{Tiling1D, TilingFamily};

    /// Levels realizing a prescribed `g` in units: `depth[i][j]` is the
    /// number of leading levels `W_1..` containing the pair.
    fn levels_with_depth(n_max: usize, depth: &[Vec<usize>]) -> ChainLevels {
        let n = depth.len();
        let rels = (0..=n_max)
            .map(|lv| Relation::from_fn(n, |i, j| i == j || lv == 0 || depth[i][j] >= lv))
            .collect();
        ChainLevels::from_relations(rels).unwrap()
    }

    #[test]
    fn level_scale_formula() {
        assert_eq!(level_scales::<Q>(0), (qi(1), qi(1)));
        assert_eq!(level_scales::<Q>(1), (qi(9), q(1, 3)));
        assert_eq!(level_scales::<Q>(2), (qi(81), q(1, 9)));
    }

    #[test]
    fn g_cases() {
        let lv = levels_with_depth(4, &[vec![0, 2, 0], vec![0, 0, 4], vec![0, 0, 0]]);
        assert_eq!(g_value(&lv, 0, 0).unwrap(), GValue::Zero);
        assert_eq!(g_value(&lv, 0, 1).unwrap(), GValue::Dyadic(2));
        assert_eq!(g_value(&lv, 0, 2).unwrap(), GValue::One);
        assert_eq!(g_value(&lv, 1, 2).unwrap(), GValue::Saturated);
        let short = levels_with_depth(1, &[vec![0]]);
        assert!(g_value(&short, 0, 0).is_err());
    }

    #[test]
    fn two_points_no_shortcut() {
        let lv = levels_with_depth(3, &[vec![0, 0], vec![0, 0]]);
        let d = chain_metric(&lv).unwrap();
        assert_eq!(d.get(0, 1), &qi(1));
        assert_eq!(d.get(1, 0), &qi(1));
        assert!(verify_sandwich(&lv, &d).unwrap().passed());
    }

    #[test]
    fn three_point_chain() {
        // g(x,y) = 1, g(x,z) = g(z,y) = 1/4, everything else 1
        let lv = levels_with_depth(4, &[vec![0, 0, 2], vec![0, 0, 0], vec![0, 2, 0]]);
        let d = chain_metric(&lv).unwrap();
        assert_eq!(d.get(0, 1), &q(1, 2));
        // oracle: every chain of length ≤ 3 from x to y
        let g = GMatrix::build(&lv).unwrap();
        let w = |i: usize, j: usize| g.get(i, j).value();
        let mut best = w(0, 1);
        for m in 0..3 {
            best = best.min(w(0, m) + w(m, 1));
            for m2 in 0..3 {
                best = best.min(w(0, m) + w(m, m2) + w(m2, 1));
            }
        }
        assert_eq!(d.get(0, 1), &best);
        assert!(verify_sandwich(&lv, &d).unwrap().passed());
        assert!(verify_quasi_pseudo_metric(&d).passed());
    }

    #[test]
    fn singleton() {
        let lv = levels_with_depth(3, &[vec![0]]);
        let d = chain_metric(&lv).unwrap();
        assert_eq!(d.get(0, 0), &qi(0));
        assert!(verify_triple_inclusion(&lv).unwrap().passed());
        assert!(verify_quasi_pseudo_metric(&d).passed());
    }

    #[test]
    fn broken_triangle_has_witness() {
        let d = ChainMetric::from_rows(
            2,
            vec![
                vec![qi(0), qi(1), qi(5)],
                vec![qi(1), qi(0), qi(1)],
                vec![qi(5), qi(1), qi(0)],
            ],
        )
        .unwrap();
        let rep = verify_quasi_pseudo_metric(&d);
        assert!(rep.failed());
        assert_eq!(rep.witness().unwrap().points, vec!["0", "1", "2"]);
    }

    #[test]
    fn saturated_chains_keep_the_sandwich() {
        // 0→1→2→3 saturated step by step; the jumps 0→2, 1→3, 0→3 stop at W_2
        let lv = levels_with_depth(
            3,
            &[
                vec![0, 3, 2, 2],
                vec![0, 0, 3, 2],
                vec![0, 0, 0, 3],
                vec![0, 0, 0, 0],
            ],
        );
        assert!(verify_triple_inclusion(&lv).unwrap().passed());
        let d = chain_metric(&lv).unwrap();
        // zero-weight saturated arcs would collapse 0→3 to 0, below ½ g = 1/8
        assert_eq!(d.get(0, 3), &q(1, 4));
        assert_eq!(d.get(0, 1), &q(1, 8));
        let rep = verify_sandwich(&lv, &d).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
        assert_eq!(rep.notes, vec!["saturated entries: 3"]);
    }

    #[test]
    fn dump_roundtrip() {
        let lv = levels_with_depth(3, &[vec![0, 1], vec![2, 0]]);
        let d = chain_metric(&lv).unwrap();
        let text = d.dump();
        assert!(text.starts_with("chain-metric n_max=3 size=2\n0/1 1/2\n"));
        assert_eq!(ChainMetric::parse_dump(&text).unwrap(), d);
    }

    #[test]
    fn tiling_translates() {
        let t = Tiling1D::example_ab();
        let xs = [0, 1, 3, 20, 45, 100];
        let pts: Vec<Tiling1D> = xs.iter().map(|&x| t.translate(&q(x, 10_000))).collect();
        let fam = TilingFamily::new(qi(2)).unwrap();
        let lv = build_levels(&fam, &pts, 4).unwrap();
        for n in 0..=4 {
            let (_, eps) = level_scales::<Q>(n);
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    let dist = q((xs[i] - xs[j]).abs(), 10_000);
                    assert_eq!(lv.level(n).get(i, j), dist < eps, "n={n} ({i},{j})");
                }
            }
        }
        assert!(verify_triple_inclusion(&lv).unwrap().passed());
        let d = chain_metric(&lv).unwrap();
        assert!(verify_sandwich(&lv, &d).unwrap().passed());
        assert!(verify_distance_to_level(&lv, &d).passed());
        assert!(verify_level_to_distance(&lv, &d).passed());
        assert!(verify_nondegenerate(&lv, &d).unwrap().passed());
    }
}
