// SPDX-License-Identifier: Apache-2.0

//! Sampled plot checks for one-parameter families of points.
//!
//! A parametrization `p: (a, b) → X` is a plot at `t0` when, for every scale,
//! `t ↦ d_r(p(t0), p(t))` is continuous and `t ↦ d_r(p(t1), p(t))` is smooth
//! at `t0` for each `t1` not in the fiber of `p(t0)`. Neither property is
//! decidable from samples; continuity is probed with a fitted modulus under
//! grid refinement and smoothness with finite-difference derivative estimates
//! that must stay stable as the step halves. Both are proxies, not proofs.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::distance::{ExtendedDistance, Scale};
use crate::error::{Error, Result};
use crate::exec;
use crate::family::MetricFamily;
use crate::mapping_space::{dr_sup, MappingFamily, PlMap};
use crate::number::{display_q, format_q, q, Q};
use crate::report::{Axiom, AxiomReport, Outcome, Witness};
use crate::tiling::{
    default_rho, dr_tiling, lambda_t, valid_translations, windows_agree, Tiling1D, TilingFamily,
};

pub const DEFAULT_SMOOTHNESS_TOLERANCE: f64 = 1e-4;
pub const DEFAULT_FIBER_WINDOW: i64 = 64;

/// A real path with rational data.
#[derive(Debug, Clone, PartialEq)]
pub enum Path {
    /// Coefficients `c0 + c1 t + c2 t² + …`.
    Polynomial(Vec<Q>),
    PiecewiseLinear(PlMap),
}

impl Path {
    pub fn identity() -> Self {
        Path::Polynomial(vec![Q::zero(), q(1, 1)])
    }

    pub fn constant(c: Q) -> Self {
        Path::Polynomial(vec![c])
    }

    /// `|t|` on `[-bound, bound]`, constant beyond.
    pub fn abs(bound: Q) -> Self {
        Path::PiecewiseLinear(
            PlMap::new(vec![
                (-bound.clone(), bound.clone()),
                (Q::zero(), Q::zero()),
                (bound.clone(), bound),
            ])
            .expect("increasing breakpoints"),
        )
    }

    pub fn eval(&self, t: &Q) -> Q {
        match self {
            Path::Polynomial(c) => c.iter().rev().fold(Q::zero(), |acc, a| acc * t + a),
            Path::PiecewiseLinear(f) => f.eval(t),
        }
    }
}

pub trait Parametrization: Sync {
    type Family: MetricFamily<Value = Q>;

    fn family(&self) -> &Self::Family;

    /// Open interval `(a, b)`.
    fn domain(&self) -> (&Q, &Q);

    fn eval(&self, t: &Q) -> Result<<Self::Family as MetricFamily>::Point>;

    /// Whether two evaluated points are the same point of the space.
    fn same_point(
        &self,
        a: &<Self::Family as MetricFamily>::Point,
        b: &<Self::Family as MetricFamily>::Point,
    ) -> Result<bool>;
}

/// `t ↦ T1 + γ(t)`.
#[derive(Debug, Clone)]
pub struct TilingTranslation {
    pub base: Tiling1D,
    pub gamma: Path,
    pub family: TilingFamily,
    pub domain: (Q, Q),
    /// Half-width of the window on which fiber membership is decided.
    pub fiber_window: Q,
}

impl TilingTranslation {
    /// Search bound `2ℓ + 1`, enough for every translation shorter than a tile.
    pub fn new(base: Tiling1D, gamma: Path, domain: (Q, Q)) -> Result<Self> {
        if domain.0 >= domain.1 {
            return Err(Error::InvalidArgument("empty parameter domain".into()));
        }
        let rho = base.natural_length() * q(2, 1) + q(1, 1);
        Ok(TilingTranslation {
            family: TilingFamily::new(rho)?,
            base,
            gamma,
            domain,
            fiber_window: q(DEFAULT_FIBER_WINDOW, 1),
        })
    }
}

impl Parametrization for TilingTranslation {
    type Family = TilingFamily;

    fn family(&self) -> &TilingFamily {
        &self.family
    }

    fn domain(&self) -> (&Q, &Q) {
        (&self.domain.0, &self.domain.1)
    }

    fn eval(&self, t: &Q) -> Result<Tiling1D> {
        Ok(self.base.translate(&self.gamma.eval(t)))
    }

    fn same_point(&self, a: &Tiling1D, b: &Tiling1D) -> Result<bool> {
        windows_agree(a, b, &-&self.fiber_window, &self.fiber_window, true)
    }
}

/// `t ↦` the PL map through `(x_i, v_i(t))`.
#[derive(Debug, Clone)]
pub struct MappingPath {
    pub xs: Vec<Q>,
    pub values: Vec<Path>,
    pub domain: (Q, Q),
}

impl MappingPath {
    pub fn new(xs: Vec<Q>, values: Vec<Path>, domain: (Q, Q)) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::DimensionMismatch {
                left: xs.len(),
                right: values.len(),
            });
        }
        if domain.0 >= domain.1 {
            return Err(Error::InvalidArgument("empty parameter domain".into()));
        }
        // validates the breakpoints once
        PlMap::new(xs.iter().map(|x| (x.clone(), Q::zero())).collect())?;
        Ok(MappingPath { xs, values, domain })
    }
}

impl Parametrization for MappingPath {
    type Family = MappingFamily;

    fn family(&self) -> &MappingFamily {
        &MappingFamily
    }

    fn domain(&self) -> (&Q, &Q) {
        (&self.domain.0, &self.domain.1)
    }

    fn eval(&self, t: &Q) -> Result<PlMap> {
        PlMap::new(
            self.xs
                .iter()
                .zip(&self.values)
                .map(|(x, v)| (x.clone(), v.eval(t)))
                .collect(),
        )
    }

    fn same_point(&self, a: &PlMap, b: &PlMap) -> Result<bool> {
        let reach = a
            .breakpoints()
            .iter()
            .chain(b.breakpoints())
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Q::zero)
            + q(1, 1);
        Ok(dr_sup(a, b, &reach)? == ExtendedDistance::Finite(Q::zero()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlotScaleVerdict {
    pub r: String,
    pub continuity: AxiomReport,
    pub smoothness: AxiomReport,
    /// Grid points used as `t1`, and those skipped for lying in the fiber of
    /// `p(t0)` or too close to `t0` for the difference stencil.
    pub t1_sampled: usize,
    pub t1_in_fiber: usize,
    pub t1_too_close: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlotCheckReport {
    pub t0: String,
    pub delta: String,
    pub grid_points: usize,
    pub fd_steps: Vec<String>,
    pub per_r: Vec<PlotScaleVerdict>,
}

impl PlotCheckReport {
    pub fn passed(&self) -> bool {
        self.per_r
            .iter()
            .all(|v| !v.continuity.failed() && !v.smoothness.failed())
    }

    pub fn continuity_passed(&self) -> bool {
        self.per_r.iter().all(|v| !v.continuity.failed())
    }

    pub fn smoothness_passed(&self) -> bool {
        self.per_r.iter().all(|v| !v.smoothness.failed())
    }

    /// `key: value` blocks, one per scale.
    pub fn render(&self) -> String {
        let mut s = format!(
            "t0: {}\ndelta: {}\ngrid points: {}\nfd steps: {}\n",
            self.t0,
            self.delta,
            self.grid_points,
            self.fd_steps.join(", ")
        );
        for v in &self.per_r {
            s.push_str(&format!(
                "\nr: {}\ncontinuity: {}\nsmoothness: {}\nt1 sampled: {} (in fiber: {}, too close: {})\n",
                v.r,
                v.continuity.summary(),
                v.smoothness.summary(),
                v.t1_sampled,
                v.t1_in_fiber,
                v.t1_too_close
            ));
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct PlotCheckConfig {
    pub delta: Q,
    pub r_grid: Vec<Q>,
    /// Number of coarse grid intervals across `(t0 - δ, t0 + δ)`; even.
    pub grid: usize,
    /// Finite-difference steps, each half the previous.
    pub fd_steps: Vec<Q>,
    pub tolerance: f64,
}

impl PlotCheckConfig {
    /// Steps `h0, h0/2, …` (`count` of them).
    pub fn halving_steps(h0: Q, count: usize) -> Vec<Q> {
        let mut out = Vec::with_capacity(count);
        let mut h = h0;
        for _ in 0..count {
            out.push(h.clone());
            h = h / q(2, 1);
        }
        out
    }
}

fn dist<P: Parametrization>(
    p: &P,
    a: &<P::Family as MetricFamily>::Point,
    b: &<P::Family as MetricFamily>::Point,
    r: &Scale<Q>,
) -> Result<ExtendedDistance<Q>> {
    p.family().distance(a, b, r)
}

/// `t0 - δ + 2δk/m` for `k = 0..=m`.
fn grid_points(t0: &Q, delta: &Q, m: usize) -> Vec<Q> {
    let step = delta * q(2, 1) / q(m as i64, 1);
    (0..=m)
        .map(|k| t0 - delta + &step * q(k as i64, 1))
        .collect()
}

/// Largest `|φ(t_{k+1}) - φ(t_k)| / h` over the grid, or `None` if some value
/// is infinite.
fn max_slope(values: &[ExtendedDistance<Q>], h: &Q) -> Option<f64> {
    let mut best = 0.0f64;
    for w in values.windows(2) {
        let (a, b) = (w[0].as_finite()?, w[1].as_finite()?);
        let s = num_traits::ToPrimitive::to_f64(&((b - a).abs() / h)).unwrap_or(f64::INFINITY);
        best = best.max(s);
    }
    Some(best)
}

fn continuity_at<P: Parametrization>(
    p: &P,
    t0: &Q,
    cfg: &PlotCheckConfig,
    r: &Scale<Q>,
) -> Result<AxiomReport> {
    let x0 = p.eval(t0)?;
    let mut slopes = Vec::new();
    for refine in [1usize, 2, 4] {
        let m = cfg.grid * refine;
        let ts = grid_points(t0, &cfg.delta, m);
        let values = exec::map(&ts, |t| dist(p, &x0, &p.eval(t)?, r))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let h = &cfg.delta * q(2, 1) / q(m as i64, 1);
        slopes.push((m, max_slope(&values, &h)));
    }
    let coarse = slopes[0].1;
    let mut outcomes = Vec::new();
    for (i, (m, s)) in slopes.iter().enumerate() {
        let ok = match (coarse, s) {
            (Some(c), Some(s)) => *s <= 2.0 * c + cfg.tolerance,
            _ => false,
        };
        outcomes.push(if ok {
            Outcome::Checked
        } else {
            Outcome::Failed(Witness {
                index: i,
                points: vec![display_q(t0)],
                scales: vec![display_q(r.get())],
                values: vec![format!("{coarse:?}"), format!("{s:?}")],
                detail: format!(
                    "modulus on {m} intervals exceeds twice the coarse fit (or a distance is infinite)"
                ),
            })
        });
    }
    Ok(AxiomReport::from_outcomes(Axiom::PlotContinuity, outcomes).with_note(format!(
        "fitted modulus {}",
        coarse.map(|c| format!("{c}")).unwrap_or_else(|| "inf".into())
    )))
}

/// Central-difference estimates of orders 1..3 at `t0` with step `h`.
fn derivatives(psi: &dyn Fn(&Q) -> Result<Q>, t0: &Q, h: &Q) -> Result<[Q; 3]> {
    let two = q(2, 1);
    let p1 = psi(&(t0 + h))?;
    let m1 = psi(&(t0 - h))?;
    let p2 = psi(&(t0 + &two * h))?;
    let m2 = psi(&(t0 - &two * h))?;
    let c = psi(t0)?;
    let d1 = (&p1 - &m1) / (&two * h);
    let d2 = (&p1 - &two * &c + &m1) / (h * h);
    let d3 = (&p2 - &two * &p1 + &two * &m1 - &m2) / (&two * h * h * h);
    Ok([d1, d2, d3])
}

fn stable(a: &Q, b: &Q, rtol: f64) -> bool {
    let f = |x: &Q| num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN);
    let (a, b) = (f(a), f(b));
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1.0)
}

fn smoothness_at<P: Parametrization>(
    p: &P,
    t0: &Q,
    cfg: &PlotCheckConfig,
    r: &Scale<Q>,
) -> Result<(AxiomReport, usize, usize, usize)> {
    let x0 = p.eval(t0)?;
    let h_max = cfg.fd_steps.iter().max().cloned().expect("nonempty");
    let guard = &h_max * q(4, 1);
    let ts = grid_points(t0, &cfg.delta, cfg.grid);
    let mut in_fiber = 0;
    let mut too_close = 0;
    let mut t1s = Vec::new();
    for t in ts.iter().skip(1).take(ts.len().saturating_sub(2)) {
        if (t - t0).abs() <= guard {
            too_close += 1;
        } else if p.same_point(&p.eval(t)?, &x0)? {
            in_fiber += 1;
        } else {
            t1s.push(t.clone());
        }
    }
    let outcomes = exec::map(&t1s, |t1| -> Result<Outcome> {
        let x1 = p.eval(t1)?;
        let psi = |t: &Q| -> Result<Q> {
            match dist(p, &x1, &p.eval(t)?, r)? {
                ExtendedDistance::Finite(v) => Ok(v),
                ExtendedDistance::Infinite => Err(Error::Precondition(format!(
                    "infinite distance at t = {}",
                    display_q(t)
                ))),
            }
        };
        let est = cfg
            .fd_steps
            .iter()
            .map(|h| derivatives(&psi, t0, h))
            .collect::<Result<Vec<_>>>()?;
        for (s, w) in est.windows(2).enumerate() {
            for order in 0..3 {
                if !stable(&w[0][order], &w[1][order], cfg.tolerance) {
                    return Ok(Outcome::Failed(Witness {
                        index: s,
                        points: vec![display_q(t0), display_q(t1)],
                        scales: vec![display_q(r.get())],
                        values: vec![format_q(&w[0][order]), format_q(&w[1][order])],
                        detail: format!(
                            "order-{} difference unstable between h = {} and h = {}",
                            order + 1,
                            display_q(&cfg.fd_steps[s]),
                            display_q(&cfg.fd_steps[s + 1])
                        ),
                    }));
                }
            }
        }
        Ok(Outcome::Checked)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let n = t1s.len();
    let report = AxiomReport::from_outcomes(Axiom::PlotSmoothness, outcomes)
        .with_note(format!("sampled t1: {n} of {}", ts.len().saturating_sub(2)));
    Ok((report, n, in_fiber, too_close))
}

pub fn check_plot_at<P: Parametrization>(
    p: &P,
    t0: &Q,
    cfg: &PlotCheckConfig,
) -> Result<PlotCheckReport> {
    let (a, b) = p.domain();
    if !cfg.delta.is_positive() || &(t0 - &cfg.delta) < a || &(t0 + &cfg.delta) > b {
        return Err(Error::Precondition(
            "(t0 - δ, t0 + δ) must lie inside the domain".into(),
        ));
    }
    if cfg.grid < 2 || cfg.grid % 2 != 0 {
        return Err(Error::InvalidArgument("grid must be an even count ≥ 2".into()));
    }
    if cfg.fd_steps.len() < 2 || cfg.fd_steps.iter().any(|h| !h.is_positive()) {
        return Err(Error::InvalidArgument(
            "need at least two positive finite-difference steps".into(),
        ));
    }
    let h_max = cfg.fd_steps.iter().max().expect("nonempty");
    if h_max * q(2, 1) >= cfg.delta {
        return Err(Error::InvalidArgument("difference stencil wider than δ".into()));
    }
    if cfg.r_grid.is_empty() {
        return Err(Error::InvalidArgument("empty scale grid".into()));
    }
    let mut per_r = Vec::with_capacity(cfg.r_grid.len());
    for r in &cfg.r_grid {
        let scale = Scale::new(r.clone())?;
        let continuity = continuity_at(p, t0, cfg, &scale)?;
        let (smoothness, t1_sampled, t1_in_fiber, t1_too_close) = smoothness_at(p, t0, cfg, &scale)?;
        per_r.push(PlotScaleVerdict {
            r: format_q(r),
            continuity,
            smoothness,
            t1_sampled,
            t1_in_fiber,
            t1_too_close,
        });
    }
    Ok(PlotCheckReport {
        t0: format_q(t0),
        delta: format_q(&cfg.delta),
        grid_points: cfg.grid + 1,
        fd_steps: cfg.fd_steps.iter().map(format_q).collect(),
        per_r,
    })
}

/// `d_r(T1 + t0, T1 + t) = |t0 - t|` on the grid, exactly.
pub fn translation_plot_identity(
    t1: &Tiling1D,
    t0: &Q,
    r: &Q,
    grid: &[Q],
) -> Result<AxiomReport> {
    let half_lambda = lambda_t(t1.prototiles()) / q(2, 1);
    if grid.iter().any(|t| (t - t0).abs() >= half_lambda) {
        return Err(Error::Precondition(
            "grid must lie within λ_T/2 of t0".into(),
        ));
    }
    let base = t1.translate(t0);
    let rho = default_rho(t1, r);
    let outcomes = exec::map(grid, |t| -> Result<Outcome> {
        let want = (t - t0).abs();
        let got = dr_tiling(&base, &t1.translate(t), r, &rho)?;
        Ok(if got.value == ExtendedDistance::Finite(want.clone()) {
            Outcome::Checked
        } else {
            Outcome::Failed(Witness {
                index: 0,
                points: vec![display_q(t0), display_q(t)],
                scales: vec![display_q(r)],
                values: vec![got.render(), format_q(&want)],
                detail: format!("d_r = {} but |t0 - t| = {}", got.render(), display_q(&want)),
            })
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let outcomes = outcomes
        .into_iter()
        .enumerate()
        .map(|(i, o)| match o {
            Outcome::Failed(mut w) => {
                w.index = i;
                Outcome::Failed(w)
            }
            o => o,
        });
    Ok(AxiomReport::from_outcomes(Axiom::TranslationIdentity, outcomes))
}

#[derive(Debug, Clone)]
pub struct URecovery {
    pub rows: Vec<(Q, Q)>,
    pub report: AxiomReport,
}

impl URecovery {
    /// `t,u` header, then one exact row per grid point.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,u\n");
        for (t, u) in &self.rows {
            s.push_str(&format!("{},{}\n", format_q(t), format_q(u)));
        }
        s
    }
}

/// For each grid `t`, the unique valid translation `u` with `|u| < λ_T`
/// carrying `p(t0)` to `p(t)` at scale `r`; asserts `u = γ(t) - γ(t0)`.
pub fn recover_u(
    p: &TilingTranslation,
    t0: &Q,
    grid: &[Q],
    r: &Q,
    rho: &Q,
) -> Result<URecovery> {
    let lambda = lambda_t(p.base.prototiles());
    let half_lambda = &lambda / q(2, 1);
    let g0 = p.gamma.eval(t0);
    if grid
        .iter()
        .any(|t| (p.gamma.eval(t) - &g0).abs() >= half_lambda)
    {
        return Err(Error::Precondition(
            "path moves by λ_T/2 or more on the grid".into(),
        ));
    }
    let x0 = p.eval(t0)?;
    let found = exec::map(grid, |t| -> Result<Q> {
        let xt = p.eval(t)?;
        let small: Vec<Q> = valid_translations(&x0, &xt, r, rho)?
            .into_iter()
            .filter(|u| u.abs() < lambda)
            .collect();
        match small.len() {
            1 => Ok(small.into_iter().next().expect("one")),
            0 => Err(Error::NotFound(format!(
                "no valid translation shorter than λ_T at t = {}",
                display_q(t)
            ))),
            _ => Err(Error::NonUnique(format!(
                "{} valid translations shorter than λ_T at t = {}",
                small.len(),
                display_q(t)
            ))),
        }
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut outcomes = Vec::with_capacity(grid.len());
    for (i, (t, u)) in grid.iter().zip(found).enumerate() {
        let want = p.gamma.eval(t) - &g0;
        outcomes.push(if u == want {
            Outcome::Checked
        } else {
            Outcome::Failed(Witness {
                index: i,
                points: vec![display_q(t0), display_q(t)],
                scales: vec![display_q(r)],
                values: vec![format_q(&u), format_q(&want)],
                detail: format!("u = {} but γ(t) - γ(t0) = {}", display_q(&u), display_q(&want)),
            })
        });
        rows.push((t.clone(), u));
    }
    Ok(URecovery {
        rows,
        report: AxiomReport::from_outcomes(Axiom::URecovery, outcomes),
    })
}

#[derive(Debug, Clone)]
pub struct ContinuityRun {
    pub delta: Option<Q>,
    pub report: AxiomReport,
}

/// The largest `δ` in the grid with `d_r(p(t0), p(t)) < ε` at the sampled
/// points `t0 ± δk/m`, `0 ≤ k < m`.
pub fn continuity_witness<P: Parametrization>(
    p: &P,
    t0: &Q,
    r: &Q,
    eps: &Q,
    delta_grid: &[Q],
    samples: usize,
) -> Result<ContinuityRun> {
    if samples == 0 || !eps.is_positive() {
        return Err(Error::InvalidArgument("need samples and a positive ε".into()));
    }
    let scale = Scale::new(r.clone())?;
    let x0 = p.eval(t0)?;
    let (a, b) = p.domain();
    let mut deltas: Vec<&Q> = delta_grid.iter().filter(|d| d.is_positive()).collect();
    deltas.sort_by(|x, y| y.cmp(x));
    let mut tried = 0usize;
    for delta in deltas {
        if &(t0 - delta) < a || &(t0 + delta) > b {
            continue;
        }
        tried += 1;
        let mut ts = Vec::with_capacity(2 * samples);
        for k in 0..samples {
            let off = delta * q(k as i64, samples as i64);
            ts.push(t0 + &off);
            ts.push(t0 - &off);
        }
        let inside = exec::map(&ts, |t| Ok(dist(p, &x0, &p.eval(t)?, &scale)?.lt(eps)))
            .into_iter()
            .collect::<Result<Vec<bool>>>()?;
        if inside.iter().all(|x| *x) {
            let report = AxiomReport::from_outcomes(Axiom::ContinuityWitness, [Outcome::Checked])
                .with_note(format!("delta = {}", format_q(delta)));
            return Ok(ContinuityRun {
                delta: Some(delta.clone()),
                report,
            });
        }
    }
    Ok(ContinuityRun {
        delta: None,
        report: AxiomReport::skipped(
            Axiom::ContinuityWitness,
            format!("no δ found on grid ({tried} tried)"),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{q, qi};

    fn plot(gamma: Path) -> TilingTranslation {
        TilingTranslation::new(Tiling1D::example_ab(), gamma, (qi(-1), qi(1))).unwrap()
    }

    fn cfg() -> PlotCheckConfig {
        PlotCheckConfig {
            delta: q(1, 5),
            r_grid: vec![qi(1), qi(5)],
            grid: 8,
            fd_steps: PlotCheckConfig::halving_steps(q(1, 100), 3),
            tolerance: DEFAULT_SMOOTHNESS_TOLERANCE,
        }
    }

    #[test]
    fn path_eval() {
        let p = Path::Polynomial(vec![qi(1), qi(0), qi(2)]);
        assert_eq!(p.eval(&q(1, 2)), q(3, 2));
        assert_eq!(Path::abs(qi(1)).eval(&q(-1, 3)), q(1, 3));
    }

    #[test]
    fn translation_plot_passes() {
        let rep = check_plot_at(&plot(Path::identity()), &qi(0), &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep.render());
        assert!(rep.per_r[0].t1_sampled > 0);
    }

    #[test]
    fn constant_plot_is_vacuous() {
        let rep = check_plot_at(&plot(Path::constant(q(1, 7))), &qi(0), &cfg()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.per_r[0].t1_sampled, 0);
        assert!(rep.per_r[0].smoothness.uninformative);
    }

    #[test]
    fn kinked_path_is_flagged() {
        let rep = check_plot_at(&plot(Path::abs(qi(1))), &qi(0), &cfg()).unwrap();
        assert!(rep.continuity_passed());
        assert!(!rep.smoothness_passed());
    }

    #[test]
    fn identity_examples() {
        let t = Tiling1D::example_ab();
        let rep = translation_plot_identity(&t, &qi(0), &qi(5), &[qi(0), q(1, 10)]).unwrap();
        assert!(rep.passed());
        let f = Tiling1D::example_fibonacci();
        let rep = translation_plot_identity(&f, &qi(0), &qi(5), &[q(1, 5)]).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn recover_u_examples() {
        let p = plot(Path::identity());
        let grid = vec![q(-1, 10), q(-1, 20), qi(0), q(1, 20), q(1, 10)];
        let rec = recover_u(&p, &qi(0), &grid, &qi(5), &qi(3)).unwrap();
        assert!(rec.report.passed());
        assert_eq!(rec.rows[0].1, q(-1, 10));
        assert!(rec.to_csv().starts_with("t,u\n-1/10,-1/10\n"));
        let sq = plot(Path::Polynomial(vec![qi(0), qi(0), qi(1)]));
        let rec = recover_u(&sq, &q(1, 10), &grid, &qi(5), &qi(3)).unwrap();
        assert!(rec.report.passed());
        assert_eq!(rec.rows[4].1, qi(0));
        assert_eq!(rec.rows[2].1, q(-1, 100));
    }

    #[test]
    fn continuity_examples() {
        let p = plot(Path::identity());
        let grid = vec![q(1, 2), q(1, 5), q(1, 10), q(1, 20)];
        let run = continuity_witness(&p, &qi(0), &qi(5), &q(1, 10), &grid, 16).unwrap();
        assert_eq!(run.delta, Some(q(1, 10)));
        let c = plot(Path::constant(qi(0)));
        let run = continuity_witness(&c, &qi(0), &qi(5), &q(1, 10), &grid, 16).unwrap();
        assert_eq!(run.delta, Some(q(1, 2)));
    }

    #[test]
    fn mapping_path_plot() {
        let p = MappingPath::new(
            vec![qi(-1), qi(1)],
            vec![Path::identity(), Path::constant(qi(0))],
            (qi(-1), qi(1)),
        )
        .unwrap();
        let rep = check_plot_at(&p, &qi(0), &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep.render());
    }
}
