// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use num_traits::{Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use scalemetric::diffeology::{
    check_plot_at, continuity_witness, recover_u, MappingPath, Parametrization, Path as PlotPath,
    PlotCheckConfig, PlotCheckReport, TilingTranslation, DEFAULT_SMOOTHNESS_TOLERANCE,
};
use scalemetric::family::{
    audit_full_triangle, audit_monotone_in_r, audit_self_distance, audit_symmetry,
    audit_usc_batch, audit_weak_triangle, audit_weaker_triangle, MetricFamily, TriangleMode,
};
use scalemetric::mapping_space::{
    compact_open_witness_backward, compact_open_witness_forward, dr_sup, ClosedInterval,
    MappingFamily, OpenInterval, PlMap,
};
use scalemetric::metrization::{
    build_levels, chain_metric, verify_distance_to_level, verify_level_to_distance,
    verify_nondegenerate, verify_quasi_pseudo_metric, verify_sandwich, verify_triple_inclusion,
    ChainMetric, GMatrix,
};
use scalemetric::number::{display_q, format_q, parse_q, q, qi};
use scalemetric::report::AxiomReport;
use scalemetric::sampling;
use scalemetric::tiling::{
    ball_to_nbhd_witness, default_rho, dr_tiling, nbhd_to_ball_witness, orbit_metric, Tiling1D,
    TilingFamily,
};
use scalemetric::{ExtendedDistance, Scale, Q};

use crate::instance::{self, Instance};
use crate::output::{envelope, write_json, RunConfig};

/// What a command hands back to `main`: human text, the JSON body, and
/// whether every counted check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
    pub body: Value,
}

pub fn finish(config: &RunConfig, out: Option<&Path>, outcome: Outcome) -> Result<bool> {
    let mut stdout = std::io::stdout().lock();
    let printed = write!(stdout, "{}", outcome.text).and_then(|_| {
        writeln!(stdout, "config hash: {}  seed: {}", config.hash(), config.seed)
    });
    match printed {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(path) = out {
        write_json(path, &envelope(config, outcome.passed, outcome.body))?;
    }
    Ok(outcome.passed)
}

pub fn parse_list(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_q(p).map_err(Into::into))
        .collect()
}

fn scales(values: &[Q]) -> Result<Vec<Scale<Q>>> {
    let mut out = values
        .iter()
        .map(|v| Scale::new(v.clone()).map_err(Into::into))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.get().cmp(b.get()));
    out.dedup();
    Ok(out)
}

fn strs(values: &[Q]) -> Vec<String> {
    values.iter().map(format_q).collect()
}

fn max_q(values: &[Q]) -> Q {
    values.iter().cloned().max().unwrap_or_else(Q::zero)
}

/// A report plus whether it counts towards the exit code.
struct Audited {
    report: AxiomReport,
    counted: bool,
}

fn render_reports(reports: &[Audited]) -> String {
    let mut s = String::new();
    for a in reports {
        let tag = if a.counted { "" } else { " (informational)" };
        s.push_str(&format!("{}{tag}\n", a.report.summary()));
        if let Some(w) = a.report.witness() {
            s.push_str(&format!("  witness #{}: {}\n", w.index, w.detail));
            for p in &w.points {
                s.push_str(&format!("    point: {p}\n"));
            }
        }
    }
    s
}

fn reports_json(reports: &[Audited]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|a| json!({"counted": a.counted, "report": a.report}))
            .collect(),
    )
}

pub struct AxiomsArgs {
    pub instance: PathBuf,
    pub r: Option<String>,
    pub rho: Option<String>,
    pub eps: Option<String>,
    pub grid: u32,
    pub samples: usize,
    pub triples: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

fn suite<F: MetricFamily<Value = Q>>(
    fam: &F,
    points: &[F::Point],
    triples: &[(F::Point, F::Point, F::Point)],
    grid: &[Scale<Q>],
    margin: &Q,
    delta_depth: u32,
) -> Result<Vec<Audited>> {
    let pairs: Vec<_> = triples
        .iter()
        .map(|(x, y, _)| (x.clone(), y.clone()))
        .collect();
    let delta_grid: Vec<Q> = (0..=delta_depth as i64).map(|k| q(1, 1i64 << k)).collect();
    let declared = fam.declared();
    let mut out = vec![
        Audited { report: audit_self_distance(fam, points, grid)?, counted: true },
        Audited { report: audit_monotone_in_r(fam, &pairs, grid)?, counted: true },
        Audited {
            report: audit_usc_batch(fam, &pairs, grid, margin, &delta_grid)?,
            counted: true,
        },
    ];
    let scale_triples = sampling::scale_triples(grid);
    let full = declared.triangle == TriangleMode::Full;
    out.push(Audited {
        report: audit_weak_triangle(fam, triples, &scale_triples)?,
        counted: matches!(declared.triangle, TriangleMode::Weak | TriangleMode::Full),
    });
    out.push(Audited {
        report: audit_weaker_triangle(fam, triples, &scale_triples)?,
        counted: true,
    });
    if full {
        out.push(Audited { report: audit_full_triangle(fam, triples, grid)?, counted: true });
    }
    out.push(Audited {
        report: audit_symmetry(fam, &pairs, grid)?,
        counted: declared.symmetric,
    });
    Ok(out)
}

pub fn axioms(a: &AxiomsArgs) -> Result<bool> {
    let (inst, text) = instance::load(&a.instance)?;
    let mut rng = sampling::rng(a.seed);
    let margin = match &a.eps {
        Some(s) => parse_q(s)?,
        None => q(1, 1000),
    };
    if !margin.is_positive() {
        bail!("--eps must be positive");
    }
    let (grid_q, kind, reports) = match &inst {
        Instance::Tiling(base) => {
            let grid_q = match &a.r {
                Some(s) => parse_list(s)?,
                None => vec![qi(1), qi(2), qi(4), qi(8)],
            };
            let grid = scales(&grid_q)?;
            let rho = match &a.rho {
                Some(s) => parse_q(s)?,
                None => max_q(&grid_q) * qi(2) + base.natural_length() * qi(2),
            };
            let fam = TilingFamily::new(rho)?;
            let points = sampling::translates(&mut rng, base, a.samples, 100, 100);
            let triples = sampling::triples(&mut rng, &points, a.triples);
            (grid_q, "tiling", suite(&fam, &points, &triples, &grid, &margin, a.grid)?)
        }
        Instance::Mapping(f) => {
            let grid_q = match &a.r {
                Some(s) => parse_list(s)?,
                None => vec![q(1, 2), qi(1), qi(2), qi(4)],
            };
            let grid = scales(&grid_q)?;
            let mut points = vec![f.clone()];
            for _ in 1..a.samples.max(1) {
                points.push(sampling::pl_map(&mut rng, 6, 3, 10)?);
            }
            let triples = sampling::triples(&mut rng, &points, a.triples);
            (grid_q, "mapping", suite(&MappingFamily, &points, &triples, &grid, &margin, a.grid)?)
        }
        Instance::Fake(fam) => {
            let grid_q = match &a.r {
                Some(s) => parse_list(s)?,
                None => vec![qi(1), qi(2), qi(4), qi(8)],
            };
            let grid = scales(&grid_q)?;
            let points: Vec<Q> = (0..a.samples.max(1))
                .map(|_| sampling::rational(&mut rng, 50, 10))
                .collect();
            let triples = sampling::triples(&mut rng, &points, a.triples);
            (grid_q, "fake", suite(fam, &points, &triples, &grid, &margin, a.grid)?)
        }
    };
    let mut config = RunConfig::new(
        "axioms",
        a.seed,
        json!({
            "r": strs(&grid_q),
            "rho": a.rho,
            "eps": format_q(&margin),
            "grid": a.grid,
            "samples": a.samples,
            "triples": a.triples,
        }),
    );
    config.input(&a.instance, &text);
    let passed = reports.iter().all(|x| !x.counted || !x.report.failed());
    let mut text = format!("instance: {} ({kind})\n", a.instance.display());
    text.push_str(&render_reports(&reports));
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    let body = json!({"instance": kind, "reports": reports_json(&reports)});
    finish(&config, a.out.as_deref(), Outcome { text, passed, body })
}

pub struct MetrizeArgs {
    pub instance: PathBuf,
    pub nmax: usize,
    pub rho: Option<String>,
    pub samples: usize,
    pub seed: u64,
    pub dump_relation: Option<PathBuf>,
    pub level: Option<usize>,
    pub out: Option<PathBuf>,
}

fn metric_rows(m: &ChainMetric) -> Vec<Vec<String>> {
    (0..m.size())
        .map(|i| (0..m.size()).map(|j| format_q(m.get(i, j))).collect())
        .collect()
}

pub fn metrize(a: &MetrizeArgs) -> Result<bool> {
    if a.nmax < 2 {
        bail!("g is undefined for n_max = {}: need n_max >= 2", a.nmax);
    }
    if a.samples == 0 {
        bail!("--samples must be at least 1");
    }
    let (inst, text) = instance::load(&a.instance)?;
    let mut rng = sampling::rng(a.seed);
    let rho = match &a.rho {
        Some(s) => parse_q(s)?,
        None => qi(4),
    };
    let levels = match &inst {
        Instance::Tiling(base) => {
            let points = sampling::multiscale_translates(&mut rng, base, a.samples, a.nmax as u32 + 1);
            build_levels(&TilingFamily::new(rho.clone())?, &points, a.nmax)?
        }
        Instance::Mapping(f) => {
            let mut points = vec![f.clone()];
            for _ in 1..a.samples {
                points.push(sampling::pl_map(&mut rng, 6, 3, 10)?);
            }
            build_levels(&MappingFamily, &points, a.nmax)?
        }
        Instance::Fake(fam) => {
            let points = distinct_rationals(&mut rng, a.samples);
            build_levels(fam, &points, a.nmax)?
        }
    };
    let metric = chain_metric(&levels)?;
    let saturated = GMatrix::build(&levels)?.saturated_count();
    let reports = vec![
        Audited { report: verify_sandwich(&levels, &metric)?, counted: true },
        Audited { report: verify_triple_inclusion(&levels)?, counted: true },
        Audited { report: verify_quasi_pseudo_metric(&metric), counted: true },
        Audited { report: verify_distance_to_level(&levels, &metric), counted: true },
        Audited { report: verify_level_to_distance(&levels, &metric), counted: true },
        Audited { report: verify_nondegenerate(&levels, &metric)?, counted: false },
    ];
    if let Some(path) = &a.dump_relation {
        let lv = a.level.unwrap_or(a.nmax);
        if lv > a.nmax {
            bail!("--level {lv} exceeds n_max {}", a.nmax);
        }
        std::fs::write(path, levels.level(lv).dump())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let mut config = RunConfig::new(
        "metrize",
        a.seed,
        json!({
            "nmax": a.nmax,
            "rho": format_q(&rho),
            "samples": a.samples,
            "level": a.level,
        }),
    );
    config.input(&a.instance, &text);
    let passed = reports.iter().all(|x| !x.counted || !x.report.failed());
    let mut out = metric.dump();
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out.push_str(&format!("saturated entries: {saturated}\n"));
    out.push_str(&render_reports(&reports));
    out.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    let body = json!({
        "n_max": a.nmax,
        "size": metric.size(),
        "saturated": saturated,
        "matrix": metric_rows(&metric),
        "reports": reports_json(&reports),
    });
    finish(&config, a.out.as_deref(), Outcome { text: out, passed, body })
}

fn distinct_rationals(rng: &mut sampling::SampleRng, count: usize) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::with_capacity(count);
    let mut k = 0;
    while out.len() < count && k < 100 * count + 100 {
        let x = sampling::rational(rng, 1000, 1000);
        if !out.contains(&x) {
            out.push(x);
        }
        k += 1;
    }
    out
}

pub fn tiling_dist(
    a_path: &Path,
    b_path: &Path,
    r: &str,
    rho: Option<&str>,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let (a, ta) = instance::load_tiling(a_path)?;
    let (b, tb) = instance::load_tiling(b_path)?;
    let r = parse_q(r)?;
    let rho = match rho {
        Some(s) => parse_q(s)?,
        None => default_rho(&a, &r),
    };
    let d = dr_tiling(&a, &b, &r, &rho)?;
    let mut config = RunConfig::new(
        "tiling-dist",
        seed,
        json!({"r": format_q(&r), "rho": format_q(&rho)}),
    );
    config.input(a_path, &ta);
    config.input(b_path, &tb);
    let value = match &d.value {
        ExtendedDistance::Finite(v) => format_q(v),
        ExtendedDistance::Infinite => "inf".to_string(),
    };
    let body = json!({
        "r": format_q(&r),
        "rho": format_q(&rho),
        "distance": value,
        "search_bounded_by": d.bounded_by.as_ref().map(format_q),
    });
    finish(&config, out, Outcome { text: format!("{}\n", d.render()), passed: true, body })
}

pub fn orbit_dist(a_path: &Path, b_path: &Path, tol: f64, seed: u64, out: Option<&Path>) -> Result<bool> {
    if !(tol > 0.0) {
        bail!("--tol must be positive");
    }
    let (a, ta) = instance::load_tiling(a_path)?;
    let (b, tb) = instance::load_tiling(b_path)?;
    let d = orbit_metric(&a, &b, tol)?;
    let mut config = RunConfig::new("orbit-dist", seed, json!({"tol": tol}));
    config.input(a_path, &ta);
    config.input(b_path, &tb);
    let body = json!({"distance": d, "tol": tol});
    finish(&config, out, Outcome { text: format!("{d}\n"), passed: true, body })
}

pub fn mapping_dist(f_path: &Path, g_path: &Path, r: &str, seed: u64, out: Option<&Path>) -> Result<bool> {
    let (f, tf) = instance::load_pl(f_path)?;
    let (g, tg) = instance::load_pl(g_path)?;
    let r = parse_q(r)?;
    let d = dr_sup(&f, &g, &r)?;
    let mut config = RunConfig::new("mapping-dist", seed, json!({"r": format_q(&r)}));
    config.input(f_path, &tf);
    config.input(g_path, &tg);
    let value = match &d {
        ExtendedDistance::Finite(v) => format_q(v),
        ExtendedDistance::Infinite => "inf".to_string(),
    };
    let text = match &d {
        ExtendedDistance::Finite(v) => format!("{}\n", display_q(v)),
        ExtendedDistance::Infinite => "inf\n".to_string(),
    };
    finish(&config, out, Outcome { text, passed: true, body: json!({"r": format_q(&r), "distance": value}) })
}

pub struct WitnessArgs {
    pub instance: PathBuf,
    pub r: String,
    pub eps: String,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

fn shifted(f: &PlMap, c: &Q) -> Result<PlMap> {
    let pts = f
        .breakpoints()
        .iter()
        .zip(f.values())
        .map(|(x, y)| (x.clone(), y + c))
        .collect();
    Ok(PlMap::new(pts)?)
}

pub fn witness(a: &WitnessArgs) -> Result<bool> {
    let (inst, text) = instance::load(&a.instance)?;
    let r = parse_q(&a.r)?;
    let eps = parse_q(&a.eps)?;
    let mut rng = sampling::rng(a.seed);
    let mut lines = String::new();
    let mut reports = Vec::new();
    let mut extra = serde_json::Map::new();
    match &inst {
        Instance::Tiling(t) => {
            let sample = sampling::translates(&mut rng, t, a.samples, 500, 1000);
            let fwd = ball_to_nbhd_witness(t, &r, &eps, &sample, a.tol)?;
            let bwd = nbhd_to_ball_witness(t, &eps, &sample, a.tol)?;
            lines.push_str(&format!(
                "forward: orbit ball of radius {} inside N_(r={}, eps={})\n",
                display_q(&fwd.eps_prime),
                display_q(&r),
                display_q(&eps)
            ));
            lines.push_str(&format!(
                "backward: N_(r'={}, eps'={}) inside orbit ball of radius {}\n",
                display_q(&bwd.r_prime),
                display_q(&bwd.eps_prime),
                display_q(&eps)
            ));
            extra.insert("forward_eps_prime".into(), json!(format_q(&fwd.eps_prime)));
            extra.insert("backward_r_prime".into(), json!(format_q(&bwd.r_prime)));
            extra.insert("backward_eps_prime".into(), json!(format_q(&bwd.eps_prime)));
            reports.push(Audited { report: fwd.report, counted: true });
            reports.push(Audited { report: bwd.report, counted: true });
        }
        Instance::Mapping(f) => {
            let den = 1000;
            let bound = (eps.clone() * qi(den)).floor().to_integer();
            let bound = i64::try_from(bound).context("--eps too large")?.max(1);
            let sample = (0..a.samples)
                .map(|_| shifted(f, &sampling::rational(&mut rng, bound, den)))
                .collect::<Result<Vec<_>>>()?;
            let k = ClosedInterval::new(-r.clone(), r.clone())?;
            let (lo, hi) = f.range_on(&k.lo, &k.hi);
            let u = OpenInterval::new(lo - &eps, hi + &eps)?;
            let fwd = compact_open_witness_forward(f, &k, &u, &sample)?;
            let bwd = compact_open_witness_backward(f, &r, &eps, &sample)?;
            lines.push_str(&format!(
                "forward: N_(r={}, eps={}) inside the compact-open set of K = [{}, {}]\n",
                display_q(&fwd.r),
                display_q(&fwd.eps),
                display_q(&k.lo),
                display_q(&k.hi)
            ));
            lines.push_str(&format!(
                "backward: {} compact-open boxes inside N_(r={}, eps={})\n",
                bwd.boxes.len(),
                display_q(&r),
                display_q(&eps)
            ));
            extra.insert("forward_r".into(), json!(format_q(&fwd.r)));
            extra.insert("forward_eps".into(), json!(format_q(&fwd.eps)));
            extra.insert("backward_boxes".into(), json!(bwd.boxes.len()));
            reports.push(Audited { report: fwd.report, counted: true });
            reports.push(Audited { report: bwd.report, counted: true });
        }
        Instance::Fake(_) => bail!("witness needs a tiling or a PL map"),
    }
    let mut config = RunConfig::new(
        "witness",
        a.seed,
        json!({
            "r": format_q(&r),
            "eps": format_q(&eps),
            "samples": a.samples,
            "tol": a.tol,
        }),
    );
    config.input(&a.instance, &text);
    let passed = reports.iter().all(|x| !x.report.failed());
    lines.push_str(&render_reports(&reports));
    lines.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    extra.insert("reports".into(), reports_json(&reports));
    finish(&config, a.out.as_deref(), Outcome { text: lines, passed, body: Value::Object(extra) })
}

/// `plot-check` configuration file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotFile {
    /// Tiling description, relative to the config file.
    pub tiling: Option<String>,
    /// `identity`, `abs`, `constant c`, or `poly c0 c1 …`.
    pub gamma: Option<String>,
    /// Mapping-space plot: breakpoints and one path per breakpoint.
    pub xs: Option<Vec<String>>,
    pub paths: Option<Vec<String>>,
    pub domain: [String; 2],
    pub delta: String,
    pub r: Vec<String>,
    #[serde(default = "default_plot_grid")]
    pub grid: usize,
    #[serde(default = "default_fd_h0")]
    pub fd_h0: String,
    #[serde(default = "default_fd_steps")]
    pub fd_steps: usize,
    #[serde(default = "default_plot_tol")]
    pub tolerance: f64,
    /// `ε` for the continuity witness.
    pub continuity_eps: Option<String>,
}

fn default_plot_grid() -> usize {
    8
}

fn default_fd_h0() -> String {
    "1/100".into()
}

fn default_fd_steps() -> usize {
    3
}

fn default_plot_tol() -> f64 {
    DEFAULT_SMOOTHNESS_TOLERANCE
}

pub fn parse_gamma(s: &str) -> Result<PlotPath> {
    let mut words = s.split_whitespace();
    let head = words.next().unwrap_or("");
    let rest = words.map(parse_q).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(match head {
        "identity" if rest.is_empty() => PlotPath::identity(),
        "abs" if rest.len() <= 1 => PlotPath::abs(rest.first().cloned().unwrap_or_else(|| qi(1))),
        "constant" if rest.len() == 1 => PlotPath::constant(rest[0].clone()),
        "poly" if !rest.is_empty() => PlotPath::Polynomial(rest),
        _ => bail!("cannot parse path `{s}`"),
    })
}

pub struct PlotArgs {
    pub config: PathBuf,
    pub t0: String,
    pub r: Option<String>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub u_table: Option<PathBuf>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

fn plot_body<P: Parametrization>(
    p: &P,
    t0: &Q,
    cfg: &PlotCheckConfig,
    eps: &Q,
) -> Result<(PlotCheckReport, Vec<(Q, Option<Q>, AxiomReport)>)> {
    let rep = check_plot_at(p, t0, cfg)?;
    let deltas: Vec<Q> = (0..6).map(|k| &cfg.delta / qi(1 << k)).collect();
    let mut cont = Vec::new();
    for r in &cfg.r_grid {
        let run = continuity_witness(p, t0, r, eps, &deltas, 16)?;
        cont.push((r.clone(), run.delta, run.report));
    }
    Ok((rep, cont))
}

pub fn plot_check(a: &PlotArgs) -> Result<bool> {
    let cfg_text = std::fs::read_to_string(&a.config)
        .with_context(|| format!("cannot read {}", a.config.display()))?;
    let file: PlotFile = toml::from_str(&cfg_text)
        .with_context(|| format!("in {}", a.config.display()))?;
    let t0 = parse_q(&a.t0)?;
    let r_grid = match &a.r {
        Some(s) => parse_list(s)?,
        None => file.r.iter().map(|s| parse_q(s)).collect::<std::result::Result<_, _>>()?,
    };
    let cfg = PlotCheckConfig {
        delta: parse_q(&file.delta)?,
        r_grid,
        grid: a.grid.unwrap_or(file.grid),
        fd_steps: PlotCheckConfig::halving_steps(parse_q(&file.fd_h0)?, file.fd_steps),
        tolerance: a.tol.unwrap_or(file.tolerance),
    };
    let eps = match &file.continuity_eps {
        Some(s) => parse_q(s)?,
        None => q(1, 10),
    };
    let domain = (parse_q(&file.domain[0])?, parse_q(&file.domain[1])?);
    let mut config = RunConfig::new(
        "plot-check",
        a.seed,
        json!({
            "t0": format_q(&t0),
            "delta": format_q(&cfg.delta),
            "r": strs(&cfg.r_grid),
            "grid": cfg.grid,
            "fd_steps": strs(&cfg.fd_steps),
            "tol": cfg.tolerance,
            "continuity_eps": format_q(&eps),
        }),
    );
    config.input(&a.config, &cfg_text);
    let mut u_rows: Option<Vec<(Q, Q)>> = None;
    let mut u_report: Option<AxiomReport> = None;
    let (rep, cont) = match (&file.tiling, &file.xs) {
        (Some(rel), None) => {
            let path = a.config.parent().unwrap_or(Path::new(".")).join(rel);
            let (base, ttext) = instance::load_tiling(&path)?;
            config.input(&path, &ttext);
            let gamma = parse_gamma(file.gamma.as_deref().unwrap_or("identity"))?;
            let plot = TilingTranslation::new(base, gamma, domain)?;
            let res = plot_body(&plot, &t0, &cfg, &eps)?;
            if let Some(table) = &a.u_table {
                let grid = u_grid(&plot.base, &t0, &cfg.delta);
                let rho = plot.family.rho.clone();
                let rec = recover_u(&plot, &t0, &grid, &cfg.r_grid[0], &rho)?;
                std::fs::write(table, rec.to_csv())
                    .with_context(|| format!("cannot write {}", table.display()))?;
                u_rows = Some(rec.rows);
                u_report = Some(rec.report);
            }
            res
        }
        (None, Some(xs)) => {
            if a.u_table.is_some() {
                bail!("--u-table needs a tiling plot");
            }
            let xs = xs.iter().map(|s| parse_q(s)).collect::<std::result::Result<Vec<_>, _>>()?;
            let paths = file
                .paths
                .as_ref()
                .context("mapping plot needs `paths`")?
                .iter()
                .map(|s| parse_gamma(s))
                .collect::<Result<Vec<_>>>()?;
            let plot = MappingPath::new(xs, paths, domain)?;
            plot_body(&plot, &t0, &cfg, &eps)?
        }
        _ => bail!("plot config needs exactly one of `tiling` or `xs`"),
    };
    let mut text = rep.render();
    text.push('\n');
    for (r, delta, _) in &cont {
        let found = delta.as_ref().map(display_q).unwrap_or_else(|| "none on grid".into());
        text.push_str(&format!("continuity witness r = {}: delta = {found}\n", display_q(r)));
    }
    if let Some(rep) = &u_report {
        text.push_str(&format!("{}\n", rep.summary()));
    }
    let passed = rep.passed() && u_report.as_ref().map_or(true, |r| !r.failed());
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    let body = json!({
        "plot": rep,
        "continuity": cont
            .iter()
            .map(|(r, d, rep)| json!({"r": format_q(r), "delta": d.as_ref().map(format_q), "report": rep}))
            .collect::<Vec<_>>(),
        "u_table": u_rows.map(|rows| rows
            .iter()
            .map(|(t, u)| json!({"t": format_q(t), "u": format_q(u)}))
            .collect::<Vec<_>>()),
        "u_recovery": u_report,
    });
    finish(&config, a.out.as_deref(), Outcome { text, passed, body })
}

/// Points `t0 ± kλ/16`, `k = 0..=7`, clipped to `(t0 - δ, t0 + δ)`.
fn u_grid(base: &Tiling1D, t0: &Q, delta: &Q) -> Vec<Q> {
    let step = scalemetric::tiling::lambda_t(base.prototiles()) / qi(16);
    (-7..=7)
        .map(|k| t0 + &step * qi(k))
        .filter(|t| (t - t0).abs() < *delta)
        .collect()
}
