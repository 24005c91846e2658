use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;

use super::{check_regularity, ArcLengthCurve, CurveError, Vec2};

/// Foot of the perpendicular from `p` to the line through `r` with unit
/// direction `t`.
pub fn pedal_point(r: Vec2, t: Vec2, p: Vec2) -> Vec2 {
    r + t * (p - r).dot(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Step halving stops once successive refinements differ by at most this.
    pub tolerance: f64,
    pub initial_substeps: usize,
    pub max_halvings: u32,
    /// Singular-point candidates need `|ped - P| < factor * curve scale`.
    pub candidate_factor: f64,
    /// Samples of the regularity monitor over the covered parameter range;
    /// 0 switches the monitor off.
    pub monitor_samples: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            tolerance: 1e-9,
            initial_substeps: 1,
            max_halvings: 12,
            candidate_factor: 1e-7,
            monitor_samples: 2001,
        }
    }
}

/// Wave front of one pedal point sampled on the arc-length grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefrontRun {
    pub pedal_point: Vec2,
    pub s: Vec<f64>,
    pub ped: Vec<Vec2>,
    pub wf: Vec<Vec2>,
    pub tangent: Vec<Vec2>,
    /// RK4 steps per grid interval at acceptance.
    pub substeps: usize,
    /// Max change between the last two refinements.
    pub last_change: f64,
    /// `max |(ped - P) . T|`.
    pub max_foot_residual: f64,
    /// `max |WF'(s) . r'(s)|` with `WF'` from central differences of the samples.
    pub max_orthogonality: f64,
    /// Refined arc-length values where `ped` meets `P`.
    pub candidates: Vec<f64>,
}

/// Node layout: the anchors are the sorted grid plus `s = 0`; every anchor
/// interval is split into `2m` equal pieces.
struct Nodes {
    anchors: Vec<f64>,
    zero_anchor: usize,
    grid_anchor: Vec<usize>,
    m: usize,
    frames: Vec<(Vec2, Vec2)>,
}

impl Nodes {
    fn build(arc: &ArcLengthCurve, grid: &[f64], m: usize) -> Result<Nodes, CurveError> {
        let mut anchors: Vec<f64> = grid.to_vec();
        let zero_anchor = match anchors.binary_search_by(|v| v.total_cmp(&0.0)) {
            Ok(i) => i,
            Err(i) => {
                anchors.insert(i, 0.0);
                i
            }
        };
        let grid_anchor: Vec<usize> = (0..grid.len())
            .map(|i| if i < zero_anchor || anchors.len() == grid.len() { i } else { i + 1 })
            .collect();
        let pieces = 2 * m;
        let mut points = Vec::with_capacity((anchors.len() - 1) * pieces + 1);
        for w in anchors.windows(2) {
            for k in 0..pieces {
                points.push(w[0] + (w[1] - w[0]) * k as f64 / pieces as f64);
            }
        }
        points.push(*anchors.last().unwrap());
        let frames = points
            .par_iter()
            .map(|&s| arc.frame(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Nodes {
            anchors,
            zero_anchor,
            grid_anchor,
            m,
            frames,
        })
    }

    fn velocity(&self, node: usize, p: Vec2) -> Vec2 {
        let (r, t) = self.frames[node];
        pedal_point(r, t, p) - p
    }

    /// Composite RK4 values of `WF` at the anchors for pedal point `p`.
    fn integrate(&self, p: Vec2) -> Vec<Vec2> {
        let n = self.anchors.len();
        let mut wf = vec![Vec2::ZERO; n];
        let pieces = 2 * self.m;
        let interval = |j: usize| -> Vec2 {
            let h = (self.anchors[j + 1] - self.anchors[j]) / self.m as f64;
            let mut acc = Vec2::ZERO;
            for i in 0..self.m {
                let base = j * pieces + 2 * i;
                let k1 = self.velocity(base, p);
                let k23 = self.velocity(base + 1, p);
                let k4 = self.velocity(base + 2, p);
                acc += (k1 + k23 * 4.0 + k4) * (h / 6.0);
            }
            acc
        };
        for j in self.zero_anchor..n - 1 {
            wf[j + 1] = wf[j] + interval(j);
        }
        for j in (0..self.zero_anchor).rev() {
            wf[j] = wf[j + 1] - interval(j);
        }
        wf
    }

    fn on_grid<T: Copy>(&self, anchor_values: &[T]) -> Vec<T> {
        self.grid_anchor.iter().map(|&a| anchor_values[a]).collect()
    }

    fn grid_frames(&self) -> Vec<(Vec2, Vec2)> {
        self.grid_anchor.iter().map(|&a| self.frames[a * 2 * self.m]).collect()
    }
}

fn max_change(a: &[Vec<Vec2>], b: &[Vec<Vec2>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.distance(*q)))
        .fold(0.0, f64::max)
}

fn validate_grid(arc: &ArcLengthCurve, grid: &[f64]) -> Result<(), CurveError> {
    if grid.is_empty() {
        return Err(CurveError::Path("empty arc-length grid".into()));
    }
    if let Some(&s) = grid.iter().find(|s| !s.is_finite()) {
        return Err(CurveError::NonFinite { s });
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CurveError::Path("arc-length grid must be strictly increasing".into()));
    }
    let (min, max) = arc.s_range();
    for &s in [grid[0], *grid.last().unwrap()].iter() {
        if s < min || s > max {
            return Err(CurveError::OutOfRange { s, min, max });
        }
    }
    Ok(())
}

/// Non-degeneracy monitor over the parameter range the grid covers.
fn monitor(arc: &ArcLengthCurve, grid: &[f64], samples: usize) -> Result<(), CurveError> {
    if samples == 0 {
        return Ok(());
    }
    let lo = arc.t_of_s(grid[0].min(0.0))?;
    let hi = arc.t_of_s(grid.last().unwrap().max(0.0))?;
    if hi > lo {
        check_regularity(arc.curve(), (lo, hi), samples).into_result()?;
    }
    Ok(())
}

/// Evolves the wave fronts of several pedal points on a shared grid, halving
/// the RK4 step until every front moves by at most the tolerance.
fn evolve_points(
    arc: &ArcLengthCurve,
    points: &[Vec2],
    grid: &[f64],
    opts: &EvolveOptions,
) -> Result<Vec<WavefrontRun>, CurveError> {
    validate_grid(arc, grid)?;
    monitor(arc, grid, opts.monitor_samples)?;
    let mut m = opts.initial_substeps.max(1);
    let mut nodes = Nodes::build(arc, grid, m)?;
    let mut fronts: Vec<Vec<Vec2>> = points.par_iter().map(|&p| nodes.integrate(p)).collect();
    let mut change = f64::INFINITY;
    for _ in 0..opts.max_halvings {
        m *= 2;
        let finer = Nodes::build(arc, grid, m)?;
        let refined: Vec<Vec<Vec2>> = points.par_iter().map(|&p| finer.integrate(p)).collect();
        change = max_change(&fronts.iter().map(|f| nodes.on_grid(f)).collect::<Vec<_>>(), &refined
            .iter()
            .map(|f| finer.on_grid(f))
            .collect::<Vec<_>>());
        nodes = finer;
        fronts = refined;
        if change <= opts.tolerance {
            break;
        }
    }
    if !(change <= opts.tolerance) {
        return Err(CurveError::NoConvergence {
            tol: opts.tolerance,
            halvings: opts.max_halvings,
            change,
        });
    }
    let frames = nodes.grid_frames();
    let scale = curve_scale(&frames);
    points
        .par_iter()
        .zip(fronts.par_iter())
        .map(|(&p, front)| {
            let wf = nodes.on_grid(front);
            if let Some(i) = wf.iter().position(|w| !w.is_finite()) {
                return Err(CurveError::NonFinite { s: grid[i] });
            }
            let ped: Vec<Vec2> = frames.iter().map(|&(r, t)| pedal_point(r, t, p)).collect();
            let tangent: Vec<Vec2> = frames.iter().map(|f| f.1).collect();
            let max_foot_residual = ped
                .iter()
                .zip(&tangent)
                .map(|(f, t)| (*f - p).dot(*t).abs())
                .fold(0.0, f64::max);
            let max_orthogonality = orthogonality_defect(grid, &wf, &tangent);
            let candidates = singular_candidates(arc, p, grid, opts.candidate_factor * scale)?;
            Ok(WavefrontRun {
                pedal_point: p,
                s: grid.to_vec(),
                ped,
                wf,
                tangent,
                substeps: m,
                last_change: change,
                max_foot_residual,
                max_orthogonality,
                candidates,
            })
        })
        .collect()
}

fn curve_scale(frames: &[(Vec2, Vec2)]) -> f64 {
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for (r, _) in frames {
        lo = Vec2::new(lo.x.min(r.x), lo.y.min(r.y));
        hi = Vec2::new(hi.x.max(r.x), hi.y.max(r.y));
    }
    let d = hi.distance(lo);
    if d > 0.0 {
        d
    } else {
        1.0
    }
}

/// `max |WF'(s) . T(s)|` with `WF'` from fourth-order finite differences
/// (one-sided at the ends) on uniform grids, and three-point differences at
/// interior samples otherwise.
fn orthogonality_defect(grid: &[f64], wf: &[Vec2], tangent: &[Vec2]) -> f64 {
    let n = grid.len();
    if n < 3 {
        return 0.0;
    }
    let h = grid[1] - grid[0];
    let uniform = n >= 5 && grid.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs());
    let stencil = |c: [f64; 5], from: usize| {
        c.iter()
            .enumerate()
            .fold(Vec2::ZERO, |acc, (k, &ck)| acc + wf[from + k] * ck)
            * (1.0 / (12.0 * h))
    };
    let derivative = |i: usize| -> Vec2 {
        if uniform {
            match i {
                0 => stencil([-25.0, 48.0, -36.0, 16.0, -3.0], 0),
                1 => stencil([-3.0, -10.0, 18.0, -6.0, 1.0], 0),
                _ if i == n - 2 => stencil([-1.0, 6.0, -18.0, 10.0, 3.0], n - 5),
                _ if i == n - 1 => stencil([3.0, -16.0, 36.0, -48.0, 25.0], n - 5),
                _ => stencil([1.0, -8.0, 0.0, 8.0, -1.0], i - 2),
            }
        } else {
            let (h0, h1) = (grid[i] - grid[i - 1], grid[i + 1] - grid[i]);
            wf[i + 1] * (h0 / (h1 * (h0 + h1))) - wf[i - 1] * (h1 / (h0 * (h0 + h1)))
                + wf[i] * ((h1 - h0) / (h0 * h1))
        }
    };
    let range = if uniform { 0..n } else { 1..n - 1 };
    range
        .map(|i| derivative(i).dot(tangent[i]).abs())
        .fold(0.0, f64::max)
}

/// Zeros of `g(s) = (ped(s) - P) . N(s)` on the grid, refined by bisection;
/// `|ped - P| = |g|`, so these are where the front velocity vanishes.
pub fn singular_candidates(
    arc: &ArcLengthCurve,
    p: Vec2,
    grid: &[f64],
    threshold: f64,
) -> Result<Vec<f64>, CurveError> {
    let g = |s: f64| -> Result<f64, CurveError> {
        let (r, t) = arc.frame(s)?;
        Ok((r - p).dot(t.perp()))
    };
    let values: Vec<f64> = grid.iter().map(|&s| g(s)).collect::<Result<_, _>>()?;
    let mut out: Vec<f64> = Vec::new();
    let push = |s: f64, out: &mut Vec<f64>| {
        if out.last().map_or(true, |&l| (s - l).abs() > 1e-12) {
            out.push(s);
        }
    };
    for i in 0..grid.len() {
        if values[i].abs() < threshold {
            push(grid[i], &mut out);
            continue;
        }
        if i + 1 < grid.len() && values[i].signum() != values[i + 1].signum() && values[i + 1].abs() >= threshold {
            let (mut a, mut b) = (grid[i], grid[i + 1]);
            let mut ga = values[i];
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                let gm = g(mid)?;
                if gm.signum() == ga.signum() {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
            }
            let root = 0.5 * (a + b);
            if g(root)?.abs() < threshold {
                push(root, &mut out);
            }
        }
    }
    Ok(out)
}

/// Wave front of a single pedal point.
pub fn wavefront_evolve(
    arc: &ArcLengthCurve,
    p: Vec2,
    grid: &[f64],
    opts: &EvolveOptions,
) -> Result<WavefrontRun, CurveError> {
    Ok(evolve_points(arc, &[p], grid, opts)?.remove(0))
}

/// `max |WF_m - WF_2m| / max |WF_2m - WF_4m|` at the grid endpoints, for
/// `m` RK4 steps per interval. About 16 for a fourth-order method.
pub fn convergence_ratio(arc: &ArcLengthCurve, p: Vec2, grid: &[f64], m: usize) -> Result<f64, CurveError> {
    validate_grid(arc, grid)?;
    let ends = |m: usize| -> Result<[Vec2; 2], CurveError> {
        let nodes = Nodes::build(arc, grid, m)?;
        let wf = nodes.on_grid(&nodes.integrate(p));
        Ok([wf[0], *wf.last().unwrap()])
    };
    let (a, b, c) = (ends(m)?, ends(2 * m)?, ends(4 * m)?);
    let d1 = a[0].distance(b[0]).max(a[1].distance(b[1]));
    let d2 = b[0].distance(c[0]).max(b[1].distance(c[1]));
    Ok(d1 / d2)
}

/// Pedal point depending on parameters `u` in `R^n`.
pub trait PedalPointPath: Send + Sync {
    fn dim(&self) -> usize;
    fn point(&self, u: &[f64]) -> Vec2;
    /// Columns `dP/du_i`.
    fn jacobian(&self, u: &[f64]) -> Vec<Vec2>;

    /// Numeric rank of `dP(u)`: singular values above `threshold`.
    fn rank_at(&self, u: &[f64], threshold: f64) -> usize {
        singular_values(&self.jacobian(u)).iter().filter(|&&s| s > threshold).count()
    }
}

/// Singular values of the `2 x n` matrix with the given columns, largest first.
pub fn singular_values(columns: &[Vec2]) -> Vec<f64> {
    let (mut a, mut b, mut d) = (0.0, 0.0, 0.0);
    for c in columns {
        a += c.x * c.x;
        b += c.x * c.y;
        d += c.y * c.y;
    }
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    let count = columns.len().min(2);
    [mean + rad, (mean - rad).max(0.0)]
        .iter()
        .take(count)
        .map(|l| l.sqrt())
        .collect()
}

/// `P(u) = base + sum u_i d_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPedalPath {
    pub base: Vec2,
    pub directions: Vec<Vec2>,
}

impl PedalPointPath for LinearPedalPath {
    fn dim(&self) -> usize {
        self.directions.len()
    }

    fn point(&self, u: &[f64]) -> Vec2 {
        self.directions
            .iter()
            .zip(u)
            .fold(self.base, |acc, (d, &ui)| acc + *d * ui)
    }

    fn jacobian(&self, _u: &[f64]) -> Vec<Vec2> {
        self.directions.clone()
    }
}

pub const RANK_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct UTrace {
    pub u: Vec<f64>,
    /// Rank of `dP(u)` at the singular-value threshold.
    pub path_rank: usize,
    pub run: WavefrontRun,
}

impl UTrace {
    /// Whether `(r, P)` is regular here: `dP(u)` has full rank `n`.
    pub fn regular(&self) -> bool {
        self.path_rank == self.u.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace {
    pub s: Vec<f64>,
    pub traces: Vec<UTrace>,
    pub tolerance: f64,
}

/// Cartesian product of per-axis grids, first axis slowest.
pub fn product_grid(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

/// The unfolding `(WF_{r, P(u)}(s), u)` sampled on `s_grid x u_grid`.
pub fn family_evolve(
    arc: &ArcLengthCurve,
    path: &dyn PedalPointPath,
    s_grid: &[f64],
    u_grid: &[Vec<f64>],
    opts: &EvolveOptions,
) -> Result<EvolutionTrace, CurveError> {
    if let Some(u) = u_grid.iter().find(|u| u.len() != path.dim()) {
        return Err(CurveError::Path(format!(
            "parameter point {u:?} has {} coordinates, path expects {}",
            u.len(),
            path.dim()
        )));
    }
    let points: Vec<Vec2> = u_grid.iter().map(|u| path.point(u)).collect();
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(CurveError::AtParameter {
            u: u_grid[i].clone(),
            source: Box::new(CurveError::Path("pedal point is not finite".into())),
        });
    }
    let runs = match evolve_points(arc, &points, s_grid, opts) {
        Ok(r) => r,
        Err(e) => {
            // rerun one by one to attribute the failure to a parameter value
            for (u, &p) in u_grid.iter().zip(&points) {
                if let Err(inner) = evolve_points(arc, &[p], s_grid, opts) {
                    return Err(CurveError::AtParameter {
                        u: u.clone(),
                        source: Box::new(inner),
                    });
                }
            }
            return Err(e);
        }
    };
    let traces = u_grid
        .iter()
        .zip(runs)
        .map(|(u, run)| UTrace {
            u: u.clone(),
            path_rank: path.rank_at(u, RANK_THRESHOLD),
            run,
        })
        .collect();
    Ok(EvolutionTrace {
        s: s_grid.to_vec(),
        traces,
        tolerance: opts.tolerance,
    })
}

impl EvolutionTrace {
    pub fn num_params(&self) -> usize {
        self.traces.first().map_or(0, |t| t.u.len())
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        let n = self.num_params();
        let mut header: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
        header.extend(["s", "ped_x", "ped_y", "wf_x", "wf_y", "t_x", "t_y"].map(String::from));
        writeln!(w, "{}", header.join(","))?;
        for tr in &self.traces {
            let u: String = tr.u.iter().map(|v| format!("{v},")).collect();
            let run = &tr.run;
            for i in 0..run.s.len() {
                writeln!(
                    w,
                    "{u}{},{},{},{},{},{},{}",
                    run.s[i],
                    run.ped[i].x,
                    run.ped[i].y,
                    run.wf[i].x,
                    run.wf[i].y,
                    run.tangent[i].x,
                    run.tangent[i].y
                )?;
            }
        }
        Ok(())
    }

    /// Two panels: pedal curves on the left, wave fronts on the right, one
    /// polyline per parameter value.
    pub fn to_svg(&self) -> String {
        const PANEL: f64 = 400.0;
        const PAD: f64 = 20.0;
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            2.0 * PANEL,
            PANEL + 30.0,
            2.0 * PANEL,
            PANEL + 30.0
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let count = self.traces.len().max(1);
        for (panel, (title, pick)) in [
            ("pedal curves", (|r: &WavefrontRun| &r.ped) as fn(&WavefrontRun) -> &Vec<Vec2>),
            ("wave fronts", |r: &WavefrontRun| &r.wf),
        ]
        .into_iter()
        .enumerate()
        {
            let all: Vec<Vec2> = self.traces.iter().flat_map(|t| pick(&t.run).iter().copied()).collect();
            let (lo, hi) = all.iter().fold(
                (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
                |(lo, hi), p| (Vec2::new(lo.x.min(p.x), lo.y.min(p.y)), Vec2::new(hi.x.max(p.x), hi.y.max(p.y))),
            );
            let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
            let k = (PANEL - 2.0 * PAD) / span;
            let ox = panel as f64 * PANEL + PAD;
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{title}</text>"#,
                ox + 0.5 * (PANEL - 2.0 * PAD),
                PANEL + 20.0
            );
            for (i, tr) in self.traces.iter().enumerate() {
                let hue = 240.0 * i as f64 / count as f64;
                let pts: Vec<String> = pick(&tr.run)
                    .iter()
                    .map(|p| format!("{:.3},{:.3}", ox + (p.x - lo.x) * k, PANEL - PAD - (p.y - lo.y) * k))
                    .collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="hsl({hue:.0},70%,45%)" stroke-width="1" points="{}"/>"#,
                    pts.join(" ")
                );
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}
