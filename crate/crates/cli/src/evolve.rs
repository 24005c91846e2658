use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;

use pedalfront::curve::{
    covering_domain, family_evolve, linspace, Circle, CurveError, Ellipse, EvolveOptions, LinearPedalPath, Parabola,
    PlaneCurve, PolynomialCurve, Vec2,
};

use crate::Failure;

#[derive(Args)]
pub struct EvolveArgs {
    /// `circle:R`, `ellipse:A,B`, `parabola:A` or `poly:X0,X1,..;Y0,Y1,..`.
    #[arg(long)]
    curve: String,
    /// `point:X,Y` or `linear:BX,BY;DX1,DY1[;DX2,DY2..]` for `P(u) = B + sum u_i D_i`.
    #[arg(long, default_value = "point:0,0")]
    pedal: String,
    #[arg(long, default_value_t = -1.5, allow_hyphen_values = true)]
    s_min: f64,
    #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
    s_max: f64,
    #[arg(long, default_value_t = 2001)]
    s_samples: usize,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    u_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    u_max: f64,
    /// Samples per parameter axis.
    #[arg(long, default_value_t = 5)]
    u_samples: usize,
    /// Step-halving tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// CSV output; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn numbers(s: &str, what: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Usage(format!("{what}: `{t}` is not a finite number")))
        })
        .collect()
}

fn exactly<const N: usize>(s: &str, what: &str) -> Result<[f64; N], Failure> {
    let v = numbers(s, what)?;
    v.try_into()
        .map_err(|_| Failure::Usage(format!("{what}: expected {N} comma-separated numbers")))
}

pub fn parse_curve(spec: &str) -> Result<Arc<dyn PlaneCurve>, Failure> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("curve spec `{spec}` needs the form kind:values")))?;
    let curve: Arc<dyn PlaneCurve> = match kind {
        "circle" => {
            let [r] = exactly::<1>(rest, "circle")?;
            if r <= 0.0 {
                return Err(Failure::Usage("circle radius must be positive".into()));
            }
            Arc::new(Circle::through_origin(r))
        }
        "ellipse" => {
            let [a, b] = exactly::<2>(rest, "ellipse")?;
            if a <= 0.0 || b <= 0.0 {
                return Err(Failure::Usage("ellipse semi-axes must be positive".into()));
            }
            Arc::new(Ellipse::through_origin(a, b))
        }
        "parabola" => {
            let [a] = exactly::<1>(rest, "parabola")?;
            Arc::new(Parabola { a })
        }
        "poly" => {
            let (xs, ys) = rest
                .split_once(';')
                .ok_or_else(|| Failure::Usage("poly: expected `X0,X1,..;Y0,Y1,..`".into()))?;
            Arc::new(PolynomialCurve {
                x: numbers(xs, "poly x")?,
                y: numbers(ys, "poly y")?,
            })
        }
        other => return Err(Failure::Usage(format!("unknown curve kind `{other}`"))),
    };
    Ok(curve)
}

pub fn parse_pedal(spec: &str) -> Result<LinearPedalPath, Failure> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("pedal spec `{spec}` needs the form kind:values")))?;
    match kind {
        "point" => {
            let [x, y] = exactly::<2>(rest, "point")?;
            Ok(LinearPedalPath {
                base: Vec2::new(x, y),
                directions: Vec::new(),
            })
        }
        "linear" => {
            let mut parts = rest.split(';');
            let [bx, by] = exactly::<2>(parts.next().unwrap_or(""), "linear base")?;
            let directions = parts
                .map(|p| exactly::<2>(p, "linear direction").map(|[x, y]| Vec2::new(x, y)))
                .collect::<Result<Vec<_>, _>>()?;
            if directions.is_empty() {
                return Err(Failure::Usage("linear: at least one direction is required".into()));
            }
            Ok(LinearPedalPath {
                base: Vec2::new(bx, by),
                directions,
            })
        }
        other => Err(Failure::Usage(format!("unknown pedal path kind `{other}`"))),
    }
}

fn curve_failure(e: CurveError) -> Failure {
    match e {
        CurveError::Path(_) | CurveError::BadDomain { .. } => Failure::Usage(e.to_string()),
        _ => Failure::Check(e.to_string()),
    }
}

pub fn run(args: &EvolveArgs) -> Result<(), Failure> {
    let curve = parse_curve(&args.curve)?;
    let path = parse_pedal(&args.pedal)?;
    if !(args.s_min <= 0.0 && 0.0 <= args.s_max && args.s_min < args.s_max) {
        return Err(Failure::Usage("need s-min <= 0 <= s-max with s-min < s-max".into()));
    }
    if args.s_samples < 2 || args.u_samples == 0 {
        return Err(Failure::Usage("need at least 2 s-samples and 1 u-sample".into()));
    }
    let arc = covering_domain(curve, (args.s_min, args.s_max), 2000, 1.0).map_err(curve_failure)?;
    let s_grid = linspace(args.s_min, args.s_max, args.s_samples);
    let axis = linspace(args.u_min, args.u_max, args.u_samples);
    let u_grid = pedalfront::curve::product_grid(&vec![axis; path.directions.len()]);
    let opts = EvolveOptions {
        tolerance: args.tol,
        ..EvolveOptions::default()
    };
    let trace = family_evolve(&arc, &path, &s_grid, &u_grid, &opts).map_err(curve_failure)?;

    match &args.csv {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            trace
                .write_csv(io::BufWriter::new(file))
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        None => {
            let stdout = io::stdout();
            trace
                .write_csv(stdout.lock())
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    if let Some(p) = &args.svg {
        fs::write(p, trace.to_svg()).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    let mut err = io::stderr().lock();
    for tr in &trace.traces {
        let run = &tr.run;
        let _ = writeln!(
            err,
            "u = {:?}: P = ({}, {}), rank dP = {}, substeps {}, orthogonality {:.2e}, singular candidates {:?}",
            tr.u,
            run.pedal_point.x,
            run.pedal_point.y,
            tr.path_rank,
            run.substeps,
            run.max_orthogonality,
            run.candidates
        );
    }
    Ok(())
}
