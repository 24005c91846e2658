//! Binary64 lab for pedal curves and their wave fronts.
//!
//! A curve is reparametrized by arc length (adaptive Simpson for the
//! cumulative length, Newton for the inverse), the pedal point of each
//! tangent line is formed directly, and the wave front is the primitive
//! `WF(s) = int_0^s (ped(t) - P) dt`.

mod evolve;
mod geometry;

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use evolve::{
    convergence_ratio, family_evolve, pedal_point, product_grid, singular_candidates, singular_values,
    wavefront_evolve, EvolutionTrace, EvolveOptions, LinearPedalPath, PedalPointPath, UTrace, WavefrontRun,
    RANK_THRESHOLD,
};
pub use geometry::Vec2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("singular point at t = {t}: |r'(t)| = {speed:e}")]
    Singular { t: f64, speed: f64 },
    #[error("inflection point near t = {t}: signed curvature changes sign or vanishes")]
    Inflection { t: f64 },
    #[error("non-finite value at s = {s}")]
    NonFinite { s: f64 },
    #[error("arc length {s} outside the reparametrized range [{min}, {max}]")]
    OutOfRange { s: f64, min: f64, max: f64 },
    #[error("domain ({a}, {b}) must contain 0 in its interior")]
    BadDomain { a: f64, b: f64 },
    #[error("step halving did not reach tolerance {tol:e} after {halvings} halvings (last change {change:e})")]
    NoConvergence { tol: f64, halvings: u32, change: f64 },
    #[error("pedal point path: {0}")]
    Path(String),
    #[error("at u = {u:?}: {source}")]
    AtParameter {
        u: Vec<f64>,
        #[source]
        source: Box<CurveError>,
    },
}

/// Regular plane curve with closed-form first and second derivatives.
pub trait PlaneCurve: fmt::Debug + Send + Sync {
    fn point(&self, t: f64) -> Vec2;
    fn velocity(&self, t: f64) -> Vec2;
    fn acceleration(&self, t: f64) -> Vec2;

    fn speed(&self, t: f64) -> f64 {
        self.velocity(t).norm()
    }

    fn signed_curvature(&self, t: f64) -> f64 {
        let v = self.velocity(t);
        let a = self.acceleration(t);
        v.cross(a) / v.norm().powi(3)
    }
}

/// `center + R (cos(phase + t), sin(phase + t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Vec2,
    pub radius: f64,
    pub phase: f64,
}

impl Circle {
    /// Circle through the origin with tangent `(1, 0)` there:
    /// `(R sin t, R - R cos t)`.
    pub fn through_origin(radius: f64) -> Self {
        Circle {
            center: Vec2::new(0.0, radius),
            radius,
            phase: -FRAC_PI_2,
        }
    }
}

impl PlaneCurve for Circle {
    fn point(&self, t: f64) -> Vec2 {
        let (s, c) = (self.phase + t).sin_cos();
        self.center + Vec2::new(c, s) * self.radius
    }

    fn velocity(&self, t: f64) -> Vec2 {
        let (s, c) = (self.phase + t).sin_cos();
        Vec2::new(-s, c) * self.radius
    }

    fn acceleration(&self, t: f64) -> Vec2 {
        let (s, c) = (self.phase + t).sin_cos();
        Vec2::new(-c, -s) * self.radius
    }
}

/// `center + (A cos(phase + t), B sin(phase + t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Vec2,
    pub a: f64,
    pub b: f64,
    pub phase: f64,
}

impl Ellipse {
    /// `(A sin t, B - B cos t)`.
    pub fn through_origin(a: f64, b: f64) -> Self {
        Ellipse {
            center: Vec2::new(0.0, b),
            a,
            b,
            phase: -FRAC_PI_2,
        }
    }
}

impl PlaneCurve for Ellipse {
    fn point(&self, t: f64) -> Vec2 {
        let (s, c) = (self.phase + t).sin_cos();
        self.center + Vec2::new(self.a * c, self.b * s)
    }

    fn velocity(&self, t: f64) -> Vec2 {
        let (s, c) = (self.phase + t).sin_cos();
        Vec2::new(-self.a * s, self.b * c)
    }

    fn acceleration(&self, t: f64) -> Vec2 {
        let (s, c) = (self.phase + t).sin_cos();
        Vec2::new(-self.a * c, -self.b * s)
    }
}

/// `(t, A t^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parabola {
    pub a: f64,
}

impl PlaneCurve for Parabola {
    fn point(&self, t: f64) -> Vec2 {
        Vec2::new(t, self.a * t * t)
    }

    fn velocity(&self, t: f64) -> Vec2 {
        Vec2::new(1.0, 2.0 * self.a * t)
    }

    fn acceleration(&self, _t: f64) -> Vec2 {
        Vec2::new(0.0, 2.0 * self.a)
    }
}

/// `(sum x_k t^k, sum y_k t^k)`, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCurve {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

impl PlaneCurve for PolynomialCurve {
    fn point(&self, t: f64) -> Vec2 {
        Vec2::new(horner(&self.x, t), horner(&self.y, t))
    }

    fn velocity(&self, t: f64) -> Vec2 {
        Vec2::new(
            horner(&derivative_coeffs(&self.x), t),
            horner(&derivative_coeffs(&self.y), t),
        )
    }

    fn acceleration(&self, t: f64) -> Vec2 {
        Vec2::new(
            horner(&derivative_coeffs(&derivative_coeffs(&self.x)), t),
            horner(&derivative_coeffs(&derivative_coeffs(&self.y)), t),
        )
    }
}

/// Sample-resolution check of regularity and absence of inflections.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub samples: usize,
    pub min_speed: f64,
    pub min_abs_curvature: f64,
    pub first_singular: Option<f64>,
    pub first_inflection: Option<f64>,
}

impl RegularityReport {
    pub fn is_ok(&self) -> bool {
        self.first_singular.is_none() && self.first_inflection.is_none()
    }

    pub fn into_result(self) -> Result<Self, CurveError> {
        if let Some(t) = self.first_singular {
            return Err(CurveError::Singular { t, speed: self.min_speed });
        }
        if let Some(t) = self.first_inflection {
            return Err(CurveError::Inflection { t });
        }
        Ok(self)
    }
}

pub const SPEED_FLOOR: f64 = 1e-9;
pub const CURVATURE_FLOOR: f64 = 1e-12;

pub fn check_regularity(curve: &dyn PlaneCurve, domain: (f64, f64), samples: usize) -> RegularityReport {
    let samples = samples.max(2);
    let (a, b) = domain;
    let mut report = RegularityReport {
        samples,
        min_speed: f64::INFINITY,
        min_abs_curvature: f64::INFINITY,
        first_singular: None,
        first_inflection: None,
    };
    let mut prev_sign = 0.0;
    for i in 0..samples {
        let t = a + (b - a) * i as f64 / (samples - 1) as f64;
        let speed = curve.speed(t);
        report.min_speed = report.min_speed.min(speed);
        if !(speed > SPEED_FLOOR) {
            report.first_singular.get_or_insert(t);
            continue;
        }
        let k = curve.signed_curvature(t);
        report.min_abs_curvature = report.min_abs_curvature.min(k.abs());
        if !(k.abs() > CURVATURE_FLOOR) || (prev_sign != 0.0 && k.signum() != prev_sign) {
            report.first_inflection.get_or_insert(t);
        }
        prev_sign = k.signum();
    }
    report
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

const QUAD_TOL: f64 = 1e-14;

/// A curve together with its arc-length table; `s = 0` at `t = 0`.
#[derive(Debug, Clone)]
pub struct ArcLengthCurve {
    curve: Arc<dyn PlaneCurve>,
    knots_t: Vec<f64>,
    knots_s: Vec<f64>,
}

/// Builds the arc-length table on `domain` with `resolution` intervals.
pub fn arc_length_reparametrize(
    curve: Arc<dyn PlaneCurve>,
    domain: (f64, f64),
    resolution: usize,
) -> Result<ArcLengthCurve, CurveError> {
    let (a, b) = domain;
    if !(a < 0.0 && 0.0 < b) {
        return Err(CurveError::BadDomain { a, b });
    }
    let resolution = resolution.max(2);
    let regularity = check_regularity(curve.as_ref(), domain, resolution + 1);
    if let Some(t) = regularity.first_singular {
        return Err(CurveError::Singular { t, speed: regularity.min_speed });
    }
    let h = (b - a) / resolution as f64;
    let mut neg: Vec<f64> = (1..).map(|k| -(k as f64) * h).take_while(|&t| t > a).collect();
    neg.push(a);
    let mut pos: Vec<f64> = (1..).map(|k| k as f64 * h).take_while(|&t| t < b).collect();
    pos.push(b);
    let speed = |t: f64| curve.speed(t);
    let mut cum_neg = Vec::with_capacity(neg.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    for &t in &neg {
        acc -= adaptive_simpson(&speed, t, prev, QUAD_TOL);
        cum_neg.push(acc);
        prev = t;
    }
    let mut cum_pos = Vec::with_capacity(pos.len());
    acc = 0.0;
    prev = 0.0;
    for &t in &pos {
        acc += adaptive_simpson(&speed, prev, t, QUAD_TOL);
        cum_pos.push(acc);
        prev = t;
    }
    let mut knots_t: Vec<f64> = neg.iter().rev().copied().collect();
    let mut knots_s: Vec<f64> = cum_neg.iter().rev().copied().collect();
    knots_t.push(0.0);
    knots_s.push(0.0);
    knots_t.extend(pos);
    knots_s.extend(cum_pos);
    if knots_s.iter().any(|s| !s.is_finite()) {
        return Err(CurveError::NonFinite { s: f64::NAN });
    }
    Ok(ArcLengthCurve { curve, knots_t, knots_s })
}

impl ArcLengthCurve {
    pub fn curve(&self) -> &dyn PlaneCurve {
        self.curve.as_ref()
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.knots_s[0], *self.knots_s.last().unwrap())
    }

    pub fn t_range(&self) -> (f64, f64) {
        (self.knots_t[0], *self.knots_t.last().unwrap())
    }

    /// Parameter value `t` with arc length `s` from `t = 0`.
    pub fn t_of_s(&self, s: f64) -> Result<f64, CurveError> {
        let (min, max) = self.s_range();
        if !s.is_finite() {
            return Err(CurveError::NonFinite { s });
        }
        if s < min || s > max {
            return Err(CurveError::OutOfRange { s, min, max });
        }
        let i = match self.knots_s.partition_point(|&k| k <= s) {
            0 => 0,
            p => (p - 1).min(self.knots_s.len() - 2),
        };
        let (t0, t1) = (self.knots_t[i], self.knots_t[i + 1]);
        let (s0, s1) = (self.knots_s[i], self.knots_s[i + 1]);
        if s == s0 {
            return Ok(t0);
        }
        let speed = |t: f64| self.curve.speed(t);
        let (mut lo, mut hi) = (t0, t1);
        let mut t = t0 + (t1 - t0) * (s - s0) / (s1 - s0);
        for _ in 0..60 {
            let residual = s0 + adaptive_simpson(&speed, t0, t, QUAD_TOL) - s;
            if residual > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let mut next = t - residual / speed(t);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let done = (next - t).abs() <= 1e-15 * (1.0 + t.abs());
            t = next;
            if done {
                break;
            }
        }
        Ok(t)
    }

    pub fn point(&self, s: f64) -> Result<Vec2, CurveError> {
        Ok(self.curve.point(self.t_of_s(s)?))
    }

    /// Unit tangent `r'(s)`.
    pub fn tangent(&self, s: f64) -> Result<Vec2, CurveError> {
        let v = self.curve.velocity(self.t_of_s(s)?);
        Ok(v * (1.0 / v.norm()))
    }

    /// Point and unit tangent in one inversion.
    pub fn frame(&self, s: f64) -> Result<(Vec2, Vec2), CurveError> {
        let t = self.t_of_s(s)?;
        let v = self.curve.velocity(t);
        Ok((self.curve.point(t), v * (1.0 / v.norm())))
    }

    /// `| |dr/ds| - 1 |` from a five-point central difference of positions.
    pub fn unit_speed_defect(&self, s: f64, h: f64) -> Result<f64, CurveError> {
        let p = |d: f64| self.point(s + d);
        let d = (p(-2.0 * h)? - p(2.0 * h)? + (p(h)? - p(-h)?) * 8.0) * (1.0 / (12.0 * h));
        Ok((d.norm() - 1.0).abs())
    }
}

/// Uniform grid of `samples` points on `[a, b]`.
pub fn linspace(a: f64, b: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..samples)
            .map(|i| a + (b - a) * i as f64 / (samples - 1) as f64)
            .collect(),
    }
}

/// Smallest symmetric `t` domain `[-T, T]` (`T` doubling from `start`)
/// whose arc-length image covers `s_range`.
pub fn covering_domain(
    curve: Arc<dyn PlaneCurve>,
    s_range: (f64, f64),
    resolution: usize,
    start: f64,
) -> Result<ArcLengthCurve, CurveError> {
    let mut t = start.max(1e-3);
    for _ in 0..40 {
        let arc = arc_length_reparametrize(curve.clone(), (-t, t), resolution)?;
        let (lo, hi) = arc.s_range();
        if lo <= s_range.0 && hi >= s_range.1 {
            return Ok(arc);
        }
        t *= 2.0;
    }
    Err(CurveError::OutOfRange {
        s: s_range.1,
        min: f64::NAN,
        max: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_is_already_unit_speed() {
        let c = Arc::new(Circle { center: Vec2::ZERO, radius: 1.0, phase: 0.0 });
        let arc = arc_length_reparametrize(c, (-2.0, 2.0), 200).unwrap();
        for &s in &[-1.9, -0.3, 0.0, 0.77, 1.99] {
            assert!((arc.t_of_s(s).unwrap() - s).abs() < 1e-12);
        }
    }

    #[test]
    fn radius_two_circle_halves_parameter() {
        let c = Arc::new(Circle::through_origin(2.0));
        let arc = arc_length_reparametrize(c, (-1.0, 1.0), 100).unwrap();
        for &s in &[-1.5, 0.2, 1.9] {
            assert!((arc.t_of_s(s).unwrap() - s / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parabola_unit_speed_at_many_samples() {
        let arc = arc_length_reparametrize(Arc::new(Parabola { a: 1.0 }), (-1.0, 1.0), 400).unwrap();
        let (lo, hi) = arc.s_range();
        let worst = linspace(lo + 0.01, hi - 0.01, 1000)
            .into_iter()
            .map(|s| arc.unit_speed_defect(s, 1e-3).unwrap())
            .fold(0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn parabola_arc_length_closed_form() {
        // s(t) = (t sqrt(1+4t^2))/2 + asinh(2t)/4
        let arc = arc_length_reparametrize(Arc::new(Parabola { a: 1.0 }), (-1.0, 1.0), 50).unwrap();
        let s = |t: f64| 0.5 * t * (1.0 + 4.0 * t * t).sqrt() + 0.25 * (2.0 * t).asinh();
        for &t in &[-0.9, -0.2, 0.4, 0.95] {
            assert!((arc.t_of_s(s(t)).unwrap() - t).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_curve_rejected() {
        // (t^2, t^3) has a cusp at 0
        let c = PolynomialCurve { x: vec![0.0, 0.0, 1.0], y: vec![0.0, 0.0, 0.0, 1.0] };
        let err = arc_length_reparametrize(Arc::new(c), (-1.0, 1.0), 10).unwrap_err();
        assert!(matches!(err, CurveError::Singular { t, .. } if t.abs() < 1e-12));
    }

    #[test]
    fn inflection_reported() {
        // (t, t^3) inflects at 0
        let c = PolynomialCurve { x: vec![0.0, 1.0], y: vec![0.0, 0.0, 0.0, 1.0] };
        let r = check_regularity(&c, (-1.0, 1.0), 101);
        assert!(r.first_singular.is_none());
        assert!(r.first_inflection.is_some());
        assert!(check_regularity(&Parabola { a: 0.5 }, (-3.0, 3.0), 101).is_ok());
    }

    #[test]
    fn curvature_of_builtins() {
        let c = Circle::through_origin(2.0);
        assert!((c.signed_curvature(0.3) - 0.5).abs() < 1e-14);
        let e = Ellipse::through_origin(2.0, 1.0);
        // at t = 0: kappa = B / A^2
        assert!((e.signed_curvature(0.0) - 0.25).abs() < 1e-14);
        let p = Parabola { a: 1.5 };
        assert!((p.signed_curvature(0.0) - 3.0).abs() < 1e-14);
        let poly = PolynomialCurve { x: vec![0.0, 1.0], y: vec![0.0, 0.0, 1.5] };
        assert!((poly.signed_curvature(0.7) - p.signed_curvature(0.7)).abs() < 1e-14);
    }

    #[test]
    fn covering_domain_grows() {
        let arc = covering_domain(Arc::new(Circle::through_origin(0.25)), (-1.5, 1.5), 400, 1.0).unwrap();
        let (lo, hi) = arc.s_range();
        assert!(lo <= -1.5 && hi >= 1.5);
    }
}
