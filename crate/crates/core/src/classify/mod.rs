//! Recognition criteria for pedal-type and normalized Legendrian germs.
//!
//! Legendrian germs are read off the Legendrian-Jacobian `LJ`: the first
//! nonvanishing pure x-derivative at the origin gives `k`, and the local
//! algebra condition on `(LJ, d_x LJ, .., d_x^(k-1) LJ)` is decided by the
//! rank of their gradients at the origin. Pedal-type germs go through the
//! Morse reduction of `p` and the parameter germ `q(y)` it leaves behind.
//!
//! `LJ` is only known up to a positive unit here (see [`crate::germ`]).
//! Multiplying by a unit changes neither the ideal generated by
//! `LJ, .., d_x^(k-1) LJ` nor which x-derivative is the first to be nonzero.

pub mod local_algebra;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::germ::normal_forms::{quartic_family, tangent_developable, Sign};
use crate::germ::{
    self, compute_normal_field, differentiate, is_normalized_legendrian, is_pedal_unfolding_type,
    legendrian_jacobian, MapGerm, PedalFactorization, PedalRejection,
};
use crate::jet::{int, rat, Jet, Order, Rational, Var};
use crate::linalg;

pub use local_algebra::{compare_with_model, OracleComparison};

/// Classification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NonSingular,
    CuspCrossRn,
    #[serde(rename = "SwallowtailCrossRn-1")]
    SwallowtailCrossRn1,
    /// Legendrian `A_m` with `m = k + 1 >= 4`.
    LegendrianA(u32),
    Sk { k: u32, sign: Sign },
    #[serde(rename = "WhitneyUmbrellaCrossRn-1")]
    WhitneyUmbrellaCrossRn1,
    UndeterminedAtTruncation,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NonSingular => write!(f, "NonSingular"),
            Verdict::CuspCrossRn => write!(f, "CuspCrossRn"),
            Verdict::SwallowtailCrossRn1 => write!(f, "SwallowtailCrossRn-1"),
            Verdict::LegendrianA(m) => write!(f, "LegendrianA({m})"),
            Verdict::Sk { k, sign } => write!(f, "Sk({k}, {sign})"),
            Verdict::WhitneyUmbrellaCrossRn1 => write!(f, "WhitneyUmbrellaCrossRn-1"),
            Verdict::UndeterminedAtTruncation => write!(f, "UndeterminedAtTruncation"),
            Verdict::NotApplicable => write!(f, "NotApplicable"),
        }
    }
}

/// One criterion that was evaluated, with the values it saw.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub criterion: String,
    pub values: Vec<(String, String)>,
}

impl Evidence {
    fn new(criterion: impl Into<String>) -> Self {
        Evidence {
            criterion: criterion.into(),
            values: Vec::new(),
        }
    }

    fn with(mut self, name: impl Into<String>, value: impl ToString) -> Self {
        self.values.push((name.into(), value.to_string()));
        self
    }
}

/// Which branch of the pedal-type pipeline a germ took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PedalRoute {
    /// `p(0,0) != 0`.
    NonVanishing,
    /// `p(0,0) = 0`, `dp/dx(0,0) != 0`: the integration is expected to be a cusp.
    FoldOfP,
    /// `p` is Morse in `x`; the verdict comes from `q(y)`.
    Morse,
    /// `d^2p/dx^2(0,0) = 0`.
    NotMorse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pedal_route: Option<PedalRoute>,
}

impl ClassificationReport {
    fn new(verdict: Verdict, evidence: Vec<Evidence>) -> Self {
        ClassificationReport {
            verdict,
            evidence,
            notes: Vec::new(),
            pedal_route: None,
        }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        let mut r = Self::new(Verdict::NotApplicable, Vec::new());
        r.notes.push(reason.into());
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not of pedal unfolding type: {0}")]
    NotPedalType(PedalRejection),
    #[error("not a normalized Legendrian germ: {}", .0.join("; "))]
    NotNormalizedLegendrian(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseRejection {
    #[error("p(0,0) = {0} is nonzero")]
    NotVanishing(String),
    #[error("dp/dx(0,0) = {0} is nonzero")]
    NotCritical(String),
    #[error("d^2p/dx^2(0,0) = 0, p is not Morse in x")]
    NotMorse,
}

/// `p(x, y) = ±u (x - xi(y))^2 + q(y)` data from the Morse lemma with
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReduction {
    /// `xi(y)` with `xi(0) = 0` and `dp/dx(xi(y), y) = 0`.
    pub critical_path: Jet,
    /// `q(y) = p(xi(y), y)`.
    pub reduced_q: Jet,
    /// Sign of `d^2p/dx^2(0,0)`.
    pub leading_sign: Sign,
}

/// Solves `dp/dx(xi(y), y) = 0` by the chord iteration
/// `xi <- xi - dp/dx(xi, y) / p_xx(0,0)`, which fixes one more y-degree of
/// `xi` per step.
pub fn morse_reduce(p: &Jet) -> Result<MorseReduction, MorseRejection> {
    let p0 = p.value_at_origin();
    if !p0.is_zero() {
        return Err(MorseRejection::NotVanishing(p0.to_string()));
    }
    let px0 = p.gradient_at_origin()[0].clone();
    if !px0.is_zero() {
        return Err(MorseRejection::NotCritical(px0.to_string()));
    }
    let hessian = p.axis_coefficient(Var::X, 2) * int(2);
    if hessian.is_zero() || p.order() < 2 {
        return Err(MorseRejection::NotMorse);
    }
    let n = p.num_params();
    let g = p.partial_derivative(Var::X);
    let inv = int(1) / &hessian;
    let mut xi = Jet::zero(n, g.order());
    for _ in 0..=g.order() {
        let residual = g
            .substitute(&[(Var::X, xi.clone())])
            .expect("xi vanishes at the origin");
        if residual.is_zero() {
            break;
        }
        xi = &xi - &residual.scale(&inv);
    }
    let q = p
        .substitute(&[(Var::X, xi.clone())])
        .expect("xi vanishes at the origin");
    Ok(MorseReduction {
        critical_path: xi,
        reduced_q: q,
        leading_sign: if hessian.is_positive() { Sign::Plus } else { Sign::Minus },
    })
}

/// Classifies a germ of pedal unfolding type.
pub fn classify_pedal_type(germ: &MapGerm) -> Result<ClassificationReport, ClassifyError> {
    let factorization = is_pedal_unfolding_type(germ).map_err(ClassifyError::NotPedalType)?;
    Ok(classify_pedal_factorization(&factorization))
}

/// Classification from an already recovered factorization `(n p, p, y)`.
pub fn classify_pedal_factorization(fac: &PedalFactorization) -> ClassificationReport {
    let p = &fac.p_factor;
    let n = p.num_params();
    let p0 = p.value_at_origin();
    let px0 = p.gradient_at_origin()[0].clone();
    let factor = Evidence::new("pedal factorization")
        .with("n", &fac.n_factor)
        .with("p", p)
        .with("dn/dx(0,0)", &fac.n_factor.gradient_at_origin()[0]);
    let origin = Evidence::new("p at origin").with("p(0,0)", &p0).with("dp/dx(0,0)", &px0);

    if !p0.is_zero() {
        let mut r = ClassificationReport::new(Verdict::NonSingular, vec![factor, origin]);
        r.pedal_route = Some(PedalRoute::NonVanishing);
        r.notes.push("p(0,0) != 0: the germ misses the origin; its integration is non-singular".into());
        return r;
    }
    if !px0.is_zero() {
        let mut r = ClassificationReport::new(Verdict::NonSingular, vec![factor, origin]);
        r.pedal_route = Some(PedalRoute::FoldOfP);
        r.notes.push(
            "dp/dx(0,0) != 0: Morse pipeline not applicable; the integration is expected to be a cusp".into(),
        );
        return r;
    }
    let morse = match morse_reduce(p) {
        Ok(m) => m,
        Err(e) => {
            let mut r = ClassificationReport::new(
                Verdict::NotApplicable,
                vec![factor, origin, Evidence::new("Morse in x").with("rejected", &e)],
            );
            r.pedal_route = Some(PedalRoute::NotMorse);
            return r;
        }
    };
    let q = &morse.reduced_q;
    let dq: Vec<Rational> = q.gradient_at_origin()[1..].to_vec();
    let morse_ev = Evidence::new("Morse reduction")
        .with("xi(y)", &morse.critical_path)
        .with("q(y)", q)
        .with("sign of d2p/dx2(0,0)", morse.leading_sign)
        .with(
            "dq(0)",
            format!("({})", dq.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")),
        );
    let mut evidence = vec![factor, origin, morse_ev];
    let route = Some(PedalRoute::Morse);

    if dq.iter().any(|v| !v.is_zero()) {
        let mut r = ClassificationReport::new(Verdict::WhitneyUmbrellaCrossRn1, evidence);
        r.pedal_route = route;
        return r;
    }
    if q.is_zero() {
        evidence.push(
            Evidence::new("order of q")
                .with("order", Order::Infinite)
                .with("truncation order", q.order()),
        );
        let mut r = ClassificationReport::new(Verdict::UndeterminedAtTruncation, evidence);
        r.pedal_route = route;
        r.notes.push(format!("q vanishes to the truncation order {}; flatness is not decidable", q.order()));
        return r;
    }
    if n != 1 {
        let mut r = ClassificationReport::new(Verdict::NotApplicable, evidence);
        r.pedal_route = route;
        r.notes.push("S_k recognition is implemented for one parameter only".into());
        return r;
    }
    let ord = q.order_in(Var::y(1)).finite().expect("nonzero q in y only");
    let lead = q.axis_coefficient(Var::y(1), ord);
    let mut sign = if lead.is_positive() { Sign::Plus } else { Sign::Minus };
    if morse.leading_sign == Sign::Minus {
        sign = sign.flip();
    }
    let k = ord - 1;
    evidence.push(
        Evidence::new("order of q")
            .with("order", ord)
            .with("leading coefficient", &lead)
            .with("normalized sign", sign),
    );
    let mut r = ClassificationReport::new(Verdict::Sk { k, sign }, evidence);
    r.pedal_route = route;
    if ord % 2 == 1 {
        r.notes.push(format!(
            "k + 1 = {ord} is odd: Sk({k}, +) and Sk({k}, -) are identified by y -> -y"
        ));
    }
    r
}

/// Classifies a normalized Legendrian germ via its Legendrian-Jacobian.
pub fn classify_legendrian(germ: &MapGerm) -> Result<ClassificationReport, ClassifyError> {
    let check = is_normalized_legendrian(germ);
    if !check.is_normalized() {
        return Err(ClassifyError::NotNormalizedLegendrian(check.failures));
    }
    let field = check.normal_field.as_ref().expect("normalized germs carry a field");
    let lj = legendrian_jacobian(germ, field);
    let mut report = classify_from_lj(&lj);
    report.evidence.insert(
        0,
        Evidence::new("normalized Legendrian")
            .with("dPhi2/dx(0,0)", &check.dphi2_dx_at_origin)
            .with("lift rank", check.lift_rank.unwrap_or(0))
            .with("nonsingular exemption", check.nonsingular_exemption),
    );
    Ok(report)
}

/// The rank criterion applied to a given `LJ` (any positive-unit multiple).
pub fn classify_from_lj(lj: &Jet) -> ClassificationReport {
    let n = lj.num_params();
    let mut derivs = Evidence::new("x-derivatives of LJ at origin").with("LJ", lj);
    let mut found = None;
    let mut factorial = int(1);
    for k in 0..=lj.order() {
        if k > 0 {
            factorial *= int(k as i64);
        }
        let value = lj.axis_coefficient(Var::X, k) * &factorial;
        derivs = derivs.with(format!("d^{k}LJ/dx^{k}(0,0)"), &value);
        if !value.is_zero() {
            found = Some(k);
            break;
        }
    }
    let Some(k) = found else {
        let mut r = ClassificationReport::new(Verdict::UndeterminedAtTruncation, vec![derivs]);
        r.notes.push(format!(
            "every pure x-derivative of LJ vanishes up to the truncation order {}",
            lj.order()
        ));
        return r;
    };
    if k == 0 {
        return ClassificationReport::new(Verdict::NonSingular, vec![derivs]);
    }
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|j| lj.nth_derivative(Var::X, j).gradient_at_origin())
        .collect();
    let rank = linalg::rank(&rows);
    let rank_ev = Evidence::new("gradient rank of (LJ, .., d^(k-1)LJ/dx^(k-1)) at origin")
        .with("k", k)
        .with("rank", rank)
        .with("required", k);
    let evidence = vec![derivs, rank_ev];
    if rank < k as usize {
        let mut r = ClassificationReport::new(Verdict::NotApplicable, evidence);
        r.notes.push(if k as usize > n + 1 {
            format!("k = {k} exceeds the number of variables {}", n + 1)
        } else {
            "local algebra differs from the model: gradients are dependent".into()
        });
        return r;
    }
    let verdict = match k {
        1 => Verdict::CuspCrossRn,
        2 => Verdict::SwallowtailCrossRn1,
        _ => Verdict::LegendrianA(k + 1),
    };
    ClassificationReport::new(verdict, evidence)
}

/// The smallest `k` with `d^k LJ/dx^k (0,0) != 0`, if any within truncation.
pub fn first_nonvanishing_x_derivative(lj: &Jet) -> Option<u32> {
    (0..=lj.order()).find(|&k| !lj.axis_coefficient(Var::X, k).is_zero())
}

/// Rank decision and local-algebra oracle side by side for a normalized
/// Legendrian germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionCrossCheck {
    pub k: u32,
    pub rank_accepts: bool,
    pub oracle: OracleComparison,
}

impl CriterionCrossCheck {
    pub fn agree(&self) -> bool {
        self.rank_accepts == self.oracle.matches_model()
    }
}

/// Runs both routes for the local algebra condition; `None` when `k = 0`, no
/// finite `k` exists, or `LJ` is not known to the requested bound.
pub fn cross_check_with_local_algebra(germ: &MapGerm, bound: u32) -> Option<CriterionCrossCheck> {
    let field = compute_normal_field(germ).ok()?;
    let lj = legendrian_jacobian(germ, &field);
    let k = first_nonvanishing_x_derivative(&lj)?;
    if k == 0 {
        return None;
    }
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|j| lj.nth_derivative(Var::X, j).gradient_at_origin())
        .collect();
    let rank_accepts = linalg::rank(&rows) == k as usize;
    let oracle = compare_with_model(&lj, k as usize, bound)?;
    Some(CriterionCrossCheck { k, rank_accepts, oracle })
}

/// The quartic family `(a x^4 + x^2 sum b_i y_i, c x^3 + x sum d_i y_i, y)`:
/// predicted swallowtail iff `2 a d_i = 3 b_i c` for all `i` and
/// `a b_i c d_i != 0` for some `i`.
#[derive(Clone, Debug)]
pub struct PropositionCheck {
    pub germ: MapGerm,
    pub predicted: bool,
    pub report: ClassificationReport,
}

impl PropositionCheck {
    pub fn classified_swallowtail(&self) -> bool {
        self.report.verdict == Verdict::SwallowtailCrossRn1
    }

    pub fn consistent(&self) -> bool {
        self.predicted == self.classified_swallowtail()
    }
}

pub fn predicted_swallowtail(a: &Rational, b: &[Rational], c: &Rational, d: &[Rational]) -> bool {
    let two = int(2);
    let three = int(3);
    let equalities = b.iter().zip(d).all(|(bi, di)| &two * a * di == &three * bi * c);
    let nondegenerate = b.iter().zip(d).any(|(bi, di)| !(a * bi * c * di).is_zero());
    equalities && nondegenerate
}

pub fn check_proposition_application(
    a: &Rational,
    b: &[Rational],
    c: &Rational,
    d: &[Rational],
    order: u32,
) -> PropositionCheck {
    let germ = quartic_family(a, b, c, d, order);
    let report = match classify_legendrian(&germ) {
        Ok(r) => r,
        Err(e) => ClassificationReport::not_applicable(e.to_string()),
    };
    PropositionCheck {
        predicted: predicted_swallowtail(a, b, c, d),
        germ,
        report,
    }
}

/// One step of the tangent-developable pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOutcome {
    pub stage: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ArnoldReport {
    pub stages: Vec<StageOutcome>,
    pub reparametrized: Option<MapGerm>,
    pub factorization: Option<PedalFactorization>,
    pub pedal_report: Option<ClassificationReport>,
    pub legendrian_report: Option<ClassificationReport>,
}

impl ArnoldReport {
    pub fn passed(&self) -> bool {
        !self.stages.is_empty() && self.stages.iter().all(|s| s.passed)
    }

    fn stage(&mut self, stage: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.stages.push(StageOutcome {
            stage: stage.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }
}

/// Runs the tangent developable of `(x^4, x^3, x^2)` through the calculus:
/// reparametrize with `y <- (y - x^2)/2`, check the unfolding shape, take
/// `D`, factor it, and classify both sides.
pub fn check_arnold_observation(order: u32) -> ArnoldReport {
    let mut report = ArnoldReport {
        stages: Vec::new(),
        reparametrized: None,
        factorization: None,
        pedal_report: None,
        legendrian_report: None,
    };
    let y = Var::y(1);
    let shift = Jet::from_terms(1, order, [(vec![0, 1], rat(1, 2)), (vec![2, 0], rat(-1, 2))]);
    let raw = tangent_developable(order);
    let substituted: Result<Vec<Jet>, _> = raw.iter().map(|c| c.substitute(&[(y, shift.clone())])).collect();
    let substituted = match substituted {
        Ok(s) => s,
        Err(e) => {
            report.stage("substitution", false, e.to_string());
            return report;
        }
    };
    let expected = [
        Jet::from_terms(1, order, [(vec![4, 0], int(-1)), (vec![2, 1], int(2))]),
        Jet::from_terms(1, order, [(vec![3, 0], rat(-1, 2)), (vec![1, 1], rat(3, 2))]),
        Jet::var(1, order, y),
    ];
    let ok = substituted.iter().zip(&expected).all(|(a, b)| a == b);
    let detail = format!("({}, {}, {})", substituted[0], substituted[1], substituted[2]);
    if !report.stage("substitution", ok, detail) {
        return report;
    }
    let germ = match MapGerm::from_components(substituted) {
        Ok(g) => g,
        Err(e) => {
            report.stage("unfolding shape", false, e.to_string());
            return report;
        }
    };
    report.stage("unfolding shape", true, germ.to_string());
    report.reparametrized = Some(germ.clone());

    let d = match differentiate(&germ, true) {
        Ok(d) => d,
        Err(e) => {
            report.stage("differential", false, e.to_string());
            return report;
        }
    };
    report.stage("differential", true, d.to_string());
    let fac = match is_pedal_unfolding_type(&d) {
        Ok(f) => f,
        Err(e) => {
            report.stage("pedal factorization", false, e.to_string());
            return report;
        }
    };
    report.stage(
        "pedal factorization",
        true,
        format!("n = {}, p = {}", fac.n_factor, fac.p_factor),
    );
    let pedal = classify_pedal_factorization(&fac);
    report.stage(
        "pedal classification",
        pedal.verdict == Verdict::WhitneyUmbrellaCrossRn1,
        pedal.verdict.to_string(),
    );
    report.factorization = Some(fac);
    report.pedal_report = Some(pedal);

    match germ::integrate(&d) {
        Ok(back) => {
            let same = back == germ;
            report.stage("integration of differential", same, back.to_string());
        }
        Err(e) => {
            report.stage("integration of differential", false, e.to_string());
        }
    }
    match classify_legendrian(&germ) {
        Ok(leg) => {
            report.stage(
                "legendrian classification",
                leg.verdict == Verdict::SwallowtailCrossRn1,
                leg.verdict.to_string(),
            );
            report.legendrian_report = Some(leg);
        }
        Err(e) => {
            report.stage("legendrian classification", false, e.to_string());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::integrate;
    use crate::germ::normal_forms::{big_f_k, f_k, g_k, swallowtail};
    use crate::jet::parse_jet;

    fn j(src: &str, n: usize, order: u32) -> Jet {
        parse_jet(src, n, order).unwrap()
    }

    fn germ(a: &str, b: &str, n: usize) -> MapGerm {
        MapGerm::new(j(a, n, 10), j(b, n, 10)).unwrap()
    }

    #[test]
    fn morse_reduce_already_critical() {
        let m = morse_reduce(&j("x^2 + y1", 1, 8)).unwrap();
        assert!(m.critical_path.is_zero());
        assert_eq!(m.reduced_q, j("y1", 1, 7));
        assert_eq!(m.leading_sign, Sign::Plus);
    }

    #[test]
    fn morse_reduce_shifted_critical_point() {
        let p = j("x^2 + 2*x*y1 + y1", 1, 8);
        let m = morse_reduce(&p).unwrap();
        assert!(m.critical_path.agrees_with(&j("-y1", 1, 8)));
        assert!(m.reduced_q.agrees_with(&j("y1 - y1^2", 1, 8)));
        // numeric cross-check: q(y) is the minimum of p(., y) near x = -y
        for &y in &[0.01, -0.02, 0.03] {
            let q = m.reduced_q.eval_f64(&[0.0, y]);
            let around = (-50..=50)
                .map(|i| p.eval_f64(&[-y + i as f64 * 1e-4, y]))
                .fold(f64::INFINITY, f64::min);
            assert!((q - around).abs() < 1e-7, "y = {y}: {q} vs {around}");
        }
    }

    #[test]
    fn morse_reduce_negative_hessian() {
        let m = morse_reduce(&j("3/2*y1 - 3/2*x^2", 1, 8)).unwrap();
        assert!(m.critical_path.is_zero());
        assert_eq!(m.reduced_q, j("3/2*y1", 1, 7));
        assert_eq!(m.leading_sign, Sign::Minus);
    }

    #[test]
    fn morse_reduce_invariant_holds() {
        let p = j("-2*x^2 + x^3 + 3*x*y1 + x*y1^2 + y1^2 - y1^3 + x^2*y1", 1, 9);
        let m = morse_reduce(&p).unwrap();
        let residual = p
            .partial_derivative(Var::X)
            .substitute(&[(Var::X, m.critical_path.clone())])
            .unwrap();
        assert!(residual.is_zero());
        assert_eq!(m.reduced_q, p.substitute(&[(Var::X, m.critical_path.clone())]).unwrap());
    }

    #[test]
    fn morse_reduce_rejections() {
        assert_eq!(morse_reduce(&j("x^3 + y1", 1, 6)), Err(MorseRejection::NotMorse));
        assert!(matches!(morse_reduce(&j("x + y1", 1, 6)), Err(MorseRejection::NotCritical(_))));
        assert!(matches!(morse_reduce(&j("1 + x^2", 1, 6)), Err(MorseRejection::NotVanishing(_))));
    }

    #[test]
    fn pedal_classification_examples() {
        let r = classify_pedal_type(&f_k(1, Sign::Minus, 10)).unwrap();
        assert_eq!(r.verdict, Verdict::Sk { k: 1, sign: Sign::Minus });

        let d_st = germ("12*x^3 + 2*x*y1", "-12*x^2 - 2*y1", 1);
        let r = classify_pedal_type(&d_st).unwrap();
        assert_eq!(r.verdict, Verdict::WhitneyUmbrellaCrossRn1);

        let d_g1 = germ("6*x^2", "-6*x", 1);
        let r = classify_pedal_type(&d_g1).unwrap();
        assert_eq!(r.verdict, Verdict::NonSingular);
        assert_eq!(r.pedal_route, Some(PedalRoute::FoldOfP));
    }

    #[test]
    fn s_k_signs_and_notes() {
        for k in 1..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let r = classify_pedal_type(&f_k(k, sign, 12)).unwrap();
                assert_eq!(r.verdict, Verdict::Sk { k, sign });
                assert_eq!(!r.notes.is_empty(), (k + 1) % 2 == 1, "k = {k}");
            }
        }
        // negative Hessian: (-x(x^2 - y^2), -(x^2 - y^2), y) is the same S_1(-)
        let f = f_k(1, Sign::Minus, 10);
        let neg = MapGerm::new(-f.phi1(), -f.phi2()).unwrap();
        let r = classify_pedal_type(&neg).unwrap();
        assert_eq!(r.verdict, Verdict::Sk { k: 1, sign: Sign::Minus });
    }

    #[test]
    fn flat_q_is_undetermined() {
        let g = germ("x^3", "x^2", 1);
        let r = classify_pedal_type(&g).unwrap();
        assert_eq!(r.verdict, Verdict::UndeterminedAtTruncation);
        assert!(!r.evidence.is_empty());
    }

    #[test]
    fn legendrian_classification_of_g_k() {
        assert_eq!(classify_legendrian(&g_k(0, 1, 10)).unwrap().verdict, Verdict::NonSingular);
        assert_eq!(classify_legendrian(&g_k(1, 1, 10)).unwrap().verdict, Verdict::CuspCrossRn);
        assert_eq!(
            classify_legendrian(&swallowtail(1, 10)).unwrap().verdict,
            Verdict::SwallowtailCrossRn1
        );
        for k in 3..=5u32 {
            let g = g_k(k, k as usize - 1, 10);
            assert_eq!(classify_legendrian(&g).unwrap().verdict, Verdict::LegendrianA(k + 1));
        }
    }

    #[test]
    fn g_k_beyond_parameter_count_is_not_a_k() {
        // G_3 needs y1, y2; with one parameter the rank test must fail
        let r = classify_legendrian(&g_k(3, 1, 10)).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn classify_legendrian_rejects_non_normalized() {
        let err = classify_legendrian(&germ("x^2 + x^3", "x^2", 1)).unwrap_err();
        assert!(matches!(err, ClassifyError::NotNormalizedLegendrian(_)));
    }

    #[test]
    fn legendrian_s_k_forms_are_not_swallowtails() {
        for k in 1..4 {
            let r = classify_legendrian(&big_f_k(k, Sign::Plus, 10)).unwrap();
            assert_ne!(r.verdict, Verdict::SwallowtailCrossRn1);
        }
        let r = classify_legendrian(&big_f_k(0, Sign::Minus, 10)).unwrap();
        assert_eq!(r.verdict, Verdict::SwallowtailCrossRn1);
    }

    #[test]
    fn oracle_agrees_on_normal_forms() {
        for (k, n) in [(1u32, 1usize), (2, 1), (2, 2), (3, 2), (3, 3)] {
            let c = cross_check_with_local_algebra(&g_k(k, n, 10), 6).unwrap();
            assert!(c.agree(), "G_{k}, n = {n}: {c:?}");
        }
        // no model ideal exists for k > n + 1
        assert!(cross_check_with_local_algebra(&g_k(3, 1, 10), 6).is_none());
        // a rank-deficient germ: LJ, d_x LJ dependent at the origin
        let deficient = integrate(&germ("-x^3 - x*y1^2", "x^2 + y1^2", 1)).unwrap();
        let c = cross_check_with_local_algebra(&deficient, 6);
        let c = c.unwrap();
        assert!(!c.rank_accepts && c.agree(), "{c:?}");
    }

    #[test]
    fn proposition_examples() {
        let c = check_proposition_application(&int(3), &[int(1)], &int(-4), &[int(-2)], 10);
        assert!(c.predicted && c.classified_swallowtail());
        let c = check_proposition_application(&int(1), &[int(1)], &int(1), &[int(1)], 10);
        assert!(!c.predicted && c.consistent());
        let c = check_proposition_application(&int(0), &[int(2)], &int(5), &[int(-1)], 10);
        assert!(!c.predicted && c.consistent());
    }

    #[test]
    fn arnold_pipeline() {
        let r = check_arnold_observation(10);
        assert!(r.passed(), "{:#?}", r.stages);
        let fac = r.factorization.unwrap();
        assert!(fac.n_factor.agrees_with(&j("8/3*x", 1, 10)));
        assert_eq!(fac.p_factor, j("3/2*y1 - 3/2*x^2", 1, 9));
    }

    #[test]
    fn unit_multiple_of_lj_keeps_decisions() {
        let g = g_k(3, 2, 10);
        let field = compute_normal_field(&g).unwrap();
        let lj = legendrian_jacobian(&g, &field);
        let u = j("-3 + x - 2*y2 + x*y1^2", 2, 10);
        let a = classify_from_lj(&lj);
        let b = classify_from_lj(&(&u * &lj));
        assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn integration_then_legendrian_on_whitney_umbrella() {
        let d_st = germ("12*x^3 + 2*x*y1", "-12*x^2 - 2*y1", 1);
        let back = integrate(&d_st).unwrap();
        assert_eq!(classify_legendrian(&back).unwrap().verdict, Verdict::SwallowtailCrossRn1);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = classify_pedal_type(&f_k(2, Sign::Plus, 10)).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: ClassificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"Sk\""));
        let st = serde_json::to_string(&Verdict::SwallowtailCrossRn1).unwrap();
        assert_eq!(st, "\"SwallowtailCrossRn-1\"");
    }
}
