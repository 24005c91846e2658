//! Map-germs of unfolding shape `(Phi1, Phi2, y)` and the calculus
//! between pedal-type germs and normalized Legendrian germs.
//!
//! Normal fields are kept unnormalized with first component `1`, so every
//! computation stays in exact rationals. The Legendrian-Jacobian computed
//! here is therefore the usual one multiplied by the positive unit `|nu|`.

pub mod normal_forms;

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jet::{Jet, JetError, Rational, Var};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("a germ needs at least one parameter")]
    NoParameters,
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("component {component} is not the identity coordinate y{param}")]
    NotUnfoldingShape { component: usize, param: usize },
    #[error("not of pedal unfolding type: {0}")]
    NotPedalType(PedalRejection),
    #[error("not Legendrian-representable: {0}")]
    NotLegendrianRepresentable(String),
    #[error("not a normalized Legendrian germ: {}", .0.join("; "))]
    NotNormalizedLegendrian(Vec<String>),
    #[error("not a germ of a non-degenerate curve: {0}")]
    DegenerateCurve(String),
}

/// Why a germ failed the pedal-unfolding-type test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PedalRejection {
    /// `Phi1` is not a jet multiple of `Phi2`.
    NotDivisible(String),
    /// `Phi1 = Phi2 = 0`: any `n` works, so none is recoverable.
    IndeterminateFactor,
    /// The recovered `n` does not vanish at the origin.
    FactorNotVanishing(String),
    /// `dn/dx(0,0) = 0`.
    FactorDerivativeVanishes,
}

impl fmt::Display for PedalRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PedalRejection::NotDivisible(why) => write!(f, "first component not divisible by second ({why})"),
            PedalRejection::IndeterminateFactor => write!(f, "both components vanish; factor n is indeterminate"),
            PedalRejection::FactorNotVanishing(v) => write!(f, "n(0,0) = {v} is nonzero"),
            PedalRejection::FactorDerivativeVanishes => write!(f, "dn/dx(0,0) = 0"),
        }
    }
}

/// A germ `(Phi1(x,y), Phi2(x,y), y1, .., yn)`.
///
/// Only the first two components are stored; the remaining `n` are the
/// identity by construction. Both stored jets share the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    phi1: Jet,
    phi2: Jet,
}

impl MapGerm {
    /// Builds `(phi1, phi2, y)`, truncating both to the smaller order.
    pub fn new(phi1: Jet, phi2: Jet) -> Result<Self, GermError> {
        if phi1.num_params() != phi2.num_params() {
            return Err(JetError::DimensionMismatch {
                left: phi1.num_params(),
                right: phi2.num_params(),
            }
            .into());
        }
        if phi1.num_params() == 0 {
            return Err(GermError::NoParameters);
        }
        let order = phi1.order().min(phi2.order());
        Ok(MapGerm {
            phi1: phi1.truncate(order),
            phi2: phi2.truncate(order),
        })
    }

    /// Accepts `n + 2` components and checks that the last `n` are
    /// `y1, .., yn`.
    pub fn from_components(components: Vec<Jet>) -> Result<Self, GermError> {
        let Some(first) = components.first() else {
            return Err(GermError::ComponentCount { expected: 3, found: 0 });
        };
        let n = first.num_params();
        if components.len() != n + 2 {
            return Err(GermError::ComponentCount {
                expected: n + 2,
                found: components.len(),
            });
        }
        for (i, comp) in components.iter().enumerate().skip(2) {
            let param = i - 1;
            let expected = Jet::var(n, comp.order(), Var::y(param));
            if comp.num_params() != n || *comp != expected {
                return Err(GermError::NotUnfoldingShape { component: i + 1, param });
            }
        }
        let mut it = components.into_iter();
        let phi1 = it.next().unwrap();
        let phi2 = it.next().unwrap();
        MapGerm::new(phi1, phi2)
    }

    pub fn phi1(&self) -> &Jet {
        &self.phi1
    }

    pub fn phi2(&self) -> &Jet {
        &self.phi2
    }

    pub fn num_params(&self) -> usize {
        self.phi1.num_params()
    }

    pub fn order(&self) -> u32 {
        self.phi1.order()
    }

    /// All `n + 2` components, identity coordinates included.
    pub fn components(&self) -> Vec<Jet> {
        let n = self.num_params();
        let mut out = vec![self.phi1.clone(), self.phi2.clone()];
        out.extend((1..=n).map(|i| Jet::var(n, self.order(), Var::y(i))));
        out
    }

    /// Columns `dPhi/dx, dPhi/dy1, .., dPhi/dyn`, each with `n + 2` entries.
    pub fn jacobian_columns(&self) -> Vec<Vec<Jet>> {
        let comps = self.components();
        (0..=self.num_params())
            .map(|v| comps.iter().map(|c| c.partial_derivative(Var(v))).collect())
            .collect()
    }

    /// True if `Phi(0, 0) = 0`.
    pub fn vanishes_at_origin(&self) -> bool {
        self.phi1.value_at_origin().is_zero() && self.phi2.value_at_origin().is_zero()
    }

    /// `(Phi1(0, y), Phi2(0, y), y)`.
    pub fn restrict_to_x_zero(&self) -> MapGerm {
        let zero_x = [(Var::X, Jet::zero(self.num_params(), self.order()))];
        MapGerm {
            phi1: self.phi1.substitute(&zero_x).expect("x <- 0 is a germ"),
            phi2: self.phi2.substitute(&zero_x).expect("x <- 0 is a germ"),
        }
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, y)", self.phi1, self.phi2)
    }
}

/// `Phi1 = n * p` with `p = Phi2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PedalFactorization {
    pub n_factor: Jet,
    pub p_factor: Jet,
}

/// Tests the pedal-unfolding-type shape `(n p, p, y)` with `n(0,0) = 0` and
/// `dn/dx(0,0) != 0`, recovering `n` by exact division.
pub fn is_pedal_unfolding_type(germ: &MapGerm) -> Result<PedalFactorization, PedalRejection> {
    let p = germ.phi2.clone();
    if p.is_zero() {
        return Err(if germ.phi1.is_zero() {
            PedalRejection::IndeterminateFactor
        } else {
            PedalRejection::NotDivisible("second component is zero".into())
        });
    }
    let n = germ
        .phi1
        .divide(&p)
        .map_err(|e| PedalRejection::NotDivisible(e.to_string()))?;
    let n0 = n.value_at_origin();
    if !n0.is_zero() {
        return Err(PedalRejection::FactorNotVanishing(n0.to_string()));
    }
    if n.order() == 0 || n.gradient_at_origin()[0].is_zero() {
        return Err(PedalRejection::FactorDerivativeVanishes);
    }
    Ok(PedalFactorization {
        n_factor: n,
        p_factor: p,
    })
}

/// `I(phi) = (int_0^x n p dx, int_0^x p dx, y)`.
pub fn integrate(germ: &MapGerm) -> Result<MapGerm, GermError> {
    is_pedal_unfolding_type(germ).map_err(GermError::NotPedalType)?;
    MapGerm::new(germ.phi1.integrate_in_x(), germ.phi2.integrate_in_x())
}

/// `D(Phi) = (dPhi1/dx, dPhi2/dx, y)`.
pub fn differentiate(germ: &MapGerm, require_normalized: bool) -> Result<MapGerm, GermError> {
    if require_normalized {
        let check = is_normalized_legendrian(germ);
        if !check.is_normalized() {
            return Err(GermError::NotNormalizedLegendrian(check.failures));
        }
    }
    MapGerm::new(
        germ.phi1.partial_derivative(Var::X),
        germ.phi2.partial_derivative(Var::X),
    )
}

/// Unnormalized normal field `(1, nu2, .., nu_(n+2))` along a germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalField {
    components: Vec<Jet>,
}

impl NormalField {
    pub fn components(&self) -> &[Jet] {
        &self.components
    }

    pub fn order(&self) -> u32 {
        self.components[0].order()
    }

    pub fn value_at_origin(&self) -> Vec<Rational> {
        self.components.iter().map(Jet::value_at_origin).collect()
    }

    /// `sum nu_i^2`.
    pub fn squared_norm(&self) -> Jet {
        let n = self.components[0].num_params();
        self.components
            .iter()
            .fold(Jet::zero(n, self.order()), |acc, c| &acc + &(c * c))
    }

    /// The dot products with `dPhi/dx, dPhi/dy1, ..`; all zero for a
    /// genuine normal field.
    pub fn orthogonality_residuals(&self, germ: &MapGerm) -> Vec<Jet> {
        germ.jacobian_columns()
            .iter()
            .map(|col| dot(col, &self.components))
            .collect()
    }
}

fn dot(a: &[Jet], b: &[Jet]) -> Jet {
    let n = a[0].num_params();
    let order = a.iter().chain(b).map(Jet::order).min().unwrap_or(0);
    a.iter()
        .zip(b)
        .fold(Jet::zero(n, order), |acc, (u, v)| &acc + &(u * v))
}

/// Solves the orthogonality conditions with `nu1 = 1`:
/// `nu2 = -(dPhi1/dx)/(dPhi2/dx)` and
/// `nu_(2+i) = -dPhi1/dy_i - nu2 dPhi2/dy_i`.
pub fn compute_normal_field(germ: &MapGerm) -> Result<NormalField, GermError> {
    let n = germ.num_params();
    let phi1_x = germ.phi1.partial_derivative(Var::X);
    let phi2_x = germ.phi2.partial_derivative(Var::X);
    let ratio = phi1_x
        .divide(&phi2_x)
        .map_err(|e| GermError::NotLegendrianRepresentable(e.to_string()))?;
    let nu2 = -&ratio;
    let order = nu2.order();
    let mut components = vec![Jet::one(n, order), nu2.clone()];
    for i in 1..=n {
        let a = germ.phi1.partial_derivative(Var::y(i));
        let b = germ.phi2.partial_derivative(Var::y(i));
        components.push((-&a - &nu2 * &b).truncate(order));
    }
    let field = NormalField { components };
    if let Some(i) = field
        .orthogonality_residuals(germ)
        .iter()
        .position(|r| !r.is_zero())
    {
        return Err(GermError::NotLegendrianRepresentable(format!(
            "orthogonality fails against column {i}"
        )));
    }
    Ok(field)
}

/// Outcome of the normalized-Legendrian test, with the data that decided it.
#[derive(Clone, Debug)]
pub struct LegendrianCheck {
    pub dphi2_dx_at_origin: Rational,
    pub normal_field: Option<NormalField>,
    pub normal_at_origin: Option<Vec<Rational>>,
    pub lift_rank: Option<usize>,
    /// `dPhi2/dx(0,0) != 0` was accepted because the germ is then an
    /// immersion whose normal at the origin is `dX1` (the non-singular,
    /// non-vanishing pedal correspondence).
    pub nonsingular_exemption: bool,
    pub failures: Vec<String>,
}

impl LegendrianCheck {
    pub fn is_normalized(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `dPhi2/dx(0,0) = 0`, the existence of a representable normal
/// field with `nu(0,0) = (1, 0, .., 0)`, and immersivity of the Legendrian
/// lift at the origin.
pub fn is_normalized_legendrian(germ: &MapGerm) -> LegendrianCheck {
    let n = germ.num_params();
    let dphi2 = germ.phi2.partial_derivative(Var::X).value_at_origin();
    let mut check = LegendrianCheck {
        dphi2_dx_at_origin: dphi2.clone(),
        normal_field: None,
        normal_at_origin: None,
        lift_rank: None,
        nonsingular_exemption: false,
        failures: Vec::new(),
    };
    let field = match compute_normal_field(germ) {
        Ok(f) => f,
        Err(e) => {
            check.failures.push(e.to_string());
            return check;
        }
    };
    let at_origin = field.value_at_origin();
    if at_origin.iter().skip(1).any(|v| !v.is_zero()) {
        check.failures.push(format!(
            "normal at origin is ({}), not the X1 axis",
            at_origin.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        ));
    }
    // With nu1 = 1 and the other entries vanishing at the origin, the
    // differential of the unit field equals that of the unnormalized one
    // there, so the rank can be read off the unnormalized lift.
    let rows: Vec<Vec<Rational>> = germ
        .components()
        .iter()
        .chain(field.components())
        .map(Jet::gradient_at_origin)
        .collect();
    let rank = if field.order() == 0 {
        check.failures.push("normal field known only to order 0; lift rank undetermined".into());
        None
    } else {
        Some(linalg::rank(&rows))
    };
    if let Some(r) = rank {
        if r != n + 1 {
            check.failures.push(format!("Legendrian lift has rank {r} < {}", n + 1));
        }
    }
    if !dphi2.is_zero() {
        if check.failures.is_empty() {
            check.nonsingular_exemption = true;
        } else {
            check.failures.push(format!("dPhi2/dx(0,0) = {dphi2} is nonzero"));
        }
    }
    check.normal_at_origin = Some(at_origin);
    check.lift_rank = rank;
    check.normal_field = Some(field);
    check
}

/// `det(dPhi/dx, dPhi/dy1, .., dPhi/dyn, normal)` for an arbitrary last
/// column.
pub fn jacobian_determinant(germ: &MapGerm, normal: &[Jet]) -> Jet {
    let mut columns = germ.jacobian_columns();
    columns.push(normal.to_vec());
    determinant(&columns)
}

/// Legendrian-Jacobian of `germ` with the unnormalized field; equals the
/// unit-normal version times `|nu|`.
pub fn legendrian_jacobian(germ: &MapGerm, normal: &NormalField) -> Jet {
    jacobian_determinant(germ, normal.components())
}

/// Verifies `LJ = (-1)^(n+1) (dPhi2/dx) sum nu_i^2` as an exact jet identity.
pub fn lemma1_check(germ: &MapGerm, normal: &NormalField) -> bool {
    let lj = legendrian_jacobian(germ, normal);
    let mut rhs = &germ.phi2.partial_derivative(Var::X) * &normal.squared_norm();
    if germ.num_params() % 2 == 0 {
        rhs = -rhs;
    }
    lj.agrees_with(&rhs)
}

/// Determinant of a square jet matrix given by columns, expanded along
/// columns with memoisation over the set of rows already used.
pub fn determinant(columns: &[Vec<Jet>]) -> Jet {
    let size = columns.len();
    assert!(size > 0 && size < 32, "unsupported matrix size");
    assert!(columns.iter().all(|c| c.len() == size), "matrix must be square");
    let n = columns[0][0].num_params();
    let order = columns.iter().flatten().map(Jet::order).min().unwrap();
    let mut memo: HashMap<u32, Jet> = HashMap::new();
    memo.insert((1u32 << size) - 1, Jet::one(n, order));
    minor(columns, 0, 0, &mut memo)
}

fn minor(columns: &[Vec<Jet>], col: usize, used: u32, memo: &mut HashMap<u32, Jet>) -> Jet {
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let size = columns.len();
    let n = columns[0][0].num_params();
    let order = columns.iter().flatten().map(Jet::order).min().unwrap();
    let mut acc = Jet::zero(n, order);
    let mut seen_free = 0;
    for row in 0..size {
        if used & (1 << row) != 0 {
            continue;
        }
        let entry = &columns[col][row];
        if !entry.is_zero() {
            let sub = minor(columns, col + 1, used | (1 << row), memo);
            let term = entry * &sub;
            acc = if seen_free % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        seen_free += 1;
    }
    memo.insert(used, acc.clone());
    acc
}

/// The pedal unfolding of a curve `r(x) = (-x, r2(x))` relative to a moving
/// pedal point `P(y)`, translated so the pedal point sits at the origin:
/// `(n p, p, y)` with `n = r2'(x)` and
/// `p = (r2 - (x + P1) n - P2) / (1 + n^2)`.
pub fn pedal_unfolding_from_curve(r2: &Jet, pedal_point: [&Jet; 2]) -> Result<MapGerm, GermError> {
    let n = r2.num_params();
    if !(1..=n).all(|i| r2.is_free_of(Var::y(i))) {
        return Err(GermError::DegenerateCurve("r2 must depend on x only".into()));
    }
    if !r2.value_at_origin().is_zero() || !r2.gradient_at_origin()[0].is_zero() {
        return Err(GermError::DegenerateCurve("need r2(0) = r2'(0) = 0".into()));
    }
    if r2.axis_coefficient(Var::X, 2).is_zero() {
        return Err(GermError::DegenerateCurve("inflection at the origin (r2''(0) = 0)".into()));
    }
    for comp in pedal_point {
        if comp.num_params() != n {
            return Err(JetError::DimensionMismatch { left: n, right: comp.num_params() }.into());
        }
        if !comp.is_free_of(Var::X) || !comp.value_at_origin().is_zero() {
            return Err(GermError::DegenerateCurve(
                "pedal point must depend on y only and start at the origin".into(),
            ));
        }
    }
    let slope = r2.partial_derivative(Var::X);
    let order = slope.order();
    let x = Jet::var(n, order, Var::X);
    let numerator = &(r2 - &(&(&x + pedal_point[0]) * &slope)) - pedal_point[1];
    let unit = &Jet::one(n, order) + &(&slope * &slope);
    let p = numerator.truncate(order).divide(&unit)?;
    MapGerm::new(&slope * &p, p)
}

#[cfg(test)]
mod tests {
    use super::normal_forms::*;
    use super::*;
    use crate::jet::{int, parse_jet, rat};

    fn j(src: &str, n: usize, order: u32) -> Jet {
        parse_jet(src, n, order).unwrap()
    }

    fn germ(a: &str, b: &str, n: usize, order: u32) -> MapGerm {
        MapGerm::new(j(a, n, order), j(b, n, order)).unwrap()
    }

    #[test]
    fn shape_is_enforced() {
        let n = 2;
        let good = vec![j("x", n, 4), j("x^2", n, 4), j("y1", n, 4), j("y2", n, 4)];
        assert!(MapGerm::from_components(good).is_ok());
        let bad = vec![j("x", n, 4), j("x^2", n, 4), j("y1", n, 4), j("y2 + x", n, 4)];
        assert_eq!(
            MapGerm::from_components(bad),
            Err(GermError::NotUnfoldingShape { component: 4, param: 2 })
        );
        let short = vec![j("x", n, 4), j("x^2", n, 4), j("y1", n, 4)];
        assert!(matches!(
            MapGerm::from_components(short),
            Err(GermError::ComponentCount { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn pedal_type_examples() {
        let fac = is_pedal_unfolding_type(&germ("12*x^3 + 2*x*y1", "-12*x^2 - 2*y1", 1, 8)).unwrap();
        assert!(fac.n_factor.agrees_with(&j("-x", 1, 8)));
        assert_eq!(fac.p_factor, j("-12*x^2 - 2*y1", 1, 8));

        let fac = is_pedal_unfolding_type(&germ("x*y1", "y1", 1, 8)).unwrap();
        assert!(fac.n_factor.agrees_with(&j("x", 1, 8)));

        let rej = is_pedal_unfolding_type(&germ("4*x^3 + 2*x*y1", "3*x^2 + y1", 1, 8)).unwrap_err();
        assert!(matches!(rej, PedalRejection::NotDivisible(_)));

        let rej = is_pedal_unfolding_type(&germ("0", "0", 1, 8)).unwrap_err();
        assert_eq!(rej, PedalRejection::IndeterminateFactor);

        let rej = is_pedal_unfolding_type(&germ("x^2*y1", "y1", 1, 8)).unwrap_err();
        assert_eq!(rej, PedalRejection::FactorDerivativeVanishes);

        let rej = is_pedal_unfolding_type(&germ("(1 + x)*y1", "y1", 1, 8)).unwrap_err();
        assert!(matches!(rej, PedalRejection::FactorNotVanishing(_)));
    }

    #[test]
    fn integrate_s_k_forms() {
        for k in 0..5 {
            for sign in [Sign::Plus, Sign::Minus] {
                let out = integrate(&f_k(k, sign, 10)).unwrap();
                assert_eq!(out, big_f_k(k, sign, 11));
            }
        }
    }

    #[test]
    fn integrate_rejects_non_pedal() {
        let err = integrate(&germ("0", "0", 1, 5)).unwrap_err();
        assert_eq!(err, GermError::NotPedalType(PedalRejection::IndeterminateFactor));
    }

    #[test]
    fn differentiate_examples() {
        let d = differentiate(&g_k(2, 1, 10), true).unwrap();
        assert_eq!(d, germ("12*x^3 + 2*x*y1", "-12*x^2 - 2*y1", 1, 9));
        assert_eq!(integrate(&d).unwrap(), g_k(2, 1, 10));

        let flat = differentiate(&germ("y1^2", "3*y1", 1, 6), false).unwrap();
        assert!(flat.phi1().is_zero() && flat.phi2().is_zero());

        // hand derivative of (-x^4 + 2x^2 y, -1/2 x^3 + 3/2 x y, y)
        let arnold = germ("-x^4 + 2*x^2*y1", "-1/2*x^3 + 3/2*x*y1", 1, 10);
        let d = differentiate(&arnold, true).unwrap();
        assert_eq!(d, germ("-4*x^3 + 4*x*y1", "-3/2*x^2 + 3/2*y1", 1, 9));
    }

    #[test]
    fn normal_field_examples() {
        let st = germ("3*x^4 + x^2*y1", "-4*x^3 - 2*x*y1", 1, 10);
        let nu = compute_normal_field(&st).unwrap();
        assert!(nu.components()[0].agrees_with(&j("1", 1, 10)));
        assert!(nu.components()[1].agrees_with(&j("x", 1, 10)));
        assert!(nu.components()[2].agrees_with(&j("x^2", 1, 10)));

        let g1 = germ("2*x^3", "-3*x^2", 1, 10);
        let nu = compute_normal_field(&g1).unwrap();
        assert!(nu.components()[1].agrees_with(&j("x", 1, 10)));
        assert!(nu.components()[2].is_zero());

        let ones = quartic_family(&int(1), &[int(1)], &int(1), &[int(1)], 10);
        assert!(matches!(
            compute_normal_field(&ones),
            Err(GermError::NotLegendrianRepresentable(_))
        ));
    }

    #[test]
    fn normalized_legendrian_examples() {
        for k in 0..=5 {
            let n = (k as usize).saturating_sub(1).max(1);
            let check = is_normalized_legendrian(&g_k(k, n, 10));
            assert!(check.is_normalized(), "G_{k}: {:?}", check.failures);
            assert_eq!(check.nonsingular_exemption, k == 0);
        }
        for k in 0..4 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert!(is_normalized_legendrian(&big_f_k(k, sign, 10)).is_normalized());
            }
        }
        let degenerate = germ("x", "0", 1, 6);
        assert!(!is_normalized_legendrian(&degenerate).is_normalized());
    }

    #[test]
    fn normal_not_on_axis_is_rejected() {
        // nu2 = -(1 + 3x/2), so nu(0) = (1, -1, 0)
        let tilted = germ("x^2 + x^3", "x^2", 1, 6);
        let check = is_normalized_legendrian(&tilted);
        assert!(!check.is_normalized());
        assert_eq!(check.normal_at_origin.unwrap(), vec![int(1), int(-1), int(0)]);
    }

    #[test]
    fn legendrian_jacobian_examples() {
        let st = swallowtail(1, 10);
        let nu = compute_normal_field(&st).unwrap();
        let lj = legendrian_jacobian(&st, &nu);
        let expected = &j("1 + x^2 + x^4", 1, 10) * &j("-12*x^2 - 2*y1", 1, 10);
        assert!(lj.agrees_with(&expected));
        assert!(lemma1_check(&st, &nu));

        let g1 = g_k(1, 1, 10);
        let nu = compute_normal_field(&g1).unwrap();
        let lj = legendrian_jacobian(&g1, &nu);
        assert!(lj.agrees_with(&j("-6*x - 6*x^3", 1, 10)));
        assert!(lemma1_check(&g1, &nu));
    }

    #[test]
    fn flipping_the_normal_negates_lj() {
        let g = g_k(3, 2, 10);
        let nu = compute_normal_field(&g).unwrap();
        let flipped: Vec<Jet> = nu.components().iter().map(|c| -c).collect();
        assert_eq!(jacobian_determinant(&g, &flipped), -legendrian_jacobian(&g, &nu));
    }

    #[test]
    fn determinant_of_numeric_matrix() {
        // [[2, 0, 1], [1, 3, 2], [1, 1, 1]] has determinant 0 * .. ; compute by hand: 2(3-2) - 0 + 1(1-3) = 0
        let c = |v: i64| Jet::constant(1, 3, int(v));
        let cols = vec![
            vec![c(2), c(1), c(1)],
            vec![c(0), c(3), c(1)],
            vec![c(1), c(2), c(1)],
        ];
        assert!(determinant(&cols).is_zero());
        let cols = vec![vec![c(1), c(0)], vec![c(5), c(2)]];
        assert_eq!(determinant(&cols).value_at_origin(), int(2));
    }

    #[test]
    fn pedal_unfolding_of_a_parabola() {
        // r(x) = (-x, x^2), pedal point moving along the normal: P(y) = (0, y)
        let r2 = j("x^2", 1, 8);
        let zero = Jet::zero(1, 8);
        let p2 = j("y1", 1, 8);
        let g = pedal_unfolding_from_curve(&r2, [&zero, &p2]).unwrap();
        let fac = is_pedal_unfolding_type(&g).unwrap();
        assert!(fac.n_factor.agrees_with(&j("2*x", 1, 8)));
        // p = (x^2 - 2x^2 - y) / (1 + 4x^2)
        let expected = j("-x^2 - y1", 1, 7).divide(&j("1 + 4*x^2", 1, 7)).unwrap();
        assert!(fac.p_factor.agrees_with(&expected));
        assert_eq!(fac.p_factor.axis_coefficient(Var::X, 2), rat(-1, 1));
    }

    #[test]
    fn pedal_unfolding_rejects_inflection() {
        let r2 = j("x^3", 1, 8);
        let zero = Jet::zero(1, 8);
        assert!(matches!(
            pedal_unfolding_from_curve(&r2, [&zero, &zero]),
            Err(GermError::DegenerateCurve(_))
        ));
    }
}
