//! Truncated multivariate power series ("jets") over exact rationals.
//!
//! A [`Jet`] lives in the variables `x, y1, .., yn` and stores every
//! coefficient of total degree at most its truncation order. Zero
//! coefficients are never stored, so two jets are equal exactly when their
//! coefficient maps (and metadata) are equal.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use parse::{parse_jet, ParseError};

/// Exact rational scalar used throughout the symbolic side.
pub type Rational = BigRational;

/// Convenience constructor for `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Index of a variable: `0` is `x`, `i >= 1` is `y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

impl Var {
    pub const X: Var = Var(0);

    /// The parameter `y_i`, 1-based.
    pub fn y(i: usize) -> Var {
        assert!(i >= 1, "parameters are numbered from 1");
        Var(i)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "x"),
            i => write!(f, "y{i}"),
        }
    }
}

/// Exponent vector `(e0, e1, .., en)` for `x^e0 y1^e1 .. yn^en`.
///
/// Ordered by total degree first, then lexicographically on the exponents.
/// The order is multiplicative, which the division solver relies on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, var: Var) -> u32 {
        self.0[var.0]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    fn is_pure_power_of(&self, var: Var) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| i == var.0 || e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Vanishing order of a jet; `Infinite` means zero up to the truncation
/// order, which is not a proof of flatness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("dimension mismatch: {left} vs {right} parameters")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division by the zero jet")]
    DivisionByZero,
    #[error("divisor vanishes to the truncation order {order}")]
    DivisorBeyondTruncation { order: u32 },
    #[error("not divisible: remainder term {monomial} is not a multiple of the pivot {pivot}")]
    NotDivisible { monomial: String, pivot: String },
    #[error("substitution for {var} has a nonzero constant term")]
    NotAGerm { var: Var },
    #[error("variable {var} out of range for {num_params} parameters")]
    VariableOutOfRange { var: Var, num_params: usize },
}

/// Truncated polynomial in `x, y1, .., yn` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    num_params: usize,
    order: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl Jet {
    pub fn zero(num_params: usize, order: u32) -> Self {
        Jet {
            num_params,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_params: usize, order: u32, value: Rational) -> Self {
        Self::monomial(num_params, order, vec![0; num_params + 1], value)
    }

    pub fn one(num_params: usize, order: u32) -> Self {
        Self::constant(num_params, order, Rational::one())
    }

    pub fn var(num_params: usize, order: u32, var: Var) -> Self {
        assert!(var.0 <= num_params, "variable {var} out of range");
        let mut exps = vec![0; num_params + 1];
        exps[var.0] = 1;
        Self::monomial(num_params, order, exps, Rational::one())
    }

    /// `coeff * x^e0 y1^e1 ..`; dropped if the degree exceeds `order`.
    pub fn monomial(num_params: usize, order: u32, exponents: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exponents.len(), num_params + 1, "exponent vector length");
        let mut jet = Self::zero(num_params, order);
        jet.add_term(Monomial(exponents), coeff);
        jet
    }

    /// Builds a jet from `(exponents, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms<I>(num_params: usize, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut jet = Self::zero(num_params, order);
        for (exps, c) in terms {
            assert_eq!(exps.len(), num_params + 1, "exponent vector length");
            jet.add_term(Monomial(exps), c);
        }
        jet
    }

    pub fn num_params(&self) -> usize {
        self.num_params
    }

    pub fn num_vars(&self) -> usize {
        self.num_params + 1
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms, lowest monomial first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Drops every term above `order` and records the lower order.
    pub fn truncate(&self, order: u32) -> Jet {
        let order = order.min(self.order);
        Jet {
            num_params: self.num_params,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Equality after truncating both sides to the smaller order.
    pub fn agrees_with(&self, other: &Jet) -> bool {
        if self.num_params != other.num_params {
            return false;
        }
        let order = self.order.min(other.order);
        self.truncate(order).terms == other.truncate(order).terms
    }

    fn check_dims(&self, other: &Jet) -> Result<(), JetError> {
        if self.num_params != other.num_params {
            return Err(JetError::DimensionMismatch {
                left: self.num_params,
                right: other.num_params,
            });
        }
        Ok(())
    }

    fn check_var(&self, var: Var) -> Result<(), JetError> {
        if var.0 > self.num_params {
            return Err(JetError::VariableOutOfRange {
                var,
                num_params: self.num_params,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_dims(other)?;
        let mut out = self.truncate(other.order);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Jet) -> Result<Jet, JetError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_dims(other)?;
        let order = self.order.min(other.order);
        let mut out = Jet::zero(self.num_params, order);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > order {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > order {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        if c.is_zero() {
            return Jet::zero(self.num_params, self.order);
        }
        Jet {
            num_params: self.num_params,
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn neg_ref(&self) -> Jet {
        Jet {
            num_params: self.num_params,
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Jet {
        let mut acc = Jet::one(self.num_params, self.order);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative; the result is known to one order less.
    pub fn partial_derivative(&self, var: Var) -> Jet {
        assert!(var.0 <= self.num_params, "variable {var} out of range");
        let mut out = Jet::zero(self.num_params, self.order.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[var.0];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var.0] -= 1;
            out.add_term(Monomial(exps), c * int(e as i64));
        }
        out
    }

    /// `d^k/dvar^k`.
    pub fn nth_derivative(&self, var: Var, k: u32) -> Jet {
        (0..k).fold(self.clone(), |acc, _| acc.partial_derivative(var))
    }

    /// Antiderivative in `x` vanishing on `x = 0`; known to one order more.
    pub fn integrate_in_x(&self) -> Jet {
        let mut out = Jet::zero(self.num_params, self.order + 1);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[0] += 1;
            let e = exps[0];
            out.add_term(Monomial(exps), c / int(e as i64));
        }
        out
    }

    /// Solves `q * divisor = self` up to the common truncation order.
    ///
    /// The lowest monomial of `divisor` (degree, then lexicographic) is the
    /// pivot. Each step clears the lowest remaining term of the remainder; a
    /// term that is not a multiple of the pivot means no truncated quotient
    /// exists. The quotient is known to `order - deg(pivot)`.
    pub fn divide(&self, divisor: &Jet) -> Result<Jet, JetError> {
        self.check_dims(divisor)?;
        let order = self.order.min(divisor.order);
        let (pivot, pivot_coeff) = match divisor.terms.iter().next() {
            None => return Err(JetError::DivisionByZero),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        if pivot.degree() > order {
            return Err(JetError::DivisorBeyondTruncation { order });
        }
        let quotient_order = order - pivot.degree();
        let divisor = divisor.truncate(order);
        let mut remainder = self.truncate(order);
        let mut quotient = Jet::zero(self.num_params, quotient_order);
        while let Some((m, c)) = remainder
            .terms
            .iter()
            .next()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            if !pivot.divides(&m) {
                return Err(JetError::NotDivisible {
                    monomial: format_monomial(&m),
                    pivot: format_monomial(&pivot),
                });
            }
            let t = m.quotient(&pivot);
            let coeff = &c / &pivot_coeff;
            let step = Jet::monomial(self.num_params, order, t.0.clone(), coeff.clone());
            remainder = &remainder - &(&step * &divisor);
            quotient.add_term(t, coeff);
        }
        debug_assert!((&quotient * &divisor).agrees_with(&self.truncate(order)));
        Ok(quotient)
    }

    /// Simultaneous substitution `var <- jet` (composition of germs at the
    /// origin). Every substituted jet must vanish at the origin.
    pub fn substitute(&self, assignments: &[(Var, Jet)]) -> Result<Jet, JetError> {
        let mut images: Vec<Jet> = (0..self.num_vars())
            .map(|i| Jet::var(self.num_params, self.order, Var(i)))
            .collect();
        let mut order = self.order;
        for (var, image) in assignments {
            self.check_var(*var)?;
            self.check_dims(image)?;
            if !image.value_at_origin().is_zero() {
                return Err(JetError::NotAGerm { var: *var });
            }
            order = order.min(image.order);
            images[var.0] = image.clone();
        }
        let powers: Vec<Vec<Jet>> = images
            .iter()
            .map(|img| {
                let img = img.truncate(order);
                let mut ps = vec![Jet::one(self.num_params, order)];
                for _ in 0..order {
                    let next = ps.last().unwrap() * &img;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut out = Jet::zero(self.num_params, order);
        for (m, c) in &self.terms {
            if m.degree() > order {
                break;
            }
            let mut term = Jet::constant(self.num_params, order, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn value_at_origin(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.num_vars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Linear part at the origin, one entry per variable (`x` first).
    pub fn gradient_at_origin(&self) -> Vec<Rational> {
        (0..self.num_vars())
            .map(|i| {
                let mut exps = vec![0; self.num_vars()];
                exps[i] = 1;
                self.coefficient(&exps)
            })
            .collect()
    }

    /// Lowest power of `var` on the `var` axis (all other variables set to 0).
    pub fn order_in(&self, var: Var) -> Order {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_pure_power_of(var))
            .map(|(m, _)| m.0[var.0])
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    /// Lowest total degree among nonzero terms.
    pub fn total_order(&self) -> Order {
        self.terms
            .keys()
            .next()
            .map_or(Order::Infinite, |m| Order::Finite(m.degree()))
    }

    /// Coefficient of `var^k` on the `var` axis.
    pub fn axis_coefficient(&self, var: Var, k: u32) -> Rational {
        let mut exps = vec![0; self.num_vars()];
        exps[var.0] = k;
        self.coefficient(&exps)
    }

    /// True when no term involves `var`.
    pub fn is_free_of(&self, var: Var) -> bool {
        self.terms.keys().all(|m| m.0[var.0] == 0)
    }

    /// Floating-point evaluation of the truncated polynomial.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.num_vars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                m.0.iter()
                    .zip(point)
                    .fold(c, |acc, (&e, &v)| acc * v.powi(e as i32))
            })
            .sum()
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{}", Var(i))),
            _ => parts.push(format!("{}^{e}", Var(i))),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parseable text form, highest-degree terms first: `3*x^4 + 1/2*x^2*y1`.
impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(m);
            if mono == "1" {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.checked_add(rhs).expect("jet addition")
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.checked_sub(rhs).expect("jet subtraction")
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.checked_mul(rhs).expect("jet multiplication")
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.neg_ref()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        &self + &rhs
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        &self - &rhs
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        &self * &rhs
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.neg_ref()
    }
}
