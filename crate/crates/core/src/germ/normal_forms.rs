//! Normal forms and named families used across the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::MapGerm;
use crate::jet::{int, rat, Jet, Rational, Var};

/// Sign choice in the `S_k` families `x^2 ± y^(k+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> Rational {
        match self {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

fn mono(n: usize, order: u32, exps: &[(Var, u32)], c: Rational) -> Jet {
    let mut e = vec![0; n + 1];
    for &(v, k) in exps {
        e[v.index()] += k;
    }
    Jet::monomial(n, order, e, c)
}

/// `(3x^4 + x^2 y1, -4x^3 - 2x y1, y)`.
pub fn swallowtail(num_params: usize, order: u32) -> MapGerm {
    let n = num_params;
    let phi1 = &mono(n, order, &[(Var::X, 4)], int(3))
        + &mono(n, order, &[(Var::X, 2), (Var::y(1), 1)], int(1));
    let phi2 = &mono(n, order, &[(Var::X, 3)], int(-4))
        + &mono(n, order, &[(Var::X, 1), (Var::y(1), 1)], int(-2));
    MapGerm::new(phi1, phi2).expect("well-formed normal form")
}

/// Number of parameter terms `y_j` present in `G_k` with `n` parameters.
pub fn g_k_param_terms(k: u32, num_params: usize) -> usize {
    (k.saturating_sub(1) as usize).min(num_params)
}

/// Normal form of Legendrian `A_(k+1)` type:
/// `((k+1)x^(k+2) + sum j x^(j+1) y_j, -(k+2)x^(k+1) - sum (j+1) x^j y_j, y)`
/// with `j = 1..k-1`. Terms with `j > n` do not exist for `n` parameters
/// and are dropped; the germ is a genuine `A_(k+1)` form only when
/// `k <= n + 1`.
pub fn g_k(k: u32, num_params: usize, order: u32) -> MapGerm {
    let n = num_params;
    let kk = k as i64;
    let mut phi1 = mono(n, order, &[(Var::X, k + 2)], int(kk + 1));
    let mut phi2 = mono(n, order, &[(Var::X, k + 1)], int(-(kk + 2)));
    for j in 1..=g_k_param_terms(k, n) {
        let jj = j as u32;
        phi1 = &phi1 + &mono(n, order, &[(Var::X, jj + 1), (Var::y(j), 1)], int(j as i64));
        phi2 = &phi2 + &mono(n, order, &[(Var::X, jj), (Var::y(j), 1)], int(-(j as i64 + 1)));
    }
    MapGerm::new(phi1, phi2).expect("well-formed normal form")
}

/// The factors `(n, p)` of `D(G_k)`: `n = -x`,
/// `p = -(k+2)(k+1)x^k - sum j(j+1) x^(j-1) y_j`.
pub fn g_k_differential_factors(k: u32, num_params: usize, order: u32) -> (Jet, Jet) {
    let n = num_params;
    let kk = k as i64;
    let n_factor = mono(n, order, &[(Var::X, 1)], int(-1));
    let mut p = mono(n, order, &[(Var::X, k)], int(-(kk + 2) * (kk + 1)));
    for j in 1..=g_k_param_terms(k, n) {
        let jj = j as i64;
        p = &p + &mono(n, order, &[(Var::X, j as u32 - 1), (Var::y(j), 1)], int(-jj * (jj + 1)));
    }
    (n_factor, p)
}

/// `S_k` normal form `(x(x^2 ± y^(k+1)), x^2 ± y^(k+1), y)`, one parameter.
pub fn f_k(k: u32, sign: Sign, order: u32) -> MapGerm {
    let x2 = mono(1, order, &[(Var::X, 2)], int(1));
    let yk = mono(1, order, &[(Var::y(1), k + 1)], sign.factor());
    let p = &x2 + &yk;
    let phi1 = &Jet::var(1, order, Var::X) * &p;
    MapGerm::new(phi1, p).expect("well-formed normal form")
}

/// Legendrian `S_k` normal form
/// `(1/4 x^4 ± 1/2 x^2 y^(k+1), 1/3 x^3 ± x y^(k+1), y)`.
pub fn big_f_k(k: u32, sign: Sign, order: u32) -> MapGerm {
    let s = sign.factor();
    let phi1 = &mono(1, order, &[(Var::X, 4)], rat(1, 4))
        + &mono(1, order, &[(Var::X, 2), (Var::y(1), k + 1)], &s * rat(1, 2));
    let phi2 = &mono(1, order, &[(Var::X, 3)], rat(1, 3))
        + &mono(1, order, &[(Var::X, 1), (Var::y(1), k + 1)], s);
    MapGerm::new(phi1, phi2).expect("well-formed normal form")
}

/// `(a x^4 + x^2 sum b_i y_i, c x^3 + x sum d_i y_i, y)`.
pub fn quartic_family(a: &Rational, b: &[Rational], c: &Rational, d: &[Rational], order: u32) -> MapGerm {
    assert_eq!(b.len(), d.len(), "b and d must have one entry per parameter");
    let n = b.len();
    let mut phi1 = mono(n, order, &[(Var::X, 4)], a.clone());
    let mut phi2 = mono(n, order, &[(Var::X, 3)], c.clone());
    for i in 1..=n {
        phi1 = &phi1 + &mono(n, order, &[(Var::X, 2), (Var::y(i), 1)], b[i - 1].clone());
        phi2 = &phi2 + &mono(n, order, &[(Var::X, 1), (Var::y(i), 1)], d[i - 1].clone());
    }
    MapGerm::new(phi1, phi2).expect("well-formed family member")
}

/// Tangent developable of `(x^4, x^3, x^2)`:
/// `(x^4, x^3, x^2) + y (4x^2, 3x, 2)`, as three raw components. Its last
/// component is not `y`, so it is not yet in unfolding shape.
pub fn tangent_developable(order: u32) -> [Jet; 3] {
    let y = Var::y(1);
    [
        &mono(1, order, &[(Var::X, 4)], int(1)) + &mono(1, order, &[(Var::X, 2), (y, 1)], int(4)),
        &mono(1, order, &[(Var::X, 3)], int(1)) + &mono(1, order, &[(Var::X, 1), (y, 1)], int(3)),
        &mono(1, order, &[(Var::X, 2)], int(1)) + &mono(1, order, &[(y, 1)], int(2)),
    ]
}
