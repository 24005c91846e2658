//! Seeded random germs shared by the verification suites and the tests.

use num_traits::Zero;
use rand::Rng;

use crate::classify::PedalRoute;
use crate::germ::{integrate, MapGerm};
use crate::jet::{int, Jet, Rational};

/// Nonzero-capable small rational `p/q` with `|p| <= max_num`, `1 <= q <= max_den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let p = rng.gen_range(-max_num..=max_num);
    let q = rng.gen_range(1..=max_den);
    Rational::new(p.into(), q.into())
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    loop {
        let r = random_rational(rng, max_num, max_den);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_exponents<R: Rng + ?Sized>(rng: &mut R, num_vars: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0u32; num_vars];
    for _ in 0..degree {
        e[rng.gen_range(0..num_vars)] += 1;
    }
    e
}

/// Sparse random jet with `terms` monomials of degree in `degrees`.
pub fn random_jet<R: Rng + ?Sized>(
    rng: &mut R,
    num_params: usize,
    order: u32,
    degrees: std::ops::RangeInclusive<u32>,
    terms: usize,
) -> Jet {
    let mut j = Jet::zero(num_params, order);
    for _ in 0..terms {
        let d = rng.gen_range(degrees.clone());
        let e = random_exponents(rng, num_params + 1, d);
        j = &j + &Jet::monomial(num_params, order, e, random_rational(rng, 5, 4));
    }
    j
}

fn x_pow(num_params: usize, order: u32, k: u32, c: Rational) -> Jet {
    let mut e = vec![0; num_params + 1];
    e[0] = k;
    Jet::monomial(num_params, order, e, c)
}

fn y_lin(num_params: usize, order: u32, i: usize, c: Rational) -> Jet {
    let mut e = vec![0; num_params + 1];
    e[i] = 1;
    Jet::monomial(num_params, order, e, c)
}

/// A random pedal-type germ `(n p, p, y)` and the branch its `p` was built for.
#[derive(Clone, Debug)]
pub struct PedalSample {
    pub germ: MapGerm,
    pub n_factor: Jet,
    pub p_factor: Jet,
    pub route: PedalRoute,
    /// For the Morse route: whether `dq(0) != 0` was built in.
    pub umbrella: bool,
}

/// `n = c x + (degree >= 1 terms)`, `c != 0`.
pub fn random_n_factor<R: Rng + ?Sized>(rng: &mut R, num_params: usize, order: u32) -> Jet {
    let lead = x_pow(num_params, order, 1, random_nonzero_rational(rng, 4, 3));
    let mut rest = random_jet(rng, num_params, order, 1..=3, 3);
    // drop any extra linear x term so the lead stays nonzero
    let x_coeff = rest.axis_coefficient(crate::jet::Var::X, 1);
    rest = &rest - &x_pow(num_params, order, 1, x_coeff);
    &lead + &rest
}

/// Random `p` for the requested route. The Morse route builds in
/// `dq(0) != 0` exactly when `umbrella` holds.
pub fn random_p_factor<R: Rng + ?Sized>(
    rng: &mut R,
    num_params: usize,
    order: u32,
    route: PedalRoute,
    umbrella: bool,
) -> Jet {
    let n = num_params;
    let higher = random_jet(rng, n, order, 2..=4, 4);
    let strip = |j: Jet, kill: &dyn Fn(&[u32]) -> bool| {
        Jet::from_terms(
            n,
            order,
            j.terms().filter(|(m, _)| !kill(m.exponents())).map(|(m, c)| (m.exponents().to_vec(), c.clone())),
        )
    };
    match route {
        PedalRoute::NonVanishing => {
            let c = Jet::constant(n, order, random_nonzero_rational(rng, 4, 3));
            &c + &random_jet(rng, n, order, 1..=3, 4)
        }
        PedalRoute::FoldOfP => {
            let lin = x_pow(n, order, 1, random_nonzero_rational(rng, 4, 3));
            let mut y = Jet::zero(n, order);
            for i in 1..=n {
                y = &y + &y_lin(n, order, i, random_rational(rng, 3, 2));
            }
            &(&lin + &y) + &higher
        }
        PedalRoute::Morse => {
            let sq = x_pow(n, order, 2, random_nonzero_rational(rng, 4, 3));
            let rest = strip(higher, &|e| e[0] == 2 && e.iter().skip(1).all(|&v| v == 0));
            let mut y = Jet::zero(n, order);
            if umbrella {
                let hit = rng.gen_range(1..=n);
                for i in 1..=n {
                    let c = if i == hit { random_nonzero_rational(rng, 4, 3) } else { random_rational(rng, 3, 2) };
                    y = &y + &y_lin(n, order, i, c);
                }
            } else {
                // q(y) starts in degree 2 when p has no linear y terms and
                // no x y_i terms of degree 2 feeding a linear xi
                y = random_jet(rng, n, order, 2..=2, 1);
                y = strip(y, &|e| e[0] != 0);
                if y.is_zero() {
                    y = Jet::monomial(n, order, {
                        let mut e = vec![0; n + 1];
                        e[1] = 2;
                        e
                    }, int(1));
                }
            }
            &(&sq + &y) + &rest
        }
        PedalRoute::NotMorse => {
            let rest = strip(higher, &|e| e[0] == 2 && e.iter().skip(1).all(|&v| v == 0));
            let cube = x_pow(n, order, 3, random_nonzero_rational(rng, 4, 3));
            let mut y = Jet::zero(n, order);
            for i in 1..=n {
                y = &y + &y_lin(n, order, i, random_rational(rng, 3, 2));
            }
            &(&cube + &y) + &rest
        }
    }
}

const ROUTES: [PedalRoute; 4] = [
    PedalRoute::NonVanishing,
    PedalRoute::FoldOfP,
    PedalRoute::Morse,
    PedalRoute::NotMorse,
];

/// Random pedal-type germ with a uniformly chosen route; half of the Morse
/// samples carry `dq(0) != 0`.
pub fn random_pedal_germ<R: Rng + ?Sized>(rng: &mut R, num_params: usize, order: u32) -> PedalSample {
    let route = ROUTES[rng.gen_range(0..ROUTES.len())];
    let umbrella = route == PedalRoute::Morse && rng.gen_bool(0.5);
    let n_factor = random_n_factor(rng, num_params, order);
    let p_factor = random_p_factor(rng, num_params, order, route, umbrella);
    let germ = MapGerm::new(&n_factor * &p_factor, p_factor.clone()).expect("pedal germs have unfolding shape");
    PedalSample {
        germ,
        n_factor,
        p_factor,
        route,
        umbrella,
    }
}

/// Random normalized Legendrian germ vanishing on `x = 0`, obtained as the
/// integration of a pedal-type germ with `p(0) = 0`.
pub fn random_normalized_legendrian<R: Rng + ?Sized>(rng: &mut R, num_params: usize, order: u32) -> MapGerm {
    loop {
        let s = random_pedal_germ(rng, num_params, order);
        if s.route == PedalRoute::NonVanishing {
            continue;
        }
        return integrate(&s.germ).expect("pedal-type germs integrate");
    }
}

/// Coefficients `(a, b, c, d)` of the quartic family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticTuple {
    pub a: Rational,
    pub b: Vec<Rational>,
    pub c: Rational,
    pub d: Vec<Rational>,
}

/// Random tuple; about half satisfy `2 a d_i = 3 b_i c` by construction and
/// entries are zero with probability 1/5.
pub fn random_quartic_tuple<R: Rng + ?Sized>(rng: &mut R, num_params: usize) -> QuarticTuple {
    let pick = |rng: &mut R| {
        if rng.gen_bool(0.2) {
            Rational::zero()
        } else {
            random_nonzero_rational(rng, 6, 4)
        }
    };
    let a = pick(rng);
    let c = pick(rng);
    let b: Vec<Rational> = (0..num_params).map(|_| pick(rng)).collect();
    let tie = rng.gen_bool(0.5) && !a.is_zero();
    let d: Vec<Rational> = b
        .iter()
        .map(|bi| {
            if tie {
                int(3) * bi * &c / (int(2) * &a)
            } else {
                pick(rng)
            }
        })
        .collect();
    QuarticTuple { a, b, c, d }
}
