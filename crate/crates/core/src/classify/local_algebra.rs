//! Brute-force dimension of a truncated local algebra
//! `Q[x, y] / (I + m^bound)`, computed by linear algebra on the monomials of
//! degree `< bound`. Used as an independent check of the rank criterion.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::jet::{Jet, Monomial, Var};
use crate::linalg::EchelonBasis;

/// Monomials in `num_vars` variables of total degree `< bound`, lowest first.
fn monomials_below(num_vars: usize, bound: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    if bound == 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    rec(&mut Vec::new(), num_vars, bound - 1, &mut raw);
    let mut monos: Vec<Monomial> = raw.into_iter().map(Monomial::new).collect();
    monos.sort();
    monos
}

/// `dim Q[x, y1..yn] / (generators + m^bound)`.
///
/// Every generator must be known to degree `bound - 1`.
pub fn truncated_quotient_dimension(generators: &[Jet], num_params: usize, bound: u32) -> usize {
    let basis_monos = monomials_below(num_params + 1, bound);
    let index: HashMap<&Monomial, usize> = basis_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut span = EchelonBasis::new();
    for g in generators {
        assert!(
            g.order() + 1 >= bound,
            "generator known to order {} but the bound needs {}",
            g.order(),
            bound - 1
        );
        for m in &basis_monos {
            let mut v = BTreeMap::new();
            for (gm, c) in g.terms() {
                let prod: Vec<u32> = gm
                    .exponents()
                    .iter()
                    .zip(m.exponents())
                    .map(|(a, b)| a + b)
                    .collect();
                let prod = Monomial::new(prod);
                if prod.degree() < bound {
                    v.insert(index[&prod], c.clone());
                }
            }
            if !v.is_empty() {
                span.insert(v);
            }
        }
    }
    basis_monos.len() - span.dimension()
}

/// Dimension of the same truncated quotient for the model ideal
/// `(x, y1, .., y_(k-1))`, computed by the same routine.
pub fn model_quotient_dimension(k: usize, num_params: usize, order: u32, bound: u32) -> usize {
    assert!(k <= num_params + 1, "model needs {k} coordinates");
    let gens: Vec<Jet> = (0..k)
        .map(|v| Jet::var(num_params, order, Var(v)))
        .collect();
    truncated_quotient_dimension(&gens, num_params, bound)
}

/// Outcome of comparing `(LJ, d_x LJ, .., d_x^(k-1) LJ)` with the model
/// ideal of the same length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub k: usize,
    pub bound: u32,
    pub ideal_dimension: usize,
    pub model_dimension: usize,
}

impl OracleComparison {
    pub fn matches_model(&self) -> bool {
        self.ideal_dimension == self.model_dimension
    }
}

/// Runs the oracle on the first `k` x-derivatives of `lj`; `None` when
/// `lj` is not known to enough degrees for the requested bound, or when the
/// model `(x, y1, .., y_(k-1))` needs more parameters than `lj` has.
pub fn compare_with_model(lj: &Jet, k: usize, bound: u32) -> Option<OracleComparison> {
    if k > lj.num_params() + 1 {
        return None;
    }
    let gens: Vec<Jet> = (0..k as u32).map(|j| lj.nth_derivative(Var::X, j)).collect();
    if gens.iter().any(|g| g.order() + 1 < bound) {
        return None;
    }
    let n = lj.num_params();
    Some(OracleComparison {
        k,
        bound,
        ideal_dimension: truncated_quotient_dimension(&gens, n, bound),
        model_dimension: model_quotient_dimension(k, n, lj.order(), bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::parse_jet;

    fn j(src: &str, n: usize) -> Jet {
        parse_jet(src, n, 10).unwrap()
    }

    #[test]
    fn monomial_count() {
        // degree < 3 in two variables: 1, x, y, x^2, xy, y^2
        assert_eq!(monomials_below(2, 3).len(), 6);
        assert_eq!(monomials_below(4, 6).len(), 126);
    }

    #[test]
    fn known_quotients() {
        // Q[x,y]/(x^2, y) + m^5 has basis 1, x
        assert_eq!(truncated_quotient_dimension(&[j("x^2", 1), j("y1", 1)], 1, 5), 2);
        // (x) alone leaves 1, y, .., y^4
        assert_eq!(truncated_quotient_dimension(&[j("x", 1)], 1, 5), 5);
        // a unit kills everything
        assert_eq!(truncated_quotient_dimension(&[j("1 + x", 1)], 1, 5), 0);
        // empty ideal: all monomials of degree < 4 in 2 vars
        assert_eq!(truncated_quotient_dimension(&[], 1, 4), 10);
        assert_eq!(model_quotient_dimension(2, 1, 10, 6), 1);
    }

    #[test]
    fn coordinate_change_preserves_dimension() {
        // (x + y^2 + x y) behaves like (x)
        let a = truncated_quotient_dimension(&[j("x + y1^2 + x*y1", 1)], 1, 6);
        assert_eq!(a, model_quotient_dimension(1, 1, 10, 6));
    }
}
