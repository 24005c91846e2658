//! Exact Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::jet::Rational;

/// Rank of a dense matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (entry, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *entry -= &factor * p;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Incremental sparse row-echelon basis: vectors are maps from column index
/// to nonzero entry, and each stored row is keyed by its leading column.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and keeps it if independent.
    pub fn insert(&mut self, mut v: BTreeMap<usize, Rational>) -> bool {
        v.retain(|_, c| !c.is_zero());
        loop {
            let Some((&lead, coeff)) = v.iter().next() else {
                return false;
            };
            let Some(row) = self.rows.get(&lead) else {
                let coeff = coeff.clone();
                for entry in v.values_mut() {
                    *entry /= &coeff;
                }
                self.rows.insert(lead, v);
                return true;
            };
            let factor = coeff.clone();
            for (col, r) in row {
                let updated = v.get(col).cloned().unwrap_or_else(Rational::zero) - &factor * r;
                if updated.is_zero() {
                    v.remove(col);
                } else {
                    v.insert(*col, updated);
                }
            }
        }
    }
}
