use std::collections::BTreeMap;

use serde::Serialize;

use super::{ChainComplex, ChainMap};
use crate::linalg::Matrix;

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    /// Nonzero Betti numbers by degree.
    pub betti: BTreeMap<i32, usize>,
    /// Columns span `ker d_n`.
    #[serde(skip)]
    pub cycle_bases: BTreeMap<i32, Matrix>,
    /// Columns span `im d_{n+1}`.
    #[serde(skip)]
    pub boundary_bases: BTreeMap<i32, Matrix>,
}

impl HomologyReport {
    pub fn dim(&self, n: i32) -> usize {
        self.betti.get(&n).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.is_empty()
    }
}

fn cycles(c: &ChainComplex, n: i32) -> Matrix {
    c.diff(n).kernel_basis()
}

fn boundaries(c: &ChainComplex, n: i32) -> Matrix {
    c.diff(n + 1).column_basis()
}

pub fn homology(c: &ChainComplex) -> HomologyReport {
    let cycle_bases: BTreeMap<i32, Matrix> = c.degrees().map(|n| (n, cycles(c, n))).collect();
    let boundary_bases: BTreeMap<i32, Matrix> = c.degrees().map(|n| (n, boundaries(c, n))).collect();
    let betti = c
        .degrees()
        .map(|n| (n, cycle_bases[&n].cols() - boundary_bases[&n].cols()))
        .filter(|&(_, b)| b > 0)
        .collect();
    HomologyReport {
        betti,
        cycle_bases,
        boundary_bases,
    }
}

/// Rank of `H_n(f)`.
pub fn induced_homology_rank(f: &ChainMap, n: i32) -> usize {
    let (a, b) = (f.src(), f.dst());
    let img = &f.comp(n) * &cycles(a, n);
    let bd = boundaries(b, n);
    let both = Matrix::hstack(f.p(), b.dim(n), &[&img, &bd]);
    both.rank() - bd.cols()
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    let ha = homology(f.src());
    let hb = homology(f.dst());
    if ha.betti != hb.betti {
        return false;
    }
    ha.betti.iter().all(|(&n, &d)| induced_homology_rank(f, n) == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::cokernel;

    #[test]
    fn spheres_and_disks() {
        let p = 5;
        assert_eq!(homology(&ChainComplex::sphere(p, 3)).dim(3), 1);
        assert!(homology(&ChainComplex::disk(p, 3)).is_acyclic());
    }

    #[test]
    fn quasi_iso_detects_rank() {
        let p = 3;
        let s = ChainComplex::sphere(p, 0);
        let d = ChainComplex::disk(p, 1);
        let i = ChainMap::from_fn(&s, &d, |n| {
            if n == 0 {
                Matrix::identity(p, 1)
            } else {
                Matrix::zeros(p, d.dim(n), s.dim(n))
            }
        });
        assert!(!is_quasi_iso(&i));
        let q = cokernel(&i).proj;
        // D^1 -> S^1 kills no homology but misses H_1
        assert!(!is_quasi_iso(&q));
        assert!(is_quasi_iso(&ChainMap::identity(&d)));
        let z = ChainMap::zero(&s, &s);
        assert!(!is_quasi_iso(&z));
    }
}
