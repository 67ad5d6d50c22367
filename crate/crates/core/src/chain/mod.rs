//! Bounded finite-dimensional chain complexes over F_p.
//!
//! Complexes carry a support window `[lo, hi]`; outside it every space is zero.
//! Equality compares graded data only, so the same complex stored with a
//! wider window of zero spaces compares equal.

mod gadgets;
mod hom;
mod homology;
mod limits;
mod space;
mod tensor;

pub use gadgets::{cone, cylinder, mapping_path, path_object, path_space, Cone, Cylinder, MappingPath, PathObject};
pub use hom::{hom_complex, hom_cycle_to_map, hom_offset, map_to_hom_cycle, post_compose, pre_compose};
pub use homology::{homology, induced_homology_rank, is_quasi_iso, HomologyReport};
pub use limits::{
    cokernel, descend, direct_sum, factor_through, kernel, pullback, pushout, Cokernel, DirectSum, Kernel, Pullback,
    Pushout,
};
pub use space::{add_composite_equation, map_space, ChainMapUnknown};
pub use tensor::tensor_index;
pub use tensor::{
    associator, bilinear_map, left_unitor, rebracket, right_unitor, symmetry_iso, tensor_complex, tensor_map, Bracket,
};

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone)]
pub struct ChainComplex {
    p: u64,
    lo: i32,
    dims: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k}: C_{lo+k} -> C_{lo+k-1}`.
    diffs: Vec<Matrix>,
}

impl std::fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Complex/F{}[", self.p)?;
        for n in self.degrees() {
            if self.dim(n) > 0 {
                write!(f, " {}:{}", n, self.dim(n))?;
            }
        }
        write!(f, " ]")
    }
}

impl ChainComplex {
    /// Checked constructor; degrees missing from `diffs` get zero differentials.
    pub fn new(p: u64, lo: i32, dims: Vec<usize>, diffs: BTreeMap<i32, Matrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidComplex {
                degree: lo,
                reason: "empty support window".into(),
            });
        }
        let hi = lo + dims.len() as i32 - 1;
        let dim = |n: i32| {
            if n < lo || n > hi {
                0
            } else {
                dims[(n - lo) as usize]
            }
        };
        for (&n, m) in &diffs {
            if (n < lo || n > hi) && !m.is_zero() {
                return Err(Error::InvalidComplex {
                    degree: n,
                    reason: "differential outside the window".into(),
                });
            }
            if n >= lo && n <= hi && m.shape() != (dim(n - 1), dim(n)) {
                return Err(Error::InvalidComplex {
                    degree: n,
                    reason: format!(
                        "differential has shape {:?}, expected {:?}",
                        m.shape(),
                        (dim(n - 1), dim(n))
                    ),
                });
            }
            if m.p() != p {
                return Err(Error::FieldMismatch { left: p, right: m.p() });
            }
        }
        let diffs = (lo..=hi)
            .map(|n| {
                diffs
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zeros(p, dim(n - 1), dim(n)))
            })
            .collect();
        Ok(ChainComplex { p, lo, dims, diffs })
    }

    /// Constructor for internally assembled data with known-good shapes.
    pub(crate) fn from_fn(p: u64, lo: i32, hi: i32, dims: &dyn Fn(i32) -> usize, diff: &dyn Fn(i32) -> Matrix) -> Self {
        assert!(lo <= hi);
        let dims: Vec<usize> = (lo..=hi).map(dims).collect();
        let diffs = (lo..=hi)
            .map(|n| {
                let m = diff(n);
                let expect_rows = if n > lo { dims[(n - 1 - lo) as usize] } else { 0 };
                assert_eq!(
                    m.shape(),
                    (expect_rows, dims[(n - lo) as usize]),
                    "differential shape at {n}"
                );
                m
            })
            .collect();
        ChainComplex { p, lo, dims, diffs }
    }

    pub fn zero(p: u64) -> Self {
        ChainComplex {
            p,
            lo: 0,
            dims: vec![0],
            diffs: vec![Matrix::zeros(p, 0, 0)],
        }
    }

    /// `S^n`: the field in degree `n`.
    pub fn sphere(p: u64, n: i32) -> Self {
        ChainComplex {
            p,
            lo: n,
            dims: vec![1],
            diffs: vec![Matrix::zeros(p, 0, 1)],
        }
    }

    /// `S`, the monoidal unit.
    pub fn unit(p: u64) -> Self {
        Self::sphere(p, 0)
    }

    /// `D^n`: the field in degrees `n` and `n-1` with identity differential.
    pub fn disk(p: u64, n: i32) -> Self {
        ChainComplex {
            p,
            lo: n - 1,
            dims: vec![1, 1],
            diffs: vec![Matrix::zeros(p, 0, 1), Matrix::identity(p, 1)],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn lo(&self) -> i32 {
        self.lo
    }
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }
    pub fn degrees(&self) -> RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `d_n: C_n -> C_{n-1}`.
    pub fn diff(&self, n: i32) -> Matrix {
        if n < self.lo || n > self.hi() {
            Matrix::zeros(self.p, self.dim(n - 1), self.dim(n))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    pub fn diff_ref(&self, n: i32) -> Option<&Matrix> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some(&self.diffs[(n - self.lo) as usize])
        }
    }

    /// Checks `d² = 0`; reports the first failing degree.
    pub fn validate(&self) -> Result<()> {
        for n in self.lo + 1..=self.hi() {
            if !(&self.diff(n - 1) * &self.diff(n)).is_zero() {
                return Err(Error::InvalidComplex {
                    degree: n,
                    reason: "d_{n-1} d_n != 0".into(),
                });
            }
        }
        Ok(())
    }

    /// Sets every differential to a change of basis `g_{n-1} d_n g_n^{-1}`.
    pub fn conjugate(&self, change: &dyn Fn(i32) -> Matrix) -> (ChainComplex, ChainMap) {
        let inv: BTreeMap<i32, Matrix> = self
            .degrees()
            .map(|n| (n, change(n).inverse().expect("change of basis must be invertible")))
            .collect();
        let lo = self.lo;
        let twisted = ChainComplex::from_fn(self.p, lo, self.hi(), &|n| self.dim(n), &|n| {
            if n == lo {
                self.diff(n)
            } else {
                &(&change(n - 1) * &self.diff(n)) * &inv[&n]
            }
        });
        let iso = ChainMap::from_fn(self, &twisted, change);
        (twisted, iso)
    }

    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        self.degrees()
            .map(|n| (n, self.dim(n)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).all(|n| self.dim(n) == other.dim(n)) && (lo..=hi).all(|n| self.diff(n) == other.diff(n))
    }
}

impl Eq for ChainComplex {}

/// A degree-preserving map commuting with differentials.
#[derive(Clone)]
pub struct ChainMap {
    src: ChainComplex,
    dst: ChainComplex,
    lo: i32,
    comps: Vec<Matrix>,
}

impl std::fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.src, self.dst)?;
        for (k, m) in self.comps.iter().enumerate() {
            if m.rows() * m.cols() > 0 {
                write!(f, " {}:{:?}", self.lo + k as i32, m.to_rows())?;
            }
        }
        Ok(())
    }
}

fn union_window(a: &ChainComplex, b: &ChainComplex) -> (i32, i32) {
    (a.lo().min(b.lo()), a.hi().max(b.hi()))
}

impl ChainMap {
    /// Checked constructor: shapes and the commutation law are verified.
    pub fn new(src: &ChainComplex, dst: &ChainComplex, comps: BTreeMap<i32, Matrix>) -> Result<Self> {
        if src.p() != dst.p() {
            return Err(Error::FieldMismatch {
                left: src.p(),
                right: dst.p(),
            });
        }
        let (lo, hi) = union_window(src, dst);
        for (&n, m) in &comps {
            if m.shape() != (dst.dim(n), src.dim(n)) {
                return Err(Error::InvalidMap {
                    degree: n,
                    reason: format!(
                        "component has shape {:?}, expected {:?}",
                        m.shape(),
                        (dst.dim(n), src.dim(n))
                    ),
                });
            }
        }
        let map = ChainMap {
            src: src.clone(),
            dst: dst.clone(),
            lo,
            comps: (lo..=hi)
                .map(|n| {
                    comps
                        .get(&n)
                        .cloned()
                        .unwrap_or_else(|| Matrix::zeros(src.p(), dst.dim(n), src.dim(n)))
                })
                .collect(),
        };
        map.validate()?;
        Ok(map)
    }

    /// Unchecked constructor for internally built maps; shapes are asserted.
    pub fn from_fn(src: &ChainComplex, dst: &ChainComplex, mut comp: impl FnMut(i32) -> Matrix) -> Self {
        let (lo, hi) = union_window(src, dst);
        let comps = (lo..=hi)
            .map(|n| {
                let m = comp(n);
                assert_eq!(m.shape(), (dst.dim(n), src.dim(n)), "chain map component shape at {n}");
                m
            })
            .collect();
        ChainMap {
            src: src.clone(),
            dst: dst.clone(),
            lo,
            comps,
        }
    }

    pub fn identity(x: &ChainComplex) -> Self {
        Self::from_fn(x, x, |n| Matrix::identity(x.p(), x.dim(n)))
    }

    pub fn zero(src: &ChainComplex, dst: &ChainComplex) -> Self {
        Self::from_fn(src, dst, |n| Matrix::zeros(src.p(), dst.dim(n), src.dim(n)))
    }

    pub fn src(&self) -> &ChainComplex {
        &self.src
    }
    pub fn dst(&self) -> &ChainComplex {
        &self.dst
    }
    pub fn p(&self) -> u64 {
        self.src.p()
    }

    pub fn degrees(&self) -> RangeInclusive<i32> {
        self.lo..=self.lo + self.comps.len() as i32 - 1
    }

    pub fn comp(&self, n: i32) -> Matrix {
        match self.comp_ref(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.p(), self.dst.dim(n), self.src.dim(n)),
        }
    }

    pub fn comp_ref(&self, n: i32) -> Option<&Matrix> {
        if n < self.lo || n >= self.lo + self.comps.len() as i32 {
            None
        } else {
            Some(&self.comps[(n - self.lo) as usize])
        }
    }

    /// Checks `d f = f d` in every degree.
    pub fn validate(&self) -> Result<()> {
        for n in self.degrees() {
            let lhs = &self.dst.diff(n) * &self.comp(n);
            let rhs = &self.comp(n - 1) * &self.src.diff(n);
            if lhs != rhs {
                return Err(Error::InvalidMap {
                    degree: n,
                    reason: "d f != f d".into(),
                });
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        assert!(other.dst == self.src, "compose: codomain/domain mismatch");
        ChainMap::from_fn(&other.src, &self.dst, |n| &self.comp(n) * &other.comp(n))
    }

    pub fn try_compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.dst != self.src {
            return Err(Error::DimensionMismatch("compose: codomain/domain mismatch".into()));
        }
        Ok(self.compose(other))
    }

    fn zip(&self, other: &ChainMap, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> ChainMap {
        assert!(
            self.src == other.src && self.dst == other.dst,
            "maps with different endpoints"
        );
        ChainMap::from_fn(&self.src, &self.dst, |n| f(&self.comp(n), &other.comp(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap::from_fn(&self.src, &self.dst, |n| self.comp(n).neg())
    }

    pub fn scale(&self, c: u64) -> ChainMap {
        ChainMap::from_fn(&self.src, &self.dst, |n| self.comp(n).scale(c))
    }

    /// Same components viewed between equal complexes stored differently.
    pub fn retarget(&self, src: &ChainComplex, dst: &ChainComplex) -> ChainMap {
        assert!(*src == self.src && *dst == self.dst);
        ChainMap::from_fn(src, dst, |n| self.comp(n))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.degrees().all(|n| self.comp(n).rank() == self.src.dim(n))
    }

    pub fn is_surjective(&self) -> bool {
        self.degrees().all(|n| self.comp(n).rank() == self.dst.dim(n))
    }

    pub fn is_iso(&self) -> bool {
        self.degrees()
            .all(|n| self.src.dim(n) == self.dst.dim(n) && self.comp(n).rank() == self.src.dim(n))
    }

    pub fn inverse(&self) -> Option<ChainMap> {
        if !self.is_iso() {
            return None;
        }
        Some(ChainMap::from_fn(&self.dst, &self.src, |n| {
            self.comp(n).inverse().expect("iso component")
        }))
    }
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &Self) -> bool {
        if self.src != other.src || self.dst != other.dst {
            return false;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.degrees().end().max(other.degrees().end()).to_owned();
        (lo..=hi).all(|n| self.comp(n) == other.comp(n))
    }
}

impl Eq for ChainMap {}

/// Describes a complex assembled from shifted copies of other complexes;
/// summand `k` contributes `X_k` in degree `n - shift_k` at degree `n`.
pub(crate) struct Layout<'a> {
    pub summands: Vec<(&'a ChainComplex, i32)>,
}

impl<'a> Layout<'a> {
    pub fn new(summands: Vec<(&'a ChainComplex, i32)>) -> Self {
        Layout { summands }
    }

    pub fn window(&self) -> (i32, i32) {
        let lo = self.summands.iter().map(|(c, s)| c.lo() + s).min().unwrap_or(0);
        let hi = self.summands.iter().map(|(c, s)| c.hi() + s).max().unwrap_or(0);
        (lo, hi)
    }

    pub fn dim(&self, n: i32) -> usize {
        self.summands.iter().map(|(c, s)| c.dim(n - s)).sum()
    }

    pub fn offset(&self, n: i32, k: usize) -> usize {
        self.summands[..k].iter().map(|(c, s)| c.dim(n - s)).sum()
    }

    /// `block(n, from, to)` is the component from summand `from` in degree `n`
    /// to summand `to` in degree `n - 1`.
    pub fn assemble(&self, p: u64, block: impl Fn(i32, usize, usize) -> Option<Matrix>) -> ChainComplex {
        let (lo, hi) = self.window();
        let k = self.summands.len();
        ChainComplex::from_fn(p, lo, hi, &|n| self.dim(n), &|n| {
            let rows = if n > lo { self.dim(n - 1) } else { 0 };
            let mut m = Matrix::zeros(p, rows, self.dim(n));
            if n > lo {
                for from in 0..k {
                    for to in 0..k {
                        if let Some(b) = block(n, from, to) {
                            m.add_block(self.offset(n - 1, to), self.offset(n, from), &b);
                        }
                    }
                }
            }
            m
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_complexes_validate() {
        assert!(ChainComplex::unit(5).validate().is_ok());
        assert!(ChainComplex::disk(5, 1).validate().is_ok());
        assert!(ChainComplex::zero(3).validate().is_ok());
    }

    #[test]
    fn d_squared_violation_reported() {
        let mut diffs = BTreeMap::new();
        diffs.insert(1, Matrix::identity(5, 1));
        diffs.insert(2, Matrix::identity(5, 1));
        let c = ChainComplex::new(5, 0, vec![1, 1, 1], diffs).unwrap();
        assert_eq!(
            c.validate(),
            Err(Error::InvalidComplex {
                degree: 2,
                reason: "d_{n-1} d_n != 0".into()
            })
        );
    }

    #[test]
    fn equality_ignores_zero_padding() {
        let s = ChainComplex::unit(3);
        let padded = ChainComplex::new(3, -2, vec![0, 0, 1, 0], BTreeMap::new()).unwrap();
        assert_eq!(s, padded);
        assert_ne!(s, ChainComplex::sphere(3, 1));
    }

    #[test]
    fn checked_map_rejects_noncommuting() {
        let d = ChainComplex::disk(3, 1);
        let s = ChainComplex::unit(3);
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(3, 1));
        // D^1 -> S^1 is a chain map, S^1 -> D^1 is not
        let s1 = ChainComplex::sphere(3, 1);
        assert!(ChainMap::new(&d, &s1, comps.clone()).is_ok());
        assert!(ChainMap::new(&s1, &d, comps).is_err());
        let mut comps0 = BTreeMap::new();
        comps0.insert(0, Matrix::identity(3, 1));
        assert!(ChainMap::new(&s, &d, comps0).is_ok());
    }
}
