//! Exact dense linear algebra over a prime field F_p.
//!
//! Everything else in the crate reduces to the operations here: products,
//! reduced row echelon forms, kernels, particular solutions and the
//! block-linear constraint engine [`LinearSystem`] that decides lifting and
//! mediating-map problems.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 31) {
            Ok(FieldSpec { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// A dense row-major matrix with entries reduced modulo `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}x{}/F{}{:?}", self.rows, self.cols, self.p, self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u64, n: usize, c: u64) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Builds a matrix from signed rows; all rows must have equal length.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(p, rows, c)
    }

    pub fn from_rows_with_cols(p: u64, rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = reduce(x, p);
            }
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    /// Column vector.
    pub fn column(p: u64, entries: &[u64]) -> Self {
        Self::from_fn(p, entries.len(), 1, |i, _| entries[i])
    }

    pub fn random(p: u64, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        Self::from_fn(p, rows, cols, |_, _| rng.gen_range(0..p))
    }

    /// A uniformly random invertible `n × n` matrix.
    pub fn random_invertible(p: u64, n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let m = Self::random(p, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let k = i * self.cols + j;
        self.data[k] = add_mod(self.data[k], v % self.p, self.p);
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.p, self.rows)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.p;
        let mut out = Matrix::zeros(p, self.rows, rhs.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "sum of {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| add_mod(a, b, p))
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn neg(&self) -> Matrix {
        let p = self.p;
        Matrix {
            data: self.data.iter().map(|&a| neg_mod(a, p)).collect(),
            ..*self
        }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let p = self.p;
        let c = c % p;
        Matrix {
            data: self.data.iter().map(|&a| mul_mod(a, c, p)).collect(),
            ..*self
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Kronecker product; row index `a * rhs.rows + b`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let p = self.p;
        let (r2, c2) = rhs.shape();
        let mut out = Matrix::zeros(p, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        out.data[(i * r2 + k) * out.cols + j * c2 + l] = mul_mod(a, rhs.get(k, l), p);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(p: u64, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(p: u64, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn block_diag(p: u64, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(
            r0 + m.rows <= self.rows && c0 + m.cols <= self.cols,
            "block out of range"
        );
        for i in 0..m.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(&m.data[i * m.cols..(i + 1) * m.cols]);
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(
            r0 + m.rows <= self.rows && c0 + m.cols <= self.cols,
            "block out of range"
        );
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.add_at(r0 + i, c0 + j, m.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.p, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    /// Row-major flattening into a column vector.
    pub fn vectorize(&self) -> Vec<u64> {
        self.data.clone()
    }

    pub fn from_vec(p: u64, rows: usize, cols: usize, v: &[u64]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            p,
            rows,
            cols,
            data: v.to_vec(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Gauss-Jordan on the first `limit` columns; returns pivot columns.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            for j in c..cols {
                self.data[r * cols + j] = mul_mod(self.data[r * cols + j], inv, p);
            }
            let pivot_row: Vec<u64> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = p - factor;
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + nf * y) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Columns form a basis of the right kernel.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.p, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, neg_mod(r.get(row, f), self.p));
            }
        }
        k
    }

    /// A subset of columns forming a basis of the column space.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Standard basis vectors completing the column space to the whole space.
    pub fn complement_basis(&self) -> Matrix {
        let n = self.rows;
        let aug = Matrix::hstack(self.p, n, &[self, &Matrix::identity(self.p, n)]);
        let (_, pivots) = aug.rref();
        let extra: Vec<usize> = pivots
            .into_iter()
            .filter(|&c| c >= self.cols)
            .map(|c| c - self.cols)
            .collect();
        Matrix::identity(self.p, n).select_columns(&extra)
    }

    /// Some `X` with `self · X = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let mut aug = Matrix::hstack(self.p, self.rows, &[self, b]);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..self.rows {
            for j in 0..b.cols {
                if aug.get(i, self.cols + j) != 0 {
                    return Ok(None);
                }
            }
        }
        let mut x = Matrix::zeros(self.p, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(row, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Some `X` with `X · self = b`.
    pub fn solve_left(&self, b: &Matrix) -> Result<Option<Matrix>> {
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols || self.rank() != self.rows {
            return None;
        }
        self.solve(&Matrix::identity(self.p, self.rows)).ok().flatten()
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs).expect("matrix product")
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix::add(self, rhs).expect("matrix sum")
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix::add(self, &rhs.neg()).expect("matrix difference")
    }
}

/// Handle to an unknown matrix registered in a [`LinearSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Unknown(usize);

impl Unknown {
    /// Position in the solution vector returned by [`LinearSystem::solve`].
    pub fn index(self) -> usize {
        self.0
    }
}

struct Equation {
    coeffs: Vec<(Unknown, Matrix)>,
    rhs: Vec<u64>,
}

/// A finite system of affine equations `Σ_k L_k · X_k · R_k = C` over
/// unknown matrices of fixed shape.
///
/// Unknowns are flattened row-major into one long vector and the whole system
/// is handed to [`Matrix::solve`]. This is the single engine behind every
/// lifting, mediating-map and hom-space computation in the crate.
pub struct LinearSystem {
    p: u64,
    shapes: Vec<(usize, usize)>,
    equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn new(p: u64) -> Self {
        LinearSystem {
            p,
            shapes: Vec::new(),
            equations: Vec::new(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add_unknown(&mut self, rows: usize, cols: usize) -> Unknown {
        self.shapes.push((rows, cols));
        Unknown(self.shapes.len() - 1)
    }

    pub fn shape(&self, u: Unknown) -> (usize, usize) {
        self.shapes[u.0]
    }

    pub fn num_unknowns(&self) -> usize {
        self.shapes.len()
    }

    /// Adds `Σ left · X · right = rhs`.
    pub fn add_equation(&mut self, terms: &[(&Matrix, Unknown, &Matrix)], rhs: &Matrix) -> Result<()> {
        let mut coeffs = Vec::with_capacity(terms.len());
        for &(l, u, r) in terms {
            let (xr, xc) = self.shapes[u.0];
            if l.cols() != xr || r.rows() != xc || l.rows() != rhs.rows() || r.cols() != rhs.cols() {
                return Err(Error::DimensionMismatch(format!(
                    "term {:?}·X{:?}·{:?} against rhs {:?}",
                    l.shape(),
                    (xr, xc),
                    r.shape(),
                    rhs.shape()
                )));
            }
            if l.p() != self.p || r.p() != self.p || rhs.p() != self.p {
                return Err(Error::FieldMismatch {
                    left: self.p,
                    right: l.p().max(r.p()).max(rhs.p()),
                });
            }
            coeffs.push((u, l.kron(&r.transpose())));
        }
        self.equations.push(Equation {
            coeffs,
            rhs: rhs.vectorize(),
        });
        Ok(())
    }

    /// Adds a raw equation `Σ coeff_k · vec(X_k) = rhs`.
    pub fn add_raw(&mut self, coeffs: Vec<(Unknown, Matrix)>, rhs: Vec<u64>) -> Result<()> {
        for (u, c) in &coeffs {
            let (r, cc) = self.shapes[u.0];
            if c.cols() != r * cc || c.rows() != rhs.len() {
                return Err(Error::DimensionMismatch("raw coefficient block".into()));
            }
        }
        self.equations.push(Equation { coeffs, rhs });
        Ok(())
    }

    fn offsets(&self) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(self.shapes.len());
        let mut total = 0;
        for &(r, c) in &self.shapes {
            off.push(total);
            total += r * c;
        }
        (off, total)
    }

    fn assemble(&self) -> (Matrix, Matrix) {
        let (off, total) = self.offsets();
        let nrows: usize = self.equations.iter().map(|e| e.rhs.len()).sum();
        let mut a = Matrix::zeros(self.p, nrows, total);
        let mut b = Matrix::zeros(self.p, nrows, 1);
        let mut r0 = 0;
        for eq in &self.equations {
            for (u, c) in &eq.coeffs {
                a.add_block(r0, off[u.0], c);
            }
            for (i, &v) in eq.rhs.iter().enumerate() {
                b.set(r0 + i, 0, v);
            }
            r0 += eq.rhs.len();
        }
        (a, b)
    }

    fn split(&self, v: &Matrix, col: usize) -> Vec<Matrix> {
        let (off, _) = self.offsets();
        self.shapes
            .iter()
            .zip(off)
            .map(|(&(r, c), o)| Matrix::from_fn(self.p, r, c, |i, j| v.get(o + i * c + j, col)))
            .collect()
    }

    /// Any satisfying assignment, or `None`.
    pub fn solve(&self) -> Option<Vec<Matrix>> {
        let (a, b) = self.assemble();
        let x = a.solve(&b).expect("assembled system is well-shaped")?;
        Some(self.split(&x, 0))
    }

    /// A basis of the solution space of the homogeneous system.
    pub fn nullspace(&self) -> Vec<Vec<Matrix>> {
        let (a, _) = self.assemble();
        let k = a.kernel_basis();
        (0..k.cols()).map(|j| self.split(&k, j)).collect()
    }

    pub fn nullity(&self) -> usize {
        let (a, _) = self.assemble();
        a.cols() - a.rank()
    }

    /// A uniformly random solution (particular solution plus random kernel element).
    pub fn random_solution(&self, rng: &mut impl Rng) -> Option<Vec<Matrix>> {
        let (a, b) = self.assemble();
        let x = a.solve(&b).expect("assembled system is well-shaped")?;
        let k = a.kernel_basis();
        let coeffs = Matrix::random(self.p, k.cols(), 1, rng);
        let v = &x + &(&k * &coeffs);
        Some(self.split(&v, 0))
    }
}

/// Solves `Σ L · X_k · R = C` equations over unknowns with the given shapes.
pub fn solve_linear_constraints(
    p: u64,
    shapes: &[(usize, usize)],
    equations: &[(Vec<(Matrix, usize, Matrix)>, Matrix)],
) -> Result<Option<Vec<Matrix>>> {
    let mut sys = LinearSystem::new(p);
    let ids: Vec<Unknown> = shapes.iter().map(|&(r, c)| sys.add_unknown(r, c)).collect();
    for (terms, rhs) in equations {
        let mut refs = Vec::with_capacity(terms.len());
        for (l, k, r) in terms {
            let u = *ids
                .get(*k)
                .ok_or_else(|| Error::DimensionMismatch(format!("unknown index {k}")))?;
            refs.push((l, u, r));
        }
        sys.add_equation(&refs, rhs)?;
    }
    Ok(sys.solve())
}
