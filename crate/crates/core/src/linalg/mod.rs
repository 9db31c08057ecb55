//! Dense numerical kernels sized for desk-scale networks (q up to a few
//! hundred): symmetric eigendecomposition by cyclic Jacobi, SPD inverse
//! square roots, general complex eigenvalues by Hessenberg + shifted QR, and
//! rank-revealing null spaces by one-sided Jacobi SVD.
//!
//! Every tolerance is relative to `scale = max(1, ‖A‖_F)` of the input.

mod eigen;
mod jacobi;
mod nullspace;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::{Error, Result};

pub use eigen::{complex_eigenpairs, complex_eigenvalues, eigenvector, EigenPair, Spectrum};
pub use jacobi::{spd_inv_sqrt, sym_eig, SymEigen};
pub use nullspace::{
    null_space, null_space_complex, singular_values, subspace_intersection, NULL_SPACE_TOL,
};

/// Field element used by [`Matrix`]: `f64` or [`Complex64`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn conj(self) -> Self;
    fn abs_sq(self) -> f64;
    fn is_finite(self) -> bool;

    fn abs(self) -> f64 {
        libm::sqrt(self.abs_sq())
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn abs_sq(self) -> f64 {
        self * self
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs_sq(self) -> f64 {
        self.norm_sqr()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

/// `max(1, frobenius)`: the scale all relative tolerances are measured against.
pub fn tolerance_scale(frobenius: f64) -> f64 {
    if frobenius > 1.0 {
        frobenius
    } else {
        1.0
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RealMatrix = Matrix<f64>;
pub type ComplexMatrix = Matrix<Complex64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x.abs_sq()).sum())
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)];
        }
        t
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn scaled(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: below.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(Self {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Largest `|a_ij − a_ji|`; only meaningful for square matrices.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }
}

impl RealMatrix {
    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(Complex64::from_real)
    }
}

impl ComplexMatrix {
    /// `re + j·im` from two real matrices of equal shape.
    pub fn from_parts(re: &RealMatrix, im: &RealMatrix) -> Result<Self> {
        if re.rows != im.rows || re.cols != im.cols {
            return Err(Error::DimensionMismatch {
                expected: re.rows * re.cols,
                found: im.rows * im.cols,
            });
        }
        Ok(Matrix::from_fn(re.rows, re.cols, |i, j| {
            Complex64::new(re[(i, j)], im[(i, j)])
        }))
    }

    pub fn real_part(&self) -> RealMatrix {
        self.map(|z| z.re)
    }

    pub fn imag_part(&self) -> RealMatrix {
        self.map(|z| z.im)
    }

    /// Real embedding `[[Re, −Im], [Im, Re]]`.
    pub fn realify(&self) -> RealMatrix {
        let (m, n) = (self.rows, self.cols);
        Matrix::from_fn(2 * m, 2 * n, |i, j| {
            let z = self[(i % m, j % n)];
            match (i < m, j < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Square real matrix that is symmetric to `1e-12·scale`; stored exactly
/// symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSymMatrix(RealMatrix);

impl RealSymMatrix {
    pub const SYMMETRY_TOL: f64 = 1e-12;

    pub fn new(m: RealMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows,
                found: m.cols,
            });
        }
        let deviation = m.asymmetry();
        if !m.is_finite() || deviation > Self::SYMMETRY_TOL * tolerance_scale(m.frobenius_norm()) {
            return Err(Error::NotSymmetric { deviation });
        }
        Ok(Self::symmetrize(m))
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    /// Replaces `m` by `(m + mᵀ)/2` without checking how far it was off.
    pub(crate) fn symmetrize(mut m: RealMatrix) -> Self {
        for i in 0..m.rows {
            for j in (i + 1)..m.cols {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = avg;
                m[(j, i)] = avg;
            }
        }
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &RealMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.0
    }

    pub fn scale(&self) -> f64 {
        tolerance_scale(self.0.frobenius_norm())
    }

    /// `self + s·I`.
    pub fn shifted(&self, s: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.rows {
            m[(i, i)] += s;
        }
        Self(m)
    }

    /// `self · other · self`, symmetric by construction.
    pub fn sandwich(&self, other: &RealSymMatrix) -> Result<Self> {
        let prod = self.0.matmul(&other.0)?.matmul(&self.0)?;
        Ok(Self::symmetrize(prod))
    }
}

impl Index<(usize, usize)> for RealSymMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// Pairwise orthonormal vectors of a common ambient dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalBasis<T> {
    ambient: usize,
    vectors: Vec<Vec<T>>,
}

impl<T: Scalar> OrthonormalBasis<T> {
    pub fn empty(ambient: usize) -> Self {
        Self {
            ambient,
            vectors: Vec::new(),
        }
    }

    /// Wraps vectors the caller guarantees to be orthonormal.
    pub(crate) fn from_orthonormal(ambient: usize, vectors: Vec<Vec<T>>) -> Self {
        Self { ambient, vectors }
    }

    /// Pivoted modified Gram–Schmidt with one reorthogonalization pass.
    /// At each step the candidate with the largest remaining component is
    /// taken; stops once every remainder is below `drop_tol` times the
    /// largest input norm.
    pub fn orthonormalize(ambient: usize, candidates: &[Vec<T>], drop_tol: f64) -> Self {
        let reference = candidates.iter().map(|v| norm(v)).fold(0.0f64, f64::max);
        let mut rest: Vec<Vec<T>> = candidates.to_vec();
        let mut vectors: Vec<Vec<T>> = Vec::new();
        if reference == 0.0 {
            return Self::empty(ambient);
        }
        while !rest.is_empty() && vectors.len() < ambient {
            let (best, best_norm) = rest
                .iter()
                .enumerate()
                .map(|(k, v)| (k, norm(v)))
                .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best_norm <= drop_tol * reference {
                break;
            }
            let mut v = rest.swap_remove(best);
            for u in &vectors {
                project_out(&mut v, u);
            }
            let n = norm(&v);
            if n <= drop_tol * reference {
                continue;
            }
            for x in &mut v {
                *x = *x / T::from_real(n);
            }
            for r in &mut rest {
                project_out(r, &v);
            }
            vectors.push(v);
        }
        Self { ambient, vectors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<T>> {
        self.vectors
    }

    /// Ambient × len matrix with the basis vectors as columns.
    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_columns(self.ambient, &self.vectors)
    }

    /// Orthogonal projector `V Vᴴ` onto the span.
    pub fn projector(&self) -> Matrix<T> {
        Matrix::from_fn(self.ambient, self.ambient, |i, j| {
            self.vectors
                .iter()
                .fold(T::zero(), |acc, v| acc + v[i] * v[j].conj())
        })
    }

    /// `max |⟨v_i, v_j⟩ − δ_ij|`.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, u) in self.vectors.iter().enumerate() {
            for (b, v) in self.vectors.iter().enumerate() {
                let g = inner(u, v);
                let target = if a == b { T::one() } else { T::zero() };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

/// `⟨u, v⟩ = Σ conj(u_i) v_i`.
pub fn inner<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter()
        .zip(v)
        .fold(T::zero(), |acc, (&a, &b)| acc + a.conj() * b)
}

pub fn norm<T: Scalar>(v: &[T]) -> f64 {
    libm::sqrt(v.iter().map(|x| x.abs_sq()).sum())
}

fn project_out<T: Scalar>(v: &mut [T], unit: &[T]) {
    // two passes keep the result orthogonal to working precision
    for _ in 0..2 {
        let c = inner(unit, v);
        for (x, &u) in v.iter_mut().zip(unit) {
            *x -= c * u;
        }
    }
}

/// Norm of `v` minus its orthogonal projection onto `span{1}`.
pub fn distance_from_consensus<T: Scalar>(v: &[T]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    let mut mean = T::zero();
    for &x in v {
        mean += x;
    }
    let mean = mean / T::from_real(v.len() as f64);
    libm::sqrt(v.iter().map(|&x| (x - mean).abs_sq()).sum())
}
