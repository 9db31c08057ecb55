use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use super::{norm, tolerance_scale, ComplexMatrix, Scalar};
use crate::{Error, Result};

const MAX_ITERATIONS_PER_EIGENVALUE: usize = 60;
const SPECTRUM_ZERO_BAND: f64 = 1e-8;

/// Eigenvalues sorted ascending by `(Re λ, |Im λ|, Im λ)`.
///
/// Components inside the zero band are compared as exactly zero, so
/// round-off of order `ε·‖A‖` cannot reorder eigenvalues that sit on the
/// imaginary axis. The stored values are the raw ones.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
    zero_band: f64,
}

impl Spectrum {
    pub fn new(mut values: Vec<Complex64>, zero_band: f64) -> Self {
        let key = |z: &Complex64| {
            let re = snap(z.re, zero_band);
            let im = snap(z.im, zero_band);
            (re, libm::fabs(im), im)
        };
        values.sort_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            ka.0.total_cmp(&kb.0)
                .then(ka.1.total_cmp(&kb.1))
                .then(ka.2.total_cmp(&kb.2))
                .then(Ordering::Equal)
        });
        Self { values, zero_band }
    }

    /// Re-sorts the same eigenvalues under a different zero band.
    pub fn with_zero_band(self, zero_band: f64) -> Self {
        Self::new(self.values, zero_band)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zero_band(&self) -> f64 {
        self.zero_band
    }

    /// 1-based access: `lambda(1)` is the first eigenvalue in the ordering.
    pub fn lambda(&self, index: usize) -> Option<Complex64> {
        index
            .checked_sub(1)
            .and_then(|k| self.values.get(k).copied())
    }

    /// Real part of `lambda(index)` with the zero band applied.
    pub fn classified_re(&self, index: usize) -> Option<f64> {
        self.lambda(index).map(|z| snap(z.re, self.zero_band))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.values.iter()
    }
}

fn snap(x: f64, band: f64) -> f64 {
    if libm::fabs(x) < band {
        0.0
    } else {
        x
    }
}

/// All eigenvalues of a square complex matrix.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// QR with Wilkinson shifts and exceptional shifts every tenth stalled
/// iteration. Sorted with a zero band of `1e-8·scale`.
pub fn complex_eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let scale = tolerance_scale(a.frobenius_norm());
    let values = hessenberg_qr(a.clone())?;
    Ok(Spectrum::new(values, SPECTRUM_ZERO_BAND * scale))
}

fn hessenberg_reduce(h: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha = norm(&x);
        if alpha == 0.0 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm_sqr() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.abs()
        };
        let mut v = x;
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // H ← (I − τ v vᴴ) H
        for j in k..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (l, vl) in v.iter().enumerate() {
                s += vl.conj() * h[(k + 1 + l, j)];
            }
            for (l, vl) in v.iter().enumerate() {
                h[(k + 1 + l, j)] -= *vl * s * tau;
            }
        }
        // H ← H (I − τ v vᴴ)
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (l, vl) in v.iter().enumerate() {
                s += h[(i, k + 1 + l)] * vl;
            }
            for (l, vl) in v.iter().enumerate() {
                h[(i, k + 1 + l)] -= s * vl.conj() * tau;
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

fn hessenberg_qr(mut h: ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    hessenberg_reduce(&mut h);
    let fro = h.frobenius_norm();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut its = 0usize;

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = fro;
            }
            if h[(l, l - 1)].abs() <= f64::EPSILON * s {
                h[(l, l - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        if its > MAX_ITERATIONS_PER_EIGENVALUE {
            return Err(Error::NoConvergence {
                routine: "complex QR",
                iterations: its,
            });
        }
        let shift = if its.is_multiple_of(10) {
            // exceptional shift to break cycles
            let sub = h[(hi, hi - 1)].abs()
                + if hi >= 2 {
                    h[(hi - 1, hi - 2)].abs()
                } else {
                    0.0
                };
            h[(hi, hi)] + Complex64::new(0.75 * sub, 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, l, hi, shift);
    }
    eig[0] = h[(0, 0)];
    Ok(eig)
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mu1 = half_tr + disc;
    let mu2 = half_tr - disc;
    if (mu1 - d).norm_sqr() <= (mu2 - d).norm_sqr() {
        mu1
    } else {
        mu2
    }
}

/// One explicit shifted QR step on the active window `lo..=hi`.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        for i in lo..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * c + s.conj() * y;
            h[(i, k + 1)] = -s * x + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// `(c, s)` with real `c` such that `[c s; −s̄ c]·[a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.abs();
    let nb = b.abs();
    if nb == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = libm::hypot(na, nb);
    let c = na / r;
    let s = (a / na) * b.conj() / r;
    (c, s)
}

/// Eigenvalue with a unit eigenvector and its residual `‖(A − λI)v‖`.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

/// Unit eigenvector for an eigenvalue estimate `lambda`, by inverse
/// iteration on `A − λI`.
pub fn eigenvector(a: &ComplexMatrix, lambda: Complex64) -> Result<EigenPair> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.cols(),
        });
    }
    let scale = tolerance_scale(a.frobenius_norm());
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let lu = Lu::factor(shifted, f64::EPSILON * scale);
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.1 * i as f64, 0.05 * (i % 3) as f64))
        .collect();
    for _ in 0..3 {
        v = lu.solve(&v);
        let nv = norm(&v);
        if nv == 0.0 || !nv.is_finite() {
            break;
        }
        for z in &mut v {
            *z /= nv;
        }
    }
    let av = a.mul_vec(&v)?;
    let r: Vec<Complex64> = av.iter().zip(&v).map(|(x, y)| x - lambda * y).collect();
    Ok(EigenPair {
        value: lambda,
        vector: v,
        residual: norm(&r),
    })
}

/// Eigenvalues in spectrum order together with inverse-iteration
/// eigenvectors.
pub fn complex_eigenpairs(a: &ComplexMatrix) -> Result<Vec<EigenPair>> {
    let spectrum = complex_eigenvalues(a)?;
    spectrum.iter().map(|&l| eigenvector(a, l)).collect()
}

/// LU with partial pivoting; tiny pivots are replaced by `floor`.
struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: ComplexMatrix, floor: f64) -> Self {
        let n = a.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
                perm.swap(k, p);
            }
            if a[(k, k)].abs() < floor {
                a[(k, k)] = Complex64::new(floor, 0.0);
            }
            let pivot = a[(k, k)];
            for i in (k + 1)..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                for j in (k + 1)..n {
                    let t = a[(k, j)];
                    a[(i, j)] -= f * t;
                }
            }
        }
        Self { lu: a, perm }
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = b.len();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[(i, j)] * y[j];
                y[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let t = self.lu[(i, j)] * y[j];
                y[i] -= t;
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }
}
