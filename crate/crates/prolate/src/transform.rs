//! Finite discrete Fourier transforms (1D and separable d-D) and Dirichlet
//! kernels in closed and summed form.
//!
//! The multi-dimensional transform is applied axis by axis with the unitary
//! normalization `1/sqrt(N_1 ... N_d)`. The direct O(N^2) summation is the
//! reference path; it defines correctness for everything downstream.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A d-dimensional index grid `[0,N_1) x ... x [0,N_d)`.
///
/// Multi-indices are linearized row-major (last index fastest), which matches
/// the Kronecker-product convention used by the matrix assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    dims: Vec<usize>,
}

impl GridSpec {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidParams("grid needs at least one axis".into()));
        }
        if let Some(&n) = dims.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidParams(format!(
                "every axis length must be >= 2, got {n}"
            )));
        }
        let mut total = 1usize;
        for &n in &dims {
            total = total.checked_mul(n).ok_or_else(|| {
                Error::InvalidParams("grid size overflows the index range".into())
            })?;
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of axes d.
    pub fn d(&self) -> usize {
        self.dims.len()
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major linear index of a multi-index.
    pub fn linear_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut lin = 0;
        for (i, &n) in self.dims.iter().enumerate() {
            debug_assert!(idx[i] < n);
            lin = lin * n + idx[i];
        }
        lin
    }

    /// Multi-index of a row-major linear index.
    pub fn multi_index(&self, mut lin: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            idx[i] = lin % self.dims[i];
            lin /= self.dims[i];
        }
        idx
    }
}

/// A complex signal on a [`GridSpec`], stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl ComplexSignal {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "signal length {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        let n = grid.len();
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// Unit impulse at the given multi-index.
    pub fn delta(grid: GridSpec, at: &[usize]) -> Result<Self> {
        if at.len() != grid.d() {
            return Err(Error::DimensionMismatch(format!(
                "index has {} coordinates, grid has {} axes",
                at.len(),
                grid.d()
            )));
        }
        let lin = grid.linear_index(at);
        let mut s = Self::zeros(grid);
        s.values[lin] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product `<self, other>` with the conjugate on `other`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.grid, other.grid);
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

/// Ambient length N and band half-width K of a 1D Dirichlet kernel, with the
/// bandwidth `W = (2K+1)/(2N)` derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirichletParams {
    n_ambient: usize,
    k_band: usize,
}

impl DirichletParams {
    pub fn new(n_ambient: usize, k_band: usize) -> Result<Self> {
        if n_ambient < 2 {
            return Err(Error::InvalidParams(format!(
                "ambient length N must be >= 2, got {n_ambient}"
            )));
        }
        if 2 * k_band + 1 >= n_ambient {
            return Err(Error::InvalidParams(format!(
                "band requires 2K+1 < N, got K={k_band}, N={n_ambient}"
            )));
        }
        Ok(Self { n_ambient, k_band })
    }

    pub fn n_ambient(&self) -> usize {
        self.n_ambient
    }

    pub fn k_band(&self) -> usize {
        self.k_band
    }

    /// Bandwidth `W = (2K+1)/(2N)`, always in (0, 1/2).
    pub fn w(&self) -> f64 {
        (2 * self.k_band + 1) as f64 / (2 * self.n_ambient) as f64
    }
}

/// The explicit N x N unitary DFT matrix, entry `(n,m) = e^{-j2πnm/N}/sqrt(N)`.
pub fn dft_matrix_1d(n_ambient: usize) -> Result<nalgebra::DMatrix<Complex64>> {
    if n_ambient < 2 {
        return Err(Error::InvalidParams(format!(
            "DFT matrix needs N >= 2, got {n_ambient}"
        )));
    }
    let n = n_ambient;
    let scale = 1.0 / (n as f64).sqrt();
    let tw = twiddles(n, -1.0);
    Ok(nalgebra::DMatrix::from_fn(n, n, |r, c| {
        tw[(r * c) % n] * scale
    }))
}

// e^{sign * j 2π r / N} for r in 0..N.
fn twiddles(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|r| Complex64::from_polar(1.0, sign * 2.0 * PI * r as f64 / n as f64))
        .collect()
}

// Applies the 1D unitary transform along `axis`, in place on a scratch copy.
fn transform_axis(values: &mut [Complex64], dims: &[usize], axis: usize, sign: f64) {
    let n = dims[axis];
    let inner: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let tw = twiddles(n, sign);
    let scale = 1.0 / (n as f64).sqrt();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for o in 0..outer {
        for i in 0..inner {
            let base = o * n * inner + i;
            for (k, out) in line.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    acc += values[base + j * inner] * tw[(k * j) % n];
                }
                *out = acc * scale;
            }
            for (j, v) in line.iter().enumerate() {
                values[base + j * inner] = *v;
            }
        }
    }
}

fn dft_separable(x: &ComplexSignal, sign: f64) -> ComplexSignal {
    let mut values = x.values.clone();
    for axis in 0..x.grid.d() {
        transform_axis(&mut values, x.grid.dims(), axis, sign);
    }
    ComplexSignal {
        grid: x.grid.clone(),
        values,
    }
}

/// Forward multi-dimensional DFT with unitary normalization.
pub fn dft_forward(x: &ComplexSignal) -> ComplexSignal {
    dft_separable(x, -1.0)
}

/// Inverse multi-dimensional DFT; exact inverse of [`dft_forward`] up to
/// roundoff, so Plancherel holds.
pub fn dft_inverse(xhat: &ComplexSignal) -> ComplexSignal {
    dft_separable(xhat, 1.0)
}

/// 1D Dirichlet kernel `D_W(n) = sin(2Wπn)/sin(πn/N)`, with `D_W(0) = 2WN`.
///
/// `n` is taken mod N. The only singularity is the integer lattice point
/// `n ≡ 0 (mod N)`, so the branch is an exact integer test, and both sine
/// arguments are reduced in integer arithmetic before evaluation.
pub fn dirichlet_1d(p: &DirichletParams, n: i64) -> f64 {
    let nn = p.n_ambient as i64;
    let r = n.rem_euclid(nn);
    if r == 0 {
        // 2WN = 2K+1 exactly.
        return (2 * p.k_band + 1) as f64;
    }
    // Numerator sin(π (2K+1) r / N): reduce (2K+1) r mod 2N (period of sin(πx/N) is 2N).
    let num_arg = ((2 * p.k_band as i64 + 1) * r).rem_euclid(2 * nn);
    let num = (PI * num_arg as f64 / nn as f64).sin();
    let den = (PI * r as f64 / nn as f64).sin();
    num / den
}

/// Separable d-dimensional Dirichlet kernel `Π_i D_{W_i}(n_i)`.
///
/// At `n = 0` this equals `2^d Π W_i N_i = Π (2K_i + 1)`.
pub fn dirichlet_md(ps: &[DirichletParams], n: &[i64]) -> Result<f64> {
    if ps.len() != n.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} kernel parameter sets vs {} coordinates",
            ps.len(),
            n.len()
        )));
    }
    Ok(ps
        .iter()
        .zip(n)
        .map(|(p, &ni)| dirichlet_1d(p, ni))
        .product())
}
