//! Time-limiting and band-limiting projections.
//!
//! Each projection is computable by two independent routes: the band limiter
//! either masks DFT coefficients (`B_K = F^{-1} T_K F`) or circularly
//! convolves with the Dirichlet kernel. The two must agree elementwise, which
//! the tests exploit as a cross-check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::transform::{
    dft_forward, dft_inverse, dirichlet_1d, ComplexSignal, DirichletParams, GridSpec,
};

/// The time box `[0,M_1) x ... x [0,M_d)` inside a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSpec {
    grid: GridSpec,
    widths: Vec<usize>,
}

impl BoxSpec {
    /// Strict constructor: every `M_i < N_i`.
    pub fn new(grid: GridSpec, widths: Vec<usize>) -> Result<Self> {
        Self::validate(&grid, &widths, false)?;
        Ok(Self { grid, widths })
    }

    /// Permits `M_i = N_i` (the identity time limiter). Known-answer tests
    /// use this: with the full box, `A = B_K` is a rank-(2K+1) projection.
    pub fn new_identity_allowed(grid: GridSpec, widths: Vec<usize>) -> Result<Self> {
        Self::validate(&grid, &widths, true)?;
        Ok(Self { grid, widths })
    }

    fn validate(grid: &GridSpec, widths: &[usize], allow_full: bool) -> Result<()> {
        if widths.len() != grid.d() {
            return Err(Error::DimensionMismatch(format!(
                "{} box widths vs {} grid axes",
                widths.len(),
                grid.d()
            )));
        }
        for (&m, &n) in widths.iter().zip(grid.dims()) {
            if m == 0 {
                return Err(Error::InvalidParams("box widths must be positive".into()));
            }
            let bound_ok = if allow_full { m <= n } else { m < n };
            if !bound_ok {
                return Err(Error::InvalidParams(format!(
                    "box width must satisfy M < N, got M={m}, N={n}"
                )));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    fn contains_linear(&self, lin: usize) -> bool {
        let idx = self.grid.multi_index(lin);
        idx.iter().zip(&self.widths).all(|(&i, &m)| i < m)
    }
}

/// The centered frequency cube `{-K_1..K_1} x ... x {-K_d..K_d}` (mod N_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandSpec {
    grid: GridSpec,
    half_widths: Vec<usize>,
}

impl BandSpec {
    pub fn new(grid: GridSpec, half_widths: Vec<usize>) -> Result<Self> {
        if half_widths.len() != grid.d() {
            return Err(Error::DimensionMismatch(format!(
                "{} band half-widths vs {} grid axes",
                half_widths.len(),
                grid.d()
            )));
        }
        for (&k, &n) in half_widths.iter().zip(grid.dims()) {
            if 2 * k + 1 >= n {
                return Err(Error::InvalidParams(format!(
                    "band requires 2K+1 < N, got K={k}, N={n}"
                )));
            }
        }
        Ok(Self { grid, half_widths })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn half_widths(&self) -> &[usize] {
        &self.half_widths
    }

    /// Per-axis bandwidths `W_i = (2K_i+1)/(2N_i)`.
    pub fn bandwidths(&self) -> Vec<f64> {
        self.dirichlet_params().iter().map(|p| p.w()).collect()
    }

    pub fn dirichlet_params(&self) -> Vec<DirichletParams> {
        self.half_widths
            .iter()
            .zip(self.grid.dims())
            .map(|(&k, &n)| DirichletParams::new(n, k).expect("validated at construction"))
            .collect()
    }

    // Frequency index k (stored mod N) lies in the band {-K..K}.
    fn in_band(&self, axis: usize, k: usize) -> bool {
        let n = self.grid.dims()[axis];
        let half = self.half_widths[axis];
        k <= half || k >= n - half
    }
}

fn check_grid(x: &ComplexSignal, grid: &GridSpec) -> Result<()> {
    if x.grid() != grid {
        return Err(Error::GridMismatch {
            expected: grid.dims().to_vec(),
            got: x.grid().dims().to_vec(),
        });
    }
    Ok(())
}

/// Zeroes the signal outside the time box. Idempotent and self-adjoint.
pub fn time_limit(x: &ComplexSignal, box_spec: &BoxSpec) -> Result<ComplexSignal> {
    check_grid(x, box_spec.grid())?;
    let values = x
        .values()
        .iter()
        .enumerate()
        .map(|(lin, &v)| {
            if box_spec.contains_linear(lin) {
                v
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    ComplexSignal::new(x.grid().clone(), values)
}

/// Band limiter via the Fourier route: transform, zero coefficients outside
/// the band, transform back.
pub fn band_limit_fourier(x: &ComplexSignal, band: &BandSpec) -> Result<ComplexSignal> {
    check_grid(x, band.grid())?;
    let mut xhat = dft_forward(x);
    let grid = x.grid().clone();
    let masked: Vec<Complex64> = xhat
        .values()
        .iter()
        .enumerate()
        .map(|(lin, &v)| {
            let idx = grid.multi_index(lin);
            let keep = idx
                .iter()
                .enumerate()
                .all(|(axis, &k)| band.in_band(axis, k));
            if keep {
                v
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    xhat = ComplexSignal::new(grid, masked)?;
    Ok(dft_inverse(&xhat))
}

/// Band limiter via the convolution route:
/// `(B_K x)[n] = (1/(N_1...N_d)) Σ_m x[m] Π_i D_{W_i}(n_i - m_i)`.
///
/// The `1/(Π N_i)` normalization lives here, not in the kernel, so the
/// Dirichlet kernel stays the bare geometric sum.
pub fn band_limit_convolution(x: &ComplexSignal, band: &BandSpec) -> Result<ComplexSignal> {
    check_grid(x, band.grid())?;
    let grid = x.grid();
    let dims = grid.dims();
    let d = grid.d();
    let params = band.dirichlet_params();

    // Kernel tables per axis over all residues.
    let tables: Vec<Vec<f64>> = params
        .iter()
        .zip(dims)
        .map(|(p, &n)| (0..n as i64).map(|r| dirichlet_1d(p, r)).collect())
        .collect();

    let total = grid.len();
    let scale = 1.0 / total as f64;
    let indices: Vec<Vec<usize>> = (0..total).map(|lin| grid.multi_index(lin)).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); total];
    for (lin_n, slot) in out.iter_mut().enumerate() {
        let n_idx = &indices[lin_n];
        let mut acc = Complex64::new(0.0, 0.0);
        for (lin_m, &xm) in x.values().iter().enumerate() {
            let m_idx = &indices[lin_m];
            let mut kernel = 1.0;
            for axis in 0..d {
                let n = dims[axis];
                let diff = (n + n_idx[axis] - m_idx[axis]) % n;
                kernel *= tables[axis][diff];
            }
            acc += xm * kernel;
        }
        *slot = acc * scale;
    }
    ComplexSignal::new(grid.clone(), out)
}
