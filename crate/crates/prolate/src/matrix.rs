//! Assembly of the prolate matrix `A = T_M B_K T_M`: a real symmetric
//! Toeplitz matrix with Dirichlet-kernel entries in 1D, and the Kronecker
//! product of the per-axis matrices in d dimensions.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{BandSpec, BoxSpec};
use crate::transform::{dirichlet_1d, DirichletParams, GridSpec};

/// Default row cap for dense d-dimensional assembly.
pub const DENSE_ROW_CAP: usize = 4096;

/// One axis of the problem geometry: ambient length `N`, time width `M`,
/// band half-width `K`. The bandwidth `W = (2K+1)/(2N)` and time-bandwidth
/// product `MW` are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Params1d {
    n: usize,
    m: usize,
    k: usize,
    identity_time_limit: bool,
}

impl Params1d {
    /// Strict constructor: `M < N` and `2K+1 < N`.
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        Self::build(n, m, k, false)
    }

    /// Degenerate `M = N` geometry, where `T_M` is the identity and
    /// `A = B_K` is a rank-(2K+1) projection. Known-answer tests only;
    /// the strict constructor rejects `M = N`.
    pub fn new_identity_time_limit(n: usize, k: usize) -> Result<Self> {
        Self::build(n, n, k, true)
    }

    fn build(n: usize, m: usize, k: usize, identity: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("N must be >= 2, got {n}")));
        }
        if m == 0 {
            return Err(Error::InvalidParams("M must be positive".into()));
        }
        if identity {
            if m != n {
                return Err(Error::InvalidParams(format!(
                    "identity time limit requires M = N, got M={m}, N={n}"
                )));
            }
        } else if m >= n {
            return Err(Error::InvalidParams(format!(
                "time width must satisfy M < N, got M={m}, N={n}"
            )));
        }
        if 2 * k + 1 >= n {
            return Err(Error::InvalidParams(format!(
                "band requires 2K+1 < N (so K <= floor((N-1)/2)), got K={k}, N={n}"
            )));
        }
        Ok(Self {
            n,
            m,
            k,
            identity_time_limit: identity,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_identity_time_limit(&self) -> bool {
        self.identity_time_limit
    }

    /// Bandwidth `W = (2K+1)/(2N)`.
    pub fn w(&self) -> f64 {
        (2 * self.k + 1) as f64 / (2 * self.n) as f64
    }

    /// Time-bandwidth product `MW = M(2K+1)/(2N)`.
    pub fn mw(&self) -> f64 {
        (self.m * (2 * self.k + 1)) as f64 / (2 * self.n) as f64
    }

    /// `2MW = M(2K+1)/N`, the expected count of near-1 eigenvalues.
    pub fn two_mw(&self) -> f64 {
        (self.m * (2 * self.k + 1)) as f64 / self.n as f64
    }

    pub fn dirichlet(&self) -> DirichletParams {
        DirichletParams::new(self.n, self.k).expect("validated at construction")
    }
}

/// Full d-dimensional geometry: one [`Params1d`] per axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProlateParams {
    axes: Vec<Params1d>,
}

impl ProlateParams {
    pub fn new(axes: Vec<Params1d>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidParams("need at least one axis".into()));
        }
        Ok(Self { axes })
    }

    /// d copies of the same axis, the main-theorem geometry.
    pub fn isotropic(axis: Params1d, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("dimension d must be >= 1".into()));
        }
        Ok(Self {
            axes: vec![axis; d],
        })
    }

    pub fn axes(&self) -> &[Params1d] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &Params1d {
        &self.axes[i]
    }

    pub fn d(&self) -> usize {
        self.axes.len()
    }

    pub fn is_isotropic(&self) -> bool {
        self.axes.iter().all(|a| a == &self.axes[0])
    }

    /// Total matrix size `Π M_i`, checked against overflow.
    pub fn total_m(&self) -> Result<usize> {
        let mut total = 1usize;
        for a in &self.axes {
            total = total
                .checked_mul(a.m)
                .ok_or_else(|| Error::InvalidParams("Π M_i overflows the index range".into()))?;
        }
        Ok(total)
    }

    /// `Π 2M_iW_i`, the trace of the d-dimensional prolate matrix.
    pub fn two_mw_product(&self) -> f64 {
        self.axes.iter().map(|a| a.two_mw()).product()
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.axes.iter().map(|a| a.n).collect()).expect("validated at construction")
    }

    pub fn box_spec(&self) -> BoxSpec {
        BoxSpec::new_identity_allowed(self.grid(), self.axes.iter().map(|a| a.m).collect())
            .expect("validated at construction")
    }

    pub fn band_spec(&self) -> BandSpec {
        BandSpec::new(self.grid(), self.axes.iter().map(|a| a.k).collect())
            .expect("validated at construction")
    }
}

/// Precomputed 1D kernel values `table[Δ] = D_W(Δ)/N` for `0 <= Δ < M`.
///
/// `table[0] = 2W = (2K+1)/N`; the matrix entry `(m,n)` is `table[|m-n|]`.
#[derive(Debug, Clone)]
pub struct KernelTable {
    params: Params1d,
    values: Vec<f64>,
}

impl KernelTable {
    pub fn params(&self) -> &Params1d {
        &self.params
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn kernel_table(params: &Params1d) -> KernelTable {
    let dp = params.dirichlet();
    let n = params.n() as f64;
    let values = (0..params.m() as i64)
        .map(|delta| dirichlet_1d(&dp, delta) / n)
        .collect();
    KernelTable {
        params: *params,
        values,
    }
}

/// The 1D prolate matrix: dense real symmetric Toeplitz, entry
/// `(m,n) = D_W(m-n)/N`, trace `M(2K+1)/N = 2MW`.
#[derive(Debug, Clone)]
pub struct ProlateMatrix1D {
    params: Params1d,
    matrix: DMatrix<f64>,
}

impl ProlateMatrix1D {
    pub fn params(&self) -> &Params1d {
        &self.params
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }
}

pub fn prolate_matrix_1d(params: &Params1d) -> ProlateMatrix1D {
    let table = kernel_table(params);
    let m = params.m();
    let matrix = DMatrix::from_fn(m, m, |r, c| table.values[r.abs_diff(c)]);
    ProlateMatrix1D {
        params: *params,
        matrix,
    }
}

/// Dense d-dimensional prolate matrix: the Kronecker product of the per-axis
/// 1D matrices, axis 1 outermost (matching row-major linearization).
///
/// Refuses to materialize more than [`DENSE_ROW_CAP`] rows; large spectra
/// should go through the product-spectrum path instead.
pub fn prolate_matrix_md(params: &ProlateParams) -> Result<DMatrix<f64>> {
    prolate_matrix_md_with_cap(params, DENSE_ROW_CAP)
}

pub fn prolate_matrix_md_with_cap(params: &ProlateParams, cap: usize) -> Result<DMatrix<f64>> {
    let total = params.total_m()?;
    if total > cap {
        return Err(Error::Capacity {
            what: "Π M_i",
            requested: total,
            cap,
            hint: "use the product-spectrum path (spectral::spectrum_md) instead of dense assembly",
        });
    }
    let mut acc = prolate_matrix_1d(params.axis(0)).into_matrix();
    for axis in &params.axes()[1..] {
        let next = prolate_matrix_1d(axis).into_matrix();
        acc = acc.kronecker(&next);
    }
    Ok(acc)
}
