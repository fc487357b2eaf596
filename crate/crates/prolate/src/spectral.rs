//! Symmetric eigendecomposition, exact d-dimensional product spectra, and the
//! eigenvalue counting functions `m_eps` / `n_eps`.
//!
//! Eigenvalue indices are 0-based throughout: the cross-index theorem reads
//! `λ^(⌊2MW⌋-1) >= 1/2 >= λ^(⌊2MW⌋+1)` with `r = 0..M-1`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{prolate_matrix_1d, Params1d, ProlateParams};

/// Solver noise tolerated outside `[0,1]` before clamping; anything larger is a
/// hard error.
pub const EXCURSION_TOL: f64 = 1e-10;

/// Residual / orthonormality bar for the dense symmetric eigensolver.
pub const SOLVER_ACCURACY: f64 = 1e-10;

/// Cap on `Π M_i` for product spectra.
pub const PRODUCT_COUNT_CAP: usize = 1 << 24;

/// Where a spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumSource {
    Dense1d,
    ProductD,
    Oracle,
}

/// A non-increasing list of eigenvalues in `[0,1]` with provenance.
///
/// Values are clamped to `[0,1]` on construction; excursions beyond
/// [`EXCURSION_TOL`] fail instead of being hidden. Ties keep the order in
/// which they were generated (row-major multi-index order for product
/// spectra), which is what the multiplicity report relies on.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    source: SpectrumSource,
    params: Option<ProlateParams>,
    eigenvectors: Option<DMatrix<f64>>,
    max_clamp: f64,
}

impl Spectrum {
    fn from_raw(
        mut values: Vec<f64>,
        source: SpectrumSource,
        params: Option<ProlateParams>,
        eigenvectors: Option<DMatrix<f64>>,
    ) -> Result<Self> {
        let mut max_clamp = 0.0f64;
        for v in &mut values {
            if !v.is_finite() {
                return Err(Error::Solver(format!("non-finite eigenvalue {v}")));
            }
            if *v < -EXCURSION_TOL || *v > 1.0 + EXCURSION_TOL {
                return Err(Error::EigenExcursion {
                    value: *v,
                    tol: EXCURSION_TOL,
                });
            }
            let clamped = v.clamp(0.0, 1.0);
            max_clamp = max_clamp.max((clamped - *v).abs());
            *v = clamped;
        }
        Ok(Self {
            eigenvalues: values,
            source,
            params,
            eigenvectors,
            max_clamp,
        })
    }

    /// Wraps an externally produced eigenvalue list (clamping as usual).
    pub fn from_eigenvalues(mut values: Vec<f64>, source: SpectrumSource) -> Result<Self> {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        Self::from_raw(values, source, None, None)
    }

    /// Eigenvalues sorted non-increasing, clamped to `[0,1]`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        // Ascending order keeps the accumulation error of the many tiny
        // eigenvalues out of the head of the sum.
        self.eigenvalues.iter().rev().sum()
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    pub fn params(&self) -> Option<&ProlateParams> {
        self.params.as_ref()
    }

    /// Eigenvectors as matrix columns, present only for 1D dense solves that
    /// requested them. Column j pairs with `eigenvalues()[j]`.
    pub fn eigenvectors(&self) -> Option<&DMatrix<f64>> {
        self.eigenvectors.as_ref()
    }

    /// Largest clamp applied when forcing values into `[0,1]`.
    pub fn max_clamp(&self) -> f64 {
        self.max_clamp
    }
}

/// Eigenvalue count report at a threshold.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountReport {
    pub epsilon: f64,
    /// `# { r : λ^(r) > ε }`, strict.
    pub m_eps: usize,
    /// `# { r : ε < λ^(r) < 1-ε }`, strict on both sides (0 when ε >= 1/2).
    pub n_eps: usize,
    /// Distance from the active threshold(s) to the closest eigenvalue;
    /// callers use it to detect threshold-straddling fragility.
    pub nearest_gap: f64,
}

fn symmetry_deviation(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut dev = 0.0f64;
    for r in 0..n {
        for c in (r + 1)..n {
            dev = dev.max((a[(r, c)] - a[(c, r)]).abs());
        }
    }
    dev
}

/// Dense symmetric eigendecomposition, eigenvalues sorted non-increasing.
///
/// Intended for projection-type compositions: eigenvalues must land in
/// `[-1e-10, 1+1e-10]` and are clamped to `[0,1]`. When `want_vectors` is set,
/// the residual `‖Av - λv‖` and the orthonormality of the eigenvector columns
/// are verified against [`SOLVER_ACCURACY`].
pub fn eig_symmetric(a: &DMatrix<f64>, want_vectors: bool) -> Result<Spectrum> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidParams(format!(
            "matrix must be square, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let dev = symmetry_deviation(a);
    if dev > 1e-12 {
        return Err(Error::AsymmetricInput { deviation: dev });
    }
    if want_vectors {
        let decomp = nalgebra::SymmetricEigen::new(a.clone());
        let n = a.nrows();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            decomp.eigenvalues[j]
                .partial_cmp(&decomp.eigenvalues[i])
                .expect("finite")
        });
        let values: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
        let mut vectors = DMatrix::zeros(n, n);
        for (col, &i) in order.iter().enumerate() {
            vectors.set_column(col, &decomp.eigenvectors.column(i));
        }
        verify_decomposition(a, &values, &vectors)?;
        Spectrum::from_raw(values, SpectrumSource::Dense1d, None, Some(vectors))
    } else {
        let mut values: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
        Spectrum::from_raw(values, SpectrumSource::Dense1d, None, None)
    }
}

fn verify_decomposition(a: &DMatrix<f64>, values: &[f64], vectors: &DMatrix<f64>) -> Result<()> {
    let n = a.nrows();
    for (j, &value) in values.iter().enumerate() {
        let v = vectors.column(j);
        let resid = (a * v - value * v).norm() / v.norm();
        if resid > SOLVER_ACCURACY {
            return Err(Error::Solver(format!(
                "eigenpair {j} residual {resid:.3e} exceeds {SOLVER_ACCURACY:.1e}"
            )));
        }
    }
    let gram = vectors.transpose() * vectors;
    for r in 0..n {
        for c in 0..n {
            let expect = if r == c { 1.0 } else { 0.0 };
            if (gram[(r, c)] - expect).abs() > SOLVER_ACCURACY {
                return Err(Error::Solver(format!(
                    "eigenvectors not orthonormal: |G[{r},{c}] - {expect}| = {:.3e}",
                    (gram[(r, c)] - expect).abs()
                )));
            }
        }
    }
    Ok(())
}

/// Spectrum of the 1D prolate matrix.
pub fn spectrum_1d(params: &Params1d) -> Result<Spectrum> {
    spectrum_1d_impl(params, false)
}

/// Same, but keeps the eigenvectors (the discrete prolate spheroidal
/// sequences) and verifies the solver accuracy bar on each pair.
pub fn spectrum_1d_with_vectors(params: &Params1d) -> Result<Spectrum> {
    spectrum_1d_impl(params, true)
}

fn spectrum_1d_impl(params: &Params1d, want_vectors: bool) -> Result<Spectrum> {
    let a = prolate_matrix_1d(params);
    let s = eig_symmetric(a.matrix(), want_vectors)?;
    Ok(Spectrum {
        params: Some(ProlateParams::new(vec![*params])?),
        ..s
    })
}

// All products of the per-axis eigenvalue lists, generated in row-major
// multi-index order, then stable-sorted descending so ties keep that order.
fn product_multiset(per_axis: &[&[f64]]) -> Vec<f64> {
    let total: usize = per_axis.iter().map(|s| s.len()).product();
    let mut out = Vec::with_capacity(total);
    let d = per_axis.len();
    let mut idx = vec![0usize; d];
    loop {
        let mut prod = 1.0;
        for (axis, &i) in idx.iter().enumerate() {
            prod *= per_axis[axis][i];
        }
        out.push(prod);
        // Odometer, last axis fastest.
        let mut axis = d;
        loop {
            if axis == 0 {
                out.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
                return out;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < per_axis[axis].len() {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Exact d-dimensional spectrum: the multiset `{Π_i λ_i^(j_i)}` of products
/// of the per-axis 1D spectra. Never materializes the Kronecker matrix.
pub fn spectrum_md(params: &ProlateParams) -> Result<Spectrum> {
    let total = params.total_m()?;
    if total > PRODUCT_COUNT_CAP {
        return Err(Error::Capacity {
            what: "Π M_i",
            requested: total,
            cap: PRODUCT_COUNT_CAP,
            hint: "product spectrum would not fit in memory",
        });
    }
    if params.d() == 1 {
        return spectrum_1d(params.axis(0));
    }
    // Distinct axes are solved once and shared.
    let mut cache: HashMap<Params1d, Vec<f64>> = HashMap::new();
    for axis in params.axes() {
        if !cache.contains_key(axis) {
            let s = spectrum_1d(axis)?;
            cache.insert(*axis, s.eigenvalues.clone());
        }
    }
    let per_axis: Vec<&[f64]> = params.axes().iter().map(|a| cache[a].as_slice()).collect();
    let values = product_multiset(&per_axis);
    Spectrum::from_raw(values, SpectrumSource::ProductD, Some(params.clone()), None)
}

fn nearest_gap_to(spectrum: &Spectrum, thresholds: &[f64]) -> f64 {
    spectrum
        .eigenvalues
        .iter()
        .flat_map(|&v| thresholds.iter().map(move |&t| (v - t).abs()))
        .fold(f64::INFINITY, f64::min)
}

/// `m_eps`: strict count of eigenvalues above `eps`, for `eps` in (0,1).
pub fn count_above(spectrum: &Spectrum, eps: f64) -> Result<CountReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!(
            "count_above needs eps in (0,1), got {eps}"
        )));
    }
    Ok(CountReport {
        epsilon: eps,
        m_eps: spectrum.eigenvalues.iter().filter(|&&v| v > eps).count(),
        n_eps: count_in_transition(spectrum, eps),
        nearest_gap: nearest_gap_to(spectrum, &[eps]),
    })
}

/// `n_eps`: strict count of eigenvalues in the transition band `(eps, 1-eps)`,
/// for `eps` in (0, 1/2).
pub fn count_transition(spectrum: &Spectrum, eps: f64) -> Result<CountReport> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain(format!(
            "count_transition needs eps in (0,1/2), got {eps}"
        )));
    }
    Ok(CountReport {
        epsilon: eps,
        m_eps: spectrum.eigenvalues.iter().filter(|&&v| v > eps).count(),
        n_eps: count_in_transition(spectrum, eps),
        nearest_gap: nearest_gap_to(spectrum, &[eps, 1.0 - eps]),
    })
}

fn count_in_transition(spectrum: &Spectrum, eps: f64) -> usize {
    spectrum
        .eigenvalues
        .iter()
        .filter(|&&v| v > eps && v < 1.0 - eps)
        .count()
}

/// Groups eigenvalues whose adjacent gaps are at most `tol` and reports
/// `(cluster mean, multiplicity)` in descending value order.
pub fn multiplicity_report(spectrum: &Spectrum, tol: f64) -> Result<Vec<(f64, usize)>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "multiplicity tolerance must be positive, got {tol}"
        )));
    }
    let vals = &spectrum.eigenvalues;
    let mut out = Vec::new();
    let mut start = 0;
    while start < vals.len() {
        let mut end = start + 1;
        while end < vals.len() && vals[end - 1] - vals[end] <= tol {
            end += 1;
        }
        let mult = end - start;
        let mean = vals[start..end].iter().sum::<f64>() / mult as f64;
        out.push((mean, mult));
        start = end;
    }
    Ok(out)
}
