//! Independent brute-force recomputation of the constructed objects, used by
//! tests and cross-checks only.
//!
//! Everything here is rebuilt from the explicit DFT matrix and diagonal
//! indicators; none of it touches the kernel-table or product-spectrum code
//! paths it exists to validate. Scale caps keep it from masquerading as a
//! production path.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{Params1d, ProlateParams};
use crate::spectral::eig_symmetric;
use crate::transform::dft_matrix_1d;
use crate::Verdict;

/// Largest ambient N the 1D projection oracle will assemble.
pub const ORACLE_N_CAP: usize = 256;

/// Largest `Π M_i` the Kronecker oracle will eigensolve.
pub const ORACLE_KRON_CAP: usize = 1024;

/// Number of random bandlimited probes in the duality check.
const RAYLEIGH_PROBES: usize = 200;

fn check_cap(n: usize) -> Result<()> {
    if n > ORACLE_N_CAP {
        return Err(Error::Capacity {
            what: "oracle ambient N",
            requested: n,
            cap: ORACLE_N_CAP,
            hint: "the projection oracle is O(N^3) and exists only for verification",
        });
    }
    Ok(())
}

/// Diagonal time-limiting projection onto indices `0..m`.
pub fn time_projection(n: usize, m: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |r, c| {
        if r == c && r < m {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Band-limiting projection `B_K = F* diag(1_K) F` assembled explicitly.
pub fn band_projection(n: usize, k: usize) -> Result<DMatrix<Complex64>> {
    check_cap(n)?;
    if 2 * k + 1 >= n {
        return Err(Error::InvalidParams(format!(
            "band requires 2K+1 < N, got K={k}, N={n}"
        )));
    }
    let f = dft_matrix_1d(n)?;
    let indicator = DMatrix::from_fn(n, n, |r, c| {
        if r == c && (r <= k || r >= n - k) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(f.adjoint() * indicator * f)
}

fn real_part_checked(a: &DMatrix<Complex64>, context: &str) -> Result<DMatrix<f64>> {
    let resid = a.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if resid > 1e-12 {
        return Err(Error::Solver(format!(
            "{context}: imaginary residue {resid:.3e} exceeds 1e-12"
        )));
    }
    Ok(a.map(|v| v.re))
}

/// The prolate matrix recomputed as the explicit operator product
/// `T_M B_K T_M`, restricted to the leading `M x M` block.
pub fn prolate_via_projections(params: &Params1d) -> Result<DMatrix<f64>> {
    let (n, m, k) = (params.n(), params.m(), params.k());
    check_cap(n)?;
    let t = time_projection(n, m);
    let b = band_projection(n, k)?;
    let product = &t * &b * &t;
    let real = real_part_checked(&product, "projection-product oracle")?;
    Ok(real.view((0, 0), (m, m)).into())
}

/// Eigenvalues of the explicitly assembled Kronecker matrix, sorted
/// non-increasing. Validates the product-spectrum path.
pub fn kronecker_spectrum_oracle(params: &ProlateParams) -> Result<Vec<f64>> {
    let total = params.total_m()?;
    if total > ORACLE_KRON_CAP {
        return Err(Error::Capacity {
            what: "oracle Π M_i",
            requested: total,
            cap: ORACLE_KRON_CAP,
            hint: "the Kronecker oracle is O((Π M_i)^3) and exists only for verification",
        });
    }
    let mut acc = prolate_via_projections(params.axis(0))?;
    for axis in &params.axes()[1..] {
        let next = prolate_via_projections(axis)?;
        acc = acc.kronecker(&next);
    }
    // Kronecker products of symmetric blocks pick up tiny asymmetry from the
    // oracle's complex arithmetic; symmetrize before the strict eigensolve.
    let sym = (&acc + acc.transpose()) * 0.5;
    let s = eig_symmetric(&sym, false)?;
    Ok(s.eigenvalues().to_vec())
}

/// Outcome of the concentration-duality cross-check.
#[derive(Debug, Clone)]
pub struct DualityReport {
    /// Max deviation between the leading nonzero spectra of `T B T` and `B T B`.
    pub spectrum_deviation: f64,
    /// Largest tail eigenvalue beyond the shared rank bound, both operators.
    pub tail_magnitude: f64,
    /// Top eigenvalue of `T B T`.
    pub lambda_max: f64,
    /// Max of `‖T x‖²/‖x‖²` over the random bandlimited probes.
    pub rayleigh_max: f64,
    pub verdict: Verdict,
}

/// Verifies that `T_M B_K T_M` and `B_K T_M B_K` share their nonzero spectrum
/// and that no random bandlimited unit vector beats the top eigenvalue's
/// concentration `‖T_M x‖²`.
pub fn concentration_duality_check(params: &Params1d, seed: u64) -> Result<DualityReport> {
    let (n, m, k) = (params.n(), params.m(), params.k());
    check_cap(n)?;
    let t = time_projection(n, m);
    let b = band_projection(n, k)?;

    let tbt = real_part_checked(&(&t * &b * &t), "T B T oracle")?;
    let btb = real_part_checked(&(&b * &t * &b), "B T B oracle")?;
    let sym_tbt = (&tbt + tbt.transpose()) * 0.5;
    let sym_btb = (&btb + btb.transpose()) * 0.5;
    let spec_tbt = eig_symmetric(&sym_tbt, false)?;
    let spec_btb = eig_symmetric(&sym_btb, false)?;

    // Both PQP and QPQ have rank at most min(M, 2K+1); the nonzero spectra
    // coincide, so the leading eigenvalues must match pairwise and the tails
    // must vanish.
    let rank_bound = m.min(2 * k + 1);
    let mut spectrum_deviation = 0.0f64;
    for i in 0..rank_bound {
        spectrum_deviation =
            spectrum_deviation.max((spec_tbt.eigenvalues()[i] - spec_btb.eigenvalues()[i]).abs());
    }
    let mut tail_magnitude = 0.0f64;
    for s in [&spec_tbt, &spec_btb] {
        for &v in &s.eigenvalues()[rank_bound..] {
            tail_magnitude = tail_magnitude.max(v.abs());
        }
    }

    let lambda_max = spec_tbt.eigenvalues()[0];

    // Random K-bandlimited unit vectors: synthesize band coefficients, go to
    // signal space with the explicit IDFT, and measure time concentration.
    let f = dft_matrix_1d(n)?;
    let f_inv = f.adjoint();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rayleigh_max = 0.0f64;
    for _ in 0..RAYLEIGH_PROBES {
        let mut coef = nalgebra::DVector::from_element(n, Complex64::new(0.0, 0.0));
        for j in 0..n {
            if j <= k || j >= n - k {
                coef[j] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let x = &f_inv * coef;
        let norm_sq: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        if norm_sq == 0.0 {
            continue;
        }
        let concentrated: f64 = x.iter().take(m).map(|v| v.norm_sqr()).sum();
        rayleigh_max = rayleigh_max.max(concentrated / norm_sq);
    }

    let pass = spectrum_deviation <= 1e-10
        && tail_magnitude <= 1e-10
        && rayleigh_max <= lambda_max + 1e-10;
    Ok(DualityReport {
        spectrum_deviation,
        tail_magnitude,
        lambda_max,
        rayleigh_max,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}
