//! Data generators for the shipped figures.
//!
//! Each generator returns a long-format [`FigureSeries`]; plotting is left to
//! external tools. Defaults reconstruct the reference experiments: a fixed
//! time-bandwidth sweep over ambient sizes, the `2MW ≈ 270` spectra at three
//! bandwidths, eigenvalue-vs-MW curves at `N=1000, M=800`, and the d=2
//! product spectrum with its multiplicity-2 structure.

use anyhow::{bail, Result};
use prolate::matrix::{Params1d, ProlateParams};
use prolate::spectral::{count_above, spectrum_1d, spectrum_md};

use crate::output::FigureSeries;

/// Eigenvalue spectra across ambient sizes with `2MW` held (approximately)
/// fixed: the count of significant eigenvalues stays put while N grows.
pub fn fixed_tbw_vs_n(
    tbw: f64,
    n_list: &[usize],
    k: usize,
    max_index: usize,
) -> Result<FigureSeries> {
    if n_list.is_empty() {
        bail!("need at least one ambient size N");
    }
    let mut series = FigureSeries::new(
        "fixed-tbw-vs-N",
        serde_json::json!({"tbw": tbw, "n_list": n_list, "k": k, "max_index": max_index}),
    );
    let mut col_n = Vec::new();
    let mut col_m = Vec::new();
    let mut col_k = Vec::new();
    let mut col_idx = Vec::new();
    let mut col_val = Vec::new();
    let mut m_half = serde_json::Map::new();
    for &n in n_list {
        let band = 2 * k + 1;
        let m = ((tbw * n as f64 / band as f64).round() as usize).clamp(2, n - 1);
        let p = Params1d::new(n, m, k)?;
        let s = spectrum_1d(&p)?;
        m_half.insert(
            n.to_string(),
            serde_json::json!(count_above(&s, 0.5)?.m_eps),
        );
        for (i, &v) in s.eigenvalues().iter().take(max_index.max(1)).enumerate() {
            col_n.push(n as f64);
            col_m.push(m as f64);
            col_k.push(k as f64);
            col_idx.push(i as f64);
            col_val.push(v);
        }
    }
    series.metadata.params["m_half"] = serde_json::Value::Object(m_half);
    series.push_column("n", col_n);
    series.push_column("m", col_m);
    series.push_column("k", col_k);
    series.push_column("index", col_idx);
    series.push_column("eigenvalue", col_val);
    Ok(series)
}

/// Full spectra at a fixed time-bandwidth product for several bandwidth
/// targets; integer triples are reconstructed near the requested `W` values.
pub fn spectra_vs_n(tbw: f64, n: usize, w_list: &[f64], max_index: usize) -> Result<FigureSeries> {
    if w_list.is_empty() {
        bail!("need at least one bandwidth target");
    }
    let mut series = FigureSeries::new(
        "spectra-vs-N",
        serde_json::json!({"tbw": tbw, "n": n, "w_list": w_list, "max_index": max_index}),
    );
    let mut col_n = Vec::new();
    let mut col_m = Vec::new();
    let mut col_k = Vec::new();
    let mut col_idx = Vec::new();
    let mut col_val = Vec::new();
    for &w in w_list {
        if !(w > 0.0 && w < 0.5) {
            bail!("bandwidth target {w} outside (0, 1/2)");
        }
        let k = (((2.0 * n as f64 * w) - 1.0) / 2.0).round().max(0.0) as usize;
        let band = 2 * k + 1;
        let m = ((tbw * n as f64 / band as f64).round() as usize).clamp(2, n - 1);
        let p = Params1d::new(n, m, k)?;
        let s = spectrum_1d(&p)?;
        let cap = if max_index == 0 { s.len() } else { max_index };
        for (i, &v) in s.eigenvalues().iter().take(cap).enumerate() {
            col_n.push(n as f64);
            col_m.push(m as f64);
            col_k.push(k as f64);
            col_idx.push(i as f64);
            col_val.push(v);
        }
    }
    series.push_column("n", col_n);
    series.push_column("m", col_m);
    series.push_column("k", col_k);
    series.push_column("index", col_idx);
    series.push_column("eigenvalue", col_val);
    Ok(series)
}

/// `λ^(k)` as a function of `2MW`: N and M fixed, the band half-width sweeps
/// so the time-bandwidth product covers the requested range.
pub fn eig_vs_mw(
    n: usize,
    m: usize,
    k_max: usize,
    band_max: usize,
    band_step: usize,
) -> Result<FigureSeries> {
    if band_step == 0 {
        bail!("band step must be positive");
    }
    let mut series = FigureSeries::new(
        "eig-vs-mw",
        serde_json::json!({
            "n": n, "m": m, "k_max": k_max,
            "band_max": band_max, "band_step": band_step
        }),
    );
    let mut col_two_mw = Vec::new();
    let mut col_k = Vec::new();
    let mut col_val = Vec::new();
    let mut band = 1usize;
    while band <= band_max {
        if 2 * band + 1 >= n {
            break;
        }
        let p = Params1d::new(n, m, band)?;
        let s = spectrum_1d(&p)?;
        let two_mw = p.two_mw();
        for (i, &v) in s.eigenvalues().iter().take(k_max + 1).enumerate() {
            col_two_mw.push(two_mw);
            col_k.push(i as f64);
            col_val.push(v);
        }
        band += band_step;
    }
    if col_val.is_empty() {
        bail!("band sweep produced no admissible K");
    }
    series.push_column("two_mw", col_two_mw);
    series.push_column("k", col_k);
    series.push_column("eigenvalue", col_val);
    Ok(series)
}

/// One multiplicity cluster of the d=2 product spectrum.
#[derive(Debug, Clone, Copy)]
pub struct ProductCluster {
    pub value: f64,
    pub multiplicity: usize,
    /// 1.0 when every member pairs distinct 1D indices, 0.0 when every
    /// member is a diagonal square, -1.0 for mixed clusters.
    pub off_diagonal: f64,
}

/// Clusters of the two-axis product spectrum, annotated with whether they
/// stem from off-diagonal index pairs. Off-diagonal products `λ_i λ_j`
/// (i ≠ j) occur twice by symmetry, so away from collision regions every
/// such cluster has multiplicity exactly 2.
pub fn tensor_product_clusters(axis: &Params1d, tol: f64) -> Result<Vec<ProductCluster>> {
    let s1 = spectrum_1d(axis)?;
    let vals = s1.eigenvalues();
    let m = vals.len();
    let mut labeled: Vec<(f64, bool)> = Vec::with_capacity(m * m);
    for (i, &a) in vals.iter().enumerate() {
        for (j, &b) in vals.iter().enumerate() {
            labeled.push((a * b, i != j));
        }
    }
    labeled.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite"));

    // Same grouping rule as spectral::multiplicity_report.
    let mut clusters = Vec::new();
    let mut start = 0;
    while start < labeled.len() {
        let mut end = start + 1;
        while end < labeled.len() && labeled[end - 1].0 - labeled[end].0 <= tol {
            end += 1;
        }
        let members = &labeled[start..end];
        let value = members.iter().map(|m| m.0).sum::<f64>() / members.len() as f64;
        let all_off = members.iter().all(|m| m.1);
        let all_diag = members.iter().all(|m| !m.1);
        clusters.push(ProductCluster {
            value,
            multiplicity: members.len(),
            off_diagonal: if all_off {
                1.0
            } else if all_diag {
                0.0
            } else {
                -1.0
            },
        });
        start = end;
    }
    Ok(clusters)
}

/// The d=2 product spectrum with multiplicity annotations.
pub fn tensor_multiplicity(n: usize, m: usize, k: usize, tol: f64) -> Result<FigureSeries> {
    let axis = Params1d::new(n, m, k)?;
    let clusters = tensor_product_clusters(&axis, tol)?;
    // Cross-check the multiplicity bookkeeping against the product spectrum.
    let params = ProlateParams::isotropic(axis, 2)?;
    let s2 = spectrum_md(&params)?;
    let total: usize = clusters.iter().map(|c| c.multiplicity).sum();
    if total != s2.len() {
        bail!(
            "cluster multiplicities sum to {total}, product spectrum has {} values",
            s2.len()
        );
    }
    let mut series = FigureSeries::new(
        "tensor-multiplicity",
        serde_json::json!({"n": n, "m": m, "k": k, "tol": tol}),
    );
    series.push_column("index", (0..clusters.len()).map(|i| i as f64).collect());
    series.push_column("value", clusters.iter().map(|c| c.value).collect());
    series.push_column(
        "multiplicity",
        clusters.iter().map(|c| c.multiplicity as f64).collect(),
    );
    series.push_column(
        "off_diagonal",
        clusters.iter().map(|c| c.off_diagonal).collect(),
    );
    Ok(series)
}

/// Spectrum dump for the `spectrum` subcommand: descending eigenvalues of
/// the (possibly multi-axis) prolate matrix.
pub fn spectrum_series(params: &ProlateParams) -> Result<FigureSeries> {
    let s = spectrum_md(params)?;
    let mut series = FigureSeries::new(
        "spectrum",
        serde_json::json!({
            "n": params.axes().iter().map(|a| a.n()).collect::<Vec<_>>(),
            "m": params.axes().iter().map(|a| a.m()).collect::<Vec<_>>(),
            "k": params.axes().iter().map(|a| a.k()).collect::<Vec<_>>(),
            "d": params.d(),
            "source": format!("{:?}", s.source()),
        }),
    );
    series.push_column("index", (0..s.len()).map(|i| i as f64).collect());
    series.push_column("eigenvalue", s.eigenvalues().to_vec());
    Ok(series)
}
