//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `--nocapture` to see them). Criteria 1-9, 11, 12 live here;
//! criterion 10 drives the CLI binary and lives in the CLI crate's own
//! acceptance target.
//!
//! Pinned regression values (recorded on the first full run):
//! - criterion 7: empirical main-theorem ratio R = 1.8401,
//! - criterion 11: sigmoid deviation 0.05 (observed max 0.0455).

use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prolate::bounds::{
    axis_for_mw_target, chi, chi_root_bound_check, cross_index_from_spectrum,
    default_main_theorem_axes, default_sweep_1d, default_trace_grid, karnik_from_spectrum,
    prop_1d_from_spectrum, slepian_sigmoid, verify_main_theorem,
};
use prolate::matrix::{prolate_matrix_1d, Params1d, ProlateParams};
use prolate::nodal::nodal_count_check;
use prolate::operators::{
    band_limit_convolution, band_limit_fourier, time_limit, BandSpec, BoxSpec,
};
use prolate::oracle::{kronecker_spectrum_oracle, prolate_via_projections};
use prolate::spectral::{count_above, count_transition, spectrum_1d, spectrum_md, Spectrum};
use prolate::transform::{ComplexSignal, GridSpec};
use prolate::Verdict;

/// Criterion 7 regression constant: largest empirical ratio observed on the
/// first full run over the default isotropic grid and eps in {0.4, 0.1, 0.01}.
const MAIN_THEOREM_R_PINNED: f64 = 1.8401;

/// Criterion 11 regression constant: observed max |λ_k - sigmoid(k)| was
/// 0.0455 over the three MW targets.
const SIGMOID_DEV_PINNED: f64 = 0.05;

fn shared_sweep() -> &'static Vec<(Params1d, Spectrum)> {
    static SWEEP: OnceLock<Vec<(Params1d, Spectrum)>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        default_sweep_1d()
            .into_iter()
            .map(|p| {
                let s = spectrum_1d(&p).expect("sweep instance solves");
                (p, s)
            })
            .collect()
    })
}

#[test]
fn criterion_01_trace_identity() {
    let t0 = Instant::now();
    let grid = default_trace_grid();
    assert!(grid.len() >= 50, "need >= 50 instances, got {}", grid.len());
    assert!(grid.iter().all(|p| p.n() <= 1024));

    let mut max_dev_1d = 0.0f64;
    for p in &grid {
        let s = spectrum_1d(p).unwrap();
        let dev = (s.sum() - p.two_mw()).abs();
        assert!(
            dev <= 1e-9,
            "1D trace deviation {dev:.3e} at N={} M={} K={}",
            p.n(),
            p.m(),
            p.k()
        );
        max_dev_1d = max_dev_1d.max(dev);
    }

    let pairs = [
        [(64, 32, 7), (64, 32, 7)],
        [(128, 64, 15), (128, 64, 15)],
        [(100, 50, 12), (200, 100, 20)],
        [(32, 16, 5), (48, 24, 7)],
        [(256, 128, 31), (64, 16, 4)],
        [(10, 4, 2), (10, 4, 2)],
        [(16, 8, 3), (16, 8, 3)],
        [(512, 256, 40), (32, 8, 2)],
        [(1024, 768, 64), (8, 3, 1)],
        [(96, 48, 11), (96, 64, 9)],
    ];
    let mut max_dev_2d = 0.0f64;
    for pair in pairs {
        let axes: Vec<Params1d> = pair
            .iter()
            .map(|&(n, m, k)| Params1d::new(n, m, k).unwrap())
            .collect();
        let params = ProlateParams::new(axes).unwrap();
        let s = spectrum_md(&params).unwrap();
        let dev = (s.sum() - params.two_mw_product()).abs();
        assert!(dev <= 1e-8, "2D trace deviation {dev:.3e} at {pair:?}");
        max_dev_2d = max_dev_2d.max(dev);
    }

    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() <= 120,
        "runtime budget exceeded: {elapsed:?}"
    );
    println!(
        "criterion 1 (trace identity): PASS — {} 1D instances (max dev {max_dev_1d:.2e}), \
         {} 2D pairs (max dev {max_dev_2d:.2e}), {elapsed:.2?}",
        grid.len(),
        pairs.len()
    );
}

#[test]
fn criterion_02_oracle_equivalence() {
    let t0 = Instant::now();
    // 1D: every valid (M, K) for each oracle-scale N.
    let mut instances_1d = 0usize;
    let mut max_dev = 0.0f64;
    for n in [8usize, 10, 16, 32, 64] {
        for k in 0..=(n - 2) / 2 {
            for m in 1..n {
                let p = Params1d::new(n, m, k).unwrap();
                let direct = prolate_matrix_1d(&p);
                let oracle = prolate_via_projections(&p).unwrap();
                let dev = (direct.matrix() - &oracle)
                    .iter()
                    .map(|v| v.abs())
                    .fold(0.0, f64::max);
                assert!(
                    dev <= 1e-12,
                    "oracle deviation {dev:.3e} at N={n} M={m} K={k}"
                );
                max_dev = max_dev.max(dev);
                instances_1d += 1;
            }
        }
    }

    // d=2: product spectrum vs the Kronecker oracle, Π M_i <= 1024.
    let pairs = [
        [(10, 4, 2), (10, 4, 2)],
        [(16, 6, 2), (16, 6, 2)],
        [(8, 3, 1), (16, 5, 2)],
        [(32, 16, 5), (16, 8, 3)],
        [(64, 16, 7), (64, 16, 7)],
        [(32, 25, 5), (32, 25, 11)],
        [(64, 32, 9), (64, 32, 21)],
    ];
    let mut max_dev_2d = 0.0f64;
    for pair in pairs {
        let axes: Vec<Params1d> = pair
            .iter()
            .map(|&(n, m, k)| Params1d::new(n, m, k).unwrap())
            .collect();
        let params = ProlateParams::new(axes).unwrap();
        assert!(params.total_m().unwrap() <= 1024);
        let product = spectrum_md(&params).unwrap();
        let oracle = kronecker_spectrum_oracle(&params).unwrap();
        for (a, b) in product.eigenvalues().iter().zip(&oracle) {
            let dev = (a - b).abs();
            assert!(dev <= 1e-9, "kronecker deviation {dev:.3e} at {pair:?}");
            max_dev_2d = max_dev_2d.max(dev);
        }
    }

    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() <= 300,
        "runtime budget exceeded: {elapsed:?}"
    );
    println!(
        "criterion 2 (oracle equivalence): PASS — {instances_1d} 1D instances \
         (max dev {max_dev:.2e}), {} 2D pairs (max dev {max_dev_2d:.2e}), {elapsed:.2?}",
        pairs.len()
    );
}

#[test]
fn criterion_03_projection_laws() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x009a_7c01);
    let instances = 220usize;
    for trial in 0..instances {
        let n = rng.gen_range(4..=32usize);
        let m = rng.gen_range(1..n);
        let k_max = (n - 2) / 2;
        let k = rng.gen_range(0..=k_max);
        let grid = GridSpec::new(vec![n]).unwrap();
        let values: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let x = ComplexSignal::new(grid.clone(), values).unwrap();
        let y = {
            let values: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            ComplexSignal::new(grid.clone(), values).unwrap()
        };
        let box_spec = BoxSpec::new(grid.clone(), vec![m]).unwrap();
        let band = BandSpec::new(grid, vec![k]).unwrap();

        let tx = time_limit(&x, &box_spec).unwrap();
        let ttx = time_limit(&tx, &box_spec).unwrap();
        let t_idem = max_dev(&tx, &ttx);
        let ty = time_limit(&y, &box_spec).unwrap();
        let t_adj = (tx.inner(&y) - x.inner(&ty)).norm();

        let bx = band_limit_fourier(&x, &band).unwrap();
        let bbx = band_limit_fourier(&bx, &band).unwrap();
        let b_idem = max_dev(&bx, &bbx);
        let by = band_limit_fourier(&y, &band).unwrap();
        let b_adj = (bx.inner(&y) - x.inner(&by)).norm();

        let bx_conv = band_limit_convolution(&x, &band).unwrap();
        let routes = max_dev(&bx, &bx_conv);

        for (name, dev) in [
            ("T idempotent", t_idem),
            ("T self-adjoint", t_adj),
            ("B idempotent", b_idem),
            ("B self-adjoint", b_adj),
            ("fourier-vs-convolution", routes),
        ] {
            assert!(
                dev <= 1e-11,
                "{name} deviation {dev:.3e} at trial {trial} (N={n} M={m} K={k})"
            );
        }
    }
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() <= 60,
        "runtime budget exceeded: {elapsed:?}"
    );
    println!("criterion 3 (projection laws): PASS — {instances} random instances, {elapsed:.2?}");
}

fn max_dev(a: &ComplexSignal, b: &ComplexSignal) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn criterion_04_cross_index() {
    let sweep = shared_sweep();
    assert!(
        sweep.len() >= 100,
        "need >= 100 instances, got {}",
        sweep.len()
    );
    assert!(sweep.iter().all(|(p, _)| p.n() <= 512));
    let mut applicable = 0usize;
    for (p, s) in sweep {
        let r = cross_index_from_spectrum(p, s).unwrap();
        assert_ne!(
            r.verdict,
            Verdict::Fail,
            "cross-index failed at N={} M={} K={}: λ(lo)={:?}, λ(hi)={:?}",
            p.n(),
            p.m(),
            p.k(),
            r.lambda_below_index,
            r.lambda_above_index
        );
        if r.verdict == Verdict::Pass {
            applicable += 1;
        }
    }
    assert!(applicable >= 100);
    println!(
        "criterion 4 (cross-index theorem): PASS — {applicable} applicable instances, zero failures"
    );
}

#[test]
fn criterion_05_transition_bound() {
    let sweep = shared_sweep();
    let epsilons = [0.4, 0.1, 0.01, 1e-4];
    let mut checks = 0usize;
    let mut max_ratio = 0.0f64;
    for (p, s) in sweep {
        for eps in epsilons {
            let report = karnik_from_spectrum(p, s, eps).unwrap();
            assert!(
                report.passed(),
                "transition bound failed at N={} M={} K={} eps={eps}: n={} > R={}",
                p.n(),
                p.m(),
                p.k(),
                report.n_eps,
                report.r_eps
            );
            max_ratio = max_ratio.max(report.slack[0].value);
            checks += 1;
        }
    }
    println!("criterion 5 (1D transition bound): PASS — {checks} checks, max n/R = {max_ratio:.3}");
}

#[test]
fn criterion_06_count_near_one() {
    let sweep = shared_sweep();
    let gammas = [0.01, 0.5, 0.9];
    let mut checks = 0usize;
    let mut max_ratio = 0.0f64;
    for (p, s) in sweep {
        for gamma in gammas {
            let report = prop_1d_from_spectrum(p, s, gamma).unwrap();
            assert!(
                report.passed(),
                "count-near-one failed at N={} M={} K={} gamma={gamma}: m={} vs 2MW={}",
                p.n(),
                p.m(),
                p.k(),
                report.m_eps,
                report.two_mw_pow_d
            );
            max_ratio = max_ratio.max(report.slack[0].value);
            checks += 1;
        }
    }
    println!(
        "criterion 6 (count near one): PASS — {checks} checks, max deviation ratio {max_ratio:.3}"
    );
}

#[test]
fn criterion_07_main_theorem_d2() {
    let mut max_ratio = 0.0f64;
    let mut checks = 0usize;
    for axis in default_main_theorem_axes() {
        let params = ProlateParams::isotropic(axis, 2).unwrap();
        for eps in [0.4, 0.1, 0.01] {
            let report = verify_main_theorem(&params, eps).unwrap();
            assert!(report.passed());
            for ratio in &report.slack {
                assert!(
                    ratio.value <= 1.1 * MAIN_THEOREM_R_PINNED,
                    "ratio {} = {:.4} degrades pinned R = {MAIN_THEOREM_R_PINNED} by more than 10% \
                     at N={} eps={eps}",
                    ratio.name,
                    ratio.value,
                    axis.n()
                );
                max_ratio = max_ratio.max(ratio.value);
            }
            checks += 1;
        }
    }
    println!(
        "criterion 7 (main theorem d=2): PASS — {checks} instances, max empirical ratio \
         {max_ratio:.4} <= 1.1 x pinned {MAIN_THEOREM_R_PINNED}"
    );
}

#[test]
fn criterion_08_degenerate_known_answer() {
    for (n, k) in [(8usize, 1usize), (16, 3), (32, 7)] {
        let axis = Params1d::new_identity_time_limit(n, k).unwrap();
        let s = spectrum_1d(&axis).unwrap();
        let band = 2 * k + 1;
        for (i, &v) in s.eigenvalues().iter().enumerate() {
            let expect = if i < band { 1.0 } else { 0.0 };
            assert!(
                (v - expect).abs() <= 1e-12,
                "degenerate spectrum N={n} K={k}: λ({i}) = {v}"
            );
        }
        for d in [1usize, 2] {
            let params = ProlateParams::isotropic(axis, d).unwrap();
            let spec = spectrum_md(&params).unwrap();
            for eps in [0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.98] {
                let c = count_above(&spec, eps).unwrap();
                assert_eq!(
                    c.m_eps,
                    band.pow(d as u32),
                    "m_eps at N={n} K={k} d={d} eps={eps}"
                );
                if eps < 0.5 {
                    let t = count_transition(&spec, eps).unwrap();
                    assert_eq!(t.n_eps, 0, "n_eps at N={n} K={k} d={d} eps={eps}");
                }
            }
        }
    }
    println!("criterion 8 (degenerate known answer): PASS — projection spectra exact to 1e-12");
}

#[test]
fn criterion_09_nodal_proposition() {
    // Exhaustive integer-exact sweep: every valid (N <= 512, M, K).
    let t0 = Instant::now();
    let mut instances = 0usize;
    let mut closed_form_failures = 0usize;
    let mut slack_failures = 0usize;
    let mut first_failures: Vec<String> = Vec::new();
    for n in 4..=512usize {
        for k in 0..=(n - 2) / 2 {
            for m in 2..n {
                let p = Params1d::new(n, m, k).unwrap();
                let check = nodal_count_check(&p);
                instances += 1;
                if !check.closed_form_exact {
                    closed_form_failures += 1;
                    if first_failures.len() < 3 {
                        first_failures.push(format!(
                            "N={n} M={m} K={k}: enumerated {} vs closed form {}",
                            check.count, check.closed_form
                        ));
                    }
                }
                if !check.within_statement_slack {
                    slack_failures += 1;
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    println!(
        "criterion 9 (nodal proposition): {} — {instances} instances, \
         {closed_form_failures} closed-form mismatches, {slack_failures} outside |count - 2⌊2MW⌋| <= 2, \
         {elapsed:.2?}",
        if closed_form_failures == 0 && slack_failures == 0 { "PASS" } else { "FAIL" }
    );
    // The closed form 2⌊2W(M-1)⌋ presumes every candidate zero offset j/(2W)
    // is an integer, which holds only when (2K+1) divides N. The enumerated
    // set (exact congruence (2K+1)Δ ≡ 0 mod N) is smaller otherwise:
    // its true cardinality is 2⌊gcd(2K+1,N)·(M-1)/N⌋.
    assert_eq!(
        (closed_form_failures, slack_failures),
        (0, 0),
        "nodal closed-form count fails off the divisible family; first counterexamples: {first_failures:?}"
    );
}

#[test]
fn criterion_11_slepian_sigmoid() {
    let t0 = Instant::now();
    let mut max_dev = 0.0f64;
    let mut band_points = 0usize;
    for target in [5.0, 10.0, 20.0] {
        let p = axis_for_mw_target(1000, 800, target).unwrap();
        let s = spectrum_1d(&p).unwrap();
        for (k, &v) in s.eigenvalues().iter().enumerate() {
            if v > 0.2 && v < 0.8 {
                let sig = slepian_sigmoid(k as f64, p.m(), p.w()).unwrap();
                max_dev = max_dev.max((v - sig).abs());
                band_points += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() <= 120,
        "runtime budget exceeded: {elapsed:?}"
    );
    assert!(max_dev <= 0.1, "sigmoid deviation {max_dev:.4} exceeds 0.1");
    assert!(
        max_dev <= SIGMOID_DEV_PINNED,
        "sigmoid deviation {max_dev:.4} exceeds pinned {SIGMOID_DEV_PINNED}"
    );
    println!(
        "criterion 11 (Slepian sigmoid): PASS — max |λ - sigmoid| = {max_dev:.4} \
         over {band_points} in-band eigenvalues, {elapsed:.2?}"
    );
}

#[test]
fn criterion_12_chi_lemma_grid() {
    let t0 = Instant::now();
    let mut grid = Vec::with_capacity(1667);
    for j in 0..=832 {
        grid.push(1e-9 * (0.4999f64 / 1e-9).powf(j as f64 / 832.0));
    }
    for j in 1..=834 {
        grid.push(0.5 + 0.4999 * j as f64 / 835.0);
    }
    let mut points = 0usize;
    let mut max_ratio = 0.0f64;
    for d in 1..=6usize {
        for &eps in &grid {
            let c = chi_root_bound_check(eps, d).unwrap();
            assert!(
                c.ratio <= 1.0 + 1e-12,
                "chi root bound violated at eps={eps} d={d}: ratio {}",
                c.ratio
            );
            max_ratio = max_ratio.max(c.ratio);
            if d == 1 && eps < 0.5 {
                let excess = chi(eps).unwrap() - 2.0 * (1.0 / eps).ln();
                assert!(
                    excess <= 1e-12,
                    "chi(i) violated at eps={eps}: excess {excess:.3e}"
                );
            }
            points += 1;
        }
    }
    let elapsed = t0.elapsed();
    assert!(points >= 10_000);
    assert!(
        elapsed.as_secs() <= 1,
        "runtime budget exceeded: {elapsed:?}"
    );
    println!(
        "criterion 12 (chi lemma grid): PASS — {points} points, max ratio {max_ratio:.4}, {elapsed:.2?}"
    );
}

// Companion invariants that ride along with the acceptance gate.

#[test]
fn lemma_sandwich_of_product_counts() {
    // (#{λ_1D > ε^{1/d}})^d <= m_ε(d-D) <= (#{λ_1D > ε})^d, exact integers.
    let axis = Params1d::new(64, 32, 7).unwrap();
    let s1 = spectrum_1d(&axis).unwrap();
    for d in [2usize, 3] {
        let params = ProlateParams::isotropic(axis, d).unwrap();
        let sd = spectrum_md(&params).unwrap();
        for eps in [0.9, 0.5, 0.3, 0.05] {
            let m_d = count_above(&sd, eps).unwrap().m_eps;
            let lo = count_above(&s1, eps.powf(1.0 / d as f64)).unwrap().m_eps;
            let hi = count_above(&s1, eps).unwrap().m_eps;
            assert!(
                lo.pow(d as u32) <= m_d && m_d <= hi.pow(d as u32),
                "sandwich failed at d={d} eps={eps}: {lo}^{d} <= {m_d} <= {hi}^{d}"
            );
        }
    }
    println!("lemma sandwich: PASS");
}

#[test]
fn transition_count_decomposition() {
    // n_ε <= m_ε - m_{1-ε} for ε in (0, 1/2).
    let axis = Params1d::new(96, 48, 11).unwrap();
    for d in [1usize, 2] {
        let params = ProlateParams::isotropic(axis, d).unwrap();
        let s = spectrum_md(&params).unwrap();
        for eps in [0.45, 0.3, 0.1, 0.01] {
            let n_eps = count_transition(&s, eps).unwrap().n_eps;
            let m_eps = count_above(&s, eps).unwrap().m_eps;
            let m_comp = count_above(&s, 1.0 - eps).unwrap().m_eps;
            assert!(
                n_eps <= m_eps - m_comp,
                "decomposition failed at d={d} eps={eps}: {n_eps} > {m_eps} - {m_comp}"
            );
        }
    }
    println!("transition decomposition: PASS");
}

#[test]
fn sigmoid_half_crossing_tracks_spectrum() {
    // The sigmoid crosses 1/2 at k = 2MW - 1/2; the spectrum's own crossing
    // index stays within 1 of it for M >= 64, M/N <= 0.8.
    for (n, m, k) in [(128usize, 64usize, 15usize), (256, 128, 31), (512, 256, 40)] {
        let p = Params1d::new(n, m, k).unwrap();
        let s = spectrum_1d(&p).unwrap();
        let crossing = s
            .eigenvalues()
            .iter()
            .position(|&v| v < 0.5)
            .expect("spectrum crosses 1/2") as f64;
        let predicted = 2.0 * p.mw() - 0.5;
        assert!(
            (crossing - predicted).abs() <= 1.0,
            "crossing {crossing} vs sigmoid prediction {predicted} at N={n} M={m} K={k}"
        );
    }
    println!("sigmoid half-crossing: PASS");
}
