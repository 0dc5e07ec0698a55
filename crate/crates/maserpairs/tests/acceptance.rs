//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, non-zero exit
//! if any criterion fails.
//!
//! Run with `cargo test -p maserpairs --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use maserpairs::{find_peaks, refine_peaks, run_sweep, Peak, SweepConfig, SweepRecord};
use maserpairs_core::fock::{self, MaserParams, PhotonDistribution, TruncationPolicy};
use maserpairs_core::lewsan::ls_decompose;
use maserpairs_core::oracle::{
    check_decomposition, hermitian_eigenvalues, matrix_correlations, numeric_ls_search,
    numeric_trace_norm, sample_nonseparable_correlations, sample_valid_correlations, LsSearch,
};
use maserpairs_core::pairstate::{correlations, delta_trace_norm, is_separable, to_density_matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn sweep(nex: f64, nu: f64, steps: usize) -> SweepConfig {
    SweepConfig {
        nex,
        nu,
        theta_min: 0.0,
        theta_max: 5.0,
        steps,
        trunc: TruncationPolicy::default(),
    }
}

fn reported_peaks(config: &SweepConfig) -> (Vec<SweepRecord>, Vec<Peak>) {
    let records = run_sweep(config).expect("sweep");
    let peaks = refine_peaks(config, &find_peaks(&records)).expect("peak refinement");
    (records, peaks.peaks)
}

const REFERENCE_LOCATIONS: [f64; 3] = [0.708, 1.414, 3.536];
const REFERENCE_VALUES: [f64; 3] = [0.5245, 0.5130, 0.4920];

fn peak_reproduction() -> Outcome {
    let (_, peaks) = reported_peaks(&sweep(1.0, 0.0, 2000));
    let mut pass = true;
    let mut parts = Vec::new();
    for (loc, want) in REFERENCE_LOCATIONS.iter().zip(REFERENCE_VALUES) {
        let nearest = peaks.iter().min_by(|a, b| {
            (a.phi_over_pi - loc)
                .abs()
                .total_cmp(&(b.phi_over_pi - loc).abs())
        });
        match nearest {
            Some(p) if (p.phi_over_pi - loc).abs() <= 0.01 => {
                pass &= (p.value - want).abs() <= 0.002;
                parts.push(format!(
                    "phi/pi {:.4} (want {loc}) 1-S {:.4} (want {want}, off {:+.4})",
                    p.phi_over_pi,
                    p.value,
                    p.value - want
                ));
            }
            _ => {
                pass = false;
                parts.push(format!("no maximum within 0.01 of phi/pi = {loc}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn values_at_reference_locations() -> Outcome {
    let config = sweep(1.0, 0.0, 2000);
    let mut pass = true;
    let mut parts = Vec::new();
    for (loc, want) in REFERENCE_LOCATIONS.iter().zip(REFERENCE_VALUES) {
        let got = config.evaluate(*loc).expect("point").one_minus_s;
        pass &= (got - want).abs() <= 2e-4;
        parts.push(format!("1-S({loc}) = {got:.5} (want {want})"));
    }
    outcome(pass, parts.join("; "))
}

fn trends() -> Outcome {
    let cases = [(1.0, 0.0), (1.0, 0.2), (3.0, 0.0), (5.0, 0.0)];
    let stats: Vec<(f64, f64)> = cases
        .iter()
        .map(|&(nex, nu)| {
            let records = run_sweep(&sweep(nex, nu, 2000)).expect("sweep");
            let max = records.iter().map(|r| r.one_minus_s).fold(0.0, f64::max);
            let sum = records.iter().map(|r| r.one_minus_s).sum::<f64>();
            (max, sum)
        })
        .collect();
    let mut pass = true;
    for (hi, lo) in [(0, 1), (0, 2), (2, 3)] {
        pass &= stats[hi].0 > stats[lo].0 && stats[hi].1 > stats[lo].1;
    }
    let detail = cases
        .iter()
        .zip(&stats)
        .map(|((nex, nu), (max, sum))| format!("(Nex={nex}, nu={nu}) max {max:.4} sum {sum:.1}"))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(
        pass,
        format!("{detail}; required first > second, first > third, third > fourth"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let trunc = TruncationPolicy::default();
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let nex = rng.gen_range(0.5..=10.0);
        let nu = rng.gen_range(0.0..=1.0);
        let phi = rng.gen_range(f64::EPSILON..4.0 * PI);
        let dist = fock::steady_state(&MaserParams::new(nex, nu, phi).unwrap(), &trunc).unwrap();
        let a = correlations(&dist, phi).unwrap();
        let b = matrix_correlations(&dist, phi);
        for d in [a.s - b.s, a.t - b.t, a.u - b.u, a.v - b.v] {
            worst = worst.max(d.abs());
        }
    }
    outcome(
        worst <= 1e-10,
        format!("100 cases, max deviation {worst:.2e} (limit 1e-10)"),
    )
}

fn closed_form_vs_spectral() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0_f64;
    let mut mismatches = 0;
    for _ in 0..1000 {
        let corr = sample_valid_correlations(&mut rng);
        worst = worst.max((delta_trace_norm(&corr) - numeric_trace_norm(&corr)).abs());
        let pt_min = hermitian_eigenvalues(&to_density_matrix(&corr).partial_transpose())[0];
        if is_separable(&corr) != (pt_min >= 0.0) {
            mismatches += 1;
        }
    }
    outcome(
        worst <= 1e-12 && mismatches == 0,
        format!(
            "1000 tuples, trace norm max deviation {worst:.2e} (limit 1e-12), {mismatches} separability mismatches"
        ),
    )
}

fn decomposition_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let search = LsSearch::default();
    let (mut recon, mut sep_min, mut search_dev) = (0.0_f64, f64::INFINITY, 0.0_f64);
    for _ in 0..50 {
        let corr = sample_nonseparable_correlations(&mut rng);
        let ls = ls_decompose(&corr).expect("decomposition");
        let check = check_decomposition(&corr, &ls);
        recon = recon.max(check.reconstruction_error);
        sep_min = sep_min
            .min(check.sep_min_eigenvalue)
            .min(check.sep_pt_min_eigenvalue);
        let found = numeric_ls_search(&corr, &search, &mut rng);
        search_dev = search_dev.max((found - ls.sep_degree).abs());
    }
    outcome(
        recon <= 1e-10 && sep_min >= -1e-9 && search_dev <= 1e-3,
        format!(
            "50 tuples, reconstruction {recon:.2e} (limit 1e-10), separable-part min eigenvalue {sep_min:.2e} (limit -1e-9), search deviation {search_dev:.2e} (limit 1e-3)"
        ),
    )
}

fn steady_state_sanity() -> Outcome {
    let trunc = TruncationPolicy::default();
    let mut norm_dev = 0.0_f64;
    let mut points = 0;
    for (nex, nu) in [(1.0, 0.0), (1.0, 0.2), (3.0, 0.0), (5.0, 0.0)] {
        let config = sweep(nex, nu, 2000);
        for theta in config.grid() {
            let params = MaserParams::new(nex, nu, config.phi(theta)).unwrap();
            let dist = fock::steady_state(&params, &trunc).unwrap();
            norm_dev = norm_dev.max((dist.total() - 1.0).abs());
            points += 1;
        }
    }

    let mut thermal_dev = 0.0_f64;
    for nu in [0.0, 0.05, 0.2, 1.0, 3.0] {
        for phi in [0.0, 1e-7] {
            let dist =
                fock::steady_state(&MaserParams::new(2.0, nu, phi).unwrap(), &trunc).unwrap();
            let x = nu / (nu + 1.0);
            for (n, p) in dist.probs().iter().enumerate() {
                thermal_dev = thermal_dev.max((p - x.powi(n as i32) / (nu + 1.0)).abs());
            }
        }
    }

    let trapped = fock::steady_state(&MaserParams::new(1.0, 0.0, PI).unwrap(), &trunc).unwrap();
    let vacuum = trapped.probs() == PhotonDistribution::vacuum().probs();

    outcome(
        norm_dev <= 1e-12 && thermal_dev <= 1e-12 && vacuum,
        format!(
            "normalization max deviation {norm_dev:.2e} over {points} points, thermal limit deviation {thermal_dev:.2e}, trapping input gives {:?}",
            trapped.probs()
        ),
    )
}

fn grid_convergence() -> Outcome {
    let (_, coarse) = reported_peaks(&sweep(1.0, 0.0, 2000));
    let (_, fine) = reported_peaks(&sweep(1.0, 0.0, 4000));
    let partner = |p: &Peak, others: &[Peak]| {
        others
            .iter()
            .filter(|q| (q.theta_over_pi - p.theta_over_pi).abs() <= 0.01)
            .map(|q| (q.value - p.value).abs())
            .reduce(f64::min)
    };
    let mut worst = 0.0_f64;
    let mut unmatched = 0;
    for (a, b) in [(&coarse, &fine), (&fine, &coarse)] {
        for p in a.iter() {
            match partner(p, b) {
                Some(d) => worst = worst.max(d),
                None => unmatched += 1,
            }
        }
    }
    outcome(
        worst < 1e-4 && unmatched == 0,
        format!(
            "{} peaks at 2000 steps, {} at 4000, max change {worst:.2e} (limit 1e-4), {unmatched} unmatched",
            coarse.len(),
            fine.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "criterion 1: peak locations and values of 1-S",
            peak_reproduction,
        ),
        (
            "criterion 1 (supplement): 1-S at the reference peak positions",
            values_at_reference_locations,
        ),
        ("criterion 2: trends in maximum and grid sum of 1-S", trends),
        (
            "criterion 3: correlations vs dense operator traces",
            oracle_equivalence,
        ),
        (
            "criterion 4: closed forms vs spectra",
            closed_form_vs_spectral,
        ),
        (
            "criterion 5: decomposition soundness",
            decomposition_soundness,
        ),
        ("criterion 6: steady-state sanity", steady_state_sanity),
        (
            "criterion 7: grid convergence of peak values",
            grid_convergence,
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let out = check();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!out.pass);
        println!(
            "[{tag}] {name}: {} ({:.2}s)",
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
