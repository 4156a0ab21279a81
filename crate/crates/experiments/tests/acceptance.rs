//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use torus_wigner::wigner::{expected_mean, position_marginal};
use torus_wigner::{
    lyapunov, negative_fraction, wigner_fast, wigner_naive, SawtoothParams, SawtoothPropagator,
    State,
};
use torus_wigner_experiments::config::*;
use torus_wigner_experiments::runs::SeriesCell;
use torus_wigner_experiments::{execute, rerun, Experiment, Report, RunManifest, RunOptions};

const DIMS: [usize; 4] = [3, 27, 243, 2187];
const SERIES_DIMS: [usize; 3] = [243, 729, 2187];
const KICKS: [f64; 3] = [0.5, 1.0, 2.0];

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

/// Largest relative deviation from the mean, |x - mean| / mean.
fn spread(xs: &[f64]) -> f64 {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    xs.iter()
        .map(|x| (x - mean).abs() / mean)
        .fold(0.0, f64::max)
}

fn test_states(dim: usize) -> Vec<(String, State)> {
    let mut states = vec![
        ("position".to_string(), State::position(dim, 0).unwrap()),
        (
            "coherent".to_string(),
            State::coherent(dim, 0.0, 0.0).unwrap(),
        ),
    ];
    for seed in 1..=5 {
        states.push((format!("random({seed})"), State::random(dim, seed).unwrap()));
    }
    states
}

fn criterion_moments_and_marginals() -> (Outcome, Outcome) {
    let mut worst_mean = 0.0f64;
    let mut worst_var = 0.0f64;
    let mut worst_marginal = 0.0f64;
    for dim in DIMS {
        let target = expected_mean::<f64>(dim);
        let scale = dim as f64 / ((dim - 1) as f64).sqrt();
        for (_, psi) in test_states(dim) {
            let grid = wigner_fast(&psi).unwrap();
            worst_mean = worst_mean.max((grid.mean() - target).abs());
            worst_var = worst_var.max((grid.variance() - 1.0).abs());
            for (m, a) in position_marginal(&grid).iter().zip(psi.amplitudes()) {
                worst_marginal = worst_marginal.max((m - scale * a.norm_sqr()).abs());
            }
        }
    }
    (
        outcome(
            worst_mean <= 1e-10 && worst_var <= 1e-9,
            format!("max |mean - (N-1)^-1/2| = {worst_mean:.2e}, max |var - 1| = {worst_var:.2e}"),
        ),
        outcome(
            worst_marginal <= 1e-10,
            format!("max marginal error = {worst_marginal:.2e}"),
        ),
    )
}

fn criterion_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for dim in [3, 9, 27] {
        for seed in 0..20 {
            let psi = State::random(dim, 1000 + seed).unwrap();
            let diff = wigner_fast(&psi)
                .unwrap()
                .max_abs_diff(&wigner_naive(&psi).unwrap());
            worst = worst.max(diff);
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max |fast - naive| = {worst:.2e} over 60 states"),
    )
}

fn criterion_unitarity() -> Outcome {
    let prop = SawtoothPropagator::new(SawtoothParams::new(0.5, 2187).unwrap()).unwrap();
    let mut psi = State::coherent(2187, 0.0, 0.0).unwrap();
    let mut drift = 0.0f64;
    for _ in 0..100 {
        psi = prop.step(&psi).unwrap();
        drift = drift.max((psi.norm_sqr() - 1.0).abs());
    }

    let prop = SawtoothPropagator::new(SawtoothParams::new(0.5, 243).unwrap()).unwrap();
    let start = State::random(243, 7).unwrap();
    let mut psi = prop.evolve(&start, 100).unwrap();
    for _ in 0..100 {
        psi = prop.adjoint_step(&psi).unwrap();
    }
    let round_trip = psi
        .amplitudes()
        .iter()
        .zip(start.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    outcome(
        drift <= 1e-12 && round_trip <= 1e-10,
        format!("norm drift = {drift:.2e} (N=2187), round trip = {round_trip:.2e} (N=243)"),
    )
}

fn criterion_ensemble(out: &Path) -> Outcome {
    let exp = Experiment::Ensemble(EnsembleConfig {
        dim: 2187,
        samples: 20,
        seed: 1,
        bins: DEFAULT_BINS,
    });
    let Report::Ensemble(r) = execute(&exp, out, RunOptions::default()).unwrap().report else {
        unreachable!()
    };
    let pass = r.mean_excess.abs() <= 0.05
        && r.sup_distance <= 0.01
        && (r.mean_neg_fraction - 0.5).abs() <= 0.02;
    outcome(
        pass,
        format!(
            "mean excess = {:.4}, CDF sup-distance = {:.4}, mean P- = {:.4}",
            r.mean_excess, r.sup_distance, r.mean_neg_fraction
        ),
    )
}

fn relaxation_times(cells: &[SeriesCell]) -> Option<Vec<f64>> {
    cells
        .iter()
        .map(|c| c.relaxation_time.map(|t| t as f64))
        .collect()
}

fn criterion_scaling_in_n(out: &Path) -> Outcome {
    let exp = Experiment::ExcessN(ExcessNConfig {
        kick: 0.5,
        dims: SERIES_DIMS.to_vec(),
        t_max_factor: DEFAULT_T_MAX_FACTOR,
        q0: 0.0,
        p0: 0.0,
        threshold: 0.5,
        hold: 2,
    });
    let Report::ExcessN(r) = execute(&exp, out, RunOptions::default()).unwrap().report else {
        unreachable!()
    };
    let Some(t_r) = relaxation_times(&r.cells) else {
        return outcome(false, "relaxation not reached for some N");
    };
    let scaled: Vec<f64> = t_r
        .iter()
        .zip(&r.cells)
        .map(|(t, c)| t / c.log_dim)
        .collect();
    let increasing = t_r.windows(2).all(|w| w[0] < w[1]);
    let dev = spread(&scaled);
    outcome(
        dev <= 0.30 && increasing,
        format!(
            "t_r = {t_r:?}, t_r/ln N = {scaled:.3?}, max deviation {:.1}%",
            100.0 * dev
        ),
    )
}

fn criterion_scaling_in_k(out: &Path) -> Outcome {
    let exp = Experiment::ExcessK(ExcessKConfig {
        kicks: KICKS.to_vec(),
        dim: 2187,
        t_max: time_horizon(2187, DEFAULT_T_MAX_FACTOR),
        q0: 0.0,
        p0: 0.0,
        threshold: 0.5,
        hold: 2,
    });
    let Report::ExcessK(r) = execute(&exp, out, RunOptions::default()).unwrap().report else {
        unreachable!()
    };
    let Some(t_r) = relaxation_times(&r.cells) else {
        return outcome(false, "relaxation not reached for some K");
    };
    let lambda_t: Vec<f64> = t_r
        .iter()
        .zip(&r.cells)
        .map(|(t, c)| c.lyapunov.unwrap() * t)
        .collect();
    let decreasing = t_r.windows(2).all(|w| w[0] > w[1]);
    let dev = spread(&lambda_t);

    // lambda column of the K = 0.5 file, parsed back from text.
    let text = fs::read_to_string(out.join(&r.cells[0].file)).unwrap();
    let row = text
        .lines()
        .find(|l| !l.starts_with('#') && !l.starts_with('t'))
        .unwrap();
    let lambda_col: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    let exact = lambda_col == std::f64::consts::LN_2
        && lyapunov::<f64>(0.5).unwrap() == std::f64::consts::LN_2;

    outcome(
        dev <= 0.35 && decreasing && exact,
        format!(
            "t_r = {t_r:?}, lambda*t_r = {lambda_t:.3?}, max deviation {:.1}%, lambda(0.5) column = {lambda_col:e}",
            100.0 * dev
        ),
    )
}

fn criterion_negativity(out: &Path) -> Outcome {
    let exp = Experiment::Negativity(NegativityConfig {
        kick: 0.5,
        dims: SERIES_DIMS.to_vec(),
        t_max_factor: DEFAULT_T_MAX_FACTOR,
        q0: 0.0,
        p0: 0.0,
        level: 0.45,
        threshold: 0.5,
        hold: 2,
    });
    let Report::Negativity(r) = execute(&exp, out, RunOptions::default()).unwrap().report else {
        unreachable!()
    };
    let mut pass = true;
    let mut notes = Vec::new();
    let mut scaled = Vec::new();
    for c in &r.cells {
        // Reaches the band and never leaves it again.
        let last_out = c.neg_fraction.iter().rposition(|p| (p - 0.5).abs() > 0.02);
        let holds = match last_out {
            None => true,
            Some(i) => i + 1 < c.neg_fraction.len(),
        };
        let tail = c.neg_fraction[c.neg_fraction.len() - 5..]
            .iter()
            .map(|p| (p - 0.5).abs())
            .fold(0.0, f64::max);
        let ordered =
            matches!((c.negativity_time, c.relaxation_time), (Some(tc), Some(tr)) if tc < tr);
        pass &= holds && ordered;
        if let Some(tc) = c.negativity_time {
            scaled.push(tc as f64 / c.log_dim);
        }
        notes.push(format!(
            "N={}: holds={holds} tail |P- - 1/2| max {tail:.4}, t_c={:?} t_r={:?}",
            c.dim, c.negativity_time, c.relaxation_time
        ));
    }
    let dev = if scaled.len() == r.cells.len() {
        spread(&scaled)
    } else {
        f64::INFINITY
    };
    pass &= dev <= 0.30;
    notes.push(format!(
        "t_c/ln N = {scaled:.3?}, max deviation {:.1}%",
        100.0 * dev
    ));
    outcome(pass, notes.join("; "))
}

fn criterion_hand_case() -> Outcome {
    let grid = wigner_fast(&State::position(3, 0).unwrap()).unwrap();
    let peak = 3.0 / 2f64.sqrt();
    let mut worst = 0.0f64;
    for n in -1..=1i64 {
        for m in -1..=1i64 {
            let want = if n == 0 { peak } else { 0.0 };
            worst = worst.max((grid.get(n, m) - want).abs());
        }
    }
    let excess = grid.moments().excess().unwrap();
    let checks = [
        worst,
        (grid.mean() - 1.0 / 2f64.sqrt()).abs(),
        (grid.variance() - 1.0).abs(),
        (excess + 1.5).abs(),
        negative_fraction(&grid),
    ];
    let max = checks.iter().cloned().fold(0.0, f64::max);
    outcome(
        max <= 1e-12,
        format!(
            "grid error {worst:.1e}, excess {excess:.15}, P- {}, max error {max:.1e}",
            checks[4]
        ),
    )
}

fn csv_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect()
}

fn criterion_determinism(out: &Path) -> Outcome {
    let experiments = [
        Experiment::Snapshots(SnapshotsConfig {
            kick: 0.5,
            dim: 81,
            q0: 0.0,
            p0: 0.0,
            times: default_snapshot_times(81),
            bins: 51,
        }),
        Experiment::ExcessN(ExcessNConfig {
            kick: 0.5,
            dims: vec![27, 81],
            t_max_factor: DEFAULT_T_MAX_FACTOR,
            q0: 0.1,
            p0: -0.2,
            threshold: 0.5,
            hold: 2,
        }),
        Experiment::ExcessK(ExcessKConfig {
            kicks: vec![0.5, 1.0, 2.0],
            dim: 81,
            t_max: 20,
            q0: 0.0,
            p0: 0.0,
            threshold: 0.5,
            hold: 2,
        }),
        Experiment::Negativity(NegativityConfig {
            kick: 0.5,
            dims: vec![27, 81],
            t_max_factor: DEFAULT_T_MAX_FACTOR,
            q0: 0.0,
            p0: 0.0,
            level: 0.45,
            threshold: 0.5,
            hold: 2,
        }),
        Experiment::Ensemble(EnsembleConfig {
            dim: 81,
            samples: 6,
            seed: 42,
            bins: 61,
        }),
        Experiment::Wigner(WignerConfig {
            dim: 45,
            state: InitialState::Random { seed: 3 },
            kick: 1.0,
            steps: 4,
        }),
    ];
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for exp in &experiments {
        let first = out.join(format!("{}-1", exp.id()));
        let second = out.join(format!("{}-2", exp.id()));
        execute(
            exp,
            &first,
            RunOptions {
                threads: 1,
                emit_plot_script: true,
            },
        )
        .unwrap();
        let manifest = RunManifest::read(&first.join("manifest.json")).unwrap();
        rerun(&manifest, &second, Some(3)).unwrap();
        let (a, b) = (csv_bytes(&first), csv_bytes(&second));
        compared += a.len();
        if a.is_empty() || a != b {
            mismatches.push(exp.id());
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{compared} CSVs over {} experiments, threads 1 vs 3, mismatches {mismatches:?}",
            experiments.len()
        ),
    )
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        }
    }
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().unwrap();
    let sub = |name: &str| dir.path().join(name);
    let start = Instant::now();

    let (moments, marginals) = match catch_unwind(criterion_moments_and_marginals) {
        Ok(pair) => pair,
        Err(_) => (outcome(false, "panicked"), outcome(false, "panicked")),
    };
    let results = vec![
        ("1 moment identities", moments),
        (
            "2 fast transform matches direct sum",
            guarded(criterion_oracle),
        ),
        ("3 position marginal", marginals),
        (
            "4 unitarity and reversibility",
            guarded(criterion_unitarity),
        ),
        (
            "5 random-state Gaussianity",
            guarded(|| criterion_ensemble(&sub("ensemble"))),
        ),
        (
            "6 relaxation time scales with ln N",
            guarded(|| criterion_scaling_in_n(&sub("excess-n"))),
        ),
        (
            "7 relaxation time scales with 1/lambda",
            guarded(|| criterion_scaling_in_k(&sub("excess-k"))),
        ),
        (
            "8 negative fraction approaches 1/2",
            guarded(|| criterion_negativity(&sub("negativity"))),
        ),
        ("9 N=3 position state by hand", guarded(criterion_hand_case)),
        (
            "10 reruns are byte-identical",
            guarded(|| criterion_determinism(&sub("rerun"))),
        ),
    ];

    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag} ({})", o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
