//! The experiment drivers. Each writes its CSVs into the run directory and
//! returns a report; [`execute`] adds the summary, manifest and plot script.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use torus_wigner::stats::{
    ensemble_gaussianity_with_bins, kolmogorov_distance, negativity_time, relaxation_time,
    value_distribution,
};
use torus_wigner::{
    lyapunov, GaussianReference, Real, SawtoothParams, SawtoothPropagator, Series, State,
    Transform, RNG_IDENTITY,
};

use crate::config::*;
use crate::error::{ExperimentError, Result};
use crate::manifest::{CellParams, Conventions, Estimators, RunManifest};
use crate::output::{real, Csv};
use crate::plot::{script, PLOT_FILE};

pub const SUMMARY_FILE: &str = "summary.json";
pub const REFERENCE_FILE: &str = "gaussian.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub emit_plot_script: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            threads: 0,
            emit_plot_script: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: usize,
    pub mean: f64,
    pub sigma: f64,
    pub excess: f64,
    pub neg_fraction: f64,
    /// Kolmogorov distance of the raw values to the Gaussian reference.
    pub sup_distance: f64,
    /// sum density * width of the emitted histogram.
    pub mass: f64,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotsReport {
    pub kick: f64,
    pub dim: usize,
    pub snapshots: Vec<Snapshot>,
    pub reference_file: String,
}

/// One (K, N) time series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesCell {
    pub kick: f64,
    pub dim: usize,
    pub log_dim: f64,
    pub lyapunov: Option<f64>,
    pub times: Vec<usize>,
    pub excess: Vec<f64>,
    pub neg_fraction: Vec<f64>,
    pub relaxation_time: Option<usize>,
    pub negativity_time: Option<usize>,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcessNReport {
    pub kick: f64,
    pub cells: Vec<SeriesCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcessKReport {
    pub dim: usize,
    pub cells: Vec<SeriesCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativityReport {
    pub kick: f64,
    pub cells: Vec<SeriesCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean_excess: f64,
    pub mean_neg_fraction: f64,
    pub sup_distance: f64,
    pub samples_file: String,
    pub histogram_file: String,
    pub reference_file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerReport {
    pub dim: usize,
    pub mean: f64,
    pub variance: f64,
    pub excess: f64,
    pub neg_fraction: f64,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum Report {
    Snapshots(SnapshotsReport),
    ExcessN(ExcessNReport),
    ExcessK(ExcessKReport),
    Negativity(NegativityReport),
    Ensemble(EnsembleReport),
    Wigner(WignerReport),
}

impl Report {
    pub fn files(&self) -> Vec<String> {
        match self {
            Report::Snapshots(r) => {
                let mut f: Vec<_> = r.snapshots.iter().map(|s| s.file.clone()).collect();
                f.push(r.reference_file.clone());
                f
            }
            Report::ExcessN(r) => r.cells.iter().map(|c| c.file.clone()).collect(),
            Report::ExcessK(r) => r.cells.iter().map(|c| c.file.clone()).collect(),
            Report::Negativity(r) => r.cells.iter().map(|c| c.file.clone()).collect(),
            Report::Ensemble(r) => vec![
                r.samples_file.clone(),
                r.histogram_file.clone(),
                r.reference_file.clone(),
            ],
            Report::Wigner(r) => vec![r.file.clone()],
        }
    }
}

/// Output of [`execute`].
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub report: Report,
    pub manifest: RunManifest,
}

/// Validates, runs, and writes CSVs, `summary.json`, `manifest.json` and,
/// if requested, `plot.gp` into `out`.
pub fn execute(experiment: &Experiment, out: &Path, options: RunOptions) -> Result<RunRecord> {
    experiment.validate()?;
    fs::create_dir_all(out)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| ExperimentError::ThreadPool(e.to_string()))?;
    let start = Instant::now();
    let report = pool.install(|| match experiment {
        Experiment::Snapshots(c) => run_snapshots(c, out).map(Report::Snapshots),
        Experiment::ExcessN(c) => run_excess_vs_n(c, out).map(Report::ExcessN),
        Experiment::ExcessK(c) => run_excess_vs_k(c, out).map(Report::ExcessK),
        Experiment::Negativity(c) => run_negativity(c, out).map(Report::Negativity),
        Experiment::Ensemble(c) => run_random_ensemble(c, out).map(Report::Ensemble),
        Experiment::Wigner(c) => run_wigner(c, out).map(Report::Wigner),
    })?;
    fs::write(
        out.join(SUMMARY_FILE),
        serde_json::to_string_pretty(&report)? + "\n",
    )?;
    let mut files = report.files();
    files.push(SUMMARY_FILE.into());
    if options.emit_plot_script {
        fs::write(out.join(PLOT_FILE), script(&report))?;
        files.push(PLOT_FILE.into());
    }
    let manifest = build_manifest(
        experiment,
        &report,
        options,
        start.elapsed().as_secs_f64(),
        files,
    );
    manifest.write(out)?;
    Ok(RunRecord { report, manifest })
}

/// Repeats the run described by a manifest into `out`.
pub fn rerun(manifest: &RunManifest, out: &Path, threads: Option<usize>) -> Result<RunRecord> {
    let options = RunOptions {
        threads: threads.unwrap_or(manifest.threads),
        emit_plot_script: manifest.emit_plot_script,
    };
    execute(&manifest.config, out, options)
}

fn build_manifest(
    experiment: &Experiment,
    report: &Report,
    options: RunOptions,
    seconds: f64,
    files: Vec<String>,
) -> RunManifest {
    let cell = |kick: f64, dim: usize, times: Vec<usize>| CellParams {
        kick,
        dim,
        period: 2.0 * std::f64::consts::PI / dim as f64,
        ergodic: kick > 0.0,
        times,
    };
    let series_cells = |cells: &[SeriesCell]| -> Vec<CellParams> {
        cells
            .iter()
            .map(|c| cell(c.kick, c.dim, c.times.clone()))
            .collect()
    };
    let mut estimators = Estimators {
        relaxation_threshold: None,
        negativity_level: None,
        hold: None,
        zero_floor: f64::zero_floor(),
    };
    let (initial_state, cells, bins) = match (experiment, report) {
        (Experiment::Snapshots(c), _) => (
            Some(InitialState::Coherent { q0: c.q0, p0: c.p0 }),
            vec![cell(c.kick, c.dim, sorted_times(&c.times))],
            Some(c.bins),
        ),
        (Experiment::ExcessN(c), Report::ExcessN(r)) => {
            estimators.relaxation_threshold = Some(c.threshold);
            estimators.hold = Some(c.hold);
            (
                Some(InitialState::Coherent { q0: c.q0, p0: c.p0 }),
                series_cells(&r.cells),
                None,
            )
        }
        (Experiment::ExcessK(c), Report::ExcessK(r)) => {
            estimators.relaxation_threshold = Some(c.threshold);
            estimators.hold = Some(c.hold);
            (
                Some(InitialState::Coherent { q0: c.q0, p0: c.p0 }),
                series_cells(&r.cells),
                None,
            )
        }
        (Experiment::Negativity(c), Report::Negativity(r)) => {
            estimators.relaxation_threshold = Some(c.threshold);
            estimators.negativity_level = Some(c.level);
            estimators.hold = Some(c.hold);
            (
                Some(InitialState::Coherent { q0: c.q0, p0: c.p0 }),
                series_cells(&r.cells),
                None,
            )
        }
        (Experiment::Ensemble(c), _) => (
            Some(InitialState::Random { seed: c.seed }),
            vec![],
            Some(c.bins),
        ),
        (Experiment::Wigner(c), _) => (
            Some(c.state),
            vec![cell(c.kick, c.dim, vec![c.steps])],
            None,
        ),
        _ => unreachable!("report kind always matches the experiment"),
    };
    RunManifest {
        experiment_id: experiment.id().into(),
        config: experiment.clone(),
        initial_state,
        cells,
        bins,
        estimators,
        rng: RNG_IDENTITY.into(),
        scalar: "f64".into(),
        conventions: Conventions::default(),
        software_version: env!("CARGO_PKG_VERSION").into(),
        threads: options.threads,
        emit_plot_script: options.emit_plot_script,
        wall_clock_seconds: seconds,
        files,
    }
}

fn sorted_times(times: &[usize]) -> Vec<usize> {
    let mut t = times.to_vec();
    t.sort_unstable();
    t.dedup();
    t
}

fn write_reference(out: &Path, reference: &GaussianReference, dim: usize) -> Result<String> {
    let mut csv = Csv::new();
    csv.comment(format!(
        "N={dim} center={} width={}",
        real(reference.center),
        real(reference.width)
    ))
    .header(&["w", "density"]);
    let steps = 640;
    for i in 0..=steps {
        let w = reference.center - 8.0 + 16.0 * i as f64 / steps as f64;
        csv.row(&[real(w), real(reference.density(w))]);
    }
    csv.write(&out.join(REFERENCE_FILE))?;
    Ok(REFERENCE_FILE.into())
}

/// Histogram snapshots of a coherent packet at the requested times.
pub fn run_snapshots(c: &SnapshotsConfig, out: &Path) -> Result<SnapshotsReport> {
    let params = SawtoothParams::new(c.kick, c.dim)?;
    let prop = SawtoothPropagator::new(params)?;
    let transform = Transform::new(c.dim)?;
    let reference = GaussianReference::new(c.dim)?;
    let mut state = State::coherent(c.dim, c.q0, c.p0)?;
    let mut now = 0;
    let mut snapshots = Vec::new();
    for t in sorted_times(&c.times) {
        state = prop.evolve(&state, t - now)?;
        now = t;
        let grid = transform.compute(&state)?;
        let dist = value_distribution(&grid, c.bins)?;
        let snap = Snapshot {
            t,
            mean: dist.mean,
            sigma: dist.sigma,
            excess: dist.excess()?,
            neg_fraction: dist.neg_fraction,
            sup_distance: kolmogorov_distance(grid.values(), &reference),
            mass: dist.total_mass(),
            file: format!("dist_t{t}.csv"),
        };
        let mut csv = Csv::new();
        csv.comment(format!("N={} K={} t={}", c.dim, c.kick, t))
            .comment(format!(
                "mean={} sigma={} excess={} neg_fraction={} sup_distance={}",
                real(snap.mean),
                real(snap.sigma),
                real(snap.excess),
                real(snap.neg_fraction),
                real(snap.sup_distance)
            ))
            .header(&["bin_center", "density"]);
        for (x, d) in dist.bin_centers().iter().zip(&dist.densities) {
            csv.row(&[real(*x), real(*d)]);
        }
        csv.write(&out.join(&snap.file))?;
        snapshots.push(snap);
    }
    Ok(SnapshotsReport {
        kick: c.kick,
        dim: c.dim,
        snapshots,
        reference_file: write_reference(out, &reference, c.dim)?,
    })
}

struct CellSpec {
    kick: f64,
    dim: usize,
    t_max: usize,
    q0: f64,
    p0: f64,
}

fn record_cell(
    spec: &CellSpec,
    threshold: f64,
    level: f64,
    hold: usize,
    file: String,
) -> Result<SeriesCell> {
    let params = SawtoothParams::new(spec.kick, spec.dim)?;
    let initial = State::coherent(spec.dim, spec.q0, spec.p0)?;
    let series = Series::record(params, &initial, spec.t_max)?;
    Ok(SeriesCell {
        kick: spec.kick,
        dim: spec.dim,
        log_dim: (spec.dim as f64).ln(),
        lyapunov: lyapunov(spec.kick).ok(),
        relaxation_time: relaxation_time(&series, threshold, hold)?,
        negativity_time: negativity_time(&series, level, hold)?,
        times: series.times,
        excess: series.excess_series,
        neg_fraction: series.neg_fraction_series,
        file,
    })
}

fn cell_comment(csv: &mut Csv, cell: &SeriesCell) {
    csv.comment(format!(
        "N={} K={} ln_N={}",
        cell.dim,
        cell.kick,
        real(cell.log_dim)
    ));
    let fmt = |t: Option<usize>| t.map_or("none".to_string(), |t| t.to_string());
    csv.comment(format!(
        "relaxation_time={} negativity_time={}",
        fmt(cell.relaxation_time),
        fmt(cell.negativity_time)
    ));
}

/// Excess of a coherent packet against t / ln N for several N.
pub fn run_excess_vs_n(c: &ExcessNConfig, out: &Path) -> Result<ExcessNReport> {
    let cells = c
        .dims
        .par_iter()
        .map(|&dim| {
            let spec = CellSpec {
                kick: c.kick,
                dim,
                t_max: time_horizon(dim, c.t_max_factor),
                q0: c.q0,
                p0: c.p0,
            };
            record_cell(
                &spec,
                c.threshold,
                DEFAULT_LEVEL,
                c.hold,
                format!("excess_N{dim}.csv"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    for cell in &cells {
        let mut csv = Csv::new();
        cell_comment(&mut csv, cell);
        csv.header(&["t", "t_over_logN", "excess"]);
        for (t, e) in cell.times.iter().zip(&cell.excess) {
            csv.row(&[t.to_string(), real(*t as f64 / cell.log_dim), real(*e)]);
        }
        csv.write(&out.join(&cell.file))?;
    }
    Ok(ExcessNReport {
        kick: c.kick,
        cells,
    })
}

/// Excess at fixed N for several K, with the lambda-scaled time column.
pub fn run_excess_vs_k(c: &ExcessKConfig, out: &Path) -> Result<ExcessKReport> {
    let cells = c
        .kicks
        .par_iter()
        .map(|&kick| {
            let spec = CellSpec {
                kick,
                dim: c.dim,
                t_max: c.t_max,
                q0: c.q0,
                p0: c.p0,
            };
            record_cell(
                &spec,
                c.threshold,
                DEFAULT_LEVEL,
                c.hold,
                format!("excess_K{kick}.csv"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    for cell in &cells {
        let lambda = cell.lyapunov.expect("validated K > 0");
        let mut csv = Csv::new();
        cell_comment(&mut csv, cell);
        csv.comment(format!("lambda={}", real(lambda)));
        csv.header(&["t", "t_over_logN", "excess", "lambda", "lambda_t_over_logN"]);
        for (t, e) in cell.times.iter().zip(&cell.excess) {
            let s = *t as f64 / cell.log_dim;
            csv.row(&[
                t.to_string(),
                real(s),
                real(*e),
                real(lambda),
                real(lambda * s),
            ]);
        }
        csv.write(&out.join(&cell.file))?;
    }
    Ok(ExcessKReport { dim: c.dim, cells })
}

/// P- of a coherent packet against t / ln N for several N.
pub fn run_negativity(c: &NegativityConfig, out: &Path) -> Result<NegativityReport> {
    let cells = c
        .dims
        .par_iter()
        .map(|&dim| {
            let spec = CellSpec {
                kick: c.kick,
                dim,
                t_max: time_horizon(dim, c.t_max_factor),
                q0: c.q0,
                p0: c.p0,
            };
            record_cell(
                &spec,
                c.threshold,
                c.level,
                c.hold,
                format!("neg_N{dim}.csv"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    for cell in &cells {
        let mut csv = Csv::new();
        cell_comment(&mut csv, cell);
        csv.header(&["t", "t_over_logN", "neg_fraction"]);
        for (t, p) in cell.times.iter().zip(&cell.neg_fraction) {
            csv.row(&[t.to_string(), real(*t as f64 / cell.log_dim), real(*p)]);
        }
        csv.write(&out.join(&cell.file))?;
    }
    Ok(NegativityReport {
        kick: c.kick,
        cells,
    })
}

/// Gaussianity of random states: per-sample statistics, pooled histogram
/// and the Gaussian reference.
pub fn run_random_ensemble(c: &EnsembleConfig, out: &Path) -> Result<EnsembleReport> {
    let summary = ensemble_gaussianity_with_bins::<f64>(c.dim, c.samples, c.seed, c.bins)?;
    let reference = GaussianReference::new(c.dim)?;
    let header = format!(
        "N={} samples={} seed={} mean_excess={} mean_neg_fraction={} sup_distance={}",
        c.dim,
        c.samples,
        c.seed,
        real(summary.mean_excess),
        real(summary.mean_neg_fraction),
        real(summary.sup_distance)
    );

    let samples_file = "ensemble_samples.csv".to_string();
    let mut csv = Csv::new();
    csv.comment(&header)
        .header(&["sample", "excess", "neg_fraction", "mean", "sigma"]);
    for (i, s) in summary.samples.iter().enumerate() {
        csv.row(&[
            i.to_string(),
            real(s.excess),
            real(s.neg_fraction),
            real(s.mean),
            real(s.sigma),
        ]);
    }
    csv.write(&out.join(&samples_file))?;

    let histogram_file = "pooled_hist.csv".to_string();
    let mut csv = Csv::new();
    csv.comment(&header).header(&["bin_center", "density"]);
    for (e, d) in summary
        .pooled_edges
        .windows(2)
        .zip(&summary.pooled_densities)
    {
        csv.row(&[real(0.5 * (e[0] + e[1])), real(*d)]);
    }
    csv.write(&out.join(&histogram_file))?;

    Ok(EnsembleReport {
        dim: c.dim,
        samples: c.samples,
        seed: c.seed,
        mean_excess: summary.mean_excess,
        mean_neg_fraction: summary.mean_neg_fraction,
        sup_distance: summary.sup_distance,
        samples_file,
        histogram_file,
        reference_file: write_reference(out, &reference, c.dim)?,
    })
}

/// Grid dump of one state: rows over n, columns over m, symmetric order.
pub fn run_wigner(c: &WignerConfig, out: &Path) -> Result<WignerReport> {
    let mut state = match c.state {
        InitialState::Coherent { q0, p0 } => State::coherent(c.dim, q0, p0)?,
        InitialState::Random { seed } => State::random(c.dim, seed)?,
        InitialState::Position { n0 } => State::position(c.dim, n0)?,
    };
    if c.steps > 0 {
        let prop = SawtoothPropagator::new(SawtoothParams::new(c.kick, c.dim)?)?;
        state = prop.evolve(&state, c.steps)?;
    }
    let grid = Transform::new(c.dim)?.compute(&state)?;
    let file = format!("wigner_N{}.csv", c.dim);
    let mut csv = Csv::new();
    csv.comment(format!(
        "N={} mean={} sigma2={}",
        c.dim,
        real(grid.mean()),
        real(grid.variance())
    ));
    for row in grid.values().chunks(c.dim) {
        csv.row(&row.iter().map(|v| real(*v)).collect::<Vec<_>>());
    }
    csv.write(&out.join(&file))?;
    Ok(WignerReport {
        dim: c.dim,
        mean: grid.mean(),
        variance: grid.variance(),
        excess: grid
            .moments()
            .excess()
            .ok_or(torus_wigner::Error::ZeroSigma)?,
        neg_fraction: torus_wigner::negative_fraction(&grid),
        file,
    })
}
