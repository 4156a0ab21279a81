use crate::error::{Error, Result};
use crate::sawtooth::{Propagator, SawtoothParams};
use crate::scalar::Real;
use crate::stats::distribution::negative_fraction;
use crate::torus::StateVector;
use crate::wigner::WignerTransform;

/// Default |excess| threshold for the relaxation time.
pub const DEFAULT_THRESHOLD: f64 = 0.5;
/// Default number of consecutive samples that must satisfy a criterion.
pub const DEFAULT_HOLD: usize = 2;
/// P- level for the negativity crossing time.
pub const DEFAULT_NEGATIVITY_LEVEL: f64 = 0.45;

/// Per-step statistics of one evolving state.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationSeries<T: Real> {
    pub params: SawtoothParams,
    pub times: Vec<usize>,
    pub excess_series: Vec<T>,
    pub neg_fraction_series: Vec<T>,
    pub mean_series: Vec<T>,
    pub sigma_series: Vec<T>,
}

impl<T: Real> RelaxationSeries<T> {
    pub fn new(params: SawtoothParams) -> Self {
        Self {
            params,
            times: Vec::new(),
            excess_series: Vec::new(),
            neg_fraction_series: Vec::new(),
            mean_series: Vec::new(),
            sigma_series: Vec::new(),
        }
    }

    /// Evolves `initial` for `t_max` steps, recording the Wigner statistics at
    /// every t in 0..=t_max.
    pub fn record(params: SawtoothParams, initial: &StateVector<T>, t_max: usize) -> Result<Self> {
        let prop = Propagator::new(params)?;
        let transform = WignerTransform::new(params.dim)?;
        let mut series = Self::new(params);
        let mut state = initial.clone();
        for t in 0..=t_max {
            if t > 0 {
                state = prop.step(&state)?;
            }
            let grid = transform.compute(&state)?;
            let m = grid.moments();
            let excess = m.excess().ok_or(Error::ZeroSigma)?;
            series.push(t, excess, negative_fraction(&grid), m.mean(), m.sigma())?;
        }
        Ok(series)
    }

    pub fn push(&mut self, t: usize, excess: T, neg_fraction: T, mean: T, sigma: T) -> Result<()> {
        let ok = match self.times.last() {
            None => t == 0,
            Some(&last) => t > last,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "times must start at 0 and increase strictly, got {t} after {:?}",
                self.times.last()
            )));
        }
        self.times.push(t);
        self.excess_series.push(excess);
        self.neg_fraction_series.push(neg_fraction);
        self.mean_series.push(mean);
        self.sigma_series.push(sigma);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// First sample index i such that `pred` holds on samples i..i+hold, all of
/// which must exist.
pub fn first_sustained<T: Copy>(
    values: &[T],
    hold: usize,
    pred: impl Fn(T) -> bool,
) -> Option<usize> {
    if hold == 0 || values.len() < hold {
        return None;
    }
    let mut run = 0;
    for (i, &v) in values.iter().enumerate() {
        if pred(v) {
            run += 1;
            if run == hold {
                return Some(i + 1 - hold);
            }
        } else {
            run = 0;
        }
    }
    None
}

fn check_estimator<T: Real>(
    series: &RelaxationSeries<T>,
    threshold: f64,
    hold: usize,
) -> Result<()> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    if !(threshold > 0.0) || hold == 0 {
        return Err(Error::InvalidArgument(format!(
            "threshold must be > 0 and hold >= 1, got {threshold} and {hold}"
        )));
    }
    Ok(())
}

/// Smallest t with |excess| < threshold on `hold` consecutive samples from t.
pub fn relaxation_time<T: Real>(
    series: &RelaxationSeries<T>,
    threshold: f64,
    hold: usize,
) -> Result<Option<usize>> {
    check_estimator(series, threshold, hold)?;
    let thr = T::lit(threshold);
    Ok(first_sustained(&series.excess_series, hold, |e: T| e.abs() < thr).map(|i| series.times[i]))
}

/// Smallest t with P- >= level on `hold` consecutive samples from t.
pub fn negativity_time<T: Real>(
    series: &RelaxationSeries<T>,
    level: f64,
    hold: usize,
) -> Result<Option<usize>> {
    check_estimator(series, level, hold)?;
    let lvl = T::lit(level);
    Ok(
        first_sustained(&series.neg_fraction_series, hold, |p: T| p >= lvl)
            .map(|i| series.times[i]),
    )
}
