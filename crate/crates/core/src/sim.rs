//! Monte Carlo validation of the closed-form delay model.
//!
//! Each trial draws a cache placement and one distinct file request per
//! user, prices the two delivery phases with the finite-length link rates,
//! and normalizes the resulting per-user delays by `Z / ln P`. Averaging
//! over users and trials produces an empirical average user NDT that
//! converges to [`crate::model::aundt`] — exactly, per trial, under the
//! [`CacheModel::Fractional`] placement, and in expectation under
//! [`CacheModel::WholeFile`].
//!
//! Trials are independent: trial `t` runs on its own ChaCha stream derived
//! from `(seed, t)`, so results are bit-identical no matter how trials are
//! scheduled across threads. Aggregation always reduces in trial order.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{self, LinkRates, SystemParams};

/// How the edge-host cache holds a fraction `mu` of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheModel {
    /// Every file is cached to exactly the fraction `mu`. Deterministic;
    /// reproduces the closed form in every single trial.
    Fractional,
    /// A uniformly random subset of `floor(mu * n_files)` whole files is
    /// cached. Matches the closed form in expectation.
    WholeFile,
}

/// Monte Carlo configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub params: SystemParams,
    /// BSs (and users) per cluster.
    pub cluster_size: u32,
    /// Library size.
    pub n_files: u32,
    /// File length in bits.
    pub file_length: u64,
    /// Transmit power in watts, `> 1`.
    pub power: f64,
    /// Monte Carlo repetitions.
    pub trials: u32,
    /// Master RNG seed; trial `t` uses stream `t` of this seed.
    pub seed: u64,
    pub cache_model: CacheModel,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.params.check_cluster(self.cluster_size)?;
        if self.n_files < self.cluster_size {
            return Err(Error::LibraryTooSmall {
                n_files: self.n_files,
                cluster_size: self.cluster_size,
            });
        }
        if self.file_length == 0 {
            return Err(Error::InvalidParameters(
                "file length must be positive".into(),
            ));
        }
        if !self.power.is_finite() || self.power <= 1.0 {
            return Err(Error::InvalidPower(self.power));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameters(
                "at least one trial is required".into(),
            ));
        }
        Ok(())
    }
}

/// Per-file cached fractions for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct CachePlacement {
    pub model: CacheModel,
    /// Fraction of each file held in the cache; `mu` everywhere under
    /// [`CacheModel::Fractional`], `0.0` or `1.0` under
    /// [`CacheModel::WholeFile`].
    pub cached_fraction: Vec<f64>,
}

/// The four delay contributions of one user's delivery, in channel uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaySample {
    /// Cached content of the L served users over the shared EH backhaul.
    pub backhaul_eh: f64,
    /// This user's uncached content from the cloud.
    pub backhaul_cloud: f64,
    /// This user's cached content over the cooperative wireless stage.
    pub wireless_coop: f64,
    /// This user's uncached content over the interference stage.
    pub wireless_interference: f64,
}

impl DelaySample {
    pub fn total(&self) -> f64 {
        self.backhaul_eh + self.backhaul_cloud + self.wireless_coop + self.wireless_interference
    }
}

/// One trial's delays and normalized delivery times, indexed by in-cluster
/// position (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub per_user_delay: Vec<DelaySample>,
    pub per_user_ndt: Vec<f64>,
}

/// Aggregated Monte Carlo output.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Mean per-user NDT over all users and trials.
    pub empirical_aundt: f64,
    /// Standard error of the per-trial means; exactly zero when every trial
    /// produced the same value (e.g. the fractional cache model).
    pub std_error: f64,
    /// Mean NDT per in-cluster position (0-based).
    pub per_user_mean_ndt: Vec<f64>,
    /// Closed-form reference for the same parameters.
    pub analytic_aundt: f64,
}

/// Draws a cache placement for one trial.
pub fn place_cache(config: &SimConfig, rng: &mut impl Rng) -> CachePlacement {
    let n = config.n_files as usize;
    match config.cache_model {
        CacheModel::Fractional => CachePlacement {
            model: CacheModel::Fractional,
            cached_fraction: vec![config.params.mu; n],
        },
        CacheModel::WholeFile => {
            // mu * n_files can land an ulp below an exact integer
            // (0.7 * 500 rounds to 349.999...); nudge before flooring.
            let cached_count = (config.params.mu * n as f64 + 1e-9).floor() as usize;
            let mut cached_fraction = vec![0.0; n];
            for idx in rand::seq::index::sample(rng, n, cached_count.min(n)) {
                cached_fraction[idx] = 1.0;
            }
            CachePlacement {
                model: CacheModel::WholeFile,
                cached_fraction,
            }
        }
    }
}

/// Draws one distinct file id per user, uniformly without replacement.
pub fn draw_requests(config: &SimConfig, rng: &mut impl Rng) -> Result<Vec<u32>> {
    let m = config.cluster_size as usize;
    if (config.n_files as usize) < m {
        return Err(Error::LibraryTooSmall {
            n_files: config.n_files,
            cluster_size: config.cluster_size,
        });
    }
    Ok(rand::seq::index::sample(rng, config.n_files as usize, m)
        .into_iter()
        .map(|idx| idx as u32)
        .collect())
}

/// Splits a requested file into its cached and uncached bit counts.
///
/// Lengths are real-valued: the model is asymptotic in the file length, so
/// rounding to whole bits would only blur the fractional-cache oracle.
pub fn split_request(file_id: u32, placement: &CachePlacement, file_length: u64) -> (f64, f64) {
    let z = file_length as f64;
    let cached = placement.cached_fraction[file_id as usize] * z;
    (cached, z - cached)
}

/// Prices both delivery phases for the user at `position` (1-based).
///
/// The EH backhaul carries the combined cached content of the `L` users the
/// serving BS cooperates for; near the cluster edge the user window wraps
/// within the cluster so the backhaul load keeps exactly `L` summands, which
/// is what the closed form accounts for. The cooperative wireless stage
/// delivers the user's own cached part at that position's cooperative rate.
pub fn user_delay(
    position: u32,
    splits: &[(f64, f64)],
    rates: &LinkRates,
    config: &SimConfig,
) -> DelaySample {
    let m = config.cluster_size as i64;
    let j = position as i64 - 1;
    let half = i64::from((config.params.coop_reach - 1) / 2);
    let mut combined_cached = 0.0;
    for offset in -half..=half {
        let neighbor = (j + offset).rem_euclid(m) as usize;
        combined_cached += splits[neighbor].0;
    }
    let (cached, uncached) = splits[j as usize];
    DelaySample {
        backhaul_eh: combined_cached / rates.eh_bs,
        backhaul_cloud: uncached / rates.cloud_bs,
        wireless_coop: cached / rates.cooperative[j as usize],
        wireless_interference: uncached / rates.interference,
    }
}

/// Runs a single trial on the stream derived from `(config.seed, trial)`.
pub fn run_trial(config: &SimConfig, rates: &LinkRates, trial: u32) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(u64::from(trial));

    let placement = place_cache(config, &mut rng);
    let requests = draw_requests(config, &mut rng)?;
    let splits: Vec<(f64, f64)> = requests
        .iter()
        .map(|&file| split_request(file, &placement, config.file_length))
        .collect();

    let ndt_scale = config.power.ln() / config.file_length as f64;
    let per_user_delay: Vec<DelaySample> = (1..=config.cluster_size)
        .map(|j| user_delay(j, &splits, rates, config))
        .collect();
    let per_user_ndt = per_user_delay
        .iter()
        .map(|d| d.total() * ndt_scale)
        .collect();
    Ok(TrialOutcome {
        per_user_delay,
        per_user_ndt,
    })
}

/// Runs all configured trials (in parallel on the ambient rayon pool) and
/// aggregates them in trial order.
pub fn run_trials(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let rates = model::link_rates(&config.params, config.cluster_size, config.power)?;
    let analytic_aundt = model::aundt(&config.params, config.cluster_size)?;
    let m = config.cluster_size as usize;

    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, &rates, t))
        .collect::<Result<_>>()?;

    let trial_means: Vec<f64> = outcomes
        .iter()
        .map(|o| o.per_user_ndt.iter().sum::<f64>() / m as f64)
        .collect();
    let n = trial_means.len() as f64;
    let empirical_aundt = trial_means.iter().sum::<f64>() / n;

    // Identical trials (fractional model, or mu in {0, 1}) must report an
    // exact zero, not accumulated rounding noise.
    let all_equal = trial_means.iter().all(|&v| v == trial_means[0]);
    let std_error = if trial_means.len() < 2 || all_equal {
        0.0
    } else {
        let var = trial_means
            .iter()
            .map(|&v| (v - empirical_aundt).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        (var / n).sqrt()
    };

    let mut per_user_mean_ndt = vec![0.0; m];
    for outcome in &outcomes {
        for (acc, &ndt) in per_user_mean_ndt.iter_mut().zip(&outcome.per_user_ndt) {
            *acc += ndt;
        }
    }
    for acc in &mut per_user_mean_ndt {
        *acc /= n;
    }

    Ok(SimResult {
        empirical_aundt,
        std_error,
        per_user_mean_ndt,
        analytic_aundt,
    })
}
