//! Shared scenarios for the benchmark targets.

use edgeplan_core::{CacheModel, SimConfig, SystemParams};

/// The partial-cache sweep scenario used across benchmarks.
pub fn sweep_params() -> SystemParams {
    SystemParams::new(0.7, 1.5, 60.0, 1.0, 5).expect("valid benchmark parameters")
}

pub fn sim_config(cache_model: CacheModel, trials: u32) -> SimConfig {
    SimConfig {
        params: sweep_params(),
        cluster_size: 7,
        n_files: 500,
        file_length: 1_000_000,
        power: 20.0,
        trials,
        seed: 42,
        cache_model,
    }
}
