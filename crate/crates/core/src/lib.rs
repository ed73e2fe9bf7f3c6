//! Delay-aware deployment planning for cache-enabled edge clusters.
//!
//! A partially connected wireless network is served by edge hosts, each
//! fronting a linear cluster of `M` base stations that cooperate to deliver
//! cached content. This crate answers three questions about such networks:
//!
//! - **How slow is a given deployment?** [`model`] evaluates the average
//!   user normalized delivery time (AUNDT) in closed form, together with
//!   its per-user breakdown and link-rate inputs.
//! - **How many base stations should share one edge host?** [`optimizer`]
//!   minimizes the AUNDT over the cluster size via convex relaxation plus
//!   integer rounding, and computes the minimal backhaul-rate or
//!   cache-capacity increase that compensates a forced sub-optimal density.
//! - **Does the closed form hold up?** [`sim`] replays the two-phase
//!   backhaul/wireless delivery pipeline trial by trial and checks that the
//!   empirical delay converges to the formula.
//!
//! ```
//! use edgeplan_core::{aundt, optimal_density, SystemParams};
//!
//! let params = SystemParams::new(0.7, 1.5, 60.0, 1.0, 5).unwrap();
//! let solution = optimal_density(&params, 200).unwrap();
//! assert_eq!(solution.rounded, 7);
//! assert!((aundt(&params, solution.rounded).unwrap() - 3.575).abs() < 1e-12);
//! ```

pub mod error;
pub mod model;
pub mod optimizer;
pub mod sim;

pub use error::{Error, Result};
pub use model::{
    aundt, aundt_lower_bound, coop_link_count, cooperation_loss, link_rates, user_ndt,
    DeploymentPlan, LinkRates, NdtBreakdown, SystemParams,
};
pub use optimizer::{
    adjust_backhaul_rate, adjust_cache_capacity, optimal_density, parameter_adjustment,
    relaxed_objective, relaxed_optimum, verify_adjustment, AdjustmentSolution, DensitySolution,
};
pub use sim::{
    draw_requests, place_cache, run_trial, run_trials, split_request, user_delay, CacheModel,
    CachePlacement, DelaySample, SimConfig, SimResult, TrialOutcome,
};
