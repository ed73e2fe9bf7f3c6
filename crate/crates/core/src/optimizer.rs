//! Deployment-density optimization and parameter compensation.
//!
//! For `mu > 0` the average user NDT depends on the cluster size `M` only
//! through `M*L/lambda + 2*G(L)/(beta*M)`, a convex function of `M` with
//! real minimizer `sqrt(2*lambda*G(L) / (beta*L))`. [`optimal_density`]
//! relaxes the integrality constraint, clamps the minimizer to the feasible
//! region `M >= L`, and reports both the nearest-integer rounding and the
//! audited integer argmin (the two can differ, since nearest-integer
//! rounding of a convex minimizer is not always the integer argmin).
//!
//! When the optimal density cannot be deployed, [`adjust_backhaul_rate`] and
//! [`adjust_cache_capacity`] compute the smallest single-parameter increase
//! (of `lambda` or `mu`) that restores the optimal-density delay at a
//! smaller cluster size `M' <= M*`.

use crate::error::{Error, Result};
use crate::model::{aundt, aundt_with_loss, cooperation_loss, SystemParams};

/// Output of [`optimal_density`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySolution {
    /// Minimizer of the relaxed (real-valued) problem, clamped to `>= L`.
    pub relaxed: f64,
    /// Nearest-integer rounding of `relaxed`, clamped to `>= L`.
    pub rounded: u32,
    /// Integer argmin of [`aundt`] over cluster sizes `>= L`; ties break to
    /// the smaller (cheaper) size.
    pub exact: u32,
    /// `true` iff `mu = 0`, where every feasible density is optimal and `L`
    /// is returned as the canonical choice.
    pub degenerate: bool,
}

/// Compensated parameters restoring the `M*` delay at a smaller density.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustmentSolution {
    /// The sub-optimal density `M'` being compensated.
    pub target_density: u32,
    /// Minimal EH-BS rate exponent achieving the reference delay at
    /// `target_density`, when one exists.
    pub adjusted_lambda: Option<f64>,
    /// Minimal cache ratio achieving the reference delay at
    /// `target_density`. Present but infeasible when it exceeds 1.
    pub adjusted_mu: Option<f64>,
    /// `false` when the required cache ratio exceeds 1, when caching does
    /// not reduce delay at `target_density`, or when `mu = 0`.
    pub mu_feasible: bool,
    /// `false` when no finite backhaul rate can compensate.
    pub lambda_feasible: bool,
}

/// The relaxed objective: average user NDT with the cluster size treated as
/// a real number `m >= L`.
pub fn relaxed_objective(params: &SystemParams, cluster_size: f64) -> Result<f64> {
    params.validate()?;
    if !cluster_size.is_finite() || cluster_size < f64::from(params.coop_reach) {
        return Err(Error::InvalidParameters(format!(
            "relaxed cluster size {cluster_size} is below the cooperation reach {}",
            params.coop_reach
        )));
    }
    let loss = cooperation_loss(params.coop_reach)?;
    Ok(aundt_with_loss(params, cluster_size, loss))
}

/// Minimizer of the relaxed problem: `max(L, sqrt(2*lambda*G(L)/(beta*L)))`
/// for `mu > 0`. For `mu = 0` the objective is flat in the cluster size and
/// `L` is returned.
pub fn relaxed_optimum(params: &SystemParams) -> Result<f64> {
    params.validate()?;
    let reach = f64::from(params.coop_reach);
    if params.mu == 0.0 {
        return Ok(reach);
    }
    let loss = cooperation_loss(params.coop_reach)?;
    let unconstrained = (2.0 * params.lambda * loss / (params.beta * reach)).sqrt();
    Ok(unconstrained.max(reach))
}

/// Optimal deployment density: relaxed minimizer, its nearest-integer
/// rounding, and the audited integer argmin.
///
/// `scan_limit` bounds the debug-build audit that checks `exact` against a
/// brute-force scan; it must be at least the cooperation reach.
pub fn optimal_density(params: &SystemParams, scan_limit: u32) -> Result<DensitySolution> {
    params.validate()?;
    if scan_limit < params.coop_reach {
        return Err(Error::InvalidParameters(format!(
            "scan limit {scan_limit} is below the cooperation reach {}",
            params.coop_reach
        )));
    }
    let reach = params.coop_reach;
    let relaxed = relaxed_optimum(params)?;
    if params.mu == 0.0 {
        return Ok(DensitySolution {
            relaxed,
            rounded: reach,
            exact: reach,
            degenerate: true,
        });
    }
    let rounded = ((relaxed - 0.5).ceil() as u32).max(reach);

    // Convexity puts the integer argmin at floor or ceil of the clamped
    // relaxed minimizer; prefer the smaller size on ties.
    let floor = (relaxed.floor() as u32).max(reach);
    let ceil = (relaxed.ceil() as u32).max(reach);
    let exact = if aundt(params, ceil)? < aundt(params, floor)? {
        ceil
    } else {
        floor
    };
    debug_assert!({
        let scan_best = (reach..=scan_limit.max(ceil))
            .map(|m| aundt(params, m).expect("feasible density"))
            .fold(f64::INFINITY, f64::min);
        aundt(params, exact)? <= scan_best + 1e-12
    });

    Ok(DensitySolution {
        relaxed,
        rounded,
        exact,
        degenerate: false,
    })
}

fn check_target_density(params: &SystemParams, m_star: u32, m_prime: u32) -> Result<()> {
    if m_prime < params.coop_reach || m_prime > m_star {
        return Err(Error::InvalidDensity {
            m_prime,
            m_star,
            coop_reach: params.coop_reach,
        });
    }
    Ok(())
}

/// Minimal EH-BS rate exponent `lambda'` such that a cluster of `m_prime`
/// BSs at rate `lambda'` matches the delay of `m_star` BSs at the original
/// rate.
pub fn adjust_backhaul_rate(params: &SystemParams, m_star: u32, m_prime: u32) -> Result<f64> {
    params.validate()?;
    check_target_density(params, m_star, m_prime)?;
    let loss = cooperation_loss(params.coop_reach)?;
    let reach = f64::from(params.coop_reach);
    let (big, small) = (f64::from(m_star), f64::from(m_prime));
    let spread = 2.0 * params.lambda * loss / (params.beta * reach);
    let denominator = big + (1.0 / big - 1.0 / small) * spread;
    if denominator <= 0.0 {
        return Err(Error::InfeasibleBackhaulRate {
            m_prime,
            denominator,
        });
    }
    Ok(params.lambda * small / denominator)
}

/// Minimal cache ratio `mu'` such that a cluster of `m_prime` BSs with
/// cache ratio `mu'` matches the delay of `m_star` BSs with the original
/// ratio.
///
/// Requires caching to actually reduce delay at `m_prime` (the bracket
/// multiplying `mu` in the closed form must be negative there) and the
/// required ratio to stay within the library.
pub fn adjust_cache_capacity(params: &SystemParams, m_star: u32, m_prime: u32) -> Result<f64> {
    params.validate()?;
    check_target_density(params, m_star, m_prime)?;
    if params.mu == 0.0 {
        return Err(Error::DegenerateCache);
    }
    let loss = cooperation_loss(params.coop_reach)?;
    let reach = f64::from(params.coop_reach);
    let (big, small) = (f64::from(m_star), f64::from(m_prime));
    let numerator = reach / params.lambda * (big - small)
        + (2.0 / (params.beta * big) - 2.0 / (params.beta * small)) * loss;
    let denominator = reach * small / params.lambda + 2.0 * loss / (params.beta * small)
        - (1.0 / params.gamma + 2.0 / params.beta);
    if denominator >= 0.0 {
        return Err(Error::CacheNotBeneficial { m_prime });
    }
    let required = params.mu * (numerator / denominator + 1.0);
    if required > 1.0 {
        return Err(Error::InfeasibleCacheRatio { required });
    }
    Ok(required)
}

/// Both single-parameter compensations for a target density, with
/// infeasibilities reported as flags instead of errors.
pub fn parameter_adjustment(
    params: &SystemParams,
    m_star: u32,
    m_prime: u32,
) -> Result<AdjustmentSolution> {
    params.validate()?;
    check_target_density(params, m_star, m_prime)?;
    let (adjusted_lambda, lambda_feasible) = match adjust_backhaul_rate(params, m_star, m_prime) {
        Ok(rate) => (Some(rate), true),
        Err(Error::InfeasibleBackhaulRate { .. }) => (None, false),
        Err(other) => return Err(other),
    };
    let (adjusted_mu, mu_feasible) = match adjust_cache_capacity(params, m_star, m_prime) {
        Ok(ratio) => (Some(ratio), true),
        // Over-budget ratios are still reported so callers can see how far
        // from feasible they are.
        Err(Error::InfeasibleCacheRatio { required }) => (Some(required), false),
        Err(Error::CacheNotBeneficial { .. }) | Err(Error::DegenerateCache) => (None, false),
        Err(other) => return Err(other),
    };
    Ok(AdjustmentSolution {
        target_density: m_prime,
        adjusted_lambda,
        adjusted_mu,
        mu_feasible,
        lambda_feasible,
    })
}

/// Delay difference `aundt(adjusted, m_prime) - aundt(original, m_star)`.
/// Equality-case adjustments drive this to zero (callers typically assert
/// `<= 1e-9`).
pub fn verify_adjustment(
    original: &SystemParams,
    m_star: u32,
    adjusted: &SystemParams,
    m_prime: u32,
) -> Result<f64> {
    Ok(aundt(adjusted, m_prime)? - aundt(original, m_star)?)
}
