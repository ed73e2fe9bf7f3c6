//! Closed-form delay model for a cache-enabled, partially connected edge
//! cluster.
//!
//! One edge host (EH) fronts a linear cluster of `M` base stations (BSs),
//! each BS serves the colocated user, and a user can combine signals from at
//! most `L` consecutive BSs of its own cluster. A requested file of length
//! `Z` is delivered in two phases:
//!
//! ```text
//! backhaul:  EH -> BSs    cached part, combined over the L serving users
//!            cloud -> BS  uncached part, fetched per user
//! wireless:  cooperative stage delivers the cached part cluster-wide
//!            interference stage delivers the rest, one BS per user
//! ```
//!
//! Delays are reported as normalized delivery time (NDT): delay divided by
//! `Z / log P`, the time a baseline point-to-point link needs for one file.
//! The normalization cancels both the transmit power `P` and the file
//! length, leaving the dimensionless parameters of [`SystemParams`]. The
//! per-user NDT at in-cluster position `j` is
//!
//! ```text
//! ndt(j) = (1 - mu) * (1/gamma + 4/beta)
//!        + mu * M * L / lambda
//!        + 2 * mu * L / (beta * psi(j))
//! ```
//!
//! where `psi(j)` ([`coop_link_count`]) is the number of cooperative links
//! the BS at position `j` can run; it drops near the cluster edge because
//! cross-cluster cooperation is not available. Averaging over the cluster
//! collapses the position dependence into the cooperation-loss term `G(L)`
//! ([`cooperation_loss`]) and gives the closed form evaluated by [`aundt`]:
//!
//! ```text
//! aundt = mu * (M*L/lambda + 2*G(L)/(beta*M) - 1/gamma - 2/beta)
//!       + 1/gamma + 4/beta
//! ```
//!
//! A fully cooperative cluster would have `G = 0`; that delay floor is
//! exposed as [`aundt_lower_bound`].

use crate::error::{Error, Result};

/// Normalized network parameters driving every delay formula.
///
/// All four rate exponents are relative to `log P`: the BS-user rate is
/// `beta * log P`, the total EH-BS rate `lambda * log P` (shared by the `M`
/// BSs of a cluster), and the cloud-BS rate `gamma * log P`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Fraction of the file library cached at each edge host, in `[0, 1]`.
    pub mu: f64,
    /// Cloud-BS rate exponent, `> 0`.
    pub gamma: f64,
    /// Total EH-BS rate exponent, `> 0`; each BS of an `M`-cluster gets
    /// `lambda / M`.
    pub lambda: f64,
    /// BS-user rate exponent, `> 0`.
    pub beta: f64,
    /// Maximum number of consecutive BSs a user can receive from; odd.
    pub coop_reach: u32,
}

impl SystemParams {
    /// Validating constructor; see [`SystemParams::validate`].
    pub fn new(mu: f64, gamma: f64, lambda: f64, beta: f64, coop_reach: u32) -> Result<Self> {
        let params = Self {
            mu,
            gamma,
            lambda,
            beta,
            coop_reach,
        };
        params.validate()?;
        Ok(params)
    }

    /// Checks `0 <= mu <= 1`, strictly positive rate exponents, and an odd
    /// cooperation reach (the edge-link count and the cooperation loss are
    /// only defined for odd reach).
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(Error::InvalidParameters(format!(
                "cache ratio mu must be in [0, 1], got {}",
                self.mu
            )));
        }
        for (name, value) in [
            ("gamma", self.gamma),
            ("lambda", self.lambda),
            ("beta", self.beta),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameters(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        check_reach(self.coop_reach)?;
        Ok(())
    }

    /// Cluster sizes below the cooperation reach are rejected everywhere.
    pub(crate) fn check_cluster(&self, cluster_size: u32) -> Result<()> {
        if cluster_size < self.coop_reach {
            return Err(Error::InfeasibleDensity {
                cluster_size,
                coop_reach: self.coop_reach,
            });
        }
        Ok(())
    }
}

fn check_reach(coop_reach: u32) -> Result<()> {
    if coop_reach < 1 || coop_reach.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "cooperation reach must be odd and >= 1, got {coop_reach}"
        )));
    }
    Ok(())
}

/// A candidate cluster size with its feasibility against the cooperation
/// reach of a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeploymentPlan {
    /// BSs per edge host.
    pub cluster_size: u32,
    /// `true` iff `cluster_size >= coop_reach`.
    pub feasible: bool,
}

impl DeploymentPlan {
    pub fn new(cluster_size: u32, params: &SystemParams) -> Result<Self> {
        params.validate()?;
        if cluster_size < 1 {
            return Err(Error::InvalidParameters(
                "cluster size must be at least 1".into(),
            ));
        }
        Ok(Self {
            cluster_size,
            feasible: cluster_size >= params.coop_reach,
        })
    }
}

/// Achievable link rates, in bits per channel use, for a given cluster size
/// and transmit power.
///
/// The NDT formulas never need these (the power cancels), but the simulator
/// uses them to price finite-length deliveries.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkRates {
    /// BS-user rate `beta * ln P`.
    pub bs_user: f64,
    /// Per-BS share of the EH backhaul, `(lambda / M) * ln P`.
    pub eh_bs: f64,
    /// Cloud-BS rate `gamma * ln P`.
    pub cloud_bs: f64,
    /// Interference-stage per-user rate, `bs_user / 4` (per-user degrees of
    /// freedom 1/2 on half the spectrum).
    pub interference: f64,
    /// Cooperative-stage per-user rate at each in-cluster position
    /// `j in 1..=M`, stored 0-based: `beta * psi(j) / (2L) * ln P`.
    pub cooperative: Vec<f64>,
}

/// Per-user NDT split into its four additive delay contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NdtBreakdown {
    /// Cached content over the shared EH backhaul: `mu * M * L / lambda`.
    pub backhaul_cached: f64,
    /// Uncached content from the cloud: `(1 - mu) / gamma`.
    pub backhaul_uncached: f64,
    /// Cached content over the cooperative wireless stage:
    /// `2 * mu * L / (beta * psi(j))`.
    pub wireless_coop: f64,
    /// Uncached content over the interference stage: `4 * (1 - mu) / beta`.
    pub wireless_interference: f64,
    /// Sum of the four components.
    pub total: f64,
}

/// Number of cooperative BS-user links at in-cluster position `position`
/// (1-based) for a cluster of `cluster_size` BSs and cooperation reach
/// `coop_reach`.
///
/// Interior BSs run the full `coop_reach` links; BSs within
/// `(coop_reach - 1) / 2` of either cluster edge lose the links that would
/// cross into the neighboring cluster. The result is always in
/// `[(coop_reach + 1) / 2, coop_reach]`.
pub fn coop_link_count(position: u32, cluster_size: u32, coop_reach: u32) -> Result<u32> {
    check_reach(coop_reach)?;
    if cluster_size < coop_reach {
        return Err(Error::InvalidParameters(format!(
            "cluster size {cluster_size} is below the cooperation reach {coop_reach}"
        )));
    }
    if position < 1 || position > cluster_size {
        return Err(Error::InvalidPosition {
            position,
            cluster_size,
        });
    }
    let half = (coop_reach - 1) / 2;
    let count = if position <= half {
        position + half
    } else if position <= cluster_size - half {
        coop_reach
    } else {
        cluster_size - position + half + 1
    };
    Ok(count)
}

/// Cooperation-loss function `G(L)`: the AUNDT penalty accumulated by
/// cluster-edge BSs that cannot cooperate across the cluster boundary.
///
/// `G(L) = 1 - L + 4L * sum_{j=1}^{(L-1)/2} 1 / (L + 2j - 1)`, zero for
/// `L = 1` and nondecreasing in odd `L`.
pub fn cooperation_loss(coop_reach: u32) -> Result<f64> {
    check_reach(coop_reach)?;
    let l = f64::from(coop_reach);
    let mut sum = 0.0;
    for j in 1..=(coop_reach - 1) / 2 {
        sum += 1.0 / (l + f64::from(2 * j - 1));
    }
    Ok(1.0 - l + 4.0 * l * sum)
}

/// All five link rates for a cluster of `cluster_size` BSs transmitting at
/// `power` watts. Requires `power > 1` so the baseline `ln P` is positive.
pub fn link_rates(params: &SystemParams, cluster_size: u32, power: f64) -> Result<LinkRates> {
    params.validate()?;
    params.check_cluster(cluster_size)?;
    if !power.is_finite() || power <= 1.0 {
        return Err(Error::InvalidPower(power));
    }
    let log_p = power.ln();
    let bs_user = params.beta * log_p;
    let two_reach = 2.0 * f64::from(params.coop_reach);
    let cooperative = (1..=cluster_size)
        .map(|j| {
            let psi = coop_link_count(j, cluster_size, params.coop_reach)
                .expect("position within validated cluster");
            // psi / (2L) <= 1/2 exactly, so the invariant
            // cooperative <= bs_user / 2 survives rounding.
            bs_user * (f64::from(psi) / two_reach)
        })
        .collect();
    Ok(LinkRates {
        bs_user,
        eh_bs: params.lambda / f64::from(cluster_size) * log_p,
        cloud_bs: params.gamma * log_p,
        interference: bs_user * 0.25,
        cooperative,
    })
}

/// Asymptotic per-user NDT at in-cluster position `position`.
pub fn user_ndt(params: &SystemParams, cluster_size: u32, position: u32) -> Result<NdtBreakdown> {
    params.validate()?;
    params.check_cluster(cluster_size)?;
    let psi = coop_link_count(position, cluster_size, params.coop_reach)?;
    let reach = f64::from(params.coop_reach);
    let backhaul_cached = params.mu * f64::from(cluster_size) * reach / params.lambda;
    let backhaul_uncached = (1.0 - params.mu) / params.gamma;
    let wireless_coop = 2.0 * params.mu * reach / (params.beta * f64::from(psi));
    let wireless_interference = 4.0 * (1.0 - params.mu) / params.beta;
    Ok(NdtBreakdown {
        backhaul_cached,
        backhaul_uncached,
        wireless_coop,
        wireless_interference,
        total: backhaul_cached + backhaul_uncached + wireless_coop + wireless_interference,
    })
}

/// Closed form shared by [`aundt`], [`aundt_lower_bound`], and the
/// optimizer's relaxed (real-valued cluster size) objective.
pub(crate) fn aundt_with_loss(params: &SystemParams, cluster_size: f64, loss: f64) -> f64 {
    let reach = f64::from(params.coop_reach);
    let bracket = cluster_size * reach / params.lambda + 2.0 * loss / (params.beta * cluster_size)
        - 1.0 / params.gamma
        - 2.0 / params.beta;
    params.mu * bracket + 1.0 / params.gamma + 4.0 / params.beta
}

/// Average user NDT over the whole cluster; equals the arithmetic mean of
/// [`user_ndt`] across positions `1..=cluster_size`.
pub fn aundt(params: &SystemParams, cluster_size: u32) -> Result<f64> {
    params.validate()?;
    params.check_cluster(cluster_size)?;
    let loss = cooperation_loss(params.coop_reach)?;
    Ok(aundt_with_loss(params, f64::from(cluster_size), loss))
}

/// Average user NDT of a hypothetical fully cooperative cluster (zero
/// cooperation loss); never exceeds [`aundt`].
pub fn aundt_lower_bound(params: &SystemParams, cluster_size: u32) -> Result<f64> {
    params.validate()?;
    params.check_cluster(cluster_size)?;
    Ok(aundt_with_loss(params, f64::from(cluster_size), 0.0))
}
