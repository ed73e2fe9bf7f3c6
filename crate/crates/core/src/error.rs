use thiserror::Error;

/// Errors raised by the model, optimizer, and simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates a structural constraint (range, parity, ...).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An in-cluster position outside `1..=cluster_size`.
    #[error("position {position} is outside the cluster 1..={cluster_size}")]
    InvalidPosition { position: u32, cluster_size: u32 },

    /// Link rates need `P > 1` so that `ln P > 0`.
    #[error("transmit power must exceed 1 W, got {0}")]
    InvalidPower(f64),

    /// A cluster smaller than the cooperation reach has no well-defined
    /// link topology.
    #[error("cluster size {cluster_size} is below the cooperation reach {coop_reach}")]
    InfeasibleDensity { cluster_size: u32, coop_reach: u32 },

    /// Compensation targets must satisfy `L <= M' <= M*`.
    #[error("target density {m_prime} must lie in {coop_reach}..={m_star}")]
    InvalidDensity {
        m_prime: u32,
        m_star: u32,
        coop_reach: u32,
    },

    /// No finite backhaul rate recovers the reference delay at this density:
    /// even an infinite rate leaves the wireless cooperative stage too slow.
    #[error(
        "no backhaul rate can compensate density {m_prime} \
         (denominator {denominator} is not positive)"
    )]
    InfeasibleBackhaulRate { m_prime: u32, denominator: f64 },

    /// The cache ratio needed to compensate exceeds the whole library.
    #[error("required cache ratio {required} exceeds 1")]
    InfeasibleCacheRatio { required: f64 },

    /// Growing the cache does not lower delay at this density, so no cache
    /// adjustment can compensate.
    #[error("caching does not reduce delay at density {m_prime}; cache adjustment cannot help")]
    CacheNotBeneficial { m_prime: u32 },

    /// With `mu = 0` delay is cache-independent and the adjustment is moot.
    #[error("cache adjustment is degenerate when mu = 0")]
    DegenerateCache,

    /// Distinct per-user requests require at least `cluster_size` files.
    #[error("library of {n_files} files cannot serve {cluster_size} distinct requests")]
    LibraryTooSmall { n_files: u32, cluster_size: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
