//! Property tests for the closed-form model and the optimizer.

use edgeplan_core::{
    adjust_backhaul_rate, adjust_cache_capacity, aundt, aundt_lower_bound, coop_link_count,
    cooperation_loss, link_rates, optimal_density, relaxed_objective, user_ndt,
    verify_adjustment, SystemParams,
};
use proptest::prelude::*;

/// Independent oracle for the cooperative link count: enumerate the linear
/// topology and count the users within reach of a BS inside its own cluster.
fn coop_links_by_adjacency(position: u32, cluster_size: u32, coop_reach: u32) -> u32 {
    let half = i64::from((coop_reach - 1) / 2);
    let j = i64::from(position);
    (1..=i64::from(cluster_size))
        .filter(|&user| (user - j).abs() <= half)
        .count() as u32
}

fn odd_reach() -> impl Strategy<Value = u32> {
    prop_oneof![Just(1u32), Just(3), Just(5), Just(7), Just(9)]
}

fn params_with_cluster(mu_min: f64) -> impl Strategy<Value = (SystemParams, u32)> {
    odd_reach().prop_flat_map(move |reach| {
        (
            mu_min..=1.0f64,
            0.2..=5.0f64,
            1.0..=500.0f64,
            0.1..=5.0f64,
            reach..=50u32,
        )
            .prop_map(move |(mu, gamma, lambda, beta, m)| {
                (
                    SystemParams::new(mu, gamma, lambda, beta, reach).unwrap(),
                    m,
                )
            })
    })
}

#[test]
fn coop_link_count_matches_topology_enumeration() {
    for reach in [1u32, 3, 5, 7, 9] {
        for cluster in reach..=30 {
            for position in 1..=cluster {
                assert_eq!(
                    coop_link_count(position, cluster, reach).unwrap(),
                    coop_links_by_adjacency(position, cluster, reach),
                    "psi mismatch at j={position}, M={cluster}, L={reach}"
                );
            }
        }
    }
}

#[test]
fn coop_link_sum_equals_cluster_plus_loss() {
    for reach in [1u32, 3, 5, 7, 9] {
        let loss = cooperation_loss(reach).unwrap();
        for cluster in reach..=50 {
            let sum: f64 = (1..=cluster)
                .map(|j| {
                    f64::from(reach) / f64::from(coop_link_count(j, cluster, reach).unwrap())
                })
                .sum();
            let expected = f64::from(cluster) + loss;
            assert!(
                (sum - expected).abs() <= 1e-9 * expected.abs(),
                "sum L/psi = {sum}, expected {expected} at M={cluster}, L={reach}"
            );
        }
    }
}

#[test]
fn coop_link_count_symmetry_and_bounds() {
    for reach in [1u32, 3, 5, 7, 9] {
        let half = (reach - 1) / 2;
        for cluster in reach..=30 {
            for position in 1..=cluster {
                let psi = coop_link_count(position, cluster, reach).unwrap();
                let mirrored = coop_link_count(cluster + 1 - position, cluster, reach).unwrap();
                assert_eq!(psi, mirrored);
                assert!(psi >= reach.div_ceil(2) && psi <= reach);
                let interior = position > half && position <= cluster - half;
                assert_eq!(psi == reach, interior);
            }
        }
    }
}

#[test]
fn cooperation_loss_nondecreasing_in_reach() {
    let mut previous = cooperation_loss(1).unwrap();
    assert_eq!(previous, 0.0);
    for reach in (3..=99).step_by(2) {
        let current = cooperation_loss(reach).unwrap();
        assert!(
            current >= previous,
            "G({reach}) = {current} < G({}) = {previous}",
            reach - 2
        );
        previous = current;
    }
}

proptest! {
    #[test]
    fn aundt_equals_mean_of_user_ndt((params, cluster) in params_with_cluster(0.0)) {
        let closed = aundt(&params, cluster).unwrap();
        let mean = (1..=cluster)
            .map(|j| user_ndt(&params, cluster, j).unwrap().total)
            .sum::<f64>()
            / f64::from(cluster);
        let tolerance = 1e-9 * closed.abs().max(mean.abs());
        prop_assert!((closed - mean).abs() <= tolerance, "closed {closed} vs mean {mean}");
    }

    #[test]
    fn aundt_is_affine_in_cache_ratio((params, cluster) in params_with_cluster(0.0)) {
        let at = |mu: f64| {
            aundt(&SystemParams { mu, ..params.clone() }, cluster).unwrap()
        };
        let zero = at(0.0);
        prop_assert_eq!(zero, 1.0 / params.gamma + 4.0 / params.beta);
        let slope = at(1.0) - zero;
        let interpolated = zero + params.mu * slope;
        let direct = at(params.mu);
        prop_assert!(
            (interpolated - direct).abs() <= 1e-9 * direct.abs().max(1.0),
            "affine interpolation {interpolated} vs direct {direct}"
        );
    }

    #[test]
    fn lower_bound_dominance((params, cluster) in params_with_cluster(0.0)) {
        let bound = aundt_lower_bound(&params, cluster).unwrap();
        let value = aundt(&params, cluster).unwrap();
        prop_assert!(bound <= value + 1e-12 * value.abs());
        if params.mu == 0.0 || params.coop_reach == 1 {
            prop_assert!((bound - value).abs() <= 1e-12 * value.abs());
        } else {
            prop_assert!(bound < value);
        }
    }

    #[test]
    fn breakdown_components_nonnegative((params, cluster) in params_with_cluster(0.0)) {
        for j in 1..=cluster {
            let ndt = user_ndt(&params, cluster, j).unwrap();
            prop_assert!(ndt.backhaul_cached >= 0.0);
            prop_assert!(ndt.backhaul_uncached >= 0.0);
            prop_assert!(ndt.wireless_coop >= 0.0);
            prop_assert!(ndt.wireless_interference >= 0.0);
        }
    }

    #[test]
    fn link_rate_structure((params, cluster) in params_with_cluster(0.0), power in 1.5..=1000.0f64) {
        let rates = link_rates(&params, cluster, power).unwrap();
        prop_assert!(rates.bs_user > 0.0 && rates.eh_bs > 0.0 && rates.cloud_bs > 0.0);
        prop_assert_eq!(rates.interference, rates.bs_user / 4.0);
        prop_assert_eq!(rates.cooperative.len(), cluster as usize);
        for rate in &rates.cooperative {
            prop_assert!(*rate > 0.0 && *rate <= rates.bs_user / 2.0);
        }
    }

    #[test]
    fn exact_density_is_brute_force_argmin((params, _) in params_with_cluster(0.01)) {
        let solution = optimal_density(&params, 200).unwrap();
        let reach = params.coop_reach;
        let floor = (solution.relaxed.floor() as u32).max(reach);
        let ceil = (solution.relaxed.ceil() as u32).max(reach);
        prop_assert!(solution.exact == floor || solution.exact == ceil);
        if solution.rounded > reach {
            prop_assert!((f64::from(solution.rounded) - solution.relaxed).abs() <= 1.5);
        }

        let mut best_m = reach;
        let mut best = f64::INFINITY;
        for m in reach..=200 {
            let value = aundt(&params, m).unwrap();
            if value < best {
                best = value;
                best_m = m;
            }
        }
        prop_assert_eq!(solution.exact, best_m);
    }

    #[test]
    fn density_argmin_ignores_cache_ratio_and_cloud_rate(
        (params, _) in params_with_cluster(0.01),
        other_mu in 0.01..=1.0f64,
        other_gamma in 0.2..=5.0f64,
    ) {
        let base = optimal_density(&params, 200).unwrap();
        let perturbed = optimal_density(
            &SystemParams { mu: other_mu, gamma: other_gamma, ..params.clone() },
            200,
        )
        .unwrap();
        prop_assert_eq!(base.rounded, perturbed.rounded);
        prop_assert_eq!(base.exact, perturbed.exact);
    }

    #[test]
    fn relaxed_objective_is_midpoint_convex(
        (params, _) in params_with_cluster(0.01),
        a in 0.0..=60.0f64,
        b in 0.0..=60.0f64,
    ) {
        let reach = f64::from(params.coop_reach);
        let (m1, m3) = (reach + a.min(b), reach + a.max(b));
        let m2 = (m1 + m3) / 2.0;
        let tau = |m| relaxed_objective(&params, m).unwrap();
        prop_assert!(tau(m2) <= (tau(m1) + tau(m3)) / 2.0 + 1e-9);
    }

    #[test]
    fn equality_case_adjustments_preserve_delay(
        (params, _) in params_with_cluster(0.01),
        prime_slot in 0.0..=1.0f64,
    ) {
        let solution = optimal_density(&params, 200).unwrap();
        let m_star = solution.rounded;
        let reach = params.coop_reach;
        let m_prime = reach + ((f64::from(m_star - reach) * prime_slot).floor() as u32);

        if let Ok(rate) = adjust_backhaul_rate(&params, m_star, m_prime) {
            let adjusted = SystemParams { lambda: rate, ..params.clone() };
            let residual = verify_adjustment(&params, m_star, &adjusted, m_prime).unwrap();
            prop_assert!(residual.abs() <= 1e-9, "lambda residual {residual}");
        }
        if let Ok(ratio) = adjust_cache_capacity(&params, m_star, m_prime) {
            let adjusted = SystemParams { mu: ratio, ..params.clone() };
            let residual = verify_adjustment(&params, m_star, &adjusted, m_prime).unwrap();
            prop_assert!(residual.abs() <= 1e-9, "mu residual {residual}");
        }
    }

    #[test]
    fn backhaul_compensation_shrinks_toward_optimum((params, _) in params_with_cluster(0.01)) {
        let solution = optimal_density(&params, 200).unwrap();
        let m_star = solution.rounded;
        let mut previous: Option<f64> = None;
        for m_prime in params.coop_reach..=m_star {
            match adjust_backhaul_rate(&params, m_star, m_prime) {
                Ok(rate) => {
                    if let Some(prev) = previous {
                        prop_assert!(
                            rate <= prev * (1.0 + 1e-12),
                            "lambda' rose from {prev} to {rate} at M'={m_prime}"
                        );
                    }
                    previous = Some(rate);
                }
                Err(_) => prop_assert!(previous.is_none(),
                    "feasible region must be an upper interval of M'"),
            }
        }
        // The optimum itself never needs compensation.
        if let Some(last) = previous {
            let at_star = adjust_backhaul_rate(&params, m_star, m_star).unwrap();
            prop_assert!((at_star - params.lambda).abs() <= 1e-9 * params.lambda);
            prop_assert!(last >= params.lambda * (1.0 - 1e-12));
        }
    }
}
