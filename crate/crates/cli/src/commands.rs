//! Subcommand implementations: analyze, optimize, adjust, simulate.

use std::path::{Path, PathBuf};

use edgeplan_core::{
    aundt, aundt_lower_bound, optimal_density, parameter_adjustment, run_trials, user_ndt,
    verify_adjustment, CacheModel, SystemParams,
};

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::fmt::csv_float;

/// Audit bound for the optimizer's integer-argmin check.
const SCAN_LIMIT: u32 = 200;

pub const ANALYZE_HEADER: &str = "beta,lambda,m,aundt,aundt_lower_bound,ndt_min,ndt_max";
pub const SIMULATE_HEADER: &str = "m,empirical_aundt,std_error,analytic_aundt,abs_gap,warning";

/// Writes `contents` to the resolved output target: the `--out` flag, else
/// the config's `out` field, else stdout.
fn write_output(
    flag: Option<&Path>,
    config_out: Option<&Path>,
    contents: &str,
    what: &str,
) -> Result<(), CliError> {
    match flag.or(config_out) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)
                    .map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
            }
            std::fs::write(path, contents)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            println!("wrote {what} to {}", path.display());
            Ok(())
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// AUNDT table over the cluster-size sweep, one curve per (beta, lambda)
/// pair.
pub fn analyze(config: &ScenarioConfig, out: Option<PathBuf>) -> Result<(), CliError> {
    let (m_min, m_max) = config.sweep()?;
    let mut csv = String::from(ANALYZE_HEADER);
    csv.push('\n');
    let mut rows = 0usize;
    for &beta in config.beta.as_slice() {
        for &lambda in config.lambda.as_slice() {
            let params = config.system_params(lambda, beta)?;
            for m in m_min..=m_max {
                let value = aundt(&params, m)?;
                let bound = aundt_lower_bound(&params, m)?;
                let mut ndt_min = f64::INFINITY;
                let mut ndt_max = f64::NEG_INFINITY;
                for j in 1..=m {
                    let total = user_ndt(&params, m, j)?.total;
                    ndt_min = ndt_min.min(total);
                    ndt_max = ndt_max.max(total);
                }
                csv.push_str(&format!(
                    "{},{},{m},{},{},{},{}\n",
                    csv_float(beta),
                    csv_float(lambda),
                    csv_float(value),
                    csv_float(bound),
                    csv_float(ndt_min),
                    csv_float(ndt_max),
                ));
                rows += 1;
            }
        }
    }
    write_output(
        out.as_deref(),
        config.out.as_deref(),
        &csv,
        &format!("{rows} analyze rows"),
    )
}

/// Optimal-density report for one parameter set.
pub fn optimize(config: &ScenarioConfig) -> Result<(), CliError> {
    let params = config.scalar_params()?;
    let solution = optimal_density(&params, SCAN_LIMIT.max(params.coop_reach))?;
    println!("relaxed density : {}", csv_float(solution.relaxed));
    println!("rounded density : {}", solution.rounded);
    println!("exact density   : {}", solution.exact);
    println!("degenerate      : {}", solution.degenerate);
    println!(
        "aundt(rounded)  : {}",
        csv_float(aundt(&params, solution.rounded)?)
    );
    println!(
        "aundt(exact)    : {}",
        csv_float(aundt(&params, solution.exact)?)
    );
    Ok(())
}

/// Parameter-compensation report for a forced sub-optimal density.
pub fn adjust(config: &ScenarioConfig, m_prime: u32) -> Result<(), CliError> {
    let params = config.scalar_params()?;
    let density = optimal_density(&params, SCAN_LIMIT.max(params.coop_reach))?;
    let m_star = density.rounded;
    let solution = parameter_adjustment(&params, m_star, m_prime)?;

    println!("optimal density M*        : {m_star}");
    println!("target density M'         : {m_prime}");
    println!("reference aundt at M*     : {}", csv_float(aundt(&params, m_star)?));

    match solution.adjusted_lambda {
        Some(rate) => {
            let adjusted = SystemParams {
                lambda: rate,
                ..params.clone()
            };
            let residual = verify_adjustment(&params, m_star, &adjusted, m_prime)?;
            println!("adjusted backhaul rate    : {}", csv_float(rate));
            println!("  feasible                : {}", solution.lambda_feasible);
            println!("  delay residual          : {}", csv_float(residual));
        }
        None => {
            println!("adjusted backhaul rate    : none (infeasible)");
            println!("  feasible                : false");
        }
    }
    match solution.adjusted_mu {
        Some(ratio) => {
            println!("adjusted cache ratio      : {}", csv_float(ratio));
            println!("  feasible                : {}", solution.mu_feasible);
            if solution.mu_feasible {
                let adjusted = SystemParams {
                    mu: ratio,
                    ..params.clone()
                };
                let residual = verify_adjustment(&params, m_star, &adjusted, m_prime)?;
                println!("  delay residual          : {}", csv_float(residual));
            }
        }
        None => {
            println!("adjusted cache ratio      : none (infeasible)");
            println!("  feasible                : false");
        }
    }

    if !solution.lambda_feasible || !solution.mu_feasible {
        let mut reasons = Vec::new();
        if !solution.lambda_feasible {
            reasons.push("no finite backhaul rate compensates this density");
        }
        if !solution.mu_feasible {
            reasons.push("no cache ratio within the library compensates this density");
        }
        return Err(CliError::Infeasible(reasons.join("; ")));
    }
    Ok(())
}

/// Monte Carlo sweep; with `check` the gap contract is enforced per row.
pub fn simulate(config: &ScenarioConfig, check: bool, out: Option<PathBuf>) -> Result<(), CliError> {
    let params = config.scalar_params()?;
    let (m_min, m_max) = config.sweep()?;
    let mut csv = String::from(SIMULATE_HEADER);
    csv.push('\n');
    let mut failures = Vec::new();
    for m in m_min..=m_max {
        let sim_config = config.sim_config(params.clone(), m);
        let result = run_trials(&sim_config)?;
        let gap = (result.empirical_aundt - result.analytic_aundt).abs();
        let warning = if config.trials == 1 { "single_trial" } else { "" };
        csv.push_str(&format!(
            "{m},{},{},{},{},{warning}\n",
            csv_float(result.empirical_aundt),
            csv_float(result.std_error),
            csv_float(result.analytic_aundt),
            csv_float(gap),
        ));
        if check {
            let within = match sim_config.cache_model {
                CacheModel::Fractional => gap <= 1e-9,
                CacheModel::WholeFile => gap <= 4.0 * result.std_error,
            };
            if !within {
                failures.push(format!(
                    "m={m}: gap {} exceeds tolerance (std_error {})",
                    csv_float(gap),
                    csv_float(result.std_error)
                ));
            }
        }
    }
    write_output(
        out.as_deref(),
        config.out.as_deref(),
        &csv,
        &format!("{} simulation rows", m_max - m_min + 1),
    )?;
    if !failures.is_empty() {
        return Err(CliError::CheckFailed(failures.join("; ")));
    }
    Ok(())
}
