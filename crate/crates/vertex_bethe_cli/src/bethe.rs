//! `bethe-solve`: solve the Bethe equations and report on the solution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use vertex_bethe::sklyanin::DEFAULT_SEED;
use vertex_bethe::transfer::{
    dense_eigenvalue_distance, eigen_residual, eigenvalue_pole_free, reference_cases, solve_bethe, string_roots,
    sum_rule_check, BetheSolution, Chain, SolverOptions,
};
use vertex_bethe::{Complex64, Error, ModelParams};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{base_metadata, num, Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InitStrategy {
    /// `2ℓ`-strings with evenly spaced real centers.
    String,
    /// The matching entry of the built-in reference catalogue.
    Reference,
    /// Seeded uniform points in the fundamental domain.
    Random,
    /// Roots given with `--roots`.
    Explicit,
}

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub nu: i64,
    pub init: InitStrategy,
    pub roots: Option<String>,
    pub branch_ints: Option<Vec<i64>>,
    pub max_iter: usize,
    pub tol: f64,
}

/// `⌊M/2ℓ⌋` strings of length `2ℓ` plus one shorter string for the
/// remainder, with centers spread evenly over `(−1/2, 1/2)`.
pub fn string_init(p: &ModelParams) -> Vec<Complex64> {
    let m = p.m();
    let a = p.two_ell as usize;
    let (full, rem) = (m / a, m % a);
    let count = full + usize::from(rem > 0);
    let center = |j: usize| (j as f64 - (count as f64 - 1.0) / 2.0) / count as f64;
    let mut strings: Vec<(u32, bool, f64)> = (0..full).map(|j| (a as u32, false, center(j))).collect();
    if rem > 0 {
        strings.push((rem as u32, false, center(full)));
    }
    string_roots(p, &strings)
}

pub fn random_init(p: &ModelParams, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = p.tau().im / 2.0;
    (0..p.m()).map(|_| Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-half..half))).collect()
}

/// Parses `re,im;re,im;…`.
pub fn parse_roots(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let xs: Vec<&str> = part.split(',').collect();
            let parse = |v: &str| {
                let x = v.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("root component {v:?}: {e}")))?;
                if !x.is_finite() {
                    return Err(CliError::Usage(format!("root component {v:?} is not finite")));
                }
                Ok(x)
            };
            match xs.as_slice() {
                [re] => Ok(Complex64::new(parse(re)?, 0.0)),
                [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
                _ => Err(CliError::Usage(format!("root {part:?} is not re,im"))),
            }
        })
        .collect()
}

fn initial_roots(cfg: &RunConfig, args: &SolveArgs) -> Result<Vec<Complex64>, CliError> {
    let p = &cfg.model;
    match args.init {
        InitStrategy::String => Ok(string_init(p)),
        InitStrategy::Random => Ok(random_init(p, cfg.seed)),
        InitStrategy::Explicit => {
            let s = args.roots.as_deref().ok_or_else(|| CliError::Usage("--init explicit needs --roots".into()))?;
            parse_roots(s)
        }
        InitStrategy::Reference => reference_cases()
            .into_iter()
            .find(|c| c.nu == args.nu && c.params().ok().as_ref() == Some(p))
            .map(|c| c.init)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "no reference case for ℓ = {}, N = {}, ν = {} at these (t, r, r′)",
                    p.ell(),
                    p.n_sites,
                    args.nu
                ))
            }),
    }
}

/// Sample points for eigenvalue checks: `Re λ ∈ (−0.45, 0.45)`, `Im λ ∈ (0.02, 0.12)`.
pub fn sample_lambdas(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Complex64::new(rng.gen_range(-0.45..0.45), rng.gen_range(0.02..0.12))).collect()
}

fn complex(z: Complex64) -> Value {
    json!({"re": num(z.re), "im": num(z.im)})
}

/// Eigenvalue samples, eigenvector residuals and parities for a converged solution.
pub fn solution_summary(cfg: &RunConfig, sol: &BetheSolution) -> Result<Map<String, Value>, CliError> {
    let p = &cfg.model;
    let mut s = Map::new();
    s.insert("converged".into(), json!(true));
    s.insert("nu".into(), json!(sol.nu));
    s.insert("residual".into(), num(sol.residual));
    s.insert("iterations".into(), json!(sol.iterations));
    let sum = sum_rule_check(p, &sol.lambdas);
    s.insert("sum_rule".into(), json!({"n0": sum.n0, "n1": sum.n1, "deviation": num(sum.deviation)}));

    let chain = match Chain::new(p, cfg.gauge, DEFAULT_SEED) {
        Ok(c) => Some(c),
        Err(Error::SizeCap { .. }) => None,
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let psi = match &chain {
        Some(ch) => Some(ch.bethe_vector_algebraic(sol.nu, &sol.lambdas).map_err(|e| CliError::Domain(e.to_string()))?),
        None => None,
    };
    let mut samples = Vec::new();
    for lam in sample_lambdas(cfg.seed, 5) {
        let t = eigenvalue_pole_free(p, sol.nu, &sol.lambdas, lam).map_err(|e| CliError::Domain(e.to_string()))?;
        let mut entry = Map::new();
        entry.insert("lambda".into(), complex(lam));
        entry.insert("eigenvalue".into(), complex(t));
        if let (Some(ch), Some(psi)) = (&chain, &psi) {
            let er = eigen_residual(ch, sol, psi, lam).map_err(|e| CliError::Domain(e.to_string()))?;
            let dd = dense_eigenvalue_distance(ch, sol, lam).map_err(|e| CliError::Domain(e.to_string()))?;
            entry.insert("eigenvector_residual".into(), num(er));
            entry.insert("dense_distance".into(), num(dd));
        }
        samples.push(Value::Object(entry));
    }
    s.insert("eigenvalue_samples".into(), Value::Array(samples));

    match (&chain, &psi) {
        (Some(ch), Some(psi)) if psi.norm() > 1e-12 => {
            let par = ch.parity_measure(psi);
            let (first, second) = par.conjecture(p, sol.nu, &sum);
            s.insert(
                "parities".into(),
                json!({
                    "nu_doubleprime": par.nu_doubleprime,
                    "nu_prime": par.nu_prime,
                    "residuals": [num(par.residuals[0]), num(par.residuals[1])],
                    "indeterminate": par.indeterminate,
                    "observed_congruence_first": first,
                    "observed_congruence_second": second,
                }),
            );
        }
        (Some(_), Some(_)) => {
            s.insert("parities".into(), json!("Bethe vector vanishes"));
        }
        _ => {
            s.insert("parities".into(), json!("chain exceeds the dense size cap"));
        }
    }
    Ok(s)
}

pub fn run(cfg: &RunConfig, args: &SolveArgs) -> Result<(), CliError> {
    let p = &cfg.model;
    let init = initial_roots(cfg, args)?;
    if init.len() != p.m() {
        return Err(CliError::Usage(format!("expected M = Nℓ = {} roots, got {}", p.m(), init.len())));
    }
    let branch: Option<Vec<f64>> = args.branch_ints.as_ref().map(|b| b.iter().map(|&k| k as f64).collect());
    let opts = SolverOptions { max_iter: args.max_iter, tol: args.tol };

    let mut metadata = base_metadata(cfg, "bethe-solve");
    metadata.insert("init".into(), json!(format!("{:?}", args.init).to_lowercase()));
    metadata.insert("initial_roots".into(), Value::Array(init.iter().map(|&z| complex(z)).collect()));
    metadata.insert("solver".into(), json!({"max_iter": opts.max_iter, "tol": opts.tol}));

    let mut table = Table::new(["index", "re", "im", "branch_int"]);
    match solve_bethe(p, args.nu, &init, branch.as_deref(), opts) {
        Ok(sol) => {
            for (j, (z, b)) in sol.lambdas.iter().zip(&sol.branch_ints).enumerate() {
                table.push(vec![json!(j), num(z.re), num(z.im), num(*b)]);
            }
            let summary = solution_summary(cfg, &sol)?;
            Report { metadata, rows_key: "roots", table, summary: Some(summary) }.emit(cfg)
        }
        Err(e) => {
            let trace = match &e {
                Error::Convergence { trace, .. } | Error::DegenerateSolution { trace, .. } => trace.clone(),
                _ => Vec::new(),
            };
            let failure = matches!(e, Error::Convergence { .. } | Error::DegenerateSolution { .. } | Error::Pole(_));
            if !failure {
                return Err(CliError::Usage(e.to_string()));
            }
            let mut summary = Map::new();
            summary.insert("converged".into(), json!(false));
            summary.insert("error".into(), json!(e.to_string()));
            summary.insert("newton_trace".into(), Value::Array(trace.iter().map(|&x| num(x)).collect()));
            Report { metadata, rows_key: "roots", table, summary: Some(summary) }.emit(cfg)?;
            Err(CliError::NonConvergence { message: e.to_string(), trace })
        }
    }
}
