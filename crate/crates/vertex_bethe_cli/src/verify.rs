//! `verify`: invariant suites, one row per check.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map};
use vertex_bethe::elliptic::{
    phi, phi_fourier, positivity_kernel, positivity_kernel_poisson, psi, psi_fourier, q_gamma_identity_residual, th,
    SeriesControl, ThetaChar,
};
use vertex_bethe::sklyanin::{SpinRep, DEFAULT_SEED};
use vertex_bethe::sos::SosGauge;
use vertex_bethe::thermo::{
    big_s_double_product, big_s_q_gamma, big_s_series, compare_free_energy, default_free_energy_grid,
    excitation_residuals, ground_density, ground_residual, polarization, polarization_sum_identity, s_vs_r_spread,
    series_vs_closed, solve_excited_state, Variant, DEFAULT_QUAD_NODES,
};
use vertex_bethe::transfer::{
    dense_eigenvalue_distance, eigen_residual, reference_cases, solve_bethe, sum_rule_check, t_r_closed_form_fit,
    Chain, SolverOptions,
};
use vertex_bethe::{Complex64, ModelParams};

use crate::bethe::{sample_lambdas, string_init};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{base_metadata, num, Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Elliptic,
    Sklyanin,
    Sos,
    Bethe,
    Thermo,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Elliptic => "elliptic",
            Suite::Sklyanin => "sklyanin",
            Suite::Sos => "sos",
            Suite::Bethe => "bethe",
            Suite::Thermo => "thermo",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Pass iff `measured < threshold`.
    Below,
    /// Pass iff `measured > threshold`.
    Above,
    /// Pass iff `measured ≤ threshold`.
    AtMost,
}

impl Bound {
    fn symbol(self) -> &'static str {
        match self {
            Bound::Below => "<",
            Bound::Above => ">",
            Bound::AtMost => "<=",
        }
    }

    fn holds(self, measured: f64, threshold: f64) -> bool {
        match self {
            Bound::Below => measured < threshold,
            Bound::Above => measured > threshold,
            Bound::AtMost => measured <= threshold,
        }
    }
}

type Measure = Box<dyn Fn() -> vertex_bethe::Result<(f64, String)> + Send + Sync>;

struct Planned {
    suite: &'static str,
    tag: &'static str,
    case: String,
    threshold: f64,
    bound: Bound,
    measure: Measure,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub tag: &'static str,
    pub case: String,
    pub measured: Option<f64>,
    pub bound: Bound,
    pub threshold: f64,
    pub pass: bool,
    pub note: String,
}

/// Every tag a tolerance may be set for.
pub const TAGS: &[&str] = &[
    "theta-periodicity",
    "phi-series",
    "psi-series",
    "positivity-kernel",
    "positivity-kernel-resummed",
    "q-gamma-product",
    "basis-fit",
    "sklyanin-relations",
    "pauli-reduction",
    "rll",
    "vertex-face",
    "local-vacuum",
    "intertwining-identity",
    "bethe-vector-forms",
    "bethe-equations",
    "reference-root",
    "eigenvector",
    "dense-eigenvalue",
    "sum-rule",
    "sum-rule-perturbed",
    "t-r-closed-form",
    "configured-solution",
    "ground-density",
    "ground-constant",
    "sigma-density",
    "omega-minus-density",
    "omega-plus-density",
    "omega-zero-density",
    "free-energy",
    "excited-table",
    "excited-constraints",
    "polarization-sum",
    "s-series-vs-closed",
    "big-s-three-way",
    "s-vs-r",
];

struct Planner<'a> {
    cfg: &'a RunConfig,
    suite: &'static str,
    out: Vec<Planned>,
}

impl Planner<'_> {
    fn add<F>(&mut self, tag: &'static str, case: impl Into<String>, threshold: f64, bound: Bound, f: F)
    where
        F: Fn() -> vertex_bethe::Result<(f64, String)> + Send + Sync + 'static,
    {
        debug_assert!(TAGS.contains(&tag), "{tag}");
        self.out.push(Planned {
            suite: self.suite,
            tag,
            case: case.into(),
            threshold: self.cfg.tolerance(tag, threshold),
            bound,
            measure: Box::new(f),
        });
    }

    fn below<F>(&mut self, tag: &'static str, case: impl Into<String>, threshold: f64, f: F)
    where
        F: Fn() -> vertex_bethe::Result<f64> + Send + Sync + 'static,
    {
        self.add(tag, case, threshold, Bound::Below, move || f().map(|x| (x, String::new())));
    }
}

/// Seeded generator that depends on the check, not on its position.
fn rng_for(seed: u64, tag: &str, case: &str) -> ChaCha8Rng {
    let mut h = DefaultHasher::new();
    (tag, case).hash(&mut h);
    ChaCha8Rng::seed_from_u64(seed ^ h.finish())
}

fn spin_label(two_ell: u32) -> String {
    format!("2l={two_ell}")
}

fn params_or_err(cfg: &RunConfig, two_ell: u32) -> Result<ModelParams, CliError> {
    cfg.params_for(two_ell)
}

fn rep_for(p: &ModelParams) -> vertex_bethe::Result<SpinRep> {
    SpinRep::new(p, DEFAULT_SEED)
}

fn plan_elliptic(pl: &mut Planner) {
    let t = pl.cfg.model.t;
    pl.below("theta-periodicity", format!("t={t}"), 1e-12, move || {
        let tau = Complex64::new(0.0, 1.0 / t);
        let mut worst: f64 = 0.0;
        for ch in ThetaChar::ALL {
            let (a, b) = (ch.a() as i32, ch.b() as i32);
            for z in [Complex64::new(0.13, 0.07), Complex64::new(-0.31, -0.11)] {
                let f = th(ch, z, tau);
                let one = th(ch, z + 1.0, tau) - f * (-1f64).powi(a);
                let quasi = th(ch, z + tau, tau) * (Complex64::i() * std::f64::consts::PI * (tau + 2.0 * z)).exp()
                    - f * (-1f64).powi(b);
                worst = worst.max(one.norm().max(quasi.norm()) / f.norm().max(1e-300));
            }
        }
        Ok(worst)
    });
    let xs = [-0.45, -0.3, -0.17, -0.05, 0.05, 0.2, 0.33, 0.45];
    for mu in [0.1, 1.0 / 6.0, 0.3, 0.625] {
        pl.below("phi-series", format!("mu={mu:.4} t={t}"), 1e-9, move || {
            let ctrl = SeriesControl::default();
            let mut worst: f64 = 0.0;
            for &x in &xs {
                worst = worst.max((phi(x, mu, t)? - phi_fourier(x, mu, t, &ctrl)?).abs());
            }
            Ok(worst)
        });
    }
    for mu in [0.1, 0.2, 0.35] {
        pl.below("psi-series", format!("mu={mu} t={t}"), 1e-9, move || {
            let ctrl = SeriesControl::default();
            let mut worst: f64 = 0.0;
            for &x in &xs {
                worst = worst.max((psi(x, mu, t)? - psi_fourier(x, mu, t, &ctrl)?).abs());
            }
            Ok(worst)
        });
    }
    for (a, b) in [(0.5, 1.0), (1.0, 2.0), (0.7, 1.3), (1.9, 2.0)] {
        pl.add("positivity-kernel", format!("a={a} b={b}"), 0.0, Bound::Above, move || {
            let ctrl = SeriesControl::default();
            let mut min = f64::INFINITY;
            for k in 0..=40 {
                let x = -0.5 + k as f64 / 40.0;
                min = min.min(positivity_kernel(a, b, x, &ctrl)?);
            }
            Ok((min, "minimum over 41 points".into()))
        });
        pl.below("positivity-kernel-resummed", format!("a={a} b={b}"), 1e-9, move || {
            let ctrl = SeriesControl::default();
            let mut worst: f64 = 0.0;
            for k in 0..=8 {
                let x = -0.5 + k as f64 / 8.0;
                worst = worst.max((positivity_kernel(a, b, x, &ctrl)? - positivity_kernel_poisson(a, b, x)?).abs());
            }
            Ok(worst)
        });
    }
    for (x, y, z, w, a, q) in [(0.4, 0.6, 0.3, 0.7, 2.0, 0.2), (0.25, 1.1, 0.5, 0.85, 1.5, 0.5)] {
        pl.below("q-gamma-product", format!("x={x} y={y} z={z} w={w} a={a} q={q}"), 1e-10, move || {
            q_gamma_identity_residual(x, y, z, w, a, q)
        });
    }
}

fn random_lambda(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-0.45..0.45), rng.gen_range(-0.15..0.15))
}

fn plan_sklyanin(pl: &mut Planner) -> Result<(), CliError> {
    let seed = pl.cfg.seed;
    for tl in pl.cfg.spins(&[1, 2, 3]) {
        let p = params_or_err(pl.cfg, tl)?;
        pl.below("basis-fit", spin_label(tl), 1e-10, move || Ok(rep_for(&p)?.fit_residual()));
        pl.below("sklyanin-relations", spin_label(tl), 1e-9, move || Ok(rep_for(&p)?.sklyanin_residual()));
        if tl == 1 {
            pl.below("pauli-reduction", spin_label(tl), 1e-9, move || rep_for(&p)?.pauli_reduction_residual());
        }
    }
    for tl in pl.cfg.spins(&[1, 2]) {
        let p = params_or_err(pl.cfg, tl)?;
        let case = format!("{} 20 random pairs", spin_label(tl));
        let mut rng = rng_for(seed, "rll", &case);
        let pairs: Vec<(Complex64, Complex64)> =
            (0..20).map(|_| (random_lambda(&mut rng), random_lambda(&mut rng))).collect();
        pl.below("rll", case, 1e-9, move || {
            let rep = rep_for(&p)?;
            Ok(pairs.iter().map(|&(l, m)| rep.rll_residual(l, m)).fold(0.0, f64::max))
        });
    }
    Ok(())
}

fn plan_sos(pl: &mut Planner) -> Result<(), CliError> {
    let (seed, gauge) = (pl.cfg.seed, pl.cfg.gauge);
    for tl in pl.cfg.spins(&[1, 2]) {
        let p = params_or_err(pl.cfg, tl)?;
        let case = format!("{} 10 height pairs x 5 lambda", spin_label(tl));
        let mut rng = rng_for(seed, "vertex-face", &case);
        let pairs: Vec<(i64, i64)> = (0..10)
            .map(|_| {
                let k = rng.gen_range(0..p.r as i64);
                let j = rng.gen_range(0..=tl as i64);
                (k, k - tl as i64 + 2 * j)
            })
            .collect();
        let lams: Vec<Complex64> = (0..5).map(|_| random_lambda(&mut rng)).collect();
        pl.below("vertex-face", case, 1e-9, move || {
            let g = SosGauge::new(rep_for(&p)?, gauge, p.r)?;
            let mut worst: f64 = 0.0;
            for &(k, kp) in &pairs {
                for &l in &lams {
                    worst = worst.max(g.vertex_face_residual(k, kp, l)?);
                }
            }
            Ok(worst)
        });
        pl.below("local-vacuum", spin_label(tl), 1e-9, move || {
            let g = SosGauge::new(rep_for(&p)?, gauge, p.r)?;
            let mut worst: f64 = 0.0;
            for k in 0..4 {
                worst = worst.max(g.local_vacuum_residual(k, Complex64::new(0.17, 0.06))?);
            }
            Ok(worst)
        });
        pl.below("intertwining-identity", spin_label(tl), 1e-9, move || {
            let g = SosGauge::new(rep_for(&p)?, gauge, p.r)?;
            let mut worst: f64 = 0.0;
            for eps_p in [-1i8, 1] {
                let (l, m) = (Complex64::new(0.08, 0.03), Complex64::new(-0.17, 0.05));
                worst = worst.max(g.remark_identity_residual(2, 2 - tl as i64, eps_p, l, m)?);
            }
            Ok(worst)
        });
    }
    Ok(())
}

fn rel_diff(a: &vertex_bethe::linalg::CVec, b: &vertex_bethe::linalg::CVec) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn plan_bethe(pl: &mut Planner) -> Result<(), CliError> {
    let (seed, gauge) = (pl.cfg.seed, pl.cfg.gauge);
    for (tl, n) in [(1u32, 2usize), (1, 4), (2, 2)] {
        let p = ModelParams::defaults(tl).and_then(|p| p.with_sites(n)).map_err(|e| CliError::Usage(e.to_string()))?;
        let case = format!("{} N={n} M={}", spin_label(tl), p.m());
        let mut rng = rng_for(seed, "bethe-vector-forms", &case);
        let lams: Vec<Complex64> = (0..p.m()).map(|_| random_lambda(&mut rng)).collect();
        pl.below("bethe-vector-forms", case, 1e-7, move || {
            let ch = Chain::new(&p, gauge, DEFAULT_SEED)?;
            let mut worst: f64 = 0.0;
            for nu in [0, 1] {
                let a = ch.bethe_vector_algebraic(nu, &lams)?;
                let b = ch.bethe_vector_coordinate(nu, &lams)?;
                worst = worst.max(rel_diff(&a, &b));
            }
            Ok(worst)
        });
    }

    for case in reference_cases() {
        let p = case.params().map_err(|e| CliError::Usage(e.to_string()))?;
        let name = case.name;
        let solve = {
            let case = case.clone();
            move || solve_bethe(&p, case.nu, &case.init, None, SolverOptions::default())
        };
        let s = solve.clone();
        pl.add("bethe-equations", name, 1e-10, Bound::Below, move || {
            let sol = s()?;
            let roots: Vec<String> = sol.lambdas.iter().map(|z| format!("{:.12}{:+.12}i", z.re, z.im)).collect();
            Ok((sol.residual, format!("nu={} roots=[{}]", sol.nu, roots.join(", "))))
        });
        let s = solve.clone();
        let expected = case.expected_root;
        pl.below("reference-root", name, 1e-9, move || {
            Ok(s()?.lambdas.iter().map(|l| (l - expected).norm()).fold(f64::INFINITY, f64::min))
        });
        let lams = sample_lambdas(seed ^ 0x5eed, 5);
        let s = solve.clone();
        let l2 = lams.clone();
        pl.below("eigenvector", format!("{name} 5 random lambda"), 1e-7, move || {
            let sol = s()?;
            let ch = Chain::new(&p, gauge, DEFAULT_SEED)?;
            let psi = ch.bethe_vector_algebraic(sol.nu, &sol.lambdas)?;
            let mut worst: f64 = 0.0;
            for &l in &l2 {
                worst = worst.max(eigen_residual(&ch, &sol, &psi, l)?);
            }
            Ok(worst)
        });
        let s = solve.clone();
        pl.below("dense-eigenvalue", format!("{name} 5 random lambda"), 1e-7, move || {
            let sol = s()?;
            let ch = Chain::new(&p, gauge, DEFAULT_SEED)?;
            let mut worst: f64 = 0.0;
            for &l in &lams {
                worst = worst.max(dense_eigenvalue_distance(&ch, &sol, l)?);
            }
            Ok(worst)
        });
        let s = solve.clone();
        pl.add("sum-rule", name, 1e-6, Bound::Below, move || {
            let sr = sum_rule_check(&p, &s()?.lambdas);
            Ok((sr.deviation, format!("n0={} n1={}", sr.n0, sr.n1)))
        });
        let s = solve;
        pl.add("sum-rule-perturbed", name, 1e-3, Bound::Above, move || {
            let mut l = s()?.lambdas;
            l[0] += Complex64::new(0.0123, 0.0071);
            Ok((sum_rule_check(&p, &l).deviation, "first root shifted by 0.0123+0.0071i".into()))
        });
    }

    let p = ModelParams::defaults(1).map_err(|e| CliError::Usage(e.to_string()))?;
    pl.add("t-r-closed-form", "2l=1 N=2 trivial solution, 16 points", 1e-6, Bound::Below, move || {
        let sol = solve_bethe(&p, 0, &string_init(&p), None, SolverOptions::default())?;
        let grid: Vec<Complex64> = (0..16).map(|i| Complex64::new(-0.45 + 0.06 * i as f64, 0.07)).collect();
        let fit = t_r_closed_form_fit(&p, sol.nu, &sol.lambdas, &grid)?;
        Ok((fit.max_rel_deviation, format!("n={} max|t^r|={:.3e}", fit.n, fit.max_abs)))
    });

    let p = pl.cfg.model;
    let case = format!("{} N={} string start", spin_label(p.two_ell), p.n_sites);
    pl.add("configured-solution", case, 1e-10, Bound::Below, move || {
        let sol = solve_bethe(&p, 0, &string_init(&p), None, SolverOptions::default())?;
        let roots: Vec<String> = sol.lambdas.iter().map(|z| format!("{:.12}{:+.12}i", z.re, z.im)).collect();
        Ok((sol.residual, format!("nu={} roots=[{}]", sol.nu, roots.join(", "))))
    });
    Ok(())
}

fn plan_thermo(pl: &mut Planner) -> Result<(), CliError> {
    let nq = DEFAULT_QUAD_NODES;
    for tl in pl.cfg.spins(&[1, 2]) {
        let p = params_or_err(pl.cfg, tl)?;
        let lab = spin_label(tl);
        pl.below("ground-density", format!("{lab} {nq} nodes"), 1e-6, move || ground_residual(&p, nq));
        pl.add("ground-constant", lab.clone(), 0.0, Bound::AtMost, move || {
            Ok(((ground_density(&p).constant - 0.5).abs(), "|constant − 1/2|".into()))
        });
        pl.below("sigma-density", format!("{lab} {nq} nodes"), 1e-6, move || Ok(excitation_residuals(&p, nq)?.sigma));
        pl.below("omega-minus-density", format!("{lab} {nq} nodes"), 1e-6, move || {
            Ok(excitation_residuals(&p, nq)?.omega_minus)
        });
        pl.below("omega-plus-density", format!("{lab} {nq} nodes"), 1e-6, move || {
            Ok(excitation_residuals(&p, nq)?.omega_plus)
        });
        pl.below("omega-zero-density", format!("{lab} {nq} nodes"), 1e-6, move || {
            Ok(excitation_residuals(&p, nq)?.omega_zero)
        });
        pl.add("free-energy", format!("{lab} 5-point grid"), 1e-6, Bound::Below, move || {
            let c = compare_free_energy(&p, &default_free_energy_grid(&p), nq)?;
            Ok((c.max_deviation, format!("offset {:.6e}", c.offset)))
        });
        for v in Variant::ALL {
            let holes = [(0.1, -0.2), (-0.35, 0.25)];
            pl.below("excited-table", format!("{lab} {v}"), 1e-12, move || {
                let mut worst: f64 = 0.0;
                for &(x1, x2) in &holes {
                    let st = solve_excited_state(&p, v, x1, x2)?;
                    let s = 0.5 * (x1 + x2);
                    let table = if v.epsilon() == 1 { s + 0.5 } else { s };
                    let lattice = st.x_extra - st.x_extra_table;
                    worst = worst
                        .max((st.x_minus - s).abs())
                        .max((st.x_extra_table - table).abs())
                        .max((lattice - lattice.round()).abs());
                }
                Ok(worst)
            });
            pl.below("excited-constraints", format!("{lab} {v}"), 1e-7, move || {
                let mut worst: f64 = 0.0;
                for &(x1, x2) in &holes {
                    let st = solve_excited_state(&p, v, x1, x2)?;
                    worst = worst
                        .max(st.uniqueness_residual)
                        .max(st.sum_rule_residual)
                        .max(st.string_rule_residual)
                        .max(st.minus_residual)
                        .max((st.x_extra_solved - st.x_extra).abs());
                }
                Ok(worst)
            });
            pl.below("polarization-sum", format!("{lab} {v}"), 1e-9, move || {
                let st = solve_excited_state(&p, v, 0.1, -0.2)?;
                polarization(&p, &st)?;
                Ok(polarization_sum_identity(&p, &st, nq)?.residual())
            });
        }
        pl.below("s-series-vs-closed", format!("{lab} 11 points"), 1e-7, move || {
            let grid: Vec<f64> = (0..11).map(|k| -0.9 + 0.18 * k as f64).collect();
            series_vs_closed(&p, &grid)
        });
        pl.below("big-s-three-way", lab.clone(), 1e-8, move || {
            let g = 1.0 - 4.0 * p.ell() * p.eta();
            let mut worst: f64 = 0.0;
            for x in [0.2, -0.35, 0.7] {
                for mu in [g, 4.0 * p.ell() * p.eta(), 0.3] {
                    let a = big_s_series(&p, x, mu)?;
                    let b = big_s_double_product(&p, x, mu)?;
                    let c = big_s_q_gamma(&p, x, mu)?;
                    worst = worst.max((a - b).norm()).max((a - c).norm());
                }
            }
            Ok(worst)
        });
        pl.below("s-vs-r", format!("{lab} 9 points in [-0.4, 0.4]"), 1e-6, move || {
            let grid: Vec<f64> = (0..9).map(|k| -0.4 + 0.1 * k as f64).collect();
            s_vs_r_spread(&p, &grid)
        });
    }
    Ok(())
}

fn plan(cfg: &RunConfig, suite: Suite) -> Result<Vec<Planned>, CliError> {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Elliptic, Suite::Sklyanin, Suite::Sos, Suite::Bethe, Suite::Thermo],
        s => vec![s],
    };
    let mut out = Vec::new();
    for s in suites {
        let mut pl = Planner { cfg, suite: s.name(), out: Vec::new() };
        match s {
            Suite::Elliptic => plan_elliptic(&mut pl),
            Suite::Sklyanin => plan_sklyanin(&mut pl)?,
            Suite::Sos => plan_sos(&mut pl)?,
            Suite::Bethe => plan_bethe(&mut pl)?,
            Suite::Thermo => plan_thermo(&mut pl)?,
            Suite::All => unreachable!(),
        }
        out.extend(pl.out);
    }
    Ok(out)
}

fn evaluate(p: &Planned) -> CheckResult {
    let (measured, note) = match (p.measure)() {
        Ok((x, note)) => (Some(x), note),
        Err(e) => (None, e.to_string()),
    };
    let pass = measured.is_some_and(|x| x.is_finite() && p.bound.holds(x, p.threshold));
    CheckResult {
        suite: p.suite,
        tag: p.tag,
        case: p.case.clone(),
        measured,
        bound: p.bound,
        threshold: p.threshold,
        pass,
        note,
    }
}

pub fn run_checks(cfg: &RunConfig, suite: Suite) -> Result<Vec<CheckResult>, CliError> {
    for key in cfg.tolerances.keys() {
        if !TAGS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("unknown tolerance key {key:?}")));
        }
    }
    let planned = plan(cfg, suite)?;
    Ok(planned.par_iter().map(evaluate).collect())
}

pub fn run(cfg: &RunConfig, suite: Suite) -> Result<(), CliError> {
    let results = run_checks(cfg, suite)?;
    let mut table = Table::new(["suite", "check", "case", "measured", "bound", "threshold", "pass", "note"]);
    for r in &results {
        table.push(vec![
            json!(r.suite),
            json!(r.tag),
            json!(r.case),
            r.measured.map(num).unwrap_or(serde_json::Value::Null),
            json!(r.bound.symbol()),
            num(r.threshold),
            json!(r.pass),
            json!(r.note),
        ]);
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    let mut metadata = base_metadata(cfg, &format!("verify {}", suite.name()));
    metadata.insert("quadrature_nodes".into(), json!(DEFAULT_QUAD_NODES));
    let mut summary = Map::new();
    summary.insert("total".into(), json!(results.len()));
    summary.insert("failed".into(), json!(failed));
    summary.insert("all_pass".into(), json!(failed == 0));
    Report { metadata, rows_key: "checks", table, summary: Some(summary) }.emit(cfg)?;
    for r in results.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {}/{} [{}]: {:?} {} {:e} {}", r.suite, r.tag, r.case, r.measured, r.bound.symbol(), r.threshold, r.note);
    }
    if failed > 0 {
        return Err(CliError::ChecksFailed { failed, total: results.len() });
    }
    Ok(())
}
