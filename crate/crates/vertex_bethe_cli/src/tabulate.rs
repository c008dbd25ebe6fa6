//! `tabulate`: free energy, densities, S-matrix eigenvalues and the S/R spread on a grid.

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use vertex_bethe::thermo::{
    compare_free_energy, default_free_energy_grid, excitation_densities, free_energy_strip, ground_density,
    s_matrix_closed, s_vs_r_check, FourierDensity, Variant, DEFAULT_QUAD_NODES,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::grid::Grid;
use crate::output::{base_metadata, num, Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    #[value(name = "free_energy", alias = "free-energy")]
    FreeEnergy,
    Densities,
    Smatrix,
    #[value(name = "s_vs_r", alias = "s-vs-r")]
    SVsR,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::FreeEnergy => "free_energy",
            Quantity::Densities => "densities",
            Quantity::Smatrix => "smatrix",
            Quantity::SVsR => "s_vs_r",
        }
    }
}

fn domain_error(points: &[f64], what: &str) -> CliError {
    let list: Vec<String> = points.iter().map(|x| x.to_string()).collect();
    CliError::Domain(format!("grid points outside {what}: [{}]", list.join(", ")))
}

/// Rejects any point outside `(lo, hi)`, or `[lo, hi]` when `closed`.
fn check_domain(points: &[f64], lo: f64, hi: f64, closed: bool) -> Result<(), CliError> {
    let bad: Vec<f64> = points
        .iter()
        .copied()
        .filter(|&x| if closed { !(x >= lo && x <= hi) } else { !(x > lo && x < hi) })
        .collect();
    if bad.is_empty() {
        return Ok(());
    }
    let what = if closed { format!("[{lo}, {hi}]") } else { format!("({lo}, {hi})") };
    Err(domain_error(&bad, &what))
}

fn density_meta(d: &FourierDensity) -> Value {
    json!({
        "constant": num(d.constant),
        "truncation": d.truncation,
        "tail_bound": num(d.tail_bound),
        "delta_weight": num(d.singular),
    })
}

fn lib_err(e: vertex_bethe::Error) -> CliError {
    match e {
        vertex_bethe::Error::Domain(m) => CliError::Domain(m),
        other => CliError::Usage(other.to_string()),
    }
}

pub fn build(cfg: &RunConfig, quantity: Quantity, grid: Option<Grid>) -> Result<Report, CliError> {
    let p = cfg.model;
    let mut metadata = base_metadata(cfg, &format!("tabulate {}", quantity.name()));
    let default = |lo: f64, hi: f64, n: usize| Grid { lo, hi, n };
    let (table, summary) = match quantity {
        Quantity::FreeEnergy => {
            let xs = match grid {
                Some(g) => g.points(),
                None => default_free_energy_grid(&p),
            };
            let (lo, hi) = free_energy_strip(&p);
            check_domain(&xs, lo, hi, false)?;
            let cmp = compare_free_energy(&p, &xs, DEFAULT_QUAD_NODES).map_err(lib_err)?;
            metadata.insert("quadrature_nodes".into(), json!(DEFAULT_QUAD_NODES));
            metadata.insert("strip".into(), json!([num(lo), num(hi)]));
            let mut t = Table::new(["lambda", "series", "quadrature", "deviation"]);
            for k in 0..xs.len() {
                let dev = cmp.quadrature[k] - cmp.series[k] - cmp.offset;
                t.push(vec![num(xs[k]), num(cmp.series[k]), num(cmp.quadrature[k]), num(dev)]);
            }
            let mut s = Map::new();
            s.insert("offset".into(), num(cmp.offset));
            s.insert("max_deviation".into(), num(cmp.max_deviation));
            (t, Some(s))
        }
        Quantity::Densities => {
            let xs = grid.unwrap_or(default(-0.5, 0.5, 201)).points();
            check_domain(&xs, -0.5, 0.5, true)?;
            let rho = ground_density(&p);
            let ex = excitation_densities(&p);
            metadata.insert(
                "densities".into(),
                json!({
                    "rho": density_meta(&rho),
                    "sigma_regular": density_meta(&ex.sigma),
                    "omega_minus": density_meta(&ex.omega_minus),
                    "omega_plus": density_meta(&ex.omega_plus),
                    "omega_zero": density_meta(&ex.omega_zero),
                }),
            );
            let rows: Vec<Vec<Value>> = xs
                .par_iter()
                .map(|&x| {
                    vec![
                        num(x),
                        num(rho.eval(x)),
                        num(ex.sigma.eval(x)),
                        num(ex.omega_minus.eval(x)),
                        num(ex.omega_plus.eval(x)),
                        num(ex.omega_zero.eval(x)),
                    ]
                })
                .collect();
            let mut t = Table::new(["x", "rho", "sigma_regular", "omega_minus", "omega_plus", "omega_zero"]);
            rows.into_iter().for_each(|r| t.push(r));
            (t, None)
        }
        Quantity::Smatrix => {
            let xs = grid.unwrap_or(default(-0.4, 0.4, 9)).points();
            check_domain(&xs, -1.0, 1.0, false)?;
            metadata.insert("form".into(), json!("theta quotient, S(0) = permutation"));
            let rows = xs
                .par_iter()
                .map(|&x| {
                    let mut row = vec![num(x)];
                    for v in Variant::ALL {
                        let s = s_matrix_closed(&p, v, x)?;
                        row.push(num(s.re));
                        row.push(num(s.im));
                    }
                    Ok(row)
                })
                .collect::<vertex_bethe::Result<Vec<_>>>()
                .map_err(lib_err)?;
            let mut cols = vec!["x".to_string()];
            for v in Variant::ALL {
                cols.push(format!("{}_re", v.label()));
                cols.push(format!("{}_im", v.label()));
            }
            let mut t = Table::new(cols);
            rows.into_iter().for_each(|r| t.push(r));
            (t, None)
        }
        Quantity::SVsR => {
            let xs = grid.unwrap_or(default(-0.4, 0.4, 9)).points();
            check_domain(&xs, -1.0, 1.0, false)?;
            let checks = s_vs_r_check(&p, &xs).map_err(lib_err)?;
            let mut t = Table::new(["x", "spread"]);
            let mut worst: f64 = 0.0;
            for c in &checks {
                worst = worst.max(c.spread);
                t.push(vec![num(c.x), num(c.spread)]);
            }
            let mut s = Map::new();
            s.insert("max_spread".into(), num(worst));
            (t, Some(s))
        }
    };
    Ok(Report { metadata, rows_key: "rows", table, summary })
}

pub fn run(cfg: &RunConfig, quantity: Quantity, grid: Option<Grid>) -> Result<(), CliError> {
    build(cfg, quantity, grid)?.emit(cfg)
}
