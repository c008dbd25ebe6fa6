//! Run configuration: TOML file values overridden by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use vertex_bethe::sos::GaugeParams;
use vertex_bethe::sklyanin::DEFAULT_SEED;
use vertex_bethe::{Complex64, ModelParams};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ell: Option<f64>,
    pub t: Option<f64>,
    pub r: Option<u32>,
    pub r_prime: Option<u32>,
    pub n_sites: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    /// `[re, im]`.
    pub s_plus: Option<[f64; 2]>,
    pub s_minus: Option<[f64; 2]>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Flag values; `None` means "not given".
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub ell: Option<f64>,
    pub t: Option<f64>,
    pub r: Option<u32>,
    pub r_prime: Option<u32>,
    pub n_sites: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelParams,
    pub gauge: GaugeParams,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Whether the spin was chosen by the user rather than defaulted.
    pub explicit_spin: bool,
}

fn two_ell_from(ell: f64) -> Result<u32, CliError> {
    let d = 2.0 * ell;
    if !(d >= 1.0) || (d - d.round()).abs() > 1e-12 || d > 64.0 {
        return Err(CliError::Usage(format!("ell = {ell} is not a positive half-integer")));
    }
    Ok(d.round() as u32)
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(CliError::Usage(format!("format must be json or csv, got {other:?}"))),
    }
}

impl RunConfig {
    pub fn resolve(file: Option<FileConfig>, flags: &Overrides) -> Result<Self, CliError> {
        let file = file.unwrap_or_default();
        let ell = flags.ell.or(file.ell);
        let two_ell = ell.map(two_ell_from).transpose()?.unwrap_or(1);
        let (dr, drp) = ModelParams::default_r(two_ell);
        let model = ModelParams {
            two_ell,
            t: flags.t.or(file.t).unwrap_or(2.0),
            r: flags.r.or(file.r).unwrap_or(dr),
            r_prime: flags.r_prime.or(file.r_prime).unwrap_or(drp),
            n_sites: flags.n_sites.or(file.n_sites).unwrap_or(2),
        };
        model.validate().map_err(|e| CliError::Usage(e.to_string()))?;

        let mut gauge = GaugeParams::default();
        if let Some([re, im]) = file.s_plus {
            gauge.s_plus = Complex64::new(re, im);
        }
        if let Some([re, im]) = file.s_minus {
            gauge.s_minus = Complex64::new(re, im);
        }
        gauge.validate(model.r, model.eta(), model.tau()).map_err(|e| CliError::Usage(e.to_string()))?;

        for (key, &v) in &file.tolerances {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CliError::Usage(format!("tolerance {key} = {v} must be positive")));
            }
        }

        let format = match (flags.format, file.format.as_deref()) {
            (Some(f), _) => f,
            (None, Some(s)) => parse_format(s)?,
            (None, None) => Format::Json,
        };
        Ok(RunConfig {
            model,
            gauge,
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            tolerances: file.tolerances,
            format,
            out: flags.out.clone().or(file.out),
            explicit_spin: ell.is_some(),
        })
    }

    /// Parameters for spin `two_ell`: the configured ones when the spin
    /// matches, otherwise that spin's defaults at the configured `t`.
    pub fn params_for(&self, two_ell: u32) -> Result<ModelParams, CliError> {
        if two_ell == self.model.two_ell {
            return Ok(self.model);
        }
        let (r, rp) = ModelParams::default_r(two_ell);
        ModelParams::new(two_ell, self.model.t, r, rp, 2).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// The configured spin when given, otherwise `defaults`.
    pub fn spins(&self, defaults: &[u32]) -> Vec<u32> {
        if self.explicit_spin {
            vec![self.model.two_ell]
        } else {
            defaults.to_vec()
        }
    }

    pub fn tolerance(&self, id: &str, default: f64) -> f64 {
        self.tolerances.get(id).copied().unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let c = RunConfig::resolve(None, &Overrides::default()).unwrap();
        assert_eq!(c.model, ModelParams::defaults(1).unwrap());
        assert!(!c.explicit_spin);
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig = toml::from_str("ell = 1.0\nt = 3.0\nn_sites = 4\nformat = \"csv\"").unwrap();
        let flags = Overrides { t: Some(2.5), ..Default::default() };
        let c = RunConfig::resolve(Some(file), &flags).unwrap();
        assert_eq!(c.model.two_ell, 2);
        assert_eq!((c.model.r, c.model.r_prime), (8, 1));
        assert_eq!(c.model.t, 2.5);
        assert_eq!(c.model.n_sites, 4);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("ell = 0.5\nbogus = 1").is_err());
    }

    #[test]
    fn odd_r_is_a_usage_error() {
        let file: FileConfig = toml::from_str("r = 7").unwrap();
        let err = RunConfig::resolve(Some(file), &Overrides::default()).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        assert!(err.to_string().contains("r is even, r′ is odd"), "{err}");
    }

    #[test]
    fn non_half_integer_spin_is_rejected() {
        let flags = Overrides { ell: Some(0.7), ..Default::default() };
        assert!(RunConfig::resolve(None, &flags).is_err());
    }
}
