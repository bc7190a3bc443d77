//! Run configuration with three precedence layers: built-in defaults,
//! then a JSON config file, then command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use susyscat_core::{IntegratorSpec, KGrid, Method, ModelParams};

use crate::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// One `d` or a list of them, as a config file may specify either.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum DField {
    One(f64),
    Many(Vec<f64>),
}

/// Shape of the JSON config file; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    a1: Option<f64>,
    b: Option<f64>,
    d: Option<DField>,
    k_min: Option<f64>,
    k_max: Option<f64>,
    n_k: Option<usize>,
    x_max: Option<f64>,
    n_x: Option<usize>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub a1: f64,
    pub b: f64,
    pub d_list: Vec<f64>,
    /// Whether d came from a flag or the config file rather than the
    /// built-in default; `sweep` insists on an explicit list.
    pub d_explicit: bool,
    pub k_min: f64,
    pub k_max: f64,
    pub n_k: usize,
    pub x_max: f64,
    pub n_x: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Flag values as parsed; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub a1: Option<f64>,
    pub b: Option<f64>,
    pub d: Vec<f64>,
    pub k_min: Option<f64>,
    pub k_max: Option<f64>,
    pub n_k: Option<usize>,
    pub x_max: Option<f64>,
    pub n_x: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_A1: f64 = 3.0;
pub const DEFAULT_B: f64 = 0.5;
pub const DEFAULT_D: f64 = -0.1;
pub const DEFAULT_K_MIN: f64 = 1e-3;
pub const DEFAULT_K_MAX: f64 = 3.0;
pub const DEFAULT_N_K: usize = 2000;
pub const DEFAULT_N_X: usize = 8400;

impl RunConfig {
    pub fn resolve(config_path: Option<&Path>, flags: &Overrides) -> Result<Self, AppError> {
        let file = match config_path {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| AppError::Io(format!("reading {}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text)
                    .map_err(|e| AppError::Params(format!("config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };

        let a1 = flags.a1.or(file.a1).unwrap_or(DEFAULT_A1);
        let b = flags.b.or(file.b).unwrap_or(DEFAULT_B);
        let (d_list, d_explicit) = if !flags.d.is_empty() {
            (flags.d.clone(), true)
        } else {
            match file.d {
                Some(DField::One(d)) => (vec![d], true),
                Some(DField::Many(ds)) => (ds, true),
                None => (vec![DEFAULT_D], false),
            }
        };
        if d_list.is_empty() {
            return Err(AppError::Params("empty d list".into()));
        }

        let k_min = flags.k_min.or(file.k_min).unwrap_or(DEFAULT_K_MIN);
        let k_max = flags.k_max.or(file.k_max).unwrap_or(DEFAULT_K_MAX);
        let n_k = flags.n_k.or(file.n_k).unwrap_or(DEFAULT_N_K);
        let x_max = flags.x_max.or(file.x_max).unwrap_or(25.0 / a1);
        let n_x = flags.n_x.or(file.n_x).unwrap_or(DEFAULT_N_X);
        let format = flags.format.or(file.format).unwrap_or(OutputFormat::Csv);
        let out = flags.out.clone().or(file.out);

        Ok(Self {
            a1,
            b,
            d_list,
            d_explicit,
            k_min,
            k_max,
            n_k,
            x_max,
            n_x,
            format,
            out,
        })
    }

    /// The single parameter set of non-sweep commands.
    pub fn params(&self) -> Result<ModelParams, AppError> {
        if self.d_list.len() != 1 {
            return Err(AppError::Params(format!(
                "this command takes a single d, got {} values",
                self.d_list.len()
            )));
        }
        Ok(ModelParams::new(self.a1, self.b, self.d_list[0])?)
    }

    pub fn params_for(&self, d: f64) -> Result<ModelParams, AppError> {
        Ok(ModelParams::new(self.a1, self.b, d)?)
    }

    pub fn kgrid(&self) -> Result<KGrid, AppError> {
        Ok(KGrid::new(self.k_min, self.k_max, self.n_k)?)
    }

    /// Integrator specs derived from the x-grid settings.
    pub fn integrator_specs(&self) -> (IntegratorSpec, IntegratorSpec) {
        let step = self.x_max / self.n_x as f64;
        let background = IntegratorSpec {
            method: Method::Numerov,
            step,
            x_start: 1e-4,
            x_match: self.x_max,
            origin_order: 2,
        };
        let partner = IntegratorSpec {
            method: Method::Numerov,
            step,
            x_start: step / 2.0,
            x_match: self.x_max,
            origin_order: 1,
        };
        (background, partner)
    }

    /// Output path: `--out`/config value, or `<stem>.<ext>` by format.
    pub fn out_path(&self, stem: &str) -> PathBuf {
        self.out
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{stem}.{}", self.format.extension())))
    }
}
