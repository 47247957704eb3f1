//! The run configuration, as read from `--config` or assembled from flags.

use serde::{Deserialize, Serialize};

use bandspec_core::parse::{parse_alpha_spec, parse_weight_spec};
use bandspec_core::pseudospectrum::GridSpec;
use bandspec_core::{BandParams, Complex64, SpaceDescriptor, TruncationConfig, WeightFamily};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Classify,
    Ergodics,
    Resolve,
    Cesaro,
    Pseudospec,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Band {
    pub r: f64,
    pub s: f64,
}

/// Exactly one space family; weights and alpha sequences use the compact
/// text forms of `bandspec_core::parse`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SpaceConfig {
    #[serde(rename = "lp")]
    Lp {
        #[serde(default = "default_p")]
        p: f64,
        #[serde(default = "default_weight")]
        weight: String,
    },
    #[serde(rename = "lambda")]
    Lambda { alpha: String },
    #[serde(rename = "lambda-dual")]
    LambdaDual { alpha: String },
}

fn default_p() -> f64 {
    2.0
}

fn default_weight() -> String {
    "unit".into()
}

impl Default for SpaceConfig {
    fn default() -> Self {
        SpaceConfig::Lp {
            p: default_p(),
            weight: default_weight(),
        }
    }
}

impl SpaceConfig {
    pub fn descriptor(&self) -> Result<SpaceDescriptor, CliError> {
        Ok(match self {
            SpaceConfig::Lp { p, weight } => SpaceDescriptor::weighted(*p, parse_weight_spec(weight)?)?,
            SpaceConfig::Lambda { alpha } => SpaceDescriptor::power_series(&parse_alpha_spec(alpha)?, false)?,
            SpaceConfig::LambdaDual { alpha } => SpaceDescriptor::power_series(&parse_alpha_spec(alpha)?, true)?,
        })
    }

    /// `(p, v)` for the weighted family; a validation error otherwise.
    pub fn weighted(&self, what: &str) -> Result<(f64, WeightFamily), CliError> {
        match self {
            SpaceConfig::Lp { p, weight } => Ok((*p, parse_weight_spec(weight)?)),
            _ => Err(CliError::Validation(format!("{what} is only available on lp spaces"))),
        }
    }
}

/// Optional overrides of the default grid around the spectrum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    pub re_min: Option<f64>,
    pub re_max: Option<f64>,
    pub im_min: Option<f64>,
    pub im_max: Option<f64>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub m: Option<usize>,
}

impl GridOverrides {
    pub fn apply(&self, mut spec: GridSpec) -> GridSpec {
        let GridOverrides {
            re_min,
            re_max,
            im_min,
            im_max,
            nx,
            ny,
            m,
        } = *self;
        spec.re_min = re_min.unwrap_or(spec.re_min);
        spec.re_max = re_max.unwrap_or(spec.re_max);
        spec.im_min = im_min.unwrap_or(spec.im_min);
        spec.im_max = im_max.unwrap_or(spec.im_max);
        spec.nx = nx.unwrap_or(spec.nx);
        spec.ny = ny.unwrap_or(spec.ny);
        spec.m = m.unwrap_or(spec.m);
        spec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        Complex64::new(p.re, p.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericConfig {
    #[serde(default)]
    pub truncation: TruncationConfig,
    #[serde(default)]
    pub grid: GridOverrides,
    /// Largest Cesàro index.
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Basis vectors `e_j` probed by the Cesàro experiment.
    #[serde(default = "default_probes")]
    pub probes: Vec<usize>,
    /// The point `alpha` for `resolve`.
    #[serde(default)]
    pub alpha: Option<Point>,
    /// Right-hand side for `resolve`; `e_0` when absent.
    #[serde(default)]
    pub y: Option<Vec<f64>>,
    /// Grades compared against the graded spectrum.
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    #[serde(default)]
    pub seed: u64,
    /// Random instances per `verify` check.
    #[serde(default = "default_cases")]
    pub cases: usize,
}

fn default_n_max() -> usize {
    1000
}

fn default_probes() -> Vec<usize> {
    vec![0]
}

fn default_k_max() -> u32 {
    6
}

fn default_cases() -> usize {
    64
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            truncation: TruncationConfig::default(),
            grid: GridOverrides::default(),
            n_max: default_n_max(),
            probes: default_probes(),
            alpha: None,
            y: None,
            k_max: default_k_max(),
            seed: 0,
            cases: default_cases(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Standard output when absent.
    #[serde(default)]
    pub path: Option<String>,
    /// Per-command default when absent: CSV for `cesaro` and `pseudospec`.
    #[serde(default)]
    pub format: Option<Format>,
    /// Where `pseudospec` writes its contour summary in CSV mode; next to
    /// `path` (or on standard error) when absent.
    #[serde(default)]
    pub summary_path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    /// Required by every command except `verify`.
    #[serde(default)]
    pub band: Option<Band>,
    #[serde(default)]
    pub space: SpaceConfig,
    #[serde(default)]
    pub numeric: NumericConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn band(&self) -> Result<BandParams, CliError> {
        let band = self
            .band
            .ok_or_else(|| CliError::Validation("this command needs the band parameters r and s".into()))?;
        Ok(BandParams::new(band.r, band.s)?)
    }

    pub fn format(&self) -> Format {
        self.output.format.unwrap_or(match self.command {
            Command::Cesaro | Command::Pseudospec => Format::Csv,
            _ => Format::Json,
        })
    }

    /// Checks everything that does not need a computation.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.command != Command::Verify {
            self.band()?;
            self.space.descriptor()?;
        }
        let t = self.numeric.truncation;
        TruncationConfig::new(t.m, t.tol)?;
        let csv_ok = matches!(self.command, Command::Cesaro | Command::Pseudospec);
        if self.format() == Format::Csv && !csv_ok {
            return Err(CliError::Validation(format!(
                "{:?} reports are JSON only",
                self.command
            )));
        }
        match self.command {
            Command::Resolve => {
                self.space.weighted("resolve")?;
                if self.numeric.alpha.is_none() {
                    return Err(CliError::Validation("resolve needs a point alpha".into()));
                }
                if let Some(y) = &self.numeric.y {
                    if y.is_empty() || y.len() > t.m || y.iter().any(|v| !v.is_finite()) {
                        return Err(CliError::Validation(format!(
                            "y must hold between 1 and m = {} finite values",
                            t.m
                        )));
                    }
                }
            }
            Command::Cesaro => {
                if self.numeric.n_max < 10 {
                    return Err(CliError::Validation("n_max must be at least 10".into()));
                }
                if self.numeric.probes.is_empty() {
                    return Err(CliError::Validation("cesaro needs at least one probe".into()));
                }
            }
            Command::Pseudospec => {
                let (p, _) = self.space.weighted("pseudospec")?;
                if p != 2.0 {
                    return Err(CliError::Validation(
                        "pseudospectra are computed in l2(v); set p = 2".into(),
                    ));
                }
            }
            Command::Classify if self.numeric.k_max < 2 => {
                return Err(CliError::Validation("k_max must be at least 2".into()));
            }
            Command::Verify if self.numeric.cases == 0 => {
                return Err(CliError::Validation("verify needs at least one case".into()));
            }
            _ => {}
        }
        Ok(())
    }
}
