//! Command-line flags, folded into a [`RunConfig`].

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Band, Command, Format, GridOverrides, NumericConfig, OutputConfig, Point, RunConfig, SpaceConfig};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "bandspec",
    version,
    about = "Spectra and ergodic behaviour of the band operator B(r,s)"
)]
pub struct Cli {
    /// Read the whole run from a JSON file instead of flags.
    #[arg(long, global = true)]
    pub config: Option<String>,

    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Spectrum and fine spectrum, with the statements they rest on.
    #[command(allow_negative_numbers = true)]
    Classify {
        #[command(flatten)]
        common: Common,
        /// Grades compared against the graded spectrum.
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
    /// Power boundedness, mean ergodicity and related verdicts.
    #[command(allow_negative_numbers = true)]
    Ergodics {
        #[command(flatten)]
        common: Common,
    },
    /// Applies the resolvent at a point outside the spectrum.
    #[command(allow_negative_numbers = true)]
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha_re: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha_im: f64,
        /// Right-hand side as comma-separated reals; e_0 by default.
        #[arg(long, value_delimiter = ',')]
        y: Option<Vec<f64>>,
        /// Truncation length.
        #[arg(long, default_value_t = 512)]
        m: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Cesàro means and normalised powers of basis vectors.
    #[command(allow_negative_numbers = true)]
    Cesaro {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
        /// Basis indices, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        probes: Vec<usize>,
    },
    /// Smallest singular values of finite sections over a grid.
    #[command(allow_negative_numbers = true)]
    Pseudospec {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        re_min: Option<f64>,
        #[arg(long)]
        re_max: Option<f64>,
        #[arg(long)]
        im_min: Option<f64>,
        #[arg(long)]
        im_max: Option<f64>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
        /// Section size.
        #[arg(long)]
        m: Option<usize>,
        /// Where to write the contour summary JSON.
        #[arg(long)]
        summary: Option<String>,
    },
    /// Runs the randomized self-checks and reports pass/fail counts.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        cases: usize,
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceKind {
    Lp,
    Lambda,
    LambdaDual,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub s: f64,
    #[arg(long, value_enum, default_value_t = SpaceKind::Lp)]
    pub space: SpaceKind,
    /// Exponent of lp(v).
    #[arg(long)]
    pub p: Option<f64>,
    /// Weight of lp(v), e.g. `unit`, `pow:2`, `geometric:e@log`.
    #[arg(long)]
    pub weight: Option<String>,
    /// Exponent sequence of the power series space, e.g. `log`, `affine:1,1`.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Output file; standard output by default.
    #[arg(long)]
    pub output: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl Common {
    fn space(&self) -> Result<SpaceConfig, CliError> {
        match self.space {
            SpaceKind::Lp => {
                if self.alpha.is_some() {
                    return Err(CliError::Validation(
                        "--alpha belongs to the lambda spaces, not lp".into(),
                    ));
                }
                Ok(SpaceConfig::Lp {
                    p: self.p.unwrap_or(2.0),
                    weight: self.weight.clone().unwrap_or_else(|| "unit".into()),
                })
            }
            SpaceKind::Lambda | SpaceKind::LambdaDual => {
                if self.p.is_some() || self.weight.is_some() {
                    return Err(CliError::Validation(
                        "--p and --weight belong to lp; the lambda spaces take --alpha".into(),
                    ));
                }
                let alpha = self
                    .alpha
                    .clone()
                    .ok_or_else(|| CliError::Validation("the lambda spaces need --alpha".into()))?;
                Ok(if self.space == SpaceKind::Lambda {
                    SpaceConfig::Lambda { alpha }
                } else {
                    SpaceConfig::LambdaDual { alpha }
                })
            }
        }
    }

    fn into_config(self, command: Command, numeric: NumericConfig) -> Result<RunConfig, CliError> {
        Ok(RunConfig {
            command,
            band: Some(Band { r: self.r, s: self.s }),
            space: self.space()?,
            numeric,
            output: OutputConfig {
                path: self.output.clone(),
                format: self.format.map(|f| match f {
                    FormatArg::Json => Format::Json,
                    FormatArg::Csv => Format::Csv,
                }),
                summary_path: None,
            },
        })
    }
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        match (self.config, self.command) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Validation(format!("cannot read config {path}: {e}")))?;
                RunConfig::from_json(&text)
            }
            (Some(_), Some(_)) => Err(CliError::Validation(
                "give either --config or a subcommand with flags, not both".into(),
            )),
            (None, None) => Err(CliError::Validation("no command given; see --help".into())),
            (None, Some(sub)) => sub.into_config(),
        }
    }
}

impl Sub {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let numeric = NumericConfig::default();
        match self {
            Sub::Classify { common, k_max } => {
                common.into_config(Command::Classify, NumericConfig { k_max, ..numeric })
            }
            Sub::Ergodics { common } => common.into_config(Command::Ergodics, numeric),
            Sub::Resolve {
                common,
                alpha_re,
                alpha_im,
                y,
                m,
                tol,
            } => common.into_config(
                Command::Resolve,
                NumericConfig {
                    alpha: Some(Point {
                        re: alpha_re,
                        im: alpha_im,
                    }),
                    y,
                    truncation: bandspec_core::TruncationConfig { m, tol },
                    ..numeric
                },
            ),
            Sub::Cesaro { common, n_max, probes } => common.into_config(
                Command::Cesaro,
                NumericConfig {
                    n_max,
                    probes,
                    ..numeric
                },
            ),
            Sub::Pseudospec {
                common,
                re_min,
                re_max,
                im_min,
                im_max,
                nx,
                ny,
                m,
                summary,
            } => {
                let grid = GridOverrides {
                    re_min,
                    re_max,
                    im_min,
                    im_max,
                    nx,
                    ny,
                    m,
                };
                let mut config = common.into_config(Command::Pseudospec, NumericConfig { grid, ..numeric })?;
                config.output.summary_path = summary;
                Ok(config)
            }
            Sub::Verify { seed, cases, output } => Ok(RunConfig {
                command: Command::Verify,
                band: None,
                space: SpaceConfig::default(),
                numeric: NumericConfig { seed, cases, ..numeric },
                output: OutputConfig {
                    path: output,
                    ..OutputConfig::default()
                },
            }),
        }
    }
}
