mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Spectra of PT-symmetric oscillators on complex and tobogganic contours.
#[derive(Debug, Parser)]
#[command(name = "toboggan", version, about)]
pub struct Cli {
    /// Read the subcommand and its flags from a JSON file
    /// `{"command": ..., "args": {...}}`. Flags given on the command line
    /// are appended to those from the file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Directory for output files and relative `--output` paths.
    #[arg(long, global = true, env = "TOBOGGAN_OUT_DIR", value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the asymptotic decay wedges of exp(∓x^p/p) for x^D potentials.
    Wedges(WedgesArgs),
    /// Sample and classify a PT-symmetric contour, optionally as SVG.
    Contour(ContourCmd),
    /// Apply the change of variables ix = (iy)^α to a potential.
    Transform(TransformArgs),
    /// Solve the quasi-exact conditions of the decadic oscillator.
    Qe(QeArgs),
    /// Compute a spectrum by finite differences along a contour.
    Spectrum(SpectrumArgs),
    /// Write the seven cut-plane figures as SVG.
    Figures(FiguresArgs),
    /// Run the verification suite and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Minus,
    Plus,
}

#[derive(Debug, Args)]
pub struct WedgesArgs {
    /// Dominant exponent D (even, ≥ 2).
    #[arg(long = "D", value_name = "D")]
    pub d: i64,
    #[arg(long, value_enum, default_value = "minus")]
    pub sign: SignArg,
    /// Wedges listed per side.
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// x = s - iε
    Bg,
    /// n-th left wedge to n-th right wedge of exp(∓x^p/p)
    Join,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    #[arg(long, value_enum, default_value = "bg")]
    pub variant: Variant,
    /// Wedge index for `join`.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Wedge power p for `join`.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Distance of closest approach to the origin.
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    /// Angular switching scale for `join`.
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    /// Map the contour through ix = (iy)^α.
    #[arg(long, value_name = "ALPHA", value_parser = commands::number)]
    pub liouville: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ContourCmd {
    #[command(flatten)]
    pub contour: ContourArgs,
    /// Dominant exponent used to classify the endpoints.
    #[arg(long = "D", value_name = "D", default_value_t = 2)]
    pub d: i64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    pub s_max: f64,
    /// Defaults to -s_max.
    #[arg(long, allow_hyphen_values = true)]
    pub s_min: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write a cut-plane diagram.
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    /// Cut rotation in the diagram, radians anticlockwise.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub cut_rotation: f64,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// Potential document (JSON).
    #[arg(long, value_name = "FILE", conflicts_with = "term")]
    pub potential: Option<PathBuf>,
    /// Inline term COUPLING@EXPONENT, e.g. `-1@2` or `1/9@-4/3`.
    #[arg(long, value_name = "C@E", allow_hyphen_values = true)]
    pub term: Vec<String>,
    /// Monomial basis of inline terms.
    #[arg(long, value_enum, default_value = "ix")]
    pub basis: BasisArg,
    /// Centrifugal strength γ of a γ/x² term.
    #[arg(long, allow_hyphen_values = true, value_parser = commands::number)]
    pub centrifugal: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Ix,
    X,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Exponent α of ix = (iy)^α (rational, e.g. `3` or `1/3`).
    #[arg(long)]
    pub alpha: String,
    /// Coupling scale λ (rational or decimal).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    /// Exponents whose terms are not scaled by λ.
    #[arg(long, allow_hyphen_values = true)]
    pub exempt: Vec<String>,
    /// Old energy to fold into the new potential; symbolic when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QeArgs {
    #[arg(long = "M", value_name = "M")]
    pub m: u32,
    #[arg(long = "N", value_name = "N")]
    pub n: u32,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = commands::number)]
    pub alpha: f64,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = commands::number)]
    pub beta: f64,
    #[arg(long, default_value_t = -50.0, allow_hyphen_values = true)]
    pub e_min: f64,
    #[arg(long, default_value_t = 50.0, allow_hyphen_values = true)]
    pub e_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub e_step: f64,
    #[arg(long, default_value_t = -1.0e4, allow_hyphen_values = true)]
    pub g2_min: f64,
    #[arg(long, default_value_t = 1.0e4, allow_hyphen_values = true)]
    pub g2_max: f64,
    /// Also search for complex-conjugate solutions.
    #[arg(long)]
    pub complex: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Shortcut for z² + (α² - 1/4)/z².
    #[arg(long, value_name = "ALPHA", conflicts_with_all = ["potential", "term"], value_parser = commands::number)]
    pub harmonic: Option<f64>,
    #[command(flatten)]
    pub contour: ContourArgs,
    /// Half-width of the parameter window.
    #[arg(long, default_value_t = 8.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 801)]
    pub points: usize,
    /// Eigenvalues kept (0 keeps all).
    #[arg(long, default_value_t = 20)]
    pub k: usize,
    /// Relative reality tolerance for the filtered real levels.
    #[arg(long, default_value_t = toboggan::spectra::REALITY_TOL)]
    pub tol: f64,
    /// Add one grid-halving Richardson step.
    #[arg(long)]
    pub extrapolate: bool,
    /// Refine these energy guesses by shooting.
    #[arg(long, allow_hyphen_values = true)]
    pub shoot: Vec<f64>,
    /// Grid for shooting refinement.
    #[arg(long, default_value_t = 8001)]
    pub shoot_points: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Only these figure numbers.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Only these check ids.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
    /// Also write the results as JSON.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Exit status 2: the request itself is malformed.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use toboggan::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(E::InvalidParameter(_) | E::Parse(_) | E::Json(_) | E::DuplicateExponent(_) | E::NotEvenExponent(_)) => 2,
        _ => 1,
    }
}

/// Splices the contents of `--config FILE` in front of the remaining flags.
fn expand_config(args: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let mut out = Vec::with_capacity(args.len());
    let mut config = None;
    let mut it = args.into_iter();
    out.extend(it.next());
    while let Some(a) = it.next() {
        let text = a.to_string_lossy().into_owned();
        if text == "--config" {
            let path = it.next().ok_or_else(|| UsageError("--config needs a file".into()))?;
            config = Some(PathBuf::from(path));
        } else if let Some(path) = text.strip_prefix("--config=") {
            config = Some(PathBuf::from(path));
        } else {
            out.push(a);
        }
    }
    if let Some(path) = config {
        let from_file = config::read_config(&path).map_err(|e| UsageError(format!("{e:#}")))?;
        out.splice(1..1, from_file.into_iter().map(OsString::from));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
