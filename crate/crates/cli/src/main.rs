//! `mcshape`: measure multi-component shapes, segment images, and run the
//! invariance and oracle checks from the command line.
//!
//! Exit codes: 0 ok, 2 parse or usage error, 3 degenerate shape,
//! 4 degenerate histogram, 5 invariance failure.

mod commands;
mod json;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{value_parser, ArgGroup, Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser)]
#[command(
    name = "mcshape",
    version,
    about = "Affine moment invariants for multi-component shapes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure A and M of a label image, polygon file or binary mask.
    Measure(MeasureArgs),
    /// Median filter and multi-level Otsu; writes a label image.
    Segment(SegmentArgs),
    /// Write a synthetic label image.
    Synthesize(SynthesizeArgs),
    /// Check that M is unchanged under random affine maps.
    Invariance(InvarianceArgs),
    /// Compare the mean squared triangle area with its closed form.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").args(["labels", "polygons", "mask"])))]
pub struct MeasureArgs {
    /// Label image (PGM or PNG); each non-background value is a component.
    #[arg(long, value_name = "PATH")]
    pub labels: Option<PathBuf>,
    /// Polygon JSON file.
    #[arg(long, value_name = "PATH")]
    pub polygons: Option<PathBuf>,
    /// Grayscale image; connected non-background pixels form components.
    #[arg(long, value_name = "PATH")]
    pub mask: Option<PathBuf>,
    /// Background label (or gray value with --mask).
    #[arg(long, default_value_t = 0)]
    pub background: u32,
    /// Pixel connectivity for --mask: 4 or 8.
    #[arg(long, default_value = "8", value_parser = ["4", "8"])]
    pub connectivity: String,
    /// Output format. CSV without an input reads label-image paths from stdin.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Reject polygon components that share area.
    #[arg(long)]
    pub validate_overlap: bool,
    /// Cells per unit length used by --validate-overlap.
    #[arg(long, default_value_t = 64.0, requires = "validate_overlap")]
    pub overlap_resolution: f64,
}

#[derive(Args)]
pub struct SegmentArgs {
    /// Grayscale input image (PGM or PNG).
    pub input: PathBuf,
    /// Median window (odd); 1 disables filtering.
    #[arg(long, default_value_t = 3)]
    pub median: usize,
    /// Number of Otsu classes.
    #[arg(long, default_value_t = 4, value_parser = value_parser!(u32).range(2..=4))]
    pub classes: u32,
    /// Output label image (PGM, gray value = label).
    #[arg(long, short)]
    pub output: PathBuf,
    /// Otsu class written as background label 0; 0 is the darkest.
    #[arg(long, default_value_t = 0)]
    pub background_class: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    /// Four squares centred at (±c, ±c), c = (side + spacing) / 2.
    Grid2x2,
}

#[derive(Args)]
pub struct SynthesizeArgs {
    #[arg(long, value_enum, default_value_t = Layout::Grid2x2)]
    pub layout: Layout,
    /// Square side length.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub side: f64,
    /// Gap between neighbouring squares.
    #[arg(long, allow_negative_numbers = true)]
    pub spacing: f64,
    /// Pixels per unit length.
    #[arg(long, default_value_t = 32, value_parser = value_parser!(u32).range(1..))]
    pub resolution: u32,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").args(["polygons", "labels"]).required(true)))]
pub struct InvarianceArgs {
    #[arg(long, value_name = "PATH")]
    pub polygons: Option<PathBuf>,
    /// Not supported; present so that raster input gets a clear refusal.
    #[arg(long, value_name = "PATH")]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value_t = 100, value_parser = value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted relative deviation of M.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Polygon JSON (components merged) or image (non-background pixels).
    #[arg(long, value_name = "PATH")]
    pub shape: PathBuf,
    #[arg(long, default_value_t = 1_000_000, value_parser = value_parser!(u64).range(2..))]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact tuple sums over pixel centres (masks up to 400 pixels).
    #[arg(long)]
    pub discrete: bool,
    /// Background gray value for image input.
    #[arg(long, default_value_t = 0)]
    pub background: u8,
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("MCSHAPE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "MCSHAPE_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Measure(a) => commands::cmd_measure(&a, out),
        Command::Segment(a) => commands::cmd_segment(&a, out),
        Command::Synthesize(a) => commands::cmd_synthesize(&a, out),
        Command::Invariance(a) => commands::cmd_invariance(&a, out),
        Command::Oracle(a) => commands::cmd_oracle(&a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(|e| Failure::Lib(e.into())));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("mcshape: {f}");
            ExitCode::from(f.code())
        }
    }
}
