use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use glyphtopo::par::Execution;
use glyphtopo::topo::{Direction, ScanParams};
use glyphtopo_cli::{
    cmd_batch, cmd_extract, cmd_match, cmd_render, cmd_thin, cmd_train, format_ranking, load_store,
    parse_directions, write, CliError, CliResult, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "glyphtopo",
    version,
    about = "Topographic stroke features of binary character glyphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

// an alias so clap takes the parsed list as one value instead of repeating the flag
type DirectionList = Vec<Direction>;

#[derive(Args)]
struct Tuning {
    /// Minimum terminal run length of a flat apex
    #[arg(long, default_value_t = ScanParams::DEFAULT_XI)]
    xi: usize,
    /// Minimum length of a straight line
    #[arg(long, default_value_t = ScanParams::DEFAULT_EPSILON)]
    epsilon: usize,
    /// Viewing directions to scan, e.g. NSEW or N,E
    #[arg(long, default_value = "NSEW", value_parser = parse_directions)]
    directions: DirectionList,
    /// Input is already a width-1 skeleton
    #[arg(long)]
    skip_thinning: bool,
}

impl Tuning {
    fn config(&self) -> RunConfig {
        RunConfig {
            xi: self.xi,
            epsilon: self.epsilon,
            directions: self.directions.clone(),
            skip_thinning: self.skip_thinning,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the shape graph of an image as JSON
    Extract {
        image: PathBuf,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Write an SVG overlay and, next to it, the graph in DOT
    Render {
        image: PathBuf,
        /// SVG file; the DOT file gets the same name with a .dot extension
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Write the thinned image as plain P1
    Thin {
        image: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a training store from DIR/<label>/<image>
    Train {
        dir: PathBuf,
        #[arg(long)]
        store: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Rank the labels of a training store against an image
    Match {
        image: PathBuf,
        #[arg(long)]
        store: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Extract every image of a directory; writes one JSON per image and summary.tsv
    Batch {
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Extract { image, out, tuning } => {
            emit(out.as_deref(), &cmd_extract(&image, &tuning.config())?)
        }
        Command::Render { image, out, tuning } => {
            let (svg, dot) = cmd_render(&image, &tuning.config())?;
            write(&out, &svg)?;
            write(&out.with_extension("dot"), &dot)
        }
        Command::Thin { image, out } => emit(out.as_deref(), &cmd_thin(&image)?),
        Command::Train { dir, store, tuning } => cmd_train(&dir, &tuning.config())?
            .save(&store)
            .map_err(|e| CliError::Input(e.to_string())),
        Command::Match {
            image,
            store,
            tuning,
        } => {
            let store = load_store(&store)?;
            print!(
                "{}",
                format_ranking(&cmd_match(&image, &store, &tuning.config())?)
            );
            Ok(())
        }
        Command::Batch { dir, out, tuning } => {
            let report = cmd_batch(&dir, &out, &tuning.config(), Execution::default())?;
            print!("{}", report.summary());
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::Input(format!(
                    "{n} of {} files failed",
                    report.rows.len()
                ))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
