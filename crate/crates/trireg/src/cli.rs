use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{
    self, CountMethod, Format, MatrixFormat, Output, Property, ResolveArgs, What, Which,
};
use crate::error::CliError;
use crate::spec::RegionSpec;

/// Lozenge tilings of punctured triangular regions.
#[derive(Debug, Parser)]
#[command(name = "trireg", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Region spec: a TOML or JSON file, or the spec text itself.
    #[arg(long)]
    pub spec: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Balance, tileability and puncture summary.
    Check {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Count tilings.
    Count {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum, default_value = "both")]
        method: CountMethod,
    },
    /// Check sign and determinant identities on one region.
    Verify {
        #[command(flatten)]
        spec: SpecArg,
        /// Properties to check (comma separated); all by default.
        #[arg(long, value_enum, value_delimiter = ',')]
        property: Vec<Property>,
        #[arg(long, default_value_t = commands::DEFAULT_MAX_TILINGS)]
        max_tilings: u128,
    },
    /// Draw a region, a tiling, its lattice paths or its matching.
    Render {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum, default_value = "region")]
        what: What,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        tiling_index: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Resolve a puncture relative to a tiling.
    Resolve {
        #[command(flatten)]
        spec: SpecArg,
        /// Generator of the puncture to resolve.
        #[arg(long)]
        puncture: String,
        /// Resolve the covering region of the puncture and its overlapping partner.
        #[arg(long)]
        covering: bool,
        #[arg(long, default_value_t = 0)]
        tiling_index: usize,
        /// Draw splitting chains at random with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write before.svg, after.svg and resolved.toml here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print the matrix Z(T) or N(T).
    Matrix {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum, default_value = "z")]
        which: Which,
        #[arg(long, value_enum, default_value = "text")]
        format: MatrixFormat,
    },
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Check { spec } => commands::check(&RegionSpec::load(&spec.spec)?),
        Command::Count { spec, method } => commands::count(&RegionSpec::load(&spec.spec)?, method),
        Command::Verify {
            spec,
            property,
            max_tilings,
        } => commands::verify(&RegionSpec::load(&spec.spec)?, &property, max_tilings),
        Command::Render {
            spec,
            what,
            format,
            tiling_index,
            output,
        } => {
            let out = commands::render(&RegionSpec::load(&spec.spec)?, what, format, tiling_index)?;
            match output {
                Some(path) => {
                    std::fs::write(path, out.text)?;
                    Ok(Output {
                        text: String::new(),
                        code: 0,
                    })
                }
                None => Ok(out),
            }
        }
        Command::Resolve {
            spec,
            puncture,
            covering,
            tiling_index,
            seed,
            out_dir,
        } => commands::resolve_cmd(
            &RegionSpec::load(&spec.spec)?,
            ResolveArgs {
                puncture: &puncture,
                covering,
                index: tiling_index,
                seed,
                out_dir: out_dir.as_deref(),
            },
        ),
        Command::Matrix {
            spec,
            which,
            format,
        } => commands::matrix(&RegionSpec::load(&spec.spec)?, which, format),
    }
}
