//! Command line front end. Exit codes: 0 success, 1 a verdict failed, 2
//! bad input.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::complex::Coefficient;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::report::{self, Analysis, Config, CoverInputs};

#[derive(Debug, Parser)]
#[command(name = "bqtop", version, about = "Classifying spaces of bound quivers")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Longest walk explored by the walk homotopy search.
    #[arg(long, global = true, env = "BQTOP_WALK_BOUND")]
    pub walk_bound: Option<usize>,
    /// Largest relation support tested for minimality.
    #[arg(long, global = true, default_value_t = crate::homotopy::DEFAULT_SUPPORT_CAP)]
    pub support_cap: usize,
    /// Longest path length tried while searching for the nilpotency bound.
    #[arg(long, global = true, env = "BQTOP_PATH_CAP", default_value_t = crate::paths::DEFAULT_PATH_CAP)]
    pub path_cap: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra properties and minimal relations.
    Check { file: PathBuf },
    /// Cells of ℬ (or ℬ♯ with --sharp).
    Cells {
        file: PathBuf,
        #[arg(long)]
        sharp: bool,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Cellular homology.
    Homology(HomologyArgs),
    /// Cellular cohomology.
    Cohomology(HomologyArgs),
    /// Presentation of the fundamental group.
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        abelianization: bool,
    },
    /// Van Kampen pushout for two full subquivers (comma separated vertices).
    Vankampen {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        v1: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        v2: Vec<String>,
    },
    /// Semi-normed basis and simplicial (co)homology of the algebra.
    Simplicial { file: PathBuf },
    /// Hochschild cohomology dimensions via the Cibils complex.
    Hochschild {
        file: PathBuf,
        /// Overrides the field declared in the file.
        #[arg(long)]
        field: Option<Field>,
    },
    /// Simplicial, cellular and Hochschild (co)homology side by side.
    Compare { file: PathBuf },
    /// Covering morphisms.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Graphviz DOT of the quiver or of the 1-skeleton of ℬ.
    Dot {
        file: PathBuf,
        #[arg(long)]
        skeleton: bool,
    },
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    pub file: PathBuf,
    /// Z, Q, Fp:<p> or Zmod:<m>.
    #[arg(long, default_value = "Z")]
    pub coeff: Coefficient,
    #[arg(long)]
    pub sharp: bool,
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// Checks that MORPHISM: COVER → BASE is a covering.
    Verify {
        base: PathBuf,
        cover: PathBuf,
        morphism: PathBuf,
        /// Group file acting on the cover; adds the Galois and deck checks.
        #[arg(long)]
        galois: Option<PathBuf>,
        /// Base vertex for the deck transitivity check.
        #[arg(long)]
        base_point: Option<String>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn load(path: &Path, config: Config) -> Result<Analysis> {
    Analysis::from_text(&file_name(path), &read(path)?, config)
}

/// Output text and whether every verdict held.
pub fn execute(cli: &Cli) -> Result<(String, bool)> {
    let g = &cli.global;
    let config = Config {
        path_cap: g.path_cap,
        support_cap: g.support_cap,
        walk_bound: g.walk_bound,
        ..Config::default()
    };
    let json = |v: Value| serde_json::to_string_pretty(&v).expect("reports serialize") + "\n";
    let (value, ok): (Value, bool) = match &cli.command {
        Command::Check { file } => {
            let a = load(file, config)?;
            (report::envelope("check", &a, report::check_report(&a)), true)
        }
        Command::Cells { file, sharp, max_dim } => {
            let a = load(file, config)?;
            (report::envelope("cells", &a, report::cells_report(&a, *sharp, *max_dim)), true)
        }
        Command::Homology(h) | Command::Cohomology(h) => {
            let co = matches!(cli.command, Command::Cohomology(_));
            let a = load(&h.file, config)?;
            let name = if co { "cohomology" } else { "homology" };
            (report::envelope(name, &a, report::homology_report(&a, h.coeff, h.sharp, co)), true)
        }
        Command::Pi1 {
            file,
            base,
            simplify,
            abelianization,
        } => {
            let a = load(file, config)?;
            let r = report::pi1_report(&a, base.as_deref(), *simplify, *abelianization)?;
            (report::envelope("pi1", &a, r), true)
        }
        Command::Vankampen { file, v1, v2 } => {
            let a = load(file, config)?;
            let r = report::vankampen_report(&a, v1, v2)?;
            (report::envelope("vankampen", &a, r), true)
        }
        Command::Simplicial { file } => {
            let a = load(file, config)?;
            let (r, ok) = report::simplicial_report(&a)?;
            (report::envelope("simplicial", &a, r), ok)
        }
        Command::Hochschild { file, field } => {
            let a = load(file, config)?;
            let (r, ok) = report::hochschild_report(&a, *field)?;
            (report::envelope("hochschild", &a, r), ok)
        }
        Command::Compare { file } => {
            let a = load(file, config)?;
            let (r, ok) = report::compare_report(&a)?;
            (report::envelope("compare", &a, r), ok)
        }
        Command::Cover(CoverCommand::Verify {
            base,
            cover,
            morphism,
            galois,
            base_point,
        }) => {
            let b = load(base, config)?;
            let c = load(cover, config)?;
            let m = read(morphism)?;
            let gtext = galois.as_deref().map(read).transpose()?;
            report::cover_report(&CoverInputs {
                base: &b,
                cover: &c,
                morphism: &m,
                group: gtext.as_deref(),
                base_point: base_point.as_deref(),
            })?
        }
        Command::Dot { file, skeleton } => {
            let a = load(file, config)?;
            return Ok((report::dot(&a, *skeleton), true));
        }
    };
    Ok((json(value), ok))
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) if ok => 0,
                Ok(()) => 1,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NotACovering(_) | Error::NotGalois(_) | Error::NoSemiNormedBasis(_) => 1,
                _ => 2,
            }
        }
    }
}
