use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use floerq::commands::{self, GlueArgs, MasseyArgs, Outcome};
use floerq::{CliError, Document, EXIT_OK};

/// Floer complexes, gluing tables and products from integer count data.
///
/// Exit codes: 0 success, 2 parse error, 3 validation failure, 4 gluing failure.
#[derive(Parser)]
#[command(name = "floerq", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Reject unknown document fields and treat degree warnings as errors.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the data, every table and every declared gluing.
    Validate { path: PathBuf },
    /// Ranks and torsion of Floer homology and cohomology.
    Homology { path: PathBuf },
    /// Cup, intersection and cap tables, duality matrices, unit, top class and Euler number.
    Products { path: PathBuf },
    /// Massey product of three cochains given as orbit combinations such as `2*x10 - x01`.
    Massey {
        path: PathBuf,
        /// Cocycle `a`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        /// Cochain with `d zeta = a ∪ b`; defaults to 0.
        #[arg(long)]
        zeta: Option<String>,
        /// Cochain with `d xi = b ∪ c`; defaults to 0.
        #[arg(long)]
        xi: Option<String>,
        /// Label of a q = 1 table on (0,1,3); defaults to the zero homotopy.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Write the flat torus document of the given even dimension.
    GenTorus {
        #[arg(long)]
        dim: usize,
        /// Grid samples per circle.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Glue two tables, appending the result or checking it against an existing table.
    Glue {
        path: PathBuf,
        /// Table whose output slot is glued.
        #[arg(long)]
        t1: String,
        /// Table whose input slot is glued.
        #[arg(long)]
        t2: String,
        /// Output slot of t1, from 1.
        #[arg(short, default_value_t = 1)]
        i: usize,
        /// Input slot of t2, from 1.
        #[arg(short, default_value_t = 1)]
        j: usize,
        /// Label of the appended table.
        #[arg(long)]
        label: Option<String>,
        /// Compare with this table instead of writing a new document.
        #[arg(long)]
        against: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &Path, strict: bool) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    Document::parse(&text, strict)
}

fn write_doc(doc: &Document, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, doc.to_json()).map_err(|e| CliError::parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{}", doc.to_json());
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let strict = cli.strict;
    match &cli.command {
        Command::Validate { path } => commands::validate(&load(path, strict)?, strict),
        Command::Homology { path } => commands::homology(&load(path, strict)?),
        Command::Products { path } => commands::products(&load(path, strict)?, strict),
        Command::Massey {
            path,
            a,
            b,
            c,
            zeta,
            xi,
            lambda,
        } => {
            let args = MasseyArgs {
                a,
                b,
                c,
                zeta: zeta.as_deref(),
                xi: xi.as_deref(),
                lambda: lambda.as_deref(),
            };
            commands::massey(&load(path, strict)?, &args, strict)
        }
        Command::GenTorus { dim, samples, output } => {
            let doc = commands::gen_torus(*dim, *samples)?;
            write_doc(&doc, output.as_deref())?;
            Ok(Outcome {
                code: EXIT_OK,
                text: String::new(),
                json: serde_json::Value::Null,
            })
        }
        Command::Glue {
            path,
            t1,
            t2,
            i,
            j,
            label,
            against,
            output,
        } => {
            let args = GlueArgs {
                t1,
                t2,
                i: *i,
                j: *j,
                label: label.as_deref(),
                against: against.as_deref(),
            };
            let (outcome, doc) = commands::glue(&load(path, strict)?, &args)?;
            match (doc, output) {
                (Some(doc), Some(p)) => {
                    write_doc(&doc, Some(p))?;
                    Ok(outcome)
                }
                (Some(doc), None) => {
                    write_doc(&doc, None)?;
                    Ok(Outcome {
                        text: String::new(),
                        json: serde_json::Value::Null,
                        ..outcome
                    })
                }
                (None, _) => Ok(outcome),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if !outcome.json.is_null() || !outcome.text.is_empty() {
                print!("{}", outcome.render(cli.json));
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "exit": e.code, "error": e.message }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code as u8)
        }
    }
}
