//! Command-line interface.
//!
//! Exit codes: 0 success, 1 validation errors, 2 parse errors, 3 usage or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::brauer::{residue_kernel, restriction_kernel, unramified_brauer, BrauerError};
use crate::dsl::{builtin_source, parse};
use crate::model::{validate, vq_basis, Configuration};
use crate::report::{render_json, render_text};
use crate::toric::{parse_fan_script, resolve_demo, ToricError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "isbrauer",
    version,
    about = "Unramified Brauer groups of involution surface bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a configuration.
    Validate { file: PathBuf },
    /// Compute the unramified Brauer group of a configuration.
    Compute {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Show per-curve residue kernels and the restriction kernel.
    Explain { file: PathBuf },
    /// Run a built-in example (hpt, cubic-quartic).
    Example {
        name: String,
        /// Print the canonical source instead of computing.
        #[arg(long)]
        emit: bool,
        #[arg(long, conflicts_with = "emit")]
        json: bool,
    },
    /// Toric resolution checks.
    #[command(subcommand)]
    Toric(ToricCommand),
}

#[derive(Debug, Subcommand)]
enum ToricCommand {
    /// Resolve the uv = xyz cone and print the certificate chain.
    Demo,
    /// Check a fan file, applying its subdivisions in order.
    Check { file: PathBuf },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn read(path: &Path, io: &mut Io) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(io.err, "error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn load_source(name: &str, text: &str, io: &mut Io) -> Result<Configuration, i32> {
    parse(text).map_err(|errors| {
        for d in &errors.diagnostics {
            let _ = writeln!(io.err, "{name}:{d}");
        }
        EXIT_PARSE
    })
}

fn load(path: &Path, io: &mut Io) -> Result<Configuration, i32> {
    let text = read(path, io)?;
    load_source(&path.display().to_string(), &text, io)
}

fn compute(cfg: &Configuration, json: bool, io: &mut Io) -> Result<(), i32> {
    let report = match unramified_brauer(cfg) {
        Ok(r) => r,
        Err(BrauerError::Invalid(v)) => {
            let _ = writeln!(io.err, "{v}");
            return Err(EXIT_INVALID);
        }
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return Err(EXIT_INVALID);
        }
    };
    for w in &validate(cfg).warnings {
        let _ = writeln!(io.err, "warning {w}");
    }
    if json {
        let _ = writeln!(io.out, "{}", render_json(cfg, &report));
    } else {
        let _ = write!(io.out, "{}", render_text(cfg, &report));
    }
    Ok(())
}

fn explain(cfg: &Configuration, io: &mut Io) -> Result<(), i32> {
    let validation = validate(cfg);
    if !validation.is_ok() {
        let _ = writeln!(io.err, "{validation}");
        return Err(EXIT_INVALID);
    }
    let rk = restriction_kernel(cfg);
    let _ = writeln!(
        io.out,
        "restriction kernel S (dim {}): {}",
        rk.space.dim, rk.description
    );
    for c in &cfg.curves {
        let k = residue_kernel(c);
        let gens: Vec<String> = k
            .generators
            .iter()
            .map(|g| g.render(&cfg.symbols))
            .collect();
        let _ = writeln!(
            io.out,
            "curve {} ({}, {}): kernel {}; generators: {}",
            c.id,
            c.deg_type.as_str(),
            c.cover.as_str(),
            k.case.describe(),
            if gens.is_empty() {
                "none".to_string()
            } else {
                gens.join(", ")
            }
        );
    }
    let _ = writeln!(
        io.out,
        "note: these kernels concern 2-torsion; with odd-order coefficients the residue restriction is injective"
    );
    let report = unramified_brauer(cfg).map_err(|e| {
        let _ = writeln!(io.err, "error: {e}");
        EXIT_INVALID
    })?;
    let q_curves: Vec<&str> = vq_basis(cfg).iter().map(|c| c.id.as_str()).collect();
    for (i, g) in report.generators.iter().enumerate() {
        let outside: Vec<&str> = g
            .ramification
            .curves()
            .filter(|c| !q_curves.contains(c))
            .collect();
        if !outside.is_empty() {
            let _ = writeln!(
                io.out,
                "note: generator {} has ramification on curves outside Q ({}); it is reported over all base curves",
                i + 1,
                outside.join(", ")
            );
        }
    }
    let _ = writeln!(io.out, "h2nr_dim: {}", report.h2nr_dim);
    Ok(())
}

fn toric_demo(io: &mut Io) -> Result<(), i32> {
    match resolve_demo::<i64>() {
        Ok(report) => {
            let _ = writeln!(io.out, "{report}");
            Ok(())
        }
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            Err(EXIT_INVALID)
        }
    }
}

fn toric_check(path: &Path, io: &mut Io) -> Result<(), i32> {
    let text = read(path, io)?;
    let name = path.display();
    let script = parse_fan_script(&text).map_err(|e| {
        match e {
            ToricError::Script {
                line,
                column,
                message,
            } => {
                let _ = writeln!(io.err, "{name}:{line}:{column}: {message}");
            }
            other => {
                let _ = writeln!(io.err, "{name}: {other}");
            }
        }
        EXIT_PARSE
    })?;
    let fans = script.run().map_err(|e| {
        let _ = writeln!(io.err, "{name}: {e}");
        EXIT_INVALID
    })?;
    let base = &fans[0];
    for (i, fan) in fans.iter().enumerate() {
        if i == 0 {
            let _ = writeln!(io.out, "fan 0: {} maximal cones", fan.len());
        } else {
            let (rho, _) = &script.subdivisions[i - 1];
            let support = fan.support_check(base, 1000, i as u64);
            let _ = writeln!(
                io.out,
                "fan {i}: subdivide at {rho} -> {} maximal cones; support: {support}",
                fan.len()
            );
        }
    }
    let last = fans.last().expect("initial fan is present");
    for cert in last.certificates() {
        let _ = writeln!(io.out, "  {cert}");
    }
    let _ = writeln!(io.out, "smooth: {}", last.is_smooth());
    Ok(())
}

fn dispatch(cli: Cli, io: &mut Io) -> Result<(), i32> {
    match cli.command {
        Command::Validate { file } => {
            let cfg = load(&file, io)?;
            let report = validate(&cfg);
            let _ = writeln!(io.out, "{report}");
            if report.is_ok() {
                Ok(())
            } else {
                Err(EXIT_INVALID)
            }
        }
        Command::Compute { file, json } => {
            let cfg = load(&file, io)?;
            compute(&cfg, json, io)
        }
        Command::Explain { file } => {
            let cfg = load(&file, io)?;
            explain(&cfg, io)
        }
        Command::Example { name, emit, json } => {
            let source = builtin_source(&name).map_err(|e| {
                let _ = writeln!(io.err, "error: {e}");
                EXIT_USAGE
            })?;
            if emit {
                let _ = write!(io.out, "{source}");
                return Ok(());
            }
            let cfg = load_source(&name, source, io)?;
            compute(&cfg, json, io)
        }
        Command::Toric(ToricCommand::Demo) => toric_demo(io),
        Command::Toric(ToricCommand::Check { file }) => toric_check(&file, io),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(io.err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, &mut io) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("isbrauer").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn example_hpt() {
        let (code, out, _) = call(&["example", "hpt"]);
        assert_eq!(code, 0);
        assert!(out.contains("h2nr_dim: 1"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["example", "nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["compute", "/nonexistent/file.isb"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn emit_round_trips() {
        let (code, out, _) = call(&["example", "cubic-quartic", "--emit"]);
        assert_eq!(code, 0);
        assert!(parse(&out).is_ok());
    }
}
