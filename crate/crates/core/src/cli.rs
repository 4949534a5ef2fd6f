//! Command-line front end.
//!
//! ```text
//! solve <file> [--path] [--force]
//! gen --n <N> --seed <S> [--max-dist <D>]
//! verify [--max-n <M>] [--count <C>] [--seed <S>]
//! bench --min-n <A> --max-n <B> [--seed <S>] [--max-dist <D>] [--reps <R>] [--csv <path>]
//! ```

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::{emit_csv, run_scaling};
use crate::error::Error;
use crate::heldkarp::{solve_capped, DEFAULT_MAX_N};
use crate::instance::{generate_random, parse_instance, serialize_instance};
use crate::oracle::{path_length, solve_brute_force};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    /// `verify` found a disagreement between the solvers.
    Mismatch = 1,
    /// Unreadable input or bad arguments.
    Usage = 2,
    /// A size cap was hit.
    ResourceCap = 3,
}

impl ExitCode {
    pub fn code(self) -> u8 {
        self as u8
    }
}

impl From<&Error> for ExitCode {
    fn from(e: &Error) -> Self {
        match e {
            Error::Size { .. } | Error::Overflow(_) => ExitCode::ResourceCap,
            _ => ExitCode::Usage,
        }
    }
}

/// Exact solver for the shortest path from city 1 to city n through every city.
#[derive(Debug, Parser)]
#[command(name = "tspdp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a tspd instance file
    Solve {
        file: PathBuf,
        /// Also print the optimal path
        #[arg(long)]
        path: bool,
        /// Allow instances above the default size cap
        #[arg(long)]
        force: bool,
    },
    /// Print a seeded random instance in tspd format
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_dist: u64,
    },
    /// Check the solver against brute force on seeded instances
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Time the solver across a range of n and write CSV
    Bench {
        #[arg(long)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_dist: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Write CSV here instead of standard output
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Distance bound for the instances `verify` generates.
const VERIFY_MAX_DIST: u64 = 100;

/// Runs one invocation. `args` includes the program name.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitCode::Usage
            } else {
                ExitCode::Success
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(&e)
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ExitCode::Usage
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitCode, Failure> {
    match cmd {
        Command::Solve { file, path, force } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
            let inst = parse_instance(&text)?;
            let sol = solve_capped(&inst, (!force).then_some(DEFAULT_MAX_N))?;
            writeln!(out, "length={} states={}", sol.length, sol.states_computed)?;
            if path {
                writeln!(out, "path={}", sol.path)?;
            }
            Ok(ExitCode::Success)
        }
        Command::Gen { n, seed, max_dist } => {
            let inst = generate_random(n, max_dist, seed)?;
            out.write_all(serialize_instance(&inst).as_bytes())?;
            Ok(ExitCode::Success)
        }
        Command::Verify { max_n, count, seed } => verify(max_n, count, seed, out, err),
        Command::Bench {
            min_n,
            max_n,
            seed,
            max_dist,
            reps,
            csv,
        } => {
            let report = run_scaling(min_n, max_n, seed, max_dist, reps)?;
            let text = emit_csv(&report);
            match csv {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(ExitCode::Success)
        }
    }
}

fn verify(
    max_n: usize,
    count: u64,
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    if max_n < 2 {
        return Err(Error::Domain(format!("--max-n must be at least 2, got {max_n}")).into());
    }
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for n in 2..=max_n {
        for k in 0..count {
            let inst = generate_random(n, VERIFY_MAX_DIST, seed.wrapping_add(k))?;
            let dp = solve_capped(&inst, Some(DEFAULT_MAX_N))?;
            let bf = solve_brute_force(&inst)?;
            checked += 1;
            let dp_path = path_length(&inst, &dp.path).ok();
            let bf_path = path_length(&inst, &bf.path).ok();
            if dp.length != bf.length || dp_path != Some(dp.length) || bf_path != Some(bf.length) {
                mismatches += 1;
                writeln!(
                    err,
                    "mismatch: n={n} seed={} dp={} bf={} dp_path={} bf_path={}",
                    seed.wrapping_add(k),
                    dp.length,
                    bf.length,
                    dp.path,
                    bf.path
                )?;
            }
        }
    }
    writeln!(
        out,
        "verify n=2..{max_n} count={count} seed={seed} checked={checked} mismatches={mismatches}"
    )?;
    Ok(if mismatches == 0 {
        ExitCode::Success
    } else {
        ExitCode::Mismatch
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (ExitCode, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli(
            std::iter::once("tspdp").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_prints_instance() {
        let (code, out, _) = run(&["gen", "--n", "4", "--seed", "42", "--max-dist", "1000"]);
        assert_eq!(code, ExitCode::Success);
        assert_eq!(
            out,
            "4\n0 414 292 859\n414 0 765 251\n292 765 0 63\n859 251 63 0\n"
        );
    }

    #[test]
    fn gen_domain_error() {
        let (code, _, err) = run(&["gen", "--n", "1", "--seed", "0"]);
        assert_eq!(code, ExitCode::Usage);
        assert!(err.contains("domain error"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&[]).0, ExitCode::Usage);
        assert_eq!(run(&["frobnicate"]).0, ExitCode::Usage);
        assert_eq!(run(&["gen", "--n", "x", "--seed", "1"]).0, ExitCode::Usage);
        assert_eq!(run(&["verify", "--max-n", "1"]).0, ExitCode::Usage);
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, ExitCode::Success);
        assert!(out.contains("solve"));
    }

    #[test]
    fn verify_small() {
        let (code, out, err) = run(&["verify", "--max-n", "6", "--count", "5"]);
        assert_eq!(code, ExitCode::Success, "{err}");
        assert_eq!(
            out,
            "verify n=2..6 count=5 seed=42 checked=25 mismatches=0\n"
        );
    }

    #[test]
    fn verify_above_oracle_cap() {
        assert_eq!(
            run(&["verify", "--max-n", "14", "--count", "0"]).0,
            ExitCode::Success
        );
        assert_eq!(
            run(&["verify", "--max-n", "14", "--count", "1"]).0,
            ExitCode::ResourceCap
        );
    }

    #[test]
    fn bench_to_stdout() {
        let (code, out, _) = run(&["bench", "--min-n", "4", "--max-n", "6", "--reps", "1"]);
        assert_eq!(code, ExitCode::Success);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "n,states,time_ns,optimum");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("4,5,"));
    }
}
