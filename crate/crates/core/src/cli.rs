//! Command-line surface of the `pairvis` binary.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when a point lies
//! outside the polygon, 1 for anything else.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::io::{fmt_num, render_svg, InstanceFile};
use crate::optimize::Objective;
use crate::oracle::{oracle_solve, OracleOptions};
use crate::query::QueryStructure;
use crate::solve::solve_with_trace;
use crate::sweep::EventKind;

#[derive(Debug, Parser)]
#[command(name = "pairvis", version, about = "Quickest pair-visibility in simple polygons")]
pub struct Cli {
    /// Machine-readable output on stdout, errors as JSON on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Print the sweep events as JSON lines.
    Events {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build or run the min-max query structure.
    #[command(subcommand)]
    Query(QueryCommand),
    /// Solve by dense angular sampling.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = OracleOptions::default().angular_samples)]
        samples: usize,
        #[command(flatten)]
        objective: ObjectiveArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum QueryCommand {
    Build {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Run {
        #[arg(long)]
        idx: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        s: Point,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        t: Point,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[command(flatten)]
    pub objective: ObjectiveArgs,
    /// Write a diagram of the solution.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also print events and per-interval optima; draws event chords.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveName {
    Minmax,
    Minsum,
    Wminmax,
}

#[derive(Debug, Args)]
pub struct ObjectiveArgs {
    /// Defaults to the instance's objective, else min-max.
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveName>,
    /// Weight of `s` for the weighted min-max.
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Head starts added to both sides of the min-max.
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
}

impl ObjectiveArgs {
    fn resolve(&self, inst: &InstanceFile) -> Objective {
        match self.objective {
            None => inst.objective.unwrap_or(Objective::MinMax),
            Some(ObjectiveName::Minsum) => Objective::MinSum,
            Some(ObjectiveName::Wminmax) => Objective::WeightedMinMax { lambda: self.lambda },
            Some(ObjectiveName::Minmax) if self.alpha != 0.0 || self.beta != 0.0 => {
                Objective::OffsetMinMax { alpha: self.alpha, beta: self.beta }
            }
            Some(ObjectiveName::Minmax) => Objective::MinMax,
        }
    }
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    let p = Point::new(num(x)?, num(y)?);
    if !p.is_finite() {
        return Err(format!("non-finite point {s:?}"));
    }
    Ok(p)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::OutsidePolygon(_) => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::TooFewVertices(_)
        | Error::NonFinite(_)
        | Error::DuplicateVertex(..)
        | Error::NotSimple(..)
        | Error::ZeroArea => "invalid_polygon",
        Error::OutsidePolygon(_) => "outside_polygon",
        Error::DegenerateInput(_) => "degenerate_input",
        Error::EmptyInterval(..) | Error::InvalidObjective(_) => "invalid_parameter",
        Error::VersionMismatch { .. } => "version_mismatch",
        Error::InvalidInput(_) => "invalid_input",
        Error::Io(_) => "io",
        Error::Json(_) => "parse",
        Error::Internal(_) => "internal",
    }
}

/// Parses `argv` (program name first) and runs it. Returns the exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            if cli.json {
                let _ = writeln!(err, "{}", json!({ "error": error_kind(&e), "message": e.to_string() }));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            exit_code(&e)
        }
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

#[derive(Serialize)]
struct EventLine {
    kind: EventKind,
    pivot_index: usize,
    theta: f64,
    x: Point,
    x_tilde: Point,
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Solve(args) => {
            let inst = InstanceFile::load(&args.input)?;
            let poly = inst.to_polygon()?;
            let (s, t) = inst.points()?;
            let (res, trace) = solve_with_trace(&poly, s, t, args.objective.resolve(&inst))?;
            if cli.json {
                print_json(out, &res)?;
            } else {
                writeln!(out, "value {}", fmt_num(res.value))?;
                let witness = json!({
                    "s_star": res.s_star,
                    "t_star": res.t_star,
                    "chord": res.chord,
                    "pivot": res.pivot,
                    "pivot_index": res.pivot_index,
                    "theta": res.theta,
                });
                print_json(out, &witness)?;
            }
            if args.trace {
                for e in &trace.events {
                    print_json(out, &json!({ "event": e }))?;
                }
                for i in &trace.intervals {
                    print_json(out, &json!({ "interval": i }))?;
                }
            }
            if let Some(path) = &args.svg {
                std::fs::write(path, render_svg(&poly, s, t, &res, args.trace.then_some(&trace)))?;
            }
        }
        Command::Events { input } => {
            let inst = InstanceFile::load(input)?;
            let poly = inst.to_polygon()?;
            let (s, t) = inst.points()?;
            let (_, trace) = solve_with_trace(&poly, s, t, Objective::MinMax)?;
            for e in trace.events {
                let line =
                    EventLine { kind: e.kind, pivot_index: e.pivot_index, theta: e.theta, x: e.x, x_tilde: e.x_tilde };
                print_json(out, &line)?;
            }
        }
        Command::Query(QueryCommand::Build { input, out: path }) => {
            let inst = InstanceFile::load(input)?;
            let qs = QueryStructure::build(inst.to_polygon()?)?;
            qs.save(path)?;
            if cli.json {
                print_json(out, &json!({ "vertices": qs.polygon().len(), "index": path }))?;
            } else {
                writeln!(out, "index with {} vertices written to {}", qs.polygon().len(), path.display())?;
            }
        }
        Command::Query(QueryCommand::Run { idx, s, t }) => {
            let qs = QueryStructure::load(idx)?;
            let ans = qs.query_minmax(*s, *t)?;
            if cli.json {
                print_json(out, &ans)?;
            } else {
                writeln!(out, "value {}", fmt_num(ans.value))?;
                print_json(out, &json!({ "s_star": ans.s_star, "t_star": ans.t_star, "chord": ans.chord, "pivot_index": ans.pivot_index }))?;
            }
        }
        Command::Oracle { input, samples, objective } => {
            let inst = InstanceFile::load(input)?;
            let poly = inst.to_polygon()?;
            let (s, t) = inst.points()?;
            let sol = oracle_solve(&poly, s, t, objective.resolve(&inst), OracleOptions { angular_samples: *samples })?;
            if cli.json {
                print_json(out, &sol)?;
            } else {
                writeln!(out, "value {} (true optimum within {} below)", fmt_num(sol.value), fmt_num(sol.error_bound))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_and_objectives() {
        assert_eq!(parse_point("-1.5, 2").unwrap(), Point::new(-1.5, 2.0));
        assert!(parse_point("1;2").is_err());
        assert!(parse_point("nan,1").is_err());
        let inst = InstanceFile { polygon: vec![], s: None, t: None, objective: Some(Objective::MinSum) };
        let args = |objective, alpha| ObjectiveArgs { objective, lambda: 0.25, alpha, beta: 0.0 };
        assert_eq!(args(None, 0.0).resolve(&inst), Objective::MinSum);
        assert_eq!(args(Some(ObjectiveName::Minmax), 0.5).resolve(&inst), Objective::OffsetMinMax { alpha: 0.5, beta: 0.0 });
        assert_eq!(args(Some(ObjectiveName::Wminmax), 0.0).resolve(&inst), Objective::WeightedMinMax { lambda: 0.25 });
    }
}
