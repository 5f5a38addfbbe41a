//! Command-line front end. Exit codes: 0 success, 1 a mathematical check
//! failed, 2 usage or domain error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::Family;
use crate::harness::{self, demos, RunOptions, SuiteId};
use crate::radii::{self, family_threshold, RadiusId, RadiusSetting, Target};
use crate::report::{self, fmt_num};
use crate::series::TruncatedSeries;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Plain,
}

#[derive(Parser, Debug)]
#[command(name = "bohr", version, about = "Bohr-type radii for subordination and majorization classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form and bisected value of a radius.
    Radius {
        #[arg(long)]
        setting: RadiusId,
        /// `key=value`; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Coefficient file for `lemma1_ratio`.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "plain")]
        output: Output,
    },
    /// Lower and upper bounds of the majorant series of a coefficient file.
    Majorant {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value = "plain")]
        output: Output,
    },
    /// Run verification suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 256)]
        order: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value = "plain")]
        output: Output,
        /// Added to every claimed radius; for fault-injection tests.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        inject_radius_offset: f64,
    },
    /// Family thresholds over a parameter grid.
    Scan {
        #[arg(long)]
        target: Target,
        /// Must match the target's family when given.
        #[arg(long)]
        family: Option<String>,
        /// `start:end:step` (end inclusive) or a comma-separated list.
        #[arg(long, default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,0.99,0.999")]
        grid: String,
        #[arg(long, value_enum, default_value = "csv")]
        output: Output,
    },
    /// Reproduce a documented counterexample.
    Counterexample {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 256)]
        order: usize,
        #[arg(long, value_enum, default_value = "plain")]
        output: Output,
    },
    /// Write the coefficient file of a family member.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        #[arg(long, default_value_t = 256)]
        order: usize,
        /// Output path; standard output when absent.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

fn parse_param(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{k}` must be finite"));
    }
    Ok((k.trim().to_string(), v))
}

/// Parse `start:end:step` or `a,b,c`; values must lie in `[0, 1)`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::Parse(format!("grid `{s}`: {msg}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad(format!("`{t}` is not a number")));
    let values = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:end:step".into()));
        }
        let (start, end, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || !start.is_finite() || !end.is_finite() || end < start {
            return Err(bad("need start <= end and step > 0".into()));
        }
        let count = ((end - start) / step + 1e-9).floor();
        if count > 1e6 {
            return Err(bad("more than a million points".into()));
        }
        let mut v: Vec<f64> = (0..=count as usize).map(|i| start + i as f64 * step).collect();
        if end - v.last().expect("nonempty") > 1e-12 {
            v.push(end);
        }
        v
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(bad("empty".into()));
    }
    if let Some(x) = values.iter().find(|x| !(0.0..1.0).contains(*x)) {
        return Err(bad(format!("value {x} outside [0, 1)")));
    }
    Ok(values)
}

fn read_series(path: &PathBuf) -> Result<TruncatedSeries> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Serialize)]
struct MajorantOut {
    r: f64,
    lower: f64,
    upper: f64,
    order: usize,
    has_tail: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct ScanOut {
    target: Target,
    family: &'static str,
    rows: Vec<(f64, f64)>,
    limit: Option<f64>,
    strictly_decreasing: bool,
}

/// Run the CLI on `args` (including the program name), writing reports to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Radius { setting, params, file, output } => {
            let mut s = RadiusSetting::new(setting);
            for (k, v) in params {
                s = s.with(&k, v);
            }
            if let Some(path) = file {
                s = s.with_coeffs(read_series(&path)?.coeffs().to_vec());
            }
            let res = radii::resolve(&s)?;
            match output {
                Output::Json => writeln!(out, "{}", report::to_json(&res)?)?,
                Output::Csv => report::write_radius_csv(&res, out)?,
                Output::Plain => {
                    writeln!(out, "setting: {}", res.setting.id)?;
                    writeln!(out, "closed form: {}", fmt_num(res.closed_form))?;
                    writeln!(out, "bisected: {}", fmt_num(res.bisected))?;
                    writeln!(out, "discrepancy: {}", fmt_num(res.discrepancy))?;
                    writeln!(out, "iterations: {}", res.iterations)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Majorant { file, r, output } => {
            let s = read_series(&file)?;
            let m = s.majorant(r)?;
            let has_tail = s.tail().is_some();
            let res = MajorantOut {
                r,
                lower: m.lower,
                upper: m.upper,
                order: s.order(),
                has_tail,
                note: (!has_tail).then_some("no tail bound: the value is the truncated sum"),
            };
            match output {
                Output::Json => writeln!(out, "{}", report::to_json(&res)?)?,
                Output::Csv => {
                    writeln!(out, "# bohr majorant csv v1")?;
                    writeln!(out, "r,lower,upper,order,has_tail")?;
                    writeln!(out, "{},{},{},{},{has_tail}", fmt_num(r), fmt_num(m.lower), fmt_num(m.upper), res.order)?;
                }
                Output::Plain => {
                    writeln!(out, "r: {}", fmt_num(r))?;
                    writeln!(out, "lower: {}", fmt_num(m.lower))?;
                    writeln!(out, "upper: {}", fmt_num(m.upper))?;
                    if let Some(n) = res.note {
                        writeln!(out, "{n}")?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, seed, order, samples, output, inject_radius_offset } => {
            let opts = RunOptions { seed, order, samples, radius_offset: inject_radius_offset };
            let reports = if suite.eq_ignore_ascii_case("all") {
                harness::run_all(&opts)?
            } else {
                vec![harness::run_suite(suite.parse::<SuiteId>()?, &opts)?]
            };
            match output {
                Output::Json => writeln!(out, "{}", report::to_json(&reports)?)?,
                Output::Csv => report::write_reports_csv(&reports, out)?,
                Output::Plain => report::write_reports_plain(&reports, out)?,
            }
            Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Scan { target, family, grid, output } => {
            if let Some(f) = family {
                if f != target.family_name() {
                    return Err(Error::Precondition(format!(
                        "target `{target}` is scanned over family `{}`, not `{f}`",
                        target.family_name()
                    )));
                }
            }
            let mut grid = parse_grid(&grid)?;
            grid.sort_by(f64::total_cmp);
            grid.dedup();
            let rows = grid
                .iter()
                .map(|&a| family_threshold(a, target).map(|t| (a, t)))
                .collect::<Result<Vec<_>>>()?;
            let res = ScanOut {
                target,
                family: target.family_name(),
                strictly_decreasing: rows.windows(2).all(|w| w[1].1 < w[0].1),
                limit: target.limit(),
                rows,
            };
            match output {
                Output::Json => writeln!(out, "{}", report::to_json(&res)?)?,
                Output::Csv => report::write_scan_csv(target.name(), &res.rows, res.limit, out)?,
                Output::Plain => {
                    writeln!(out, "target {target} over {}", res.family)?;
                    for (a, t) in &res.rows {
                        writeln!(out, "  a = {:<8} threshold {}", fmt_num(*a), fmt_num(*t))?;
                    }
                    if let Some(l) = res.limit {
                        writeln!(out, "  limit {}", fmt_num(l))?;
                    }
                    writeln!(out, "  strictly decreasing: {}", res.strictly_decreasing)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Counterexample { name, order, output } => {
            if order < harness::MIN_ORDER {
                return Err(Error::Precondition(format!("order must be at least {}", harness::MIN_ORDER)));
            }
            let c = demos::run_demo(&name, order)?;
            match output {
                Output::Json => writeln!(out, "{}", report::to_json(&c)?)?,
                Output::Csv => report::write_counterexample_csv(&c, out)?,
                Output::Plain => report::write_counterexample_plain(&c, out, "")?,
            }
            Ok(if c.confirmed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Generate { family, params, order, file } => {
            let params: BTreeMap<String, f64> = params.into_iter().collect();
            let s = Family::from_params(&family, &params)?.generate(order)?;
            // Coefficient files keep full precision.
            let text = serde_json::to_string(&s)?;
            match file {
                Some(path) => std::fs::write(path, text + "\n")?,
                None => writeln!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["bohr"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:0.3:0.1").unwrap().len(), 4);
        let g = parse_grid("0:0.999:0.1").unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(*g.last().unwrap(), 0.999);
        assert_eq!(parse_grid("0.1, 0.5").unwrap(), vec![0.1, 0.5]);
        for bad in ["", "0:1:0", "0.5:0.1:0.1", "a,b", "0:2:0.5", "1.0", "0:1"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn radius_command() {
        let (code, out, _) = run_str(&["radius", "--setting", "derivative"]);
        assert_eq!(code, 0);
        assert!(out.contains("0.183503419072274"));
        let (code, _, err) = run_str(&["radius", "--setting", "convex_rc", "--param", "R2=1", "--param", "delta=0.6"]);
        assert_eq!(code, 2);
        assert!(err.contains("R2 >= 2 delta"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["radius", "--setting", "nope"]).0, 2);
        assert_eq!(run_str(&["verify", "--suite", "nope"]).0, 2);
        assert_eq!(run_str(&["counterexample", "--name", "nope"]).0, 2);
        assert_eq!(run_str(&["scan", "--target", "derivative", "--family", "g_a"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
