//! The `mlroc` command-line front end.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 validation error, 4 internal
//! consistency failure. Data goes to files or standard output, diagnostics to
//! standard error.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::auc::auc_of_curve;
use crate::error::{Error, Result};
use crate::estimators::{ml_fit, Estimator};
use crate::io::{format_sig, read_curve_csv, read_samples, write_curve_csv};
use crate::metrics::{dkw_roc_bound, levy_distance, uniform_distance};
use crate::roc_core::DiscreteDistribution;
use crate::scenarios::{default_config_set, run_experiment, ExperimentConfig, ExperimentReport};

#[derive(Debug, Parser)]
#[command(name = "mlroc", version, about = "Estimate optimal ROC curves from likelihood-ratio samples")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Levy,
    Uniform,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit an estimator to a sample file and write the curve as CSV.
    ///
    /// For ML the fit summary is also written as JSON next to the curve, with the
    /// extension replaced by `.json`.
    Fit {
        samples: PathBuf,
        #[arg(long, default_value = "ML", value_parser = parse_estimator)]
        estimator: Estimator,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance between two curve CSVs.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "levy")]
        metric: Metric,
    },
    /// Area under a curve CSV.
    Auc { curve: PathBuf },
    /// Run a Monte Carlo experiment. Without --config the default sample-size grid
    /// is run with 500 replications.
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "reps-csv")]
        reps_csv: Option<PathBuf>,
        /// Overrides the seed of every config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Finite-sample bound on P{L(ROC, ROC_E) >= delta}.
    Bound {
        n0: usize,
        n1: usize,
        #[arg(allow_negative_numbers = true)]
        delta: f64,
    },
}

fn parse_estimator(s: &str) -> std::result::Result<Estimator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Io(_) | Error::Json(_) | Error::Domain(_) => 2,
        Error::Consistency(_) => 4,
        _ => 3,
    }
}

/// Parses `args` and runs the subcommand, returning the process exit status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match run(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

#[derive(Serialize)]
struct FitJson<'a> {
    lambda_n: f64,
    auc: f64,
    f0: &'a DiscreteDistribution,
    f1: &'a DiscreteDistribution,
}

pub fn run(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Fit {
            samples,
            estimator,
            out,
        } => cmd_fit(&samples, estimator, &out),
        Command::Distance { a, b, metric } => {
            let (a, b) = (read_curve_csv(&a)?, read_curve_csv(&b)?);
            let d = match metric {
                Metric::Levy => levy_distance(&a, &b),
                Metric::Uniform => uniform_distance(&a, &b),
            };
            writeln!(stdout, "{}", format_sig(d, 12))?;
            Ok(())
        }
        Command::Auc { curve } => {
            let c = read_curve_csv(&curve)?;
            writeln!(stdout, "{}", format_sig(auc_of_curve(&c), 12))?;
            Ok(())
        }
        Command::Simulate {
            config,
            out,
            reps_csv,
            seed,
        } => cmd_simulate(config.as_deref(), &out, reps_csv.as_deref(), seed),
        Command::Bound { n0, n1, delta } => {
            let b = dkw_roc_bound(n0, n1, delta)?;
            writeln!(stdout, "{}", format_sig(b, 12))?;
            Ok(())
        }
    }
}

/// Path of the ML fit JSON written alongside a curve CSV.
pub fn fit_json_path(curve_out: &Path) -> Result<PathBuf> {
    let json = curve_out.with_extension("json");
    if json == curve_out {
        return Err(Error::Domain(format!(
            "--out {} would collide with the fit JSON; use a .csv path",
            curve_out.display()
        )));
    }
    Ok(json)
}

fn cmd_fit(samples: &Path, estimator: Estimator, out: &Path) -> Result<()> {
    let samples = read_samples(samples)?;
    match estimator {
        Estimator::MaximumLikelihood => {
            let json_path = fit_json_path(out)?;
            let fit = ml_fit(&samples)?;
            let geometric = auc_of_curve(&fit.curve);
            if (geometric - fit.auc).abs() > 1e-9 {
                return Err(Error::Consistency(format!(
                    "fit AUC {} differs from curve area {geometric}",
                    fit.auc
                )));
            }
            write_curve_file(&fit.curve, out)?;
            let body = FitJson {
                lambda_n: fit.lambda_n,
                auc: fit.auc,
                f0: &fit.f0_hat,
                f1: &fit.f1_hat,
            };
            fs::write(&json_path, serde_json::to_string_pretty(&body)? + "\n")?;
        }
        other => {
            let curve = other.fit_curve(&samples)?;
            write_curve_file(&curve, out)?;
        }
    }
    Ok(())
}

fn write_curve_file(curve: &crate::roc_core::MonotoneCurve, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_curve_csv(curve, &mut w)?;
    w.flush()?;
    Ok(())
}

fn cmd_simulate(
    config: Option<&Path>,
    out: &Path,
    reps_csv: Option<&Path>,
    seed: Option<u64>,
) -> Result<()> {
    let (mut configs, single) = match config {
        None => (default_config_set(seed.unwrap_or(0), 500), false),
        Some(path) => {
            let value: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
            match &value {
                Value::Array(items) => (
                    items
                        .iter()
                        .map(ExperimentConfig::from_json)
                        .collect::<Result<Vec<_>>>()?,
                    false,
                ),
                _ => (vec![ExperimentConfig::from_json(&value)?], true),
            }
        }
    };
    if let Some(s) = seed {
        configs.iter_mut().for_each(|c| c.seed = s);
    }
    let reports = configs
        .iter()
        .map(run_experiment)
        .collect::<Result<Vec<ExperimentReport>>>()?;

    let json = if single {
        serde_json::to_string_pretty(&reports[0])?
    } else {
        serde_json::to_string_pretty(&reports)?
    };
    fs::write(out, json + "\n")?;

    if let Some(path) = reps_csv {
        let mut w = BufWriter::new(File::create(path)?);
        if single {
            reports[0].write_reps_csv(&mut w)?;
        } else {
            writeln!(w, "n0,n1,rep,estimator,levy")?;
            for r in &reports {
                for (e, s) in &r.estimators {
                    for (rep, d) in s.distances.iter().enumerate() {
                        writeln!(w, "{},{},{rep},{e},{}", r.n0, r.n1, format_sig(*d, 17))?;
                    }
                }
            }
        }
        w.flush()?;
    }
    Ok(())
}
