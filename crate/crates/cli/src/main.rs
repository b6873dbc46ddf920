//! `quadvort` command-line front end.
//!
//! Exit status: 0 on success, 2 on invalid input, 3 on numerical failure.
//! `QUADVORT_THREADS` sets the worker count; output does not depend on it.

mod check;
mod commands;
mod config;
mod error;
mod output;
mod selftest;

use clap::Parser;
use config::{Command, Format, RunConfig};
use error::CliError;
use output::{pretty, write_file, Artifacts, Table};
use std::io::Write;
use std::process::ExitCode;

const THREADS_ENV: &str = "QUADVORT_THREADS";

fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Validation(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(CliError::validation)?;
    }
    Ok(())
}

fn artifacts(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    match &cfg.command {
        Command::Dispersion { profile, n, x_grid } => {
            commands::dispersion(profile.a, profile.b, n, x_grid)
        }
        Command::Eigenvalues { profile, n, tol } => {
            commands::eigenvalues(profile.a, profile.b, n, *tol)
        }
        Command::Kernel {
            profile,
            n,
            nodes,
            points,
        } => commands::kernel(profile.a, profile.b, *n, *nodes, *points),
        Command::Transversality { profile, n, nodes } => {
            commands::transversality(profile.a, profile.b, *n, *nodes)
        }
        Command::Potentials {
            identity,
            mode,
            at,
            a,
            b,
            grid,
        } => commands::potentials(*identity, *mode, at, *a, *b, grid),
        Command::Orbit {
            profile,
            omega,
            z,
            mode,
            amp,
            tol,
        } => commands::orbit(profile.a, profile.b, *omega, z, *mode, *amp, *tol),
        Command::Regime {
            a,
            b,
            m_max,
            no_transversality,
            map,
            b_grid,
            map_search,
        } => {
            if *map {
                let grid = b_grid
                    .as_deref()
                    .ok_or_else(|| CliError::Validation("--map needs --b-grid".into()))?;
                commands::regime_sweep(*a, grid, *map_search)
            } else {
                let b = b.ok_or_else(|| CliError::Validation("--B is required".into()))?;
                commands::regime(*a, b, *m_max, !no_transversality)
            }
        }
        Command::Selftest { suite, seed } => {
            let (table, ok) = selftest::run(*suite, *seed)?;
            if !ok {
                emit(cfg, &Artifacts::new("selftest", table))?;
                return Err(CliError::Numerical("self-test checks failed".into()));
            }
            Ok(Artifacts::new("selftest", table))
        }
    }
}

fn check_profile(cmd: &Command) -> Option<quadvort::QuadraticProfile> {
    let (a, b) = match cmd {
        Command::Dispersion { profile, .. }
        | Command::Eigenvalues { profile, .. }
        | Command::Kernel { profile, .. }
        | Command::Transversality { profile, .. }
        | Command::Orbit { profile, .. } => (profile.a, profile.b),
        Command::Regime { a, b: Some(b), .. } => (*a, *b),
        _ => return None,
    };
    quadvort::QuadraticProfile::new(a, b).ok()
}

fn emit(cfg: &RunConfig, art: &Artifacts) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Some(dir) = &cfg.out_dir {
        let files = art.write_dir(dir)?;
        out.write_all(art.summary.as_bytes())
            .map_err(CliError::io)?;
        for f in files {
            writeln!(out, "wrote {f}").map_err(CliError::io)?;
        }
        return Ok(());
    }
    let text = art.render(cfg.format)?;
    match &cfg.output {
        Some(path) => write_file(path, &text),
        None => out.write_all(text.as_bytes()).map_err(CliError::io),
    }
}

fn run(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.dump_config {
        let v = serde_json::to_value(cfg).map_err(CliError::io)?;
        let mut v = serde_json::json!({ "schema_version": output::SCHEMA_VERSION, "config": v });
        if let Some(m) = v.as_object_mut() {
            m.insert(
                "threads_env".into(),
                serde_json::json!(std::env::var(THREADS_ENV).ok()),
            );
        }
        print!("{}", pretty(&v));
        return Ok(());
    }
    init_threads()?;
    if let Some(path) = &cfg.check {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        let stored = Table::from_csv(&text)?;
        let fresh = artifacts(cfg)?;
        let report = check::check(&stored, &fresh.table, check_profile(&cfg.command))?;
        let text = match cfg.format {
            Format::Csv => report.table.to_csv()?,
            Format::Json => {
                let mut a = Artifacts::new("check", report.table.clone());
                a.meta
                    .insert("file".into(), serde_json::json!(path.display().to_string()));
                a.render(Format::Json)?
            }
        };
        print!("{text}");
        return if report.ok {
            Ok(())
        } else {
            Err(CliError::Numerical(format!(
                "{} does not reproduce",
                path.display()
            )))
        };
    }
    let art = artifacts(cfg)?;
    emit(cfg, &art)
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quadvort {}: {e}", cfg.command.name());
            ExitCode::from(e.code() as u8)
        }
    }
}
