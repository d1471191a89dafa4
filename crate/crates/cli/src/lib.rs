//! Command-line surface: argument parsing, JSON I/O with run manifests, and
//! the acceptance suites behind `verify`.

pub mod args;
pub mod commands;
pub mod ctx;
pub mod error;
pub mod verify;

use args::{Cli, Command};
use clap::Parser;
use ctx::Ctx;
use error::{CliError, Result};
use serde_json::{json, Value};
use std::time::Instant;

/// What a run produced: the exit code and the text for stdout.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn with_manifest(result: Value, manifest: Value) -> Value {
    match result {
        Value::Object(mut m) => {
            m.insert("manifest".into(), manifest);
            Value::Object(m)
        }
        other => json!({"result": other, "manifest": manifest}),
    }
}

fn execute(cli: &Cli, ctx: &Ctx) -> Result<(Value, i32)> {
    let v = match &cli.command {
        Command::Padic(c) => commands::padic(ctx, c)?,
        Command::Series(c) => commands::series(ctx, c)?,
        Command::Flow(c) => commands::flow(ctx, c)?,
        Command::Chains(c) => commands::chains(ctx, c)?,
        Command::Reg(c) => commands::reg(ctx, c)?,
        Command::Symp(c) => commands::symp(ctx, c)?,
        Command::Vol(c) => commands::vol(ctx, c)?,
        Command::Verify(a) => {
            let report = verify::run_suite(&a.suite, a.budget, ctx.seed, cli.timing)?;
            let code = report.exit_code();
            return Ok((report.to_json(), code));
        }
        Command::Replay { file } => return replay(file),
    };
    Ok((v, error::OK))
}

fn replay(file: &str) -> Result<(Value, i32)> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::new(error::VALIDATION, "Io", format!("{file}: {e}")))?;
    let v: Value = serde_json::from_str(&text)?;
    let argv: Vec<String> = v
        .pointer("/manifest/command_line")
        .and_then(|a| serde_json::from_value(a.clone()).ok())
        .ok_or_else(|| CliError::validation(format!("{file} has no manifest")))?;
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::validation(e.to_string()))?;
    let ctx = Ctx::new(argv.clone(), cli.precision, cli.cutoff, cli.seed);
    let (res, _) = execute(&cli, &ctx).map_err(|e| CliError::new(e.code, &e.kind, e.message))?;
    let fresh = serde_json::to_string(&with_manifest(res, ctx.manifest(None)))?;
    let same = fresh.trim_end() == text.trim_end();
    let code = if same { error::OK } else { error::MATH };
    Ok((json!({"replayed": file, "identical": same}), code))
}

/// Parses `argv` (including the program name) and runs it.
pub fn run(argv: Vec<String>) -> Outcome {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                return Outcome { code: error::OK, stdout: e.to_string() };
            }
            let err = CliError::new(error::VALIDATION, "Usage", e.render().to_string().trim().to_string());
            return Outcome { code: err.code, stdout: format!("{}\n", err.to_json()) };
        }
    };
    // suites run sequentially, so any positive thread cap is honoured
    if let Ok(t) = std::env::var("ELLADIC_THREADS") {
        if t.parse::<u32>().map_or(true, |n| n == 0) {
            let err = CliError::validation(format!("ELLADIC_THREADS must be a positive integer, got {t:?}"));
            return Outcome { code: err.code, stdout: format!("{}\n", err.to_json()) };
        }
    }
    let ctx = Ctx::new(argv, cli.precision, cli.cutoff, cli.seed);
    let start = Instant::now();
    let (value, code) = match execute(&cli, &ctx) {
        Ok(x) => x,
        Err(e) => (e.to_json(), e.code),
    };
    let wall = cli.timing.then(|| start.elapsed().as_millis());
    match &cli.out {
        Some(path) => {
            let full = with_manifest(value, ctx.manifest(wall));
            let text = format!("{}\n", serde_json::to_string(&full).expect("json"));
            if let Err(e) = std::fs::write(path, text) {
                let err = CliError::new(error::VALIDATION, "Io", format!("{path}: {e}"));
                return Outcome { code: err.code, stdout: format!("{}\n", err.to_json()) };
            }
            Outcome { code, stdout: String::new() }
        }
        None => Outcome { code, stdout: format!("{}\n", serde_json::to_string(&value).expect("json")) },
    }
}
