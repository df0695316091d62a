//! `uamo`: command-line laboratory for the unitary almost-Mathieu operator.
//!
//! Every run writes its primary output (CSV or JSON) and a manifest
//! `<stem>.manifest.json` echoing the resolved parameters. Failures print
//! `{"code": …, "message": …}` on stderr and exit with 2 (bad arguments),
//! 3 (numerical failure) or 4 (I/O).

mod commands;
mod error;
mod params;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Command, FromArgMatches};
use serde_json::{json, Map, Value};

use commands::{experiment, experiments, Outcome};
use error::CliError;
use params::{manifest_path, Params, Resolved};

fn cli() -> Command {
    let mut cmd = Command::new("uamo")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Numerical laboratory for the unitary almost-Mathieu operator")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for e in experiments() {
        cmd = cmd.subcommand(Params::augment_args(Command::new(e.name())).about(e.about()));
    }
    cmd
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(name: &str, params: &Resolved, outcome: &Outcome) -> Result<(), CliError> {
    let manifest = manifest_path(&outcome.out);
    write(&outcome.out, &outcome.payload.render())?;
    let summary: Map<String, Value> = outcome.summary.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let doc = json!({
        "command": name,
        "version": env!("CARGO_PKG_VERSION"),
        "parameters": params.echo(),
        "summary": summary,
        "outputs": [outcome.out.display().to_string()],
    });
    write(&manifest, &(serde_json::to_string_pretty(&doc).expect("manifest serializes") + "\n"))?;
    println!("wrote {}", outcome.out.display());
    for (k, v) in &outcome.summary {
        println!("{k} = {v}");
    }
    Ok(())
}

fn run() -> Result<(), CliError> {
    let matches = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let msg = e.render().to_string();
            return Err(CliError::Usage(msg.lines().next().unwrap_or("bad arguments").trim_start_matches("error: ").to_string()));
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let exp = experiment(name).expect("subcommands come from the registry");
    let params = Params::from_arg_matches(sub)
        .map_err(|e| CliError::Usage(e.to_string()))?
        .with_config()?;
    if let Some(threads) = params.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))?;
    }
    let resolved = Resolved::new(params);
    let outcome = exp.run(&resolved)?;
    emit(name, &resolved, &outcome)?;
    match outcome.failure {
        Some(msg) => Err(CliError::Numerical(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code() as u8)
        }
    }
}
