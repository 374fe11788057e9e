use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use ttqc::channels::{closed_form, NoiseKind, NoiseSpec};
use ttqc::quantifiers::quantify_all;
use ttqc::spin_density::{xstate_direct, KinematicPoint, ProductionChannel, XState};
use ttqc::sweep::{describe, preset, run_sweep, write_rows, OutputFormat, SweepConfig};
use ttqc::teleport::{fidelity_closed, fidelity_direct, teleport_output_closed, InputStateParams};
use ttqc::Error;

#[derive(Parser)]
#[command(name = "ttqc", version, about = "Quantum correlations of top-antitop spin states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a TOML config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run one of the built-in sweeps.
    Preset {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<OutputFormat>,
    },
    /// Print the spin density matrix and its quantifiers as JSON.
    State {
        #[arg(long)]
        channel: ProductionChannel,
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Teleport through a (possibly noisy) resource and print the result as JSON.
    Teleport {
        #[arg(long)]
        channel: ProductionChannel,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long, requires = "p")]
        kind: Option<NoiseKind>,
        #[arg(long, requires = "kind")]
        p: Option<f64>,
        #[arg(long)]
        varphi: f64,
        #[arg(long)]
        phi: f64,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 3,
        _ => 2,
    }
}

fn emit(cfg: &SweepConfig, format: OutputFormat, out: Option<&Path>) -> ttqc::Result<()> {
    eprintln!("{}", describe(cfg));
    let rows = run_sweep(cfg)?;
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            write_rows(cfg, &rows, format, &mut w)?;
            w.flush()?;
        }
        None => write_rows(cfg, &rows, format, io::stdout().lock())?,
    }
    Ok(())
}

fn xstate_json(x: &XState) -> serde_json::Value {
    let dense = x.to_dense();
    let rows: Vec<Vec<[f64; 2]>> = dense
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|c| [c.re, c.im]).collect())
        .collect();
    json!({ "xstate": x, "density_matrix": rows })
}

fn print_json(value: &serde_json::Value) -> ttqc::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> ttqc::Result<()> {
    match cli.command {
        Command::Sweep { config } => {
            let cfg = SweepConfig::from_file(&config)?;
            emit(&cfg, cfg.output.format, cfg.output.path.as_deref())
        }
        Command::Preset { name, out, format } => {
            let cfg = preset(&name)?;
            emit(&cfg, format.unwrap_or_default(), out.as_deref())
        }
        Command::State { channel, beta, theta } => {
            let k = KinematicPoint::from_angle(beta, theta)?;
            let x = xstate_direct(channel, &k)?;
            let mut doc = xstate_json(&x);
            doc["channel"] = json!(channel);
            doc["beta"] = json!(beta);
            doc["theta"] = json!(theta);
            doc["z"] = json!(k.z());
            doc["quantifiers"] = json!(quantify_all(&x)?);
            print_json(&doc)
        }
        Command::Teleport { channel, beta, theta, kind, p, varphi, phi } => {
            let k = KinematicPoint::from_angle(beta, theta)?;
            let mut resource = xstate_direct(channel, &k)?;
            let noise = match (kind, p) {
                (Some(kind), Some(p)) => Some(NoiseSpec::new(kind, p)?),
                _ => None,
            };
            if let Some(n) = &noise {
                resource = closed_form(n, &resource)?;
            }
            let s = InputStateParams::new(varphi, phi)?;
            let out = teleport_output_closed(&resource, &s)?;
            print_json(&json!({
                "channel": channel,
                "beta": beta,
                "theta": theta,
                "noise": noise,
                "input": s,
                "resource": xstate_json(&resource),
                "output": xstate_json(&out),
                "quantifiers": quantify_all(&out)?,
                "fidelity_direct": fidelity_direct(&s, &out)?,
                "fidelity_closed": fidelity_closed(&out, &s)?,
            }))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ttqc: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
