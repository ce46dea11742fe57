//! `heckext`: tables, verifications and oracle reports.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use heckext::exec::Exec;
use heckext_cli::checks::{self, Verdict};
use heckext_cli::render::oracle_json;
use heckext_cli::table::{cmd_table, Algebra};
use heckext_cli::{Format, RunConfig};
use heckext_oracle::closure::DEFAULT_CAP;
use heckext_oracle::frattini::oracle_report;
use heckext_oracle::pattern::GroupDescriptor;
use heckext_oracle::ring::ResidueRing;
use serde_json::json;

#[derive(Parser)]
#[command(name = "heckext", version, about = "Mod-p Hecke and Ext algebras of SL2(Qp) with a finite-quotient oracle")]
struct Cli {
    #[arg(long, default_value_t = 5, global = true)]
    p: u32,
    /// Unramified degree (oracle only).
    #[arg(long, default_value_t = 1, global = true)]
    f: usize,
    #[arg(long, default_value_t = 6, global = true)]
    max_len: u64,
    /// Oracle precision m.
    #[arg(long, default_value_t = 3, global = true)]
    precision: u32,
    #[arg(long, default_value_t = Format::Json, global = true)]
    format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Output file, or a directory to write a file named after the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplication table of basis elements (H, H_J, H_K, E_J, E_K).
    Table { algebra: Algebra },
    /// Run a named check, or `all` for every acceptance criterion.
    Verify { id: String },
    /// Order and Frattini quotient of a group descriptor.
    Oracle { descriptor: String },
    /// List the ids accepted by `verify`.
    Ids,
}

fn render_verdicts(vs: &[Verdict], format: Format) -> String {
    match format {
        Format::Json => {
            let all: Vec<_> = vs.iter().map(Verdict::json).collect();
            let v = json!({ "pass": vs.iter().all(|v| v.pass), "results": all });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("id,criterion,pass,details\n");
            for v in vs {
                let c = v.criterion.map(|c| c.to_string()).unwrap_or_default();
                let d = heckext_cli::render::csv_field(&v.details.to_string());
                s += &format!("{},{c},{},{d}\n", v.id, v.pass);
            }
            s
        }
        Format::Text => vs.iter().map(|v| v.line() + "\n").collect(),
    }
}

/// Writes to stdout, treating a closed pipe (as in `| head`) as success.
fn write_stdout(body: &str) -> Result<()> {
    match io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn emit(cfg: &RunConfig, out: Option<PathBuf>, name: &str, body: &str) -> Result<()> {
    match out {
        None => write_stdout(body)?,
        Some(path) => {
            let path = if path.is_dir() {
                path.join(format!("{name}-{}.{}", cfg.tag(), cfg.format.extension()))
            } else {
                path
            };
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = RunConfig {
        p: cli.p,
        f: cli.f,
        max_len: cli.max_len,
        precision: cli.precision,
        format: cli.format,
        seed: cli.seed,
        exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
    };
    cfg.validate()?;
    match cli.command {
        Command::Table { algebra } => {
            let t = cmd_table(algebra, &cfg)?;
            emit(&cfg, cli.out, &format!("table-{}", algebra.tag()), &t.render(cfg.format))?;
            Ok(true)
        }
        Command::Verify { id } => {
            let vs = checks::verify(&id, &cfg)?;
            emit(&cfg, cli.out, &format!("verify-{id}"), &render_verdicts(&vs, cfg.format))?;
            Ok(vs.iter().all(|v| v.pass))
        }
        Command::Oracle { descriptor } => {
            let d: GroupDescriptor = descriptor.parse()?;
            let ring = ResidueRing::new(cfg.p, cfg.f, cfg.precision)?;
            let r = oracle_report(&d, ring, DEFAULT_CAP, cfg.exec)?;
            let body = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&oracle_json(&r))? + "\n",
                Format::Csv => format!(
                    "group,p,f,m,order,frattini_invariants,stable\n{},{},{},{},{},{},{}\n",
                    heckext_cli::render::csv_field(&r.group),
                    r.p,
                    r.f,
                    r.m,
                    r.order,
                    heckext_cli::render::csv_field(&format!("{:?}", r.frattini_invariants)),
                    r.stable
                ),
                Format::Text => format!(
                    "{} over O/M^{} (p = {}, f = {}): order {}, Frattini quotient {:?}, stable against m = {}: {}\n",
                    r.group, r.m, r.p, r.f, r.order, r.frattini_invariants, r.compared_m, r.stable
                ),
            };
            emit(&cfg, cli.out, &format!("oracle-{}", d.name), &body)?;
            Ok(true)
        }
        Command::Ids => {
            write_stdout(&(checks::ids().join("\n") + "\n"))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
