mod args;
mod commands;
mod outcome;
mod range;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use outcome::Status;

pub const SCHEMA_ID: &str = "rtz.report.v1";

fn render(cmd: &args::Command, run: &commands::Run) -> Result<Vec<u8>, String> {
    let common = cmd.common();
    match common.format {
        Format::Json => {
            let doc = serde_json::json!({
                "schema": SCHEMA_ID,
                "command": cmd.name(),
                "reports": run.outcomes.iter().map(|o| o.json.clone()).collect::<Vec<_>>(),
            });
            let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| e.to_string())?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&run.header).map_err(|e| e.to_string())?;
            let timing_col = run.header.last() == Some(&"elapsed_ms");
            for o in &run.outcomes {
                for rec in &o.csv {
                    let mut rec = rec.clone();
                    if timing_col && common.timings {
                        *rec.last_mut().unwrap() = o.elapsed_ms.to_string();
                    }
                    w.write_record(&rec).map_err(|e| e.to_string())?;
                }
            }
            w.into_inner().map_err(|e| e.to_string())
        }
        Format::Table => {
            let mut s = String::new();
            if let Some(h) = commands::table_header(cmd) {
                s.push_str(&h);
                s.push('\n');
            }
            for o in &run.outcomes {
                s.push_str(&o.table);
                if common.timings {
                    s.push_str(&format!("  [{} ms]", o.elapsed_ms));
                }
                s.push('\n');
            }
            Ok(s.into_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = &cli.command;
    if let Err(e) = commands::validate(cmd) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cmd.common().jobs {
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let run = match pool.install(|| commands::run(cmd)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let bytes = match render(cmd, &run) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let written = match &cmd.common().output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    let failure = run.outcomes.iter().find_map(|o| match &o.status {
        Status::Fail(w) => Some(w.clone()),
        _ => None,
    });
    let exhausted = run.outcomes.iter().find_map(|o| match &o.status {
        Status::Exhausted(w) => Some(w.clone()),
        _ => None,
    });
    if let Some(w) = failure {
        eprintln!("check failed: {w}");
        return ExitCode::from(1);
    }
    if let Some(w) = exhausted {
        eprintln!("precision exhausted: {w}");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
