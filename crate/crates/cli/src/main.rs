//! `coffins`: verify problems, render construction figures, list the corpus.
//!
//! Exit status: 0 when every selected problem passes, 1 when any fails or
//! errors, 2 on usage errors.

mod instance;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coffins_core::problems::{verify_id, ProblemId, Status, VerificationReport};
use coffins_core::sketch::{execute, parse, render_svg, script, Bindings, Viewport};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "coffins", version, about = "Verify the coffin problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verifiers and write one JSON report per problem plus a summary.
    Verify {
        /// Problem ids such as p01 p42.
        ids: Vec<String>,
        /// Run every problem.
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Render construction figures next to the reports.
        #[arg(long)]
        figures: bool,
        /// Print the summary as JSON.
        #[arg(long, conflicts_with = "human")]
        json: bool,
        /// Print one line per problem (the default).
        #[arg(long)]
        human: bool,
        /// Report directory.
        #[arg(short = 'o', long = "out", default_value = "reports")]
        out: PathBuf,
        /// Verifiers run in parallel; 0 picks the number of cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Render a construction script to SVG.
    Render {
        /// Script id (p19a) or a problem id with a single script (p10).
        id: String,
        /// JSON file overriding script parameters.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Output file; defaults to `<script>.svg`.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// List the problems with their verifier kinds.
    List,
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            ids,
            all,
            seed,
            figures,
            json,
            human: _,
            out,
            jobs,
        } => cmd_verify(&ids, all, seed, figures, json, &out, jobs),
        Command::Render { id, instance, out } => cmd_render(&id, instance.as_deref(), out),
        Command::List => cmd_list(),
    }
}

fn selected(ids: &[String], all: bool) -> Result<Vec<ProblemId>, String> {
    if all {
        return Ok(ProblemId::ALL.to_vec());
    }
    if ids.is_empty() {
        return Err("name problem ids or pass --all".into());
    }
    let mut out = Vec::new();
    for id in ids {
        let p: ProblemId = id
            .parse()
            .map_err(|_| format!("unknown problem '{id}'; run `coffins list`"))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

fn render_script(script_id: &str, bindings: &Bindings) -> Result<String, String> {
    let source =
        script(script_id).ok_or_else(|| format!("no construction script '{script_id}'"))?;
    let program = parse(source).map_err(|e| e.to_string())?;
    let trace = execute(&program, bindings).map_err(|e| e.to_string())?;
    let viewport = Viewport::fit(&trace).map_err(|e| e.to_string())?;
    render_svg(&trace, &viewport).map_err(|e| e.to_string())
}

fn write_figures(report: &mut VerificationReport, dir: &Path) -> Result<(), String> {
    for s in report.problem.scripts() {
        let svg = render_script(s, &Bindings::new())?;
        let rel = format!("figures/{s}.svg");
        fs::write(dir.join(&rel), svg).map_err(|e| format!("{rel}: {e}"))?;
        report.figures.push(rel);
    }
    Ok(())
}

fn cmd_verify(
    ids: &[String],
    all: bool,
    seed: u64,
    figures: bool,
    json: bool,
    out: &Path,
    jobs: usize,
) -> ExitCode {
    let ids = match selected(ids, all) {
        Ok(ids) => ids,
        Err(e) => return usage(e),
    };
    let dirs = if figures {
        out.join("figures")
    } else {
        out.to_path_buf()
    };
    if let Err(e) = fs::create_dir_all(&dirs) {
        return usage(format!("cannot create {}: {e}", dirs.display()));
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let mut reports: Vec<VerificationReport> =
        pool.install(|| ids.par_iter().map(|&id| verify_id(id, seed)).collect());

    // written serially, in id order
    for report in &mut reports {
        if figures {
            if let Err(e) = write_figures(report, out) {
                report.status = Status::Error;
                report.error = Some(format!("rendering failed: {e}"));
            }
        }
        let text = serde_json::to_string_pretty(report).expect("reports serialize");
        let path = out.join(format!("{}.json", report.problem));
        if let Err(e) = fs::write(&path, text + "\n") {
            return usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let summary = json!({
        "seed": seed,
        "total": reports.len(),
        "passed": count(Status::Pass),
        "failed": count(Status::Fail),
        "errors": count(Status::Error),
        "problems": reports.iter().map(|r| json!({
            "problem": r.problem,
            "status": r.status,
            "certificates": r.certificates.len(),
            "headline": r.headline().map(|c| &c.claim),
        })).collect::<Vec<_>>(),
    });
    let summary_text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    if let Err(e) = fs::write(out.join("summary.json"), summary_text.clone() + "\n") {
        return usage(format!("cannot write the summary: {e}"));
    }

    if json {
        println!("{summary_text}");
    } else {
        for r in &reports {
            let mark = if r.status == Status::Pass {
                '✓'
            } else {
                '✗'
            };
            let key = match (&r.error, r.headline()) {
                (Some(e), _) => format!("error: {e}"),
                (None, Some(c)) => format!("{}: {}", c.claim, c.witness),
                (None, None) => "no certificates".into(),
            };
            println!(
                "{mark} {}  {:<17} {key}",
                r.problem,
                r.problem.kind().to_string()
            );
        }
        println!("{}/{} pass", count(Status::Pass), reports.len());
    }
    if reports.iter().all(|r| r.status == Status::Pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_render(id: &str, instance: Option<&Path>, out: Option<PathBuf>) -> ExitCode {
    let script_id = if script(id).is_some() {
        id.to_string()
    } else {
        let Ok(problem) = id.parse::<ProblemId>() else {
            return usage(format!("unknown problem or script '{id}'"));
        };
        match problem.scripts() {
            [] => return usage(format!("{problem} has no construction to render")),
            [only] => only.to_string(),
            many => {
                return usage(format!(
                    "{problem} has several scripts; pick one of {}",
                    many.join(", ")
                ))
            }
        }
    };
    let bindings = match instance {
        None => Bindings::new(),
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
            };
            match instance::parse_instance(&text) {
                Ok(b) => b,
                Err(e) => return usage(e),
            }
        }
    };
    let svg = match render_script(&script_id, &bindings) {
        Ok(svg) => svg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let out = out.unwrap_or_else(|| PathBuf::from(format!("{script_id}.svg")));
    match fs::write(&out, svg) {
        Ok(()) => {
            println!("wrote {}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => usage(format!("cannot write {}: {e}", out.display())),
    }
}

fn cmd_list() -> ExitCode {
    for id in ProblemId::ALL {
        println!("{id}  {:<17} {}", id.kind().to_string(), id.summary());
    }
    ExitCode::SUCCESS
}
