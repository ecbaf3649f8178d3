//! Command-line verifier for cotorsion-pair constructions in extension
//! categories of module categories over finite-dimensional algebras.

mod config;
mod engine;
mod report;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use config::{effective_budget, effective_window, load, report_paths, Loaded, TaskDecl};
use engine::{exit_code, Session, TaskReport};

#[derive(Parser)]
#[command(
    name = "cotorsion",
    version,
    about = "Verifies cotorsion-pair constructions in extension categories \
             of module categories over finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task declared in a configuration and report pass/fail.
    Verify {
        /// Path to a TOML configuration, or a bundled name
        /// (a2_transport, t2_dual_bridge, frobenius_swap).
        config: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate one Ext dimension between named universe members.
    Ext {
        config: String,
        /// Source object: x<i> (base) or e<i> / t:x<i> / z:x<i> (extension).
        #[arg(long)]
        from: String,
        /// Target object, same naming scheme (both must be on one side).
        #[arg(long)]
        to: String,
        /// Ext degree.
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the tasks and print the report in the chosen format.
    Report {
        config: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable, with timings.
    Text,
    /// Canonical machine-readable JSON (byte-identical across runs).
    Structured,
}

#[derive(Args)]
struct CommonArgs {
    /// Only run tasks whose kind keyword or 0-based index matches.
    #[arg(long, value_delimiter = ',')]
    tasks: Vec<String>,
    /// Highest Ext degree for windowed checks (overrides the config).
    #[arg(long)]
    window: Option<usize>,
    /// Enumeration budget (overrides the config and COTORSION_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Directory receiving <config>.report.txt and <config>.report.json.
    #[arg(long)]
    report_dir: Option<PathBuf>,
    /// Run the tasks on one thread each instead of sequentially.
    #[arg(long)]
    parallel: bool,
    /// More detail in the text report.
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Headline and failures only.
    #[arg(short, long, conflicts_with = "verbose")]
    quiet: bool,
}

impl CommonArgs {
    fn verbosity(&self) -> u8 {
        if self.quiet {
            0
        } else {
            1 + self.verbose
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify { config, common } => {
            let (loaded, session, tasks) = run_tasks(&config, &common, None)?;
            print!(
                "{}",
                report::render_text(&session, &loaded.name, &tasks, common.verbosity())
            );
            write_reports(&loaded, &session, &tasks, &common)?;
            Ok(exit_code(&tasks))
        }
        Command::Ext {
            config,
            from,
            to,
            degree,
            common,
        } => {
            let one = vec![TaskDecl::Ext {
                from,
                to,
                degree,
                expect: None,
            }];
            let (loaded, session, tasks) = run_tasks(&config, &common, Some(one))?;
            print!(
                "{}",
                report::render_text(&session, &loaded.name, &tasks, common.verbosity())
            );
            Ok(exit_code(&tasks))
        }
        Command::Report {
            config,
            format,
            common,
        } => {
            let (loaded, session, tasks) = run_tasks(&config, &common, None)?;
            match format {
                Format::Text => print!(
                    "{}",
                    report::render_text(&session, &loaded.name, &tasks, common.verbosity())
                ),
                Format::Structured => print!(
                    "{}",
                    report::render_machine(&report::machine_report(
                        &session,
                        &loaded.name,
                        &loaded.raw,
                        &tasks
                    ))
                ),
            }
            write_reports(&loaded, &session, &tasks, &common)?;
            Ok(exit_code(&tasks))
        }
    }
}

/// Loads the config, builds the session, and runs either the declared task
/// list or a replacement list (used by the one-off `ext` verb).
fn run_tasks(
    config: &str,
    common: &CommonArgs,
    replace_tasks: Option<Vec<TaskDecl>>,
) -> Result<(Loaded, Session, Vec<TaskReport>)> {
    let loaded = load(config)?;
    let budget = effective_budget(common.budget, &loaded.file);
    let window = effective_window(common.window, &loaded.file);
    let session = Session::new(&loaded.file, window, budget)?;
    let filter = if common.tasks.is_empty() {
        None
    } else {
        Some(common.tasks.as_slice())
    };
    let tasks = match &replace_tasks {
        Some(list) => session.run(list, None, false),
        None => session.run(&loaded.file.tasks, filter, common.parallel),
    };
    Ok((loaded, session, tasks))
}

fn write_reports(
    loaded: &Loaded,
    session: &Session,
    tasks: &[TaskReport],
    common: &CommonArgs,
) -> Result<()> {
    let Some(dir) = &common.report_dir else {
        return Ok(());
    };
    std::fs::create_dir_all(dir)?;
    let (text_path, json_path) = report_paths(dir, &loaded.name);
    std::fs::write(
        &text_path,
        report::render_text(session, &loaded.name, tasks, common.verbosity().max(1)),
    )?;
    std::fs::write(
        &json_path,
        report::render_machine(&report::machine_report(
            session,
            &loaded.name,
            &loaded.raw,
            tasks,
        )),
    )?;
    Ok(())
}
