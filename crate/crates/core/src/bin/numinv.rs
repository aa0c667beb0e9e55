use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use numinv::bench::{bench_dir, summary, write_csv};
use numinv::domains::Domain;
use numinv::driver::{run_verification, Outcome, RunConfig, TeacherSpec};
use numinv::frontend::{parse_system, print_smt2};
use numinv::learner::AttrSource;
use numinv::separator::SeparatorKind;

#[derive(Parser)]
#[command(name = "numinv", version, about = "Invariant synthesis for linear integer transition systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Prove or refute the safety of one program.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run every .ts program of a directory and report a CSV table.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Number of programs verified concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// int, oct, poly, or `all` (bench only).
    #[arg(long, default_value = "poly")]
    domain: String,
    #[arg(long, default_value = "incremental")]
    separator: SeparatorKind,
    /// builtin:<B> or smt:<command>
    #[arg(long, default_value = "builtin:16")]
    teacher: TeacherSpec,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 300)]
    timeout_secs: u64,
    /// Per-query solver timeout in seconds.
    #[arg(long, default_value_t = 10)]
    query_timeout: u64,
    #[arg(long, default_value_t = 1.0)]
    penalty: f64,
    /// `separators` or `octagon-templates:<c>`.
    #[arg(long, default_value = "separators")]
    attrs: String,
    /// Leave the atoms of Init, Good and Trans out of the attribute pool.
    #[arg(long)]
    no_initial_attrs: bool,
    /// Print separator and counterexample events to stderr.
    #[arg(long)]
    trace: bool,
}

impl RunArgs {
    fn configs(&self) -> Result<Vec<RunConfig>, String> {
        let domains: Vec<Domain> = if self.domain == "all" {
            Domain::ALL.to_vec()
        } else {
            vec![self.domain.parse()?]
        };
        let attrs = match self.attrs.as_str() {
            "separators" => AttrSource::Separators,
            a => match a.strip_prefix("octagon-templates:").map(str::parse::<i64>) {
                Some(Ok(c)) if c >= 0 => AttrSource::OctagonTemplates(c),
                _ => return Err(format!("bad --attrs {a:?}")),
            },
        };
        if self.max_iters == 0 {
            return Err("--max-iters must be at least 1".into());
        }
        if self.timeout_secs == 0 {
            return Err("--timeout-secs must be positive".into());
        }
        let teacher = match &self.teacher {
            TeacherSpec::Smt { command, .. } => {
                TeacherSpec::Smt { command: command.clone(), query_timeout: Duration::from_secs(self.query_timeout) }
            }
            t => t.clone(),
        };
        Ok(domains
            .into_iter()
            .map(|domain| RunConfig {
                domain,
                separator: self.separator,
                teacher: teacher.clone(),
                max_iterations: self.max_iters,
                budget: Duration::from_secs(self.timeout_secs),
                penalty: self.penalty,
                trace: self.trace,
                initial_attributes: !self.no_initial_attrs,
                attrs,
            })
            .collect())
    }
}

const USAGE: u8 = 3;

fn verify(file: PathBuf, run: RunArgs) -> ExitCode {
    let cfgs = match run.configs() {
        Ok(c) if c.len() == 1 => c,
        Ok(_) => {
            eprintln!("verify takes a single domain");
            return ExitCode::from(USAGE);
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(USAGE);
        }
    };
    let name = file.display().to_string();
    let text = match fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{name}: {e}");
            return ExitCode::from(USAGE);
        }
    };
    let sys = match parse_system(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}", e.render(&name, &text));
            return ExitCode::from(USAGE);
        }
    };
    let r = run_verification(&sys, &cfgs[0]);
    for line in &r.trace {
        eprintln!("{line}");
    }
    println!("{}", r.outcome.label());
    match &r.outcome {
        Outcome::Safe(inv) => {
            println!("{}", print_smt2(inv, &sys.vars));
            if r.bounded {
                eprintln!("note: checked inside the teacher's bounded box only");
            }
            ExitCode::from(0)
        }
        Outcome::Unsafe(w) => {
            eprintln!("reachable bad state {w}");
            ExitCode::from(1)
        }
        Outcome::Unknown(why) => {
            eprintln!("{why}");
            ExitCode::from(2)
        }
    }
}

fn bench(dir: PathBuf, run: RunArgs, jobs: usize, csv: Option<PathBuf>) -> ExitCode {
    let cfgs = match run.configs() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(USAGE);
        }
    };
    let rows = match bench_dir(&dir, &cfgs, jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            return ExitCode::from(USAGE);
        }
    };
    let written = match &csv {
        Some(p) => fs::File::create(p).map_err(csv::Error::from).and_then(|f| write_csv(&rows, f)),
        None => write_csv(&rows, io::stdout()),
    };
    if let Err(e) = written {
        eprintln!("cannot write CSV: {e}");
        return ExitCode::from(USAGE);
    }
    println!("{}", summary(&rows));
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };
    match cli.cmd {
        Cmd::Verify { file, run } => verify(file, run),
        Cmd::Bench { dir, run, jobs, csv } => bench(dir, run, jobs, csv),
    }
}
