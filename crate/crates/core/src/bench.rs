//! Running a directory of `.ts` programs and tabulating the outcomes.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::driver::{run_verification, RunConfig};
use crate::frontend::parse_system;

pub const CSV_HEADER: [&str; 7] = ["name", "outcome", "iterations", "pool", "elapsed_ms", "domain", "separator"];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub name: String,
    /// `SAFE`, `UNSAFE`, `UNKNOWN` or `ERROR`.
    pub outcome: String,
    pub iterations: usize,
    pub pool: usize,
    pub elapsed_ms: u128,
    pub domain: String,
    pub separator: String,
}

/// The label in a `; expect: safe` (or `unsafe`) comment, upper-cased.
pub fn expected_outcome(text: &str) -> Option<String> {
    text.lines().find_map(|l| {
        let l = l.trim_start().strip_prefix(';')?.trim();
        let v = l.strip_prefix("expect:")?.trim();
        Some(v.to_ascii_uppercase())
    })
}

/// `.ts` files directly inside `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "ts"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_file(path: &Path, cfg: &RunConfig) -> BenchRow {
    let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    let mut row = BenchRow {
        name,
        outcome: "ERROR".into(),
        iterations: 0,
        pool: 0,
        elapsed_ms: 0,
        domain: cfg.domain.to_string(),
        separator: cfg.separator.to_string(),
    };
    let Ok(text) = fs::read_to_string(path) else { return row };
    let Ok(sys) = parse_system(&text) else { return row };
    let r = run_verification(&sys, cfg);
    row.outcome = r.outcome.label().into();
    row.iterations = r.stats.iterations;
    row.pool = r.stats.pool;
    row.elapsed_ms = r.stats.elapsed.as_millis();
    row
}

/// Run every program of `dir` under each configuration. Rows come out
/// grouped by configuration, then by file name.
pub fn bench_dir(dir: &Path, cfgs: &[RunConfig], jobs: usize) -> io::Result<Vec<BenchRow>> {
    let files = corpus_files(dir)?;
    let tasks: Vec<(&RunConfig, &PathBuf)> = cfgs.iter().flat_map(|c| files.iter().map(move |f| (c, f))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| io::Error::other(e.to_string()))?;
    Ok(pool.install(|| tasks.par_iter().map(|(c, f)| run_file(f, c)).collect()))
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.name.clone(),
            r.outcome.clone(),
            r.iterations.to_string(),
            r.pool.to_string(),
            r.elapsed_ms.to_string(),
            r.domain.clone(),
            r.separator.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `solved S safe / U unsafe / total T`.
pub fn summary(rows: &[BenchRow]) -> String {
    let count = |o: &str| rows.iter().filter(|r| r.outcome == o).count();
    format!("solved {} safe / {} unsafe / total {}", count("SAFE"), count("UNSAFE"), rows.len())
}
