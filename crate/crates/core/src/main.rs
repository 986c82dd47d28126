//! Command-line front end: run circuit programs, sample measurement
//! shots, and verify a corpus of programs against their expected
//! results.

use clap::{Parser, Subcommand, ValueEnum};
use qsim::program::{execute, restore_pre_collapse, ExecutionReport, Program};
use qsim::{check, pretty_print, QuantumComputer};
use rand::Rng;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CORPUS_FAILURE: u8 = 1;
const EXIT_PROGRAM_ERROR: u8 = 2;
const EXIT_IO_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "qsim", about = "5-qubit quantum computer simulator", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit program file.
    Run {
        /// Program file in the hardware-compatible syntax.
        file: PathBuf,
        /// Number of shots; each shot runs on a fresh machine.
        #[arg(long, default_value_t = 1)]
        shots: u64,
        /// RNG seed; falls back to QSIM_SEED, then OS entropy.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every program in a directory and check its expected results.
    Checkcorpus {
        /// Directory of program files with expectation headers.
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { file, shots, seed, format } => run(&file, shots, seed, format),
        Command::Checkcorpus { dir } => checkcorpus(&dir),
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("QSIM_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or_else(|| rand::thread_rng().gen())
}

fn run(file: &Path, shots: u64, seed: Option<u64>, format: Format) -> ExitCode {
    let source = match std::fs::read_to_string(file) {
        Ok(source) => source,
        Err(e) => {
            eprintln!("qsim: cannot read {}: {e}", file.display());
            return ExitCode::from(EXIT_IO_ERROR);
        }
    };
    let seed = resolve_seed(seed);
    let mut histogram: BTreeMap<String, u64> = BTreeMap::new();
    let mut last: Option<(QuantumComputer, ExecutionReport)> = None;
    for shot in 0..shots.max(1) {
        let mut qc = QuantumComputer::with_seed(seed.wrapping_add(shot));
        let report = match execute(&mut qc, &source) {
            Ok(report) => report,
            Err(e) => {
                eprintln!("qsim: {e}");
                return ExitCode::from(EXIT_PROGRAM_ERROR);
            }
        };
        if let Some(key) = outcome_key(&report, &qc) {
            *histogram.entry(key).or_insert(0) += 1;
        }
        last = Some((qc, report));
    }
    let (qc, report) = last.expect("at least one shot ran");
    match format {
        Format::Text => print_text(&qc, &report, &histogram, seed, shots),
        Format::Json => print_json(&qc, &report, &histogram, seed),
    }
    ExitCode::SUCCESS
}

/// Collapsed bits of every measured qubit, in increasing machine index.
fn outcome_key(report: &ExecutionReport, qc: &QuantumComputer) -> Option<String> {
    if report.measurements.is_empty() {
        return None;
    }
    let mut bits: BTreeMap<usize, char> = BTreeMap::new();
    for record in &report.measurements {
        for (position, name) in record.register_qubits.iter().enumerate() {
            let index = qc.registers().machine_index(name).expect("measured qubit exists");
            bits.insert(index, record.collapsed.as_bytes()[position] as char);
        }
    }
    Some(bits.into_values().collect())
}

/// Pre-collapse pretty-print blocks: one per measured register, or the
/// whole machine when nothing was measured.
fn pre_collapse_blocks(qc: &QuantumComputer) -> Vec<String> {
    let mut probe = restore_pre_collapse(qc);
    let measured: Vec<String> = probe
        .registers()
        .registers()
        .iter()
        .filter(|r| r.get_noop().is_some())
        .map(|r| pretty_print(r.get_state()))
        .collect();
    if !measured.is_empty() {
        return measured;
    }
    let all = probe.registers().machine_order().to_vec();
    match probe.reorder_state(&all) {
        Ok(state) => vec![pretty_print(&state)],
        Err(e) => vec![format!("(cannot combine full state: {e})")],
    }
}

fn print_text(
    qc: &QuantumComputer,
    report: &ExecutionReport,
    histogram: &BTreeMap<String, u64>,
    seed: u64,
    shots: u64,
) {
    println!("shots: {shots}");
    println!("seed: {seed}");
    for (qubit, coords) in &report.bloch_results {
        println!("bloch {qubit}: ({:.6}, {:.6}, {:.6})", coords.x, coords.y, coords.z);
    }
    for block in pre_collapse_blocks(qc) {
        println!("{block}");
    }
    if !histogram.is_empty() {
        println!("histogram:");
        for (outcome, count) in histogram {
            println!("  {outcome}: {count}");
        }
    }
}

fn print_json(
    qc: &QuantumComputer,
    report: &ExecutionReport,
    histogram: &BTreeMap<String, u64>,
    seed: u64,
) {
    let mut probe = restore_pre_collapse(qc);
    let all = probe.registers().machine_order().to_vec();
    let probabilities: Vec<f64> = probe
        .reorder_state(&all)
        .map(|s| qsim::get_probabilities(&s).values().to_vec())
        .unwrap_or_default();
    let bloch: BTreeMap<String, Vec<f64>> = report
        .bloch_results
        .iter()
        .map(|(q, b)| (q.clone(), vec![b.x, b.y, b.z]))
        .collect();
    let doc = serde_json::json!({
        "probabilities": probabilities,
        "histogram": histogram,
        "bloch": bloch,
        "seed": seed,
    });
    println!("{doc}");
}

fn checkcorpus(dir: &Path) -> ExitCode {
    let entries = match std::fs::read_dir(dir) {
        Ok(entries) => entries,
        Err(e) => {
            eprintln!("qsim: cannot read directory {}: {e}", dir.display());
            return ExitCode::from(EXIT_IO_ERROR);
        }
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "q"))
        .collect();
    files.sort();
    if files.is_empty() {
        eprintln!("qsim: warning: no program files in {}", dir.display());
        return ExitCode::SUCCESS;
    }
    let seed = resolve_seed(None);
    let mut failures = 0usize;
    for path in &files {
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let verdict = check_one(path, seed);
        match verdict {
            Verdict::Pass => println!("{name:<24} pass"),
            Verdict::Skip => println!("{name:<24} skip (no expectations)"),
            Verdict::Fail(reason) => {
                failures += 1;
                println!("{name:<24} FAIL ({reason})");
            }
        }
    }
    println!("{} programs, {} failed", files.len(), failures);
    if failures > 0 {
        ExitCode::from(EXIT_CORPUS_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}

enum Verdict {
    Pass,
    Skip,
    Fail(String),
}

fn check_one(path: &Path, seed: u64) -> Verdict {
    let program = match Program::from_file(path) {
        Ok(Ok(program)) => program,
        Ok(Err(e)) => return Verdict::Fail(e.to_string()),
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    if !program.has_expectations() {
        return Verdict::Skip;
    }
    let mut qc = QuantumComputer::with_seed(seed);
    if let Err(e) = execute(&mut qc, &program.code) {
        return Verdict::Fail(e.to_string());
    }
    match check(&program, &qc) {
        Ok(true) => Verdict::Pass,
        Ok(false) => Verdict::Fail("expected results do not match".into()),
        Err(e) => Verdict::Fail(e.to_string()),
    }
}
