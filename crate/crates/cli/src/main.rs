use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use ecoc_core::format::{emit_instance, parse_instance};
use ecoc_core::gen::{GenSpec, Probability};
use ecoc_core::oracle::brute_force_ecoc;
use ecoc_core::{kernelize_with, Instance, KernelResult, LpMode, Outcome};

mod bench;

/// Kernelization for l-Exact Component Order Connectivity.
///
/// Exit status: 0 for a yes answer or a produced kernel, 1 for a proven no
/// (or a failed verification), 2 for usage and I/O errors.
#[derive(Parser)]
#[command(name = "ecoc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the kernel as an instance file, or NO.
    Kernelize {
        file: PathBuf,
        /// Write the rule-by-rule trace here.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        /// Generate LP constraints on demand instead of enumerating them.
        #[arg(long)]
        lazy_lp: bool,
        /// Write every LP solved, in CPLEX LP format, into this directory.
        #[arg(long, value_name = "DIR")]
        lp_dump: Option<PathBuf>,
    },
    /// Decide the instance exhaustively (at most 22 vertices).
    Solve { file: PathBuf },
    /// Kernelize, then check with the exhaustive solver that the answer is
    /// unchanged.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        lazy_lp: bool,
    },
    /// Generate a seeded instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout if omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Kernelize a grid of generated instances and write one CSV row each.
    Bench {
        /// `key=v1,v2;key=a..b;...` over kind, n, components, l, k, p, seed.
        #[arg(long)]
        grid: String,
        /// CSV output; stdout if omitted.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        #[arg(long)]
        lazy_lp: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Disjoint connected blocks of `l` vertices plus `k` solution vertices.
    Planted {
        #[arg(long)]
        components: usize,
        #[arg(short, long)]
        l: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        p: Probability,
    },
    /// G(n, p).
    Random {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        p: Probability,
        #[arg(short, long)]
        l: usize,
        #[arg(short, long)]
        k: usize,
    },
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("{}", path.display()))
}

fn lp_mode(lazy: bool) -> LpMode {
    if lazy {
        LpMode::Lazy
    } else {
        LpMode::Eager
    }
}

fn kernelize_cmd(file: &Path, trace: Option<&Path>, lazy: bool, lp_dump: Option<&Path>) -> Result<ExitCode> {
    let inst = read_instance(file)?;
    if let Some(dir) = lp_dump {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let mut dump_error = None;
    let mut solves = 0;
    let res = kernelize_with(&inst, lp_mode(lazy), |cur, search| {
        solves += 1;
        let Some(dir) = lp_dump else { return };
        let path = dir.join(format!("lp-{solves}.lp"));
        let written = fs::File::create(&path).and_then(|f| {
            let mut w = BufWriter::new(f);
            search.lp.write_lp_format(&cur.graph, &mut w)?;
            w.flush()
        });
        if let Err(e) = written {
            dump_error.get_or_insert_with(|| anyhow::Error::new(e).context(format!("cannot write {}", path.display())));
        }
    });
    if let Some(e) = dump_error {
        return Err(e);
    }
    if let Some(path) = trace {
        fs::write(path, res.trace.to_string()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let mut out = io::stdout().lock();
    match &res.outcome {
        Outcome::Kernel(ker) => {
            out.write_all(emit_instance(ker).as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Outcome::No(_) => {
            writeln!(out, "NO")?;
            Ok(ExitCode::from(1))
        }
    }
}

fn solve_cmd(file: &Path) -> Result<ExitCode> {
    let inst = read_instance(file)?;
    let answer = brute_force_ecoc(&inst)?;
    let mut out = io::stdout().lock();
    if !answer.feasible {
        writeln!(out, "NO")?;
        return Ok(ExitCode::from(1));
    }
    writeln!(out, "YES")?;
    let witness = answer.witness.expect("feasible answers carry a witness");
    let mut line = String::from("v");
    for label in inst.graph.labels_of(&witness) {
        line += &format!(" {label}");
    }
    writeln!(out, "{line}")?;
    Ok(ExitCode::SUCCESS)
}

/// Checks one file; `Ok(Err(reason))` is a verification failure.
fn verify_one(path: &Path, mode: LpMode) -> Result<Result<String, String>> {
    let inst = read_instance(path)?;
    let truth = brute_force_ecoc(&inst)?.feasible;
    let res: KernelResult = kernelize_with(&inst, mode, |_, _| {});
    if let Err(e) = res.replay(&inst) {
        return Ok(Err(format!("trace replay failed: {e}")));
    }
    let answer = match &res.outcome {
        Outcome::Kernel(ker) => brute_force_ecoc(ker)?.feasible,
        Outcome::No(_) => false,
    };
    let word = |b: bool| if b { "yes" } else { "no" };
    if answer == truth {
        Ok(Ok(word(truth).to_string()))
    } else {
        Ok(Err(format!("instance is {} but kernelization says {}", word(truth), word(answer))))
    }
}

fn verify_cmd(files: &[PathBuf], lazy: bool) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    let mut failed = false;
    for path in files {
        match verify_one(path, lp_mode(lazy))? {
            Ok(answer) => writeln!(out, "PASS {} ({answer})", path.display())?,
            Err(reason) => {
                failed = true;
                writeln!(out, "FAIL {}: {reason}", path.display())?;
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn gen_cmd(kind: GenKind, seed: u64, output: Option<&Path>) -> Result<ExitCode> {
    let (spec, comment) = match kind {
        GenKind::Planted { components, l, k, p } => (
            GenSpec::Planted {
                components,
                l,
                k,
                p,
                seed,
            },
            format!("c planted components {components} l {l} k {k} p {p} seed {seed}\n"),
        ),
        GenKind::Random { n, p, l, k } => (
            GenSpec::Random { n, p, l, k, seed },
            format!("c random n {n} p {p} l {l} k {k} seed {seed}\n"),
        ),
    };
    if let GenSpec::Planted { l: 0, .. } | GenSpec::Random { l: 0, .. } = spec {
        bail!("l must be at least 1");
    }
    let text = comment + &emit_instance(&spec.generate());
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Kernelize {
            file,
            trace,
            lazy_lp,
            lp_dump,
        } => kernelize_cmd(&file, trace.as_deref(), lazy_lp, lp_dump.as_deref()),
        Command::Solve { file } => solve_cmd(&file),
        Command::Verify { files, lazy_lp } => verify_cmd(&files, lazy_lp),
        Command::Gen { kind, seed, output } => gen_cmd(kind, seed, output.as_deref()),
        Command::Bench { grid, csv, lazy_lp } => {
            let grid = bench::parse_grid(&grid)?;
            let rows = bench::run(&grid, lp_mode(lazy_lp));
            match csv {
                Some(path) => {
                    let f = fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
                    bench::write_csv(f, &rows)?
                }
                None => bench::write_csv(io::stdout().lock(), &rows)?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
