use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pqn_cli::suite::digest;
use pqn_cli::{generate, run_suite, CliError, Result, RunOptions, SpecFile, Suite};
use pqn_core::polyring::set_degree_cap;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "pqn", version, about = "Exact checks for Poisson quasi-Nijenhuis structures and their Courant algebroids")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RunArgs {
    /// Spec file, or `-` for stdin
    spec: PathBuf,
    /// Suite to run (repeatable); overrides the spec's list
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Total degree cap for every polynomial (also PQN_DEGREE_CAP)
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add per-suite wall-clock times to the report
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run suites on a spec (default: the spec's list, else pqn-axioms)
    Check(RunArgs),
    /// Run courant-axioms, plus thm-courant when the spec has an omega
    Courant(RunArgs),
    /// Run every applicable suite and print a readable summary
    Report(RunArgs),
    /// Deform the spec's structure by a closed 2-form and write the result as a spec
    Deform {
        spec: PathBuf,
        /// Component of the 2-form, e.g. `(1,2)=x`; replaces the spec's omega
        #[arg(long = "omega", value_name = "TUPLE=POLY")]
        omega: Vec<String>,
        #[arg(long)]
        degree_cap: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded PqN spec
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        /// Coefficient degree bound of the 1-form whose differential deforms the seed
        #[arg(long, default_value_t = 2)]
        degree_cap: u32,
        /// Emit the deformed structure instead of the seed and its 2-form
        #[arg(long)]
        deformed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    if let Ok(v) = std::env::var("PQN_DEGREE_CAP") {
        let cap = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("PQN_DEGREE_CAP={v:?} is not a nonnegative integer")))?;
        set_degree_cap(cap);
    }
    match cli.cmd {
        Cmd::Check(args) => verify(args, Mode::Check),
        Cmd::Courant(args) => verify(args, Mode::Courant),
        Cmd::Report(args) => verify(args, Mode::Report),
        Cmd::Deform {
            spec,
            omega,
            degree_cap,
            out,
        } => deform(&spec, &omega, degree_cap, out.as_deref()),
        Cmd::Generate {
            seed,
            dim,
            degree_cap,
            deformed,
            out,
        } => {
            let spec = generate(seed, dim, degree_cap, deformed)?;
            emit(out.as_deref(), &spec.to_json())?;
            Ok(0)
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Check,
    Courant,
    Report,
}

fn read_input(path: &Path) -> Result<String> {
    let io_err = |e: io::Error| CliError::Io(format!("{}: {e}", path.display()));
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Reads a spec and applies the degree cap: the flag, else the spec's field.
fn load(path: &Path, cap: Option<u32>) -> Result<(String, SpecFile)> {
    let text = read_input(path)?;
    let spec = SpecFile::from_json(&text)?;
    if let Some(c) = cap.or(spec.degree_cap) {
        set_degree_cap(c);
    }
    Ok((text, spec))
}

fn verify(args: RunArgs, mode: Mode) -> Result<i32> {
    let (text, spec) = load(&args.spec, args.degree_cap)?;
    let mut suites = args.suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>>>()?;
    if suites.is_empty() {
        let has_omega = spec.omega.is_some();
        suites = match mode {
            Mode::Check => Vec::new(),
            Mode::Courant => [Suite::CourantAxioms, Suite::ThmCourant].to_vec(),
            Mode::Report => Suite::ALL.to_vec(),
        };
        suites.retain(|s| has_omega || !s.needs_omega());
    }
    let opts = RunOptions {
        suites,
        seed: args.seed,
        timing: args.timing,
    };
    let report = run_suite(&spec, text.as_bytes(), &opts)?;
    if mode == Mode::Report {
        println!("{report}");
        if let Some(p) = &args.out {
            emit(Some(p), &report.to_json())?;
        }
    } else {
        emit(args.out.as_deref(), &report.to_json())?;
    }
    Ok(report.exit_code())
}

fn deform(path: &Path, omega: &[String], cap: Option<u32>, out: Option<&Path>) -> Result<i32> {
    let (text, mut spec) = load(path, cap)?;
    let structure = if omega.is_empty() {
        spec.validate(&text)?
    } else {
        let mut entries = BTreeMap::new();
        for item in omega {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--omega {item:?}: expected TUPLE=POLY")))?;
            entries.insert(k.trim().to_string(), v.trim().to_string());
        }
        spec.omega = Some(entries);
        spec.structure()?
    };
    let Some(o) = &structure.omega else {
        return Err(CliError::Usage("no omega: give one in the spec or with --omega".into()));
    };
    let hat = pqn_core::pqn::deform(&structure.pqn, o)?;
    let mut result = SpecFile::from_structure(&hat, None);
    result.suite = spec.suite.clone();
    result.seed = spec.seed;
    result.degree_cap = spec.degree_cap;
    let mut prov = BTreeMap::new();
    prov.insert("deformed_from".to_string(), Value::from(digest(text.as_bytes())));
    prov.insert("omega".to_string(), serde_json::to_value(&spec.omega).expect("map"));
    result.provenance = Some(prov);
    emit(out, &result.to_json())?;
    Ok(0)
}
