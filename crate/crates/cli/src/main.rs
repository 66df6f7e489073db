use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cyclix::theorems::{TheoremId, Verdict};
use cyclix_cli::commands::{
    self, CommandError, ComputePayload, Options, Outcome, Target, Theory, VerifyOptions, EXIT_ERROR,
};
use cyclix_cli::problem::{self, Problem};

/// Exact Hochschild, cyclic and periodic cyclic homology of finite
/// dimensional algebras and their crossed products by finite groups.
#[derive(Parser)]
#[command(name = "cyclix", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Highest form degree N. Overrides the problem file.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Degree of the bar resolution used for group homology.
    #[arg(long, global = true)]
    bar_degree: Option<usize>,
    /// Largest number of words per degree built in full.
    #[arg(long, global = true)]
    ambient_cap: Option<usize>,
    /// Print the JSON report envelope instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached complexes.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Seed for `selftest`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// HH, HC or HP of the algebra, the crossed product or one class block.
    Compute {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "hp")]
        theory: Theory,
        #[arg(long, value_enum, default_value = "crossed")]
        target: Target,
        /// Group element whose conjugacy class selects the block.
        #[arg(long)]
        element: Option<usize>,
    },
    /// Check one theorem on the problem.
    Verify {
        problem: PathBuf,
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        /// Only this group element (class checks).
        #[arg(long)]
        element: Option<usize>,
        /// Only this subgroup, as comma-separated members.
        #[arg(long, value_delimiter = ',')]
        subgroup: Option<Vec<usize>>,
        /// Coset representatives, comma-separated, in canonical coset order.
        #[arg(long, value_delimiter = ',')]
        section: Option<Vec<usize>>,
        /// Points of the nilpotent extension.
        #[arg(long, default_value_t = 2)]
        points: usize,
    },
    /// Store a complex in the cache, checking any existing entry against a
    /// fresh computation.
    Cache {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "crossed")]
        target: Target,
        #[arg(long)]
        element: Option<usize>,
    },
    /// Randomized identity checks of the form complexes.
    Selftest {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    TheoremId::parse(s).ok_or_else(|| {
        let names: Vec<_> = TheoremId::ALL.iter().map(|t| t.name()).collect();
        format!("unknown theorem '{s}'; expected one of {}", names.join(", "))
    })
}

fn load(path: &Path) -> Result<Problem, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    problem::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<P: Serialize>(out: Outcome<P>, json: bool, human: impl FnOnce(&P)) -> u8 {
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&out.envelope).expect("reports serialize"));
    } else {
        human(&out.envelope.payload);
    }
    out.exit as u8
}

fn show_compute(p: &ComputePayload) {
    println!("{} [{}]", p.problem, p.target);
    println!("  complex dims {:?}", p.complex_dims);
    if let Some(h) = &p.profile {
        println!("  {:?} {:?}", p.theory, h.dims);
    }
    if let Some(pp) = &p.periodic {
        println!("  HC {:?}", pp.hc);
        if pp.stabilized {
            println!("  HP even {} odd {}", pp.even, pp.odd);
        } else {
            println!("  HP not stabilized within degree {}", pp.truncation);
        }
    }
}

fn show_verify(p: &commands::VerifyPayload) {
    for r in &p.reports {
        let verdict = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotStabilized => "not stabilized",
        };
        println!("{} on {}: {verdict}", r.theorem, r.input);
        println!("  left {:?} right {:?}", r.left, r.right);
        for part in &r.parts {
            let mark = if part.matched { "" } else { "  <- mismatch" };
            println!("  {}: {:?} vs {:?}{mark}", part.label, part.left, part.right);
        }
        for c in r.failed_checks() {
            println!("  failed: {} {}", c.name, c.detail);
        }
        for n in &r.notes {
            println!("  note: {n}");
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let g = &cli.global;
    let opts = Options {
        max_degree: g.max_degree,
        bar_degree: g.bar_degree,
        ambient_cap: g.ambient_cap,
        cache_dir: g.cache_dir.clone(),
    };
    let err = |e: CommandError| e.to_string();
    Ok(match cli.command {
        Command::Compute { problem, theory, target, element } => {
            let p = load(&problem)?;
            emit(commands::compute(&p, theory, target, element, &opts).map_err(err)?, g.json, show_compute)
        }
        Command::Verify { problem, theorem, element, subgroup, section, points } => {
            let p = load(&problem)?;
            let v = VerifyOptions { theorem, element, subgroup, section, points };
            emit(commands::verify(&p, &v, &opts).map_err(err)?, g.json, show_verify)
        }
        Command::Cache { problem, target, element } => {
            let p = load(&problem)?;
            emit(commands::cache_complex(&p, target, element, &opts).map_err(err)?, g.json, |c| {
                let status = match (c.was_cached, c.identical) {
                    (true, Some(true)) => "cached entry matches a fresh computation",
                    (true, _) => "cached entry DIFFERS from a fresh computation",
                    _ => "stored",
                };
                println!("{}: {status}", c.path);
                println!("  dims {:?}", c.dims);
            })
        }
        Command::Selftest { count } => {
            let seed = g.seed.unwrap_or(0);
            emit(commands::selftest(seed, count, &opts).map_err(err)?, g.json, |s| {
                for c in &s.cases {
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    println!("{mark} N={} {} {}", c.forms, c.label, c.detail);
                }
                println!("seed {}: {}", s.seed, if s.passed { "all identities hold" } else { "failures" });
            })
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
