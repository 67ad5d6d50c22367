use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smith_arrow::arrow::{pushout_product, tensor_arrow, ArrowObject, ArrowSquare};
use smith_arrow::chain::{homology, ChainComplex, ChainMap};
use smith_arrow::cliio::{from_json, persist_counterexamples, run_suites, to_json, Artifact, SuiteConfig};
use smith_arrow::dgalg::{quotient_dga, random_smith_ideal, random_smith_module, DGAlgebra, SmithIdeal, SmithModule};
use smith_arrow::gen::{random_arrow, random_complex, random_map, random_square, GenConfig};
use smith_arrow::Error;

#[derive(Parser)]
#[command(
    name = "smith-arrow",
    version,
    about = "Exact checks for arrow categories of chain complexes over F_p"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValidateKind {
    Complex,
    Map,
    Arrow,
    Square,
    Dga,
    Smith,
    Module,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Complex,
    Map,
    Arrow,
    Square,
    Dga,
    Smith,
    Module,
}

#[derive(clap::Args)]
struct Shape {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// Degree window as lo:hi
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true, value_parser = parse_window)]
    window: (i32, i32),
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a file and run the matching validator
    Validate { kind: ValidateKind, file: PathBuf },
    /// Homology dimensions of a complex
    Homology { file: PathBuf },
    /// Quotient DGA of a Smith ideal, with homology of R, I and R/I
    Quotient {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Tensor product of two arrows
    Tensor { f: PathBuf, g: PathBuf },
    /// Pushout product of two arrows
    PushoutProduct { f: PathBuf, g: PathBuf },
    /// Run property suites (comma separated, or "all")
    Check {
        suites: String,
        #[arg(long, env = "SMITH_ARROW_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        shape: Shape,
        /// Replay one trial index
        #[arg(long)]
        trial: Option<usize>,
        /// Where failing instances are written
        #[arg(long, default_value = "counterexamples")]
        counterexamples: PathBuf,
        /// Print the full report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Print a random instance
    Gen {
        kind: GenKind,
        #[arg(long, env = "SMITH_ARROW_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        shape: Shape,
    },
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if lo > hi {
        return Err("empty window".into());
    }
    Ok((lo, hi))
}

/// A failed command: exit 1 for a mathematical failure, 2 for bad input.
enum Fail {
    Invalid(String),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::NotPrime(_) => Fail::Usage(e.to_string()),
            _ => Fail::Invalid(e.to_string()),
        }
    }
}

fn load<T: Artifact>(path: &Path) -> Result<T, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn load_arrow(path: &Path) -> Result<ArrowObject, Fail> {
    let f: ArrowObject = load(path)?;
    f.map().validate()?;
    Ok(f)
}

fn validate(kind: ValidateKind, path: &Path) -> Result<(), Fail> {
    match kind {
        ValidateKind::Complex => load::<ChainComplex>(path)?.validate()?,
        ValidateKind::Map => {
            let m: ChainMap = load(path)?;
            m.src().validate()?;
            m.dst().validate()?;
            m.validate()?
        }
        ValidateKind::Arrow => {
            let f: ArrowObject = load(path)?;
            f.ev0().validate()?;
            f.ev1().validate()?;
            f.map().validate()?
        }
        ValidateKind::Square => {
            let a: ArrowSquare = load(path)?;
            for m in [a.src.map(), a.dst.map(), &a.a0, &a.a1] {
                m.src().validate()?;
                m.dst().validate()?;
                m.validate()?;
            }
            a.validate()?
        }
        ValidateKind::Dga => load::<DGAlgebra>(path)?.validate()?,
        ValidateKind::Smith => load::<SmithIdeal>(path)?.validate()?,
        ValidateKind::Module => load::<SmithModule>(path)?.validate()?,
    }
    Ok(())
}

fn homology_table(cols: &[(&str, &ChainComplex)]) -> String {
    let reports: Vec<_> = cols.iter().map(|(_, c)| homology(c)).collect();
    let lo = cols.iter().map(|(_, c)| c.lo()).min().unwrap_or(0);
    let hi = cols.iter().map(|(_, c)| c.hi()).max().unwrap_or(0);
    let mut out = format!("{:>6}", "n");
    for (name, _) in cols {
        out.push_str(&format!(" {:>6}", format!("H({name})")));
    }
    out.push('\n');
    for n in lo..=hi {
        out.push_str(&format!("{n:>6}"));
        for r in &reports {
            out.push_str(&format!(" {:>6}", r.dim(n)));
        }
        out.push('\n');
    }
    out
}

fn gen(kind: GenKind, seed: u64, shape: &Shape) -> Result<String, Fail> {
    smith_arrow::linalg::FieldSpec::new(shape.p)?;
    let cfg = GenConfig::new(shape.p, shape.window.0, shape.window.1, shape.max_dim);
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    Ok(match kind {
        GenKind::Complex => to_json(&random_complex(&cfg, rng)),
        GenKind::Map => {
            let a = random_complex(&cfg, rng);
            let b = random_complex(&cfg, rng);
            to_json(&random_map(&a, &b, rng))
        }
        GenKind::Arrow => to_json(&random_arrow(&cfg, rng)),
        GenKind::Square => {
            let f = random_arrow(&cfg, rng);
            let g = random_arrow(&cfg, rng);
            to_json(&random_square(&f, &g, rng))
        }
        GenKind::Dga => to_json(&random_smith_ideal(&cfg, rng).ideal.alg),
        GenKind::Smith => to_json(&random_smith_ideal(&cfg, rng).ideal),
        GenKind::Module => {
            let s = random_smith_ideal(&cfg, rng);
            to_json(&random_smith_module(&s, &cfg, rng))
        }
    })
}

fn run(cmd: Cmd) -> Result<(), Fail> {
    match cmd {
        Cmd::Validate { kind, file } => {
            validate(kind, &file)?;
            println!("ok");
        }
        Cmd::Homology { file } => {
            let c: ChainComplex = load(&file)?;
            c.validate()?;
            print!("{}", homology_table(&[("C", &c)]));
        }
        Cmd::Quotient { file, out } => {
            let s: SmithIdeal = load(&file)?;
            let q = quotient_dga(&s)?;
            std::fs::write(&out, to_json(&q.dst)).map_err(|e| Fail::Usage(format!("{}: {e}", out.display())))?;
            print!(
                "{}",
                homology_table(&[("R", &s.alg.carrier), ("I", &s.ideal.carrier), ("R/I", &q.dst.carrier)])
            );
        }
        Cmd::Tensor { f, g } => print!("{}", to_json(&tensor_arrow(&load_arrow(&f)?, &load_arrow(&g)?))),
        Cmd::PushoutProduct { f, g } => {
            print!(
                "{}",
                to_json(&pushout_product(&load_arrow(&f)?, &load_arrow(&g)?).arrow)
            )
        }
        Cmd::Check {
            suites,
            seed,
            trials,
            shape,
            trial,
            counterexamples,
            json,
        } => {
            let names: Vec<&str> = if suites == "all" {
                smith_arrow::cliio::suites::NAMES.to_vec()
            } else {
                suites.split(',').map(str::trim).collect()
            };
            let mut cfg = SuiteConfig::new(&names, seed, trials, shape.p);
            cfg.window = shape.window;
            cfg.max_dim = shape.max_dim;
            cfg.only_trial = trial;
            let report = run_suites(&cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                for s in &report.suites {
                    println!(
                        "{:<20} {} {}/{} trials, {}/{} fixed cases, {} ms",
                        s.name,
                        if s.ok() { "PASS" } else { "FAIL" },
                        s.passed,
                        s.trials,
                        s.fixed_passed,
                        s.fixed_passed + s.fixed_failed,
                        s.millis
                    );
                    for f in &s.failures {
                        let at = match (f.trial, &f.case) {
                            (Some(t), _) => format!("replay with --seed {} --trial {t}", f.seed),
                            (None, Some(c)) => format!("case {c}"),
                            _ => String::new(),
                        };
                        println!("  {}: {at}", f.reason);
                    }
                }
            }
            if !report.ok() {
                let paths = persist_counterexamples(&report, &counterexamples)
                    .map_err(|e| Fail::Usage(format!("{}: {e}", counterexamples.display())))?;
                for p in paths {
                    eprintln!("counterexample written to {}", p.display());
                }
                return Err(Fail::Invalid("property failures".into()));
            }
        }
        Cmd::Gen { kind, seed, shape } => print!("{}", gen(kind, seed, &shape)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Invalid(msg)) => {
            println!("invalid: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
