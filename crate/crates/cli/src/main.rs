//! `linrel` command-line tool.
//!
//! Relation-valued commands print relation files; report commands print JSON.
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.

use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linrel::io::{fmt_f64, fmt_matrix, RelationFile};
use linrel::verify::{self, Generated, RelationFlavor, SuiteConfig};
use linrel::{LinearRelation, Tolerance, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "linrel", version, about = "Linear relations and their Moore-Penrose inverses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of the graph and its four parts, plus classification flags.
    Info { file: PathBuf },
    /// Moore-Penrose inverse with its matrix, norm and reduced minimal modulus.
    Mp { file: PathBuf },
    /// Adjoint relation.
    Adjoint { file: PathBuf },
    /// Inverse relation.
    Inverse { file: PathBuf },
    /// Product TS (apply S, then T).
    Compose { t: PathBuf, s: PathBuf },
    /// Direct sum T1 ⊕ T2.
    Dsum { first: PathBuf, second: PathBuf },
    /// Absolute value |T| = (T*T)^{1/2}.
    Absval { file: PathBuf },
    /// Square root of a nonnegative self-adjoint relation.
    Sqrt { file: PathBuf },
    /// Point spectrum through the kernel pencil.
    Spectrum { file: PathBuf },
    /// Whether λ lies in the resolvent set.
    Resolvent {
        file: PathBuf,
        /// `re,im`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_lambda)]
        lambda: C64,
    },
    /// Randomized verification suite.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Inclusive dimension range `a..b`.
        #[arg(long, default_value = "1..5", value_parser = parse_dims)]
        dims: (usize, usize),
        /// Restrict to the named check; repeatable.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Rank tolerance `rel,abs` used by every relation in the run.
        #[arg(long, value_parser = parse_tol)]
        tol: Option<Tolerance>,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the registered checks and exit.
        #[arg(long)]
        list: bool,
    },
    /// Random relation of a given flavor.
    Random {
        #[arg(long)]
        dim_h: usize,
        #[arg(long)]
        dim_k: usize,
        /// Graph dimension (exact for `generic`, a size hint otherwise).
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "generic")]
        flavor: RelationFlavor,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Checks(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => f.write_str(m),
            Failure::Checks(n) => write!(f, "{n} check trial(s) failed"),
        }
    }
}

impl From<linrel::Error> for Failure {
    fn from(e: linrel::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_lambda(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').ok_or("expected `re,im`")?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("bad number `{}`", t.trim()))
    };
    Ok(C64::new(num(re)?, num(im)?))
}

fn parse_tol(s: &str) -> Result<Tolerance, String> {
    let (rel, abs) = s.split_once(',').ok_or("expected `rel,abs`")?;
    let rel = rel.trim().parse().map_err(|_| format!("bad rel `{rel}`"))?;
    let abs = abs.trim().parse().map_err(|_| format!("bad abs `{abs}`"))?;
    Tolerance::new(rel, abs).map_err(|e| e.to_string())
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected `a..b`")?;
    let a = a.parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let b = b.parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// A relation together with where it came from, for diagnostics.
struct Loaded {
    label: String,
    name: Option<String>,
    relation: LinearRelation,
}

impl Loaded {
    fn describe(&self) -> String {
        format!("{} ({} -> {})", self.label, self.relation.dim_h(), self.relation.dim_k())
    }
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let label = path.display().to_string();
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{label}: {e}")))?
    };
    let file = RelationFile::parse(&text).map_err(|e| Failure::Input(format!("{label}: {e}")))?;
    let relation = file.to_relation().map_err(|e| Failure::Input(format!("{label}: {e}")))?;
    Ok(Loaded { label, name: file.name, relation })
}

fn emit(t: &LinearRelation, name: Option<String>) {
    print!("{}", RelationFile::from_relation(t, name.as_deref()).to_text());
}

fn derived(base: &Option<String>, suffix: &str) -> Option<String> {
    base.as_ref().map(|n| format!("{n}.{suffix}"))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn unary(file: &Path, suffix: &str, op: impl Fn(&LinearRelation) -> linrel::Result<LinearRelation>) -> Outcome {
    let t = load(file)?;
    let r = op(&t.relation).map_err(|e| Failure::Input(format!("{}: {e}", t.describe())))?;
    emit(&r, derived(&t.name, suffix));
    Ok(())
}

fn info(file: &Path) -> Outcome {
    let t = load(file)?;
    let r = &t.relation;
    let p = r.parts();
    let tol = r.tolerance();
    print_json(&json!({
        "format": "linrel-info/1",
        "name": t.name,
        "dim_h": r.dim_h(),
        "dim_k": r.dim_k(),
        "graph_dim": r.graph_dim(),
        "tolerance": { "rel": tol.rel, "abs": tol.abs },
        "parts": {
            "domain": p.domain.dim(),
            "range": p.range.dim(),
            "kernel": p.kernel.dim(),
            "multivalued": p.multivalued.dim(),
        },
        "classification": r.classify(),
    }));
    Ok(())
}

fn mp(file: &Path) -> Outcome {
    let t = load(file)?;
    let (dagger, view) = t.relation.moore_penrose()?;
    let summary = t.relation.pseudoinverse_summary()?;
    let mut out = RelationFile::from_relation(&dagger, derived(&t.name, "mp").as_deref());
    for row in fmt_matrix(&view.matrix) {
        out.annotate("operator_row", &row);
    }
    out.annotate("norm", &fmt_f64(summary.norm));
    let gamma = if summary.gamma.is_infinite() { "inf".to_owned() } else { fmt_f64(summary.gamma) };
    out.annotate("gamma", &gamma);
    print!("{}", out.to_text());
    Ok(())
}

fn compose(t: &Path, s: &Path) -> Outcome {
    let (t, s) = (load(t)?, load(s)?);
    let r = t.relation.compose(&s.relation).map_err(|e| {
        Failure::Input(format!("compose T = {} with S = {}: {e}", t.describe(), s.describe()))
    })?;
    let name = match (&t.name, &s.name) {
        (Some(a), Some(b)) => Some(format!("{a}.{b}")),
        _ => None,
    };
    emit(&r, name);
    Ok(())
}

fn dsum(first: &Path, second: &Path) -> Outcome {
    let (a, b) = (load(first)?, load(second)?);
    let ta = a.relation.tolerance();
    let tb = b.relation.tolerance();
    if ta != tb {
        return Err(Failure::Input(format!(
            "dsum {} and {}: tolerances differ ({:e}, {:e}) vs ({:e}, {:e})",
            a.describe(),
            b.describe(),
            ta.rel,
            ta.abs,
            tb.rel,
            tb.abs
        )));
    }
    let name = match (&a.name, &b.name) {
        (Some(x), Some(y)) => Some(format!("{x}+{y}")),
        _ => None,
    };
    emit(&a.relation.direct_sum(&b.relation), name);
    Ok(())
}

fn spectrum(file: &Path) -> Outcome {
    let t = load(file)?;
    let report = t
        .relation
        .point_spectrum()
        .map_err(|e| Failure::Input(format!("{}: {e}", t.describe())))?;
    let mut v = json!({ "format": "linrel-spectrum/1", "name": t.name });
    merge(&mut v, serde_json::to_value(&report).expect("report serializes"));
    print_json(&v);
    Ok(())
}

fn resolvent(file: &Path, lambda: C64) -> Outcome {
    let t = load(file)?;
    let verdict = t
        .relation
        .is_in_resolvent(lambda)
        .map_err(|e| Failure::Input(format!("{}: {e}", t.describe())))?;
    let mut v = json!({ "format": "linrel-resolvent/1", "name": t.name });
    merge(&mut v, serde_json::to_value(&verdict).expect("verdict serializes"));
    print_json(&v);
    Ok(())
}

fn merge(into: &mut serde_json::Value, from: serde_json::Value) {
    if let (Some(a), serde_json::Value::Object(b)) = (into.as_object_mut(), from) {
        a.extend(b);
    }
}

fn run_verify(config: SuiteConfig, out: Option<PathBuf>, list: bool) -> Outcome {
    if list {
        for c in verify::REGISTRY {
            println!("{:<18} {}", c.name, c.statement);
        }
        return Ok(());
    }
    let report = verify::run_suite(&config)?;
    let text = report.to_json();
    println!("{text}");
    if let Some(path) = out {
        fs::write(&path, format!("{text}\n"))
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    match report.total_failed() {
        0 => Ok(()),
        n => Err(Failure::Checks(n)),
    }
}

fn random(dim_h: usize, dim_k: usize, rank: usize, flavor: RelationFlavor, seed: u64) -> Outcome {
    if flavor.is_pair() {
        return Err(Failure::Input(format!("flavor {flavor} produces a pair, not a single relation")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = verify::random_relation(&mut rng, dim_h, dim_k, rank, flavor, Default::default())?;
    let Generated::Single(t) = g else {
        unreachable!("single flavors produce single relations");
    };
    emit(&t, Some(format!("{flavor}-{seed}")));
    Ok(())
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Info { file } => info(&file),
        Command::Mp { file } => mp(&file),
        Command::Adjoint { file } => unary(&file, "adj", |t| Ok(t.adjoint())),
        Command::Inverse { file } => unary(&file, "inv", |t| Ok(t.inverse())),
        Command::Compose { t, s } => compose(&t, &s),
        Command::Dsum { first, second } => dsum(&first, &second),
        Command::Absval { file } => unary(&file, "abs", LinearRelation::absolute_value),
        Command::Sqrt { file } => unary(&file, "sqrt", LinearRelation::sqrt_nonneg),
        Command::Spectrum { file } => spectrum(&file),
        Command::Resolvent { file, lambda } => resolvent(&file, lambda),
        Command::Verify { trials, seed, dims, checks, tol, out, list } => run_verify(
            SuiteConfig { trials, seed, dims, checks, tol: tol.unwrap_or_default() },
            out,
            list,
        ),
        Command::Random { dim_h, dim_k, rank, flavor, seed } => random(dim_h, dim_k, rank, flavor, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f @ Failure::Checks(_)) => {
            eprintln!("linrel: {f}");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("linrel: error: {f}");
            ExitCode::from(2)
        }
    }
}
