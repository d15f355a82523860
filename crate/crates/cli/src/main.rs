use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use formscheme::codesets::{dual_dist, is_t_design, Distribution, FormSet};
use formscheme::construct::{build_family, puncture, AnySet, Family};
use formscheme::forms::{Form, FormKind, FormsFile, QuadForm};
use formscheme::rmcodes::{designed_distance, dist_enum_brute, dist_enum_theory, ClassicalCode, WeightEnumerator};
use formscheme::scheme::{eig_tables, oracle_tables, EigTable, Which};
use formscheme::suites::{self, Limits, Suite};
use formscheme::{Error, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "formscheme", version, about = "Association schemes of quadratic and symmetric bilinear forms")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap; falls back to FORMSCHEME_CAP, then the built-in default.
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue tables, optionally checked against character sums.
    Eig(EigArgs),
    /// Build a maximal code from one of the trace families.
    Construct(ConstructArgs),
    /// Inner distribution of a set of forms, and optionally its dual.
    Innerdist(InnerdistArgs),
    /// Distance enumerator of the classical code C(Y).
    Code(CodeArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "lower")]
enum WhichArg {
    #[value(alias = "P")]
    P,
    #[value(alias = "Q")]
    Q,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Quad,
    Sym,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EigArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value = "both")]
    which: WhichArg,
    #[arg(long, value_enum, default_value = "quad")]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Compare every entry with its character-sum oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    m: usize,
    /// Minimum rank distance; 2δ for elliptic codes.
    #[arg(long)]
    d: usize,
    #[arg(long)]
    q: u64,
    /// Restrict to the hyperplane spanned by the first m−1 coordinates.
    #[arg(long)]
    puncture: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InnerdistArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    dual: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumMode {
    Theory,
    Brute,
    Both,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "enum", value_enum, default_value = "both")]
    mode: EnumMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 4)]
    max_q: u64,
    #[arg(long, default_value_t = 4)]
    max_m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Assertion(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Assertion(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(s) | Failure::Assertion(s) | Failure::Cap(s) => s,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::EigenConsistencyViolation(_)
            | Error::OrthogonalityViolation(_)
            | Error::NonIntegralSum(_)
            | Error::ClassificationInconsistency(_)
            | Error::NegativeDual(_) => Failure::Assertion(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let cap = resolve_cap(cli.cap)?;
    match cli.command {
        Command::Eig(a) => cmd_eig(a, cap),
        Command::Construct(a) => cmd_construct(a, cap),
        Command::Innerdist(a) => cmd_innerdist(a, cap),
        Command::Code(a) => cmd_code(a, cap),
        Command::Verify(a) => cmd_verify(a, cap, cli.seed),
    }
}

fn resolve_cap(flag: Option<u64>) -> Result<u64, Failure> {
    let cap = match flag {
        Some(c) => c,
        None => match std::env::var("FORMSCHEME_CAP") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("FORMSCHEME_CAP={v:?} is not a positive integer")))?,
            Err(_) => DEFAULT_CAP,
        },
    };
    if cap == 0 {
        return Err(Failure::Usage("the enumeration cap must be positive".into()));
    }
    Ok(cap)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn read_set(path: &PathBuf) -> Result<AnySet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let file: FormsFile = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(AnySet::from_file(&file)?)
}

/// Formula-only commands stay within q^{m(m+1)/2} <= 2^60.
fn check_formula_range(m: usize, q: u64) -> Outcome {
    let bits = (m * (m + 1) / 2) as f64 * (q as f64).log2();
    if m == 0 || q < 2 || bits > 60.0 {
        return Err(Failure::Usage(format!("(m, q) = ({m}, {q}) is outside the supported range")));
    }
    Ok(())
}

fn cmd_eig(a: EigArgs, cap: u64) -> Outcome {
    check_formula_range(a.m, a.q)?;
    let tables = eig_tables(a.m, a.q)?;
    let schemes: &[FormKind] = match a.scheme {
        SchemeArg::Quad => &[FormKind::Quadratic],
        SchemeArg::Sym => &[FormKind::Symmetric],
        SchemeArg::Both => &[FormKind::Quadratic, FormKind::Symmetric],
    };
    let whichs: &[Which] = match a.which {
        WhichArg::P => &[Which::P],
        WhichArg::Q => &[Which::Q],
        WhichArg::Both => &[Which::P, Which::Q],
    };
    let chosen: Vec<&EigTable> = schemes
        .iter()
        .flat_map(|&s| whichs.iter().map(move |&w| (s, w)))
        .map(|(s, w)| tables.get(s, w))
        .collect();
    let text = match a.format {
        Format::Json if chosen.len() == 1 => to_json(chosen[0])?,
        Format::Json => to_json(&chosen)?,
        Format::Csv if chosen.len() == 1 => chosen[0].to_csv(),
        Format::Csv => chosen
            .iter()
            .map(|t| format!("# {} {:?} m={} q={}\n{}", t.scheme, t.which, t.m, t.q, t.to_csv()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&a.out, &text)?;
    if a.oracle {
        run_oracle(&tables.quad_p, &tables.quad_q, a.m, a.q, cap)?;
    }
    Ok(())
}

/// The symmetric tables are the quadratic ones relabelled, so checking the
/// quadratic pair covers all four.
fn run_oracle(p: &EigTable, q_tab: &EigTable, m: usize, q: u64, cap: u64) -> Outcome {
    let o = oracle_tables(m, q, cap)?;
    let mut failed = 0;
    for (a, ia) in p.index.iter().enumerate() {
        for (b, ib) in p.index.iter().enumerate() {
            for (name, formula, oracle) in [("Q", &q_tab.rows[a][b], &o.q[a][b]), ("P", &p.rows[a][b], &o.p[a][b])] {
                let ok = formula == oracle;
                failed += usize::from(!ok);
                eprintln!(
                    "{name}_{ia}({ib}) formula={formula} oracle={oracle} {}",
                    if ok { "PASS" } else { "FAIL" }
                );
            }
        }
    }
    if failed > 0 {
        eprintln!("oracle: FAIL ({failed} entries)");
        return Err(Failure::Assertion(format!("{failed} table entries disagree with the character sums")));
    }
    eprintln!("oracle: PASS");
    Ok(())
}

fn cmd_construct(a: ConstructArgs, cap: u64) -> Outcome {
    let mut set = build_family(a.family, a.m, a.d, a.q, cap)?;
    if a.puncture {
        set = match set {
            AnySet::Quad(x) => AnySet::Quad(report_puncture(puncture(&x, None)?)),
            AnySet::Sym(x) => AnySet::Sym(report_puncture(puncture(&x, None)?)),
        };
    }
    eprintln!("{} forms", set.len());
    emit(&a.out, &to_json(&set.to_file())?)
}

fn report_puncture<F: Form>(p: formscheme::construct::Punctured<F>) -> FormSet<F> {
    if p.dropped > 0 {
        eprintln!("puncturing merged {} members", p.dropped);
    }
    p.set
}

#[derive(Serialize)]
struct InnerdistReport {
    kind: FormKind,
    m: usize,
    q: u64,
    size: usize,
    additive: bool,
    min_distance: Option<usize>,
    inner: Distribution,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<Distribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    design_strength: Option<usize>,
}

fn innerdist_of<F: Form>(x: &FormSet<F>, dual: bool, cap: u64) -> Result<InnerdistReport, Failure> {
    let inner = x.inner_dist(cap)?;
    let min_distance = (x.len() > 1).then(|| x.min_distance(cap)).transpose()?;
    let (dual, design_strength) = if dual {
        let d = dual_dist(F::KIND, x.q(), &inner)?;
        let t = (0..=x.m()).take_while(|&t| is_t_design(&d, t)).last().unwrap_or(0);
        (Some(d), Some(t))
    } else {
        (None, None)
    };
    Ok(InnerdistReport {
        kind: F::KIND,
        m: x.m(),
        q: x.q(),
        size: x.len(),
        additive: x.is_additive(),
        min_distance,
        inner,
        dual,
        design_strength,
    })
}

fn cmd_innerdist(a: InnerdistArgs, cap: u64) -> Outcome {
    let report = match read_set(&a.input)? {
        AnySet::Quad(x) => innerdist_of(&x, a.dual, cap)?,
        AnySet::Sym(x) => innerdist_of(&x, a.dual, cap)?,
    };
    for (i, v) in report.inner.iter() {
        if !v.is_zero() {
            eprintln!("a_{i} = {v}");
        }
    }
    if let Some(t) = report.design_strength {
        eprintln!("design strength {t}");
    }
    emit(&a.out, &to_json(&report)?)
}

#[derive(Serialize)]
struct CodeReport {
    length: usize,
    size: String,
    additive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    theory: Option<WeightEnumerator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<WeightEnumerator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equal: Option<bool>,
    min_distance: Option<usize>,
    designed_distance: Option<u64>,
    meets_designed: Option<bool>,
}

fn cmd_code(a: CodeArgs, cap: u64) -> Outcome {
    let y: FormSet<QuadForm> = match read_set(&a.input)? {
        AnySet::Quad(x) => x,
        AnySet::Sym(_) => return Err(Failure::Usage("C(Y) needs a set of quadratic forms".into())),
    };
    let code = ClassicalCode::new(y.clone())?;
    let theory = matches!(a.mode, EnumMode::Theory | EnumMode::Both)
        .then(|| dist_enum_theory(&y, cap))
        .transpose()?;
    let brute = matches!(a.mode, EnumMode::Brute | EnumMode::Both)
        .then(|| dist_enum_brute(&code, cap))
        .transpose()?;
    let equal = match (&theory, &brute) {
        (Some(t), Some(b)) => Some(t == b),
        _ => None,
    };
    let min_distance = brute.as_ref().or(theory.as_ref()).and_then(WeightEnumerator::min_weight);
    let delta = if y.len() > 1 { y.min_distance(cap)? / 2 } else { 0 };
    let designed = designed_distance(y.m(), y.q(), delta).ok();
    let report = CodeReport {
        length: code.length(),
        size: code.size().to_string(),
        additive: code.is_additive(),
        theory,
        brute,
        equal,
        min_distance,
        designed_distance: designed,
        meets_designed: designed.zip(min_distance).map(|(d, m)| d == m as u64),
    };
    eprintln!("length {}, size {}", report.length, report.size);
    if let Some(d) = min_distance {
        eprintln!("minimum distance {d}");
    }
    emit(&a.out, &to_json(&report)?)?;
    match equal {
        Some(true) => eprintln!("theory = brute: EQUAL"),
        Some(false) => {
            eprintln!("theory = brute: DIFFER");
            return Err(Failure::Assertion("theoretical and census enumerators differ".into()));
        }
        None => {}
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, cap: u64, seed: u64) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    if a.max_q < 2 || a.max_m == 0 {
        return Err(Failure::Usage("--max-q must be at least 2 and --max-m positive".into()));
    }
    let report = suites::run(suite, Limits { max_q: a.max_q, max_m: a.max_m, cap, seed });
    for c in &report.checks {
        eprintln!(
            "{} {}/{} ({} ms){}",
            if c.pass { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            c.millis,
            c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
        );
    }
    emit(&a.out, &to_json(&report)?)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("suite {} failed", report.suite)))
    }
}
