//! The `linfix` command line.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 iteration cap or walk
//! budget exceeded, 3 a convergence bound was violated.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::bounds::{
    analyze, applicable_bounds, default_cap, AnalyzeOptions, BoundReport, SemiringFacts,
};
use crate::engine::{
    matrix_power, matrix_power_sum, naive_eval_general, naive_eval_linear, IterationTrace, Mode,
};
use crate::frontend::{
    classify_linearity, ground, ground_linear, parse_program, EdbInstance, Grounded, Program,
};
use crate::generators::{
    blocked_system, gen_cycle_lowerbound, gen_random_digraph, Family, InstanceSpec,
};
use crate::io::{matrix_file_semiring, read_matrix_file, write_matrix_file, write_trace_csv};
use crate::semiring::{
    check_axioms, longest_chain, semiring_stability, AnySemiring, Semiring, SemiringError,
    SemiringId,
};
use crate::walk::{walk_sum_exact, walk_sum_upto, WalkError, DEFAULT_BUDGET};
use crate::with_semiring;

#[derive(Debug, Parser)]
#[command(
    name = "linfix",
    version,
    about = "Ground, evaluate and analyze linear Datalog programs over semirings"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Semiring id: bool, trop, trop_p:<p>, trop_p:<p>:<K>, capped:<L>.
    #[arg(long, global = true)]
    pub semiring: Option<String>,
    /// Maximum number of iteration steps checked.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest walk count a single oracle query may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Iterate x ← x ⊕ f(x) instead of x ← f(x).
    #[arg(long, global = true)]
    pub inflationary: bool,
    /// Keep atoms that can never become nonzero.
    #[arg(long, global = true)]
    pub no_prune: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Omit the timestamp line from table output.
    #[arg(long, global = true, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = clap::ArgAction::Set)]
    pub reproducible: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a program and list the fixpoint.
    Run {
        program: PathBuf,
        /// Tab-separated facts: predicate, arguments, value.
        #[arg(long)]
        facts: Option<PathBuf>,
    },
    /// Ground a linear program and print the matrix file.
    Ground {
        program: PathBuf,
        #[arg(long)]
        facts: Option<PathBuf>,
    },
    /// Measure stability indices and check them against the convergence bounds.
    Analyze {
        /// Matrix files.
        files: Vec<PathBuf>,
        /// Analyze a program instead of matrix files.
        #[arg(long, conflicts_with = "files")]
        program: Option<PathBuf>,
        #[arg(long, requires = "program")]
        facts: Option<PathBuf>,
        /// Process the files in parallel.
        #[arg(long)]
        batch: bool,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Stability claimed for a symbolic semiring (reported as unverified).
        #[arg(long)]
        claim_p: Option<usize>,
        /// Carrier size claimed for a symbolic semiring (reported as unverified).
        #[arg(long)]
        claim_l: Option<usize>,
    },
    /// Compare brute-force walk sums with matrix powers for h = 0..=H.
    Oracle {
        matrix: PathBuf,
        i: usize,
        j: usize,
        h: usize,
    },
    /// Check the semiring laws and report stability and order facts.
    Semiring {
        id: String,
        /// Sampled triples for carriers too large to enumerate.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Generate an instance and print its matrix file.
    Gen {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Cap of the capped semiring (cycle family).
        #[arg(long = "L", default_value_t = 4)]
        l: u32,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        wmin: u32,
        #[arg(long, default_value_t = 9)]
        wmax: u32,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|e: crate::generators::GenError| e.to_string())
}

/// An error with its exit code.
struct Exit(i32, anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Exit {
    fn from(e: E) -> Self {
        Exit(1, e.into())
    }
}

/// Runs the command line and returns the exit code; output goes to `out`
/// unless `--out` redirects it, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Exit(code, e)) => {
            let _ = writeln!(err, "error: {e:#}");
            code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Exit> {
    let g = &cli.global;
    match &cli.command {
        Command::Run { program, facts } => cmd_run(g, program, facts.as_deref(), out),
        Command::Ground { program, facts } => cmd_ground(g, program, facts.as_deref(), out),
        Command::Analyze {
            files,
            program,
            facts,
            batch,
            workers,
            claim_p,
            claim_l,
        } => cmd_analyze(
            g,
            AnalyzeInput {
                files,
                program: program.as_deref(),
                facts: facts.as_deref(),
                batch: *batch,
                workers: *workers,
                claims: (*claim_p, *claim_l),
            },
            out,
        ),
        Command::Oracle { matrix, i, j, h } => cmd_oracle(g, matrix, *i, *j, *h, out),
        Command::Semiring { id, samples } => cmd_semiring(g, id, *samples, out),
        Command::Gen {
            family,
            n,
            l,
            density,
            wmin,
            wmax,
        } => {
            let semiring = match (family, &g.semiring) {
                (Family::Cycle, _) => SemiringId::Capped { cap: *l },
                (_, Some(id)) => parse_id(id)?,
                (_, None) => SemiringId::Bool,
            };
            let spec = InstanceSpec {
                family: *family,
                n: *n,
                l: *l,
                density: *density,
                wmin: *wmin,
                wmax: *wmax,
                semiring,
                seed: g.seed,
            };
            cmd_gen(g, &spec, out)
        }
    }
}

fn parse_id(text: &str) -> Result<SemiringId> {
    text.parse().map_err(|e: SemiringError| anyhow!(e))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Writes to `--out` when given, otherwise to `out`.
fn emit(g: &Global, out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match &g.out {
        Some(path) => {
            fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
        }
        None => out.write_all(bytes).context("cannot write output"),
    }
}

fn stamp(g: &Global, buf: &mut Vec<u8>) {
    if !g.reproducible {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let _ = writeln!(buf, "# generated at unix time {secs}");
    }
}

fn mode(g: &Global) -> Mode {
    if g.inflationary {
        Mode::Inflationary
    } else {
        Mode::Plain
    }
}

struct Loaded {
    program: Program,
    semiring: AnySemiring,
}

/// Parses a program and resolves its semiring: the flag wins over the directive.
fn load_program(g: &Global, path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let program = parse_program(&text).with_context(|| format!("in {}", path.display()))?;
    let id = match (&g.semiring, program.semiring) {
        (Some(flag), _) => parse_id(flag)?,
        (None, Some(id)) => id,
        (None, None) => bail!("no semiring: pass --semiring or add an `@semiring` directive"),
    };
    Ok(Loaded {
        program,
        semiring: id.instantiate(),
    })
}

fn load_facts<S: Semiring>(
    s: &S,
    program: &Program,
    facts: Option<&Path>,
) -> Result<EdbInstance<S::Elem>> {
    let mut db = EdbInstance::from_program(s, program)?;
    if let Some(path) = facts {
        let file =
            fs::File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
        db.load_tsv(s, file)
            .with_context(|| format!("in {}", path.display()))?;
    }
    Ok(db)
}

fn run_cap(g: &Global, facts: &SemiringFacts, n: usize) -> usize {
    g.cap
        .unwrap_or_else(|| default_cap(&applicable_bounds(n, true, facts)))
        .max(1)
}

fn cmd_run(
    g: &Global,
    path: &Path,
    facts: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let loaded = load_program(g, path)?;
    Ok(with_semiring!(&loaded.semiring, |s| run_typed(
        g,
        s,
        &loaded.program,
        facts,
        out
    ))?)
}

fn run_typed<S: Semiring>(
    g: &Global,
    s: &S,
    program: &Program,
    facts: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let db = load_facts(s, program, facts)?;
    let grounded = ground(s, program, &db, !g.no_prune)?;
    let sfacts = SemiringFacts::compute(s);
    let cap = run_cap(g, &sfacts, grounded.atoms().len());
    let trace = match &grounded {
        Grounded::Linear(sys) => naive_eval_linear(s, sys, cap, mode(g)),
        Grounded::Polynomial(sys) => naive_eval_general(s, sys, cap, mode(g)),
    };
    let atoms = grounded.atoms();
    let mut buf = Vec::new();
    match g.format {
        Format::Csv => write_trace_csv(s, atoms, &trace, &mut buf)?,
        Format::Json => {
            let values: Vec<_> = atoms
                .iter()
                .zip(trace.last())
                .map(|(a, v)| json!({"atom": a, "value": s.format(v)}))
                .collect();
            let doc = json!({
                "semiring": s.id().to_string(),
                "n": atoms.len(),
                "index": trace.index,
                "power_sum_index": trace.power_sum_index(),
                "capped": trace.capped,
                "steps": trace.steps,
                "fixpoint": values,
            });
            writeln!(buf, "{doc}")?;
        }
        Format::Table => {
            stamp(g, &mut buf);
            write_listing(s, atoms, &trace, cap, &mut buf)?;
        }
    }
    // In table mode `--out` receives the trace CSV; otherwise it receives the chosen format.
    match (&g.out, g.format) {
        (Some(path), Format::Table) => {
            out.write_all(&buf)?;
            let mut csv = Vec::new();
            write_trace_csv(s, atoms, &trace, &mut csv)?;
            fs::write(path, csv).with_context(|| format!("cannot write {}", path.display()))?;
        }
        _ => emit(g, out, &buf)?,
    }
    Ok(if trace.capped { 2 } else { 0 })
}

fn write_listing<S: Semiring>(
    s: &S,
    atoms: &[String],
    trace: &IterationTrace<S::Elem>,
    cap: usize,
    buf: &mut Vec<u8>,
) -> Result<()> {
    let width = atoms.iter().map(String::len).max().unwrap_or(4).max(4);
    writeln!(buf, "{:width$}  value", "atom")?;
    for (a, v) in atoms.iter().zip(trace.last()) {
        writeln!(buf, "{a:width$}  {}", s.format(v))?;
    }
    match trace.index {
        Some(q) => writeln!(
            buf,
            "stability index {q} (power-sum index {}), {} atoms",
            q.saturating_sub(1),
            atoms.len()
        )?,
        None => writeln!(buf, "no fixpoint within {cap} steps; last state shown")?,
    }
    Ok(())
}

fn cmd_ground(
    g: &Global,
    path: &Path,
    facts: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let loaded = load_program(g, path)?;
    with_semiring!(&loaded.semiring, |s| {
        let db = load_facts(s, &loaded.program, facts)?;
        let sys = ground_linear(s, &loaded.program, &db, !g.no_prune)?;
        let mut buf = Vec::new();
        write_matrix_file(s, &sys, None, &mut buf)?;
        emit(g, out, &buf)?;
    });
    Ok(0)
}

struct AnalyzeInput<'a> {
    files: &'a [PathBuf],
    program: Option<&'a Path>,
    facts: Option<&'a Path>,
    batch: bool,
    workers: usize,
    claims: (Option<usize>, Option<usize>),
}

fn analyze_options(g: &Global, instance: String) -> AnalyzeOptions {
    AnalyzeOptions {
        instance,
        cap: g.cap,
        mode: mode(g),
        no_prune: g.no_prune,
        skip_matrix: false,
    }
}

fn analyze_program(g: &Global, input: &AnalyzeInput, path: &Path) -> Result<BoundReport> {
    let loaded = load_program(g, path)?;
    with_semiring!(&loaded.semiring, |s| {
        let db = load_facts(s, &loaded.program, input.facts)?;
        if !classify_linearity(&loaded.program).is_linear() {
            bail!("analysis needs a linear program");
        }
        let sys = ground_linear(s, &loaded.program, &db, false)?;
        let facts = SemiringFacts::compute(s).with_claims(input.claims.0, input.claims.1);
        Ok(analyze(
            s,
            &sys,
            &facts,
            &analyze_options(g, path.display().to_string()),
        ))
    })
}

fn analyze_file(g: &Global, input: &AnalyzeInput, path: &Path) -> Result<BoundReport> {
    let text = read(path)?;
    let id = matrix_file_semiring(&text).with_context(|| format!("in {}", path.display()))?;
    if let Some(flag) = &g.semiring {
        if parse_id(flag)? != id {
            bail!("{} is over `{id}`, not `{flag}`", path.display());
        }
    }
    with_semiring!(&id.instantiate(), |s| {
        let file = read_matrix_file(s, &text).with_context(|| format!("in {}", path.display()))?;
        let facts = SemiringFacts::compute(s).with_claims(input.claims.0, input.claims.1);
        Ok(analyze(
            s,
            &file.system,
            &facts,
            &analyze_options(g, path.display().to_string()),
        ))
    })
}

fn cmd_analyze(g: &Global, input: AnalyzeInput, out: &mut dyn Write) -> Result<i32, Exit> {
    let reports: Vec<BoundReport> = match input.program {
        Some(path) => vec![analyze_program(g, &input, path)?],
        None if input.files.is_empty() => {
            return Err(anyhow!("give matrix files or --program").into())
        }
        None if input.batch => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(input.workers)
                .build()?;
            pool.install(|| {
                input
                    .files
                    .par_iter()
                    .map(|f| analyze_file(g, &input, f))
                    .collect::<Result<Vec<_>>>()
            })?
        }
        None => input
            .files
            .iter()
            .map(|f| analyze_file(g, &input, f))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut buf = Vec::new();
    match g.format {
        Format::Json => {
            for r in &reports {
                writeln!(buf, "{}", r.to_json_line())?;
            }
        }
        Format::Csv => crate::bounds::write_csv_summary(&mut buf, &reports)?,
        Format::Table => {
            stamp(g, &mut buf);
            for r in &reports {
                write_report(r, &mut buf)?;
            }
        }
    }
    emit(g, out, &buf)?;
    Ok(if reports.iter().any(BoundReport::violated) {
        3
    } else {
        0
    })
}

fn write_report(r: &BoundReport, buf: &mut Vec<u8>) -> std::io::Result<()> {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    writeln!(buf, "instance {}", r.instance)?;
    writeln!(
        buf,
        "  semiring {}  n {} (raw {})  p {}  L {}  chain {}{}",
        r.semiring,
        r.n,
        r.raw_n,
        opt(r.p),
        opt(r.l),
        opt(r.chain),
        if r.claimed {
            "  (p/L claimed, unverified)"
        } else {
            ""
        }
    )?;
    writeln!(
        buf,
        "  measured {}  trace index {}  matrix index {}  cap {}",
        opt(r.measured),
        opt(r.trace_index),
        opt(r.matrix_index),
        r.cap
    )?;
    for (name, b) in &r.bounds {
        let status = if !b.enforced {
            "not checked"
        } else {
            "checked"
        };
        writeln!(buf, "  {name:18} {:>12}  {status}", b.value.to_string())?;
    }
    if r.violations.is_empty() {
        writeln!(buf, "  violations: none")?;
    } else {
        for v in &r.violations {
            writeln!(buf, "  VIOLATION {v}")?;
        }
    }
    Ok(())
}

fn cmd_oracle(
    g: &Global,
    path: &Path,
    i: usize,
    j: usize,
    h: usize,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let text = read(path)?;
    let id = matrix_file_semiring(&text)?;
    with_semiring!(&id.instantiate(), |s| {
        let sys = read_matrix_file(s, &text)?.system;
        let n = sys.n();
        if i >= n || j >= n {
            return Err(anyhow!("vertices ({i}, {j}) outside 0..{n}").into());
        }
        let mut rows = Vec::new();
        for hh in 0..=h {
            let exact = walk_sum_exact(s, &sys.a, i, j, hh, g.budget);
            let upto = walk_sum_upto(s, &sys.a, i, j, hh, g.budget);
            let (exact, upto) = match (exact, upto) {
                (Ok(e), Ok(u)) => (e, u),
                (Err(e @ WalkError::EnumerationTooLarge { .. }), _)
                | (_, Err(e @ WalkError::EnumerationTooLarge { .. })) => {
                    return Err(Exit(2, anyhow!(e)));
                }
                (Err(e), _) | (_, Err(e)) => return Err(anyhow!(e).into()),
            };
            let power = matrix_power(s, &sys.a, hh);
            let sum = matrix_power_sum(s, &sys.a, hh).value;
            #[allow(clippy::clone_on_copy)]
            rows.push((
                hh,
                exact,
                power.get(i, j).clone(),
                upto,
                sum.get(i, j).clone(),
            ));
        }
        let mut buf = Vec::new();
        let verdict = |a: bool| if a { "equal" } else { "UNEQUAL" };
        match g.format {
            Format::Json => {
                for (hh, e, p, u, m) in &rows {
                    let doc = json!({
                        "h": hh,
                        "walk_sum_exact": s.format(e),
                        "power": s.format(p),
                        "exact_equal": e == p,
                        "walk_sum_upto": s.format(u),
                        "power_sum": s.format(m),
                        "upto_equal": u == m,
                    });
                    writeln!(buf, "{doc}")?;
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut buf);
                w.write_record([
                    "h",
                    "walk_sum_exact",
                    "power",
                    "exact_equal",
                    "walk_sum_upto",
                    "power_sum",
                    "upto_equal",
                ])?;
                for (hh, e, p, u, m) in &rows {
                    w.write_record([
                        hh.to_string(),
                        s.format(e),
                        s.format(p),
                        (e == p).to_string(),
                        s.format(u),
                        s.format(m),
                        (u == m).to_string(),
                    ])?;
                }
                w.flush()?;
            }
            Format::Table => {
                stamp(g, &mut buf);
                writeln!(buf, "walks {i} -> {j} in {}", path.display())?;
                writeln!(
                    buf,
                    "{:>3}  {:>12}  {:>12}  {:8}  {:>12}  {:>12}  {:8}",
                    "h", "exact walks", "A^h", "", "walks <= h", "A^(h)", ""
                )?;
                for (hh, e, p, u, m) in &rows {
                    writeln!(
                        buf,
                        "{hh:>3}  {:>12}  {:>12}  {:8}  {:>12}  {:>12}  {:8}",
                        s.format(e),
                        s.format(p),
                        verdict(e == p),
                        s.format(u),
                        s.format(m),
                        verdict(u == m)
                    )?;
                }
            }
        }
        emit(g, out, &buf)?;
        Ok(0)
    })
}

fn cmd_semiring(g: &Global, id: &str, samples: usize, out: &mut dyn Write) -> Result<i32, Exit> {
    let any = parse_id(id)?.instantiate();
    with_semiring!(&any, |s| {
        let report = check_axioms(s, samples, g.seed);
        let stability = semiring_stability(s, 4 * s.elements().map_or(0, |e| e.len()) + 16);
        let (p, witness) = match &stability {
            Ok(st) => (st.index, Some(s.format(&st.witness))),
            Err(_) => (None, None),
        };
        let analytic = s.analytic_stability();
        let chain = longest_chain(s);
        let ordered = match &chain {
            Ok(_) => Some(true),
            Err(SemiringError::NotNaturallyOrdered(_)) => Some(false),
            Err(_) => None,
        };
        let mut buf = Vec::new();
        match g.format {
            Format::Json | Format::Csv => {
                let doc = json!({
                    "semiring": s.id().to_string(),
                    "axioms": report,
                    "stability": p,
                    "witness": witness,
                    "analytic_stability": analytic.map(|(q, why)| json!({"p": q, "reason": why})),
                    "chain": chain.as_ref().ok(),
                    "naturally_ordered": ordered,
                });
                writeln!(buf, "{doc}")?;
            }
            Format::Table => {
                stamp(g, &mut buf);
                let mode = match report.mode {
                    crate::semiring::CheckMode::Exhaustive => "exhaustive".to_string(),
                    crate::semiring::CheckMode::Sampled => {
                        format!("sampled, {samples} triples, seed {}", g.seed)
                    }
                };
                writeln!(buf, "semiring {}  axioms ({mode})", s.id())?;
                for c in &report.checks {
                    let status = if c.passed {
                        "pass".to_string()
                    } else {
                        "FAIL".to_string()
                    };
                    write!(buf, "  {:28} {status}", c.axiom.to_string())?;
                    match &c.counterexample {
                        Some(cx) => writeln!(buf, "  ({cx})"),
                        None => writeln!(buf),
                    }?;
                }
                match (&stability, analytic) {
                    (Ok(st), _) => match st.index {
                        Some(q) => writeln!(
                            buf,
                            "stability p = {q} (witness {})",
                            witness.clone().unwrap_or_default()
                        ),
                        None => writeln!(
                            buf,
                            "stability: not stable within the search cap (witness {})",
                            witness.clone().unwrap_or_default()
                        ),
                    },
                    (Err(_), Some((q, why))) => {
                        writeln!(buf, "stability: {q}-stable (analytic: {why})")
                    }
                    (Err(_), None) => writeln!(buf, "stability: unknown for a symbolic carrier"),
                }?;
                match (&chain, ordered) {
                    (Ok(c), _) => writeln!(buf, "naturally ordered, longest chain {c}"),
                    (Err(_), Some(false)) => writeln!(buf, "not naturally ordered"),
                    _ => writeln!(buf, "natural order: not enumerable"),
                }?;
            }
        }
        emit(g, out, &buf)?;
        Ok(if report.all_passed() { 0 } else { 1 })
    })
}

fn cmd_gen(g: &Global, spec: &InstanceSpec, out: &mut dyn Write) -> Result<i32, Exit> {
    let spec_line = spec.to_string();
    let mut buf = Vec::new();
    match spec.family {
        Family::Cycle => {
            let (s, sys) = gen_cycle_lowerbound(spec.n, spec.l)?;
            write_matrix_file(&s, &sys, Some(&spec_line), &mut buf)?;
        }
        Family::Blocked => with_semiring!(&spec.semiring.instantiate(), |s| {
            let sys = blocked_system(s, spec.n)?;
            write_matrix_file(s, &sys, Some(&spec_line), &mut buf)?;
        }),
        Family::Random => with_semiring!(&spec.semiring.instantiate(), |s| {
            let graph =
                gen_random_digraph(s, spec.n, spec.density, (spec.wmin, spec.wmax), spec.seed)?;
            write_matrix_file(s, &graph.system, Some(&spec_line), &mut buf)?;
        }),
    }
    emit(g, out, &buf)?;
    Ok(0)
}
