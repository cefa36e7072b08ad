mod format;
mod report;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use relbetti::koszul::{validate_koszul_coresolution, KoszulEngine};
use relbetti::poset::enumerate_intervals;
use relbetti::repmod::IntervalFamily;
use relbetti::resolve::{betti, default_max_len, BettiTable};
use relbetti::tda::{interval_replacement, is_interval_decomposable};
use relbetti::{BoundQuiver, Error, Field, Interval, ModRef};

use format::{parse_field, serialize, ModuleFile};
use report::*;

#[derive(Parser)]
#[command(name = "relbetti", version, about = "Relative interval Betti numbers of persistence modules")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient field, `Q` or `GF <p>`; overrides the file.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Route {
    Resolve,
    Koszul,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// List the intervals of a quiver.
    Intervals {
        #[arg(long, conflicts_with = "file")]
        ladder: Option<usize>,
        file: Option<PathBuf>,
    },
    /// Interval Betti table of a module.
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        route: Route,
        #[arg(long)]
        max_len: Option<usize>,
        /// Also print the Betti row at this interval.
        #[arg(long)]
        interval: Option<String>,
    },
    /// Koszul coresolution of an interval module, and the Koszul complex of a module.
    Koszul {
        #[arg(long)]
        interval: String,
        #[arg(long, conflicts_with = "file")]
        ladder: Option<usize>,
        file: Option<PathBuf>,
        #[arg(long)]
        max_len: Option<usize>,
        /// Re-verify the coresolution.
        #[arg(long)]
        check: bool,
    },
    /// Decide interval decomposability.
    Decomposable { file: PathBuf },
    /// Interval replacement on a commutative ladder.
    Replace {
        file: PathBuf,
        /// Also re-verify every Koszul coresolution used.
        #[arg(long)]
        check: bool,
    },
    /// Print a module file in normal form.
    Normalize { file: PathBuf },
}

/// Failure classes, mapped to exit codes 1, 2 and 3.
enum Failure {
    Usage(String),
    Validation(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let msg = e.to_string();
        match e {
            Error::Inconsistent(_) | Error::SpanSearchInconclusive { .. } => Failure::Internal(msg),
            Error::InvalidQuiver(_)
            | Error::InvalidPoset(_)
            | Error::InvalidModule(_)
            | Error::NonCommuting { .. }
            | Error::InvalidMorphism(_)
            | Error::NotUpSet { .. }
            | Error::NotDownSet { .. } => Failure::Validation(msg),
            _ => Failure::Usage(msg),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Loaded {
    file: ModuleFile,
    module: ModRef,
}

fn load(path: &Path, field: Option<Field>) -> Outcome<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let file = ModuleFile::parse(&text, field).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let module = file.module()?;
    Ok(Loaded { file, module })
}

fn ladder_quiver(n: usize) -> Outcome<Arc<BoundQuiver>> {
    Ok(Arc::new(BoundQuiver::commutative_ladder(n)?))
}

/// Reads an interval as a ladder vector (`111/001`) or a comma-separated list of vertex labels.
fn parse_interval(q: &BoundQuiver, text: &str) -> Outcome<Interval> {
    if q.ladder_size().is_some() && text.contains('/') {
        return Ok(q.parse_ladder_interval(text)?);
    }
    let set = text
        .split(',')
        .map(|l| q.vertex_index(l.trim()).ok_or_else(|| Failure::Usage(format!("unknown vertex {:?}", l.trim()))))
        .collect::<Outcome<Vec<_>>>()?;
    Ok(q.interval(&set)?)
}

fn render(q: &BoundQuiver, i: &Interval) -> String {
    q.render_interval(i)
}

fn multiplicities(q: &BoundQuiver, ms: impl IntoIterator<Item = (Interval, usize)>) -> Vec<Multiplicity> {
    ms.into_iter().map(|(i, m)| Multiplicity { interval: render(q, &i), multiplicity: m }).collect()
}

fn cmd_intervals(ladder: Option<usize>, file: Option<PathBuf>, field: Option<Field>) -> Outcome<IntervalsReport> {
    let q = match (ladder, file) {
        (Some(n), _) => ladder_quiver(n)?,
        (None, Some(path)) => load(&path, field)?.file.quiver,
        (None, None) => return Err(Failure::Usage("give --ladder N or a module file".into())),
    };
    let intervals: Vec<IntervalEntry> = enumerate_intervals(&q)
        .iter()
        .map(|i| IntervalEntry {
            interval: render(&q, i),
            vertices: i.vertices().iter().map(|&v| q.vertex_label(v).to_string()).collect(),
            shape: q.ladder_ranges(i.vertices()).map(|s| s.to_string()),
        })
        .collect();
    Ok(IntervalsReport { count: intervals.len(), intervals })
}

fn betti_entries(q: &BoundQuiver, t: &BettiTable) -> Vec<BettiEntry> {
    t.entries()
        .iter()
        .map(|((d, i), &m)| BettiEntry { degree: *d, interval: render(q, i), multiplicity: m })
        .collect()
}

fn cmd_betti(path: &Path, route: Route, max_len: Option<usize>, interval: Option<String>, field: Option<Field>) -> Outcome<BettiReport> {
    let Loaded { module: m, .. } = load(path, field)?;
    let q = m.quiver().clone();
    let fam = Arc::new(IntervalFamily::all(q.clone(), m.field()));
    let max_len = max_len.unwrap_or_else(|| default_max_len(&q));
    let via_resolve = || betti(&m, &fam, max_len);
    let via_koszul = || KoszulEngine::with_max_len(fam.clone(), max_len).betti_table(&m);
    let table = match route {
        Route::Resolve => via_resolve()?,
        Route::Koszul => via_koszul()?,
        Route::Both => {
            let (r, k) = (via_resolve()?, via_koszul()?);
            if r != k {
                return Err(Failure::Internal(format!("Betti routes disagree:\nresolve:\n{}koszul:\n{}", r.render(&q), k.render(&q))));
            }
            r
        }
    };
    let query = interval
        .map(|text| -> Outcome<BettiQuery> {
            let i = parse_interval(&q, &text)?;
            let len = table.length().max(1);
            Ok(BettiQuery { interval: render(&q, &i), betti: table.row(&i, len) })
        })
        .transpose()?;
    let route = format!("{route:?}").to_lowercase();
    Ok(BettiReport { route, entries: betti_entries(&q, &table), query })
}

fn cmd_koszul(
    interval: &str,
    ladder: Option<usize>,
    file: Option<PathBuf>,
    max_len: Option<usize>,
    check: bool,
    field: Option<Field>,
) -> Outcome<KoszulReport> {
    let (q, field, module) = match (ladder, file) {
        (Some(n), _) => (ladder_quiver(n)?, field.unwrap_or(Field::Rationals), None),
        (None, Some(path)) => {
            let l = load(&path, field)?;
            let m = (!l.module.is_zero()).then_some(l.module);
            (l.file.quiver, l.file.field, m)
        }
        (None, None) => return Err(Failure::Usage("give --ladder N or a module file".into())),
    };
    let i = parse_interval(&q, interval)?;
    let fam = Arc::new(IntervalFamily::all(q.clone(), field));
    let engine = KoszulEngine::with_max_len(fam.clone(), max_len.unwrap_or_else(|| default_max_len(&q)));
    let idx = fam.index_of(&i).ok_or_else(|| Failure::Internal("interval missing from the family".into()))?;
    let y = engine.coresolution(idx)?;
    let degrees = (0..y.len()).map(|d| multiplicities(&q, y.multiset(d))).collect();
    let complex = module
        .map(|m| -> Outcome<_> {
            let c = engine.complex(idx, &m)?;
            Ok(KoszulComplexSummary { dims: c.dims().to_vec(), homology: c.homology() })
        })
        .transpose()?;
    let check = check.then(|| validate_koszul_coresolution(y, &fam).is_ok());
    if check == Some(false) {
        return Err(Failure::Internal(format!("Koszul coresolution of {} failed validation", render(&q, &i))));
    }
    Ok(KoszulReport { interval: render(&q, &i), degrees, complex, check })
}

fn cmd_decomposable(path: &Path, field: Option<Field>) -> Outcome<DecompositionReport> {
    let Loaded { module: m, .. } = load(path, field)?;
    let q = m.quiver().clone();
    let engine = KoszulEngine::new(Arc::new(IntervalFamily::all(q.clone(), m.field())));
    let d = is_interval_decomposable(&engine, &m)?;
    let summands = if d.decomposable { multiplicities(&q, d.multiplicities) } else { Vec::new() };
    Ok(DecompositionReport { decomposable: d.decomposable, summands })
}

fn cmd_replace(path: &Path, check: bool, field: Option<Field>) -> Outcome<ReplacementReport> {
    let Loaded { module: m, .. } = load(path, field)?;
    let q = m.quiver().clone();
    if q.ladder_size().is_none() {
        return Err(Failure::Usage("replace needs a commutative ladder".into()));
    }
    let fam = Arc::new(IntervalFamily::all(q.clone(), m.field()));
    let engine = KoszulEngine::new(fam.clone());
    let r = interval_replacement(&engine, &m)?;
    if check {
        for i in 0..fam.len() {
            validate_koszul_coresolution(engine.coresolution(i)?, &fam)?;
        }
    }
    let entry = |(i, &d): (&Interval, &i64)| ReplacementEntry { interval: render(&q, i), delta: d, compressed: r.c(i) };
    let all: Vec<ReplacementEntry> = r.delta.iter().map(entry).collect();
    let nonzero = r.delta.iter().filter(|(_, &d)| d != 0).map(entry).collect();
    Ok(ReplacementReport { nonzero, all })
}

fn emit<R: Report>(json: bool, r: Outcome<R>) -> Outcome<()> {
    let r = r?;
    let text = if json {
        let mut t = serde_json::to_string_pretty(&r).map_err(|e| Failure::Internal(e.to_string()))?;
        t.push('\n');
        t
    } else {
        r.text()
    };
    // A closed pipe (for example `| head`) is not an error.
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Usage(format!("writing output: {e}"))),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Outcome<()> {
    let (json, field) = (cli.json, cli.field);
    match cli.command {
        Command::Intervals { ladder, file } => emit(json, cmd_intervals(ladder, file, field)),
        Command::Betti { file, route, max_len, interval } => emit(json, cmd_betti(&file, route, max_len, interval, field)),
        Command::Koszul { interval, ladder, file, max_len, check } => {
            emit(json, cmd_koszul(&interval, ladder, file, max_len, check, field))
        }
        Command::Decomposable { file } => emit(json, cmd_decomposable(&file, field)),
        Command::Replace { file, check } => emit(json, cmd_replace(&file, check, field)),
        Command::Normalize { file } => emit(json, load(&file, field).map(|l| NormalizedReport { module: serialize(&l.module) })),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
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
