//! `pqvol` command-line front end.
//!
//! Exit codes: 0 success, 1 a must-hold identity failed, 2 parse or
//! hypothesis-range error, 3 size cap exceeded.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pqvol::draconian::{count_draconian_with, enumerate_draconian_with, Engine, EnumOptions};
use pqvol::ehrhart::{ehrhart_nvol_with_cap, DEFAULT_EHRHART_CAP};
use pqvol::exception_sets::DEFAULT_VERIFY_CAP;
use pqvol::family::{Family, FamilyKind, FormulaValue};
use pqvol::graph::{doubling, Edge, Graph};
use pqvol::recurrence::{
    recurrence_record, search_triple_recurrence, verify_partition, GraphSource, PartitionReport,
    SearchRecord,
};
use pqvol::verify::{verify_family, IntRange, Ledger};
use pqvol::Error;

const DEFAULT_COUNT_CAP: usize = 14;
const DEFAULT_SEARCH_CAP: usize = 7;

#[derive(Parser)]
#[command(
    name = "pqvol",
    version,
    about = "Normalized volumes of type-PQ adjacency polytopes"
)]
struct Cli {
    /// Worker threads for enumeration (1 = single-threaded). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Largest vertex count accepted; the default depends on the command.
    #[arg(long, global = true)]
    cap_n: Option<usize>,
    /// Record wall-clock time in reports (otherwise `elapsed_ms` is null).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSourceArgs {
    /// Edge-list file: vertex count on the first line, then one `u v` per line.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// complete:N, matching-triangles:N,M, path-deleted:N,M or cycle-deleted:N,M.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Count draconian sequences (the normalized volume).
    Count {
        #[command(flatten)]
        source: GraphSourceArgs,
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Print the draconian sequences, one per line.
    Enumerate {
        #[command(flatten)]
        source: GraphSourceArgs,
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Evaluate the closed form for a family member.
    Formula {
        #[arg(long)]
        family: String,
    },
    /// Enumeration against closed forms and exception sets over ranges.
    Verify {
        /// complete, matching-triangles, path-deleted or cycle-deleted.
        #[arg(long)]
        family: String,
        /// N as a value or range `a..b`.
        #[arg(long)]
        n: String,
        /// M as a value or range `a..b` / `a..` (defaults to every admissible M).
        #[arg(long, default_value = "0..")]
        m: String,
    },
    /// Normalized volume from lattice-point counts of dilates.
    Ehrhart {
        #[command(flatten)]
        source: GraphSourceArgs,
    },
    /// Counts before and after attaching a triangle to one edge.
    Recurrence {
        #[command(flatten)]
        source: GraphSourceArgs,
        /// Edge as `u,v`.
        #[arg(long)]
        edge: String,
    },
    /// Tripling check over every connected graph up to isomorphism (JSON lines).
    Search {
        #[arg(long)]
        n_max: usize,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    MustHold(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap(_) => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn check_cap(n: usize, cap: usize) -> Outcome {
    if n > cap {
        return Err(Failure::Cap(format!(
            "input exceeds size cap: {n} vertices, cap is {cap} (raise with --cap-n)"
        )));
    }
    Ok(())
}

fn load_graph(source: &GraphSourceArgs) -> Result<Graph, Failure> {
    if let Some(path) = &source.graph {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Graph::parse_text(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())));
    }
    let spec = source.family.as_deref().expect("clap requires a source");
    Ok(spec.parse::<Family>()?.graph()?)
}

fn parse_engine(s: &str) -> Result<Engine, Failure> {
    s.parse().map_err(Failure::from)
}

fn parse_edge(s: &str) -> Result<Edge, Failure> {
    let bad = || Failure::Usage(format!("bad edge {s:?} (expected u,v)"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok(Edge::new(a, b)?)
}

struct Out {
    table: bool,
    w: BufWriter<io::Stdout>,
}

impl Out {
    fn json<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.w, value)?;
        writeln!(self.w)
    }
}

#[derive(Serialize)]
struct FormulaReport {
    family: String,
    formula: FormulaValue,
}

#[derive(Serialize)]
struct EhrhartReport {
    graph: String,
    dimension: usize,
    counts: Vec<u64>,
    nvol: u64,
}

#[derive(Serialize)]
struct RecurrenceReport {
    graph: String,
    edge: [usize; 2],
    base: u64,
    extended: u64,
    ratio: String,
    triples: bool,
    hypotheses_hold: bool,
    class: pqvol::recurrence::RecurrenceClass,
    partition: PartitionReport,
}

fn ratio(num: u64, den: u64) -> String {
    if den == 0 {
        return "undefined".into();
    }
    let (mut a, mut b) = (num, den);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if den / a == 1 {
        format!("{}", num / a)
    } else {
        format!("{}/{}", num / a, den / a)
    }
}

fn cmd_count(cli: &Cli, out: &mut Out, source: &GraphSourceArgs, engine: &str) -> Outcome {
    let engine = parse_engine(engine)?;
    let g = load_graph(source)?;
    check_cap(g.n(), cli.cap_n.unwrap_or(DEFAULT_COUNT_CAP))?;
    let mut report = count_draconian_with(
        &g,
        EnumOptions {
            engine,
            jobs: cli.jobs,
        },
    );
    if !cli.timing {
        report.elapsed_ms = None;
    }
    if out.table {
        writeln!(out.w, "graph\tmethod\tcount\tnotes")?;
        writeln!(
            out.w,
            "{}\t{}\t{}\t{}",
            report.graph,
            report.method,
            report.count,
            report.notes.join("; ")
        )?;
        if let Some(ms) = report.elapsed_ms {
            writeln!(out.w, "elapsed_ms\t{ms}")?;
        }
    } else {
        out.json(&report)?;
    }
    Ok(())
}

fn cmd_enumerate(cli: &Cli, out: &mut Out, source: &GraphSourceArgs, engine: &str) -> Outcome {
    let engine = parse_engine(engine)?;
    let g = load_graph(source)?;
    check_cap(g.n(), cli.cap_n.unwrap_or(DEFAULT_COUNT_CAP))?;
    let all = enumerate_draconian_with(
        &doubling(&g),
        EnumOptions {
            engine,
            jobs: cli.jobs,
        },
    );
    for c in all {
        if out.table {
            writeln!(out.w, "{c}")?;
        } else {
            out.json(&c)?;
        }
    }
    Ok(())
}

fn cmd_formula(out: &mut Out, spec: &str) -> Outcome {
    let family: Family = spec.parse()?;
    let formula = family.formula()?;
    if out.table {
        match &formula {
            FormulaValue::Single { value } => writeln!(out.w, "{value}")?,
            FormulaValue::Path(p) => {
                writeln!(out.w, "as_printed\t{}", p.as_printed)?;
                writeln!(out.w, "grouped\t{}", p.grouped)?;
            }
        }
    } else {
        out.json(&FormulaReport {
            family: family.to_string(),
            formula,
        })?;
    }
    Ok(())
}

fn write_ledger_table(out: &mut Out, ledger: &Ledger) -> io::Result<()> {
    writeln!(
        out.w,
        "family\tN\tM\tenumeration\tformula\tmatching\tidentity\tmust_hold\tflags"
    )?;
    for row in &ledger.rows {
        let identity = match (&row.identity, &row.partition) {
            (Some(r), _) => {
                if r.identity_holds {
                    "holds"
                } else {
                    "FAILS"
                }
            }
            (None, Some(p)) => {
                if p.partition_holds {
                    "partition holds"
                } else {
                    "partition FAILS"
                }
            }
            (None, None) => "-",
        };
        let matching = if row.matching_readings.is_empty() {
            "none".to_string()
        } else {
            row.matching_readings.join(",")
        };
        writeln!(
            out.w,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            row.family,
            row.n,
            row.m,
            row.enumeration,
            row.formula,
            matching,
            identity,
            if row.must_hold_ok { "ok" } else { "FAILED" },
            row.flags.join("; ")
        )?;
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, out: &mut Out, family: &str, n: &str, m: &str) -> Outcome {
    let kind: FamilyKind = family.parse()?;
    let ns: IntRange = n.parse()?;
    let ms: IntRange = m.parse()?;
    let cap = cli.cap_n.unwrap_or(DEFAULT_VERIFY_CAP);
    let ledger = verify_family(kind, ns, ms, cap)?;
    if out.table {
        write_ledger_table(out, &ledger)?;
    } else {
        out.json(&ledger)?;
    }
    if !ledger.must_hold_ok {
        return Err(Failure::MustHold("a must-hold identity failed".into()));
    }
    Ok(())
}

fn cmd_ehrhart(cli: &Cli, out: &mut Out, source: &GraphSourceArgs) -> Outcome {
    let g = load_graph(source)?;
    let table = ehrhart_nvol_with_cap(&g, cli.cap_n.unwrap_or(DEFAULT_EHRHART_CAP))?;
    let report = EhrhartReport {
        graph: g.descriptor(),
        dimension: table.dimension,
        counts: table.counts,
        nvol: table.nvol,
    };
    if out.table {
        writeln!(out.w, "graph\t{}", report.graph)?;
        writeln!(out.w, "dimension\t{}", report.dimension)?;
        for (t, l) in report.counts.iter().enumerate() {
            writeln!(out.w, "L({t})\t{l}")?;
        }
        writeln!(out.w, "nvol\t{}", report.nvol)?;
    } else {
        out.json(&report)?;
    }
    Ok(())
}

fn cmd_recurrence(cli: &Cli, out: &mut Out, source: &GraphSourceArgs, edge: &str) -> Outcome {
    let g = load_graph(source)?;
    let e = parse_edge(edge)?;
    if !g.has_edge(e.u(), e.v()) {
        return Err(Error::NotAnEdge(e).into());
    }
    check_cap(g.n() + 1, cli.cap_n.unwrap_or(DEFAULT_COUNT_CAP))?;
    let record = recurrence_record(&g, e)?;
    let partition = verify_partition(&g, e, false)?;
    let report = RecurrenceReport {
        graph: g.descriptor(),
        edge: record.edge,
        base: record.counts.base,
        extended: record.counts.extended,
        ratio: ratio(record.counts.extended, record.counts.base),
        triples: record.triples,
        hypotheses_hold: record.hypotheses_hold,
        class: record.class,
        partition,
    };
    if out.table {
        writeln!(out.w, "graph\t{}", report.graph)?;
        writeln!(out.w, "edge\t{},{}", report.edge[0], report.edge[1])?;
        writeln!(out.w, "base\t{}", report.base)?;
        writeln!(out.w, "extended\t{}", report.extended)?;
        writeln!(out.w, "ratio\t{}", report.ratio)?;
        writeln!(out.w, "triples\t{}", report.triples)?;
        writeln!(out.w, "hypotheses_hold\t{}", report.hypotheses_hold)?;
        writeln!(
            out.w,
            "partition_holds\t{}",
            report.partition.partition_holds
        )?;
    } else {
        out.json(&report)?;
    }
    Ok(())
}

fn write_record_row(out: &mut Out, r: &SearchRecord) -> io::Result<()> {
    writeln!(
        out.w,
        "{}\t{}\t{},{}\t{}\t{}\t{}\t{}",
        r.graph_encoding,
        r.n,
        r.edge[0],
        r.edge[1],
        r.counts.base,
        r.counts.extended,
        r.hypotheses_hold,
        r.triples
    )
}

fn cmd_search(cli: &Cli, out: &mut Out, n_max: usize) -> Outcome {
    // The canonical form behind the exhaustive stream stops at 11 vertices.
    check_cap(n_max, cli.cap_n.unwrap_or(DEFAULT_SEARCH_CAP).min(11))?;
    let records = search_triple_recurrence(n_max, GraphSource::Exhaustive, cli.jobs);
    if out.table {
        writeln!(
            out.w,
            "graph6\tn\tedge\tbase\textended\thypotheses_hold\ttriples"
        )?;
    }
    for r in &records {
        if out.table {
            write_record_row(out, r)?;
        } else {
            out.json(r)?;
        }
    }
    let forbidden = records.iter().filter(|r| r.class.is_forbidden()).count();
    if forbidden > 0 {
        return Err(Failure::MustHold(format!(
            "{forbidden} records satisfy the hypotheses without tripling"
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let mut out = Out {
        table: cli.table,
        w: BufWriter::new(io::stdout()),
    };
    let result = match &cli.command {
        Command::Count { source, engine } => cmd_count(cli, &mut out, source, engine),
        Command::Enumerate { source, engine } => cmd_enumerate(cli, &mut out, source, engine),
        Command::Formula { family } => cmd_formula(&mut out, family),
        Command::Verify { family, n, m } => cmd_verify(cli, &mut out, family, n, m),
        Command::Ehrhart { source } => cmd_ehrhart(cli, &mut out, source),
        Command::Recurrence { source, edge } => cmd_recurrence(cli, &mut out, source, edge),
        Command::Search { n_max } => cmd_search(cli, &mut out, *n_max),
    };
    out.w.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::MustHold(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
