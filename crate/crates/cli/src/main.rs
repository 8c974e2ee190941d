use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trifree::constructions::{assemble_general_witness, assemble_triangle_free_witness, WitnessReport};
use trifree::formulas::{
    f_gen, f_triangle, h_triangle, in_proven_domain, resolve_zd, EdgeValue, ExtremalValue, Status,
};
use trifree::io::{graph6_encode, read_graph, to_dot, to_json};
use trifree::oracle::{Oracle, DEFAULT_BUDGET};
use trifree::verify::verify_membership;
use trifree::{Error, Graph};

/// Largest enumeration budget the CLI accepts.
const CLI_CAP: usize = 16;

const CONJ: &str = " [conjectured]";

#[derive(Parser)]
#[command(name = "trifree", version, about = "Extremal triangle-free graphs with bounded degree and matching number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Use conjectured values of Z(d) and of the open-domain formula.
    #[arg(long, global = true)]
    assume_conjectures: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Enumeration budget in vertices (at most 16).
    #[arg(long, global = true, env = "EXTREMAL_BUDGET",
          value_parser = clap::value_parser!(u16).range(1..=CLI_CAP as i64))]
    budget_vertices: Option<u16>,
    /// Raise the default budget to the cap and run the extended checks.
    #[arg(long, global = true)]
    slow: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Graph6,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Extremal edge count for (d, m).
    Compute {
        #[arg(long, value_parser = param())]
        d: u64,
        #[arg(long, value_parser = param())]
        m: u64,
        /// Allow triangles.
        #[arg(long)]
        general: bool,
    },
    /// Build and self-check an extremal witness graph.
    Witness {
        #[arg(long, value_parser = param())]
        d: u64,
        #[arg(long, value_parser = param())]
        m: u64,
        #[arg(long)]
        general: bool,
        /// Write the graph here and the report to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a graph6 or JSON graph file ("-" for stdin) against (d, m).
    Verify {
        #[arg(long, value_parser = param())]
        d: u64,
        #[arg(long, value_parser = param())]
        m: u64,
        path: PathBuf,
    },
    /// Matrix of f, f_GEN and h for 1 <= d <= D, 1 <= m <= M.
    Table {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=100))]
        d: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=200))]
        m: u64,
    },
    /// Exhaustive check of a closed form, or of Z(d) with --zd.
    Oracle {
        #[arg(long, value_parser = param())]
        d: u64,
        #[arg(long, value_parser = param(), required_unless_present = "zd")]
        m: Option<u64>,
        #[arg(long, conflicts_with = "m")]
        zd: bool,
    },
}

fn param() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..=trifree::formulas::MAX_PARAMETER)
}

enum Failure {
    Usage(String),
    Semantic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::Graph6 { .. }
            | Error::Json(_)
            | Error::InvalidGraph(_)
            | Error::BudgetExceeded { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Semantic(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Compute { d, m, general } => compute(&mut out, &cli.common, d, m, general),
        Command::Witness { d, m, general, output } => {
            witness(&mut out, &cli.common, d, m, general, output)
        }
        Command::Verify { d, m, path } => verify(&mut out, &cli.common, d, m, &path),
        Command::Table { d, m } => table(&mut out, &cli.common, d, m),
        Command::Oracle { d, m, zd } => oracle(&mut out, &cli.common, d, m, zd),
    };
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Semantic(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn format_or(common: &Common, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage("this command does not support that --format".into()))
    }
}

fn marker(status: Status) -> &'static str {
    if status == Status::ConjecturedOptimal {
        CONJ
    } else {
        ""
    }
}

fn value_text(v: EdgeValue) -> String {
    match v {
        EdgeValue::Exact(x) => x.to_string(),
        EdgeValue::Range { lo, hi } => format!("{lo}..{hi}"),
    }
}

fn h_value(d: u64, m: u64) -> Option<u64> {
    in_proven_domain(d, m).then(|| h_triangle(d, m).ok()).flatten()
}

fn compute(out: &mut impl Write, common: &Common, d: u64, m: u64, general: bool) -> Outcome {
    let format = format_or(common, Format::Table, &[Format::Table, Format::Json])?;
    let gen = f_gen(d, m)?;
    if general {
        if format == Format::Json {
            writeln!(out, "{}", serde_json::to_string_pretty(&gen).expect("serialisable"))?;
        } else {
            writeln!(out, "f_GEN({d}, {m}) = {}", value_text(gen.value))?;
            writeln!(out, "status: {}", gen.status)?;
        }
        return Ok(true);
    }
    let v = f_triangle(d, m, common.assume_conjectures)?;
    let zd = (d >= 2).then(|| resolve_zd(d, common.assume_conjectures)).transpose()?;
    let h = h_value(d, m);
    if format == Format::Json {
        let mut j = serde_json::to_value(v).expect("serialisable");
        j["conjectured"] = json!(v.status == Status::ConjecturedOptimal);
        j["zd"] = zd.map_or(Value::Null, |z| serde_json::to_value(z).expect("serialisable"));
        j["f_gen"] = json!(gen.value);
        j["h"] = json!(h);
        writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serialisable"))?;
        return Ok(true);
    }
    match v.value {
        EdgeValue::Exact(x) => writeln!(out, "f({d}, {m}) = {x}{}", marker(v.status))?,
        EdgeValue::Range { lo, hi } => writeln!(out, "f({d}, {m}) in [{lo}, {hi}]")?,
    }
    writeln!(out, "status: {}{}", v.status, marker(v.status))?;
    writeln!(out, "case: {}", v.case)?;
    if let Some(z) = zd {
        writeln!(out, "{z}")?;
    }
    if let Some(dec) = v.decomposition {
        writeln!(out, "decomposition: m = {} * {} + {}", dec.k, dec.z, dec.r)?;
    }
    writeln!(out, "f_GEN({d}, {m}) = {}", value_text(gen.value))?;
    match h {
        Some(h) => writeln!(out, "h({d}, {m}) = {h}")?,
        None => writeln!(out, "h({d}, {m}): outside the proven domain")?,
    }
    Ok(true)
}

fn report_text(r: &WitnessReport) -> String {
    let conj = if r.status == trifree::constructions::WitnessStatus::ConjecturedOptimal { CONJ } else { "" };
    format!(
        "witness for (d, m) = ({}, {}): {} vertices, {} edges\nstatus: {}{conj}\ncase: {}\ngraph6: {}\n",
        r.d,
        r.m,
        r.graph.order(),
        r.claimed_edges,
        r.status,
        r.case,
        graph6_encode(&r.graph)
    )
}

fn render_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", to_json(g)),
        Format::Dot => to_dot(g),
        Format::Graph6 | Format::Table => format!("{}\n", graph6_encode(g)),
    }
}

fn witness(
    out: &mut impl Write,
    common: &Common,
    d: u64,
    m: u64,
    general: bool,
    output: Option<PathBuf>,
) -> Outcome {
    let format = format_or(common, Format::Table, &[Format::Table, Format::Json, Format::Graph6, Format::Dot])?;
    let report = if general {
        assemble_general_witness(d, m)?
    } else {
        assemble_triangle_free_witness(d, m, common.assume_conjectures)?
    };
    let check = verify_membership(&report.graph, d, m);
    let ok = if general {
        check.degree_ok && check.matching_ok
    } else {
        check.passes()
    };
    if !ok {
        return Err(Failure::Semantic(format!("witness failed self-check: {:?}", check.failures())));
    }
    if let Some(path) = output {
        fs::write(&path, render_graph(&report.graph, format))?;
        write!(out, "{}", report_text(&report))?;
        return Ok(true);
    }
    match format {
        Format::Table => write!(out, "{}", report_text(&report))?,
        Format::Json | Format::Graph6 | Format::Dot => {
            write!(out, "{}", render_graph(&report.graph, format))?;
            eprint!("{}", report_text(&report));
        }
    }
    Ok(true)
}

fn verify(out: &mut impl Write, common: &Common, d: u64, m: u64, path: &PathBuf) -> Outcome {
    let format = format_or(common, Format::Table, &[Format::Table, Format::Json])?;
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    let g = read_graph(&text)?;
    let r = verify_membership(&g, d, m);
    if format == Format::Json {
        let mut j = serde_json::to_value(&r).expect("serialisable");
        j["passes"] = json!(r.passes());
        j["failures"] = json!(r.failures());
        writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serialisable"))?;
    } else {
        let yn = |b: bool| if b { "ok" } else { "FAILED" };
        writeln!(out, "vertices: {}", r.vertices)?;
        writeln!(out, "edges: {}", r.edges)?;
        writeln!(out, "triangle-free: {}", yn(r.triangle_free))?;
        writeln!(out, "max degree {} <= {d}: {}", r.max_degree, yn(r.degree_ok))?;
        writeln!(out, "matching number {} <= {m}: {}", r.matching_number, yn(r.matching_ok))?;
        writeln!(out, "edges <= (d + 1) m: {}", yn(r.counting_bound_ok))?;
        if r.passes() {
            writeln!(out, "result: pass")?;
        } else {
            writeln!(out, "result: fail: {}", r.failures().join(", "))?;
        }
    }
    Ok(r.passes())
}

struct Cell {
    f: ExtremalValue,
    gen: u64,
    h: Option<u64>,
}

fn table(out: &mut impl Write, common: &Common, d_max: u64, m_max: u64) -> Outcome {
    let format = format_or(common, Format::Table, &[Format::Table, Format::Json])?;
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let mut row = Vec::new();
        for m in 1..=m_max {
            row.push(Cell {
                f: f_triangle(d, m, common.assume_conjectures)?,
                gen: f_gen(d, m)?.value.exact().expect("exact"),
                h: h_value(d, m),
            });
        }
        rows.push(row);
    }
    if format == Format::Json {
        let cells: Vec<Value> = rows
            .iter()
            .flatten()
            .map(|c| {
                json!({
                    "d": c.f.d,
                    "m": c.f.m,
                    "f": c.f.value,
                    "status": c.f.status,
                    "conjectured": c.f.status == Status::ConjecturedOptimal,
                    "f_gen": c.gen,
                    "h": c.h,
                })
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&cells).expect("serialisable"))?;
        return Ok(true);
    }
    let f_text = |c: &Cell| {
        let mark = match c.f.status {
            Status::ProvenOptimal => "",
            Status::ConjecturedOptimal => "*",
            Status::Unknown => "?",
        };
        format!("{}{mark}", value_text(c.f.value))
    };
    let gen_text = |c: &Cell| c.gen.to_string();
    let h_text = |c: &Cell| c.h.map_or("-".to_string(), |h| h.to_string());
    let sections: [(&str, &dyn Fn(&Cell) -> String); 3] =
        [("f", &f_text), ("f_GEN", &gen_text), ("h", &h_text)];
    for (i, (title, cell)) in sections.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        let texts: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let width = texts.iter().flatten().map(String::len).max().unwrap_or(1).max(m_max.to_string().len());
        write!(out, "{title:<6}")?;
        for m in 1..=m_max {
            write!(out, " {m:>width$}")?;
        }
        writeln!(out)?;
        for (d, row) in texts.iter().enumerate() {
            write!(out, "d={:<4}", d + 1)?;
            for t in row {
                write!(out, " {t:>width$}")?;
            }
            writeln!(out)?;
        }
    }
    writeln!(out)?;
    writeln!(out, "* {}; ? unknown, range over the bounds on Z(d); - outside the proven domain", CONJ.trim())?;
    Ok(true)
}

fn budget(common: &Common) -> usize {
    match common.budget_vertices {
        Some(b) => b as usize,
        None if common.slow => CLI_CAP,
        None => DEFAULT_BUDGET,
    }
}

fn oracle(out: &mut impl Write, common: &Common, d: u64, m: Option<u64>, zd: bool) -> Outcome {
    let format = format_or(common, Format::Table, &[Format::Table, Format::Json])?;
    let budget = budget(common);
    let o = Oracle::with_budget(budget)?;
    if zd {
        return oracle_zd(out, format, common.slow, &o, d);
    }
    let m = m.expect("clap requires --m without --zd");
    let rec = o.brute_force_f(d, m, budget)?;
    let f = f_triangle(d, m, false)?;
    let components = if d >= 2 && m >= d {
        match o.oracle_f_via_components(d, m) {
            Ok(v) => Some(v),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let exhaustive_value = if rec.exhaustive { Some(rec.best_edges) } else { components };
    let within = |x: u64| f.value.lo() <= x && x <= f.value.hi();
    let disagree = match (exhaustive_value, f.value.exact()) {
        (Some(x), _) => !within(x),
        (None, _) => rec.best_edges > f.value.hi(),
    };
    let proven = f.status == Status::ProvenOptimal;
    if format == Format::Json {
        let j = json!({
            "brute_force": rec,
            "components": components,
            "formula": f,
            "agrees": !disagree,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serialisable"))?;
    } else {
        let scope = if rec.exhaustive {
            "exhaustive".to_string()
        } else {
            format!("not exhaustive, {} vertices needed", trifree::oracle::vertex_bound(d, m))
        };
        writeln!(
            out,
            "brute force: {} edges on at most {} vertices ({scope})",
            rec.best_edges, rec.vertex_bound_used
        )?;
        writeln!(out, "witness: {}", graph6_encode(&rec.witness))?;
        if let Some(c) = components {
            writeln!(out, "component knapsack: {c} edges (exhaustive)")?;
        }
        writeln!(out, "formula: {} ({})", value_text(f.value), f.status)?;
        match exhaustive_value {
            Some(x) => writeln!(out, "oracle value: {x}")?,
            None => writeln!(out, "oracle value: at least {}", rec.best_edges)?,
        }
        writeln!(out, "{}", if disagree { "disagreement" } else { "agreement" })?;
    }
    Ok(!(disagree && proven))
}

fn oracle_zd(out: &mut impl Write, format: Format, slow: bool, o: &Oracle, d: u64) -> Outcome {
    let nu_max = ((o.budget() - 1) / 2) as u64;
    let found = o.search_zd(d, nu_max)?;
    let known = resolve_zd(d, false)?;
    let agrees = match found.exact() {
        Some(z) => known.lower() <= z && z <= known.upper(),
        None => found.lower() <= known.upper(),
    };
    let count = match (slow, found.exact()) {
        (true, Some(z)) => Some(o.count_witnesses(d, z)?),
        _ => None,
    };
    if format == Format::Json {
        let j = json!({
            "oracle": found,
            "closed_form": known,
            "witness_classes": count,
            "agrees": agrees,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serialisable"))?;
    } else {
        let kind = match found.exact() {
            Some(z) => format!("Exact({z})"),
            None => format!("not found with matching number <= {nu_max}"),
        };
        writeln!(out, "oracle: {kind}, {found}")?;
        writeln!(out, "closed form: {known}")?;
        if let Some(c) = count {
            writeln!(out, "witness classes at Z({d}): {c}")?;
        }
        writeln!(out, "{}", if agrees { "agreement" } else { "disagreement" })?;
    }
    Ok(agrees)
}
