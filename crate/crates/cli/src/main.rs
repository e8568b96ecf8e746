use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knotcoh::cells::config_homology;
use knotcoh::graphs::{graph_complex, GraphPredicate};
use knotcoh::local_systems::by_name;
use knotcoh::spectral::table::markdown_grid;
use knotcoh::spectral::{assemble, aux_e1, Consumed, Facts, Inputs, Mode};
use knotcoh::verify::{run_all, PLANAR_FOUR};
use knotcoh::GradedGroup;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

#[derive(Parser)]
#[command(name = "knotcoh", version, about = "Exact homology tables for spaces of complex knots")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Fact registry replacing the bundled one.
    #[arg(long, global = true)]
    facts: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write each document into this directory.
    #[arg(long, env = "KNOTCOH_OUT_DIR", global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pred {
    Connected,
    #[value(name = "2connected")]
    TwoConnected,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Table2Left,
    Table2Right,
    Table5,
    Figure1,
    Table1,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Computed,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of the complex of connected or two-connected graphs on `a` vertices.
    GraphComplex {
        #[arg(long)]
        a: usize,
        #[arg(long, value_enum)]
        pred: Pred,
        /// Permit a = 6, 7 (slow).
        #[arg(long)]
        allow_large: bool,
        /// Include the chain complex with generators in edge-list notation.
        #[arg(long)]
        export: bool,
    },
    /// Borel–Moore homology of B(R^k, n) with a named local system.
    ///
    /// Local systems: Z, sign, A2, A2hat, sign⊗A2 (the last three need n = 4).
    /// Cells of B(R^k, n) are nested compositions such as e([[1],[1,1]]).
    ConfigHomology {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rep: String,
        /// Include the cellular chain complex.
        #[arg(long)]
        export: bool,
    },
    /// Spectral-sequence pages and cohomology tables.
    Tables {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 4)]
        k: i64,
        #[arg(long, value_enum, default_value_t = ModeArg::Paper)]
        mode: ModeArg,
        /// Number of main-page columns to assemble.
        #[arg(long, default_value_t = 5)]
        rho_max: i64,
    },
    /// Runs every acceptance check.
    Verify,
    /// Differences between computed and published inputs, with the facts relied on.
    Report {
        #[arg(long, default_value_t = 4)]
        k: i64,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

fn invalid(message: impl ToString) -> Failure {
    Failure { code: 2, kind: "invalid-input", message: message.to_string() }
}

fn internal(message: impl ToString) -> Failure {
    Failure { code: 1, kind: "computation-failed", message: message.to_string() }
}

struct Document {
    name: String,
    json: Json,
    markdown: String,
    code: u8,
}

fn group_rows(h: &GradedGroup) -> String {
    let mut rows = vec![vec!["degree".to_string(), "group".to_string()]];
    rows.extend(h.iter().rev().map(|(d, g)| vec![d.to_string(), g.to_string()]));
    markdown_grid(&rows)
}

fn graph_doc(a: usize, pred: Pred, allow_large: bool, export: bool) -> Result<Document, Failure> {
    let (predicate, tag) = match pred {
        Pred::Connected => (GraphPredicate::Connected, "connected"),
        Pred::TwoConnected => (GraphPredicate::TwoConnected, "2connected"),
    };
    let gc = graph_complex(a, predicate, allow_large).map_err(invalid)?;
    let h = gc.complex.homology().map_err(internal)?;
    let mut json = json!({"a": a, "predicate": tag, "homology": h});
    if export {
        json["complex"] = serde_json::to_value(&gc.complex).map_err(internal)?;
    }
    Ok(Document { name: format!("graph-complex-{tag}-{a}"), markdown: group_rows(&h), json, code: 0 })
}

fn config_doc(k: usize, n: usize, rep: &str, export: bool) -> Result<Document, Failure> {
    let rep = by_name(rep, n).map_err(invalid)?;
    let complex = knotcoh::cells::config_complex(k, n, &rep).map_err(invalid)?;
    let h = complex.homology().map_err(internal)?;
    let json = if export {
        json!({"homology": h, "complex": complex})
    } else {
        serde_json::to_value(&h).map_err(internal)?
    };
    Ok(Document { name: format!("config-homology-{k}-{n}-{}", rep.name()), markdown: group_rows(&h), json, code: 0 })
}

fn table5() -> Result<Document, Failure> {
    let rows: Vec<(String, GradedGroup)> = PLANAR_FOUR
        .par_iter()
        .map(|(name, _)| {
            let rep = by_name(name, 4).map_err(internal)?;
            Ok((name.to_string(), config_homology(2, 4, &rep).map_err(internal)?))
        })
        .collect::<Result<_, Failure>>()?;
    let mut grid = vec![["coefficients", "8", "7", "6", "5"].map(String::from).to_vec()];
    let mut json = serde_json::Map::new();
    for (name, h) in &rows {
        let mut row = vec![name.clone()];
        let mut cells = serde_json::Map::new();
        for d in (5..=8).rev() {
            row.push(h.get(d).to_string());
            cells.insert(d.to_string(), serde_json::to_value(h.get(d)).map_err(internal)?);
        }
        grid.push(row);
        json.insert(name.clone(), Json::Object(cells));
    }
    Ok(Document { name: "table5".into(), json: Json::Object(json), markdown: markdown_grid(&grid), code: 0 })
}

fn tables_doc(which: Which, k: i64, mode: ModeArg, rho_max: i64, facts: &Facts) -> Result<Document, Failure> {
    let mode = match mode {
        ModeArg::Paper => Mode::Paper,
        ModeArg::Computed => Mode::Computed,
    };
    let inputs = || Inputs::compute().map_err(internal);
    match which {
        Which::Table5 => table5(),
        Which::Table2Left | Which::Table2Right => {
            let rho = if matches!(which, Which::Table2Left) { 2 } else { 3 };
            let t = aux_e1(rho, &inputs()?, facts, &mut Consumed::new()).map_err(internal)?;
            let name = if rho == 2 { "table2-left" } else { "table2-right" };
            Ok(Document { name: name.into(), json: t.to_json(), markdown: t.to_markdown(), code: 0 })
        }
        Which::Figure1 | Which::Table1 => {
            if k < 3 {
                return Err(invalid(format!("k must be at least 3, got {k}")));
            }
            if !(1..=12).contains(&rho_max) {
                return Err(invalid(format!("rho-max must lie in 1..=12, got {rho_max}")));
            }
            let inputs = match mode {
                Mode::Computed => Some(inputs()?),
                Mode::Paper => None,
            };
            let a = assemble(k, rho_max, facts, mode, inputs.as_ref()).map_err(internal)?;
            if matches!(which, Which::Figure1) {
                Ok(Document {
                    name: format!("figure1-k{k}-{mode}"),
                    json: a.main.to_json(),
                    markdown: a.main.to_markdown(),
                    code: 0,
                })
            } else {
                let json = json!({
                    "integral": a.integral.to_json(),
                    "rational": a.rational.to_json(),
                    "discrepancies": a.discrepancies,
                });
                let markdown = format!("{}\n{}", a.integral.to_markdown(), a.rational.to_markdown());
                Ok(Document { name: format!("table1-k{k}-{mode}"), json, markdown, code: 0 })
            }
        }
    }
}

fn verify_doc(facts: &Facts) -> Document {
    let results = run_all(facts);
    let ok = results.iter().all(|r| r.passed);
    let markdown = results
        .iter()
        .map(|r| format!("{} {} {}: {}\n", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
        .collect();
    Document {
        name: "verify".into(),
        json: json!({"passed": ok, "checks": results}),
        markdown,
        code: if ok { 0 } else { 1 },
    }
}

fn report_doc(k: i64, facts: &Facts) -> Result<Document, Failure> {
    if k < 3 {
        return Err(invalid(format!("k must be at least 3, got {k}")));
    }
    let inputs = Inputs::compute().map_err(internal)?;
    let a = assemble(k, 5, facts, Mode::Computed, Some(&inputs)).map_err(internal)?;
    let used: Vec<Json> = a
        .consumed
        .iter()
        .filter_map(|id| facts.get(id))
        .map(|f| json!({"id": f.id, "provenance": f.provenance}))
        .collect();
    let unresolved = serde_json::to_value(&a.integral.unresolved).map_err(internal)?;
    let mut markdown = String::from("## Discrepancies\n\n");
    for d in &a.discrepancies {
        markdown += &format!("- {d}\n");
    }
    markdown += "\n## Facts relied on\n\n";
    for id in &a.consumed {
        markdown += &format!("- {id}\n");
    }
    markdown += &format!("\n## Unresolved differentials\n\n{}\n", a.integral.unresolved.len());
    Ok(Document {
        name: format!("report-k{k}"),
        json: json!({"k": k, "discrepancies": a.discrepancies, "facts": used, "unresolved": unresolved}),
        markdown,
        code: 0,
    })
}

fn run(cli: &Cli) -> Result<Document, Failure> {
    let facts = match &cli.facts {
        Some(p) => Facts::load(p).map_err(invalid)?,
        None => Facts::bundled(),
    };
    match &cli.command {
        Command::GraphComplex { a, pred, allow_large, export } => graph_doc(*a, *pred, *allow_large, *export),
        Command::ConfigHomology { k, n, rep, export } => config_doc(*k, *n, rep, *export),
        Command::Tables { which, k, mode, rho_max } => tables_doc(*which, *k, *mode, *rho_max, &facts),
        Command::Verify => Ok(verify_doc(&facts)),
        Command::Report { k } => report_doc(*k, &facts),
    }
}

fn emit(cli: &Cli, doc: &Document) -> Result<(), Failure> {
    let (text, ext) = match cli.format {
        Format::Json => (serde_json::to_string_pretty(&doc.json).map_err(internal)? + "\n", "json"),
        Format::Markdown => (doc.markdown.clone(), "md"),
    };
    print!("{text}");
    if let Some(dir) = &cli.out_dir {
        std::fs::create_dir_all(dir).map_err(invalid)?;
        std::fs::write(dir.join(format!("{}.{ext}", doc.name)), &text).map_err(invalid)?;
    }
    Ok(())
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", json!({"error": f.kind, "message": f.message}));
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&invalid(e.to_string().trim())),
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return fail(&invalid("--jobs must be positive"));
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli).and_then(|doc| emit(&cli, &doc).map(|()| doc.code)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => fail(&f),
    }
}
