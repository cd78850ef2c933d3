use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use minuscone::delpezzo::{self, ClassKind, IncidenceGraph, PicardLattice};
use minuscone::suite::{self, CheckReport, Status, Suite, SuiteOptions};
use minuscone::{Case, ConeSpace, WeightPolytope};

#[derive(Parser)]
#[command(name = "minuscone", version, about = "Exact checks for minuscule cones and del Pezzo lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Print the quadratic forms p_λ (and the cubic q for e7).
    Equations(EquationsArgs),
    /// Edges of Conv(Wω) or the stability table after vertex removals.
    Polytope(PolytopeArgs),
    /// Exceptional, conic and root classes of N_r and the incidence graph.
    Delpezzo(DelpezzoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    A4,
    D5,
    E6,
    E7,
    All,
}

impl CaseArg {
    fn cases(self) -> Vec<Case> {
        match self {
            CaseArg::A4 => vec![Case::A4],
            CaseArg::D5 => vec![Case::D5],
            CaseArg::E6 => vec![Case::E6],
            CaseArg::E7 => vec![Case::E7],
            CaseArg::All => Case::ALL.to_vec(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            CaseArg::All => "all",
            other => other.cases()[0].name(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleCase {
    A4,
    D5,
    E6,
    E7,
}

impl From<SingleCase> for Case {
    fn from(c: SingleCase) -> Case {
        match c {
            SingleCase::A4 => Case::A4,
            SingleCase::D5 => Case::D5,
            SingleCase::E6 => Case::E6,
            SingleCase::E7 => Case::E7,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Rep,
    Forms,
    Fibres,
    Stability,
    Delpezzo,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Rep => vec![Suite::Rep],
            SuiteArg::Forms => vec![Suite::Forms],
            SuiteArg::Fibres => vec![Suite::Fibres],
            SuiteArg::Stability => vec![Suite::Stability],
            SuiteArg::Delpezzo => vec![Suite::Delpezzo],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            other => other.suites()[0].name(),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    case: CaseArg,
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report path; `-` writes the JSON to stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Directory for the report when `--json` is absent.
    #[arg(long, env = "MINUSCONE_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// Suppress the text summary.
    #[arg(long)]
    quiet: bool,
    /// Record wall-clock time per check (the report is then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct EquationsArgs {
    #[arg(long, value_enum)]
    case: SingleCase,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Removals {
    Singles,
    Pairs,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "what")]
struct PolytopeQuery {
    #[arg(long)]
    edges: bool,
    #[arg(long, value_enum)]
    removals: Option<Removals>,
}

#[derive(Args)]
struct PolytopeArgs {
    #[arg(long, value_enum)]
    case: SingleCase,
    #[command(flatten)]
    query: PolytopeQuery,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListKind {
    Exceptional,
    Conic,
    Roots,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DelpezzoQuery {
    #[arg(long, value_enum)]
    list: Option<ListKind>,
    #[arg(long)]
    graph: bool,
}

#[derive(Args)]
struct DelpezzoArgs {
    #[arg(long = "r", value_parser = clap::value_parser!(u8).range(4..=7))]
    r: u8,
    #[command(flatten)]
    query: DelpezzoQuery,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Equations(args) => equations(args).map(|()| true),
        Command::Polytope(args) => polytope(args).map(|()| true),
        Command::Delpezzo(args) => delpezzo_cmd(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(p, contents).with_context(|| format!("writing {}", p.display()))
        }
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes()).context("writing to stdout")
        }
    }
}

fn to_json_string(v: &impl serde::Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let opts = SuiteOptions { seed: args.seed, timings: args.timings, ..SuiteOptions::default() };
    let reports = suite::run_suite(&args.case.cases(), &args.suite.suites(), &opts);
    let body = to_json_string(&reports)?;
    let case_name = args.case.name();
    let target = match (&args.json, &args.out_dir) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("report-{case_name}-{}.json", args.suite.name()))),
        (None, None) => None,
    };
    if let Some(path) = &target {
        write_output(Some(path), &body)?;
    }
    if !args.quiet {
        let stdout_json = target.as_deref() == Some(Path::new("-"));
        let summary = summarize(&reports);
        if stdout_json {
            eprint!("{summary}");
        } else {
            print!("{summary}");
        }
    }
    Ok(suite::all_passed(&reports))
}

fn summarize(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let case = r.case.as_deref().unwrap_or("-");
        s.push_str(&format!("{tag}  {:<4} {:<26} {}\n", case, r.check_name, r.anchor));
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = reports.iter().filter(|r| r.status == Status::Skipped).count();
    s.push_str(&format!(
        "{} checks: {} passed, {} failed, {} skipped\n",
        reports.len(),
        reports.len() - failed - skipped,
        failed,
        skipped
    ));
    s
}

fn equations(args: EquationsArgs) -> Result<()> {
    let case = Case::from(args.case);
    let space = ConeSpace::new(case.module()?);
    let forms = space.extract_forms();
    let body = match args.format {
        Format::Text => forms.to_text(space.module()),
        Format::Json => {
            let mut v = forms.to_json(space.module());
            v["case"] = json!(case.name());
            to_json_string(&v)?
        }
    };
    write_output(args.output.as_deref(), &body)
}

fn polytope(args: PolytopeArgs) -> Result<()> {
    let case = Case::from(args.case);
    let p = WeightPolytope::new(case.root_system(), &case.highest_weight())?;
    let w = |i: usize| p.weight(i).0.clone();
    let value: Value = if args.query.edges {
        let edges: Vec<Value> =
            p.edges().into_iter().map(|(i, j)| json!({"i": i, "j": j, "mu": w(i), "nu": w(j)})).collect();
        json!({"case": case.name(), "vertices": (0..p.len()).map(w).collect::<Vec<_>>(), "edges": edges})
    } else {
        let table = p.removal_table();
        match args.query.removals.expect("clap enforces one query") {
            Removals::Singles => {
                let rows: Vec<Value> =
                    table.singles.iter().enumerate().map(|(i, &s)| json!({"removed": [w(i)], "stable": s})).collect();
                json!({"case": case.name(), "removals": rows})
            }
            Removals::Pairs => {
                let rows: Vec<Value> =
                    table.pairs.iter().map(|x| json!({"removed": [w(x.i), w(x.j)], "stable": x.stable})).collect();
                json!({"case": case.name(), "non_adjacent_pairs": rows.len(), "all_stable": table.all_stable(), "removals": rows})
            }
        }
    };
    write_output(args.output.as_deref(), &to_json_string(&value)?)
}

fn delpezzo_cmd(args: DelpezzoArgs) -> Result<()> {
    let lattice = PicardLattice::new(usize::from(args.r))?;
    let value = if args.query.graph {
        IncidenceGraph::new(&lattice)?.to_json()
    } else {
        let kind = match args.query.list.expect("clap enforces one query") {
            ListKind::Exceptional => ClassKind::Exceptional,
            ListKind::Conic => ClassKind::Conic,
            ListKind::Roots => ClassKind::Root,
        };
        let classes: Vec<Vec<i64>> =
            delpezzo::enumerate_classes(&lattice, kind)?.into_iter().map(|c| c.coords).collect();
        json!(classes)
    };
    write_output(args.output.as_deref(), &to_json_string(&value)?)
}
