use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use arcmaps::groups::{Family, Group, GroupDescriptor};
use arcmaps::mapgeom::{build_revmap, underlying_graph, MapGeometry};
use arcmaps::record::{revalidate, MapRecord};
use arcmaps::triples::{ext_triple, pgl_triple, psl_triple, ReversingTriple, TriplePattern, DEFAULT_TRIPLE_BUDGET};
use arcmaps::verify::{
    a5_exceptional_case, coprime_census, verify_matrix_configs, verify_theorem_with, CensusMode, TheoremReport,
    Verdict, VerifyOptions, DEFAULT_ROTARY_BUDGET,
};
use arcmaps::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_USAGE: u8 = 1;
const EXIT_FAILED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "arcmaps", version, about = "Arc-transitive maps over PSL(2,p), PGL(2,p) and (Z_m x PSL(2,p)):2")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest group order any command will materialize.
    #[arg(long, global = true, env = "ARCMAPS_BUDGET", default_value_t = DEFAULT_TRIPLE_BUDGET)]
    budget: usize,

    /// Largest group order scanned for rotary pairs during `verify`.
    #[arg(long, global = true, env = "ARCMAPS_ROTARY_BUDGET", default_value_t = DEFAULT_ROTARY_BUDGET)]
    rotary_budget: usize,

    /// Worker threads (0 = one per core). Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Clone, Copy)]
struct GroupArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    p: u32,
    /// Order of the cyclic factor; required for ext, 1 otherwise.
    #[arg(long)]
    m: Option<u32>,
}

impl GroupArgs {
    fn descriptor(&self) -> Result<GroupDescriptor, Error> {
        let m = match (self.family, self.m) {
            (Family::Ext, None) => return Err(Error::InvalidParameters("ext requires --m".into())),
            (_, m) => m.unwrap_or(1),
        };
        GroupDescriptor::new(self.family, self.p, m)
    }
}

#[derive(Args, Clone, Copy)]
struct TripleArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Point index; defaults to 2 for psl2 and 0 otherwise.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    c1: u32,
    #[arg(long, default_value_t = 0)]
    c2: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Build the constructed reversing map and emit its record.
    Construct(TripleArgs),
    /// Census of generating involution triples (coprime maps by default).
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        /// Enumerate all triples with this ordered pattern, e.g. 10,6,4.
        #[arg(long, value_delimiter = ',')]
        pattern: Option<Vec<u64>>,
        /// Scan every z instead of one per involution class.
        #[arg(long)]
        full: bool,
    },
    /// Run the classification harness on one configuration or the matrix.
    Verify {
        #[command(flatten)]
        group: Option<GroupArgs>,
        #[arg(long, conflicts_with_all = ["family", "p", "m"])]
        matrix: bool,
        #[arg(long)]
        full: bool,
    },
    /// Underlying graph of the constructed map in DOT.
    Export(TripleArgs),
    /// Re-validate a stored JSON map record.
    Check { record: PathBuf },
    /// The two flag-regular maps of A5 on the projective plane.
    A5,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn load_group(desc: GroupDescriptor, budget: usize) -> Result<Group, Failure> {
    if desc.order() > budget as u64 {
        return Err(Error::BudgetExceeded { order: desc.order() as usize, budget }.into());
    }
    Ok(Group::new(desc)?)
}

fn constructed_triple(g: &Group, args: &TripleArgs) -> Result<ReversingTriple, Error> {
    match g.family() {
        Family::Psl2 => psl_triple(g, args.k.unwrap_or(2)),
        Family::Pgl2 => pgl_triple(g, args.k.unwrap_or(0)),
        Family::Ext => ext_triple(g, args.k.unwrap_or(0), args.c1, args.c2),
    }
}

fn constructed_map(args: &TripleArgs, budget: usize) -> Result<(Group, MapGeometry), Failure> {
    let g = load_group(args.group.descriptor()?, budget)?;
    let t = constructed_triple(&g, args)?;
    let m = build_revmap(&g, &t)?;
    Ok((g, m))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn map_text(r: &MapRecord) -> String {
    let mut s = String::new();
    let c = &r.counts;
    let _ = writeln!(s, "group        {}", r.group);
    if c.f2 == 0 {
        let _ = writeln!(s, "cells        V={} E={} F={}", c.v, c.e, c.f1);
    } else {
        let _ = writeln!(s, "cells        V={} E={} F={} ({}+{})", c.v, c.e, c.faces(), c.f1, c.f2);
    }
    let _ = writeln!(s, "chi          {}", r.chi);
    let _ = writeln!(s, "coprime      {}", r.coprime);
    let orient = if r.orientable { "orientable" } else { "nonorientable" };
    let _ = writeln!(s, "surface      {orient}, genus {}", r.genus);
    let _ = writeln!(s, "stabilisers  {:?}", r.stabilizer_orders);
    let _ = writeln!(s, "valency      {:?}", r.vertex_valency);
    let _ = writeln!(s, "face lengths {:?}", r.face_lengths);
    let _ = writeln!(s, "graph        {}", r.graph.recognized);
    s
}

fn report_text(r: &TheoremReport) -> String {
    let verdict = if r.verdict == Verdict::Pass { "pass" } else { "FAIL" };
    let l = &r.lemma_checks;
    let rotary = l.no_rotary.map_or("skipped".to_string(), |b| b.to_string());
    format!(
        "{:<22} {verdict}  patterns {:?} predicted {:?}  orbits {}  sylow {} no_rotary {rotary} pgl_action {} membership {}\n",
        r.config.to_string(),
        r.patterns_found,
        r.predicted,
        r.orbits,
        l.sylow,
        l.pgl_action,
        l.membership
    )
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Text => "text",
    };
    Failure::Usage(format!("format {name} is not available for {command}"))
}

/// Returns the rendered output and whether every verdict passed.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let opts = VerifyOptions { budget: cli.budget, rotary_budget: cli.rotary_budget, ..VerifyOptions::default() };
    match &cli.command {
        Command::Construct(args) => {
            let (g, m) = constructed_map(args, cli.budget)?;
            let rec = MapRecord::from_map(&g, &m)?;
            match cli.format {
                Format::Json => Ok((json(&rec), true)),
                Format::Text => Ok((map_text(&rec), true)),
                Format::Dot => Ok((underlying_graph(&m).to_dot(&rec.group.to_string()), true)),
            }
        }
        Command::Export(args) => {
            if cli.format == Format::Text {
                return Err(unsupported(cli.format, "export"));
            }
            let (g, m) = constructed_map(args, cli.budget)?;
            Ok((underlying_graph(&m).to_dot(&g.descriptor().to_string()), true))
        }
        Command::Enumerate { group, pattern, full } => {
            let g = load_group(group.descriptor()?, cli.budget)?;
            let mode = if *full { CensusMode::Full } else { CensusMode::ClassReps };
            if let Some(p) = pattern {
                if p.len() != 3 {
                    return Err(Failure::Usage(format!("--pattern takes three orders, got {}", p.len())));
                }
                let pattern = TriplePattern::new(p[0], p[1], p[2]);
                let found = arcmaps::triples::enumerate_reversing_triples(&g, pattern, cli.budget)?;
                let orbits = arcmaps::triples::orbit_representatives(&g, &found);
                let out = serde_json::json!({
                    "schema_version": arcmaps::record::SCHEMA_VERSION,
                    "group": g.descriptor(),
                    "pattern": pattern,
                    "ordered_triples": found.len(),
                    "orbits": orbits
                        .iter()
                        .map(|&(x, y, z)| [x, y, z].map(|id| arcmaps::record::ElementRecord::of(&g, id)))
                        .collect::<Vec<_>>(),
                });
                return match cli.format {
                    Format::Json => Ok((json(&out), true)),
                    Format::Text => Ok((
                        format!("{}  pattern {pattern}  {} ordered triples, {} orbits\n", g.descriptor(), found.len(), orbits.len()),
                        true,
                    )),
                    Format::Dot => Err(unsupported(cli.format, "enumerate")),
                };
            }
            let census = coprime_census(&g, mode, cli.budget)?.to_record(&g);
            match cli.format {
                Format::Json => Ok((json(&census), true)),
                Format::Text => Ok((
                    format!(
                        "{}  examined {}  coprime {}  orbits {}  patterns {:?}\n",
                        census.group,
                        census.examined,
                        census.qualifying,
                        census.orbits.len(),
                        census.patterns
                    ),
                    true,
                )),
                Format::Dot => Err(unsupported(cli.format, "enumerate")),
            }
        }
        Command::Verify { group, matrix, full } => {
            let opts = VerifyOptions { mode: if *full { CensusMode::Full } else { CensusMode::ClassReps }, ..opts };
            let configs = match (group, matrix) {
                (_, true) => verify_matrix_configs(),
                (Some(g), false) => vec![g.descriptor()?],
                (None, false) => return Err(Failure::Usage("verify needs --family and --p, or --matrix".into())),
            };
            let reports = configs.into_iter().map(|d| verify_theorem_with(d, opts)).collect::<Result<Vec<_>, _>>()?;
            let pass = reports.iter().all(|r| r.verdict == Verdict::Pass);
            let body = match cli.format {
                Format::Json if *matrix => json(&reports),
                Format::Json => json(&reports[0]),
                Format::Text => reports.iter().map(report_text).collect(),
                Format::Dot => return Err(unsupported(cli.format, "verify")),
            };
            Ok((body, pass))
        }
        Command::Check { record } => {
            let text = fs::read_to_string(record).map_err(|e| Failure::Usage(format!("{}: {e}", record.display())))?;
            let rec: MapRecord =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", record.display())))?;
            if rec.group.order() > cli.budget as u64 {
                return Err(Error::BudgetExceeded { order: rec.group.order() as usize, budget: cli.budget }.into());
            }
            let check = revalidate(&rec)?;
            let body = match cli.format {
                Format::Json => json(&check),
                Format::Text => format!(
                    "chi {}  {}  coprime {}  record {}\n",
                    check.chi,
                    if check.orientable { "orientable" } else { "nonorientable" },
                    check.coprime,
                    if check.matches { "matches" } else { "DIFFERS" }
                ),
                Format::Dot => return Err(unsupported(cli.format, "check")),
            };
            Ok((body, check.matches))
        }
        Command::A5 => {
            let report = a5_exceptional_case()?;
            let body = match cli.format {
                Format::Json => json(&report),
                Format::Text => format!("{}\n{}", map_text(&report.k6), map_text(&report.petersen)),
                Format::Dot => return Err(unsupported(cli.format, "a5")),
            };
            Ok((body, report.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        eprintln!("arcmaps: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok((body, pass)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &body),
                None => io::stdout().lock().write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("arcmaps: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("arcmaps: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("arcmaps: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
