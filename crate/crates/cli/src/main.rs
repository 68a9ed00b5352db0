use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use ordrep::build::{
    build_indicator_mu, build_minimal_partial_rp_mu, build_rp_multi_utility, build_ss, count_labelings, enumerate_labelings,
    generate_example, parse_example_call, BuildMode, DEFAULT_LABELING_CAP,
};
use ordrep::harness::{closed_contours_harness, totality_harness, Outcome};
use ordrep::json::{self as doc, document, to_pretty};
use ordrep::topology::{is_continuous, FiniteTopology, ValueSpace};
use ordrep::trace::{clock_report, generate_trace, happened_before, Trace};
use ordrep::verify::{verify, verify_labeling, Verdict};
use ordrep::{classify, rational, Rational, Relation, ReprFamily, ReprKind};

/// Finite orders, their partial-function representations and finite topologies.
#[derive(Debug, Parser)]
#[command(name = "ordrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BuildKind {
    Mu,
    RpMu,
    PartialRpMu,
    Ss,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

impl From<Mode> for BuildMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => BuildMode::Exact,
            Mode::Greedy => BuildMode::Greedy,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Codomain {
    /// Upper sets of the usual order on the values.
    Scott,
    /// Every subset open: the reals' usual topology restricted to finitely many values.
    Discrete,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HarnessKind {
    Totality,
    ClosedContours,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Part {
    Relation,
    Family,
    Topology,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Property flags with lexicographically least counterexamples.
    Classify {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Checks the listed properties; exit 1 if any fails.
    Axioms {
        #[arg(long)]
        relation: PathBuf,
        /// Comma-separated property names, e.g. `preorder,semiorder`.
        #[arg(long, value_delimiter = ',', required = true)]
        require: Vec<String>,
    },
    /// Size of a largest antichain, with one such antichain.
    Width {
        #[arg(long)]
        relation: PathBuf,
    },
    /// Order-preserving bijections onto 1..n.
    Labelings {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = DEFAULT_LABELING_CAP)]
        cap: usize,
    },
    /// Builds a representing family.
    Represent {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum)]
        kind: BuildKind,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Checks that a family represents a relation; exit 1 if not.
    Verify {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        family: PathBuf,
        /// Overrides the family's own kind; `labeling` checks each function as a labeling.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Scott topology of a partial order.
    Scott {
        #[arg(long)]
        relation: PathBuf,
    },
    /// Continuity of each function of a family; exit 1 if any is discontinuous.
    Continuity {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        family: PathBuf,
        /// Defaults to the Scott topology of the relation.
        #[arg(long)]
        topology: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "scott")]
        codomain: Codomain,
        /// Codomain points; defaults to the values the family takes.
        #[arg(long, value_delimiter = ',')]
        codomain_values: Option<Vec<String>>,
    },
    /// Finite-instance check of a topological statement; exit 1 unless it passes.
    Harness {
        #[arg(value_enum)]
        which: HarnessKind,
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        topology: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Emits a named fixture, e.g. `four_point` or `esemiz_window(0,5)`.
    Example {
        call: String,
        #[arg(long, value_enum)]
        part: Option<Part>,
        /// Which topology `--part topology` prints; the first by default.
        #[arg(long)]
        topology_name: Option<String>,
    },
    /// Distributed traces.
    Trace {
        #[command(subcommand)]
        command: TraceCommand,
    },
}

#[derive(Debug, Subcommand)]
enum TraceCommand {
    /// Happened-before relation of a trace file.
    Ingest { file: PathBuf },
    /// Seeded random trace, as JSON lines.
    Gen {
        #[arg(long)]
        procs: usize,
        #[arg(long)]
        events: usize,
        #[arg(long, default_value_t = 0.3)]
        msg_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Partial clocks versus vector clocks.
    Clocks {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
}

struct Output {
    stdout: String,
    code: u8,
}

impl Output {
    fn json(v: &Value, ok: bool) -> Self {
        Output { stdout: to_pretty(v), code: if ok { 0 } else { 1 } }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_relation(path: &Path) -> Result<Relation> {
    doc::relation_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_family(path: &Path, r: &Relation, kind: Option<ReprKind>) -> Result<ReprFamily> {
    doc::family_from_json(&read(path)?, r.ground(), kind).with_context(|| format!("in {}", path.display()))
}

fn load_topology(path: &Path, r: &Relation) -> Result<FiniteTopology> {
    doc::topology_from_json(&read(path)?, r.ground()).with_context(|| format!("in {}", path.display()))
}

fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Classify { relation, format } => {
            let r = load_relation(&relation)?;
            match format {
                Format::Json => Ok(Output::json(&document(&classify(&r)), true)),
                Format::Dot => Ok(Output { stdout: r.to_dot()?, code: 0 }),
            }
        }
        Command::Axioms { relation, require } => {
            let r = load_relation(&relation)?;
            let report = classify(&r);
            let mut checks = Map::new();
            for name in &require {
                let check = report.flag(name).with_context(|| {
                    let known: Vec<&str> = report.flags().iter().map(|(n, _)| *n).collect();
                    format!("unknown property `{name}` (known: {})", known.join(", "))
                })?;
                checks.insert(name.clone(), serde_json::to_value(check)?);
            }
            let ok = checks.values().all(|c| c["holds"] == json!(true));
            Ok(Output::json(&json!({ "schema": doc::SCHEMA, "ok": ok, "checks": checks }), ok))
        }
        Command::Width { relation } => {
            let r = load_relation(&relation)?;
            let w = r.width()?;
            Ok(Output::json(&json!({ "schema": doc::SCHEMA, "width": w.width, "antichain": r.ground().labels(&w.antichain) }), true))
        }
        Command::Labelings { relation, count_only, cap } => {
            let r = load_relation(&relation)?;
            if count_only {
                let n = count_labelings(&r)?;
                // counts beyond u64 are printed as strings to stay exact
                let count = u64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()));
                return Ok(Output::json(&json!({ "schema": doc::SCHEMA, "count": count }), true));
            }
            let all: Vec<_> = enumerate_labelings(&r, cap)?.collect();
            Ok(Output::json(&doc::labelings_to_json(&all), true))
        }
        Command::Represent { relation, kind, mode } => {
            let r = load_relation(&relation)?;
            let family = match kind {
                BuildKind::Mu => build_indicator_mu(&r)?,
                BuildKind::RpMu => build_rp_multi_utility(&r)?,
                BuildKind::PartialRpMu => {
                    let rep = build_minimal_partial_rp_mu(&r, mode.into())?;
                    eprintln!(
                        "{} functions ({}; {} nodes, starting bound {})",
                        rep.family.len(),
                        if rep.optimal { "optimal" } else { "not proven optimal" },
                        rep.stats.nodes,
                        rep.stats.bound
                    );
                    rep.family
                }
                BuildKind::Ss => build_ss(&r)?.family,
            };
            Ok(Output::json(&doc::family_to_json(&family), true))
        }
        Command::Verify { relation, family, kind } => {
            let r = load_relation(&relation)?;
            let verdict = match kind.as_deref() {
                Some("labeling") => {
                    let fam = load_family(&family, &r, Some(ReprKind::PartialMu))?;
                    let mut violations = Vec::new();
                    for f in fam.functions() {
                        violations.extend(verify_labeling(&r, f)?.violations);
                    }
                    Verdict { ok: violations.is_empty(), violations }
                }
                other => {
                    let kind = other.map(str::parse::<ReprKind>).transpose()?;
                    verify(&r, &load_family(&family, &r, kind)?)?
                }
            };
            let ok = verdict.ok;
            Ok(Output::json(&document(&verdict), ok))
        }
        Command::Scott { relation } => {
            let r = load_relation(&relation)?;
            Ok(Output::json(&doc::topology_to_json(&FiniteTopology::scott(&r)?), true))
        }
        Command::Continuity { relation, family, topology, codomain, codomain_values } => {
            let r = load_relation(&relation)?;
            let fam = load_family(&family, &r, None)?;
            let space = match topology {
                Some(p) => load_topology(&p, &r)?,
                None => FiniteTopology::scott(&r)?,
            };
            let points: Vec<Rational> = match codomain_values {
                Some(vals) => vals.iter().map(|v| rational::parse(v)).collect::<Result<_, _>>()?,
                None => fam.functions().iter().flat_map(|f| f.values().iter().flatten().copied()).collect(),
            };
            let target = match codomain {
                Codomain::Scott => ValueSpace::scott_chain(points)?,
                Codomain::Discrete => ValueSpace::discrete(points)?,
            };
            let mut results = Vec::new();
            let mut ok = true;
            for (i, f) in fam.functions().iter().enumerate() {
                let v = is_continuous(f, &space, &target)?;
                ok &= v.ok;
                results.push(json!({ "function": i, "ok": v.ok, "violations": v.violations }));
            }
            Ok(Output::json(&json!({ "schema": doc::SCHEMA, "ok": ok, "functions": results }), ok))
        }
        Command::Harness { which, relation, topology, family } => {
            let r = load_relation(&relation)?;
            let space = load_topology(&topology, &r)?;
            let fam = load_family(&family, &r, None)?;
            let report = match which {
                HarnessKind::Totality => totality_harness(&r, &space, &fam)?,
                HarnessKind::ClosedContours => closed_contours_harness(&r, &space, &fam)?,
            };
            if report.outcome == Outcome::Alarm {
                eprintln!("alarm: every hypothesis holds but the conclusion fails");
            }
            Ok(Output::json(&document(&report), report.outcome == Outcome::Pass))
        }
        Command::Example { call, part, topology_name } => {
            let (name, params) = parse_example_call(&call)?;
            let ex = generate_example(&name, &params)?;
            let value = match part {
                None => {
                    let topologies: Map<String, Value> = ex.topologies.iter().map(|(n, t)| (n.clone(), doc::topology_to_json(t))).collect();
                    json!({
                        "schema": doc::SCHEMA,
                        "name": ex.name,
                        "relation": doc::relation_to_json(&ex.relation),
                        "family": ex.family.as_ref().map(doc::family_to_json),
                        "topologies": topologies,
                    })
                }
                Some(Part::Relation) => doc::relation_to_json(&ex.relation),
                Some(Part::Family) => match &ex.family {
                    Some(f) => doc::family_to_json(f),
                    None => bail!("example `{name}` has no family"),
                },
                Some(Part::Topology) => {
                    let found = match &topology_name {
                        Some(want) => ex.topologies.iter().find(|(n, _)| n == want),
                        None => ex.topologies.first(),
                    };
                    match found {
                        Some((_, t)) => doc::topology_to_json(t),
                        None => bail!("example `{name}` has no topology{}", topology_name.map(|n| format!(" named `{n}`")).unwrap_or_default()),
                    }
                }
            };
            Ok(Output::json(&value, true))
        }
        Command::Trace { command } => match command {
            TraceCommand::Ingest { file } => {
                let t = Trace::parse(&read(&file)?).with_context(|| format!("in {}", file.display()))?;
                Ok(Output::json(&doc::relation_to_json(&happened_before(&t)?), true))
            }
            TraceCommand::Gen { procs, events, msg_prob, seed } => {
                Ok(Output { stdout: generate_trace(procs, events, msg_prob, seed)?.to_jsonl(), code: 0 })
            }
            TraceCommand::Clocks { file, mode } => {
                let t = Trace::parse(&read(&file)?).with_context(|| format!("in {}", file.display()))?;
                let (report, build) = clock_report(&t, mode.into())?;
                let mut v = document(&report);
                v["family"] = doc::family_to_json(&build.family);
                let ok = report.verified;
                Ok(Output::json(&v, ok))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
