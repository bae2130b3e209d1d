//! The `kneser` command-line tool.
//!
//! Exit codes: 0 success or every inequality satisfied, 1 error, 2 a
//! violation or failed claim was found, 3 a cap or time budget was hit.

pub mod error;
pub mod format;
mod render;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kneser_core::conjectures::{
    self, CertificateStore, Comparison, FamilyDescriptor, PlantedFamily, ScanParams, Verdict, REPORT_SCHEMA,
};
use kneser_core::limits::DEFAULT_MAX_EDGES;
use kneser_core::{
    build_kneser, chromatic_number, colorability_defect, complete_k_subsets, defect_lower_bound_report, export_cnf,
    family_f_nr, family_prop2, filter_part, is_m_colorable, Hypergraph, Limits, SetSystem, StabilityKind,
};

pub use error::{CliError, EXIT_CAP, EXIT_ERROR, EXIT_OK, EXIT_VIOLATED};
use format::{parse_input, serialize_set_system, Input};

#[derive(Debug, Parser)]
#[command(
    name = "kneser",
    version,
    about = "Exact colorings and colorability defects of Kneser hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EDGES)]
    pub max_edges: u64,

    #[arg(long, global = true)]
    pub max_defect_size: Option<usize>,

    #[arg(long, global = true)]
    pub time_budget_seconds: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Stable,
    Almost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GapKind {
    Frick,
    Weak,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Set-system text, set-system JSON or hypergraph JSON; `-` reads standard input.
    #[arg(long, short)]
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one of the built-in families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Keep the s-stable (or almost s-stable) members.
    Filter {
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        input: InputArg,
    },
    /// Build the Kneser hypergraph KG^r of a set system.
    Kneser {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: InputArg,
    },
    /// Exact chromatic number.
    Chi {
        #[command(flatten)]
        input: InputArg,
        /// Color KG^R of the set system instead of the set system itself.
        #[arg(long)]
        kneser: Option<usize>,
    },
    /// Decide m-colorability.
    Colorable {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        kneser: Option<usize>,
    },
    /// Exact r-colorability defect.
    Defect {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: InputArg,
        /// Only try to prove cd_r > B by refuting every removal set of size at most B.
        #[arg(long, value_name = "B")]
        refute_up_to: Option<usize>,
    },
    /// Check one of the built-in claims.
    Verify {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Compare chi of the Kneser hypergraph of the (almost) stable part with ceil(cd_r / (r-1)).
    Gap {
        #[arg(value_enum)]
        variant: GapKind,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: InputArg,
        /// Write certificates to this file instead of embedding them.
        #[arg(long)]
        cert_store: Option<PathBuf>,
    },
    /// Seeded random search for violations of either gap inequality.
    Scan(ScanArgs),
    /// DIMACS CNF for m-colorability.
    ExportCnf {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        kneser: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// All k-subsets of [n].
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// The pairs of [n] that are not r-stable.
    Fnr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// F(r(2r-1), r) plus the closed cycle of stable pairs 1, 1+r, ..., 1+(2r-2)r.
    Prop2 {
        #[arg(long)]
        r: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Claim {
    /// cd_r(F(kr+1, r)) = 1 with an empty r-stable part.
    Prop1 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// cd_r >= r for the augmented family while its stable Kneser hypergraph has chi = 1.
    Prop2 {
        #[arg(long)]
        r: usize,
        /// Only establish the lower bound; skip the exact defect.
        #[arg(long)]
        skip_exact: bool,
    },
    /// The almost-stable chromatic number exceeds the stable one by at most 1.
    Remark {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: InputArg,
    },
    /// chi of KG^r of the r-stable k-subsets of [n] against ceil((n - r(k-1)) / (r-1)).
    Ziegler {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub members_min: usize,
    #[arg(long, default_value_t = 12)]
    pub members_max: usize,
    #[arg(long, default_value_t = 1)]
    pub size_min: usize,
    #[arg(long, default_value_t = 3)]
    pub size_max: usize,
    #[arg(long, default_value_t = 2)]
    pub r_min: usize,
    #[arg(long, default_value_t = 3)]
    pub r_max: usize,
    /// Set-system file evaluated alongside the random samples; repeatable.
    #[arg(long)]
    pub plant: Vec<String>,
    /// Uniformity used for planted families (defaults to --r-min).
    #[arg(long)]
    pub plant_r: Option<usize>,
    #[arg(long)]
    pub cert_store: Option<PathBuf>,
}

/// What a command produced: the main output and the exit code.
struct Outcome {
    body: String,
    code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, code: EXIT_OK }
    }

    fn flagged(body: String, violated: bool) -> Self {
        Outcome {
            body,
            code: if violated { EXIT_VIOLATED } else { EXIT_OK },
        }
    }
}

struct Context<'a> {
    format: OutputFormat,
    limits: Limits,
    warnings: &'a mut Vec<String>,
}

impl Context<'_> {
    fn read(&mut self, input: &InputArg) -> Result<Input, CliError> {
        let text = if input.input == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io {
                path: "-".into(),
                message: e.to_string(),
            })?;
            s
        } else {
            std::fs::read_to_string(&input.input).map_err(|e| CliError::Io {
                path: input.input.clone(),
                message: e.to_string(),
            })?
        };
        let (parsed, warnings) = parse_input(&text).map_err(|e| match e {
            CliError::Parse { line, message } => CliError::ParseFile {
                path: input.input.clone(),
                line,
                message,
            },
            other => other,
        })?;
        self.warnings
            .extend(warnings.into_iter().map(|w| format!("{}: {w}", input.input)));
        Ok(parsed)
    }

    fn read_family(&mut self, input: &InputArg) -> Result<SetSystem, CliError> {
        match self.read(input)? {
            Input::SetSystem(f) => Ok(f),
            Input::Hypergraph(_) => Err(CliError::Usage(format!(
                "{}: expected a set system, got a hypergraph",
                input.input
            ))),
        }
    }

    /// The hypergraph to color: a hypergraph input as is, a set system as `([n], F)` or as `KG^r(F)`.
    fn read_hypergraph(&mut self, input: &InputArg, kneser: Option<usize>) -> Result<(Hypergraph, bool), CliError> {
        match (self.read(input)?, kneser) {
            (Input::Hypergraph(h), None) => Ok((h, false)),
            (Input::Hypergraph(_), Some(_)) => Err(CliError::Usage("--kneser needs a set-system input".into())),
            (Input::SetSystem(f), None) => Ok((f.as_hypergraph(), true)),
            (Input::SetSystem(f), Some(r)) => Ok((build_kneser(&f, r, &self.limits)?, false)),
        }
    }

    fn json(&self) -> bool {
        self.format == OutputFormat::Json
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn family_out(ctx: &Context, f: &SetSystem) -> String {
    if ctx.json() {
        pretty(&serde_json::to_value(f).expect("set systems serialize"))
    } else {
        serialize_set_system(f)
    }
}

fn with_store(mut doc: Value, store: CertificateStore, sidecar: Option<&PathBuf>) -> Result<Value, CliError> {
    match sidecar {
        Some(path) => {
            std::fs::write(path, pretty(&serde_json::to_value(&store).expect("store serializes"))).map_err(|e| {
                CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                }
            })?;
            doc["certificate_store"] = json!(path.display().to_string());
        }
        None => doc["certificates"] = serde_json::to_value(&store).expect("store serializes"),
    }
    Ok(doc)
}

fn execute(cli: &Cli, ctx: &mut Context) -> Result<Outcome, CliError> {
    let limits = ctx.limits.clone();
    match &cli.command {
        Command::Construct { family } => {
            let f = match family {
                Family::Complete { n, k } => complete_k_subsets(*n, *k)?,
                Family::Fnr { n, r } => family_f_nr(*n, *r)?,
                Family::Prop2 { r } => family_prop2(*r)?,
            };
            Ok(Outcome::ok(family_out(ctx, &f)))
        }
        Command::Filter { s, kind, input } => {
            if *s == 0 {
                return Err(CliError::Usage("--s must be positive".into()));
            }
            let f = ctx.read_family(input)?;
            let kind = match kind {
                Kind::Stable => StabilityKind::Stable,
                Kind::Almost => StabilityKind::AlmostStable,
            };
            Ok(Outcome::ok(family_out(ctx, &filter_part(&f, *s, kind))))
        }
        Command::Kneser { r, input } => {
            let f = ctx.read_family(input)?;
            let h = build_kneser(&f, *r, &limits)?;
            let body = if ctx.json() {
                pretty(&serde_json::to_value(&h).expect("hypergraphs serialize"))
            } else {
                h.to_edge_list()
            };
            Ok(Outcome::ok(body))
        }
        Command::Chi { input, kneser } => {
            let (h, _) = ctx.read_hypergraph(input, *kneser)?;
            let chi = chromatic_number(&h, &limits)?;
            let body = if ctx.json() {
                pretty(&json!({
                    "schema": REPORT_SCHEMA,
                    "kind": "chi",
                    "vertex_count": h.vertex_count(),
                    "edge_count": h.edge_count(),
                    "chi": chi.chi,
                    "refuted": chi.refuted,
                    "certificate": chi.certificate,
                }))
            } else {
                render::chi(&h, &chi)
            };
            Ok(Outcome::ok(body))
        }
        Command::Colorable { m, input, kneser } => {
            let (h, _) = ctx.read_hypergraph(input, *kneser)?;
            let cert = is_m_colorable(&h, *m, &limits)?;
            let body = if ctx.json() {
                pretty(&json!({
                    "schema": REPORT_SCHEMA,
                    "kind": "colorable",
                    "m": m,
                    "colorable": cert.is_some(),
                    "certificate": cert,
                }))
            } else {
                render::colorable(*m, cert.as_ref())
            };
            Ok(Outcome::ok(body))
        }
        Command::Defect {
            r,
            input,
            refute_up_to: Some(b),
        } => {
            let (h, ground) = ctx.read_hypergraph(input, None)?;
            let rep = defect_lower_bound_report(&h, *r, *b, &limits)?;
            let body = if ctx.json() {
                let mut v = json!({
                    "schema": REPORT_SCHEMA,
                    "kind": "defect_bound",
                    "r": r,
                    "b": b,
                    "refuted": rep.refutes(),
                    "refuted_total": rep.refuted_total,
                    "sizes": rep.sizes,
                    "counterwitness": rep.counterwitness,
                });
                if let (true, Some(w)) = (ground, &rep.counterwitness) {
                    v["counterwitness_labels"] = json!(conjectures::labels(&w.removed));
                }
                pretty(&v)
            } else {
                render::defect_bound(&rep, ground)
            };
            Ok(Outcome::ok(body))
        }
        Command::Defect { r, input, .. } => {
            let (h, ground) = ctx.read_hypergraph(input, None)?;
            let d = colorability_defect(&h, *r, &limits)?;
            let body = if ctx.json() {
                let mut v = json!({
                    "schema": REPORT_SCHEMA,
                    "kind": "defect",
                    "cd": d.cd,
                    "r": r,
                    "removed": d.certificate.removed,
                    "coloring": d.certificate.coloring,
                    "refuted_sizes": d.refuted_sizes,
                });
                if ground {
                    v["removed_labels"] = json!(conjectures::labels(&d.certificate.removed));
                }
                pretty(&v)
            } else {
                render::defect(&d, ground)
            };
            Ok(Outcome::ok(body))
        }
        Command::Verify { claim } => verify(claim, ctx, &limits),
        Command::Gap {
            variant,
            r,
            input,
            cert_store,
        } => {
            let f = ctx.read_family(input)?;
            let mut report = match variant {
                GapKind::Frick => conjectures::frick_gap(&f, *r, &limits)?,
                GapKind::Weak => conjectures::weak_gap(&f, *r, &limits)?,
            };
            report.family = FamilyDescriptor::new(input.input.clone(), &f);
            let violated = report.verdict == Verdict::Violated;
            let body = if ctx.json() {
                let mut store = CertificateStore::default();
                let doc = json!({ "schema": REPORT_SCHEMA, "kind": "gap", "report": report.to_json(&mut store) });
                pretty(&with_store(doc, store, cert_store.as_ref())?)
            } else {
                render::gap(&report)
            };
            Ok(Outcome::flagged(body, violated))
        }
        Command::Scan(args) => scan(args, ctx, &limits),
        Command::ExportCnf { m, input, kneser } => {
            let (h, _) = ctx.read_hypergraph(input, *kneser)?;
            Ok(Outcome::ok(export_cnf(&h, *m)?))
        }
    }
}

fn verify(claim: &Claim, ctx: &mut Context, limits: &Limits) -> Result<Outcome, CliError> {
    let (name, passed, report, text) = match claim {
        Claim::Prop1 { r, k } => {
            let rep = conjectures::verify_proposition1(*r, *k, limits)?;
            let text = render::checks(&format!("F({},{}) with n = {}·{}+1", rep.n, r, k, r), &rep.checks);
            ("prop1", rep.passed(), serde_json::to_value(&rep), text)
        }
        Claim::Prop2 { r, skip_exact } => {
            let rep = conjectures::verify_proposition2(*r, !skip_exact, limits)?;
            let mut text = render::checks(&format!("augmented family, r = {r}, n = {}", rep.n), &rep.checks);
            match (&rep.exact_cd, &rep.exact_cd_skipped) {
                (Some(d), _) => text.push_str(&format!("exact cd_{r} = {}\n", d.cd)),
                (None, Some(why)) => text.push_str(&format!("exact cd_{r} skipped: {why}\n")),
                (None, None) => {}
            }
            ("prop2", rep.passed(), serde_json::to_value(&rep), text)
        }
        Claim::Remark { r, input } => {
            let f = ctx.read_family(input)?;
            let rep = conjectures::verify_remark_bound(&f, *r, limits)?;
            let text = render::checks(&format!("{}, r = {r}", input.input), &rep.checks);
            ("remark", rep.passed(), serde_json::to_value(&rep), text)
        }
        Claim::Ziegler { n, k, r } => {
            let rep = conjectures::ziegler_check(*n, *k, *r, limits)?;
            let text = format!(
                "chi = {}, bound = {}, {}\n",
                rep.chi.chi,
                rep.afl,
                match rep.comparison {
                    Comparison::Less => "less",
                    Comparison::Equal => "equal",
                    Comparison::Greater => "greater",
                }
            );
            (
                "ziegler",
                rep.comparison == Comparison::Equal,
                serde_json::to_value(&rep),
                text,
            )
        }
    };
    let report = report.expect("reports serialize");
    let body = if ctx.json() {
        pretty(&json!({ "schema": REPORT_SCHEMA, "kind": "verify", "claim": name, "passed": passed, "report": report }))
    } else {
        text
    };
    Ok(Outcome::flagged(body, !passed))
}

fn scan(args: &ScanArgs, ctx: &mut Context, limits: &Limits) -> Result<Outcome, CliError> {
    let params = ScanParams {
        ground_size: (args.n_min, args.n_max),
        member_count: (args.members_min, args.members_max),
        member_size: (args.size_min, args.size_max),
        r: (args.r_min, args.r_max),
        samples: args.samples,
        seed: args.seed,
    };
    let mut planted = Vec::new();
    for path in &args.plant {
        let family = ctx.read_family(&InputArg { input: path.clone() })?;
        planted.push(PlantedFamily {
            name: path.clone(),
            family,
            r: args.plant_r.unwrap_or(args.r_min),
        });
    }
    let report = conjectures::scan_random_families(&params, &planted, limits)?;
    let body = if ctx.json() {
        let mut store = CertificateStore::default();
        let doc = report.to_json(&mut store);
        pretty(&with_store(doc, store, args.cert_store.as_ref())?)
    } else {
        render::scan(&report)
    };
    Ok(Outcome::flagged(body, report.any_violation()))
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut limits = Limits {
        max_edges: cli.max_edges,
        max_defect_size: cli.max_defect_size,
        ..Limits::default()
    }
    .with_threads(cli.threads);
    if let Some(secs) = cli.time_budget_seconds {
        match Duration::try_from_secs_f64(secs) {
            Ok(d) => limits = limits.with_time_budget(d),
            Err(_) => {
                let _ = writeln!(err, "error: invalid --time-budget-seconds {secs}");
                return EXIT_ERROR;
            }
        }
    }
    let mut warnings = Vec::new();
    let result = execute(
        &cli,
        &mut Context {
            format: cli.format,
            limits,
            warnings: &mut warnings,
        },
    );
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &outcome.body).map_err(|e| e.to_string()),
                None => out.write_all(outcome.body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_ERROR
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
