//! Command-line front end.
//!
//! [`run`] parses arguments and dispatches without touching the process, so
//! it can be tested directly; the binary only prints and exits. Exit status
//! is 0 on success, 2 when the computation finished with nothing to report
//! (no rule, no witness, no generating vector), and 1 on errors.

use std::ffi::OsString;
use std::fmt::{Debug, Write as _};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::abelian::abelianization;
use crate::actions::{find_generating_vector, genus_of_action, min_genus_bounded, BOUNDED_SEARCH_LABEL};
use crate::bounds::tables::{
    compute_large_table, compute_odd_table, render_fixture, verify_tables, TABLE_LARGE, TABLE_ODD,
};
use crate::bounds::{BoundsError, ClassContext, Extra, Parity, Registry};
use crate::classify::{classify, ClassProfile, CLASS_NAMES};
use crate::config::Caps;
use crate::coset::derived_chain;
use crate::enumerate::{enumerate_signatures, EnumerationFilter};
use crate::group::{construct_with_cap, parse_table_file, FiniteGroup, GroupSpec};
use crate::signature::{parse_rational, rational_string};
use crate::Signature;

#[derive(Debug, Parser)]
#[command(
    name = "autbound",
    version,
    about = "Exact bounds and witnesses for automorphism groups of Riemann surfaces"
)]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Registry file to use instead of the builtin one.
    #[arg(long, global = true, value_name = "PATH")]
    pub registry: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper bound on |G| for a class and context at genus g.
    Bound(QueryArgs),
    /// Whether the bound is attained at genus g.
    Attainable(QueryArgs),
    /// A group attaining the bound, with its signature.
    Witness(WitnessArgs),
    /// Fuchsian signatures: enumeration, abelianization, derived chains.
    #[command(subcommand)]
    Signatures(SignaturesCommand),
    /// Concrete finite groups: class profile and action search.
    #[command(subcommand)]
    Group(GroupCommand),
    /// The shipped signature tables.
    #[command(subcommand)]
    Tables(TablesCommand),
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Group class, e.g. `supersolvable` or `odd_elements_subgroup`.
    #[arg(long)]
    pub class: String,
    /// Genus of the surface, at least 2.
    #[arg(long)]
    pub genus: u64,
    /// Restrict to groups of odd order.
    #[arg(long)]
    pub odd: bool,
    /// Every prime divisor of |G| is at least this prime.
    #[arg(long, value_name = "P")]
    pub min_prime: Option<u64>,
    /// Order p^a q^b: `p,q`, with `*` for an open prime.
    #[arg(long, value_name = "P,Q")]
    pub pq: Option<String>,
    /// Restrict to groups of prime-power order p^n.
    #[arg(long, value_name = "P", conflicts_with = "not_div_8")]
    pub p_group: Option<u64>,
    /// Restrict to orders not divisible by 8.
    #[arg(long)]
    pub not_div_8: bool,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Build the group and search for the generating vector.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Subcommand)]
pub enum SignaturesCommand {
    /// All signatures with measure at most the threshold.
    Enumerate(EnumerateArgs),
    /// Abelianization of the Fuchsian group.
    Abelianize { signature: String },
    /// Signatures of the iterated commutator subgroups.
    DerivedChain {
        signature: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Measure threshold, e.g. `1/9`.
    #[arg(long)]
    pub threshold: String,
    #[arg(long)]
    pub odd_periods: bool,
    #[arg(long)]
    pub orbit_genus_max: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub min_period: u64,
    #[arg(long)]
    pub max_period: Option<u64>,
    #[arg(long)]
    pub periods_dividing: Option<u64>,
    /// Keep only signatures with nontrivial abelianization.
    #[arg(long)]
    pub nontrivial: bool,
}

#[derive(Debug, Args)]
pub struct GroupSource {
    /// Group spec such as `C 7 : C 3 @ 2`.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub spec: Option<String>,
    /// Multiplication table file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Class flags with certificates.
    Classify(GroupSource),
    /// Search a generating vector for a signature, or the least genus below
    /// a measure threshold.
    Action {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, required_unless_present = "threshold", conflicts_with = "threshold")]
        signature: Option<String>,
        #[arg(long)]
        threshold: Option<String>,
        #[arg(long, default_value_t = 0)]
        orbit_genus_max: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum TablesCommand {
    /// Regenerate the signature tables and compare with the fixtures.
    Verify,
    /// Print a regenerated table in fixture format.
    Regenerate {
        #[arg(value_enum)]
        table: TableName,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableName {
    /// Large-order signatures (`mu <= 1/9`).
    Large,
    /// Odd-period signatures (`mu <= 8/33`).
    Odd,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A rendered answer: JSON document and text form.
struct Report {
    code: i32,
    json: Value,
    text: String,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { code: 0, json, text }
    }
}

/// An error with its variant name.
struct Failure {
    code: i32,
    name: String,
    message: String,
}

fn failure<E: Debug + std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: 1,
        name: variant_name(&e),
        message: e.to_string(),
    }
}

/// Innermost variant name from the `Debug` form, looking through wrapper
/// variants that only forward another module's error.
fn variant_name<E: Debug>(e: &E) -> String {
    const WRAPPERS: [&str; 6] = ["Group", "Signature", "Enumeration", "Coset", "Formula", "Abelian"];
    let dbg = format!("{e:?}");
    let mut s = dbg.as_str();
    loop {
        let end = s.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(s.len());
        let (head, rest) = s.split_at(end);
        match rest.strip_prefix('(') {
            Some(inner) if WRAPPERS.contains(&head) => s = inner,
            _ => return head.to_string(),
        }
    }
}

fn bounds_failure(e: BoundsError) -> Failure {
    let code = match e {
        BoundsError::NoRule { .. } | BoundsError::NoRecipe(_) => 2,
        _ => 1,
    };
    Failure {
        code,
        name: e.name().to_string(),
        message: e.to_string(),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        name: "Usage".into(),
        message: message.into(),
    }
}

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Parse arguments (without the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("autbound")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    dispatch(&cli)
}

pub fn dispatch(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: if cli.json { render_json(&r.json) } else { r.text },
            stderr: String::new(),
        },
        Err(f) => {
            let stdout = if cli.json {
                render_json(&json!({ "error": f.name, "message": f.message }))
            } else {
                String::new()
            };
            Outcome {
                code: f.code,
                stdout,
                stderr: format!("error: {}: {}\n", f.name, f.message),
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let caps = Caps::from_env();
    match &cli.command {
        Command::Bound(q) => {
            let (reg, ctx) = query_setup(cli, q)?;
            bound_report(&reg, q, &ctx)
        }
        Command::Attainable(q) => {
            let (reg, ctx) = query_setup(cli, q)?;
            attain_report(&reg, q, &ctx)
        }
        Command::Witness(w) => {
            let (reg, ctx) = query_setup(cli, &w.query)?;
            witness_report(&reg, w, &ctx, &caps)
        }
        Command::Signatures(SignaturesCommand::Enumerate(a)) => enumerate_report(a),
        Command::Signatures(SignaturesCommand::Abelianize { signature }) => {
            let sig = Signature::parse_unrestricted(signature).map_err(failure)?;
            let ab = abelianization(&sig);
            let mu = sig.measure();
            Ok(Report::ok(
                json!({
                    "signature": sig.to_string(),
                    "measure": rational_string(&mu),
                    "abelianization": ab.to_string(),
                    "finite": ab.is_finite(),
                }),
                format!("{sig}: {ab}\n"),
            ))
        }
        Command::Signatures(SignaturesCommand::DerivedChain { signature, depth }) => {
            let sig = Signature::parse_unrestricted(signature).map_err(failure)?;
            let chain = derived_chain(&sig, *depth);
            let mut text = format!("{sig}\n");
            let mut steps = Vec::new();
            for (k, (s, ab)) in chain.steps.iter().enumerate() {
                let _ = writeln!(text, "step {}: {s}  quotient {ab}", k + 1);
                steps.push(json!({ "signature": s.to_string(), "quotient": ab.to_string() }));
            }
            let _ = writeln!(text, "status: {}", chain.status.name());
            Ok(Report::ok(
                json!({
                    "signature": sig.to_string(),
                    "depth": depth,
                    "steps": steps,
                    "status": chain.status.name(),
                }),
                text,
            ))
        }
        Command::Group(GroupCommand::Classify(src)) => {
            let g = load_group(src, &caps)?;
            let p = classify(&g, caps.subgroup);
            Ok(Report::ok(profile_json(&g, &p), profile_text(&g, &p)))
        }
        Command::Group(GroupCommand::Action {
            source,
            signature,
            threshold,
            orbit_genus_max,
        }) => {
            let g = load_group(source, &caps)?;
            match (signature, threshold) {
                (Some(s), _) => action_report(&g, s, &caps),
                (None, Some(t)) => bounded_report(&g, t, *orbit_genus_max, &caps),
                (None, None) => Err(usage("give --signature or --threshold")),
            }
        }
        Command::Tables(TablesCommand::Regenerate { table }) => {
            let (fixture, rows) = match table {
                TableName::Large => (TABLE_LARGE, compute_large_table()),
                TableName::Odd => (TABLE_ODD, compute_odd_table()),
            };
            let rows = rows.map_err(|e| Failure {
                code: 1,
                name: "Enumeration".into(),
                message: e,
            })?;
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "coefficient": rational_string(&r.coefficient),
                        "signature": r.signature.to_string(),
                        "abelianization": r.abelianization.to_string(),
                        "derived": r.derived.to_string(),
                    })
                })
                .collect();
            Ok(Report::ok(json!({ "rows": json_rows }), render_fixture(fixture, &rows)))
        }
        Command::Tables(TablesCommand::Verify) => {
            let report = verify_tables();
            let mut text = String::new();
            for t in &report.tables {
                let _ = writeln!(
                    text,
                    "{}: {}/{} rows match ({} computed){}",
                    t.name,
                    t.matched,
                    t.expected_rows,
                    t.computed_rows,
                    t.error.as_ref().map(|e| format!(", error: {e}")).unwrap_or_default()
                );
                for row in t.rows.iter().filter(|r| !r.matches) {
                    let _ = writeln!(
                        text,
                        "  mismatch {}: expected {}, computed {}",
                        row.signature,
                        row.expected.as_deref().unwrap_or("-"),
                        row.computed.as_deref().unwrap_or("-")
                    );
                }
            }
            let _ = writeln!(
                text,
                "perfect: {} ({})",
                report.perfect.join(" "),
                if report.perfect_matches { "match" } else { "mismatch" }
            );
            let mut json = serde_json::to_value(&report).expect("report serializes");
            json["all_match"] = Value::Bool(report.all_match());
            Ok(Report::ok(json, text))
        }
    }
}

fn parse_pq(s: &str) -> Result<(Option<u64>, Option<u64>), Failure> {
    let one = |t: &str| -> Result<Option<u64>, Failure> {
        let t = t.trim();
        if t == "*" || t.is_empty() {
            Ok(None)
        } else {
            t.parse()
                .map(Some)
                .map_err(|_| usage(format!("bad prime {t:?} in --pq")))
        }
    };
    let (p, q) = s.split_once(',').ok_or_else(|| usage("--pq takes `p,q`"))?;
    Ok((one(p)?, one(q)?))
}

fn query_setup(cli: &Cli, q: &QueryArgs) -> Result<(Registry, ClassContext), Failure> {
    let reg = Registry::resolve(cli.registry.as_deref()).map_err(bounds_failure)?;
    let ctx = ClassContext {
        parity: if q.odd { Parity::Odd } else { Parity::Any },
        min_prime: q.min_prime,
        pq: q.pq.as_deref().map(parse_pq).transpose()?,
        extra: match (q.p_group, q.not_div_8) {
            (Some(p), _) => Extra::PGroup(p),
            (None, true) => Extra::NotDivisibleBy8,
            (None, false) => Extra::None,
        },
    };
    Ok((reg, ctx))
}

fn bound_report(reg: &Registry, q: &QueryArgs, ctx: &ClassContext) -> Result<Report, Failure> {
    let a = reg.bound(&q.class, ctx, q.genus).map_err(bounds_failure)?;
    let json = serde_json::to_value(&a).expect("answer serializes");
    let mut text = format!(
        "bound: {}\nclass: {}\ncontext: {}\ngenus: {}\nrule: {} ({}) {}\n",
        rational_string(&a.value),
        a.class,
        a.context,
        a.genus,
        a.rule.id,
        a.rule.formula,
        a.rule.anchor
    );
    let others: Vec<&str> = a
        .contributing
        .iter()
        .map(|r| r.id.as_str())
        .filter(|id| *id != a.rule.id)
        .collect();
    if !others.is_empty() {
        let _ = writeln!(text, "also: {}", others.join(", "));
    }
    for e in &a.exceptions {
        let value = e.value.map_or("unknown".to_string(), |v| v.to_string());
        let _ = writeln!(text, "exception: rule {} at genus {} (order {value})", e.rule, e.genus);
    }
    Ok(Report::ok(json, text))
}

fn attain_report(reg: &Registry, q: &QueryArgs, ctx: &ClassContext) -> Result<Report, Failure> {
    let a = reg.attainable(&q.class, ctx, q.genus).map_err(bounds_failure)?;
    let json = serde_json::to_value(&a).expect("answer serializes");
    let text = format!(
        "attainable: {}\nbound: {}\nrule: {} [{}]{}\ncondition: {}\n",
        a.status,
        rational_string(&a.bound),
        a.rule,
        a.predicate,
        if a.inherited { " (inherited)" } else { "" },
        a.condition
    );
    Ok(Report::ok(json, text))
}

fn witness_report(reg: &Registry, w: &WitnessArgs, ctx: &ClassContext, caps: &Caps) -> Result<Report, Failure> {
    let q = &w.query;
    let a = reg.witness(&q.class, ctx, q.genus).map_err(bounds_failure)?;
    let mut json = serde_json::to_value(&a).expect("answer serializes");
    let mut text = format!(
        "group: {}\nsignature: {}\norder: {}\nrule: {} [{}]\n",
        a.group, a.signature, a.order, a.rule, a.recipe
    );
    if w.verify {
        let g = construct_with_cap(&a.group, caps.group).map_err(failure)?;
        let v = find_generating_vector(&g, &a.signature, caps).map_err(failure)?;
        let Some(v) = v else {
            return Err(Failure {
                code: 1,
                name: "VerificationFailed".into(),
                message: format!("{} has no generating vector for {}", a.group, a.signature),
            });
        };
        let genus = genus_of_action(&g, &a.signature).map_err(failure)?;
        let labels: Vec<&str> = v.labels(&g);
        json["vector"] = json!(labels);
        json["verified_genus"] = json!(genus);
        let _ = writeln!(text, "vector: {}\nverified genus: {genus}", labels.join(", "));
    }
    Ok(Report::ok(json, text))
}

fn enumerate_report(a: &EnumerateArgs) -> Result<Report, Failure> {
    let threshold = parse_rational(&a.threshold).ok_or_else(|| usage(format!("bad threshold {:?}", a.threshold)))?;
    let filter = EnumerationFilter {
        orbit_genus_max: a.orbit_genus_max,
        all_periods_odd: a.odd_periods,
        min_period: a.min_period,
        max_period: a.max_period,
        periods_dividing: a.periods_dividing,
    };
    let sigs = enumerate_signatures(&threshold, &filter).map_err(failure)?;
    let two = crate::Rational::from_integer(2.into());
    let mut rows = Vec::new();
    let mut text = String::new();
    for s in sigs {
        let ab = abelianization(&s);
        if a.nontrivial && ab.is_trivial() {
            continue;
        }
        let mu = s.measure();
        let coef = &two / &mu;
        let _ = writeln!(
            text,
            "{s}  measure {}  2/mu {}  {ab}",
            rational_string(&mu),
            rational_string(&coef)
        );
        rows.push(json!({
            "signature": s.to_string(),
            "measure": rational_string(&mu),
            "coefficient": rational_string(&coef),
            "abelianization": ab.to_string(),
        }));
    }
    let code = if rows.is_empty() { 2 } else { 0 };
    Ok(Report {
        code,
        json: json!({ "threshold": rational_string(&threshold), "signatures": rows }),
        text,
    })
}

fn load_group(src: &GroupSource, caps: &Caps) -> Result<FiniteGroup, Failure> {
    match (&src.spec, &src.file) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: 1,
                name: "Io".into(),
                message: format!("{}: {e}", path.display()),
            })?;
            parse_table_file(&text, caps.group).map_err(failure)
        }
        (Some(s), None) => {
            let spec: GroupSpec = s.parse().map_err(failure)?;
            construct_with_cap(&spec, caps.group).map_err(failure)
        }
        (None, None) => Err(usage("give a group spec or --file")),
    }
}

fn action_report(g: &FiniteGroup, signature: &str, caps: &Caps) -> Result<Report, Failure> {
    let sig = Signature::parse_unrestricted(signature).map_err(failure)?;
    let v = find_generating_vector(g, &sig, caps).map_err(failure)?;
    let name = g.provenance().unwrap_or("group").to_string();
    match v {
        None => Ok(Report {
            code: 2,
            json: json!({ "group": name, "order": g.order(), "signature": sig.to_string(), "vector": Value::Null }),
            text: format!("no generating vector of {name} for {sig}\n"),
        }),
        Some(v) => {
            let labels = v.labels(g);
            let genus = genus_of_action(g, &sig).ok();
            let mut text = format!("{name} on {sig}: {}\n", labels.join(", "));
            match genus {
                Some(k) => {
                    let _ = writeln!(text, "genus: {k}");
                }
                None => text.push_str("genus: none (signature is not hyperbolic for this order)\n"),
            }
            Ok(Report::ok(
                json!({
                    "group": name,
                    "order": g.order(),
                    "signature": sig.to_string(),
                    "vector": labels,
                    "genus": genus,
                }),
                text,
            ))
        }
    }
}

fn bounded_report(g: &FiniteGroup, threshold: &str, h_max: u64, caps: &Caps) -> Result<Report, Failure> {
    let t = parse_rational(threshold).ok_or_else(|| usage(format!("bad threshold {threshold:?}")))?;
    let name = g.provenance().unwrap_or("group").to_string();
    let found = min_genus_bounded(g, &t, h_max, caps).map_err(failure)?;
    match found {
        None => Ok(Report {
            code: 2,
            json: json!({ "group": name, "threshold": rational_string(&t), "minimum": Value::Null, "label": BOUNDED_SEARCH_LABEL }),
            text: format!(
                "{name}: no action with measure <= {} ({BOUNDED_SEARCH_LABEL})\n",
                rational_string(&t)
            ),
        }),
        Some(m) => {
            let labels = m.vector.labels(g);
            Ok(Report::ok(
                json!({
                    "group": name,
                    "threshold": rational_string(&t),
                    "label": BOUNDED_SEARCH_LABEL,
                    "minimum": {
                        "genus": m.genus,
                        "signature": m.signature.to_string(),
                        "vector": labels,
                        "searched": m.searched,
                        "skipped": m.skipped,
                    },
                }),
                format!(
                    "{name}: genus {} on {} ({BOUNDED_SEARCH_LABEL}; {} searched, {} skipped)\nvector: {}\n",
                    m.genus,
                    m.signature,
                    m.searched,
                    m.skipped,
                    labels.join(", ")
                ),
            ))
        }
    }
}

fn profile_json(g: &FiniteGroup, p: &ClassProfile) -> Value {
    let classes: serde_json::Map<String, Value> = CLASS_NAMES
        .iter()
        .map(|c| (c.to_string(), json!(p.member_of(c).expect("known class").as_str())))
        .collect();
    json!({
        "group": g.provenance(),
        "order": p.order,
        "abelian": p.abelian,
        "cyclic": p.cyclic,
        "nilpotent": p.nilpotent,
        "solvable": p.solvable,
        "supersolvable": p.supersolvable,
        "zappa_indices": p.zappa_indices,
        "metabelian": p.metabelian,
        "derived_length": p.derived_length,
        "metacyclic": p.metacyclic.as_str(),
        "metacyclic_witness": p.metacyclic_witness,
        "z_group": p.z_group,
        "clt": p.clt.as_str(),
        "clt_missing": p.clt_missing,
        "square_free_order": p.square_free_order,
        "odd_order": p.odd_order,
        "odd_elements_subgroup": p.odd_elements_subgroup,
        "odd_elements_subgroup_order": p.odd_elements_subgroup_order,
        "nilpotent_commutator": p.nilpotent_commutator,
        "commutator_order": p.commutator_order,
        "abelianization": p.abelianization.to_string(),
        "smallest_prime": p.smallest_prime,
        "pq_signature": p.pq_signature,
        "p_group": p.p_group,
        "exponent": p.exponent,
        "classes": classes,
    })
}

fn profile_text(g: &FiniteGroup, p: &ClassProfile) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "group: {}", g.provenance().unwrap_or("table"));
    let _ = writeln!(t, "order: {}", p.order);
    let _ = writeln!(t, "abelian: {}", p.abelian);
    let _ = writeln!(t, "cyclic: {}", p.cyclic);
    let _ = writeln!(t, "nilpotent: {}", p.nilpotent);
    let _ = writeln!(t, "solvable: {}", p.solvable);
    match &p.zappa_indices {
        Some(ix) => {
            let _ = writeln!(t, "supersolvable: true (chain indices {ix:?})");
        }
        None => {
            let _ = writeln!(t, "supersolvable: {}", p.supersolvable);
        }
    }
    let _ = writeln!(t, "metabelian: {}", p.metabelian);
    match p.metacyclic_witness {
        Some((n, q)) => {
            let _ = writeln!(t, "metacyclic: {} (|N| = {n}, |G/N| = {q})", p.metacyclic);
        }
        None => {
            let _ = writeln!(t, "metacyclic: {}", p.metacyclic);
        }
    }
    let _ = writeln!(t, "z_group: {}", p.z_group);
    if p.clt_missing.is_empty() {
        let _ = writeln!(t, "clt: {}", p.clt);
    } else {
        let _ = writeln!(t, "clt: {} missing {:?}", p.clt, p.clt_missing);
    }
    let _ = writeln!(t, "square_free_order: {}", p.square_free_order);
    let _ = writeln!(t, "odd_order: {}", p.odd_order);
    let _ = writeln!(t, "odd_elements_subgroup: {}", p.odd_elements_subgroup);
    let _ = writeln!(
        t,
        "nilpotent_commutator: {} (|G'| = {})",
        p.nilpotent_commutator, p.commutator_order
    );
    let _ = writeln!(t, "abelianization: {}", p.abelianization);
    if let Some(sp) = p.smallest_prime {
        let _ = writeln!(t, "smallest_prime: {sp}");
    }
    if let Some((a, b)) = p.pq_signature {
        let _ = writeln!(t, "pq: ({a},{b})");
    }
    let _ = writeln!(t, "exponent: {}", p.exponent);
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(args.iter().copied())
    }

    #[test]
    fn bound_text_and_json() {
        let o = run_args(&["bound", "--class", "supersolvable", "--odd", "--genus", "3"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.starts_with("bound: 21\n"));
        assert!(o.stdout.contains("odd-supersolvable"));
        let o = run_args(&["--json", "bound", "--class", "general", "--pq", "2,7", "--genus", "49"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["value"], "896");
        assert_eq!(render_json(&v), o.stdout);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["bound", "--class", "exponent", "--genus", "4"]).code, 2);
        assert_eq!(
            run_args(&["witness", "--class", "metacyclic", "--odd", "--genus", "4"]).code,
            2
        );
        let o = run_args(&["bound", "--class", "nope", "--genus", "4"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("UnknownClass"));
        assert_eq!(run_args(&["bound", "--genus", "4"]).code, 1);
        assert_eq!(run_args(&["--help"]).code, 0);
        let o = run_args(&["group", "action", "C 4", "--signature", "(0;2,2,2)"]);
        assert_eq!(o.code, 2);
        let o = run_args(&["group", "classify", "Sym 300"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("SizeCap"), "{}", o.stderr);
    }

    #[test]
    fn signature_commands() {
        let o = run_args(&["signatures", "derived-chain", "(0;2,4,7)", "--depth", "3"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("step 3: (49;-)"), "{}", o.stdout);
        let o = run_args(&["signatures", "abelianize", "(0;2,3,8)"]);
        assert_eq!(o.stdout, "(0;2,3,8): C2\n");
        let o = run_args(&["signatures", "enumerate", "--threshold", "1/42"]);
        assert_eq!(o.stdout.lines().count(), 1);
        let o = run_args(&["signatures", "enumerate", "--threshold", "1/6"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("Unbounded"), "{}", o.stderr);
    }

    #[test]
    fn classify_and_witness() {
        let o = run_args(&["group", "classify", "Alt 4"]);
        assert!(o.stdout.contains("clt: false missing [6]"), "{}", o.stdout);
        let o = run_args(&["witness", "--class", "metacyclic", "--odd", "--genus", "3", "--verify"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.contains("group: C 7 : C 3 @ 2"));
        assert!(o.stdout.contains("verified genus: 3"));
    }
}
