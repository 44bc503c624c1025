//! Registry of published order bounds, keyed by group class and context.
//!
//! The registry is a closed table loaded from `data/registry.toml` (or a
//! file supplied at run time). A query `(class, context, g)` collects every
//! rule whose class contains the queried class and whose context conditions
//! are implied by the query, then takes the minimum. Nothing is derived
//! beyond that: if no rule applies the answer is [`BoundsError::NoRule`].

pub mod expr;
pub mod predicates;
pub mod tables;
pub mod witness;

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use num::{BigInt, One, ToPrimitive};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::arith::is_prime;
use crate::classify::CLASS_NAMES;
use crate::group::GroupSpec;
use crate::signature::rational_string;
use crate::{Rational, Signature};

pub use expr::{Bindings, Expr, ExprError};
pub use predicates::{AttainInput, AttainKind, Attainability};
pub use witness::{solve_b, Recipe, WitnessPlan};

/// Registry shipped with the crate.
pub const BUILTIN_REGISTRY: &str = include_str!("../../data/registry.toml");

/// Environment variable naming a registry file to use instead of the builtin one.
pub const REGISTRY_ENV: &str = "AUTBOUND_REGISTRY";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("genus {0} is below 2")]
    GenusTooSmall(u64),
    #[error("no rule covers class {class} with context {context}")]
    NoRule { class: String, context: String },
    #[error("no witness: {0}")]
    NoRecipe(String),
    #[error("registry: {0}")]
    Registry(String),
    #[error("formula: {0}")]
    Formula(#[from] ExprError),
}

impl BoundsError {
    /// Variant name, used by the CLI and the C interface.
    pub fn name(&self) -> &'static str {
        match self {
            BoundsError::UnknownClass(_) => "UnknownClass",
            BoundsError::InvalidContext(_) => "InvalidContext",
            BoundsError::GenusTooSmall(_) => "GenusTooSmall",
            BoundsError::NoRule { .. } => "NoRule",
            BoundsError::NoRecipe(_) => "NoRecipe",
            BoundsError::Registry(_) => "Registry",
            BoundsError::Formula(_) => "Formula",
        }
    }
}

// ---------------------------------------------------------------------------
// Class lattice

/// `(subclass, superclass)` pairs; membership is their reflexive-transitive
/// closure. `exponent` is deliberately isolated.
pub const CLASS_EDGES: &[(&str, &str)] = &[
    ("cyclic", "abelian"),
    ("cyclic", "z_group"),
    ("abelian", "nilpotent"),
    ("abelian", "metabelian"),
    ("p_group", "nilpotent"),
    ("nilpotent", "supersolvable"),
    ("square_free", "z_group"),
    ("z_group", "metacyclic"),
    ("metacyclic", "metabelian"),
    ("metacyclic", "supersolvable"),
    ("metabelian", "nilpotent_commutator"),
    ("supersolvable", "nilpotent_commutator"),
    ("supersolvable", "clt"),
    ("supersolvable", "odd_elements_subgroup"),
    ("odd_commutator", "odd_elements_subgroup"),
    ("order_2_mod_4", "odd_elements_subgroup"),
    ("clt", "solvable"),
    ("nilpotent_commutator", "solvable"),
    ("odd_elements_subgroup", "solvable"),
    ("pq_group", "solvable"),
    ("solvable", "general"),
];

pub fn is_known_class(class: &str) -> bool {
    CLASS_NAMES.contains(&class)
}

fn class_index(class: &str) -> Option<usize> {
    CLASS_NAMES.iter().position(|c| *c == class)
}

/// Reflexive-transitive closure of [`CLASS_EDGES`], indexed like `CLASS_NAMES`.
fn closure() -> &'static [[bool; CLASS_NAMES.len()]; CLASS_NAMES.len()] {
    static CLOSURE: OnceLock<[[bool; CLASS_NAMES.len()]; CLASS_NAMES.len()]> = OnceLock::new();
    CLOSURE.get_or_init(|| {
        let n = CLASS_NAMES.len();
        let mut m = [[false; CLASS_NAMES.len()]; CLASS_NAMES.len()];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in CLASS_EDGES {
            let (a, b) = (class_index(a).expect("known"), class_index(b).expect("known"));
            m[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] |= m[i][k] && m[k][j];
                }
            }
        }
        m
    })
}

/// Every group in `sub` lies in `sup`, according to [`CLASS_EDGES`].
pub fn is_subclass(sub: &str, sup: &str) -> bool {
    match (class_index(sub), class_index(sup)) {
        (Some(a), Some(b)) => closure()[a][b],
        _ => sub == sup,
    }
}

// ---------------------------------------------------------------------------
// Query context

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Any,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Extra {
    #[default]
    None,
    /// Restrict to groups of order a power of this prime.
    PGroup(u64),
    NotDivisibleBy8,
}

/// Restrictions on the groups in a query beyond class membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassContext {
    pub parity: Parity,
    /// Every prime divisor of `|G|` is at least this prime.
    pub min_prime: Option<u64>,
    /// `|G| = p^a q^b` with `a, b >= 1`, `p < q`; either prime may be left open.
    pub pq: Option<(Option<u64>, Option<u64>)>,
    pub extra: Extra,
}

impl ClassContext {
    pub fn any() -> Self {
        ClassContext::default()
    }

    pub fn odd() -> Self {
        ClassContext {
            parity: Parity::Odd,
            ..ClassContext::default()
        }
    }

    pub fn with_min_prime(p: u64) -> Self {
        ClassContext {
            min_prime: Some(p),
            ..ClassContext::default()
        }
    }

    pub fn with_pq(p: Option<u64>, q: Option<u64>) -> Self {
        ClassContext {
            pq: Some((p, q)),
            ..ClassContext::default()
        }
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        let bad = |m: String| Err(BoundsError::InvalidContext(m));
        let check_prime = |what: &str, p: u64| {
            if is_prime(p) {
                Ok(())
            } else {
                Err(BoundsError::InvalidContext(format!("{what} {p} is not prime")))
            }
        };
        let odd = self.parity == Parity::Odd;
        if let Some(m) = self.min_prime {
            check_prime("min_prime", m)?;
            if odd && m == 2 {
                return bad("odd parity contradicts min_prime 2".into());
            }
        }
        if let Some((p, q)) = self.pq {
            if let Some(p) = p {
                check_prime("p", p)?;
                if odd && p == 2 {
                    return bad("odd parity contradicts p = 2".into());
                }
                if self.min_prime.is_some_and(|m| m > p) {
                    return bad(format!("p = {p} is below min_prime"));
                }
            }
            if let Some(q) = q {
                check_prime("q", q)?;
                if odd && q == 2 {
                    return bad("odd parity contradicts q = 2".into());
                }
                if self.min_prime.is_some_and(|m| m > q) {
                    return bad(format!("q = {q} is below min_prime"));
                }
            }
            if let (Some(p), Some(q)) = (p, q) {
                if p >= q {
                    return bad(format!("need p < q, got ({p},{q})"));
                }
            }
            if matches!(self.extra, Extra::PGroup(_)) {
                return bad("p_group and pq are exclusive".into());
            }
        }
        if let Extra::PGroup(p) = self.extra {
            check_prime("p_group prime", p)?;
            if odd && p == 2 {
                return bad("odd parity contradicts 2-groups".into());
            }
            if self.min_prime.is_some_and(|m| m > p) {
                return bad(format!("p_group prime {p} is below min_prime"));
            }
        }
        Ok(())
    }

    /// Smallest prime that can divide `|G|` under this context.
    pub fn effective_min_prime(&self) -> u64 {
        let mut m = if self.parity == Parity::Odd { 3 } else { 2 };
        m = m.max(self.min_prime.unwrap_or(2));
        if let Some((Some(p), _)) = self.pq {
            m = m.max(p);
        }
        if let Extra::PGroup(p) = self.extra {
            m = m.max(p);
        }
        m
    }
}

impl fmt::Display for ClassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.parity == Parity::Odd {
            parts.push("odd".to_string());
        }
        if let Some(m) = self.min_prime {
            parts.push(format!("min_prime={m}"));
        }
        if let Some((p, q)) = self.pq {
            let s = |x: Option<u64>| x.map_or("*".to_string(), |v| v.to_string());
            parts.push(format!("pq=({},{})", s(p), s(q)));
        }
        match self.extra {
            Extra::None => {}
            Extra::PGroup(p) => parts.push(format!("p_group={p}")),
            Extra::NotDivisibleBy8 => parts.push("not_divisible_by_8".into()),
        }
        if parts.is_empty() {
            f.write_str("any")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

// ---------------------------------------------------------------------------
// Rules

/// Constraint on a prime in a rule: `*`, a fixed prime, or `>=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimePattern {
    Any,
    Eq(u64),
    AtLeast(u64),
}

impl PrimePattern {
    /// Match against a prime known exactly or only bounded below; returns the
    /// value the rule should be evaluated at (the least admissible one).
    fn bind(self, exact: Option<u64>, lower: u64) -> Option<Option<u64>> {
        match self {
            PrimePattern::Any => Some(exact),
            PrimePattern::Eq(n) => (exact == Some(n)).then_some(Some(n)),
            PrimePattern::AtLeast(n) => {
                let v = exact.unwrap_or(lower);
                (v >= n).then_some(Some(v))
            }
        }
    }

    fn binds(self) -> bool {
        self != PrimePattern::Any
    }
}

impl FromStr for PrimePattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "*" {
            return Ok(PrimePattern::Any);
        }
        let (at_least, digits) = match s.strip_prefix(">=") {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let n: u64 = digits.parse().map_err(|_| format!("bad prime pattern {s:?}"))?;
        if at_least {
            Ok(PrimePattern::AtLeast(n))
        } else if is_prime(n) {
            Ok(PrimePattern::Eq(n))
        } else {
            Err(format!("{n} is not prime"))
        }
    }
}

impl fmt::Display for PrimePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimePattern::Any => f.write_str("*"),
            PrimePattern::Eq(n) => write!(f, "{n}"),
            PrimePattern::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exception {
    pub genus: u64,
    pub value: Option<u64>,
    pub note: Option<String>,
}

/// Named families of exceptional genera that depend on the bound prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionFamily {
    /// `C_q x C_q` for a prime `p < q < 2p` at `g = (q-1)(q-2)/2`.
    SmallSquareAbelian,
}

impl ExceptionFamily {
    pub fn name(self) -> &'static str {
        match self {
            ExceptionFamily::SmallSquareAbelian => "small-square-abelian",
        }
    }

    fn hit(self, g: u64, p: Option<u64>) -> Option<Exception> {
        match self {
            ExceptionFamily::SmallSquareAbelian => {
                let p = p?;
                (p + 1..2 * p)
                    .filter(|&q| is_prime(q))
                    .find(|&q| (q - 1) * (q - 2) / 2 == g)
                    .map(|q| Exception {
                        genus: g,
                        value: Some(q * q),
                        note: Some(format!("C{q} x C{q}")),
                    })
            }
        }
    }
}

impl FromStr for ExceptionFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small-square-abelian" => Ok(ExceptionFamily::SmallSquareAbelian),
            _ => Err(format!("unknown exception family {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub id: String,
    pub classes: Vec<String>,
    pub parity: Parity,
    pub min_prime: Option<u64>,
    pub p_group: Option<PrimePattern>,
    pub pq: Option<(PrimePattern, PrimePattern)>,
    pub not_divisible_by_8: bool,
    pub formula: Expr,
    pub exceptions: Vec<Exception>,
    pub exception_family: Option<ExceptionFamily>,
    pub attain: AttainKind,
    pub witness: Option<Recipe>,
    pub anchor: String,
    pub note: Option<String>,
}

impl Rule {
    /// Number of context conditions, used to rank rules of equal value.
    pub fn specificity(&self) -> usize {
        let fixed = |p: PrimePattern| usize::from(p.binds());
        usize::from(self.parity == Parity::Odd)
            + usize::from(self.min_prime.is_some())
            + self.p_group.map_or(0, |p| 1 + fixed(p))
            + self.pq.map_or(0, |(p, q)| 1 + fixed(p) + fixed(q))
            + usize::from(self.not_divisible_by_8)
    }

    /// Least prime the rule's own hypotheses allow, at the given binding.
    fn domain_min_prime(&self, p: Option<u64>) -> u64 {
        let mut m = if self.parity == Parity::Odd { 3 } else { 2 };
        if self.min_prime.is_some() {
            m = m.max(p.unwrap_or(2));
        }
        if let Some(PrimePattern::Eq(n)) = self.p_group {
            m = m.max(n);
        }
        if self.p_group.is_some_and(|x| x.binds()) || self.pq.is_some_and(|(x, _)| x.binds()) {
            m = m.max(p.unwrap_or(2));
        }
        m
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    rule: Vec<RawRule>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    id: String,
    classes: Vec<String>,
    #[serde(default)]
    parity: Parity,
    min_prime: Option<u64>,
    p_group: Option<String>,
    pq: Option<[String; 2]>,
    #[serde(default)]
    not_divisible_by_8: bool,
    formula: String,
    #[serde(default)]
    exceptions: Vec<RawException>,
    exception_family: Option<String>,
    attain: String,
    witness: Option<String>,
    anchor: String,
    note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawException {
    genus: u64,
    value: Option<u64>,
    note: Option<String>,
}

impl RawRule {
    fn build(self) -> Result<Rule, String> {
        let id = self.id;
        let ctx = |m: String| format!("rule {id:?}: {m}");
        if self.classes.is_empty() {
            return Err(ctx("no classes".into()));
        }
        if let Some(c) = self.classes.iter().find(|c| !is_known_class(c)) {
            return Err(ctx(format!("unknown class {c:?}")));
        }
        if let Some(m) = self.min_prime {
            if !is_prime(m) {
                return Err(ctx(format!("min_prime {m} is not prime")));
            }
        }
        let p_group = self.p_group.as_deref().map(str::parse).transpose().map_err(ctx)?;
        let pq = match self.pq {
            Some([p, q]) => Some((p.parse().map_err(ctx)?, q.parse().map_err(ctx)?)),
            None => None,
        };
        let formula = Expr::parse(&self.formula).map_err(|e| ctx(e.to_string()))?;
        let attain: AttainKind = self.attain.parse().map_err(ctx)?;
        let witness = self
            .witness
            .as_deref()
            .map(str::parse::<Recipe>)
            .transpose()
            .map_err(ctx)?;
        let exception_family = self
            .exception_family
            .as_deref()
            .map(str::parse::<ExceptionFamily>)
            .transpose()
            .map_err(ctx)?;

        let binds_p = self.min_prime.is_some()
            || p_group.is_some_and(|x: PrimePattern| x.binds())
            || pq.is_some_and(|(x, _): (PrimePattern, PrimePattern)| x.binds());
        let binds_q = pq.is_some_and(|(_, x): (PrimePattern, PrimePattern)| x.binds());
        for v in formula.variables() {
            let ok = match v {
                'g' => true,
                'p' => binds_p,
                _ => binds_q,
            };
            if !ok {
                return Err(ctx(format!("formula uses {v} but the rule does not bind it")));
            }
        }
        let (need_p, need_q) = attain.needs();
        if (need_p && !binds_p) || (need_q && !binds_q) {
            return Err(ctx(format!("predicate {attain} needs primes the rule does not bind")));
        }
        if exception_family.is_some() && !binds_p {
            return Err(ctx("exception family needs a bound prime".into()));
        }
        if p_group.is_some() && self.classes.iter().any(|c| c != "p_group") {
            return Err(ctx("p_group patterns belong to class p_group".into()));
        }
        if pq.is_some() && self.classes.iter().any(|c| c != "pq_group") {
            return Err(ctx("pq patterns belong to class pq_group".into()));
        }
        Ok(Rule {
            classes: self.classes,
            parity: self.parity,
            min_prime: self.min_prime,
            p_group,
            pq,
            not_divisible_by_8: self.not_divisible_by_8,
            formula,
            exceptions: self
                .exceptions
                .into_iter()
                .map(|e| Exception {
                    genus: e.genus,
                    value: e.value,
                    note: e.note,
                })
                .collect(),
            exception_family,
            attain,
            witness,
            anchor: self.anchor,
            note: self.note,
            id,
        })
    }
}

// ---------------------------------------------------------------------------
// Answers

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

fn ser_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// A rule as it was evaluated for a query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleRef {
    pub id: String,
    pub anchor: String,
    pub formula: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub p: Option<u64>,
    pub q: Option<u64>,
}

/// A rule that was skipped because the genus is exceptional for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionHit {
    pub rule: String,
    pub genus: u64,
    /// Order of the exceptional group when recorded.
    pub value: Option<u64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundAnswer {
    pub class: String,
    pub context: String,
    pub genus: u64,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// The most specific rule reaching the minimum.
    pub rule: RuleRef,
    /// Every rule reaching the minimum, in registry order.
    pub contributing: Vec<RuleRef>,
    /// Applicable rules skipped at this genus.
    pub exceptions: Vec<ExceptionHit>,
    pub exceptional: bool,
}

impl BoundAnswer {
    /// The bound as an integer: the largest order it allows.
    pub fn floor(&self) -> BigInt {
        self.value.floor().to_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttainAnswer {
    pub class: String,
    pub context: String,
    pub genus: u64,
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
    #[serde(serialize_with = "ser_display")]
    pub status: Attainability,
    pub condition: String,
    pub rule: String,
    pub predicate: String,
    /// The deciding rule is about a larger class or a weaker context, so a
    /// positive verdict could not be transferred.
    pub inherited: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessAnswer {
    pub class: String,
    pub context: String,
    pub genus: u64,
    #[serde(serialize_with = "ser_display")]
    pub group: GroupSpec,
    #[serde(serialize_with = "ser_display")]
    pub signature: Signature,
    pub order: u64,
    pub rule: String,
    pub recipe: String,
}

// ---------------------------------------------------------------------------
// Registry

#[derive(Debug, Clone)]
pub struct Registry {
    rules: Vec<Rule>,
}

struct Applicable<'a> {
    rule: &'a Rule,
    p: Option<u64>,
    q: Option<u64>,
    exact: bool,
    covers: bool,
}

impl Registry {
    pub fn builtin() -> Self {
        Registry::from_toml(BUILTIN_REGISTRY).expect("builtin registry is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self, BoundsError> {
        let raw: RawFile = toml::from_str(text).map_err(|e| BoundsError::Registry(e.to_string()))?;
        let mut rules = Vec::with_capacity(raw.rule.len());
        let mut ids = BTreeSet::new();
        for r in raw.rule {
            if !ids.insert(r.id.clone()) {
                return Err(BoundsError::Registry(format!("duplicate rule id {:?}", r.id)));
            }
            rules.push(r.build().map_err(BoundsError::Registry)?);
        }
        Ok(Registry { rules })
    }

    pub fn load(path: &Path) -> Result<Self, BoundsError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| BoundsError::Registry(format!("{}: {e}", path.display())))?;
        Registry::from_toml(&text)
    }

    /// The file named by `path`, else by [`REGISTRY_ENV`], else the builtin table.
    pub fn resolve(path: Option<&Path>) -> Result<Self, BoundsError> {
        if let Some(p) = path {
            return Registry::load(p);
        }
        match std::env::var_os(REGISTRY_ENV) {
            Some(p) if !p.is_empty() => Registry::load(Path::new(&p)),
            _ => Ok(Registry::builtin()),
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    fn applicable(&self, class: &str, ctx: &ClassContext) -> Vec<Applicable<'_>> {
        let mut query = vec![class];
        if ctx.pq.is_some() {
            query.push("pq_group");
        }
        if matches!(ctx.extra, Extra::PGroup(_)) {
            query.push("p_group");
        }
        let eff = ctx.effective_min_prime();
        let (pq_p, pq_q) = ctx.pq.unwrap_or((None, None));
        let pg = match ctx.extra {
            Extra::PGroup(p) => Some(p),
            _ => None,
        };
        let not8 = ctx.extra == Extra::NotDivisibleBy8 || eff >= 3;

        let mut out = Vec::new();
        for rule in &self.rules {
            let in_class = query.iter().any(|c| rule.classes.iter().any(|rc| is_subclass(c, rc)));
            if !in_class {
                continue;
            }
            if rule.parity == Parity::Odd && eff < 3 {
                continue;
            }
            if rule.not_divisible_by_8 && !not8 {
                continue;
            }
            let mut p = None;
            let mut q = None;
            if let Some(m) = rule.min_prime {
                if eff < m {
                    continue;
                }
                p = Some(eff);
            }
            if let Some(pat) = rule.p_group {
                match pat.bind(pg, eff) {
                    Some(v) => p = v,
                    None => continue,
                }
            }
            if let Some((pp, qp)) = rule.pq {
                match (pp.bind(pq_p, eff), qp.bind(pq_q, eff)) {
                    (Some(a), Some(b)) => {
                        p = a;
                        q = b;
                    }
                    _ => continue,
                }
            }
            // The rule is about exactly the queried groups when one of its
            // classes is the intersection of the query classes.
            let exact = rule
                .classes
                .iter()
                .any(|rc| query.contains(&rc.as_str()) && query.iter().all(|qc| is_subclass(rc, qc)));
            let covers = exact
                && rule.domain_min_prime(p) == eff
                && (ctx.pq.is_none() || rule.pq.is_some())
                && (pg.is_none() || rule.p_group.is_some())
                && (ctx.extra != Extra::NotDivisibleBy8 || rule.not_divisible_by_8 || eff >= 3);
            out.push(Applicable {
                rule,
                p,
                q,
                exact,
                covers,
            });
        }
        out
    }

    fn check(&self, class: &str, ctx: &ClassContext, g: u64) -> Result<(), BoundsError> {
        if !is_known_class(class) {
            return Err(BoundsError::UnknownClass(class.to_string()));
        }
        ctx.validate()?;
        if g < 2 {
            return Err(BoundsError::GenusTooSmall(g));
        }
        Ok(())
    }

    /// Minimum over applicable rules, with the contributing rules and the
    /// index of the governing one.
    fn evaluate<'a>(
        &'a self,
        class: &str,
        ctx: &ClassContext,
        g: u64,
    ) -> Result<(BoundAnswer, Vec<Applicable<'a>>), BoundsError> {
        self.check(class, ctx, g)?;
        let mut exceptions = Vec::new();
        let mut valued = Vec::new();
        for a in self.applicable(class, ctx) {
            let listed = a.rule.exceptions.iter().find(|e| e.genus == g).cloned();
            let family = a.rule.exception_family.and_then(|f| f.hit(g, a.p));
            if let Some(e) = listed.or(family) {
                exceptions.push(ExceptionHit {
                    rule: a.rule.id.clone(),
                    genus: g,
                    value: e.value,
                    note: e.note,
                });
                continue;
            }
            let v = a.rule.formula.eval(&Bindings {
                g: Some(g),
                p: a.p,
                q: a.q,
            })?;
            valued.push((v, a));
        }
        let no_rule = || BoundsError::NoRule {
            class: class.to_string(),
            context: ctx.to_string(),
        };
        let min = valued.iter().map(|(v, _)| v.clone()).min().ok_or_else(no_rule)?;
        let contributing: Vec<Applicable<'a>> = valued.into_iter().filter(|(v, _)| *v == min).map(|(_, a)| a).collect();
        let governing = contributing
            .iter()
            .enumerate()
            .max_by_key(|(i, a)| (a.exact, a.rule.specificity(), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
            .expect("nonempty");
        let refs: Vec<RuleRef> = contributing
            .iter()
            .map(|a| RuleRef {
                id: a.rule.id.clone(),
                anchor: a.rule.anchor.clone(),
                formula: a.rule.formula.to_string(),
                value: min.clone(),
                p: a.p,
                q: a.q,
            })
            .collect();
        let answer = BoundAnswer {
            class: class.to_string(),
            context: ctx.to_string(),
            genus: g,
            value: min,
            rule: refs[governing].clone(),
            contributing: refs,
            exceptional: !exceptions.is_empty(),
            exceptions,
        };
        Ok((answer, contributing))
    }

    pub fn bound(&self, class: &str, ctx: &ClassContext, g: u64) -> Result<BoundAnswer, BoundsError> {
        self.evaluate(class, ctx, g).map(|(a, _)| a)
    }

    /// Is the bound attained at `g`? A `yes` is only taken from a rule stated
    /// for exactly this class and context; rules about larger classes can
    /// only rule the bound out.
    pub fn attainable(&self, class: &str, ctx: &ClassContext, g: u64) -> Result<AttainAnswer, BoundsError> {
        let (bound, contributing) = self.evaluate(class, ctx, g)?;
        let mut best: Option<(u8, AttainAnswer)> = None;
        for a in &contributing {
            let (status, condition) = a.rule.attain.evaluate(AttainInput { g, p: a.p, q: a.q });
            let status = match (a.covers, status) {
                (true, s) | (false, s @ (Attainability::No | Attainability::NecessaryConditionsHold)) => s,
                (false, _) => Attainability::Unknown,
            };
            // Yes from a covering rule, then No, then necessity, then unknown.
            let rank = match status {
                Attainability::Yes => 0,
                Attainability::No => 1,
                Attainability::NecessaryConditionsHold => 2,
                Attainability::Unknown => 3,
            };
            let rank = rank * 2 + u8::from(!a.exact);
            if best.as_ref().is_none_or(|(r, _)| rank < *r) {
                best = Some((
                    rank,
                    AttainAnswer {
                        class: class.to_string(),
                        context: ctx.to_string(),
                        genus: g,
                        bound: bound.value.clone(),
                        status,
                        condition,
                        rule: a.rule.id.clone(),
                        predicate: a.rule.attain.name().to_string(),
                        inherited: !a.covers,
                    },
                ));
            }
        }
        Ok(best.expect("evaluate returns at least one rule").1)
    }

    /// A group attaining the bound, when the deciding rule carries a recipe
    /// that applies at this genus.
    pub fn witness(&self, class: &str, ctx: &ClassContext, g: u64) -> Result<WitnessAnswer, BoundsError> {
        let att = self.attainable(class, ctx, g)?;
        if att.status != Attainability::Yes {
            return Err(BoundsError::NoRecipe(format!(
                "attainability is {} ({})",
                att.status, att.condition
            )));
        }
        let (_, contributing) = self.evaluate(class, ctx, g)?;
        let a = contributing
            .iter()
            .find(|a| a.rule.id == att.rule)
            .expect("deciding rule contributes");
        let recipe = a
            .rule
            .witness
            .ok_or_else(|| BoundsError::NoRecipe(format!("rule {} has no construction", a.rule.id)))?;
        let plan = recipe.plan(g, a.p).map_err(BoundsError::NoRecipe)?;
        let order = att.bound.to_integer();
        if !att.bound.denom().is_one() || order.to_u64() != Some(plan.order) {
            return Err(BoundsError::NoRecipe(format!(
                "recipe {} gives order {}, bound is {}",
                recipe.name(),
                plan.order,
                rational_string(&att.bound)
            )));
        }
        Ok(WitnessAnswer {
            class: class.to_string(),
            context: ctx.to_string(),
            genus: g,
            group: plan.spec,
            signature: plan.signature,
            order: plan.order,
            rule: a.rule.id.clone(),
            recipe: recipe.name().to_string(),
        })
    }
}
