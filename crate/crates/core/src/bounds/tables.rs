//! Regeneration of the two signature tables shipped as fixtures.
//!
//! The large-order table lists every signature with `2/mu >= 18` and nontrivial
//! abelianization; the odd table lists odd-period signatures with
//! `2/mu >= 33/4`. Each row carries `Gamma/Gamma'` and the signature of
//! `Gamma'`.

use num::Zero;
use serde::Serialize;

use crate::abelian::{abelianization, FiniteAbelianGroup};
use crate::coset::derived_subgroup_signature;
use crate::enumerate::{enumerate_signatures, EnumerationFilter};
use crate::signature::{parse_rational, rational_string};
use crate::{Rational, Signature};

pub const TABLE_LARGE: &str = include_str!("../../data/table2.txt");
pub const TABLE_ODD: &str = include_str!("../../data/table3.txt");

/// Signatures in the large-order range whose abelianization is trivial, so
/// no solvable group is a quotient.
pub const PERFECT_EXPECTED: [&str; 4] = ["(0;2,3,7)", "(0;2,3,11)", "(0;2,3,13)", "(0;2,3,17)"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    /// `|G| / (g-1) = 2/mu`.
    pub coefficient: Rational,
    pub signature: Signature,
    pub abelianization: FiniteAbelianGroup,
    pub derived: Signature,
}

impl TableRow {
    pub fn render(&self) -> String {
        format!(
            "{} | {} | {} | {}",
            rational_string(&self.coefficient),
            self.signature,
            self.abelianization,
            self.derived
        )
    }
}

/// Parse a fixture: `coef | signature | abelianization | derived` per line,
/// `#` comments and blank lines ignored.
pub fn parse_fixture(text: &str) -> Result<Vec<TableRow>, String> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| format!("line {}: {m}", n + 1);
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        let [coef, sig, ab, derived] = cols[..] else {
            return Err(err(format!("expected 4 columns, got {}", cols.len())));
        };
        rows.push(TableRow {
            coefficient: parse_rational(coef).ok_or_else(|| err(format!("bad coefficient {coef:?}")))?,
            signature: sig.parse().map_err(|e| err(format!("{e}")))?,
            abelianization: ab.parse().map_err(|e| err(format!("{e}")))?,
            derived: derived.parse().map_err(|e| err(format!("{e}")))?,
        });
    }
    Ok(rows)
}

fn build_rows(threshold: Rational, filter: &EnumerationFilter) -> Result<Vec<TableRow>, String> {
    let two = Rational::from_integer(2.into());
    let mut rows = Vec::new();
    for sig in enumerate_signatures(&threshold, filter).map_err(|e| e.to_string())? {
        let ab = abelianization(&sig);
        if ab.is_trivial() {
            continue;
        }
        let (derived, quotient) = derived_subgroup_signature(&sig).map_err(|e| e.to_string())?;
        rows.push(TableRow {
            coefficient: &two / sig.measure(),
            signature: sig,
            abelianization: quotient,
            derived,
        });
    }
    Ok(rows)
}

/// Signatures with `mu <= 1/9` and nontrivial abelianization.
pub fn compute_large_table() -> Result<Vec<TableRow>, String> {
    build_rows(Rational::new(1.into(), 9.into()), &EnumerationFilter::default())
}

/// Odd-period signatures with `mu <= 8/33` and nontrivial abelianization.
pub fn compute_odd_table() -> Result<Vec<TableRow>, String> {
    let filter = EnumerationFilter {
        all_periods_odd: true,
        ..EnumerationFilter::default()
    };
    build_rows(Rational::new(8.into(), 33.into()), &filter)
}

/// Perfect signatures (trivial abelianization) with `mu <= 1/9`.
pub fn compute_perfect() -> Result<Vec<Signature>, String> {
    let all = enumerate_signatures(&Rational::new(1.into(), 9.into()), &EnumerationFilter::default())
        .map_err(|e| e.to_string())?;
    Ok(all.into_iter().filter(|s| abelianization(s).is_trivial()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub signature: String,
    pub expected: Option<String>,
    pub computed: Option<String>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub name: String,
    pub expected_rows: usize,
    pub computed_rows: usize,
    pub matched: usize,
    pub rows: Vec<RowCheck>,
    pub error: Option<String>,
}

impl TableReport {
    pub fn all_match(&self) -> bool {
        self.error.is_none() && self.matched == self.expected_rows && self.computed_rows == self.expected_rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TablesReport {
    pub tables: Vec<TableReport>,
    pub perfect: Vec<String>,
    pub perfect_matches: bool,
}

impl TablesReport {
    pub fn all_match(&self) -> bool {
        self.perfect_matches && self.tables.iter().all(TableReport::all_match)
    }
}

/// Diff computed rows against a fixture, keyed by signature, keeping the
/// computed order and appending fixture rows that were not produced.
pub fn diff_rows(name: &str, fixture: &str, computed: Result<Vec<TableRow>, String>) -> TableReport {
    let expected = match parse_fixture(fixture) {
        Ok(r) => r,
        Err(e) => return failed(name, 0, format!("fixture: {e}")),
    };
    let computed = match computed {
        Ok(r) => r,
        Err(e) => return failed(name, expected.len(), e),
    };
    let mut rows = Vec::new();
    let mut matched = 0;
    for c in &computed {
        let e = expected.iter().find(|e| e.signature == c.signature);
        let ok = e == Some(c);
        matched += usize::from(ok);
        rows.push(RowCheck {
            signature: c.signature.to_string(),
            expected: e.map(TableRow::render),
            computed: Some(c.render()),
            matches: ok,
        });
    }
    for e in expected
        .iter()
        .filter(|e| !computed.iter().any(|c| c.signature == e.signature))
    {
        rows.push(RowCheck {
            signature: e.signature.to_string(),
            expected: Some(e.render()),
            computed: None,
            matches: false,
        });
    }
    TableReport {
        name: name.to_string(),
        expected_rows: expected.len(),
        computed_rows: computed.len(),
        matched,
        rows,
        error: None,
    }
}

fn failed(name: &str, expected_rows: usize, error: String) -> TableReport {
    TableReport {
        name: name.to_string(),
        expected_rows,
        computed_rows: 0,
        matched: 0,
        rows: Vec::new(),
        error: Some(error),
    }
}

/// The computed rows in fixture format, columns aligned, with the fixture's
/// comment header.
pub fn render_fixture(fixture: &str, rows: &[TableRow]) -> String {
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            [
                rational_string(&r.coefficient),
                r.signature.to_string(),
                r.abelianization.to_string(),
                r.derived.to_string(),
            ]
        })
        .collect();
    let width = |i: usize| cells.iter().map(|c| c[i].len()).max().unwrap_or(0);
    let widths = [width(0), width(1), width(2)];
    let mut out: String = fixture
        .lines()
        .take_while(|l| l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    for c in &cells {
        out.push_str(&format!(
            "{:w0$} | {:w1$} | {:w2$} | {}\n",
            c[0],
            c[1],
            c[2],
            c[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        ));
    }
    out
}

/// Regenerate both tables and the perfect list and compare with the fixtures.
pub fn verify_tables() -> TablesReport {
    let large = diff_rows("large-order", TABLE_LARGE, compute_large_table());
    let odd = diff_rows("odd-order", TABLE_ODD, compute_odd_table());
    let perfect: Vec<String> = compute_perfect()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .unwrap_or_default();
    let perfect_matches = perfect.iter().map(String::as_str).eq(PERFECT_EXPECTED);
    TablesReport {
        tables: vec![large, odd],
        perfect,
        perfect_matches,
    }
}

/// `2/mu` of a signature; zero for non-hyperbolic data.
pub fn coefficient(sig: &Signature) -> Rational {
    let mu = sig.measure();
    if mu <= Rational::zero() {
        Rational::zero()
    } else {
        Rational::from_integer(2.into()) / mu
    }
}
