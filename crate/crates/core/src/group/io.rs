//! Plain-text multiplication tables.
//!
//! ```text
//! order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! labels
//! e
//! a
//! a^2
//! ```
//!
//! Row `i` lists the products `i*j`. The `labels` section is optional; blank
//! lines and lines starting with `#` are ignored.

use super::{FiniteGroup, GroupError};

pub fn parse_table_file(text: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
    let err = |m: String| GroupError::Table(m);
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| err("empty input".into()))?;
    let n: usize = header
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(format!("expected `order n`, found {header:?}")))?;
    if n > cap {
        return Err(GroupError::SizeCap { order: n as u128, cap });
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let line = lines.next().ok_or_else(|| err(format!("missing table row {row}")))?;
        let entries: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| err(format!("row {row} is not a list of indices")))?;
        if entries.len() != n {
            return Err(err(format!("row {row} has {} entries, expected {n}", entries.len())));
        }
        table.extend(entries);
    }
    let labels = match lines.next() {
        None => None,
        Some("labels") => {
            let l: Vec<String> = lines.by_ref().take(n).map(str::to_string).collect();
            if l.len() != n {
                return Err(err(format!("expected {n} labels, found {}", l.len())));
            }
            Some(l)
        }
        Some(other) => return Err(err(format!("unexpected line {other:?}"))),
    };
    if let Some(extra) = lines.next() {
        return Err(err(format!("trailing content {extra:?}")));
    }
    FiniteGroup::from_table(n, table, labels, cap)
}

pub fn render_table_file(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("order {n}\n");
    for a in 0..n as u32 {
        let row: Vec<String> = (0..n as u32).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str("labels\n");
    for l in g.labels() {
        out.push_str(l);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::quaternion;

    #[test]
    fn round_trip() {
        let q = quaternion(256).unwrap();
        let text = render_table_file(&q);
        let back = parse_table_file(&text, 256).unwrap();
        assert_eq!(back.table(), q.table());
        assert_eq!(back.labels(), q.labels());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_table_file("order 2\n0 1\n", 256).is_err());
        assert!(parse_table_file("order 2\n0 1\n1 1\n", 256).is_err());
        assert!(parse_table_file("ord 2\n0 1\n1 0\n", 256).is_err());
        let g = parse_table_file("# C2\norder 2\n0 1\n1 0\n", 256).unwrap();
        assert_eq!(g.order(), 2);
    }
}
