//! The group construction grammar.
//!
//! ```text
//! expr  := term (("x" | "×") term)*
//! term  := "(" expr ")" | atom
//! atom  := "C" n [":" "C" k "@" b]
//!        | "GL2" p | "SL2" p | "Sym" k | "Alt" k | "Q8" | "FERMAT" n
//!        | ("MAT" | "MATF") q ("⋊" | ":") "C" n ["@" ("[" c1 "," c0 "]" | "auto")]
//! ```
//!
//! `C m : C n @ b` lets the generator of `C_n` act on `C_m` by `x -> x^b`.
//! `MAT q ⋊ C n @ [c1,c0]` is `C_q x C_q` with `C_n` acting through the
//! companion matrix of `x^2 + c1 x + c0` over `F_q`; `auto` (the default)
//! picks the least admissible polynomial. `MATF` adjoins the Frobenius
//! involution, giving `(C_q x C_q) : (C_n : C_2)`. `FERMAT n` is
//! `((C_n)^3 / diagonal) : S_3`.

use std::fmt;
use std::str::FromStr;

use super::builders::{self, Quadratic};
use super::{FiniteGroup, GroupError};
use crate::config::Caps;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixAction {
    Auto,
    Poly { c1: u64, c0: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    CyclicSemidirect { m: u64, n: u64, b: u64 },
    GeneralLinear(u64),
    SpecialLinear(u64),
    Symmetric(u64),
    Alternating(u64),
    Quaternion,
    Matrix { q: u64, n: u64, action: MatrixAction },
    Semilinear { q: u64, n: u64, action: MatrixAction },
    Fermat(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    /// Order of the group the spec describes, computed without building it.
    /// Saturates at `u128::MAX`.
    pub fn expected_order(&self) -> u128 {
        let mul = |xs: &[u128]| xs.iter().fold(1u128, |a, &x| a.saturating_mul(x));
        let factorial = |k: u64| (1..=k as u128).fold(1u128, u128::saturating_mul);
        match *self {
            GroupSpec::Cyclic(n) => n as u128,
            GroupSpec::CyclicSemidirect { m, n, .. } => mul(&[m as u128, n as u128]),
            GroupSpec::GeneralLinear(p) => {
                let p = p as u128;
                mul(&[p * p - 1, p * p - p])
            }
            GroupSpec::SpecialLinear(p) => {
                let p = p as u128;
                mul(&[p * p - 1, p])
            }
            GroupSpec::Symmetric(k) => factorial(k),
            GroupSpec::Alternating(k) => match factorial(k) {
                u128::MAX => u128::MAX,
                f => (f / 2).max(1),
            },
            GroupSpec::Quaternion => 8,
            GroupSpec::Matrix { q, n, .. } => mul(&[q as u128, q as u128, n as u128]),
            GroupSpec::Semilinear { q, n, .. } => mul(&[2, q as u128, q as u128, n as u128]),
            GroupSpec::Fermat(n) => mul(&[6, n as u128, n as u128]),
            GroupSpec::Product(ref a, ref b) => a.expected_order().saturating_mul(b.expected_order()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C {n}"),
            GroupSpec::CyclicSemidirect { m, n, b } => write!(f, "C {m} : C {n} @ {b}"),
            GroupSpec::GeneralLinear(p) => write!(f, "GL2 {p}"),
            GroupSpec::SpecialLinear(p) => write!(f, "SL2 {p}"),
            GroupSpec::Symmetric(k) => write!(f, "Sym {k}"),
            GroupSpec::Alternating(k) => write!(f, "Alt {k}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Matrix { q, n, action } => match action {
                MatrixAction::Auto => write!(f, "MAT {q} ⋊ C {n} @ auto"),
                MatrixAction::Poly { c1, c0 } => write!(f, "MAT {q} ⋊ C {n} @ [{c1},{c0}]"),
            },
            GroupSpec::Semilinear { q, n, action } => match action {
                MatrixAction::Auto => write!(f, "MATF {q} ⋊ C {n} @ auto"),
                MatrixAction::Poly { c1, c0 } => write!(f, "MATF {q} ⋊ C {n} @ [{c1},{c0}]"),
            },
            GroupSpec::Fermat(n) => write!(f, "FERMAT {n}"),
            GroupSpec::Product(a, b) => {
                let wrap = |g: &GroupSpec| match g {
                    GroupSpec::CyclicSemidirect { .. } | GroupSpec::Matrix { .. } | GroupSpec::Semilinear { .. } => {
                        format!("({g})")
                    }
                    _ => g.to_string(),
                };
                let right = match **b {
                    GroupSpec::Product(..) => format!("({b})"),
                    _ => wrap(b),
                };
                write!(f, "{} x {}", wrap(a), right)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(u64),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if "()[],:@×⋊".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c.is_ascii_alphanumeric() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.extend(split_word(&word)?);
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

const KEYWORDS: [&str; 11] = [
    "C", "GL2", "SL2", "Sym", "Alt", "Q8", "MAT", "MATF", "FERMAT", "auto", "x",
];

fn split_word(word: &str) -> Result<Vec<Tok>, String> {
    if word.bytes().all(|b| b.is_ascii_digit()) {
        return word
            .parse()
            .map(|n| vec![Tok::Num(n)])
            .map_err(|_| format!("number {word} is too large"));
    }
    if KEYWORDS.contains(&word) {
        return Ok(vec![Tok::Word(word.to_string())]);
    }
    // glued forms such as C7 or Sym4
    let split = word.find(|c: char| c.is_ascii_digit()).unwrap_or(word.len());
    let (head, tail) = word.split_at(split);
    if ["C", "Sym", "Alt", "MAT", "MATF", "FERMAT"].contains(&head) && tail.bytes().all(|b| b.is_ascii_digit()) {
        let n = tail.parse().map_err(|_| format!("number {tail} is too large"))?;
        return Ok(vec![Tok::Word(head.to_string()), Tok::Num(n)]);
    }
    Err(format!("unknown word {word:?}"))
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn num(&mut self) -> Result<u64, String> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            other => Err(format!("expected a number, found {other:?}")),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), String> {
        match self.next() {
            Some(Tok::Sym(d)) if d == c => Ok(()),
            other => Err(format!("expected {c:?}, found {other:?}")),
        }
    }

    fn word(&mut self, w: &str) -> Result<(), String> {
        match self.next() {
            Some(Tok::Word(ref v)) if v == w => Ok(()),
            other => Err(format!("expected {w:?}, found {other:?}")),
        }
    }

    fn is_times(&self) -> bool {
        matches!(self.peek(), Some(Tok::Sym('×'))) || matches!(self.peek(), Some(Tok::Word(w)) if w == "x")
    }

    fn expr(&mut self) -> Result<GroupSpec, String> {
        let mut acc = self.term()?;
        while self.is_times() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = GroupSpec::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GroupSpec, String> {
        if let Some(Tok::Sym('(')) = self.peek() {
            self.pos += 1;
            let e = self.expr()?;
            self.sym(')')?;
            return Ok(e);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<GroupSpec, String> {
        let w = match self.next() {
            Some(Tok::Word(w)) => w,
            other => return Err(format!("expected a group name, found {other:?}")),
        };
        Ok(match w.as_str() {
            "C" => {
                let m = self.num()?;
                if let Some(Tok::Sym(':')) = self.peek() {
                    self.pos += 1;
                    self.word("C")?;
                    let n = self.num()?;
                    self.sym('@')?;
                    let b = self.num()?;
                    GroupSpec::CyclicSemidirect { m, n, b }
                } else {
                    GroupSpec::Cyclic(m)
                }
            }
            "GL2" => GroupSpec::GeneralLinear(self.num()?),
            "SL2" => GroupSpec::SpecialLinear(self.num()?),
            "Sym" => GroupSpec::Symmetric(self.num()?),
            "Alt" => GroupSpec::Alternating(self.num()?),
            "Q8" => GroupSpec::Quaternion,
            "FERMAT" => GroupSpec::Fermat(self.num()?),
            "MAT" | "MATF" => {
                let q = self.num()?;
                match self.next() {
                    Some(Tok::Sym('⋊')) | Some(Tok::Sym(':')) => {}
                    other => return Err(format!("expected ⋊ after MAT {q}, found {other:?}")),
                }
                self.word("C")?;
                let n = self.num()?;
                let action = if let Some(Tok::Sym('@')) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Word(ref a)) if a == "auto" => MatrixAction::Auto,
                        Some(Tok::Sym('[')) => {
                            let c1 = self.num()?;
                            self.sym(',')?;
                            let c0 = self.num()?;
                            self.sym(']')?;
                            MatrixAction::Poly { c1, c0 }
                        }
                        other => return Err(format!("expected [c1,c0] or auto, found {other:?}")),
                    }
                } else {
                    MatrixAction::Auto
                };
                if w == "MAT" {
                    GroupSpec::Matrix { q, n, action }
                } else {
                    GroupSpec::Semilinear { q, n, action }
                }
            }
            other => return Err(format!("unexpected {other:?}")),
        })
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wrap = |m: String| GroupError::Spec(s.to_string(), m);
        let toks = tokenize(s).map_err(wrap)?;
        let mut p = Parser { toks, pos: 0 };
        let spec = p.expr().map_err(wrap)?;
        if p.pos != p.toks.len() {
            return Err(wrap(format!("trailing input at token {}", p.pos)));
        }
        Ok(spec)
    }
}

/// Build and verify the group, refusing orders above the environment cap.
pub fn construct(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    construct_with_cap(spec, Caps::from_env().group)
}

pub fn construct_with_cap(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup, GroupError> {
    let order = spec.expected_order();
    if order > cap as u128 {
        return Err(GroupError::SizeCap { order, cap });
    }
    Ok(build(spec, cap)?.with_provenance(spec.to_string()))
}

fn build(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup, GroupError> {
    match *spec {
        GroupSpec::Cyclic(n) => builders::cyclic(n, cap),
        GroupSpec::CyclicSemidirect { m, n, b } => builders::semidirect_cyclic(m, n, b, cap),
        GroupSpec::GeneralLinear(p) => builders::general_linear(p, cap),
        GroupSpec::SpecialLinear(p) => builders::special_linear(p, cap),
        GroupSpec::Symmetric(k) => builders::symmetric(k, cap),
        GroupSpec::Alternating(k) => builders::alternating(k, cap),
        GroupSpec::Quaternion => builders::quaternion(cap),
        GroupSpec::Fermat(n) => builders::fermat(n, cap),
        GroupSpec::Matrix { q, n, action } | GroupSpec::Semilinear { q, n, action } => {
            let f = match action {
                MatrixAction::Poly { c1, c0 } => Quadratic { c1, c0 },
                MatrixAction::Auto => {
                    if !crate::arith::is_prime(q) {
                        return Err(GroupError::Spec(spec.to_string(), format!("{q} is not prime")));
                    }
                    builders::auto_quadratic(q, n).ok_or_else(|| {
                        GroupError::NotIrreducible(format!(
                            "no irreducible quadratic over F_{q} has roots of order {n}"
                        ))
                    })?
                }
            };
            if matches!(spec, GroupSpec::Matrix { .. }) {
                builders::matrix_semidirect(q, n, f, cap)
            } else {
                builders::semilinear_semidirect(q, n, f, cap)
            }
        }
        GroupSpec::Product(ref a, ref b) => {
            let ga = build(a, cap)?;
            let gb = build(b, cap)?;
            builders::direct_product(&ga, &gb, cap)
        }
    }
}

/// Parse and construct in one step.
pub fn parse_group(s: &str) -> Result<FiniteGroup, GroupError> {
    construct(&s.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn grammar() {
        assert_eq!(spec("C 7 : C 3 @ 2"), GroupSpec::CyclicSemidirect { m: 7, n: 3, b: 2 });
        assert_eq!(spec("C7:C3@2"), spec("C 7 : C 3 @ 2"));
        assert_eq!(spec("Alt 4 x C 2").to_string(), "Alt 4 x C 2");
        assert_eq!(spec("C 3 × C 9").to_string(), "C 3 x C 9");
        assert_eq!(spec("MAT 5 ⋊ C 3").to_string(), "MAT 5 ⋊ C 3 @ auto");
        assert_eq!(spec("MAT 5 : C 3 @ [1,1]").to_string(), "MAT 5 ⋊ C 3 @ [1,1]");
        assert_eq!(spec("(C 2 x C 2) x C 2").expected_order(), 8);
        assert_eq!(spec("C 2 x (C 2 x C 3)").to_string(), "C 2 x (C 2 x C 3)");
        assert_eq!(spec("GL2 3").expected_order(), 48);
        assert_eq!(spec("FERMAT 4").expected_order(), 96);
        assert_eq!(spec("Sym 300").expected_order(), u128::MAX);
        for bad in [
            "",
            "C",
            "C 3 :",
            "GL 3",
            "C 3 x",
            "Foo 3",
            "C 3 C 4",
            "MAT 5 ⋊ C 3 @ [1]",
        ] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "C 7 : C 3 @ 2",
            "Alt 4 x C 2",
            "MAT 5 ⋊ C 3 @ [1,1]",
            "(C 7 : C 3 @ 2) x C 3",
            "Q8 x C 2",
        ] {
            assert_eq!(spec(&spec(s).to_string()), spec(s));
        }
    }

    #[test]
    fn construction() {
        let g = construct_with_cap(&spec("C 7 : C 3 @ 2"), 256).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.provenance(), Some("C 7 : C 3 @ 2"));
        assert!(matches!(
            construct_with_cap(&spec("C 5 : C 3 @ 2"), 256),
            Err(GroupError::InvalidTwist { .. })
        ));
        assert!(matches!(
            construct_with_cap(&spec("Sym 5 x C 5"), 256),
            Err(GroupError::SizeCap { order: 600, .. })
        ));
        assert_eq!(construct_with_cap(&spec("MAT 5 ⋊ C 3"), 256).unwrap().order(), 75);
        assert_eq!(spec("MATF 5 : C 3").to_string(), "MATF 5 ⋊ C 3 @ auto");
        assert_eq!(construct_with_cap(&spec("MATF 5 ⋊ C 3"), 256).unwrap().order(), 150);
    }
}
