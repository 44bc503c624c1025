//! Attainability predicates. Each kind evaluates an exact arithmetic
//! condition on the genus (and the bound's primes) and explains itself.
//!
//! `Yes` is only returned on a sufficient condition, `No` only when a
//! necessary condition fails.

use std::fmt;
use std::str::FromStr;

use crate::arith::{exact_root, factorize, is_prime, is_smooth_over, valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Attainability {
    Yes,
    No,
    NecessaryConditionsHold,
    Unknown,
}

impl Attainability {
    pub fn as_str(self) -> &'static str {
        match self {
            Attainability::Yes => "yes",
            Attainability::No => "no",
            Attainability::NecessaryConditionsHold => "necessary_conditions_hold",
            Attainability::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Attainability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Genus plus the primes the governing rule was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttainInput {
    pub g: u64,
    pub p: Option<u64>,
    pub q: Option<u64>,
}

macro_rules! kinds {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        pub enum AttainKind {
            $($variant,)*
        }

        impl AttainKind {
            pub const ALL: &'static [AttainKind] = &[$(AttainKind::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(AttainKind::$variant => $name,)*
                }
            }
        }

        impl FromStr for AttainKind {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(AttainKind::$variant),)*
                    other => Err(format!("unknown attainability kind {other:?}")),
                }
            }
        }
    };
}

kinds! {
    Unknown => "unknown",
    SupersolvableEighteen => "supersolvable-eighteen",
    SupersolvableEighteenSufficient => "supersolvable-eighteen-sufficient",
    SolvableMacbeath => "solvable-macbeath",
    TwoPower => "two-power",
    ThreePower => "three-power",
    MetabelianTwoQ => "metabelian-two-q",
    OddFifteen => "odd-fifteen",
    SevenTower => "seven-tower",
    MetabelianNine => "metabelian-nine",
    MetacyclicOdd => "metacyclic-odd",
    ZGroupOdd => "z-group-odd",
    SquareFreeOdd => "square-free-odd",
    CyclicSmallPrime => "cyclic-small-prime",
    AbelianSmallPrime => "abelian-small-prime",
    GpGeneral => "gp-general",
    GpSupersolvable => "gp-supersolvable",
    GpNilpotent => "gp-nilpotent",
    GpMetabelian => "gp-metabelian",
    GpMetacyclic => "gp-metacyclic",
    GpZGroup => "gp-z-group",
    GpTwoPrimes => "gp-two-primes",
    CommutatorNilpotent => "commutator-nilpotent",
    OddElements => "odd-elements",
    CltFortyEight => "clt-forty-eight",
    TwoThreeFamily => "two-three-family",
    ThreeFiveFamily => "three-five-family",
    TwoFiveForty => "two-five-forty",
    TwoSeven => "two-seven",
    TwoLargeSixteen => "two-large-sixteen",
    ThreeSeven => "three-seven",
    ThreeLargeNine => "three-large-nine",
}

impl fmt::Display for AttainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `n = base^k` for some `k >= 0`.
fn log_exact(n: u64, base: u64) -> Option<u32> {
    let (k, rest) = valuation(n, base);
    (rest == 1).then_some(k)
}

/// `n = base^(a*k + b)` for some `k >= 0`.
fn power_in_progression(n: u64, base: u64, a: u32, b: u32) -> bool {
    log_exact(n, base).is_some_and(|k| k >= b && (k - b) % a == 0)
}

fn primes_of(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

fn describe_primes(n: u64) -> String {
    let f = factorize(n);
    if f.is_empty() {
        return "1".into();
    }
    f.iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// `2(g-1)/(p-3)` when integral.
fn gp_quotient(g: u64, p: u64) -> Option<u64> {
    let num = 2 * (g - 1);
    (num % (p - 3) == 0).then(|| num / (p - 3))
}

/// `q^(e(p-1))` for a prime `q > p` and `e >= 1`.
fn macbeath_lift(t: u64, p: u64) -> Option<u64> {
    match factorize(t).as_slice() {
        [(q, k)] if *q > p && *k as u64 % (p - 1) == 0 => Some(*q),
        _ => None,
    }
}

/// `v = 5 n^12` with `n` odd.
fn odd_twelfth(v: u64) -> Option<u64> {
    if v % 5 != 0 {
        return None;
    }
    exact_root(v / 5, 12).filter(|n| n % 2 == 1)
}

type Verdict = (Attainability, String);

fn verdict(a: Attainability, why: impl Into<String>) -> Verdict {
    (a, why.into())
}

use Attainability::{NecessaryConditionsHold as Necessary, No, Yes};

impl AttainKind {
    /// Primes the predicate needs bound (`p`, `q`).
    pub fn needs(self) -> (bool, bool) {
        use AttainKind::*;
        match self {
            CyclicSmallPrime | AbelianSmallPrime | GpGeneral | GpSupersolvable | GpNilpotent | GpMetabelian
            | GpMetacyclic | GpZGroup | GpTwoPrimes => (true, false),
            TwoLargeSixteen | ThreeLargeNine => (false, true),
            _ => (false, false),
        }
    }

    pub fn evaluate(self, input: AttainInput) -> Verdict {
        use AttainKind::*;
        let g = input.g;
        let v = g - 1;
        let t = 2 * g + 1;
        let p = input.p.unwrap_or(0);
        let q = input.q.unwrap_or(0);
        if let Some(why) = self.prime_mismatch(input) {
            return verdict(No, why);
        }
        match self {
            Unknown => verdict(Attainability::Unknown, "no attainability statement recorded"),
            SupersolvableEighteen | SupersolvableEighteenSufficient => {
                let bad: Vec<u64> = primes_of(v).into_iter().filter(|r| r % 3 == 2).collect();
                let ok = v % 9 == 0 && bad.is_empty();
                let why = format!(
                    "g-1 = {} ({}): {} by 9, prime divisors = 2 mod 3: {:?}",
                    v,
                    describe_primes(v),
                    if v % 9 == 0 { "divisible" } else { "not divisible" },
                    bad
                );
                match (ok, self) {
                    (true, _) => verdict(Yes, why),
                    (false, SupersolvableEighteen) => verdict(No, why),
                    _ => verdict(Attainability::Unknown, why),
                }
            }
            SolvableMacbeath => {
                if let Some(n) = exact_root(v, 4) {
                    return verdict(Yes, format!("g-1 = {v} = {n}^4"));
                }
                if v % 2 == 0 {
                    if let Some(n) = exact_root(v / 2, 6) {
                        return verdict(Yes, format!("g-1 = {v} = 2*{n}^6"));
                    }
                }
                verdict(Attainability::Unknown, format!("g-1 = {v} is neither n^4 nor 2n^6"))
            }
            TwoPower => match log_exact(v, 2) {
                Some(k) => verdict(Yes, format!("g-1 = 2^{k}")),
                None => verdict(No, format!("g-1 = {v} is not a power of 2")),
            },
            ThreePower => match log_exact(v, 3) {
                Some(k) if k >= 2 => verdict(Yes, format!("g-1 = 3^{k} with exponent >= 2")),
                Some(k) => verdict(Necessary, format!("g-1 = 3^{k}; no construction below 3^2")),
                None => verdict(No, format!("g-1 = {v} is not a power of 3")),
            },
            MetabelianTwoQ => {
                let (a, rest) = valuation(v, 2);
                let one_prime = rest == 1 || crate::arith::prime_power(rest).is_some();
                if a >= 1 && one_prime {
                    verdict(Yes, format!("g-1 = 2^{a} * {}", describe_primes(rest)))
                } else {
                    verdict(
                        Attainability::Unknown,
                        format!("g-1 = {} is not 2^a q^b with a >= 1", describe_primes(v)),
                    )
                }
            }
            OddFifteen => {
                if let Some(n) = odd_twelfth(v) {
                    verdict(Yes, format!("g-1 = 5*{n}^12 with {n} odd"))
                } else if v % 2 == 0 {
                    verdict(No, format!("g-1 = {v} is even, so 15(g-1) is even"))
                } else {
                    verdict(Necessary, format!("g-1 = {v} is odd but not 5n^12"))
                }
            }
            SevenTower => {
                if v % 2 == 0 {
                    if let Some(k) = log_exact(v / 2, 7) {
                        return verdict(Yes, format!("g-1 = 2*7^{k}"));
                    }
                }
                verdict(No, format!("g-1 = {v} is not 2*7^k, so the order is not 3*7^n"))
            }
            MetabelianNine => {
                if v % 9 == 0 && primes_of(v / 9).iter().all(|r| r % 3 == 1) {
                    verdict(Yes, format!("g-1 = 9*{} with all primes = 1 mod 3", v / 9))
                } else {
                    verdict(
                        Attainability::Unknown,
                        format!("g-1 = {} is not 9m with m over primes = 1 mod 3", describe_primes(v)),
                    )
                }
            }
            MetacyclicOdd => {
                let bad: Vec<u64> = primes_of(t).into_iter().filter(|r| r % 3 == 2).collect();
                let why = format!(
                    "2g+1 = {} ({}): {} by 9, prime divisors = 2 mod 3: {:?}",
                    t,
                    describe_primes(t),
                    if t % 9 == 0 { "divisible" } else { "not divisible" },
                    bad
                );
                verdict(if t % 9 != 0 && bad.is_empty() { Yes } else { No }, why)
            }
            ZGroupOdd => {
                let ok = primes_of(t).iter().all(|r| r % 3 == 1);
                verdict(
                    if ok { Yes } else { No },
                    format!(
                        "2g+1 = {} ({}): all prime divisors = 1 mod 3: {ok}",
                        t,
                        describe_primes(t)
                    ),
                )
            }
            SquareFreeOdd => {
                let f = factorize(t);
                let ok = f.iter().all(|&(r, e)| e == 1 && r % 3 == 1);
                verdict(
                    if ok { Yes } else { No },
                    format!(
                        "2g+1 = {} ({}): distinct primes all = 1 mod 3: {ok}",
                        t,
                        describe_primes(t)
                    ),
                )
            }
            CyclicSmallPrime => {
                let num = 2 * g;
                if num % (p - 1) == 0 {
                    let m = num / (p - 1) + 1;
                    if m > 1 && primes_of(m).iter().all(|&r| r > p) {
                        return verdict(Yes, format!("m = 2g/(p-1)+1 = {m} has all prime divisors > {p}"));
                    }
                }
                verdict(
                    Attainability::Unknown,
                    format!("g = {g} is not (p-1)(m-1)/2 with m over primes > {p}"),
                )
            }
            AbelianSmallPrime => {
                let num = 2 * g;
                if num % (p - 1) == 0 {
                    let m = num / (p - 1) + 2;
                    if primes_of(m).first() == Some(&p) {
                        return verdict(Yes, format!("m = 2g/(p-1)+2 = {m} has smallest prime divisor {p}"));
                    }
                }
                verdict(
                    Attainability::Unknown,
                    format!("g = {g} is not (p-1)(m-2)/2 with smallest prime of m equal to {p}"),
                )
            }
            GpGeneral | GpSupersolvable | GpNilpotent | GpMetabelian | GpMetacyclic | GpZGroup | GpTwoPrimes => {
                self.evaluate_small_prime(g, p, input.q)
            }
            CommutatorNilpotent => {
                if power_in_progression(v, 2, 6, 1) || power_in_progression(v, 2, 4, 0) {
                    verdict(Yes, format!("g-1 = {v} is 2^(6n+1) or 2^(4n)"))
                } else {
                    verdict(
                        Attainability::Unknown,
                        format!("g-1 = {v} is neither 2^(6n+1) nor 2^(4n)"),
                    )
                }
            }
            OddElements => {
                if let Some(n) = odd_twelfth(v) {
                    verdict(Yes, format!("g-1 = 5*{n}^12 with {n} odd"))
                } else if g % 10 != 6 {
                    verdict(No, format!("g = {g} is not 6 mod 10"))
                } else {
                    verdict(
                        Necessary,
                        format!("g = {g} is 6 mod 10 but g-1 is not 5n^12 with n odd"),
                    )
                }
            }
            CltFortyEight => {
                if g == 2 || g == 3 {
                    verdict(Yes, format!("explicit CLT groups of order {} are known", 48 * v))
                } else if !is_smooth_over(v, &[2, 3]) {
                    verdict(No, format!("g-1 = {} is not a {{2,3}}-number", describe_primes(v)))
                } else {
                    verdict(Attainability::Unknown, "existence beyond genus 3 is open")
                }
            }
            TwoThreeFamily => {
                if !is_smooth_over(v, &[2, 3]) {
                    return verdict(No, format!("g-1 = {} is not a {{2,3}}-number", describe_primes(v)));
                }
                let (a, rest) = valuation(v, 2);
                let b = valuation(rest, 3).0;
                if (a % 6 == 1 && b % 6 == 0) || (a % 4 == 0 && b % 4 == 0) {
                    verdict(Yes, format!("g-1 = 2^{a} 3^{b}"))
                } else {
                    verdict(Necessary, format!("g-1 = 2^{a} 3^{b} outside the known families"))
                }
            }
            ThreeFiveFamily => {
                if v % 2 == 0 || !is_smooth_over(v, &[3, 5]) {
                    return verdict(No, format!("g-1 = {} is not an odd {{3,5}}-number", describe_primes(v)));
                }
                let (a, rest) = valuation(v, 3);
                let b = valuation(rest, 5).0;
                if a % 12 == 0 && b % 12 == 1 {
                    verdict(Yes, format!("g-1 = 3^{a} 5^{b}"))
                } else {
                    verdict(Necessary, format!("g-1 = 3^{a} 5^{b} outside the known family"))
                }
            }
            TwoFiveForty => {
                if !is_smooth_over(v, &[2, 5]) {
                    return verdict(No, format!("g-1 = {} is not a {{2,5}}-number", describe_primes(v)));
                }
                let n = (v % 4 == 0).then(|| exact_root(v / 4, 10)).flatten();
                match n {
                    Some(n) => verdict(Yes, format!("g-1 = 4*{n}^10")),
                    None => verdict(Necessary, format!("g-1 = {} is not 4 n^10", describe_primes(v))),
                }
            }
            TwoSeven => {
                if v % 3 != 0 || !is_smooth_over(v / 3, &[2, 7]) {
                    return verdict(No, format!("56(g-1)/3 = 56*{v}/3 is not a {{2,7}}-number"));
                }
                let n = (v % 48 == 0).then(|| exact_root(v / 48, 98)).flatten();
                match n {
                    Some(n) => verdict(Yes, format!("g-1 = 48*{n}^98")),
                    None => verdict(Necessary, format!("g-1 = {v} is not 48 n^98")),
                }
            }
            TwoLargeSixteen => {
                if !is_smooth_over(v, &[2, q]) {
                    return verdict(No, format!("g-1 = {} is not a {{2,{q}}}-number", describe_primes(v)));
                }
                if v % 2 == 0 {
                    verdict(Yes, format!("g-1 = {} = 2^(a+1) {q}^b", describe_primes(v)))
                } else {
                    verdict(Necessary, format!("g-1 = {v} is odd"))
                }
            }
            ThreeSeven => {
                if v % 2 != 0 || !is_smooth_over(v / 2, &[3, 7]) {
                    return verdict(No, format!("21(g-1)/2 = 21*{v}/2 is not a {{3,7}}-number"));
                }
                match log_exact(v / 2, 7) {
                    Some(k) => verdict(Yes, format!("g-1 = 2*7^{k}")),
                    None => verdict(Necessary, format!("g-1 = {} is not 2*7^k", describe_primes(v))),
                }
            }
            ThreeLargeNine => {
                if !is_smooth_over(v, &[3, q]) {
                    return verdict(No, format!("g-1 = {} is not a {{3,{q}}}-number", describe_primes(v)));
                }
                if q % 3 == 1 && v % 9 == 0 && v > 9 && log_exact(v / 9, q).is_some() {
                    verdict(Yes, format!("g-1 = 9*{q}^n with {q} = 1 mod 3"))
                } else {
                    verdict(
                        Necessary,
                        format!("g-1 = {} outside the known family", describe_primes(v)),
                    )
                }
            }
        }
    }

    /// Families that only exist for specific primes: a query fixing other
    /// primes cannot reach the bound.
    fn prime_mismatch(self, input: AttainInput) -> Option<String> {
        use AttainKind::*;
        let (want_p, want_q) = match self {
            TwoThreeFamily => (Some(2), Some(3)),
            ThreeFiveFamily => (Some(3), Some(5)),
            TwoFiveForty | TwoSeven | TwoLargeSixteen => (Some(2), None),
            _ => return None,
        };
        let off = |got: Option<u64>, want: Option<u64>| matches!((got, want), (Some(a), Some(b)) if a != b);
        (off(input.p, want_p) || off(input.q, want_q)).then(|| {
            let show = |x: Option<u64>| x.map_or("*".to_string(), |v| v.to_string());
            format!(
                "equality needs ({},{})-groups, query fixes ({},{})",
                show(want_p),
                show(want_q),
                show(input.p),
                show(input.q)
            )
        })
    }

    fn evaluate_small_prime(self, g: u64, p: u64, q: Option<u64>) -> Verdict {
        use AttainKind::*;
        let Some(t) = gp_quotient(g, p) else {
            return verdict(
                No,
                format!("2(g-1)/(p-3) = {}/{} is not an integer", 2 * (g - 1), p - 3),
            );
        };
        let primes = primes_of(t);
        let head = format!("t = 2(g-1)/(p-3) = {} ({})", t, describe_primes(t));
        if primes.iter().any(|&r| r < p) {
            return verdict(No, format!("{head} has a prime divisor below {p}"));
        }
        let p_power = log_exact(t, p).is_some();
        let semidirect_prime = is_prime(t) && t % p == 1;
        let lift = macbeath_lift(t, p);
        let yes = |why: &str| verdict(Yes, format!("{head}: {why}"));
        let necessary = verdict(Necessary, format!("{head}: outside the known constructions"));
        match self {
            GpGeneral => {
                if p_power {
                    yes("power of p")
                } else if semidirect_prime {
                    yes("prime = 1 mod p")
                } else if lift.is_some() {
                    yes("q^(e(p-1)) with q > p prime")
                } else {
                    necessary
                }
            }
            GpSupersolvable => {
                if primes.iter().any(|&r| r != p && r % p != 1) {
                    verdict(No, format!("{head} has a prime divisor other than p and not 1 mod p"))
                } else if p_power {
                    yes("power of p")
                } else if semidirect_prime {
                    yes("prime = 1 mod p")
                } else if lift.is_some_and(|r| r % p == 1) {
                    yes("q^(e(p-1)) with q = 1 mod p")
                } else {
                    necessary
                }
            }
            GpNilpotent => {
                if p_power {
                    yes("power of p")
                } else {
                    verdict(No, format!("{head} is not a power of {p}"))
                }
            }
            GpMetabelian => {
                if t == 1 || t == p {
                    yes("C_p or C_p x C_p")
                } else if semidirect_prime {
                    yes("prime = 1 mod p")
                } else if lift.is_some() {
                    yes("q^(e(p-1)) with q > p prime")
                } else {
                    necessary
                }
            }
            GpMetacyclic => {
                if t == 1 || t == p {
                    yes("C_p or C_p x C_p")
                } else if semidirect_prime {
                    yes("prime = 1 mod p")
                } else {
                    necessary
                }
            }
            GpZGroup => {
                if t % p == 0 {
                    verdict(
                        No,
                        format!("{head}: p^2 would divide the order, but G/G' = C_p and G' has order prime to p"),
                    )
                } else if t == 1 {
                    yes("C_p")
                } else if semidirect_prime {
                    yes("prime = 1 mod p")
                } else {
                    necessary
                }
            }
            GpTwoPrimes => {
                let others: Vec<u64> = primes.iter().copied().filter(|&r| r != p).collect();
                if others.len() != 1 || q.is_some_and(|q| others[0] != q) {
                    verdict(No, format!("{head}: the order p*t is not a ({p},q)-number"))
                } else if semidirect_prime {
                    yes("prime = 1 mod p")
                } else if lift.is_some() {
                    yes("q^(e(p-1)) with q > p prime")
                } else {
                    necessary
                }
            }
            _ => unreachable!("small-prime kinds only"),
        }
    }
}
