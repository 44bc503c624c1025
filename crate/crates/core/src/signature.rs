//! Fuchsian signatures `(h; m1, ..., mr)` and the Riemann–Hurwitz relation
//! between group order and genus.
//!
//! All arithmetic is exact. [`Signature::new`] only accepts hyperbolic data,
//! i.e. a positive measure `2h - 2 + sum(1 - 1/m_i)`;
//! [`Signature::unrestricted`] also admits spherical and Euclidean data for
//! generating-vector searches. Periods are kept sorted ascending so that
//! equality is structural.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("period {0} is smaller than 2")]
    PeriodTooSmall(u64),
    #[error("signature {0} is not hyperbolic (measure {1} <= 0)")]
    NotHyperbolic(String, Rational),
    #[error("cannot parse signature literal {0:?}: expected (h;m1,...,mr) or (h;-)")]
    Parse(String),
    #[error("genus {0} is below 2")]
    GenusTooSmall(BigInt),
    #[error("NonIntegralGenus: order {order} gives genus 1 + {order}*{measure}/2, which is not an integer")]
    NonIntegralGenus { order: u64, measure: Rational },
    #[error("group order must be at least 2, got {0}")]
    OrderTooSmall(u64),
}

/// A cocompact Fuchsian signature without reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    orbit_genus: u64,
    periods: Vec<u64>,
}

impl Signature {
    pub fn new(orbit_genus: u64, periods: impl Into<Vec<u64>>) -> Result<Self, SignatureError> {
        let sig = Self::unrestricted(orbit_genus, periods)?;
        let mu = sig.measure();
        if !mu.is_positive() {
            return Err(SignatureError::NotHyperbolic(sig.to_string(), mu));
        }
        Ok(sig)
    }

    /// Like [`Signature::new`] without the hyperbolicity check.
    pub fn unrestricted(orbit_genus: u64, periods: impl Into<Vec<u64>>) -> Result<Self, SignatureError> {
        let mut periods = periods.into();
        if let Some(&m) = periods.iter().find(|&&m| m < 2) {
            return Err(SignatureError::PeriodTooSmall(m));
        }
        periods.sort_unstable();
        Ok(Signature { orbit_genus, periods })
    }

    /// Parse `(h;m1,...,mr)` without the hyperbolicity check.
    pub fn parse_unrestricted(s: &str) -> Result<Self, SignatureError> {
        let (h, periods) = parse_signature_parts(s)?;
        Self::unrestricted(h, periods)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.measure().is_positive()
    }

    /// Triangle signature `(0; a, b, c)`.
    pub fn triangle(a: u64, b: u64, c: u64) -> Result<Self, SignatureError> {
        Self::new(0, vec![a, b, c])
    }

    pub fn orbit_genus(&self) -> u64 {
        self.orbit_genus
    }

    /// Periods, sorted ascending.
    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn is_triangle(&self) -> bool {
        self.orbit_genus == 0 && self.periods.len() == 3
    }

    /// `2h - 2 + sum(1 - 1/m_i)`.
    pub fn measure(&self) -> Rational {
        measure_of(self.orbit_genus, &self.periods)
    }

    /// `|G| = 2(g-1)/mu` for a surface-kernel quotient acting on genus `g`.
    pub fn order_from_genus(&self, genus: u64) -> Result<Rational, SignatureError> {
        if genus < 2 {
            return Err(SignatureError::GenusTooSmall(BigInt::from(genus)));
        }
        if !self.is_hyperbolic() {
            return Err(SignatureError::NotHyperbolic(self.to_string(), self.measure()));
        }
        Ok(Rational::from_integer(BigInt::from(2 * (genus - 1))) / self.measure())
    }

    /// Inverse of [`Signature::order_from_genus`]: `g = 1 + n*mu/2`.
    pub fn genus_from_order(&self, order: u64) -> Result<u64, SignatureError> {
        if order < 2 {
            return Err(SignatureError::OrderTooSmall(order));
        }
        let mu = self.measure();
        let g = Rational::one() + Rational::from_integer(BigInt::from(order)) * &mu / BigInt::from(2);
        if !g.is_integer() {
            return Err(SignatureError::NonIntegralGenus { order, measure: mu });
        }
        let g = g.to_integer();
        if g < BigInt::from(2) {
            return Err(SignatureError::GenusTooSmall(g));
        }
        // Orders fit in u64, so the genus does as well.
        Ok(g.to_u64().expect("genus fits in u64"))
    }
}

/// Measure of arbitrary (possibly non-hyperbolic) data.
pub(crate) fn measure_of(orbit_genus: u64, periods: &[u64]) -> Rational {
    let mut mu = Rational::from_integer(BigInt::from(2 * orbit_genus as i128 - 2));
    for &m in periods {
        mu += Rational::one() - Rational::new(BigInt::one(), BigInt::from(m));
    }
    mu
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.orbit_genus)?;
        if self.periods.is_empty() {
            write!(f, "-")?;
        } else {
            let parts: Vec<String> = self.periods.iter().map(u64::to_string).collect();
            write!(f, "{}", parts.join(","))?;
        }
        write!(f, ")")
    }
}

/// Parse `(h;m1,...,mr)` into its raw parts without the hyperbolicity check,
/// preserving the written period order.
pub fn parse_signature_parts(s: &str) -> Result<(u64, Vec<u64>), SignatureError> {
    let err = || SignatureError::Parse(s.to_string());
    let body = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(err)?;
    let (h, rest) = body.split_once(';').ok_or_else(err)?;
    let digits = |t: &str| -> Result<u64, SignatureError> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        t.parse().map_err(|_| err())
    };
    let h = digits(h)?;
    let periods = if rest == "-" || rest == "\u{2212}" {
        Vec::new()
    } else {
        rest.split(',').map(digits).collect::<Result<Vec<_>, _>>()?
    };
    Ok((h, periods))
}

impl FromStr for Signature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (h, periods) = parse_signature_parts(s)?;
        Signature::new(h, periods)
    }
}

/// Render a rational as `p/q`, or `p` when integral.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or `p` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
