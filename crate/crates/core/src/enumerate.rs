//! Exhaustive enumeration of signatures below a measure threshold.
//!
//! Each period contributes at least `1 - 1/min_period >= 1/2` and the orbit
//! genus contributes `2h`, so `h` and `r` are bounded by the threshold. The
//! periods themselves are only bounded when the threshold sits below every
//! accumulation point of the measure spectrum (e.g. `1/6`, the limit of
//! `(0;2,3,m)`); otherwise a period cap is required and its absence is
//! reported instead of looping.

use num::{BigInt, One, Signed};
use thiserror::Error;

use crate::signature::{measure_of, rational_string, Signature};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("measure threshold must be positive, got {0}")]
    NonPositiveThreshold(String),
    #[error(
        "infinitely many signatures below {threshold} extend (h={orbit_genus}; {prefix:?}, ...); set a period cap"
    )]
    Unbounded {
        threshold: String,
        orbit_genus: u64,
        prefix: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationFilter {
    pub orbit_genus_max: Option<u64>,
    pub all_periods_odd: bool,
    pub min_period: u64,
    pub max_period: Option<u64>,
    /// Keep only periods dividing this number (implies a period cap).
    pub periods_dividing: Option<u64>,
}

impl Default for EnumerationFilter {
    fn default() -> Self {
        EnumerationFilter {
            orbit_genus_max: None,
            all_periods_odd: false,
            min_period: 2,
            max_period: None,
            periods_dividing: None,
        }
    }
}

impl EnumerationFilter {
    fn allows(&self, m: u64) -> bool {
        (!self.all_periods_odd || m % 2 == 1) && self.periods_dividing.is_none_or(|n| n % m == 0)
    }

    fn period_cap(&self) -> Option<u64> {
        match (self.max_period, self.periods_dividing) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn least_period(&self) -> u64 {
        let m = self.min_period.max(2);
        if self.all_periods_odd && m % 2 == 0 {
            m + 1
        } else {
            m
        }
    }
}

/// All signatures with `0 < mu <= max_measure` passing `filter`, sorted by
/// measure, then orbit genus, then periods.
pub fn enumerate_signatures(
    max_measure: &Rational,
    filter: &EnumerationFilter,
) -> Result<Vec<Signature>, EnumerationError> {
    if !max_measure.is_positive() {
        return Err(EnumerationError::NonPositiveThreshold(rational_string(max_measure)));
    }
    let least = filter.least_period();
    let least_term = Rational::one() - Rational::new(BigInt::one(), BigInt::from(least));
    let mut out = Vec::new();
    let mut h: u64 = 0;
    loop {
        if filter.orbit_genus_max.is_some_and(|hm| h > hm) {
            break;
        }
        let base = Rational::from_integer(BigInt::from(2 * h as i64 - 2));
        if &base > max_measure {
            break;
        }
        let mut r: usize = 0;
        loop {
            let floor = &base + &least_term * BigInt::from(r as u64);
            if &floor > max_measure {
                break;
            }
            let mut ctx = Search {
                max: max_measure,
                filter,
                orbit_genus: h,
                len: r,
                prefix: Vec::with_capacity(r),
                out: &mut out,
            };
            ctx.extend(&base, least)?;
            r += 1;
        }
        h += 1;
    }
    let mut keyed: Vec<(Rational, Signature)> = out.into_iter().map(|s| (s.measure(), s)).collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, s)| s).collect())
}

struct Search<'a> {
    max: &'a Rational,
    filter: &'a EnumerationFilter,
    orbit_genus: u64,
    len: usize,
    prefix: Vec<u64>,
    out: &'a mut Vec<Signature>,
}

impl Search<'_> {
    fn extend(&mut self, partial: &Rational, start: u64) -> Result<(), EnumerationError> {
        let remaining = self.len - self.prefix.len();
        if remaining == 0 {
            if partial.is_positive() {
                let sig =
                    Signature::new(self.orbit_genus, self.prefix.clone()).expect("positive measure with periods >= 2");
                self.out.push(sig);
            }
            return Ok(());
        }
        let sup = partial + Rational::from_integer(BigInt::from(remaining as u64));
        if !sup.is_positive() {
            // every completion is spherical or euclidean
            return Ok(());
        }
        let cap = self.filter.period_cap();
        if cap.is_none() && &sup <= self.max {
            return Err(EnumerationError::Unbounded {
                threshold: rational_string(self.max),
                orbit_genus: self.orbit_genus,
                prefix: self.prefix.clone(),
            });
        }
        let mut m = start;
        loop {
            if cap.is_some_and(|c| m > c) {
                break;
            }
            let term = Rational::one() - Rational::new(BigInt::one(), BigInt::from(m));
            let lower = partial + &term * BigInt::from(remaining as u64);
            if &lower > self.max {
                break;
            }
            if self.filter.allows(m) {
                self.prefix.push(m);
                self.extend(&(partial + &term), m)?;
                self.prefix.pop();
            }
            m += 1;
        }
        Ok(())
    }
}

/// Independent check used by tests: plain nested loops over bounded ranges.
pub fn brute_force_signatures(
    max_measure: &Rational,
    max_orbit_genus: u64,
    max_len: usize,
    max_period: u64,
) -> Vec<Signature> {
    fn rec(h: u64, prefix: &mut Vec<u64>, max_len: usize, max_period: u64, max: &Rational, out: &mut Vec<Signature>) {
        let mu = measure_of(h, prefix);
        if mu.is_positive() && &mu <= max {
            out.push(Signature::new(h, prefix.clone()).unwrap());
        }
        // adding a period never lowers the measure
        if prefix.len() == max_len || &mu > max {
            return;
        }
        let start = prefix.last().copied().unwrap_or(2);
        for m in start..=max_period {
            prefix.push(m);
            rec(h, prefix, max_len, max_period, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for h in 0..=max_orbit_genus {
        rec(h, &mut Vec::new(), max_len, max_period, max_measure, &mut out);
    }
    let mut keyed: Vec<(Rational, Signature)> = out.into_iter().map(|s| (s.measure(), s)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, s)| s).collect()
}
