//! Finite groups as verified multiplication tables.
//!
//! Every group is stored as an `n x n` table of element indices with the
//! identity at index 0. Tables are checked on construction (Latin square,
//! identity, inverses, associativity), so the remaining code can trust them.

mod builders;
mod io;
mod spec;
mod structure;

use std::fmt;

use thiserror::Error;

pub use builders::{
    alternating, cyclic, direct_product, fermat, general_linear, matrix_semidirect, quaternion, semidirect,
    semidirect_cyclic, special_linear, symmetric,
};
pub use io::{parse_table_file, render_table_file};
pub use spec::{construct, construct_with_cap, parse_group, GroupSpec, MatrixAction};
pub use structure::{probably_isomorphic, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("SizeCap: group of order {order} exceeds the cap {cap}")]
    SizeCap { order: u128, cap: usize },
    #[error("table is not a Latin square (row or column {0} repeats an entry)")]
    NotLatinSquare(usize),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(u32, u32, u32),
    #[error("table entry out of range or table shape mismatch")]
    BadShape,
    #[error("InvalidTwist: {b}^{n} is not 1 mod {m}")]
    InvalidTwist { m: u64, n: u64, b: u64 },
    #[error("NotIrreducible: {0}")]
    NotIrreducible(String),
    #[error("invalid group specification {0:?}: {1}")]
    Spec(String, String),
    #[error("NotNormal: subgroup of order {0} is not normal")]
    NotNormal(usize),
    #[error("PrimeDoesNotDivide: {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: usize },
    #[error("cannot read group table: {0}")]
    Table(String),
}

/// A finite group given by a verified multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    provenance: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.n)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl FiniteGroup {
    /// Build from a row-major table; `table[i*n + j]` is `i * j`. The identity
    /// is located and moved to index 0. Verification is exhaustive, so tables
    /// above `cap` are refused.
    pub fn from_table(n: usize, table: Vec<u32>, labels: Option<Vec<String>>, cap: usize) -> Result<Self, GroupError> {
        if n > cap {
            return Err(GroupError::SizeCap { order: n as u128, cap });
        }
        if n == 0 || table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(GroupError::BadShape);
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(GroupError::BadShape);
            }
        }
        check_latin(n, &table)?;
        let e = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] as usize == j && table[j * n + e] as usize == j))
            .ok_or(GroupError::NoIdentity)?;
        let (table, labels) = if e == 0 {
            (table, labels)
        } else {
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.swap(0, e);
            let t = permute_table(n, &table, &perm);
            let l = labels.map(|mut l| {
                l.swap(0, e);
                l
            });
            (t, l)
        };
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(GroupError::NotAssociative(a as u32, b as u32, c as u32));
                    }
                }
            }
        }
        // Latin rows guarantee a unique right inverse; associativity makes it two-sided.
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("latin row") as u32)
            .collect();
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        Ok(FiniteGroup {
            n,
            table,
            inverse,
            labels,
            provenance: None,
        })
    }

    /// Build from an explicit element list (identity first) and a product.
    pub fn from_elements<T, M, L>(elements: Vec<T>, mul: M, label: L, cap: usize) -> Result<Self, GroupError>
    where
        T: Eq + std::hash::Hash + Clone,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let n = elements.len();
        if n > cap {
            return Err(GroupError::SizeCap { order: n as u128, cap });
        }
        let index: std::collections::HashMap<T, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        if index.len() != n {
            return Err(GroupError::BadShape);
        }
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let c = mul(a, b);
                table.push(*index.get(&c).ok_or(GroupError::BadShape)?);
            }
        }
        let labels = elements.iter().map(label).collect();
        Self::from_table(n, table, Some(labels), cap)
    }

    /// Table derived from an already verified group (quotient, subgroup);
    /// skips the cubic associativity check.
    pub(crate) fn from_trusted_table(n: usize, table: Vec<u32>, labels: Vec<String>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        debug_assert!((0..n).all(|j| table[j] as usize == j && table[j * n] as usize == j));
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("group row") as u32)
            .collect();
        FiniteGroup {
            n,
            table,
            inverse,
            labels,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inv(a)), self.inv(b))
    }

    /// `g a g^-1`.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Same group with element `i` renamed to `perm[i]`. The identity is
    /// re-normalized to index 0 afterwards.
    pub fn relabel(&self, perm: &[u32]) -> Result<FiniteGroup, GroupError> {
        let n = self.n;
        if perm.len() != n {
            return Err(GroupError::BadShape);
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(GroupError::BadShape);
            }
        }
        let table = permute_table(n, &self.table, perm);
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p as usize] = self.labels[i].clone();
        }
        let mut g = FiniteGroup::from_table(n, table, Some(labels), usize::MAX)?;
        g.provenance = self.provenance.clone();
        Ok(g)
    }
}

fn check_latin(n: usize, table: &[u32]) -> Result<(), GroupError> {
    let mut seen = vec![0usize; n];
    let mut stamp = 0;
    for i in 0..n {
        stamp += 1;
        for j in 0..n {
            let x = table[i * n + j] as usize;
            if seen[x] == stamp {
                return Err(GroupError::NotLatinSquare(i));
            }
            seen[x] = stamp;
        }
        stamp += 1;
        for j in 0..n {
            let x = table[j * n + i] as usize;
            if seen[x] == stamp {
                return Err(GroupError::NotLatinSquare(i));
            }
            seen[x] = stamp;
        }
    }
    Ok(())
}

/// Table of the same group with old index `i` renamed to `perm[i]`.
fn permute_table(n: usize, table: &[u32], perm: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let c = table[a * n + b] as usize;
            out[perm[a] as usize * n + perm[b] as usize] = perm[c];
        }
    }
    out
}
