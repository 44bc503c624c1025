//! Signatures of finite-index normal subgroups via permutation (coset)
//! actions, and the iterated commutator-subgroup chain built on top.
//!
//! Permutations act on the right: in a product `x1 x2` the point is moved by
//! `x1` first.

use std::fmt;

use num::{BigInt, Integer, Signed, ToPrimitive};
use thiserror::Error;

use crate::abelian::{abelianization_with_images, FiniteAbelianGroup};
use crate::signature::{measure_of, rational_string, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("coset action needs orbit genus 0, got {0}")]
    OrbitGenusNotZero(u64),
    #[error("NotHyperbolic: {0} has non-positive measure")]
    NotHyperbolic(String),
    #[error("expected {expected} generator images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("image {index} is not a permutation of {n} points")]
    InvalidPermutation { index: usize, n: usize },
    #[error("NotTransitive: generated group has {orbit} points in the orbit of 0, expected {n}")]
    NotTransitive { orbit: usize, n: usize },
    #[error("OrderMismatch: image {index} has order {order}, which does not divide period {period}")]
    OrderMismatch { index: usize, order: u64, period: u64 },
    #[error("ProductNotIdentity: product of the images is not the identity")]
    ProductNotIdentity,
    #[error("InconsistentGenus: solved orbit genus {0} is not a non-negative integer")]
    InconsistentGenus(String),
    #[error("InfiniteAbelianization: abelianization {0} has positive free rank")]
    InfiniteAbelianization(FiniteAbelianGroup),
    #[error("TrivialAbelianization: {0} is perfect")]
    TrivialAbelianization(Signature),
}

/// A permutation of `0..n` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<u64> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1, |a, l| a.lcm(&l))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Signature of the point stabilizer of a transitive action of a genus-0
/// signature group on `n` points, given the images of the elliptic generators.
pub fn coset_action_signature(sig: &Signature, images: &[Permutation], n: usize) -> Result<Signature, CosetError> {
    if sig.orbit_genus() != 0 {
        return Err(CosetError::OrbitGenusNotZero(sig.orbit_genus()));
    }
    if !sig.is_hyperbolic() {
        return Err(CosetError::NotHyperbolic(sig.to_string()));
    }
    let periods = sig.periods();
    if images.len() != periods.len() {
        return Err(CosetError::ArityMismatch {
            expected: periods.len(),
            got: images.len(),
        });
    }
    for (index, p) in images.iter().enumerate() {
        if p.degree() != n {
            return Err(CosetError::InvalidPermutation { index, n });
        }
        let order = p.order();
        if periods[index] % order != 0 {
            return Err(CosetError::OrderMismatch {
                index,
                order,
                period: periods[index],
            });
        }
    }
    let product = images.iter().fold(Permutation::identity(n), |acc, p| acc.then(p));
    if !product.is_identity() {
        return Err(CosetError::ProductNotIdentity);
    }
    let orbit = orbit_size(images, n);
    if orbit != n {
        return Err(CosetError::NotTransitive { orbit, n });
    }

    let mut new_periods = Vec::new();
    for (p, &m) in images.iter().zip(periods) {
        for len in p.cycle_type() {
            let q = m / len;
            if q > 1 {
                new_periods.push(q);
            }
        }
    }
    // 2h' - 2 = n mu - sum(1 - 1/m'), with the periods' part at h' = 0 known
    let target = sig.measure() * BigInt::from(n as u64);
    let twice_h = &target - measure_of(0, &new_periods);
    let two = BigInt::from(2);
    if !twice_h.is_integer() || twice_h.is_negative() || !twice_h.to_integer().is_multiple_of(&two) {
        return Err(CosetError::InconsistentGenus(rational_string(&(twice_h / two))));
    }
    let h = (twice_h.to_integer() / two).to_u64().expect("orbit genus fits in u64");
    let out = Signature::new(h, new_periods).map_err(|e| CosetError::InconsistentGenus(e.to_string()))?;
    debug_assert_eq!(out.measure(), target);
    Ok(out)
}

fn orbit_size(gens: &[Permutation], n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g.apply(i);
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count
}

/// Regular translation action of `C_{d_1} x ... x C_{d_k}` by the given
/// elements, points indexed in mixed radix (first coordinate fastest).
pub fn regular_translations(factors: &[u64], elements: &[Vec<u64>]) -> Vec<Permutation> {
    let n: u64 = factors.iter().product();
    elements
        .iter()
        .map(|shift| {
            let imgs = (0..n)
                .map(|mut idx| {
                    let mut out = 0u64;
                    let mut radix = 1u64;
                    for (k, &d) in factors.iter().enumerate() {
                        let c = idx % d;
                        idx /= d;
                        out += ((c + shift[k]) % d) * radix;
                        radix *= d;
                    }
                    out as u32
                })
                .collect();
            Permutation(imgs)
        })
        .collect()
}

/// Signature of `Gamma'` together with `Gamma / Gamma'`.
pub fn derived_subgroup_signature(sig: &Signature) -> Result<(Signature, FiniteAbelianGroup), CosetError> {
    let ab = abelianization_with_images(sig);
    if !ab.group.is_finite() {
        return Err(CosetError::InfiniteAbelianization(ab.group));
    }
    if ab.group.is_trivial() {
        return Err(CosetError::TrivialAbelianization(sig.clone()));
    }
    let factors = ab.group.invariant_factors();
    let perms = regular_translations(factors, &ab.images);
    let n = ab.group.torsion_order() as usize;
    let sub = coset_action_signature(sig, &perms, n)?;
    Ok((sub, ab.group))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStatus {
    /// The requested depth was reached and the last term has a further
    /// finite nontrivial abelianization.
    DepthReached,
    /// The last term is perfect.
    TrivialAbelianization,
    /// The last term has positive orbit genus, hence infinite abelianization.
    InfiniteAbelianization,
}

impl ChainStatus {
    pub fn name(self) -> &'static str {
        match self {
            ChainStatus::DepthReached => "DepthReached",
            ChainStatus::TrivialAbelianization => "TrivialAbelianization",
            ChainStatus::InfiniteAbelianization => "InfiniteAbelianization",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedChain {
    /// `(Gamma^(k), Gamma^(k-1) / Gamma^(k))` for `k = 1, 2, ...`.
    pub steps: Vec<(Signature, FiniteAbelianGroup)>,
    /// Status of the last computed term (the input itself when `steps` is empty).
    pub status: ChainStatus,
}

/// Iterate [`derived_subgroup_signature`] up to `depth` times.
pub fn derived_chain(sig: &Signature, depth: usize) -> DerivedChain {
    let mut steps = Vec::new();
    let mut current = sig.clone();
    for _ in 0..depth {
        match derived_subgroup_signature(&current) {
            Ok((next, ab)) => {
                steps.push((next.clone(), ab));
                current = next;
            }
            Err(_) => break,
        }
    }
    let ab = abelianization_with_images(&current).group;
    let status = if !ab.is_finite() {
        ChainStatus::InfiniteAbelianization
    } else if ab.is_trivial() {
        ChainStatus::TrivialAbelianization
    } else {
        ChainStatus::DepthReached
    };
    DerivedChain { steps, status }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn regular_c6_on_2_3_12() {
        let s = sig("(0;2,3,12)");
        let perms = regular_translations(&[6], &[vec![3], vec![2], vec![1]]);
        assert_eq!(coset_action_signature(&s, &perms, 6).unwrap(), sig("(1;2)"));
    }

    #[test]
    fn derived_rows() {
        let (d, a) = derived_subgroup_signature(&sig("(0;2,3,8)")).unwrap();
        assert_eq!((d.to_string().as_str(), a.to_string().as_str()), ("(0;3,3,4)", "C2"));
        let (d, a) = derived_subgroup_signature(&sig("(0;3,3,5)")).unwrap();
        assert_eq!((d.to_string().as_str(), a.to_string().as_str()), ("(0;5,5,5)", "C3"));
        let (d, _) = derived_subgroup_signature(&sig("(0;2,4,7)")).unwrap();
        assert_eq!(d, sig("(0;7,7,2)"));
        assert!(matches!(
            derived_subgroup_signature(&sig("(0;2,3,7)")),
            Err(CosetError::TrivialAbelianization(_))
        ));
        assert!(matches!(
            derived_subgroup_signature(&sig("(1;2)")),
            Err(CosetError::InfiniteAbelianization(_))
        ));
    }

    #[test]
    fn chain_to_genus_49() {
        let c = derived_chain(&sig("(0;2,4,7)"), 3);
        let got: Vec<(String, String)> = c.steps.iter().map(|(s, a)| (s.to_string(), a.to_string())).collect();
        assert_eq!(
            got,
            [
                ("(0;2,7,7)".to_string(), "C2".to_string()),
                ("(0;2,2,2,2,2,2,2)".to_string(), "C7".to_string()),
                ("(49;-)".to_string(), "C2 x C2 x C2 x C2 x C2 x C2".to_string()),
            ]
        );
        assert_eq!(c.status, ChainStatus::InfiniteAbelianization);
    }

    #[test]
    fn chain_statuses() {
        let c = derived_chain(&sig("(0;2,3,12)"), 1);
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.status, ChainStatus::InfiniteAbelianization);
        let c = derived_chain(&sig("(0;2,3,10)"), 2);
        assert_eq!(c.steps[1].0, sig("(0;5,5,5)"));
        assert_eq!(c.status, ChainStatus::DepthReached);
        let c = derived_chain(&sig("(0;2,3,7)"), 4);
        assert!(c.steps.is_empty());
        assert_eq!(c.status, ChainStatus::TrivialAbelianization);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = sig("(0;2,3,12)");
        let perms = regular_translations(&[6], &[vec![3], vec![2], vec![2]]);
        assert_eq!(
            coset_action_signature(&s, &perms, 6),
            Err(CosetError::ProductNotIdentity)
        );
        // two disjoint copies of the regular C2 action on (0;2,4,7)... not transitive
        let s = sig("(0;2,2,2,3)");
        let t = Permutation::from_images(vec![1, 0, 3, 2]).unwrap();
        let id = Permutation::identity(4);
        assert!(matches!(
            coset_action_signature(&s, &[t.clone(), t, id.clone(), id], 4),
            Err(CosetError::NotTransitive { .. })
        ));
        let s = sig("(0;2,3,12)");
        let c3 = regular_translations(&[3], &[vec![1], vec![1], vec![1]]);
        assert!(matches!(
            coset_action_signature(&s, &c3, 3),
            Err(CosetError::OrderMismatch { index: 0, .. })
        ));
    }
}
