//! Oracles and fixtures shared by the property suite and the acceptance run.

#![allow(dead_code)]

use std::collections::BTreeSet;

use autbound::bounds::CLASS_EDGES;
use autbound::classify::{ClassProfile, Decision};
use autbound::config::Caps;
use autbound::coset::{coset_action_signature, CosetError, Permutation};
use autbound::group::construct_with_cap;
use autbound::snf::smith_normal_form;
use autbound::{FiniteGroup, GroupSpec, Signature};
use num::{BigInt, Integer, Signed, Zero};
use proptest::prelude::*;

pub const CORPUS: &str = include_str!("../../data/corpus.txt");

pub fn corpus_specs() -> Vec<&'static str> {
    CORPUS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub fn corpus() -> Vec<(String, FiniteGroup)> {
    let caps = Caps::default();
    corpus_specs()
        .into_iter()
        .map(|s| {
            let spec: GroupSpec = s.parse().unwrap_or_else(|e| panic!("{s}: {e}"));
            (s.to_string(), construct_with_cap(&spec, caps.group).unwrap())
        })
        .collect()
}

fn det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and `s_k = d_k / d_(k-1)`.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let n = rows.min(cols);
    let mut out = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 1..=n {
        let mut d = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                d = d.gcd(&det(&minor));
            }
        }
        if d == 0 {
            out.extend(std::iter::repeat_with(BigInt::zero).take(n - k + 1));
            break;
        }
        out.push(BigInt::from(d / prev));
        prev = d;
    }
    out
}

pub fn check_snf(m: &[Vec<i64>]) -> Result<(), String> {
    let got = smith_normal_form(m);
    let want = invariant_factors_by_minors(m);
    if got != want {
        return Err(format!("{m:?}: smith {got:?}, minors {want:?}"));
    }
    for w in got.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        };
        if !ok || w[0].is_negative() {
            return Err(format!("{m:?}: chain broken in {got:?}"));
        }
    }
    if m.len() == m.first().map_or(0, Vec::len) {
        let product: BigInt = got.iter().product();
        if product != BigInt::from(det(m).abs()) {
            return Err(format!("{m:?}: product {product} != |det| {}", det(m).abs()));
        }
    }
    Ok(())
}

pub fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-8i64..=8, c), r))
}

/// Lattice implications between classifier flags and between class
/// memberships. Returns the violated ones.
pub fn lattice_violations(p: &ClassProfile) -> Vec<String> {
    let mut bad = Vec::new();
    let flags = [
        ("cyclic", p.cyclic, "abelian", p.abelian),
        ("abelian", p.abelian, "nilpotent", p.nilpotent),
        ("nilpotent", p.nilpotent, "supersolvable", p.supersolvable),
        ("supersolvable", p.supersolvable, "solvable", p.solvable),
        ("supersolvable", p.supersolvable, "clt", p.clt == Decision::Yes),
        (
            "supersolvable",
            p.supersolvable,
            "nilpotent_commutator",
            p.nilpotent_commutator,
        ),
        ("metabelian", p.metabelian, "solvable", p.solvable),
        ("z_group", p.z_group, "metacyclic", p.metacyclic == Decision::Yes),
        ("metacyclic", p.metacyclic == Decision::Yes, "metabelian", p.metabelian),
        ("square_free_order", p.square_free_order, "z_group", p.z_group),
        ("odd_order", p.odd_order, "solvable", p.solvable),
    ];
    for (a, x, b, y) in flags {
        if x && !y {
            bad.push(format!("{a} without {b}"));
        }
    }
    for (sub, sup) in CLASS_EDGES {
        if p.member_of(sub).unwrap() == Decision::Yes && p.member_of(sup).unwrap() != Decision::Yes {
            bad.push(format!("member of {sub} but not {sup}"));
        }
    }
    bad
}

/// Subgroups by exhaustive search over subsets containing the identity.
pub fn brute_force_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<u32>> {
    let n = g.order();
    assert!(n <= 16, "brute force is for tiny groups");
    let others: Vec<u32> = g.elements().filter(|&x| x != g.identity()).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let mut set = vec![g.identity()];
        set.extend(
            others
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x),
        );
        let closed = set.iter().all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))));
        if closed {
            set.sort_unstable();
            out.insert(set);
        }
    }
    out
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut inv = vec![0u32; p.degree()];
    for (i, &j) in p.images().iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    Permutation::from_images(inv).unwrap()
}

/// A random genus-0 permutation representation: `k` random permutations of
/// `n` points followed by the inverse of their product.
pub fn coset_case_strategy() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (2usize..=7, 2usize..=3).prop_flat_map(|(n, k)| {
        let perm = Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle();
        (Just(n), prop::collection::vec(perm, k))
    })
}

pub enum CosetOutcome {
    /// Not a transitive hyperbolic case; nothing to check.
    Skipped,
    Checked,
}

/// Run the coset action on a random case and check `mu(sub) = n mu(Gamma)`.
pub fn check_coset_case(n: usize, images: &[Vec<u32>]) -> Result<CosetOutcome, String> {
    let mut perms: Vec<Permutation> = images
        .iter()
        .map(|v| Permutation::from_images(v.clone()).unwrap())
        .collect();
    let product = perms.iter().fold(Permutation::identity(n), |acc, p| acc.then(p));
    perms.push(inverse(&product));
    if perms.iter().any(|p| p.order() == 1) {
        return Ok(CosetOutcome::Skipped);
    }
    // The signature sorts its periods. Bubble sort with the braid move
    // (a, b) -> (b, b^-1 a b), which keeps both the product and the orders.
    for end in (1..perms.len()).rev() {
        for i in 0..end {
            if perms[i].order() > perms[i + 1].order() {
                let (a, b) = (perms[i].clone(), perms[i + 1].clone());
                perms[i] = b.clone();
                perms[i + 1] = inverse(&b).then(&a).then(&b);
            }
        }
    }
    let Ok(sig) = Signature::new(0, perms.iter().map(Permutation::order).collect::<Vec<_>>()) else {
        return Ok(CosetOutcome::Skipped);
    };
    match coset_action_signature(&sig, &perms, n) {
        Err(CosetError::NotTransitive { .. }) => Ok(CosetOutcome::Skipped),
        Err(e) => Err(format!("{sig} on {n} points: {e}")),
        Ok(sub) => check_additivity(&sig, &sub, n).map(|_| CosetOutcome::Checked),
    }
}

pub fn check_additivity(sig: &Signature, sub: &Signature, index: usize) -> Result<(), String> {
    let want = sig.measure() * BigInt::from(index);
    if sub.measure() == want {
        Ok(())
    } else {
        Err(format!("{sig} index {index}: mu({sub}) = {} != {want}", sub.measure()))
    }
}
