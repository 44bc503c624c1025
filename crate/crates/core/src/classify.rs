//! Class membership of concrete finite groups, with certificates.
//!
//! Predicates that need the full subgroup lattice (CLT) are reported as
//! [`Decision::Undecided`] above the subgroup cap instead of being guessed.

use std::fmt;

use thiserror::Error;

use crate::abelian::FiniteAbelianGroup;
use crate::arith::{divisors, factorize, is_prime, is_square_free};
use crate::group::{FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("unknown class name {0:?}")]
    UnknownClass(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Three-valued answer; `Undecided` only arises from caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Yes => "true",
            Decision::No => "false",
            Decision::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every class flag with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    pub order: usize,
    pub abelian: bool,
    pub cyclic: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub supersolvable: bool,
    /// Prime indices of a chief series with prime factors, top-down.
    pub zappa_indices: Option<Vec<u64>>,
    pub metabelian: bool,
    /// Length of the derived series when solvable.
    pub derived_length: Option<usize>,
    pub metacyclic: Decision,
    /// `(|N|, |G/N|)` for the chosen cyclic normal `N` with cyclic quotient.
    pub metacyclic_witness: Option<(usize, usize)>,
    pub z_group: bool,
    pub clt: Decision,
    /// Divisors of the order with no subgroup of that order.
    pub clt_missing: Vec<u64>,
    pub square_free_order: bool,
    pub odd_order: bool,
    pub odd_elements_subgroup: bool,
    /// Order of the subgroup formed by the odd-order elements, when it is one.
    pub odd_elements_subgroup_order: Option<usize>,
    pub nilpotent_commutator: bool,
    pub commutator_order: usize,
    pub abelianization: FiniteAbelianGroup,
    pub smallest_prime: Option<u64>,
    /// `(p, q)` with `p < q` when the order is `p^a q^b`, `a, b >= 1`.
    pub pq_signature: Option<(u64, u64)>,
    /// `p` when the order is a positive power of the prime `p`.
    pub p_group: Option<u64>,
    pub exponent: u64,
}

/// Class names understood by [`ClassProfile::member_of`] and the bounds registry.
pub const CLASS_NAMES: [&str; 18] = [
    "general",
    "solvable",
    "supersolvable",
    "nilpotent",
    "abelian",
    "cyclic",
    "metabelian",
    "metacyclic",
    "z_group",
    "square_free",
    "clt",
    "nilpotent_commutator",
    "odd_elements_subgroup",
    "odd_commutator",
    "order_2_mod_4",
    "p_group",
    "pq_group",
    "exponent",
];

impl ClassProfile {
    /// Membership in a named class. `exponent` is not a class of groups but
    /// indexes the bound on `exp(G)`, so every group belongs to it.
    pub fn member_of(&self, class: &str) -> Result<Decision, ClassifyError> {
        let d = Decision::from_bool;
        Ok(match class {
            "general" | "exponent" => Decision::Yes,
            "solvable" => d(self.solvable),
            "supersolvable" => d(self.supersolvable),
            "nilpotent" => d(self.nilpotent),
            "abelian" => d(self.abelian),
            "cyclic" => d(self.cyclic),
            "metabelian" => d(self.metabelian),
            "metacyclic" => self.metacyclic,
            "z_group" => d(self.z_group),
            "square_free" => d(self.square_free_order),
            "clt" => self.clt,
            "nilpotent_commutator" => d(self.nilpotent_commutator),
            "odd_elements_subgroup" => d(self.odd_elements_subgroup),
            "odd_commutator" => d(self.commutator_order % 2 == 1),
            "order_2_mod_4" => d(self.order % 4 == 2),
            "p_group" => d(self.p_group.is_some()),
            "pq_group" => d(self.pq_signature.is_some()),
            other => return Err(ClassifyError::UnknownClass(other.to_string())),
        })
    }
}

fn is_nilpotent(g: &FiniteGroup) -> bool {
    factorize(g.order() as u64).into_iter().all(|(p, _)| {
        let s = g.sylow_subgroup(p).expect("p divides the order");
        g.is_normal(&s)
    })
}

fn prime_order_normal_subgroup(g: &FiniteGroup) -> Option<Subgroup> {
    g.elements()
        .filter(|&x| is_prime(g.element_order(x)))
        .map(|x| g.subgroup_closure(&[x]))
        .find(|h| g.is_normal(h))
}

/// Supersolvable iff trivial, or some normal subgroup of prime order has a
/// supersolvable quotient. Any such subgroup works, so the first is taken.
pub fn is_supersolvable(g: &FiniteGroup) -> bool {
    let mut current = g.clone();
    loop {
        if current.order() == 1 {
            return true;
        }
        match prime_order_normal_subgroup(&current) {
            Some(n) => current = current.quotient(&n).expect("normal"),
            None => return false,
        }
    }
}

/// `G = G_0 > G_1 > ... > G_s = 1` with every `G_i` normal in `G` and every
/// index prime, indices non-decreasing from the top. Built from the bottom:
/// each step adjoins a `G`-normal layer of the largest prime still dividing
/// the index, taking the lexicographically least candidate.
pub fn zappa_chain(g: &FiniteGroup) -> Option<Vec<Subgroup>> {
    let n = g.order();
    let mut chain = vec![g.trivial_subgroup()];
    loop {
        let k = chain.last().expect("nonempty").clone();
        if k.order() == n {
            break;
        }
        let index = (n / k.order()) as u64;
        let q = factorize(index).last().expect("index > 1").0;
        let mut best: Option<Subgroup> = None;
        for x in g.elements() {
            if k.contains(x) || !k.contains(g.pow(x, q)) {
                continue;
            }
            let mut seed = k.elements().to_vec();
            seed.push(x);
            let m = g.subgroup_closure(&seed);
            if m.order() != k.order() * q as usize || !g.is_normal(&m) {
                continue;
            }
            if best.as_ref().is_none_or(|b| m.elements() < b.elements()) {
                best = Some(m);
            }
        }
        chain.push(best?);
    }
    chain.reverse();
    Some(chain)
}

pub fn chain_indices(chain: &[Subgroup]) -> Vec<u64> {
    chain.windows(2).map(|w| (w[0].order() / w[1].order()) as u64).collect()
}

/// Sylow `q` normal with abelian quotient of exponent dividing `q - 1`.
pub fn strictly_q_closed_check(g: &FiniteGroup, q: u64) -> Result<bool, GroupError> {
    let s = g.sylow_subgroup(q)?;
    if !g.is_normal(&s) {
        return Ok(false);
    }
    let quotient = g.quotient(&s)?;
    Ok(quotient.is_abelian() && (q - 1) % quotient.exponent() == 0)
}

/// Least cyclic normal subgroup (by element list) with cyclic quotient.
fn metacyclic_witness(g: &FiniteGroup) -> Option<Subgroup> {
    let n = g.order();
    g.cyclic_subgroups()
        .into_iter()
        .map(|(h, _)| h)
        .filter(|h| g.is_normal(h))
        .filter(|h| {
            let index = n / h.order();
            g.elements().any(|x| {
                let mut k = 1;
                let mut y = x;
                while !h.contains(y) {
                    y = g.mul(y, x);
                    k += 1;
                }
                k == index
            })
        })
        .min_by(|a, b| a.elements().cmp(b.elements()))
}

fn odd_elements_subgroup(g: &FiniteGroup) -> Option<usize> {
    let orders = g.element_orders();
    let odd: Vec<u32> = g.elements().filter(|&x| orders[x as usize] % 2 == 1).collect();
    let closed = odd
        .iter()
        .all(|&a| odd.iter().all(|&b| orders[g.mul(a, b) as usize] % 2 == 1));
    closed.then_some(odd.len())
}

/// Compute every flag. `subgroup_cap` bounds the order for which the full
/// subgroup lattice is enumerated.
pub fn classify(g: &FiniteGroup, subgroup_cap: usize) -> ClassProfile {
    let n = g.order();
    let factors = factorize(n as u64);
    let abelian = g.is_abelian();
    let series = g.derived_series();
    let solvable = series.last().expect("nonempty").is_trivial();
    let derived_length = solvable.then(|| series.len() - 1);
    let nilpotent = is_nilpotent(g);
    let supersolvable = is_supersolvable(g);
    let zappa_indices = if supersolvable {
        zappa_chain(g).map(|c| chain_indices(&c))
    } else {
        None
    };
    let metabelian = derived_length.is_some_and(|l| l <= 2);
    let meta = metacyclic_witness(g);
    let z_group = factors.iter().all(|&(p, _)| {
        let s = g.sylow_subgroup(p).expect("p divides the order");
        g.subgroup_as_group(&s).is_cyclic()
    });
    let (clt, clt_missing) = match g.all_subgroups(subgroup_cap) {
        Ok(subs) => {
            let mut have: Vec<u64> = subs.iter().map(|h| h.order() as u64).collect();
            have.dedup();
            let missing: Vec<u64> = divisors(n as u64)
                .into_iter()
                .filter(|d| have.binary_search(d).is_err())
                .collect();
            (Decision::from_bool(missing.is_empty()), missing)
        }
        Err(_) => (Decision::Undecided, Vec::new()),
    };
    let derived = if series.len() > 1 {
        series[1].clone()
    } else {
        series[0].clone()
    };
    let commutator_group = g.subgroup_as_group(&derived);
    let odd = odd_elements_subgroup(g);
    ClassProfile {
        order: n,
        abelian,
        cyclic: g.is_cyclic(),
        nilpotent,
        solvable,
        supersolvable,
        zappa_indices,
        metabelian,
        derived_length,
        metacyclic: Decision::from_bool(meta.is_some()),
        metacyclic_witness: meta.map(|h| (h.order(), n / h.order())),
        z_group,
        clt,
        clt_missing,
        square_free_order: is_square_free(n as u64),
        odd_order: n % 2 == 1,
        odd_elements_subgroup: odd.is_some(),
        odd_elements_subgroup_order: odd,
        nilpotent_commutator: is_nilpotent(&commutator_group),
        commutator_order: derived.order(),
        abelianization: g.abelianization(),
        smallest_prime: factors.first().map(|&(p, _)| p),
        pq_signature: (factors.len() == 2).then(|| (factors[0].0, factors[1].0)),
        p_group: (factors.len() == 1).then(|| factors[0].0),
        exponent: g.exponent(),
    }
}
