//! Smooth actions of concrete groups: generating-vector search, genus of an
//! action, a bounded minimum-genus search and the abelian-cover genus.
//!
//! A vector for `(h; m1, ..., mr)` lists `a1, b1, ..., ah, bh, x1, ..., xr`
//! with `[a1,b1]...[ah,bh] x1...xr = 1`, `ord(xi) = mi`, generating the group.

use num::{BigUint, One};
use thiserror::Error;

use crate::config::Caps;
use crate::enumerate::{enumerate_signatures, EnumerationError, EnumerationFilter};
use crate::group::{FiniteGroup, GroupError};
use crate::signature::{Signature, SignatureError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("UnsupportedSignature: {signature} needs {slots} generator slots, cap is {cap}")]
    UnsupportedSignature {
        signature: String,
        slots: usize,
        cap: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// Why a candidate vector is not a generating vector.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorDefect {
    #[error("expected {expected} elements, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("element index {0} is outside the group")]
    OutOfRange(u32),
    #[error("slot {slot} has order {actual}, period is {expected}")]
    WrongOrder { slot: usize, expected: u64, actual: u64 },
    #[error("the relator does not evaluate to the identity")]
    ProductNotIdentity,
    #[error("the elements generate a subgroup of order {0}")]
    DoesNotGenerate(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingVector {
    signature: Signature,
    elements: Vec<u32>,
}

impl GeneratingVector {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Hyperbolic pairs first, then the elliptic elements.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn hyperbolic(&self) -> &[u32] {
        &self.elements[..2 * self.signature.orbit_genus() as usize]
    }

    pub fn elliptic(&self) -> &[u32] {
        &self.elements[2 * self.signature.orbit_genus() as usize..]
    }

    pub fn labels<'a>(&self, g: &'a FiniteGroup) -> Vec<&'a str> {
        self.elements.iter().map(|&x| g.label(x)).collect()
    }

    /// Re-check every defining condition against `g`.
    pub fn verify(&self, g: &FiniteGroup) -> Result<(), VectorDefect> {
        check_vector(g, &self.signature, &self.elements)
    }
}

/// Check arbitrary data against the generating-vector conditions.
pub fn check_vector(g: &FiniteGroup, sig: &Signature, elements: &[u32]) -> Result<(), VectorDefect> {
    let h = sig.orbit_genus() as usize;
    let expected = 2 * h + sig.periods().len();
    if elements.len() != expected {
        return Err(VectorDefect::Arity {
            expected,
            found: elements.len(),
        });
    }
    if let Some(&x) = elements.iter().find(|&&x| x as usize >= g.order()) {
        return Err(VectorDefect::OutOfRange(x));
    }
    for (i, (&x, &m)) in elements[2 * h..].iter().zip(sig.periods()).enumerate() {
        let actual = g.element_order(x);
        if actual != m {
            return Err(VectorDefect::WrongOrder {
                slot: 2 * h + i,
                expected: m,
                actual,
            });
        }
    }
    if relator(g, h, elements) != g.identity() {
        return Err(VectorDefect::ProductNotIdentity);
    }
    let span = g.subgroup_closure(elements);
    if span.order() != g.order() {
        return Err(VectorDefect::DoesNotGenerate(span.order()));
    }
    Ok(())
}

fn relator(g: &FiniteGroup, h: usize, elements: &[u32]) -> u32 {
    let mut acc = g.identity();
    for j in 0..h {
        acc = g.mul(acc, g.commutator(elements[2 * j], elements[2 * j + 1]));
    }
    for &x in &elements[2 * h..] {
        acc = g.mul(acc, x);
    }
    acc
}

/// Number of generator slots `2h + r`.
pub fn slot_count(sig: &Signature) -> usize {
    2 * sig.orbit_genus() as usize + sig.periods().len()
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: usize,
    periods: &'a [u64],
    /// Allowed elements per slot, ascending.
    candidates: Vec<Vec<u32>>,
    current: Vec<u32>,
}

impl Search<'_> {
    fn slots(&self) -> usize {
        2 * self.h + self.periods.len()
    }

    /// Product of the filled slots; commutators are only taken on full pairs.
    fn partial(&self) -> u32 {
        let g = self.g;
        let h = self.h;
        let mut acc = g.identity();
        for j in 0..h {
            acc = g.mul(acc, g.commutator(self.current[2 * j], self.current[2 * j + 1]));
        }
        for &x in &self.current[2 * h..] {
            acc = g.mul(acc, x);
        }
        acc
    }

    fn run(&mut self) -> bool {
        let depth = self.current.len();
        let slots = self.slots();
        let g = self.g;
        if depth + 1 == slots && !self.periods.is_empty() {
            // The last elliptic element is forced by the relator.
            let last = g.inv(self.partial());
            if g.element_order(last) != *self.periods.last().expect("nonempty") {
                return false;
            }
            self.current.push(last);
            if g.subgroup_closure(&self.current).order() == g.order() {
                return true;
            }
            self.current.pop();
            return false;
        }
        if depth == slots {
            return self.partial() == g.identity() && g.subgroup_closure(&self.current).order() == g.order();
        }
        for i in 0..self.candidates[depth].len() {
            let x = self.candidates[depth][i];
            self.current.push(x);
            if self.run() {
                return true;
            }
            self.current.pop();
        }
        false
    }
}

/// First generating vector in lexicographic element order, or `None` after
/// an exhaustive search.
///
/// Only conjugacy-class minima are tried in the first slot. Conjugating a
/// vector by any element gives another vector, so the lexicographically least
/// vector always starts with a class minimum and is still the one returned.
pub fn find_generating_vector(
    g: &FiniteGroup,
    sig: &Signature,
    caps: &Caps,
) -> Result<Option<GeneratingVector>, ActionError> {
    if g.order() > caps.group {
        return Err(GroupError::SizeCap {
            order: g.order() as u128,
            cap: caps.group,
        }
        .into());
    }
    let slots = slot_count(sig);
    if slots > caps.max_slots {
        return Err(ActionError::UnsupportedSignature {
            signature: sig.to_string(),
            slots,
            cap: caps.max_slots,
        });
    }
    let orders = g.element_orders();
    let exponent = g.exponent();
    if sig.periods().iter().any(|&m| exponent % m != 0 || !orders.contains(&m)) {
        return Ok(None);
    }
    let h = sig.orbit_genus() as usize;
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(slots);
    for _ in 0..2 * h {
        candidates.push(g.elements().collect());
    }
    for &m in sig.periods() {
        candidates.push(g.elements().filter(|&x| orders[x as usize] == m).collect());
    }
    if let Some(first) = candidates.first_mut() {
        let minima = class_minima(g);
        first.retain(|&x| minima[x as usize] == x);
    }
    let mut search = Search {
        g,
        h,
        periods: sig.periods(),
        candidates,
        current: Vec::with_capacity(slots),
    };
    Ok(search.run().then(|| GeneratingVector {
        signature: sig.clone(),
        elements: search.current,
    }))
}

fn class_minima(g: &FiniteGroup) -> Vec<u32> {
    let mut minima = vec![0; g.order()];
    for class in g.conjugacy_classes() {
        let m = *class.iter().min().expect("classes are nonempty");
        for &x in &class {
            minima[x as usize] = m;
        }
    }
    minima
}

/// Genus of the surface on which `G` acts with signature `sig`:
/// `1 + |G| mu / 2`, required to be an integer at least 2.
pub fn genus_of_action(g: &FiniteGroup, sig: &Signature) -> Result<u64, SignatureError> {
    sig.genus_from_order(g.order() as u64)
}

/// Outcome of [`min_genus_bounded`]. The genus is the minimum within the
/// explored signatures only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedMinimum {
    pub genus: u64,
    pub signature: Signature,
    pub vector: GeneratingVector,
    /// Signatures whose search actually ran.
    pub searched: usize,
    /// Signatures skipped because they exceed the slot cap.
    pub skipped: usize,
}

pub const BOUNDED_SEARCH_LABEL: &str = "bounded search: minimum within explored space";

/// Least genus over signatures with `mu <= measure_cap`, orbit genus at most
/// `orbit_genus_max` and periods dividing `exp(G)` that admit a vector.
/// Signatures beyond the slot cap are skipped and counted.
pub fn min_genus_bounded(
    g: &FiniteGroup,
    measure_cap: &Rational,
    orbit_genus_max: u64,
    caps: &Caps,
) -> Result<Option<BoundedMinimum>, ActionError> {
    let filter = EnumerationFilter {
        orbit_genus_max: Some(orbit_genus_max),
        periods_dividing: Some(g.exponent()),
        ..EnumerationFilter::default()
    };
    let order = g.order() as u64;
    let mut searched = 0;
    let mut skipped = 0;
    // Sorted by measure, and the genus grows with the measure.
    for sig in enumerate_signatures(measure_cap, &filter)? {
        let Ok(genus) = sig.genus_from_order(order) else {
            continue;
        };
        if slot_count(&sig) > caps.max_slots {
            skipped += 1;
            continue;
        }
        searched += 1;
        if let Some(vector) = find_generating_vector(g, &sig, caps)? {
            return Ok(Some(BoundedMinimum {
                genus,
                signature: sig,
                vector,
                searched,
                skipped,
            }));
        }
    }
    Ok(None)
}

/// Genus `n^(2g) (g - 1) + 1` of the cover of a genus-`g` surface by the
/// kernel of `H_1 -> H_1 / n H_1`. `None` outside `g >= 2, n >= 1`.
pub fn macbeath_genus(g: u64, n: u64) -> Option<BigUint> {
    if g < 2 || n < 1 {
        return None;
    }
    let exp = u32::try_from(2 * g).ok()?;
    Some(num::pow(BigUint::from(n), exp as usize) * BigUint::from(g - 1) + BigUint::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_with_cap, GroupSpec};

    fn group(s: &str) -> FiniteGroup {
        construct_with_cap(&s.parse::<GroupSpec>().unwrap(), 256).unwrap()
    }

    fn sig(s: &str) -> Signature {
        Signature::parse_unrestricted(s).unwrap()
    }

    #[test]
    fn order_21_on_genus_3() {
        let g = group("C 7 : C 3 @ 2");
        let s = sig("(0;3,3,7)");
        let v = find_generating_vector(&g, &s, &Caps::default()).unwrap().unwrap();
        v.verify(&g).unwrap();
        assert_eq!(genus_of_action(&g, &s).unwrap(), 3);
    }

    #[test]
    fn non_hyperbolic_data() {
        let g = group("C 4");
        assert_eq!(
            find_generating_vector(&g, &sig("(0;2,2,2)"), &Caps::default()).unwrap(),
            None
        );
        let k = group("C 2 x C 2");
        let s = sig("(0;2,2,2)");
        assert!(find_generating_vector(&k, &s, &Caps::default()).unwrap().is_some());
        assert!(genus_of_action(&k, &s).is_err());
    }

    #[test]
    fn positive_orbit_genus() {
        // C2 on genus 2 with (1;2,2): a, b arbitrary, x1 x2 = 1.
        let g = group("C 2");
        let s = sig("(1;2,2)");
        let v = find_generating_vector(&g, &s, &Caps::default()).unwrap().unwrap();
        v.verify(&g).unwrap();
        assert_eq!(v.hyperbolic(), &[0, 0]);
        let tight = Caps {
            max_slots: 3,
            ..Caps::default()
        };
        assert!(matches!(
            find_generating_vector(&g, &s, &tight),
            Err(ActionError::UnsupportedSignature { slots: 4, .. })
        ));
    }

    #[test]
    fn first_slot_pruning_keeps_lex_least() {
        let g = group("Sym 4");
        for s in ["(0;2,3,4)", "(0;2,4,6)", "(0;3,3,4)", "(0;2,2,2,3)"] {
            let s = sig(s);
            let pruned = find_generating_vector(&g, &s, &Caps::default()).unwrap();
            let full = brute_first(&g, &s);
            assert_eq!(pruned.map(|v| v.elements().to_vec()), full, "{s}");
        }
    }

    fn brute_first(g: &FiniteGroup, s: &Signature) -> Option<Vec<u32>> {
        let slots = slot_count(s);
        let n = g.order() as u32;
        let mut v = vec![0u32; slots];
        loop {
            if check_vector(g, s, &v).is_ok() {
                return Some(v);
            }
            let mut i = slots;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                v[i] += 1;
                if v[i] < n {
                    break;
                }
                v[i] = 0;
            }
        }
    }

    #[test]
    fn defects() {
        let g = group("C 3");
        let s = sig("(0;3,3,3)");
        assert!(matches!(check_vector(&g, &s, &[1, 1]), Err(VectorDefect::Arity { .. })));
        assert!(matches!(
            check_vector(&g, &s, &[1, 1, 2]),
            Err(VectorDefect::ProductNotIdentity)
        ));
        assert!(matches!(
            check_vector(&g, &s, &[0, 1, 2]),
            Err(VectorDefect::WrongOrder { slot: 0, .. })
        ));
        assert!(check_vector(&g, &s, &[1, 1, 1]).is_ok());
    }

    #[test]
    fn bounded_minimum() {
        let g = group("C 7 : C 3 @ 2");
        let m = min_genus_bounded(&g, &Rational::new(1.into(), 1.into()), 0, &Caps::default())
            .unwrap()
            .unwrap();
        assert_eq!((m.genus, m.signature.to_string()), (3, "(0;3,3,7)".to_string()));

        let c3 = group("C 3");
        let below = Rational::new(1.into(), 2.into());
        assert_eq!(min_genus_bounded(&c3, &below, 1, &Caps::default()).unwrap(), None);
        let at = Rational::new(2.into(), 3.into());
        let m = min_genus_bounded(&c3, &at, 1, &Caps::default()).unwrap().unwrap();
        assert_eq!(m.genus, 2);
    }

    #[test]
    fn macbeath() {
        assert_eq!(macbeath_genus(2, 1), Some(BigUint::from(2u32)));
        for n in 1..20u64 {
            assert_eq!(macbeath_genus(2, n), Some(BigUint::from(n.pow(4) + 1)));
            assert_eq!(macbeath_genus(3, n), Some(BigUint::from(2 * n.pow(6) + 1)));
        }
        assert_eq!(macbeath_genus(1, 3), None);
        assert_eq!(macbeath_genus(40, 7).unwrap().to_string().len(), 70);
    }
}
