//! Subgroups, series, quotients and Sylow subgroups.

use std::collections::{HashSet, VecDeque};

use super::{FiniteGroup, GroupError};
use crate::abelian::FiniteAbelianGroup;
use crate::arith::{factorize, lcm, valuation};
use crate::config::SUBGROUP_COUNT_LIMIT;

/// A subgroup of some parent group, stored as its sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    fn from_unsorted(mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }
}

fn bitkey(elements: &[u32], n: usize) -> Vec<u64> {
    let mut key = vec![0u64; n.div_ceil(64)];
    for &x in elements {
        key[x as usize / 64] |= 1 << (x % 64);
    }
    key
}

impl FiniteGroup {
    pub fn element_order(&self, a: u32) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Order of every element, indexed like the elements.
    pub fn element_orders(&self) -> Vec<u64> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().into_iter().fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.order() as u64)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: &[u32]) -> Subgroup {
        let n = self.order();
        let mut gens: Vec<u32> = seed.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut member = vec![false; n];
        member[0] = true;
        let mut elems = vec![0u32];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_unsorted(elems)
    }

    /// Whether `elements` (any order) form a subgroup.
    pub fn is_subgroup(&self, elements: &[u32]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in elements {
            if x as usize >= self.order() {
                return false;
            }
            member[x as usize] = true;
        }
        member[0]
            && elements
                .iter()
                .all(|&a| elements.iter().all(|&b| member[self.mul(a, b) as usize]))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements()
            .all(|g| h.elements.iter().all(|&x| h.contains(self.conjugate(x, g))))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements()
                .filter(|&g| h.elements.iter().all(|&x| h.contains(self.conjugate(x, g))))
                .collect(),
        }
    }

    pub fn center(&self) -> Subgroup {
        Subgroup {
            elements: self
                .elements()
                .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
                .collect(),
        }
    }

    /// `[H, K]`, generated by all `h k h^-1 k^-1`.
    pub fn commutator_of(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut gens = Vec::new();
        for &a in &h.elements {
            for &b in &k.elements {
                let c = self.commutator(a, b);
                if !std::mem::replace(&mut seen[c as usize], true) {
                    gens.push(c);
                }
            }
        }
        self.subgroup_closure(&gens)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_of(&g, &g)
    }

    /// `G, G', G'', ...` up to and including the first repeated term.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut out = vec![self.whole()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.commutator_of(last, last);
            if next == *last {
                break;
            }
            out.push(next);
        }
        out
    }

    /// `G = gamma_1, gamma_2 = [G, G], gamma_3 = [G, gamma_2], ...` until stable.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut out = vec![g.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.commutator_of(&g, last);
            if next == *last {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Coset index of every element modulo `n`, numbered by first appearance.
    fn coset_ids(&self, n: &Subgroup) -> (Vec<u32>, Vec<u32>) {
        let mut id = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if id[g as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(g);
            for &x in &n.elements {
                id[self.mul(g, x) as usize] = c;
            }
        }
        (id, reps)
    }

    /// `G / N` for a normal subgroup `N`; cosets are labeled by their least
    /// element.
    pub fn quotient(&self, n: &Subgroup) -> Result<FiniteGroup, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal(n.order()));
        }
        let (id, reps) = self.coset_ids(n);
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(id[self.mul(a, b) as usize]);
            }
        }
        let labels = reps.iter().map(|&r| format!("{}N", self.label(r))).collect();
        Ok(FiniteGroup::from_trusted_table(m, table, labels))
    }

    /// The subgroup `H` as a group in its own right; element `i` is the
    /// `i`-th smallest index of `H`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let m = h.order();
        let local = |x: u32| h.elements.binary_search(&x).expect("closed subgroup") as u32;
        let mut table = Vec::with_capacity(m * m);
        for &a in &h.elements {
            for &b in &h.elements {
                table.push(local(self.mul(a, b)));
            }
        }
        let labels = h.elements.iter().map(|&x| self.label(x).to_string()).collect();
        FiniteGroup::from_trusted_table(m, table, labels)
    }

    /// One Sylow `p`-subgroup, grown one factor of `p` at a time inside the
    /// normalizer of the current `p`-subgroup.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup, GroupError> {
        let n = self.order() as u64;
        if p < 2 || n % p != 0 || factorize(p).len() != 1 || factorize(p)[0].1 != 1 {
            return Err(GroupError::PrimeDoesNotDivide { p, order: self.order() });
        }
        let (e, _) = valuation(n, p);
        let target = p.pow(e) as usize;
        let mut current = self.trivial_subgroup();
        while current.order() < target {
            let norm = self.normalizer(&current);
            let step = norm.elements.iter().find_map(|&x| {
                if current.contains(x) {
                    return None;
                }
                let mut k = 1u64;
                let mut y = x;
                while !current.contains(y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                (k % p == 0).then(|| self.pow(x, k / p))
            });
            let y = step.expect("a p-subgroup below Sylow order grows in its normalizer");
            let mut seed = current.elements.clone();
            seed.push(y);
            current = self.subgroup_closure(&seed);
        }
        Ok(current)
    }

    /// Cyclic subgroups, each listed once, sorted by order then elements,
    /// together with their least generator.
    pub fn cyclic_subgroups(&self) -> Vec<(Subgroup, u32)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in self.elements() {
            let h = self.subgroup_closure(&[g]);
            if seen.insert(h.elements.clone()) {
                out.push((h, g));
            }
        }
        out.sort();
        out
    }

    /// Every subgroup, ascending by order then element list. Starts from the
    /// cyclic subgroups and adjoins one cyclic generator at a time until no
    /// new subgroup appears.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        let n = self.order();
        if n > cap {
            return Err(GroupError::SizeCap { order: n as u128, cap });
        }
        let cyclic = self.cyclic_subgroups();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut found: Vec<(Subgroup, Vec<u32>)> = Vec::new();
        let mut queue = VecDeque::new();
        for (h, g) in &cyclic {
            seen.insert(bitkey(&h.elements, n));
            found.push((h.clone(), vec![*g]));
            queue.push_back(found.len() - 1);
        }
        while let Some(i) = queue.pop_front() {
            let (h, gens) = found[i].clone();
            if h.order() == n {
                continue;
            }
            for (c, g) in &cyclic {
                if c.is_subset_of(&h) {
                    continue;
                }
                let mut seed = gens.clone();
                seed.push(*g);
                let k = self.subgroup_closure(&seed);
                if seen.insert(bitkey(&k.elements, n)) {
                    if found.len() >= SUBGROUP_COUNT_LIMIT {
                        return Err(GroupError::SizeCap {
                            order: n as u128,
                            cap: SUBGROUP_COUNT_LIMIT,
                        });
                    }
                    found.push((k, seed));
                    queue.push_back(found.len() - 1);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|(h, _)| h).collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(out)
    }

    /// Conjugacy classes, each sorted, listed by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        for x in self.elements() {
            if assigned[x as usize] {
                continue;
            }
            let mut class: Vec<u32> = self.elements().map(|g| self.conjugate(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c as usize] = true;
            }
            out.push(class);
        }
        out
    }

    /// Invariant factors when the group is abelian.
    pub fn abelian_invariants(&self) -> Option<FiniteAbelianGroup> {
        if !self.is_abelian() {
            return None;
        }
        let orders = self.element_orders();
        let mut cyclic_orders = Vec::new();
        for (p, e) in factorize(self.order() as u64) {
            // count of elements with x^(p^k) = 1 is p^(sum_i min(e_i, k))
            let mut prev = 0u32;
            let mut counts = Vec::new();
            for k in 1..=e {
                let pk = p.pow(k);
                let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let s = valuation(c, p).0;
                counts.push(s - prev);
                prev = s;
            }
            // counts[k-1] = number of cyclic factors of order >= p^k
            for k in 0..counts.len() {
                let ge_k = counts[k];
                let ge_next = counts.get(k + 1).copied().unwrap_or(0);
                for _ in 0..ge_k - ge_next {
                    cyclic_orders.push(p.pow(k as u32 + 1));
                }
            }
        }
        Some(FiniteAbelianGroup::from_cyclic_orders(&cyclic_orders))
    }

    /// `G / G'` in invariant-factor form.
    pub fn abelianization(&self) -> FiniteAbelianGroup {
        let d = self.commutator_subgroup();
        self.quotient(&d)
            .expect("commutator subgroup is normal")
            .abelian_invariants()
            .expect("quotient by G' is abelian")
    }

    /// Element orders as a sorted multiset.
    pub fn order_statistics(&self) -> Vec<u64> {
        let mut v = self.element_orders();
        v.sort_unstable();
        v
    }
}

/// Heuristic isomorphism test: equal order, element-order multiset,
/// abelianization, center order, class count and derived-series orders.
/// Agreement does not prove isomorphism.
pub fn probably_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    let series = |g: &FiniteGroup| g.derived_series().iter().map(Subgroup::order).collect::<Vec<_>>();
    a.order() == b.order()
        && a.order_statistics() == b.order_statistics()
        && a.abelianization() == b.abelianization()
        && a.center().order() == b.center().order()
        && a.conjugacy_classes().len() == b.conjugacy_classes().len()
        && series(a) == series(b)
}

#[cfg(test)]
mod tests {
    use crate::group::{
        alternating, cyclic, direct_product, general_linear, parse_group, quaternion, semidirect_cyclic, symmetric,
    };

    fn orders(v: &[super::Subgroup]) -> Vec<usize> {
        v.iter().map(|h| h.order()).collect()
    }

    #[test]
    fn element_orders_and_exponent() {
        let c6 = cyclic(6, 256).unwrap();
        assert_eq!(c6.element_orders(), vec![1, 6, 3, 2, 3, 6]);
        let g = semidirect_cyclic(7, 3, 2, 256).unwrap();
        let mut o = g.element_orders();
        o.sort();
        o.dedup();
        assert_eq!(o, vec![1, 3, 7]);
        assert_eq!(g.exponent(), 21);
        assert_eq!(
            quaternion(256).unwrap().order_statistics(),
            vec![1, 2, 4, 4, 4, 4, 4, 4]
        );
        assert_eq!(quaternion(256).unwrap().exponent(), 4);
        assert_eq!(c6.exponent(), 6);
    }

    #[test]
    fn closures() {
        let c12 = cyclic(12, 256).unwrap();
        assert!(c12.subgroup_closure(&[]).is_trivial());
        assert_eq!(c12.subgroup_closure(&[3]).order(), 4);
        let gl = general_linear(3, 256).unwrap();
        // order-4 elements of SL(2,3) generate Q8
        let fours: Vec<u32> = gl.elements().filter(|&a| gl.element_order(a) == 4).collect();
        let sl: Vec<u32> = fours
            .iter()
            .copied()
            .filter(|&a| gl.label(a) == "[0 1;2 0]" || gl.label(a) == "[1 1;1 2]")
            .collect();
        assert_eq!(sl.len(), 2);
        assert_eq!(gl.subgroup_closure(&sl).order(), 8);
    }

    #[test]
    fn subgroup_lattices() {
        let c6 = cyclic(6, 256).unwrap();
        assert_eq!(orders(&c6.all_subgroups(256).unwrap()), vec![1, 2, 3, 6]);
        let a4 = alternating(4, 256).unwrap();
        assert_eq!(
            orders(&a4.all_subgroups(256).unwrap()),
            vec![1, 2, 2, 2, 3, 3, 3, 3, 4, 12]
        );
        let g75 = parse_group("MAT 5 ⋊ C 3").unwrap();
        let subs = g75.all_subgroups(256).unwrap();
        assert!(subs.iter().all(|h| h.order() != 15));
        assert!(subs.iter().all(|h| 75 % h.order() == 0));
        assert!(cyclic(300, 1000).unwrap().all_subgroups(256).is_err());
    }

    #[test]
    fn series() {
        let g = semidirect_cyclic(7, 3, 2, 256).unwrap();
        let d = g.derived_series();
        assert_eq!(orders(&d), vec![21, 7, 1]);
        let s4 = symmetric(4, 256).unwrap();
        assert_eq!(orders(&s4.derived_series()), vec![24, 12, 4, 1]);
        assert!(cyclic(6, 256).unwrap().commutator_subgroup().is_trivial());
        assert_eq!(orders(&s4.lower_central_series()), vec![24, 12]);
        let q = quaternion(256).unwrap();
        assert_eq!(orders(&q.lower_central_series()), vec![8, 2, 1]);
    }

    #[test]
    fn quotients() {
        let c6 = cyclic(6, 256).unwrap();
        let c3 = c6.subgroup_closure(&[2]);
        assert!(c6.quotient(&c3).unwrap().is_cyclic());
        assert_eq!(c6.quotient(&c3).unwrap().order(), 2);
        let g = semidirect_cyclic(7, 3, 2, 256).unwrap();
        let n = g.commutator_subgroup();
        let q = g.quotient(&n).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_cyclic());
        let gl = general_linear(3, 256).unwrap();
        let z = gl.center();
        assert_eq!(z.order(), 2);
        assert_eq!(gl.quotient(&z).unwrap().order(), 24);
        let s3 = symmetric(3, 256).unwrap();
        let t = s3.subgroup_closure(&[1]);
        assert!(s3.quotient(&t).is_err());
    }

    #[test]
    fn sylow() {
        let c12 = cyclic(12, 256).unwrap();
        let p = c12.sylow_subgroup(2).unwrap();
        assert_eq!(p.order(), 4);
        assert!(c12.subgroup_as_group(&p).is_cyclic());
        let g = semidirect_cyclic(7, 3, 2, 256).unwrap();
        let s7 = g.sylow_subgroup(7).unwrap();
        assert_eq!(s7.order(), 7);
        assert!(g.is_normal(&s7));
        assert_eq!(general_linear(3, 256).unwrap().sylow_subgroup(2).unwrap().order(), 16);
        assert!(g.sylow_subgroup(5).is_err());
    }

    #[test]
    fn abelian_invariants() {
        let g = direct_product(&cyclic(3, 256).unwrap(), &cyclic(9, 256).unwrap(), 256).unwrap();
        assert_eq!(g.abelian_invariants().unwrap().to_string(), "C3 x C9");
        let g = direct_product(&cyclic(4, 256).unwrap(), &cyclic(6, 256).unwrap(), 256).unwrap();
        assert_eq!(g.abelian_invariants().unwrap().to_string(), "C2 x C12");
        assert_eq!(symmetric(4, 256).unwrap().abelianization().to_string(), "C2");
        assert_eq!(general_linear(3, 256).unwrap().abelianization().to_string(), "C2");
        assert!(alternating(5, 256).unwrap().abelianization().is_trivial());
    }
}
