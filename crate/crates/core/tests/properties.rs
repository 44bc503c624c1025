mod common;

use std::collections::BTreeSet;

use autbound::abelianization;
use autbound::classify::{classify, ClassProfile};
use autbound::config::Caps;
use autbound::coset::{derived_chain, derived_subgroup_signature};
use autbound::enumerate::{brute_force_signatures, enumerate_signatures, EnumerationFilter};
use autbound::{Rational, Signature};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_matches_minor_gcds(m in matrix_strategy()) {
        check_snf(&m).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn coset_actions_multiply_measure((n, images) in coset_case_strategy()) {
        check_coset_case(n, &images).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_nested_loops(den in 7u64..=40, h_max in 0u64..=1, cap in 4u64..=16) {
        let threshold = Rational::new(1.into(), den.into());
        let filter = EnumerationFilter {
            orbit_genus_max: Some(h_max),
            max_period: Some(cap),
            ..EnumerationFilter::default()
        };
        let fast: BTreeSet<Signature> = enumerate_signatures(&threshold, &filter).unwrap().into_iter().collect();
        let slow: BTreeSet<Signature> = brute_force_signatures(&threshold, h_max, 12, cap).into_iter().collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn derived_subgroups_multiply_measure(a in 2u64..=12, b in 2u64..=12, c in 2u64..=30) {
        let Ok(sig) = Signature::triangle(a, b, c) else { return Ok(()) };
        let ab = abelianization(&sig);
        prop_assume!(!ab.is_trivial());
        prop_assume!(ab.torsion_order() <= 500);
        let (sub, quotient) = derived_subgroup_signature(&sig).unwrap();
        prop_assert_eq!(&quotient, &ab);
        check_additivity(&sig, &sub, ab.torsion_order() as usize).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn relabelling_preserves_the_profile(index in 0usize..64, seed in any::<u64>()) {
        let groups = corpus();
        let (name, g) = &groups[index % groups.len()];
        prop_assume!(g.order() <= 60);
        let mut perm: Vec<u32> = (0..g.order() as u32).collect();
        // Fisher-Yates driven by a small LCG seeded from proptest
        let mut state = seed | 1;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm).unwrap();
        let cap = Caps::default().subgroup;
        prop_assert_eq!(label_free(classify(g, cap)), label_free(classify(&h, cap)), "{}", name);
    }
}

/// Certificates may pick different subgroups under relabelling; only their
/// presence is invariant.
fn label_free(mut p: ClassProfile) -> ClassProfile {
    p.metacyclic_witness = p.metacyclic_witness.map(|_| (0, 0));
    p.zappa_indices = p.zappa_indices.map(|_| Vec::new());
    p
}

#[test]
fn classifier_lattice_holds_on_corpus() {
    let cap = Caps::default().subgroup;
    for (name, g) in corpus() {
        let p = classify(&g, cap);
        let bad = lattice_violations(&p);
        assert!(bad.is_empty(), "{name}: {bad:?}");
    }
}

#[test]
fn all_subgroups_match_brute_force() {
    let mut checked = 0;
    for (name, g) in corpus() {
        if g.order() > 16 {
            continue;
        }
        let fast: BTreeSet<Vec<u32>> = g
            .all_subgroups(usize::MAX)
            .unwrap()
            .iter()
            .map(|s| {
                let mut v = s.elements().to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        assert_eq!(fast, brute_force_subgroups(&g), "{name}");
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn derived_chains_multiply_measure() {
    for s in [
        "(0;2,3,8)",
        "(0;2,4,7)",
        "(0;2,3,10)",
        "(0;3,3,7)",
        "(0;2,5,5)",
        "(0;3,3,4)",
    ] {
        let sig: Signature = s.parse().unwrap();
        let chain = derived_chain(&sig, 3);
        let mut prev = sig.clone();
        for (sub, quotient) in &chain.steps {
            check_additivity(&prev, sub, quotient.torsion_order() as usize).unwrap();
            prev = sub.clone();
        }
    }
}
