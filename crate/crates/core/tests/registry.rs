use autbound::actions::{find_generating_vector, genus_of_action};
use autbound::bounds::{solve_b, Attainability, BoundsError, ClassContext, Extra, Parity, Registry, CLASS_EDGES};
use autbound::classify::{classify, Decision, CLASS_NAMES};
use autbound::config::Caps;
use autbound::group::construct_with_cap;
use autbound::Rational;

fn contexts() -> Vec<ClassContext> {
    let mut out = vec![ClassContext::any(), ClassContext::odd()];
    for p in [3, 5, 7, 11, 13] {
        out.push(ClassContext::with_min_prime(p));
    }
    for pq in [
        (Some(2), Some(3)),
        (Some(2), Some(5)),
        (Some(2), Some(7)),
        (Some(2), Some(13)),
        (Some(3), Some(5)),
        (Some(3), Some(7)),
        (Some(3), Some(13)),
        (Some(5), Some(11)),
        (Some(7), None),
        (None, Some(7)),
        (None, None),
    ] {
        out.push(ClassContext::with_pq(pq.0, pq.1));
        if pq.0 != Some(2) {
            let mut c = ClassContext::with_pq(pq.0, pq.1);
            c.parity = Parity::Odd;
            out.push(c);
        }
    }
    for p in [2, 3, 5, 7] {
        out.push(ClassContext {
            extra: Extra::PGroup(p),
            ..ClassContext::default()
        });
    }
    out.push(ClassContext {
        extra: Extra::NotDivisibleBy8,
        ..ClassContext::default()
    });
    out
}

fn bound(reg: &Registry, class: &str, ctx: &ClassContext, g: u64) -> Option<Rational> {
    match reg.bound(class, ctx, g) {
        Ok(a) => Some(a.value),
        Err(BoundsError::NoRule { .. }) => None,
        Err(e) => panic!("{class} {ctx} {g}: {e}"),
    }
}

#[test]
fn odd_never_exceeds_any() {
    let reg = Registry::builtin();
    for class in CLASS_NAMES {
        for g in 2..200 {
            let odd = bound(&reg, class, &ClassContext::odd(), g);
            let any = bound(&reg, class, &ClassContext::any(), g);
            if let (Some(o), Some(a)) = (&odd, &any) {
                assert!(o <= a, "{class} g={g}: odd {o} > any {a}");
            }
            // an odd query sees every rule an unrestricted one does
            assert!(any.is_none() || odd.is_some(), "{class} g={g}");
        }
    }
}

#[test]
fn subclass_never_exceeds_superclass() {
    let reg = Registry::builtin();
    for (sub, sup) in CLASS_EDGES {
        for ctx in contexts() {
            for g in 2..200 {
                let (Some(a), Some(b)) = (bound(&reg, sub, &ctx, g), bound(&reg, sup, &ctx, g)) else {
                    continue;
                };
                assert!(a <= b, "{sub} <= {sup}, {ctx}, g={g}: {a} > {b}");
            }
        }
    }
}

#[test]
fn odd_elements_attainable_only_at_six_mod_ten() {
    let reg = Registry::builtin();
    for class in ["odd_elements_subgroup", "odd_commutator", "order_2_mod_4"] {
        for g in 2..2000u64 {
            let a = reg.attainable(class, &ClassContext::any(), g).unwrap();
            if a.status != Attainability::No {
                assert_eq!(g % 10, 6, "{class} g={g}: {a:?}");
            }
        }
    }
}

fn satisfies(ctx: &ClassContext, p: &autbound::classify::ClassProfile) -> bool {
    let order = p.order as u64;
    let smallest = p.smallest_prime.unwrap_or(u64::MAX);
    (ctx.parity == Parity::Any || order % 2 == 1)
        && ctx.min_prime.is_none_or(|m| smallest >= m)
        && ctx.pq.is_none_or(|(a, b)| {
            p.pq_signature
                .is_some_and(|(x, y)| a.is_none_or(|a| a == x) && b.is_none_or(|b| b == y))
        })
        && match ctx.extra {
            Extra::None => true,
            Extra::PGroup(q) => p.p_group == Some(q),
            Extra::NotDivisibleBy8 => order % 8 != 0,
        }
}

/// Every witness the registry hands out is built, lies in the queried class
/// and context, has the bound as its order, and acts with the stated
/// signature on a surface of the queried genus.
#[test]
fn witnesses_close_the_loop() {
    let reg = Registry::builtin();
    let caps = Caps::default();
    let mut checked = 0;
    for class in CLASS_NAMES {
        for ctx in contexts() {
            for g in 2..=40u64 {
                let Ok(w) = reg.witness(class, &ctx, g) else {
                    continue;
                };
                let b = reg.bound(class, &ctx, g).unwrap().value;
                if w.order > caps.group as u64 {
                    continue;
                }
                let group = construct_with_cap(&w.group, caps.group).unwrap();
                assert_eq!(group.order() as u64, w.order);
                let profile = classify(&group, caps.subgroup);
                let measured = if class == "exponent" { group.exponent() } else { w.order };
                assert_eq!(
                    Rational::from_integer(measured.into()),
                    b,
                    "{class} {ctx} g={g} {}",
                    w.group
                );
                assert_eq!(
                    profile.member_of(class).unwrap(),
                    Decision::Yes,
                    "{class} {ctx} g={g} {}",
                    w.group
                );
                assert!(satisfies(&ctx, &profile), "{class} {ctx} g={g} {}", w.group);
                let v = find_generating_vector(&group, &w.signature, &caps)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{} has no vector for {}", w.group, w.signature));
                v.verify(&group).unwrap();
                assert_eq!(genus_of_action(&group, &w.signature).unwrap(), g);
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "only {checked} witnesses checked");
}

#[test]
fn solve_b_matches_exhaustive_search() {
    for t in 2..=10_000u64 {
        let brute = (1..t).find(|&b| (1 + b + b * b) % t == 0);
        let b = solve_b(t);
        assert_eq!(b, brute, "t={t}");
        if let Some(b) = b {
            assert_eq!((1 + b + b * b) % t, 0);
            assert_eq!(num::integer::gcd(b, t), 1);
        }
        // exists iff 9 does not divide t and the rest is built from primes 1 mod 3
        let core = if t % 3 == 0 { t / 3 } else { t };
        let criterion = core % 3 != 0 && autbound::arith::prime_divisors(core).iter().all(|p| p % 3 == 1);
        assert_eq!(b.is_some(), criterion, "t={t}");
    }
}
