//! Constructions of groups attaining registry bounds, and the modular solver
//! behind the `C_t : C_3` family.

use std::fmt;
use std::str::FromStr;

use crate::arith::{crt, factorize, inv_mod, is_prime, pow_mod};
use crate::group::{GroupSpec, MatrixAction};
use crate::Signature;

/// A group to build and the signature it should act with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPlan {
    pub spec: GroupSpec,
    pub signature: Signature,
    pub order: u64,
}

macro_rules! recipes {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        pub enum Recipe {
            $($variant,)*
        }

        impl Recipe {
            pub const ALL: &'static [Recipe] = &[$(Recipe::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Recipe::$variant => $name,)*
                }
            }
        }

        impl FromStr for Recipe {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(Recipe::$variant),)*
                    other => Err(format!("unknown witness recipe {other:?}")),
                }
            }
        }
    };
}

recipes! {
    TwoThree48 => "two-three-48",
    TwoGroup16 => "two-group-16",
    SmallPrimeTriangle => "small-prime-triangle",
    CyclicPm => "cyclic-pm",
    AbelianPm => "abelian-pm",
    Order75 => "order-75",
    Order21 => "order-21",
    CyclicByThree => "cyclic-by-three",
    Order24 => "order-24",
    Order150 => "order-150",
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn tri(a: u64, b: u64, c: u64) -> Signature {
    Signature::triangle(a, b, c).expect("recipe signatures are hyperbolic")
}

fn plan(spec: GroupSpec, signature: Signature) -> Result<WitnessPlan, String> {
    let order = u64::try_from(spec.expected_order()).map_err(|_| "order exceeds u64".to_string())?;
    Ok(WitnessPlan { spec, signature, order })
}

fn only_at(g: u64, genera: &[u64]) -> Result<(), String> {
    if genera.contains(&g) {
        Ok(())
    } else {
        Err(format!("construction known only for genus {genera:?}, not {g}"))
    }
}

impl Recipe {
    /// The construction at genus `g`, with `p` the prime the rule was
    /// evaluated at where relevant.
    pub fn plan(self, g: u64, p: Option<u64>) -> Result<WitnessPlan, String> {
        let need_p = || p.ok_or_else(|| format!("recipe {self} needs a prime"));
        match self {
            Recipe::TwoThree48 => match g {
                2 => plan(GroupSpec::GeneralLinear(3), tri(2, 3, 8)),
                3 => plan(GroupSpec::Fermat(4), tri(2, 3, 8)),
                _ => only_at(g, &[2, 3]).map(|_| unreachable!()),
            },
            Recipe::TwoGroup16 => {
                only_at(g, &[2])?;
                plan(GroupSpec::CyclicSemidirect { m: 8, n: 2, b: 3 }, tri(2, 4, 8))
            }
            Recipe::SmallPrimeTriangle => {
                let p = need_p()?;
                if p < 5 || 2 * (g - 1) % (p - 3) != 0 {
                    return Err(format!("2(g-1)/(p-3) is not an integer for p = {p}"));
                }
                let t = 2 * (g - 1) / (p - 3);
                let spec = if t == 1 {
                    GroupSpec::Cyclic(p)
                } else if t == p {
                    GroupSpec::Product(Box::new(GroupSpec::Cyclic(p)), Box::new(GroupSpec::Cyclic(p)))
                } else if is_prime(t) && t % p == 1 {
                    let b = (2..t).find(|&b| pow_mod(b, p, t) == 1).expect("p divides t-1");
                    GroupSpec::CyclicSemidirect { m: t, n: p, b }
                } else {
                    return Err(format!("no construction for t = 2(g-1)/(p-3) = {t}"));
                };
                plan(spec, tri(p, p, p))
            }
            Recipe::CyclicPm => {
                let p = need_p()?;
                if (2 * g) % (p - 1) != 0 {
                    return Err(format!("p-1 = {} does not divide 2g", p - 1));
                }
                let m = 2 * g / (p - 1) + 1;
                if m % p == 0 {
                    return Err(format!("p divides m = {m}"));
                }
                plan(GroupSpec::Cyclic(p * m), tri(p, m, p * m))
            }
            Recipe::AbelianPm => {
                let p = need_p()?;
                if (2 * g) % (p - 1) != 0 {
                    return Err(format!("p-1 = {} does not divide 2g", p - 1));
                }
                let m = 2 * g / (p - 1) + 2;
                if m % p != 0 {
                    return Err(format!("p does not divide m = {m}"));
                }
                let spec = GroupSpec::Product(Box::new(GroupSpec::Cyclic(p)), Box::new(GroupSpec::Cyclic(m)));
                plan(spec, tri(p, m, m))
            }
            Recipe::Order75 => {
                only_at(g, &[6])?;
                let spec = GroupSpec::Matrix {
                    q: 5,
                    n: 3,
                    action: MatrixAction::Auto,
                };
                plan(spec, tri(3, 3, 5))
            }
            Recipe::Order21 => {
                only_at(g, &[3])?;
                plan(GroupSpec::CyclicSemidirect { m: 7, n: 3, b: 2 }, tri(3, 3, 7))
            }
            Recipe::CyclicByThree => {
                let t = 2 * g + 1;
                let b = solve_b(t).ok_or_else(|| format!("t = {t} has no b with t | 1+b+b^2"))?;
                plan(GroupSpec::CyclicSemidirect { m: t, n: 3, b }, tri(3, 3, t))
            }
            Recipe::Order24 => {
                only_at(g, &[2])?;
                plan(GroupSpec::SpecialLinear(3), tri(3, 3, 4))
            }
            Recipe::Order150 => {
                only_at(g, &[6])?;
                let spec = GroupSpec::Semilinear {
                    q: 5,
                    n: 3,
                    action: MatrixAction::Auto,
                };
                plan(spec, tri(2, 3, 10))
            }
        }
    }
}

/// Roots of `x^2 + x + 1` modulo `p^e`.
fn cube_roots_of_unity(p: u64, e: u32) -> Vec<u64> {
    if p == 3 {
        return if e == 1 { vec![1] } else { Vec::new() };
    }
    if p % 3 != 1 {
        return Vec::new();
    }
    let w = (2..p)
        .map(|a| pow_mod(a, (p - 1) / 3, p))
        .find(|&w| w != 1)
        .expect("F_p^* has elements of order 3");
    let modulus = (p as u128).pow(e);
    let mut roots = Vec::with_capacity(2);
    for start in [w, w * w % p] {
        // Newton step x -> x - f(x)/f'(x) doubles the p-adic precision.
        let mut x = start as u128;
        let mut m = p as u128;
        while m < modulus {
            m = (m * m).min(modulus);
            let f = (x * x + x + 1) % m;
            let df = ((2 * x + 1) % m) as u64;
            let inv = inv_mod(df, m as u64).expect("simple root") as u128;
            x = (x + m - f * inv % m) % m;
        }
        roots.push(x as u64);
    }
    roots
}

/// Least `b` in `[1, t)` with `t | 1 + b + b^2` (such `b` is prime to `t`).
pub fn solve_b(t: u64) -> Option<u64> {
    if t < 2 {
        return None;
    }
    let mut choices: Vec<(Vec<u64>, u64)> = Vec::new();
    for (p, e) in factorize(t) {
        let roots = cube_roots_of_unity(p, e);
        if roots.is_empty() {
            return None;
        }
        choices.push((roots, p.pow(e)));
    }
    let mut best: Option<u64> = None;
    let mut index = vec![0usize; choices.len()];
    loop {
        let residues: Vec<(u64, u64)> = choices.iter().zip(&index).map(|((r, m), &i)| (r[i], *m)).collect();
        let (b, _) = crt(&residues).expect("coprime moduli");
        let b = if b == 0 { t } else { b };
        if b < t {
            best = Some(best.map_or(b, |x| x.min(b)));
        }
        let mut k = 0;
        loop {
            if k == index.len() {
                return best;
            }
            index[k] += 1;
            if index[k] < choices[k].0.len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}
