//! Finitely generated abelian groups in invariant-factor form, and the
//! abelianization of a Fuchsian group.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::signature::Signature;
use crate::snf::smith_decompose;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("invariant factors {0:?} do not form a divisibility chain of integers >= 2")]
    NotAChain(Vec<u64>),
    #[error("cannot parse abelian group {0:?}")]
    Parse(String),
}

/// `Z^free_rank x C_{d_1} x ... x C_{d_k}` with `d_1 | ... | d_k`, all `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    free_rank: u64,
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn new(free_rank: u64, invariant_factors: Vec<u64>) -> Result<Self, AbelianError> {
        let ok = invariant_factors.iter().all(|&d| d >= 2) && invariant_factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(AbelianError::NotAChain(invariant_factors));
        }
        Ok(FiniteAbelianGroup {
            free_rank,
            invariant_factors,
        })
    }

    /// Normal form of an arbitrary product of cyclic groups `C_{n_1} x ... `.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..orders.len())
            .map(|i| {
                (0..orders.len())
                    .map(|j| {
                        if i == j {
                            BigInt::from(orders[i])
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let sf = smith_decompose(&rows, orders.len());
        let mut free = 0;
        let mut factors = Vec::new();
        for d in sf.diagonal {
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                factors.push(d.to_u64().expect("factor fits"));
            }
        }
        FiniteAbelianGroup {
            free_rank: free,
            invariant_factors: factors,
        }
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn torsion_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() as u64 <= 1
    }

    /// Exponent of the torsion part (1 for a torsion-free group).
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    /// `trivial`, `C6`, `C2 x C2`, `Z^2 x C3 x C3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("C{d}")));
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = AbelianError;

    /// Accepts the display form; factors need not be in normal form
    /// (`C2 x C3` parses as `C6`). `Cn^k` is shorthand for `k` copies.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AbelianError::Parse(s.to_string());
        let s = s.trim();
        if s == "trivial" || s == "1" {
            return Ok(Self::trivial());
        }
        let mut free = 0u64;
        let mut orders = Vec::new();
        for part in s.split(['x', '×']) {
            let part = part.trim();
            let (base, count) = match part.split_once('^') {
                Some((b, c)) => (b.trim(), c.trim().parse::<u64>().map_err(|_| err())?),
                None => (part, 1),
            };
            if base == "Z" {
                free += count;
            } else {
                let n: u64 = base.strip_prefix('C').ok_or_else(err)?.parse().map_err(|_| err())?;
                if n == 0 {
                    return Err(err());
                }
                orders.extend(std::iter::repeat_n(n, count as usize));
            }
        }
        let torsion = Self::from_cyclic_orders(&orders);
        Ok(FiniteAbelianGroup {
            free_rank: free + torsion.free_rank,
            invariant_factors: torsion.invariant_factors,
        })
    }
}

/// Abelianization of a Fuchsian group together with the canonical images of
/// the elliptic generators.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub group: FiniteAbelianGroup,
    /// `images[i]` is the image of the `i`-th elliptic generator in torsion
    /// coordinates, component `k` taken modulo `invariant_factors[k]`.
    pub images: Vec<Vec<u64>>,
}

/// `Gamma / Gamma'`: free rank `2h` from the hyperbolic generators, torsion
/// from the cokernel of the relations `m_i e_i` and `e_1 + ... + e_r`.
pub fn abelianization(sig: &Signature) -> FiniteAbelianGroup {
    abelianization_with_images(sig).group
}

pub fn abelianization_with_images(sig: &Signature) -> Abelianization {
    let periods = sig.periods();
    let r = periods.len();
    let mut rows: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j {
                        BigInt::from(periods[i])
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    rows.push(vec![BigInt::one(); r]);
    let sf = smith_decompose(&rows, r);

    let mut free = 2 * sig.orbit_genus();
    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for (k, d) in sf.diagonal.iter().enumerate() {
        if d.is_zero() {
            free += 1;
        } else if !d.is_one() {
            kept.push(k);
            factors.push(d.to_u64().expect("invariant factor fits in u64"));
        }
    }
    // columns beyond the rank are free as well
    free += (r - sf.diagonal.len()) as u64;

    let images = (0..r)
        .map(|j| {
            kept.iter()
                .zip(&factors)
                .map(|(&k, &d)| {
                    let x = sf.col_transform[j][k].mod_floor(&BigInt::from(d));
                    x.to_u64().expect("reduced residue fits")
                })
                .collect()
        })
        .collect();
    Abelianization {
        group: FiniteAbelianGroup {
            free_rank: free,
            invariant_factors: factors,
        },
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> FiniteAbelianGroup {
        abelianization(&s.parse().unwrap())
    }

    #[test]
    fn table_examples() {
        assert_eq!(ab("(0;2,3,8)").to_string(), "C2");
        assert!(ab("(0;2,3,7)").is_trivial());
        assert_eq!(ab("(0;3,3,9)").to_string(), "C3 x C3");
        assert_eq!(ab("(1;3,3,3)").to_string(), "Z^2 x C3 x C3");
        assert_eq!(ab("(0;2,3,12)").to_string(), "C6");
        assert_eq!(ab("(0;2,4,6)").to_string(), "C2 x C2");
        assert_eq!(ab("(1;2)").to_string(), "Z^2");
        assert_eq!(ab("(2;-)").to_string(), "Z^4");
    }

    #[test]
    fn images_satisfy_relations() {
        for s in ["(0;2,3,12)", "(0;2,2,2,2,2,2,2)", "(0;3,3,9)", "(0;2,4,6)"] {
            let a = abelianization_with_images(&s.parse().unwrap());
            let sig: Signature = s.parse().unwrap();
            let f = a.group.invariant_factors();
            // m_i x_i = 0 and sum x_i = 0
            for (img, &m) in a.images.iter().zip(sig.periods()) {
                assert!(img.iter().zip(f).all(|(&c, &d)| (c * m) % d == 0));
            }
            for (k, &d) in f.iter().enumerate() {
                assert_eq!(a.images.iter().map(|v| v[k]).sum::<u64>() % d, 0);
            }
        }
    }

    #[test]
    fn parse_display_and_normalize() {
        let g: FiniteAbelianGroup = "C2 x C3".parse().unwrap();
        assert_eq!(g.to_string(), "C6");
        let g: FiniteAbelianGroup = "C2^6".parse().unwrap();
        assert_eq!(g.invariant_factors(), &[2, 2, 2, 2, 2, 2]);
        assert_eq!(g.torsion_order(), 64);
        assert!(FiniteAbelianGroup::new(0, vec![4, 2]).is_err());
        assert!("trivial".parse::<FiniteAbelianGroup>().unwrap().is_trivial());
    }
}
