//! Small-integer number theory used across the crate: factorization,
//! primality, gcd/lcm, modular arithmetic and exact root extraction.

use num::integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Least prime factor of `n >= 2`, by trial division.
pub fn smallest_prime_divisor(n: u64) -> u64 {
    assert!(n >= 2, "smallest_prime_divisor requires n >= 2");
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Prime factorization as ascending `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Exponent of `p` in `n` together with the cofactor.
pub fn valuation(mut n: u64, p: u64) -> (u32, u64) {
    let mut e = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        e += 1;
    }
    (e, n)
}

pub fn is_square_free(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Exact integer `k`-th root of `n` if it exists.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    if k == 0 {
        return None;
    }
    if n < 2 || k == 1 {
        return Some(n);
    }
    let approx = (n as f64).powf(1.0 / k as f64).round() as u64;
    (approx.saturating_sub(1)..=approx + 1).find(|c| c.checked_pow(k) == Some(n))
}

/// If `n = p^e` for a single prime `p` and `e >= 1`, return `(p, e)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Whether every prime factor of `n` lies in `primes` (1 qualifies).
pub fn is_smooth_over(n: u64, primes: &[u64]) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    for &p in primes {
        m = valuation(m, p).1;
    }
    m == 1
}

/// Modular inverse of `a` mod `m` when it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Combine `x = r_i mod m_i` for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> Option<(u64, u64)> {
    let mut acc_r: u128 = 0;
    let mut acc_m: u128 = 1;
    for &(r, m) in residues {
        let m = m as u128;
        if gcd(acc_m as u64, m as u64) != 1 {
            return None;
        }
        // acc_r + acc_m * k = r (mod m)
        let inv = inv_mod((acc_m % m) as u64, m as u64)? as u128;
        let diff = ((r as u128 % m) + m - acc_r % m) % m;
        let k = diff * inv % m;
        acc_r += acc_m * k;
        acc_m *= m;
        acc_r %= acc_m;
    }
    Some((acc_r as u64, acc_m as u64))
}
