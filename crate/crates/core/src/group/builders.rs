//! Constructors for the group families used throughout the crate.

use super::{FiniteGroup, GroupError};
use crate::arith::{is_prime, pow_mod};

fn cap_check(order: u128, cap: usize) -> Result<(), GroupError> {
    if order > cap as u128 {
        Err(GroupError::SizeCap { order, cap })
    } else {
        Ok(())
    }
}

pub fn cyclic(n: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Spec("C 0".into(), "cyclic order must be positive".into()));
    }
    cap_check(n as u128, cap)?;
    let n = n as usize;
    let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
    let labels = (0..n).map(|k| k.to_string()).collect();
    FiniteGroup::from_table(n, table, Some(labels), cap)
}

/// `G x H`, element `(g, h)` at index `g*|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup, GroupError> {
    let (a, b) = (g.order(), h.order());
    cap_check(a as u128 * b as u128, cap)?;
    let n = a * b;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let first = g.mul((x / b) as u32, (y / b) as u32) as usize;
            let second = h.mul((x % b) as u32, (y % b) as u32) as usize;
            table.push((first * b + second) as u32);
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", g.label((x / b) as u32), h.label((x % b) as u32)))
        .collect();
    FiniteGroup::from_table(n, table, Some(labels), cap)
}

/// `N : H` where `action[h]` lists the images of the elements of `N` under
/// the automorphism attached to `h`. Products follow
/// `(n1,h1)(n2,h2) = (n1 * action[h1](n2), h1 h2)`, which requires
/// `action[h1 h2] = action[h1] o action[h2]`.
pub fn semidirect(
    normal: &FiniteGroup,
    top: &FiniteGroup,
    action: &[Vec<u32>],
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    let (a, b) = (normal.order(), top.order());
    cap_check(a as u128 * b as u128, cap)?;
    let bad = |why: &str| GroupError::Spec("semidirect product".into(), why.into());
    if action.len() != b || action.iter().any(|p| p.len() != a) {
        return Err(bad("action has the wrong shape"));
    }
    for phi in action {
        let mut seen = vec![false; a];
        for &x in phi {
            if x as usize >= a || std::mem::replace(&mut seen[x as usize], true) {
                return Err(bad("action is not a permutation"));
            }
        }
        for x in 0..a as u32 {
            for y in 0..a as u32 {
                if phi[normal.mul(x, y) as usize] != normal.mul(phi[x as usize], phi[y as usize]) {
                    return Err(bad("action is not by automorphisms"));
                }
            }
        }
    }
    for h1 in 0..b as u32 {
        for h2 in 0..b as u32 {
            let composed = &action[top.mul(h1, h2) as usize];
            let ok = (0..a).all(|x| composed[x] == action[h1 as usize][action[h2 as usize][x] as usize]);
            if !ok {
                return Err(bad("action is not a homomorphism"));
            }
        }
    }
    let n = a * b;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (n1, h1) = ((x / b) as u32, (x % b) as u32);
        for y in 0..n {
            let (n2, h2) = ((y / b) as u32, (y % b) as u32);
            let nn = normal.mul(n1, action[h1 as usize][n2 as usize]) as usize;
            let hh = top.mul(h1, h2) as usize;
            table.push((nn * b + hh) as u32);
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", normal.label((x / b) as u32), top.label((x % b) as u32)))
        .collect();
    FiniteGroup::from_table(n, table, Some(labels), cap)
}

/// `C_m : C_n` with the generator of `C_n` acting by `x -> x^b`.
pub fn semidirect_cyclic(m: u64, n: u64, b: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    if m == 0 || n == 0 {
        return Err(GroupError::Spec(
            format!("C {m} : C {n} @ {b}"),
            "orders must be positive".into(),
        ));
    }
    if pow_mod(b, n, m) != 1 % m {
        return Err(GroupError::InvalidTwist { m, n, b });
    }
    let normal = cyclic(m, cap.max(m as usize))?;
    let top = cyclic(n, cap.max(n as usize))?;
    let action: Vec<Vec<u32>> = (0..n)
        .map(|k| {
            let f = pow_mod(b, k, m);
            (0..m).map(|x| ((x * f) % m) as u32).collect()
        })
        .collect();
    semidirect(&normal, &top, &action, cap)
}

fn require_prime(p: u64, what: &str) -> Result<(), GroupError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::Spec(format!("{what} {p}"), format!("{p} is not prime")))
    }
}

type Mat2 = [u64; 4];

fn mat_mul(a: &Mat2, b: &Mat2, p: u64) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn matrices(p: u64, det_one: bool) -> Vec<Mat2> {
    let mut out = vec![[1, 0, 0, 1]];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    if m == [1, 0, 0, 1] {
                        continue;
                    }
                    let det = (a * d + p * p - b * c) % p;
                    if (det_one && det == 1) || (!det_one && det != 0) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn matrix_group(p: u64, det_one: bool, cap: usize) -> Result<FiniteGroup, GroupError> {
    require_prime(p, if det_one { "SL2" } else { "GL2" })?;
    let gl = (p * p - 1) as u128 * (p * p - p) as u128;
    cap_check(if det_one { gl / (p as u128 - 1) } else { gl }, cap)?;
    let elems = matrices(p, det_one);
    FiniteGroup::from_elements(
        elems,
        |a, b| mat_mul(a, b, p),
        |m| format!("[{} {};{} {}]", m[0], m[1], m[2], m[3]),
        cap,
    )
}

/// `GL_2(F_p)`.
pub fn general_linear(p: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    matrix_group(p, false, cap)
}

/// `SL_2(F_p)`.
pub fn special_linear(p: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    matrix_group(p, true, cap)
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] as usize == s {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = p[i] as usize;
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn perm_group(k: u64, even_only: bool, cap: usize) -> Result<FiniteGroup, GroupError> {
    let name = if even_only { "Alt" } else { "Sym" };
    if k == 0 || k > 5 {
        return Err(GroupError::Spec(
            format!("{name} {k}"),
            "degree must be between 1 and 5".into(),
        ));
    }
    let elems: Vec<Vec<u8>> = permutations(k as usize)
        .into_iter()
        .filter(|p| !even_only || is_even(p))
        .collect();
    // points move under the left factor first
    FiniteGroup::from_elements(
        elems,
        |a, b| a.iter().map(|&i| b[i as usize]).collect(),
        |p| cycle_notation(p),
        cap,
    )
}

pub fn symmetric(k: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    perm_group(k, false, cap)
}

pub fn alternating(k: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    perm_group(k, true, cap)
}

/// Quaternion group `<a, b | a^4 = 1, b^2 = a^2, b a b^-1 = a^-1>`, element
/// `a^i b^e` stored as `(i, e)`.
pub fn quaternion(cap: usize) -> Result<FiniteGroup, GroupError> {
    let elems: Vec<(u8, u8)> = (0..2).flat_map(|e| (0..4).map(move |i| (i, e))).collect();
    let names = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"];
    FiniteGroup::from_elements(
        elems,
        |&(i, e), &(j, f)| match (e, f) {
            (0, f) => ((i + j) % 4, f),
            (_, 0) => ((i + 4 - j) % 4, 1),
            _ => ((i + 6 - j) % 4, 0),
        },
        |&(i, e)| names[(e * 4 + i) as usize].to_string(),
        cap,
    )
}

/// Polynomial `x^2 + c1 x + c0` over `F_q` used for the matrix action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadratic {
    pub c1: u64,
    pub c0: u64,
}

fn has_root(f: Quadratic, q: u64) -> bool {
    (0..q).any(|x| (x * x + f.c1 * x + f.c0) % q == 0)
}

/// Companion matrix of `x^2 + c1 x + c0`, acting on column vectors.
fn companion(f: Quadratic, q: u64) -> Mat2 {
    [0, (q - f.c0 % q) % q, 1, (q - f.c1 % q) % q]
}

fn mat_order(a: &Mat2, q: u64) -> u64 {
    let mut m = *a;
    let mut k = 1;
    while m != [1, 0, 0, 1] {
        m = mat_mul(&m, a, q);
        k += 1;
    }
    k
}

/// Least `(c1, c0)` for which `x^2 + c1 x + c0` is irreducible over `F_q`
/// and its companion matrix has order exactly `n`.
pub fn auto_quadratic(q: u64, n: u64) -> Option<Quadratic> {
    (0..q)
        .flat_map(|c1| (1..q).map(move |c0| Quadratic { c1, c0 }))
        .find(|&f| !has_root(f, q) && mat_order(&companion(f, q), q) == n)
}

fn checked_companion(q: u64, n: u64, f: Quadratic) -> Result<(Quadratic, Mat2), GroupError> {
    require_prime(q, "MAT")?;
    let f = Quadratic {
        c1: f.c1 % q,
        c0: f.c0 % q,
    };
    if has_root(f, q) {
        return Err(GroupError::NotIrreducible(format!(
            "x^2 + {}x + {} has a root mod {q}",
            f.c1, f.c0
        )));
    }
    let a = companion(f, q);
    let order = mat_order(&a, q);
    if order != n {
        return Err(GroupError::NotIrreducible(format!(
            "x^2 + {}x + {} does not divide the {n}-th cyclotomic polynomial mod {q} (root order {order})",
            f.c1, f.c0
        )));
    }
    Ok((f, a))
}

fn mat_pow(a: &Mat2, k: u64, q: u64) -> Mat2 {
    (0..k).fold([1, 0, 0, 1], |acc, _| mat_mul(&acc, a, q))
}

/// `C_q x C_q` with `top` acting through `mats[h]`.
fn plane_semidirect(q: u64, top: &FiniteGroup, mats: &[Mat2], cap: usize) -> Result<FiniteGroup, GroupError> {
    let cq = cyclic(q, cap.max(q as usize))?;
    let plane = direct_product(&cq, &cq, cap.max((q * q) as usize))?;
    let action: Vec<Vec<u32>> = mats
        .iter()
        .map(|m| {
            (0..q * q)
                .map(|v| {
                    let (x, y) = (v / q, v % q);
                    let nx = (m[0] * x + m[1] * y) % q;
                    let ny = (m[2] * x + m[3] * y) % q;
                    (nx * q + ny) as u32
                })
                .collect()
        })
        .collect();
    semidirect(&plane, top, &action, cap)
}

/// `(C_q x C_q) : C_n` with the generator of `C_n` acting by the companion
/// matrix of an irreducible quadratic whose roots have order `n`.
pub fn matrix_semidirect(q: u64, n: u64, f: Quadratic, cap: usize) -> Result<FiniteGroup, GroupError> {
    require_prime(q, "MAT")?;
    cap_check(q as u128 * q as u128 * n as u128, cap)?;
    let (_, a) = checked_companion(q, n, f)?;
    let top = cyclic(n, cap.max(n as usize))?;
    let mats: Vec<Mat2> = (0..n).map(|i| mat_pow(&a, i, q)).collect();
    plane_semidirect(q, &top, &mats, cap)
}

/// Like [`matrix_semidirect`], with the Frobenius of `F_(q^2)` adjoined:
/// `(C_q x C_q) : (C_n : C_2)`, of order `2 n q^2`. Identifying the plane
/// with `F_q[x]/(f)`, the Frobenius fixes `1` and sends `x` to the other
/// root `-c1 - x`, and conjugates the companion matrix to its `q`-th power.
pub fn semilinear_semidirect(q: u64, n: u64, f: Quadratic, cap: usize) -> Result<FiniteGroup, GroupError> {
    require_prime(q, "MATF")?;
    cap_check(2 * q as u128 * q as u128 * n as u128, cap)?;
    let (f, a) = checked_companion(q, n, f)?;
    let frob: Mat2 = [1, (q - f.c1) % q, 0, q - 1];
    if mat_mul(&mat_mul(&frob, &a, q), &frob, q) != mat_pow(&a, q % n, q) {
        return Err(GroupError::Spec(
            format!("MATF {q}"),
            "Frobenius does not normalize the action".into(),
        ));
    }
    // element i*2 + s of C_n : C_2 is a^i t^s
    let top = semidirect_cyclic(n, 2, q % n, cap.max(2 * n as usize))?;
    let mats: Vec<Mat2> = (0..2 * n)
        .map(|x| {
            let m = mat_pow(&a, x / 2, q);
            if x % 2 == 1 {
                mat_mul(&m, &frob, q)
            } else {
                m
            }
        })
        .collect();
    plane_semidirect(q, &top, &mats, cap)
}

/// `((C_n)^3 / diagonal) : S_3` with `S_3` permuting coordinates, of order
/// `6 n^2`; the full automorphism group of the degree-`n` Fermat curve for
/// `n >= 4`.
pub fn fermat(n: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Spec("FERMAT 0".into(), "n must be positive".into()));
    }
    cap_check(6 * n as u128 * n as u128, cap)?;
    let cn = cyclic(n, cap.max(n as usize))?;
    let plane = direct_product(&cn, &cn, cap.max((n * n) as usize))?;
    let s3 = symmetric(3, cap.max(6))?;
    // element g of s3 is permutations(3)[g]: both list S_3 in the same order
    let as_perm = permutations(3);
    let action: Vec<Vec<u32>> = as_perm
        .iter()
        .map(|sigma| {
            (0..n * n)
                .map(|v| {
                    let coords = [v / n, v % n, 0];
                    let moved: Vec<u64> = (0..3).map(|i| coords[sigma[i] as usize]).collect();
                    let x = (moved[0] + n - moved[2]) % n;
                    let y = (moved[1] + n - moved[2]) % n;
                    (x * n + y) as u32
                })
                .collect()
        })
        .collect();
    semidirect(&plane, &s3, &action, cap)
}
