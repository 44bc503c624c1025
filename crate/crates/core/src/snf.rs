//! Smith normal form over the integers.
//!
//! Relations are rows: for an `r x c` matrix `M` we compute unimodular
//! `U`, `V` with `U M V = D` diagonal. Only `V` is recorded because the
//! cokernel `Z^c / rowspace(M)` is identified with `Z^c / rowspace(D)` via
//! `x -> x V`; row `j` of `V` is therefore the image of the `j`-th generator.

use num::{BigInt, Integer, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// `d_1 | d_2 | ...`, non-negative, zeros last. Length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    /// `cols x cols` unimodular column transform.
    pub col_transform: Vec<Vec<BigInt>>,
}

/// Invariant factors of an integer matrix given as rows.
pub fn smith_normal_form(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    smith_decompose(&big, columns_of(rows)).diagonal
}

fn columns_of<T>(rows: &[Vec<T>]) -> usize {
    rows.first().map_or(0, Vec::len)
}

/// Full decomposition. `cols` is passed explicitly so that matrices with no
/// rows still have a well-defined column count.
pub fn smith_decompose(rows: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let nr = rows.len();
    assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let n = nr.min(cols);
    let mut diagonal = Vec::with_capacity(n);
    for t in 0..n {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            diagonal.extend(std::iter::repeat_with(BigInt::zero).take(n - t));
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, &mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_abs_in_cross(&a, t);
                a.swap(t, pi);
                swap_cols(&mut a, &mut v, t, pj);
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..nr).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    row_axpy(&mut a, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(a[t][t].clone());
    }
    SmithForm {
        diagonal,
        col_transform: v,
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row t / column t (the pivot cross).
fn min_abs_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, b: &BigInt| !x.is_zero() && (b.is_zero() || x.abs() < b.abs());
    for i in t..a.len() {
        if better(&a[i][t], &a[best.0][best.1]) {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if better(&a[t][j], &a[best.0][best.1]) {
            best = (t, j);
        }
    }
    best
}

/// row_i -= q * row_k
fn row_axpy(a: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let src = a[k].clone();
    for (x, s) in a[i].iter_mut().zip(src) {
        *x -= q * s;
    }
}

/// col_j -= q * col_k, mirrored on the transform.
fn col_axpy(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut().chain(v.iter_mut()) {
        let s = row[k].clone();
        row[j] -= q * s;
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut().chain(v.iter_mut()) {
        row.swap(i, j);
    }
}
