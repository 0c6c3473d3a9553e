//! Smith normal form of small integer matrices with unimodular transforms.

use alloc::vec;
use alloc::vec::Vec;

use super::numtheory::ext_gcd;

pub type IntMatrix = Vec<Vec<i64>>;

/// `left · a · right = diag`, where `diag` is diagonal with nonnegative entries
/// `d_1 | d_2 | …` and both transforms are unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diag: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries `d_1, …, d_min(m,n)`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let k = self.diag.len().min(self.diag.first().map_or(0, Vec::len));
        (0..k).map(|i| self.diag[i][i]).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[i64], m: &IntMatrix) -> Vec<i64> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| v.iter().zip(m).map(|(x, row)| x * row[j]).sum())
        .collect()
}

/// Inverse of a unimodular matrix by integer row reduction; `None` if `m` is not unimodular.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        // Euclid down the column until a single nonzero entry remains at or below `col`.
        loop {
            let nonzero: Vec<usize> = (col..n).filter(|&r| a[r][col] != 0).collect();
            if nonzero.is_empty() {
                return None;
            }
            let p = *nonzero.iter().min_by_key(|&&r| a[r][col].abs()).unwrap();
            a.swap(col, p);
            inv.swap(col, p);
            let mut done = true;
            for r in col + 1..n {
                if a[r][col] != 0 {
                    let q = a[r][col].div_euclid(a[col][col]);
                    for j in 0..n {
                        a[r][j] -= q * a[col][j];
                        inv[r][j] -= q * inv[col][j];
                    }
                    if a[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[col][col].abs() != 1 {
            return None;
        }
        if a[col][col] < 0 {
            for j in 0..n {
                a[col][j] = -a[col][j];
                inv[col][j] = -inv[col][j];
            }
        }
    }
    for col in (0..n).rev() {
        for r in 0..col {
            let q = a[r][col];
            if q != 0 {
                for j in 0..n {
                    a[r][j] -= q * a[col][j];
                    inv[r][j] -= q * inv[col][j];
                }
            }
        }
    }
    Some(inv)
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut left = identity(m);
    let mut right = identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry in the remaining block becomes the pivot.
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        left.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in right.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut changed = false;
            // Clear column t with row operations.
            for i in t + 1..m {
                if d[i][t] == 0 {
                    continue;
                }
                if d[i][t] % d[t][t] == 0 {
                    let f = d[i][t] / d[t][t];
                    combine_rows(&mut d, t, i, 1, 0, -f, 1);
                    combine_rows(&mut left, t, i, 1, 0, -f, 1);
                    continue;
                }
                let (g, x, y) = ext_gcd(d[t][t], d[i][t]);
                let (p, q) = (d[t][t] / g, d[i][t] / g);
                // [x y; -q p] has determinant 1.
                combine_rows(&mut d, t, i, x, y, -q, p);
                combine_rows(&mut left, t, i, x, y, -q, p);
                changed = true;
            }
            // Clear row t with column operations.
            for j in t + 1..n {
                if d[t][j] == 0 {
                    continue;
                }
                if d[t][j] % d[t][t] == 0 {
                    let f = d[t][j] / d[t][t];
                    combine_cols(&mut d, t, j, 1, 0, -f, 1);
                    combine_cols(&mut right, t, j, 1, 0, -f, 1);
                    continue;
                }
                let (g, x, y) = ext_gcd(d[t][t], d[t][j]);
                let (p, q) = (d[t][t] / g, d[t][j] / g);
                combine_cols(&mut d, t, j, x, y, -q, p);
                combine_cols(&mut right, t, j, x, y, -q, p);
                changed = true;
            }
            if !changed {
                break;
            }
        }

        // Divisibility: if d_t does not divide some later entry, fold that row in and redo.
        let bad = (t + 1..m)
            .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| d[i][j] % d[t][t] != 0);
        if let Some((i, _)) = bad {
            for j in 0..n {
                d[t][j] += d[i][j];
            }
            for j in 0..m {
                left[t][j] += left[i][j];
            }
            continue;
        }

        if d[t][t] < 0 {
            for j in 0..n {
                d[t][j] = -d[t][j];
            }
            for j in 0..m {
                left[t][j] = -left[t][j];
            }
        }
        t += 1;
    }

    SmithForm {
        left,
        right,
        diag: d,
    }
}

/// Rows `(r1, r2) <- (a·r1 + b·r2, c·r1 + e·r2)`.
fn combine_rows(m: &mut IntMatrix, r1: usize, r2: usize, a: i64, b: i64, c: i64, e: i64) {
    for j in 0..m[r1].len() {
        let (x, y) = (m[r1][j], m[r2][j]);
        m[r1][j] = a * x + b * y;
        m[r2][j] = c * x + e * y;
    }
}

/// Columns `(c1, c2) <- (a·c1 + b·c2, c·c1 + e·c2)`.
fn combine_cols(m: &mut IntMatrix, c1: usize, c2: usize, a: i64, b: i64, c: i64, e: i64) {
    for row in m.iter_mut() {
        let (x, y) = (row[c1], row[c2]);
        row[c1] = a * x + b * y;
        row[c2] = c * x + e * y;
    }
}

/// `k×k` determinantal divisors' quotients, an independent route to the invariant
/// factors for tiny matrices (test oracle).
pub fn invariant_factors_by_minors(a: &IntMatrix) -> Vec<i64> {
    use super::numtheory::gcd;
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut divisors = vec![1i64];
    for k in 1..=m.min(n) {
        let mut g = 0;
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let sub: IntMatrix = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                    .collect();
                g = gcd(g, det(&sub));
            }
        }
        divisors.push(g);
    }
    (1..divisors.len())
        .map(|k| {
            if divisors[k - 1] == 0 {
                0
            } else {
                divisors[k] / divisors[k - 1]
            }
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn det(m: &IntMatrix) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: IntMatrix = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn determinant(m: &IntMatrix) -> i64 {
    det(m)
}
