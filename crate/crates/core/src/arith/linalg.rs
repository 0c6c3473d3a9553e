//! Exact rank over `Q` by Gaussian elimination.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Rational;

/// Rank of a dense rational matrix given as rows. Rows may have different lengths;
/// missing entries are zero.
pub fn rank(rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|mut r| {
            r.resize(cols, Rational::zero());
            r
        })
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pivot = pivot_row[col].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of an integer matrix, computed over `Q`.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect(),
    )
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((x % &p) + &p) % &p;
    r.to_u64().expect("reduced below the prime")
}

/// Rank over `F_p` with `p = 2^61 - 1`. Never exceeds the rank over `Q`.
pub fn rank_mod_prime(rows: &[Vec<BigInt>]) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<u64> = r.iter().map(reduce).collect();
            v.resize(cols, 0);
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][col], PRIME - 2);
        let pivot_row: Vec<u64> = m[rank].iter().map(|&x| mul_mod(x, inv)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if y != 0 {
                    *x = (*x + PRIME - mul_mod(f, y)) % PRIME;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Exact rank over `Q` of an integer matrix whose rank is known to be at most
/// `upper`. The modular rank is a lower bound, so reaching `upper` settles it;
/// otherwise the rank is recomputed over `Q`.
pub fn rank_with_bound(rows: &[Vec<BigInt>], upper: usize) -> usize {
    let r = rank_mod_prime(rows);
    if r >= upper {
        return r;
    }
    rank(
        rows.iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect(),
    )
}
