//! Exact rank of integer matrices over the rationals.
//!
//! Elimination runs fraction-free on `i64` rows, dividing each updated row by
//! the gcd of its entries. If an intermediate value would overflow, the
//! computation restarts on `BigRational` entries, so the result is always the
//! exact rank over `Q`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Rank over `Q` of a dense integer matrix given by rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    match rank_fraction_free(rows.to_vec()) {
        Some(r) => r,
        None => rank_rational(rows),
    }
}

fn rank_fraction_free(mut rows: Vec<Vec<i64>>) -> Option<usize> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return Some(0);
    };
    let mut rank = 0;
    for col in 0..cols {
        // smallest nonzero entry keeps the growth down
        let pivot = (rank..rows.len())
            .filter(|&r| rows[r][col] != 0)
            .min_by_key(|&r| rows[r][col].unsigned_abs());
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let (done, rest) = rows.split_at_mut(rank + 1);
        let prow = &done[rank];
        let p = prow[col];
        for row in rest.iter_mut() {
            let a = row[col];
            if a == 0 {
                continue;
            }
            let g = p.gcd(&a);
            let (ps, as_) = (p / g, a / g);
            let mut content = 0i64;
            for (x, &y) in row.iter_mut().zip(prow.iter()).skip(col) {
                *x = x.checked_mul(ps)?.checked_sub(y.checked_mul(as_)?)?;
                content = content.gcd(x);
            }
            if content > 1 {
                for x in row.iter_mut().skip(col) {
                    *x /= content;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}

/// Plain Gaussian elimination over `BigRational`.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (done, rest) = m.split_at_mut(rank + 1);
        let prow = &done[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &prow[col];
            for (x, y) in row.iter_mut().zip(prow.iter()).skip(col) {
                *x -= &factor * y;
            }
            debug_assert!(row[col].abs().is_zero());
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
