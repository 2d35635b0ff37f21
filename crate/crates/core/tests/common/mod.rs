//! Independent oracles: a filtered hypercube over all candidate arrays,
//! checked directly against the defining inequalities, and frozen family
//! sizes computed separately by a row-product search.

#![allow(dead_code)]

use gogmagog::{Entry, Kind, TrapezoidParams};

/// (n, ell, size) for n <= 6, ell <= 2. Both families have the same size.
pub const FAMILY_SIZES: &[(usize, i64, u64)] = &[
    (3, 0, 7),
    (3, 1, 35),
    (3, 2, 107),
    (4, 0, 35),
    (4, 1, 219),
    (4, 2, 816),
    (5, 0, 219),
    (5, 1, 1594),
    (5, 2, 6841),
    (6, 0, 1594),
    (6, 1, 12935),
    (6, 2, 61706),
];

pub fn params(n: usize, ell: i64) -> TrapezoidParams {
    TrapezoidParams::new(n, ell).unwrap()
}

fn is_magog(n: usize, ell: Entry, r1: &[Entry], r2: &[Entry]) -> bool {
    let rows_up = r1.windows(2).all(|w| w[0] <= w[1]) && r2.windows(2).all(|w| w[0] <= w[1]);
    let columns = (0..n - 1).all(|j| r1[j] <= r2[j]);
    let ceilings = (0..n).all(|j| r2[j] <= j as Entry + 1 + ell);
    let positive = r1.iter().chain(r2).all(|&v| v >= 1);
    rows_up && columns && ceilings && positive
}

fn is_gog(n: usize, ell: Entry, r1: &[Entry], r2: &[Entry]) -> bool {
    let rows_up = r1.windows(2).all(|w| w[0] <= w[1]) && r2.windows(2).all(|w| w[0] <= w[1]);
    let columns = (0..n - 1).all(|j| r1[j] < r2[j] && r2[j] < j as Entry + 3 + ell);
    let diagonal = (0..n - 1).all(|j| r1[j + 1] <= r2[j]);
    let positive = r1.iter().chain(r2).all(|&v| v >= 1);
    rows_up && columns && diagonal && positive
}

/// Every valid (row1, row2) pair, found by testing all arrays with entries
/// in `1..=n+ell+1`, sorted by the column-major linearization.
pub fn brute_force(kind: Kind, n: usize, ell: i64) -> Vec<(Vec<Entry>, Vec<Entry>)> {
    let (len1, len2) = match kind {
        Kind::Magog => (n - 1, n),
        Kind::Gog => (n, n - 1),
    };
    let top = n as Entry + ell + 1;
    let cells = len1 + len2;
    let mut digits = vec![1 as Entry; cells];
    let mut out = Vec::new();
    loop {
        let (r1, r2) = digits.split_at(len1);
        let ok = match kind {
            Kind::Magog => is_magog(n, ell, r1, r2),
            Kind::Gog => is_gog(n, ell, r1, r2),
        };
        if ok {
            out.push((r1.to_vec(), r2.to_vec()));
        }
        let mut i = 0;
        loop {
            if i == cells {
                out.sort_by_key(|(r1, r2)| linearize(kind, r1, r2));
                return out;
            }
            if digits[i] < top {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}

pub fn linearize(kind: Kind, r1: &[Entry], r2: &[Entry]) -> Vec<Entry> {
    let n = r1.len().max(r2.len());
    let mut key = Vec::new();
    for j in 0..n - 1 {
        key.push(r1[j]);
        key.push(r2[j]);
    }
    key.push(match kind {
        Kind::Magog => r2[n - 1],
        Kind::Gog => r1[n - 1],
    });
    key
}
