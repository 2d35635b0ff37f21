mod common;

use common::{brute_force, params};
use gogmagog::{Entry, Kind, Trapezoid};
use std::collections::HashSet;

/// Every array in the hypercube passes validation iff the oracle accepts it.
#[test]
fn validation_agrees_with_definitions() {
    for n in 3..=4 {
        for ell in 0..=1 {
            for kind in Kind::ALL {
                let members: HashSet<_> = brute_force(kind, n, ell).into_iter().collect();
                let (len1, len2) = (kind.row_len(1, n), kind.row_len(2, n));
                let top = n as Entry + ell + 2;
                let cells = len1 + len2;
                let mut digits = vec![0 as Entry; cells];
                let mut seen = 0;
                loop {
                    let (r1, r2) = digits.split_at(len1);
                    let t = Trapezoid::new(kind, params(n, ell), r1.to_vec(), r2.to_vec());
                    let valid = t.validate().is_valid();
                    assert_eq!(valid, members.contains(&(r1.to_vec(), r2.to_vec())), "{r1:?} {r2:?}");
                    seen += valid as usize;
                    let mut i = 0;
                    while i < cells && digits[i] == top {
                        digits[i] = 0;
                        i += 1;
                    }
                    if i == cells {
                        break;
                    }
                    digits[i] += 1;
                }
                assert_eq!(seen, members.len());
            }
        }
    }
}
