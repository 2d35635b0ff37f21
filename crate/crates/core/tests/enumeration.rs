mod common;

use common::{brute_force, linearize, params, FAMILY_SIZES};
use gogmagog::enumeration::{canonical_key, enumerate_partition};
use gogmagog::{cell_upper_bound, count, enumerate, magog_to_gog, BigUint, Kind, Ranker, Trapezoid};
use std::collections::HashSet;

#[test]
fn enumeration_matches_brute_force() {
    for n in 3..=4 {
        for ell in 0..=2 {
            for kind in Kind::ALL {
                let oracle = brute_force(kind, n, ell);
                let got: Vec<_> = enumerate(kind, params(n, ell))
                    .unwrap()
                    .map(|t| (t.row1().to_vec(), t.row2().to_vec()))
                    .collect();
                assert_eq!(got, oracle, "{kind} n={n} ell={ell}");
            }
        }
    }
}

#[test]
fn counts_match_frozen_sizes() {
    for &(n, ell, size) in FAMILY_SIZES {
        for kind in Kind::ALL {
            assert_eq!(
                count(kind, params(n, ell)).unwrap(),
                BigUint::from(size),
                "{kind} n={n} ell={ell}"
            );
        }
    }
}

#[test]
fn column_sweep_matches_enumeration() {
    for n in 3..=7 {
        for ell in 0..=2 {
            for kind in Kind::ALL {
                let walked = enumerate(kind, params(n, ell)).unwrap().count();
                assert_eq!(count(kind, params(n, ell)).unwrap(), BigUint::from(walked));
            }
        }
    }
}

#[test]
fn stream_is_strictly_increasing_and_valid() {
    for (n, ell) in [(5, 0), (5, 2), (6, 1)] {
        for kind in Kind::ALL {
            let mut last: Option<Vec<i64>> = None;
            for t in enumerate(kind, params(n, ell)).unwrap() {
                assert!(t.validate().is_valid());
                let key = canonical_key(&t);
                assert_eq!(key, linearize(kind, t.row1(), t.row2()));
                if let Some(prev) = &last {
                    assert!(prev < &key);
                }
                last = Some(key);
            }
        }
    }
}

#[test]
fn bounds_are_attained() {
    for n in 3..=6 {
        for ell in 0..=2 {
            let p = params(n, ell);
            for kind in Kind::ALL {
                let all: Vec<Trapezoid> = enumerate(kind, p).unwrap().collect();
                for row in 1..=2 {
                    for j in 1..=kind.row_len(row, n) {
                        let cap = cell_upper_bound(kind, row, j, p).unwrap();
                        let max = all.iter().map(|t| t.row(row)[j - 1]).max().unwrap();
                        assert_eq!(max, cap, "{kind} ({row},{j}) n={n} ell={ell}");
                    }
                }
            }
        }
    }
}

#[test]
fn gog_bound_with_large_offset() {
    let p = params(8, 3);
    let max = enumerate(Kind::Gog, p).unwrap().map(|t| t.row1()[2]).max().unwrap();
    assert_eq!(max, 6);
    assert_eq!(cell_upper_bound(Kind::Gog, 1, 3, p).unwrap(), 6);
}

#[test]
fn images_cover_the_gog_family() {
    for n in 3..=7 {
        for ell in 0..=2 {
            let p = params(n, ell);
            let gogs: HashSet<Trapezoid> = enumerate(Kind::Gog, p).unwrap().collect();
            let mut images = HashSet::new();
            for t in enumerate(Kind::Magog, p).unwrap() {
                let Trapezoid::Magog(m) = t else { unreachable!() };
                assert!(images.insert(Trapezoid::Gog(magog_to_gog(&m).unwrap())));
            }
            assert_eq!(images, gogs, "n={n} ell={ell}");
        }
    }
}

#[test]
fn rank_unrank_on_small_families() {
    for n in 3..=5 {
        for ell in 0..=2 {
            for kind in Kind::ALL {
                let ranker = Ranker::new(kind, params(n, ell)).unwrap();
                for (idx, t) in enumerate(kind, params(n, ell)).unwrap().enumerate() {
                    let r = BigUint::from(idx);
                    assert_eq!(ranker.rank(&t).unwrap(), r);
                    assert_eq!(ranker.unrank(&r).unwrap(), t);
                }
                assert!(ranker.unrank(ranker.total()).is_err());
            }
        }
    }
}

#[test]
fn partitions_are_disjoint_and_ordered() {
    let p = params(5, 1);
    let full: Vec<_> = enumerate(Kind::Magog, p).unwrap().collect();
    for parts in [1, 2, 3, 7, 64] {
        let joined: Vec<_> = (0..parts)
            .flat_map(|i| enumerate_partition(Kind::Magog, p, i, parts).unwrap())
            .collect();
        assert_eq!(joined, full, "parts={parts}");
    }
}

#[test]
fn large_counts_agree() {
    let p = params(200, 0);
    assert_eq!(count(Kind::Magog, p).unwrap(), count(Kind::Gog, p).unwrap());
}
