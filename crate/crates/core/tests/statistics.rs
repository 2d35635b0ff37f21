mod common;

use common::{brute_force, params};
use gogmagog::enumeration::enumerate_magog;
use gogmagog::statistics::{distribution, find_statistic_counterexample, Distribution};
use gogmagog::{count, magog_to_gog, Kind, Pairing, StatComponent, StatSelector, Trapezoid};
use std::collections::BTreeMap;

#[test]
fn distribution_totals_match_counts() {
    for (n, ell) in [(3, 0), (4, 1), (5, 0), (5, 2)] {
        for kind in Kind::ALL {
            for selector in [StatSelector::mrr(), StatSelector::right_gog(), StatSelector::constant()] {
                let d = distribution(kind, params(n, ell), &selector).unwrap();
                assert_eq!(count(kind, params(n, ell)).unwrap(), d.total().into());
            }
        }
    }
}

#[test]
fn ones_in_row_two_for_smallest_magogs() {
    // fold over the hypercube oracle
    let mut expected = BTreeMap::new();
    for (_, r2) in brute_force(Kind::Magog, 3, 0) {
        let ones = r2.iter().filter(|&&v| v == 1).count() as i64;
        *expected.entry(vec![ones]).or_insert(0u64) += 1;
    }
    let d = distribution(Kind::Magog, params(3, 0), &StatSelector(vec![StatComponent::OnesRow2])).unwrap();
    assert_eq!(d.rows, expected);
    assert_eq!(d.total(), 7);
}

#[test]
fn split_tables_merge_to_the_whole() {
    let whole = distribution(Kind::Gog, params(4, 1), &StatSelector::mrr()).unwrap();
    let mut half = Distribution {
        rows: BTreeMap::new(),
        ..whole.clone()
    };
    half.merge(&whole);
    half.merge(&whole);
    assert_eq!(half.total(), 2 * whole.total());
}

#[test]
fn candidate_statistics_are_not_preserved() {
    for pairing in [Pairing::mrr(), Pairing::bc()] {
        let witness = (3..=6).find_map(|n| find_statistic_counterexample(params(n, 0), &pairing).unwrap());
        let w = witness.expect("a witness exists for n <= 6");
        assert_ne!(w.magog_stat.values(), w.gog_stat.values());
        assert_eq!(magog_to_gog(&w.magog).unwrap(), w.gog);
        assert_eq!(pairing.magog.extract(&Trapezoid::Magog(w.magog.clone())), w.magog_stat);
    }
}

#[test]
fn preserved_pairing_holds_everywhere() {
    let pairing = Pairing::constant();
    for n in 3..=5 {
        assert!(find_statistic_counterexample(params(n, 0), &pairing).unwrap().is_none());
        for m in enumerate_magog(params(n, 0)).unwrap() {
            assert!(pairing.preserved_on(&m, &magog_to_gog(&m).unwrap()));
        }
    }
}
