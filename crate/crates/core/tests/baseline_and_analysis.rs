use mta_core::analysis::{compare_pools, periodicity_scan};
use mta_core::baseline::{condense_offset_duplicates, random_projection_detect, BaselineParams};
use mta_core::engine::{MotifPool, MotifRecord, PairMatch};
use mta_core::oracle::{generate_planted, MotifTemplate, PlantSpec};
use mta_core::{run_mta, Error, MtaConfig, TimeSeries};
use proptest::prelude::*;

fn series(seed: u64) -> TimeSeries {
    let spec = PlantSpec {
        series_length: 800,
        motif_templates: vec![MotifTemplate {
            shape: (0..80)
                .map(|i| 10.0 * (i as f64 / 13.0).sin() + 4.0 * (i as f64 / 5.0).cos())
                .collect(),
            copies: 4,
            noise_std: 0.05,
        }],
        background_std: 1.0,
        rng_seed: seed,
    };
    generate_planted(&spec).unwrap().0
}

fn chain(starts: &[usize], len: usize) -> MotifRecord {
    let pairs = starts
        .windows(2)
        .map(|w| PairMatch {
            first: w[0],
            second: w[1],
            distance: 1.0,
        })
        .collect();
    MotifRecord::from_pairs(Vec::new(), len, pairs)
}

#[test]
fn baseline_is_deterministic_under_seed() {
    let ts = series(3);
    let params = BaselineParams::for_length(80, 10, 6, 0.1);
    let a = random_projection_detect(&ts, &params).unwrap();
    let b = random_projection_detect(&ts, &params).unwrap();
    assert_eq!(a, b);
}

#[test]
fn raising_the_cutoff_never_adds_candidates() {
    let ts = series(4);
    let mut params = BaselineParams::for_length(80, 10, 6, 0.1);
    let mut previous = usize::MAX;
    for cutoff in [1, 5, 10, 15, 20] {
        params.cutoff = cutoff;
        let n = random_projection_detect(&ts, &params).unwrap().candidate_pairs.len();
        assert!(n <= previous);
        previous = n;
    }
}

#[test]
fn baseline_pairs_are_not_trivial_matches() {
    let ts = series(5);
    let params = BaselineParams::for_length(80, 10, 6, 0.1);
    let out = random_projection_detect(&ts, &params).unwrap();
    assert!(out.candidate_pairs.iter().all(|&(a, b)| a.abs_diff(b) >= 80));
    assert!(out.pool.iter().all(|m| m.occurrences.len() == 2));
    let condensed = condense_offset_duplicates(&out.pool, params.num_symbols);
    assert!(condensed.len() <= out.pool.len());
}

#[test]
fn baseline_and_mta_agree_on_a_clean_plant() {
    let ts = series(6);
    let (mta, _) = run_mta(&ts, &MtaConfig::new(10, 6, 0.05)).unwrap();
    let params = BaselineParams::for_length(80, 10, 6, 0.05);
    let base = condense_offset_duplicates(&random_projection_detect(&ts, &params).unwrap().pool, 8);
    let report = compare_pools(&base, &mta);
    assert!(report.totals.found >= 1);
}

#[test]
fn periodicity_worked_example() {
    let m = chain(&[0, 666, 1338, 2010, 2681, 3449, 4025], 598);
    let r = periodicity_scan(&m, 0.1).unwrap();
    assert_eq!(r.expected_interval, 671);
    let a = r.anomalies.iter().find(|a| a.previous_start == 2681).unwrap();
    assert_eq!(a.expected_start, 3352);
    assert_eq!(a.actual_start, Some(3449));
    assert_eq!(a.gap_window, (3352, 3949));
}

#[test]
fn periodicity_needs_three_occurrences() {
    assert!(matches!(
        periodicity_scan(&chain(&[0, 100], 50), 0.1),
        Err(Error::TooFewOccurrences { found: 2, .. })
    ));
}

fn pool_strategy() -> impl Strategy<Value = MotifPool> {
    prop::collection::vec((1usize..6, prop::collection::btree_set(0usize..500, 2..6)), 1..8).prop_map(|raw| {
        MotifPool::from_records(
            raw.into_iter()
                .map(|(g, starts)| chain(&starts.into_iter().collect::<Vec<_>>(), g * 10))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn comparing_a_pool_with_itself_is_exact(pool in pool_strategy()) {
        let report = compare_pools(&pool, &pool);
        prop_assert_eq!(report.totals.missing, 0);
        prop_assert_eq!(report.totals.length_error, 0);
        prop_assert_eq!(report.totals.location_error, 0);
        prop_assert!(report.rows.iter().all(|r| r.frequency_error == 0));
    }

    #[test]
    fn comparing_against_nothing_misses_everything(pool in pool_strategy()) {
        let report = compare_pools(&pool, &MotifPool::default());
        prop_assert_eq!(report.totals.found, 0);
        prop_assert_eq!(report.totals.missing, pool.len());
    }
}
