use mta_core::engine::{
    build_candidates, canonical_order, euclidean_distance, streamline, trivial_match_filter, within_threshold,
    MotifPool, MotifRecord, PairMatch,
};
use mta_core::oracle::{brute_force_motifs, brute_force_pairs, generate_planted, MotifTemplate, PlantSpec};
use mta_core::preprocess::{make_alphabet, prepare, symbolize, Symbol};
use mta_core::{run_mta, MtaConfig, ThresholdMode, TimeSeries, TmePolicy};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn noise(n: usize, seed: u64) -> TimeSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0).unwrap();
    TimeSeries::from_values((0..n).map(|_| normal.sample(&mut rng)).collect()).unwrap()
}

fn planted(len: usize, seed: u64, s: usize, copies: usize) -> (TimeSeries, Vec<usize>, usize) {
    let length = 4 * s + 1;
    let spec = PlantSpec {
        series_length: len,
        motif_templates: vec![MotifTemplate {
            shape: (0..length).map(|i| 3.0 * (i as f64 / 4.0).sin()).collect(),
            copies,
            noise_std: 0.05,
        }],
        background_std: 1.0,
        rng_seed: seed,
    };
    let (ts, truth) = generate_planted(&spec).unwrap();
    (ts, truth[0].starts.clone(), length)
}

#[test]
fn white_noise_yields_no_motifs() {
    let ts = noise(1000, 11);
    let (pool, stats) = run_mta(&ts, &MtaConfig::new(10, 6, 0.01)).unwrap();
    assert!(pool.is_empty());
    assert!(stats.generations <= 2);
}

#[test]
fn sine_occurrences_are_period_spaced() {
    let period = 50.0;
    let values: Vec<f64> = (0..1000)
        .map(|i| (2.0 * std::f64::consts::PI * i as f64 / period).sin())
        .collect();
    let ts = TimeSeries::from_values(values).unwrap();
    let (pool, _) = run_mta(&ts, &MtaConfig::new(10, 6, 0.01)).unwrap();
    let repeated: Vec<_> = pool.iter().filter(|m| m.occurrences.len() >= 3).collect();
    assert!(!repeated.is_empty());
    for m in repeated {
        for p in &m.pairs {
            let phase = ((p.second - p.first) as f64 / period).fract();
            let off = phase.min(1.0 - phase) * period;
            assert!(
                off < 1.0,
                "pair ({}, {}) is {off} points off the period grid",
                p.first,
                p.second
            );
        }
    }
}

#[test]
fn planted_motif_is_tracked_to_full_length() {
    let (ts, starts, length) = planted(600, 5, 10, 4);
    let cfg = MtaConfig::new(10, 6, 0.12);
    let (pool, _) = run_mta(&ts, &cfg).unwrap();
    let hit = pool.iter().find(|m| {
        m.length_points >= length - 1
            && starts
                .iter()
                .filter(|&&p| m.occurrences.iter().any(|&o| o.abs_diff(p) <= 1))
                .count()
                >= 3
    });
    assert!(hit.is_some(), "no motif covers three planted copies: {:?}", starts);
}

#[test]
fn tme_never_costs_more_accesses() {
    for seed in 0..5 {
        let (ts, _, _) = planted(500, seed, 10, 3);
        let cfg = MtaConfig::new(10, 6, 0.12);
        let (_, ntme) = run_mta(&ts, &cfg).unwrap();
        let (_, tme) = run_mta(&ts, &cfg.clone().with_tme(TmePolicy::Tme)).unwrap();
        assert!(tme.data_accesses <= ntme.data_accesses);
    }
}

#[test]
fn absolute_mode_matches_the_exhaustive_search() {
    for seed in 0..4 {
        let (ts, _, _) = planted(320, 100 + seed, 5, 3);
        let cfg = MtaConfig::new(5, 4, 1.5).with_threshold_mode(ThresholdMode::Absolute);
        let (pool, stats) = run_mta(&ts, &cfg).unwrap();
        let prep = prepare(&ts).unwrap();
        let lengths: Vec<usize> = (1..=stats.generations + 1)
            .map(|g| g * 5)
            .filter(|&l| l <= prep.len())
            .collect();
        let oracle = brute_force_motifs(&prep, &lengths, &cfg, true).unwrap();
        assert_eq!(pool, oracle, "seed {seed}");
    }
}

#[test]
fn default_mode_never_reports_pairs_the_exhaustive_search_rejects() {
    let (ts, _, _) = planted(400, 9, 10, 3);
    let cfg = MtaConfig::new(10, 6, 0.12);
    let (pool, _) = run_mta(&ts, &cfg).unwrap();
    let prep = prepare(&ts).unwrap();
    let mut lengths: Vec<usize> = pool.iter().map(|m| m.length_points).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let oracle = brute_force_pairs(&prep, &lengths, &cfg, true, 5_000).unwrap();
    for m in pool.iter() {
        let known = &oracle.iter().find(|l| l.length == m.length_points).unwrap().pairs;
        for p in &m.pairs {
            assert!(known.iter().any(|q| q.first == p.first && q.second == p.second));
        }
    }
}

fn symbols_strategy() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 1..200)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn capped_filter_gap_is_bounded(words in symbols_strategy(), cap in 0usize..12) {
        let kept = trivial_match_filter(&words, Some(cap));
        prop_assert_eq!(kept[0], 0);
        for w in kept.windows(2) {
            prop_assert!(w[1] - w[0] <= cap + 1);
        }
        let uncapped = trivial_match_filter(&words, None);
        prop_assert!(uncapped.iter().all(|i| kept.contains(i)));
        let longest_run = words.chunk_by(|a, b| a == b).map(<[u8]>::len).max().unwrap();
        if longest_run >= cap + 2 {
            prop_assert!(uncapped.len() < kept.len());
        }
    }

    #[test]
    fn candidate_words_read_the_symbol_matrix(seed in 0u64..1000, g in 1usize..4) {
        let ts = noise(120, seed);
        let prep = prepare(&ts).unwrap();
        let matrix = symbolize(&prep, 5, &make_alphabet(4).unwrap()).unwrap();
        let c = build_candidates(&matrix, g, TmePolicy::Ntme).unwrap();
        for w in &c.words {
            prop_assert_eq!(w.span, g * 5);
            prop_assert_eq!(Some(w.symbols.clone()), matrix.word_at(w.start, g));
        }
    }

    #[test]
    fn reported_pairs_reproduce(seed in 0u64..500) {
        let (ts, _, _) = planted(300, seed, 5, 3);
        let cfg = MtaConfig::new(5, 4, 0.12);
        let (pool, _) = run_mta(&ts, &cfg).unwrap();
        let prep = prepare(&ts).unwrap();
        for m in pool.iter() {
            prop_assert!(m.occurrences.len() >= 2);
            prop_assert_eq!(m.length_points % 5, 0);
            for p in &m.pairs {
                let d = euclidean_distance(prep.window(p.first, m.length_points), prep.window(p.second, m.length_points)).unwrap();
                prop_assert_eq!(d.to_bits(), p.distance.to_bits());
                prop_assert!(within_threshold(d, m.length_points, cfg.threshold, cfg.threshold_mode));
            }
        }
        for w in pool.motifs().windows(2) {
            prop_assert!(canonical_order(&w[0], &w[1]).is_le());
        }
    }

    #[test]
    fn streamline_is_idempotent(records in prop::collection::vec(record_strategy(), 0..30)) {
        let once = streamline(records);
        let twice = streamline(once.clone().into_records());
        prop_assert_eq!(once.clone(), twice);
        for (i, a) in once.iter().enumerate() {
            for (j, b) in once.iter().enumerate() {
                if i != j {
                    prop_assert!(!(a.encapsulated_by(b)));
                }
            }
        }
    }
}

fn record_strategy() -> impl Strategy<Value = MotifRecord> {
    (1usize..5, prop::collection::vec((0usize..40, 1usize..40), 1..4)).prop_map(|(g, raw)| {
        let pairs = raw
            .into_iter()
            .map(|(a, gap)| PairMatch {
                first: a,
                second: a + gap,
                distance: (a + gap) as f64 / 10.0,
            })
            .collect();
        MotifRecord::from_pairs(vec![Symbol::from_index(g % 3); g], g * 10, pairs)
    })
}

#[test]
fn identical_records_collapse() {
    let r = MotifRecord::from_pairs(
        vec![Symbol::from_index(0)],
        10,
        vec![PairMatch {
            first: 3,
            second: 40,
            distance: 0.5,
        }],
    );
    let pool: MotifPool = streamline(vec![r.clone(), r.clone()]);
    assert_eq!(pool.len(), 1);
}

#[test]
fn random_series_round_trip_through_prepare() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let values: Vec<f64> = (0..50).map(|_| rng.random_range(-5.0..5.0)).collect();
    let prep = prepare(&TimeSeries::from_values(values).unwrap()).unwrap();
    let mean = prep.values.iter().sum::<f64>() / prep.len() as f64;
    let var = prep.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / prep.len() as f64;
    assert!(mean.abs() < 1e-12);
    assert!((var - 1.0).abs() < 1e-12);
}
