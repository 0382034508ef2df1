//! Cross-module properties on random inputs.

use proptest::prelude::*;

use dfamin::algo::Algorithm;
use dfamin::bench::{load_suite, run_suite, to_csv};
use dfamin::equivalence::language_equivalent;
use dfamin::generators::random_dfa;
use dfamin::ingest::{lts_to_dfa, parse_lts, write_dfa, write_lts, DEFAULT_SUBSET_BUDGET};
use dfamin::oracle::moore_oracle;
use dfamin::partition::partitions_equal;
use dfamin::quotient::quotient;
use dfamin::reachability::remove_unreachable;
use dfamin::{Limits, RacePolicy};

fn arb_dfa() -> impl Strategy<Value = dfamin::Dfa> {
    (1usize..80, 1usize..4, any::<u64>(), prop_oneof![Just(0.0), Just(0.1), Just(0.5), Just(1.0)])
        .prop_map(|(n, k, seed, p)| random_dfa(n, k, seed, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn quotient_by_oracle_is_minimal_and_equivalent(dfa in arb_dfa()) {
        let p = moore_oracle(&dfa);
        let q = quotient(&dfa, &p).unwrap();
        prop_assert!(language_equivalent(&dfa, &q).unwrap());
        prop_assert!(moore_oracle(&q).is_discrete());
    }

    #[test]
    fn unreachable_removal_keeps_the_language(dfa in arb_dfa()) {
        let trimmed = remove_unreachable(&dfa);
        prop_assert!(trimmed.num_states() <= dfa.num_states());
        prop_assert!(language_equivalent(&dfa, &trimmed).unwrap());
    }

    #[test]
    fn min_and_max_elections_agree_for_every_algorithm(dfa in arb_dfa()) {
        for algo in Algorithm::ALL {
            if algo == Algorithm::Trans && dfa.num_states() > 40 {
                continue;
            }
            let limits = Limits::unlimited();
            let (lo, _) = algo.run(&dfa, RacePolicy::DeterministicMin, &limits).unwrap();
            let (hi, _) = algo.run(&dfa, RacePolicy::DeterministicMax, &limits).unwrap();
            prop_assert!(partitions_equal(&lo, &hi).unwrap(), "{}", algo);
        }
    }

    #[test]
    fn ingestion_is_deterministic(n in 1usize..30, labels in 1usize..4, edges in 0usize..80, seed: u64) {
        let text = write_lts(&dfamin::generators::random_lts(n, labels, edges, seed));
        let once = write_dfa(&lts_to_dfa(&parse_lts(&text).unwrap(), DEFAULT_SUBSET_BUDGET).unwrap());
        let twice = write_dfa(&lts_to_dfa(&parse_lts(&text).unwrap(), DEFAULT_SUBSET_BUDGET).unwrap());
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn suite_rows_agree_and_are_deterministic_apart_from_time() {
    let mut suite = load_suite("fib:5..9").unwrap();
    suite.extend(load_suite("bits:3..6").unwrap());
    suite.extend(load_suite("random:50x2,120x3@11").unwrap());
    let algos = Algorithm::ALL;
    let strip_time = |csv: String| {
        csv.lines()
            .map(|l| {
                let mut cols: Vec<&str> = l.split(',').collect();
                cols.remove(7);
                cols.join(",")
            })
            .collect::<Vec<_>>()
    };
    let run = || run_suite(&suite, &algos, RacePolicy::DeterministicMin, &Limits::default(), 1);
    let rows = run();
    for per_bench in rows.chunks(algos.len()) {
        let blocks: Vec<_> = per_bench.iter().filter_map(|r| r.output_blocks).collect();
        assert_eq!(blocks.len(), algos.len());
        assert!(blocks.windows(2).all(|w| w[0] == w[1]), "{}", per_bench[0].benchmark);
    }
    assert_eq!(strip_time(to_csv(&rows)), strip_time(to_csv(&run())));
}
