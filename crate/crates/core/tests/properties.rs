use proptest::prelude::*;

use pathpuzzle_core::harness::{gen_instance, GenSpec, Instance};
use pathpuzzle_core::oracles::{enumerate_1in3, enumerate_lo, enumerate_nkdm, OracleCaps};
use pathpuzzle_core::pathpuzzle::{
    count_paths, enumerate_paths, verify_path, Engine, SearchOptions,
};
use pathpuzzle_core::reductions::{
    check_endpoint_disjoint, in_window, normalize_nkdm, reduce_3dm_to_n4dm, reduce_n3dm_to_lo,
    reduce_n4dm_to_n3dm, reduce_sat_to_3dm, Reduction,
};
use pathpuzzle_core::{
    Cnf1in3, Door, Int, Label, LengthOffsetsInstance, PathPuzzle, Runs, Side, TextFormat,
};

fn label() -> impl Strategy<Value = Label> {
    prop_oneof![Just(Label::Blank), (0u128..40).prop_map(Label::Count)]
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![
        Just(Side::Left),
        Just(Side::Right),
        Just(Side::Top),
        Just(Side::Bottom)
    ]
}

fn puzzle() -> impl Strategy<Value = PathPuzzle> {
    (1u128..8, 1u128..8).prop_flat_map(|(rows, cols)| {
        (
            prop::collection::vec(label(), rows as usize),
            prop::collection::vec(label(), cols as usize),
            (1..=rows, 1..=cols, side()),
            (1..=rows, 1..=cols, side()),
        )
            .prop_map(move |(rl, cl, a, b)| PathPuzzle {
                rows,
                cols,
                doors: [Door::new(a.0, a.1, a.2), Door::new(b.0, b.1, b.2)],
                row_labels: Runs::from_vec(rl),
                col_labels: Runs::from_vec(cl),
            })
    })
}

fn generated(spec: GenSpec, seed: u64) -> Option<Instance> {
    gen_instance(spec, seed).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn puzzle_text_round_trips(p in puzzle()) {
        let back = PathPuzzle::parse_text(&p.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), p.to_text());
        for r in 1..=p.rows {
            prop_assert_eq!(back.row_label(r), p.row_label(r));
        }
        for c in 1..=p.cols {
            prop_assert_eq!(back.col_label(c), p.col_label(c));
        }
    }

    #[test]
    fn formula_text_round_trips(clauses in prop::collection::vec([1usize..7, 1usize..7, 1usize..7], 1..6)) {
        let f = Cnf1in3::new(6, clauses);
        prop_assert_eq!(Cnf1in3::parse_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn generated_instances_round_trip(seed in any::<u64>(), which in 0usize..6) {
        let spec = [
            GenSpec::OneInThree { variables: 5, clauses: 3 },
            GenSpec::Tdm { part_size: 3, extra_triples: 1 },
            GenSpec::N4dm { size: 3 },
            GenSpec::N3dm { size: 2, target: 20 },
            GenSpec::Lo { intervals: 3, horizon: 12 },
            GenSpec::Pp { rows: 4, cols: 5 },
        ][which];
        if let Some(inst) = generated(spec, seed) {
            let back = Instance::parse_text(&inst.to_text()).unwrap();
            prop_assert_eq!(back.to_text(), inst.to_text());
            prop_assert_eq!(back.digest(), inst.digest());
            prop_assert_eq!(gen_instance(spec, seed).unwrap().digest(), inst.digest());
        }
    }

    #[test]
    fn compressed_runs_expand_to_their_input(v in prop::collection::vec(0u8..3, 0..40)) {
        let r = Runs::from_vec(v.clone());
        prop_assert_eq!(r.len(), v.len() as u128);
        prop_assert_eq!(r.to_vec().unwrap(), v.clone());
        let total: u128 = r.constant_runs().iter().map(|(_, n)| n).sum();
        prop_assert_eq!(total, v.len() as u128);
    }

    #[test]
    fn matching_stage_lifts_every_assignment(seed in any::<u64>(), clauses in 1usize..4) {
        let Some(Instance::OneInThree(f)) = generated(GenSpec::OneInThree { variables: 3, clauses }, seed) else {
            return Err(TestCaseError::reject("generator refused"));
        };
        let r = reduce_sat_to_3dm(&f).unwrap();
        prop_assert!(r.target().is_pairwise_sparse());
        for a in enumerate_1in3(&f, &OracleCaps::default()).unwrap() {
            let m = r.lift(&a).unwrap();
            prop_assert!(r.target().check_solution(&m).is_empty());
            prop_assert_eq!(r.project(&m).unwrap(), a);
        }
    }

    #[test]
    fn four_set_stage_keeps_sum_hypothesis(seed in any::<u64>(), n in 1usize..4) {
        let Some(Instance::Tdm(t)) = generated(GenSpec::Tdm { part_size: n, extra_triples: 0 }, seed) else {
            return Err(TestCaseError::reject("generator refused"));
        };
        let r = reduce_3dm_to_n4dm(&t).unwrap();
        prop_assert!(r.target().union_with_sums_is_set(2, 3));
    }

    #[test]
    fn three_set_stage_first_set_is_a_set(seed in any::<u64>(), n in 1usize..4) {
        let Some(Instance::Numerical(n4)) = generated(GenSpec::N4dm { size: n }, seed) else {
            return Err(TestCaseError::reject("generator refused"));
        };
        let r = reduce_n4dm_to_n3dm(&n4).unwrap();
        prop_assert!(r.target().is_set(0));
        let caps = OracleCaps::default();
        for s in enumerate_nkdm(&n4, &caps).unwrap() {
            let lifted = r.lift(&s).unwrap();
            prop_assert!(r.target().check_solution(&lifted).is_empty());
            prop_assert_eq!(r.project(&lifted).unwrap(), s);
        }
    }

    #[test]
    fn offsets_stage_conserves_length_and_separates_endpoints(seed in any::<u64>(), n in 1usize..4, extra in 0u128..7) {
        let Some(Instance::Numerical(n3)) = generated(GenSpec::N3dm { size: n, target: 10 + 4 * n as Int + extra }, seed) else {
            return Err(TestCaseError::reject("generator refused"));
        };
        let r = reduce_n3dm_to_lo(&n3).unwrap();
        let lo: &LengthOffsetsInstance = r.target();
        let total: Int = n3.sets.iter().flatten().sum();
        if total == n as Int * n3.target {
            let covered: Int = lo.densities.iter().map(|&d| d as Int).sum();
            prop_assert_eq!(covered, lo.lengths.iter().sum::<Int>());
        }
        for s in enumerate_lo(lo, &OracleCaps::default()).unwrap() {
            prop_assert!(check_endpoint_disjoint(lo, &s));
        }
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>(), n in 1usize..4) {
        let Some(Instance::Numerical(inst)) = generated(GenSpec::N4dm { size: n }, seed) else {
            return Err(TestCaseError::reject("generator refused"));
        };
        prop_assert!(in_window(&inst));
        let once = normalize_nkdm(&inst).unwrap();
        prop_assert!(once.is_identity());
        prop_assert_eq!(&once.instance, &inst);
    }

    #[test]
    fn engines_agree_on_random_puzzles(seed in any::<u64>(), rows in 1u128..5, cols in 1u128..6) {
        let Some(Instance::Pp(p)) = generated(GenSpec::Pp { rows, cols }, seed) else {
            return Err(TestCaseError::reject("generator refused"));
        };
        let frontier = count_paths(&p, &SearchOptions::default()).unwrap();
        let dfs = SearchOptions { engine: Engine::Dfs, ..SearchOptions::default() };
        let paranoid = SearchOptions { paranoid: true, ..SearchOptions::default() };
        prop_assert_eq!(&frontier, &count_paths(&p, &dfs).unwrap());
        prop_assert_eq!(&frontier, &count_paths(&p, &paranoid).unwrap());
        for path in enumerate_paths(&p, &SearchOptions::default()).unwrap() {
            prop_assert!(verify_path(&p, &path).is_empty());
        }
    }
}
