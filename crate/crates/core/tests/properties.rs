use proptest::prelude::*;

use setpart::baselines::{greedy_partition, karmarkar_karp};
use setpart::io::{parse_instance, write_instance, ReportDocument};
use setpart::optimality::{brute_force_2opt_oracle, is_locally_2opt};
use setpart::oracle::{optimal_diff_enum, optimal_diff_mitm};
use setpart::partition::{abs_difference, complement, signed_difference};
use setpart::{solve, Engine, InitPolicy, Instance, SolverConfig, TieBreak, Value};

fn values(max_n: usize, max_mag: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![1 => Just(0i64), 8 => -max_mag..=max_mag], 0..=max_n)
}

fn config() -> impl Strategy<Value = SolverConfig> {
    (
        prop_oneof![
            Just(InitPolicy::RoundRobinDescending),
            Just(InitPolicy::FirstHalf),
            any::<u64>().prop_map(InitPolicy::SeededRandom),
        ],
        prop_oneof![Just(TieBreak::PreferNoSignFlip), Just(TieBreak::PreferSmallest)],
        prop_oneof![Just(Engine::Scan), Just(Engine::Reference)],
    )
        .prop_map(|(init, tie, engine)| {
            SolverConfig::default()
                .with_init(init)
                .with_tie_break(tie)
                .with_engine(engine)
                .with_trace(true)
        })
}

fn is_partition(n: usize, a: &[usize], b: &[usize]) -> bool {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all == (0..n).collect::<Vec<_>>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn solver_output_is_a_locally_optimal_partition(v in values(40, 1000), cfg in config()) {
        let inst = Instance::from_i64s(&v);
        let r = solve(&inst, &cfg);
        prop_assert!(is_partition(v.len(), &r.side1_indices, &r.side2_indices));
        prop_assert_eq!(signed_difference(&inst, &r.side1_indices, &r.side2_indices), r.magnitude_diff.clone());
        prop_assert_eq!(r.final_diff.clone(), r.magnitude_diff.abs());
        prop_assert!(r.traverses <= v.len() as u64);
        let verdict = is_locally_2opt(&inst, &r.side1_indices, &r.side2_indices).unwrap();
        prop_assert!(verdict.is_locally_2opt, "witness {:?}", verdict.witness);
    }

    #[test]
    fn trace_strictly_descends_to_final_diff(v in values(40, 50), cfg in config()) {
        let r = solve(&Instance::from_i64s(&v), &cfg);
        let trace = r.diff_trace.unwrap();
        prop_assert_eq!(trace.len() as u64, r.swaps + 1);
        prop_assert!(trace.windows(2).all(|w| w[1].cmp_abs(&w[0]).is_lt()));
        prop_assert_eq!(trace.last().unwrap().abs(), r.final_diff);
    }

    #[test]
    fn engines_agree(v in values(48, 30), cfg in config()) {
        let inst = Instance::from_i64s(&v);
        let a = solve(&inst, &cfg.with_engine(Engine::Reference));
        let b = solve(&inst, &cfg.with_engine(Engine::Scan));
        prop_assert!(a.same_outcome(&b), "{:?} vs {:?}", a, b);
    }

    #[test]
    fn scaling_and_negation(v in values(32, 1000), c in 1i64..5000, cfg in config()) {
        let inst = Instance::from_i64s(&v);
        let base = solve(&inst, &cfg);
        let c = Value::from(c);
        let scaled = solve(&inst.scaled(&c), &cfg);
        prop_assert_eq!(&scaled.side1_indices, &base.side1_indices);
        prop_assert_eq!(scaled.final_diff, &base.final_diff * &c);
        prop_assert_eq!(solve(&inst.negated(), &cfg).final_diff, base.final_diff);
    }

    #[test]
    fn checker_matches_brute_force(v in values(10, 20), mask in any::<u16>()) {
        let inst = Instance::from_i64s(&v);
        let side1: Vec<usize> = (0..v.len()).filter(|i| mask >> i & 1 == 1).collect();
        let (a, b) = complement(v.len(), &side1).unwrap();
        prop_assert_eq!(
            is_locally_2opt(&inst, &a, &b).unwrap(),
            brute_force_2opt_oracle(&inst, &a, &b).unwrap()
        );
    }

    #[test]
    fn checker_ignores_labels_and_scale(v in values(16, 100), mask in any::<u16>(), c in 1i64..100) {
        let inst = Instance::from_i64s(&v);
        let side1: Vec<usize> = (0..v.len()).filter(|i| mask >> i & 1 == 1).collect();
        let (a, b) = complement(v.len(), &side1).unwrap();
        let base = is_locally_2opt(&inst, &a, &b).unwrap();
        let swapped = is_locally_2opt(&inst, &b, &a).unwrap();
        prop_assert_eq!(&base, &swapped);
        let c = Value::from(c);
        let scaled = is_locally_2opt(&inst.scaled(&c), &a, &b).unwrap();
        prop_assert_eq!(scaled.is_locally_2opt, base.is_locally_2opt);
        prop_assert_eq!(scaled.current_diff, &base.current_diff * &c);
        prop_assert_eq!(
            scaled.witness.map(|w| (w.moved, w.new_diff)),
            base.witness.map(|w| (w.moved, &w.new_diff * &c))
        );
    }

    #[test]
    fn oracle_bounds_every_method(v in values(16, 1000)) {
        let inst = Instance::from_i64s(&v);
        let e = optimal_diff_enum(&inst).unwrap();
        let m = optimal_diff_mitm(&inst).unwrap();
        prop_assert_eq!(&e.optimal_diff, &m.optimal_diff);
        prop_assert_eq!(abs_difference(&inst, &m.witness_side1, &m.witness_side2(v.len())), m.optimal_diff);
        let parity = inst.total().is_even();
        for d in [
            solve(&inst, &SolverConfig::default()).final_diff,
            greedy_partition(&inst).final_diff,
            karmarkar_karp(&inst).final_diff,
        ] {
            prop_assert!(d >= e.optimal_diff);
            prop_assert_eq!(d.is_even(), parity);
        }
    }

    #[test]
    fn baselines_report_their_partitions(v in values(40, 1_000_000)) {
        let inst = Instance::from_i64s(&v);
        for r in [greedy_partition(&inst), karmarkar_karp(&inst)] {
            prop_assert!(is_partition(v.len(), &r.side1_indices, &r.side2_indices));
            prop_assert_eq!(abs_difference(&inst, &r.side1_indices, &r.side2_indices), r.final_diff);
        }
    }

    #[test]
    fn instance_text_round_trips(v in prop::collection::vec(any::<i64>(), 0..20), scale in 0u32..6) {
        let inst = Instance::from_i64s(&v).with_scale_exp(scale);
        let back = parse_instance(&write_instance(&inst)).unwrap();
        // Trailing fractional zeros may lower the parsed scale; compare rendered values.
        prop_assert_eq!(back.len(), inst.len());
        for (x, y) in inst.values.iter().zip(&back.values) {
            let lhs = x.scale_up(back.scale_exp);
            let rhs = y.scale_up(inst.scale_exp);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn report_json_round_trips(v in values(20, 1000), cfg in config()) {
        let inst = Instance::from_i64s(&v).with_id("case");
        let r = solve(&inst, &cfg);
        let doc = ReportDocument::from_solver(&inst, &r, &cfg);
        prop_assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
