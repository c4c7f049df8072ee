mod common;

use common::*;
use proptest::prelude::*;
use twinprof::oracle::{brute_pds, brute_pvc};
use twinprof::pds::{solve_pds, solve_pds_with};
use twinprof::pvc::{solve_pvc, solve_pvc_with};
use twinprof::{Engine, SolveOptions};

fn max_degree(inst: &Instance) -> u64 {
    inst.graph.vertices().map(|v| inst.graph.degree(v)).max().unwrap_or(0) as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pds_matches_brute_force_on_any_sequence(seed in any::<u64>(), n in 1usize..=8, p in 0.0f64..1.0) {
        let inst = seeded_instance(seed, n, p, false);
        let mut last = 0;
        for k in 0..=3usize {
            let got = solve_pds_with(&inst.replay, k, 0, SolveOptions::checked()).unwrap();
            let want = if k == 0 { Some(0) } else { brute_pds(&inst.graph, k).unwrap().map(|b| b.value) };
            prop_assert_eq!(got.best_value, want, "k = {}", k);
            if let (Some(v), Some(w)) = (got.best_value, &got.witness) {
                prop_assert_eq!(dominated(&inst.graph, w), v);
                prop_assert!(v >= last);
                last = v;
            }
        }
    }

    #[test]
    fn pvc_matches_brute_force_on_any_sequence(seed in any::<u64>(), n in 1usize..=8, p in 0.0f64..1.0) {
        let inst = seeded_instance(seed, n, p, false);
        let m = inst.graph.num_edges() as u64;
        let mut last = 0;
        for k in 0..=3usize {
            let got = solve_pvc_with(&inst.replay, k, 0, SolveOptions::checked()).unwrap();
            let want = if k == 0 { Some(0) } else { brute_pvc(&inst.graph, k).unwrap().map(|b| b.value) };
            prop_assert_eq!(got.best_value, want, "k = {}", k);
            if let (Some(v), Some(w)) = (got.best_value, &got.witness) {
                prop_assert_eq!(covered(&inst.graph, w), v);
                prop_assert!(v >= last);
                prop_assert!(v <= m.min(k as u64 * max_degree(&inst)));
                last = v;
            }
        }
    }

    #[test]
    fn engines_agree(seed in any::<u64>(), n in 2usize..=7, p in 0.0f64..1.0, k in 1usize..=3) {
        let inst = seeded_instance(seed, n, p, true);
        let sweep = SolveOptions::checked().with_engine(Engine::Sweep);
        let a = solve_pds_with(&inst.replay, k, 0, SolveOptions::checked()).unwrap();
        let b = solve_pds_with(&inst.replay, k, 0, sweep).unwrap();
        prop_assert_eq!(a.best_value, b.best_value);
        let a = solve_pvc_with(&inst.replay, k, 0, SolveOptions::checked()).unwrap();
        let b = solve_pvc_with(&inst.replay, k, 0, sweep).unwrap();
        prop_assert_eq!(a.best_value, b.best_value);
    }

    #[test]
    fn threshold_decides_feasibility(seed in any::<u64>(), n in 1usize..=7, p in 0.0f64..1.0, k in 1usize..=2, t in 0u64..12) {
        let inst = seeded_instance(seed, n, p, true);
        let r = solve_pds(&inst.graph, &inst.sequence, k, t).unwrap();
        prop_assert_eq!(r.feasible, r.best_value.is_some_and(|v| v >= t));
        let r = solve_pvc(&inst.graph, &inst.sequence, k, t).unwrap();
        prop_assert_eq!(r.feasible, r.best_value.is_some_and(|v| v >= t));
    }
}

#[test]
fn larger_k_than_vertices_is_infeasible() {
    let inst = seeded_instance(7, 3, 0.5, true);
    let r = solve_pds(&inst.graph, &inst.sequence, 4, 0).unwrap();
    assert_eq!((r.feasible, r.best_value, r.witness), (false, None, None));
    let r = solve_pvc(&inst.graph, &inst.sequence, 0, 0).unwrap();
    assert!(r.feasible);
    assert_eq!(r.witness, Some(vec![]));
}

#[test]
fn family_fixtures() {
    use twinprof::seqtool::{fixture_family, Family};
    for (family, size) in [(Family::Path, 40), (Family::Cycle, 24), (Family::Cograph, 30), (Family::Grid, 4)] {
        let fx = fixture_family(family, size, 11).unwrap();
        for k in 1..=2 {
            let pds = solve_pds(&fx.graph, &fx.sequence, k, 0).unwrap();
            let w = pds.witness.unwrap();
            assert_eq!(dominated(&fx.graph, &w), pds.best_value.unwrap());
            let pvc = solve_pvc(&fx.graph, &fx.sequence, k, 0).unwrap();
            let w = pvc.witness.unwrap();
            assert_eq!(covered(&fx.graph, &w), pvc.best_value.unwrap());
        }
    }
    let path = fixture_family(Family::Path, 12, 0).unwrap();
    assert_eq!(solve_pds(&path.graph, &path.sequence, 2, 0).unwrap().best_value, Some(6));
    assert_eq!(solve_pvc(&path.graph, &path.sequence, 3, 0).unwrap().best_value, Some(6));
}
