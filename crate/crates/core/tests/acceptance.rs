//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use twinprof::fixtures::{figure_one_graph, figure_one_sequence};
use twinprof::logic::virtual_profile::{enumerate_virtual_profiles, virtual_node, Node, VirtualProfile};
use twinprof::logic::{encode_pds, encode_pvc, enumerate_templates, model_check_with, CountingSentence, QFFormula, Term};
use twinprof::oracle::{brute_count, brute_pds, brute_pvc};
use twinprof::pds::solve_pds_with;
use twinprof::profile::{enumerate_basic_profiles, size_bound, BasicProfile};
use twinprof::pvc::solve_pvc_with;
use twinprof::seqtool::{fixture_family, Family};
use twinprof::trigraph::{play_sequence, EdgeColor, Replay, Trigraph, VertexId};
use twinprof::{Error, PartialResult, SolveOptions};

const ORACLE_GRAPHS: u64 = 200;
const LOGIC_INSTANCES: u64 = 50;
const RANDOM_SENTENCES: u64 = 100;

/// Counts shared by the cross-cutting criteria.
#[derive(Default)]
struct Audit {
    checked_runs: usize,
    violations: Vec<String>,
    witnesses: usize,
    unsound: Vec<String>,
}

impl Audit {
    fn run<T>(&mut self, what: &str, result: Result<T, Error>) -> Result<T, String> {
        self.checked_runs += 1;
        result.map_err(|e| {
            if e.is_invariant() {
                self.violations.push(format!("{what}: {e}"));
            }
            format!("{what}: {e}")
        })
    }

    fn witness(&mut self, what: &str, ok: bool) {
        self.witnesses += 1;
        if !ok {
            self.unsound.push(what.to_string());
        }
    }
}

fn holds(phi: &QFFormula, g: &Trigraph, s: &[VertexId], y: VertexId) -> bool {
    let el = |t: &Term| match t {
        Term::X(a) => s[*a as usize - 1],
        Term::Y => y,
    };
    match phi {
        QFFormula::Equal(a, b) => el(a) == el(b),
        QFFormula::Adjacent(a, b) => g.neighbors(el(a)).any(|(z, _)| z == el(b)),
        QFFormula::Not(p) => !holds(p, g, s, y),
        QFFormula::And(p, q) => holds(p, g, s, y) && holds(q, g, s, y),
        QFFormula::Or(p, q) => holds(p, g, s, y) || holds(q, g, s, y),
    }
}

fn sentence_value(g: &Trigraph, sentence: &CountingSentence, s: &[VertexId]) -> u64 {
    let mut total = 0;
    for y in g.vertices() {
        total += sentence.psis.iter().filter(|psi| holds(psi, g, s, y)).count() as u64;
    }
    total
}

fn partial_witness_ok(r: &PartialResult, k: usize, value: impl Fn(&[VertexId]) -> u64) -> bool {
    match (&r.witness, r.best_value) {
        (Some(w), Some(v)) => w.len() == k && distinct(w) && value(w) == v,
        (None, None) => true,
        _ => false,
    }
}

fn figure_one() -> Result<String, String> {
    let (g, c) = (figure_one_graph(), figure_one_sequence());
    let width = play_sequence(&g, &c).map_err(|e| e.to_string())?.width();
    let fastest = (0..20)
        .map(|_| {
            let start = Instant::now();
            let r = play_sequence(&g, &c);
            let took = start.elapsed();
            drop(r);
            took
        })
        .min()
        .unwrap();
    if width != 2 {
        return Err(format!("width {width}, expected 2"));
    }
    if fastest >= Duration::from_millis(1) {
        return Err(format!("replay took {fastest:?}"));
    }
    Ok(format!("width 2, replay {fastest:?}"))
}

fn oracle_suite(audit: &mut Audit, cover: bool) -> Result<String, String> {
    let name = if cover { "pvc" } else { "pds" };
    let mut compared = 0;
    for i in 0..ORACLE_GRAPHS {
        let inst = grid_instance(i);
        for k in 0..=3usize {
            let what = format!("{name} k={k} on {}", inst.label);
            let run = if cover {
                solve_pvc_with(&inst.replay, k, 0, SolveOptions::checked())
            } else {
                solve_pds_with(&inst.replay, k, 0, SolveOptions::checked())
            };
            let got = audit.run(&what, run)?;
            let brute = if cover { brute_pvc(&inst.graph, k) } else { brute_pds(&inst.graph, k) };
            let want = brute.map_err(|e| e.to_string())?.map(|b| b.value);
            let expect_empty = if k == 0 { Some(0) } else { want };
            if got.best_value != expect_empty {
                return Err(format!("{what}: solver {:?}, brute force {want:?}", got.best_value));
            }
            let g = &inst.graph;
            let ok = partial_witness_ok(&got, k, |w| if cover { covered(g, w) } else { dominated(g, w) });
            audit.witness(&what, ok);
            compared += 1;
        }
    }
    Ok(format!("{compared} (graph, k) pairs equal"))
}

fn logic_vs_solvers(audit: &mut Audit) -> Result<String, String> {
    let mut compared = 0;
    for i in 0..LOGIC_INSTANCES {
        let inst = small_instance(0x10_61c0 + i, 4..=8);
        let k = 1 + (i % 2) as usize;
        for cover in [false, true] {
            let (sentence, name) = if cover {
                (encode_pvc(k).unwrap(), "pvc")
            } else {
                (encode_pds(k).unwrap(), "pds")
            };
            let what = format!("{name} k={k} on {}", inst.label);
            let mc = audit.run(&what, model_check_with(&inst.replay, &sentence, SolveOptions::checked()))?;
            let direct = if cover {
                solve_pvc_with(&inst.replay, k, 0, SolveOptions::checked())
            } else {
                solve_pds_with(&inst.replay, k, 0, SolveOptions::checked())
            };
            let direct = audit.run(&what, direct)?;
            if Some(mc.count) != direct.best_value {
                return Err(format!("{what}: model checker {}, solver {:?}", mc.count, direct.best_value));
            }
            let ok = mc
                .witness
                .as_ref()
                .is_some_and(|w| w.len() == k && distinct(w) && sentence_value(&inst.graph, &sentence, w) == mc.count);
            audit.witness(&what, ok);
            compared += 1;
        }
    }
    Ok(format!("{compared} encodings agree"))
}

fn model_checker_oracle(audit: &mut Audit) -> Result<String, String> {
    let mut r = rng(0xc0_ffee);
    let mut answered = 0;
    for i in 0..RANDOM_SENTENCES {
        let inst = small_instance(0x5e_47e0 + i, 3..=8);
        let sentence = random_sentence(&mut r);
        let what = format!("sentence {:?} on {}", sentence.to_text(), inst.label);
        let mc = audit.run(&what, model_check_with(&inst.replay, &sentence, SolveOptions::checked()))?;
        let brute = brute_count(&inst.graph, &sentence, true).map_err(|e| e.to_string())?;
        let want = brute.map_or(0, |b| b.value);
        if mc.count != want {
            return Err(format!("{what}: model checker {}, brute force {want}", mc.count));
        }
        if mc.answer != (mc.count >= sentence.t) && mc.witness.is_some() {
            return Err(format!("{what}: answer disagrees with the count"));
        }
        let ok = match &mc.witness {
            Some(w) => w.len() == sentence.k && distinct(w) && sentence_value(&inst.graph, &sentence, w) == mc.count,
            None => mc.count == 0,
        };
        audit.witness(&what, ok);
        answered += usize::from(mc.answer);
    }
    Ok(format!("{RANDOM_SENTENCES} sentences equal, {answered} answered YES"))
}

fn structural(audit: &Audit) -> Result<String, String> {
    if audit.checked_runs == 0 {
        return Err("no checked runs recorded".into());
    }
    match audit.violations.first() {
        None => Ok(format!("{} checked runs, 0 violations", audit.checked_runs)),
        Some(v) => Err(format!("{} violations, first: {v}", audit.violations.len())),
    }
}

fn witnesses(audit: &Audit) -> Result<String, String> {
    if audit.witnesses == 0 {
        return Err("no witnesses recorded".into());
    }
    match audit.unsound.first() {
        None => Ok(format!("{} witnesses reproduce their values", audit.witnesses)),
        Some(v) => Err(format!("{} unsound, first: {v}", audit.unsound.len())),
    }
}

fn linear_scaling() -> Result<String, String> {
    let mut times = Vec::new();
    for j in 8..=13 {
        let fx = fixture_family(Family::Path, 1 << j, 0).map_err(|e| e.to_string())?;
        if fx.width > 1 {
            return Err(format!("path sequence of width {}", fx.width));
        }
        let replay = play_sequence(&fx.graph, &fx.sequence).map_err(|e| e.to_string())?;
        let fastest = (0..3)
            .map(|_| {
                let start = Instant::now();
                let r = solve_pds_with(&replay, 2, 0, SolveOptions::default()).expect("path solve");
                assert_eq!(r.best_value, Some(6));
                start.elapsed()
            })
            .min()
            .unwrap();
        times.push(fastest);
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64()).collect();
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    if ratios.iter().all(|&r| r <= 2.5) {
        Ok(format!("ratios {}", shown.join(" ")))
    } else {
        Err(format!("ratios {} exceed 2.5", shown.join(" ")))
    }
}

fn red_connected(g: &Trigraph, t: &[VertexId]) -> bool {
    let mut seen = vec![t[0]];
    let mut stack = vec![t[0]];
    while let Some(x) = stack.pop() {
        for (y, c) in g.neighbors(x) {
            if c == EdgeColor::Red && t.contains(&y) && !seen.contains(&y) {
                seen.push(y);
                stack.push(y);
            }
        }
    }
    seen.len() == t.len()
}

fn subsets(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    (0..1u32 << items.len())
        .map(|m| items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

fn sets_around(g: &Trigraph, v: VertexId, k: usize, d: usize) -> Vec<Vec<VertexId>> {
    let live: Vec<VertexId> = g.vertices().collect();
    subsets(&live)
        .into_iter()
        .filter(|t| t.contains(&v) && t.len() <= k * (d + 1) && red_connected(g, t))
        .collect()
}

fn brute_basic(g: &Trigraph, v: VertexId, k: usize, d: usize) -> BTreeSet<BasicProfile> {
    let mut out = BTreeSet::new();
    for t in sets_around(g, v, k, d) {
        for dd in subsets(&t) {
            if dd.len() <= k {
                out.insert(BasicProfile { t: t.clone(), d: dd });
            }
        }
    }
    out
}

fn brute_virtual(g: &Trigraph, replay: &Replay, v: VertexId, k: usize, d: usize) -> BTreeSet<VirtualProfile> {
    let bags = replay.bags();
    let mut out = BTreeSet::new();
    let names: Vec<Node> = (1..=k as u32).map(virtual_node).collect();
    for t in sets_around(g, v, k, d) {
        let targets: Vec<Node> = t.iter().copied().chain(names.iter().copied()).collect();
        for h in enumerate_templates(k, false) {
            for code in 0..targets.len().pow(k as u32) {
                let f: Vec<Node> = (0..k).map(|a| targets[code / targets.len().pow(a as u32) % targets.len()]).collect();
                let named = (0..k).all(|a| !names.contains(&f[a]) || f[a] == virtual_node(h.class_of(a)));
                let fits = t.iter().all(|&u| f.iter().filter(|&&x| x == u).count() <= bags.size(u) as usize);
                if !named || !fits {
                    continue;
                }
                let mut dd: Vec<VertexId> = f.iter().copied().filter(|x| t.contains(x)).collect();
                dd.sort_unstable();
                dd.dedup();
                let mut vv: Vec<Node> = f.iter().copied().filter(|x| names.contains(x)).collect();
                vv.sort_unstable();
                vv.dedup();
                let mut slots = Vec::new();
                for &w in &vv {
                    for &x in t.iter().chain(&vv) {
                        if x < w {
                            slots.push((x, w));
                        }
                    }
                }
                slots.sort_unstable();
                for edges in 0..1u64 << slots.len() {
                    out.insert(VirtualProfile {
                        t: t.clone(),
                        d: dd.clone(),
                        virtuals: vv.clone(),
                        edges: slots.iter().enumerate().filter(|(i, _)| edges >> i & 1 == 1).map(|(_, &e)| e).collect(),
                        f: f.clone(),
                        h: h.clone(),
                    });
                }
            }
        }
    }
    out
}

fn enumeration() -> Result<String, String> {
    let mut trigraphs = 0;
    let mut profiles = (0, 0);
    for seed in 0..12 {
        let inst = small_instance(0xe0_0000 + seed, 4..=8);
        let d = inst.replay.width();
        for time in 1..=inst.replay.n() {
            let snap = inst.replay.snapshot(time);
            let g = snap.materialize();
            trigraphs += 1;
            for v in g.vertices() {
                for k in 1..=2 {
                    let basic: BTreeSet<BasicProfile> = enumerate_basic_profiles(&snap, v, k, d)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .collect();
                    let want = brute_basic(&g, v, k, d);
                    if basic != want {
                        return Err(format!("basic profiles around {v} at time {time} of {} differ", inst.label));
                    }
                    let templates = enumerate_templates(k, false);
                    let virt: Vec<VirtualProfile> =
                        enumerate_virtual_profiles(&snap, v, k, d, inst.replay.bags(), &templates).map_err(|e| e.to_string())?;
                    let n_listed = virt.len();
                    let virt: BTreeSet<VirtualProfile> = virt.into_iter().collect();
                    let want_virtual = brute_virtual(&g, &inst.replay, v, k, d);
                    if virt.len() != n_listed || virt != want_virtual {
                        return Err(format!("virtual profiles around {v} at time {time} of {} differ", inst.label));
                    }
                    profiles.0 += basic.len();
                    profiles.1 += virt.len();
                }
            }
            assert!(size_bound(2, d) == 2 * (d + 1));
        }
    }
    Ok(format!(
        "{trigraphs} trigraphs, {} basic and {} virtual profiles match",
        profiles.0, profiles.1
    ))
}

fn report(name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> bool {
    let start = Instant::now();
    let result = f();
    let took = start.elapsed();
    let result = match (result, limit) {
        (Ok(detail), Some(max)) if took >= max => Err(format!("{detail}; took {took:.2?}, limit {max:?}")),
        (r, _) => r,
    };
    match &result {
        Ok(detail) => println!("PASS  {name}: {detail} [{took:.2?}]"),
        Err(detail) => println!("FAIL  {name}: {detail} [{took:.2?}]"),
    }
    result.is_ok()
}

fn main() -> ExitCode {
    let mut audit = Audit::default();
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        report("figure one fixture", None, figure_one),
        report("pds oracle equivalence", secs(60), || oracle_suite(&mut audit, false)),
        report("pvc oracle equivalence", secs(60), || oracle_suite(&mut audit, true)),
        report("logic vs solvers", secs(120), || logic_vs_solvers(&mut audit)),
        report("model checker oracle equivalence", secs(120), || model_checker_oracle(&mut audit)),
        report("structural invariants", None, || structural(&audit)),
        report("witness soundness", None, || witnesses(&audit)),
        report("linear scaling smoke test", None, linear_scaling),
        report("enumeration soundness", None, enumeration),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
