//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rgd_core::oracle::{cross_verify, naive_children, naive_count, naive_levels, Membership};
use rgd_core::{
    boundary_subtree_counts, count_all, count_genus, expand, pseudo_grandchildren, CheckLoop,
    CheckOrder, CountMode, ExploreConfig, Explorer, GapSet, LevelCounter, Node, NodeState,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// n_35 as published in OEIS A007323.
const N35: u64 = 66_687_201;
/// n_71, too expensive to recompute here.
const N71: u64 = 2_604_033_182_682_582;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn baseline_levels() -> Outcome {
    let ((table, visited), t) = timed(|| {
        let table = count_all(&ExploreConfig::new(3)).map_err(|e| e.to_string());
        let mut visited = BTreeSet::new();
        Explorer::new(3).unwrap().explore(&mut |n: Node<'_>| {
            visited.insert(n.gaps());
        });
        (table, visited)
    });
    let table = table?;
    ensure(table.as_slice() == [1, 2, 4], || {
        format!("count_all(3) = {:?}", table.as_slice())
    })?;
    let expected: BTreeSet<Vec<usize>> = [
        &[1][..],
        &[1, 2],
        &[1, 3],
        &[1, 2, 3],
        &[1, 2, 4],
        &[1, 2, 5],
        &[1, 3, 5],
    ]
    .iter()
    .map(|g| g.to_vec())
    .collect();
    ensure(visited == expected, || format!("visited {visited:?}"))?;
    ensure(t < Duration::from_millis(1), || format!("took {t:?}"))?;
    Ok(format!("[1, 2, 4], 7 gap sets, {t:?}"))
}

fn oracle_equivalence() -> Outcome {
    let (res, t) = timed(|| -> Result<_, String> {
        let report = cross_verify(12).map_err(|e| e.to_string())?;
        let oracle = naive_count(12).map_err(|e| e.to_string())?;
        let explorer = count_all(&ExploreConfig::new(12)).map_err(|e| e.to_string())?;
        Ok((report, oracle, explorer))
    });
    let (report, oracle, explorer) = res?;
    ensure(report.is_ok(), || report.to_string())?;
    ensure(oracle == explorer, || {
        format!("{:?} vs {:?}", oracle.as_slice(), explorer.as_slice())
    })?;
    let fixture = common::fixture_counts(12);
    ensure(explorer.as_slice() == fixture, || {
        "explorer differs from frozen fixture".into()
    })?;
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!(
        "{report}; {} edges checked; {t:?}",
        report.edges_checked
    ))
}

fn differential() -> Outcome {
    let roots: Vec<NodeState> = common::explored(10)
        .into_iter()
        .filter(|n| n.classify().is_generic())
        .collect();
    ensure(roots.len() >= 200, || {
        format!("only {} generic roots", roots.len())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let fast = Explorer::new(14).unwrap();
    let slow = Explorer::with_check(
        14,
        CheckLoop {
            order: CheckOrder::Ascending,
            ..CheckLoop::default()
        },
    )
    .unwrap();
    let mut visits = 0;
    for root in roots.choose_multiple(&mut rng, 200) {
        let mut a = Vec::new();
        fast.rgd_recurse(root, &mut |n: Node<'_>| a.push(n.gaps()))
            .map_err(|e| e.to_string())?;
        let own = root.to_gaps().into_vec();
        let pos = a.iter().position(|g| *g == own).ok_or("root not visited")?;
        a.remove(pos);
        let mut b = Vec::new();
        slow.rgd_offspring(root, &mut |n: Node<'_>| b.push(n.gaps()));
        a.sort();
        b.sort();
        ensure(a == b, || {
            format!("root {root}: {} vs {} visits", a.len(), b.len())
        })?;
        visits += a.len();
    }
    Ok(format!("200 roots, {visits} descendant visits identical"))
}

fn closed_forms() -> Outcome {
    for gamma in 5..=20 {
        let mut tally = vec![0u64; gamma + 2];
        Explorer::new(gamma).unwrap().explore(&mut |n: Node<'_>| {
            if n.g == gamma {
                tally[n.m] += 1;
            }
        });
        let got = boundary_subtree_counts(gamma).map_err(|e| e.to_string())?;
        ensure(got == (tally[gamma], tally[gamma - 1]), || {
            format!(
                "gamma {gamma}: {got:?} vs {:?}",
                (tally[gamma], tally[gamma - 1])
            )
        })?;
    }
    let mut pairs = 0;
    for m in 3..=15 {
        for u in 2..=m {
            let gaps: Vec<usize> = (1..m).chain(m + 1..m + u).collect();
            let node = NodeState::from_gaps(&GapSet::new(gaps).unwrap()).unwrap();
            let c = node.conductor();
            let direct: usize = (c - m..c)
                .filter(|&s| node.chain().get(s))
                .map(|s| expand(&node, s).unwrap().right_generator_count())
                .sum();
            let formula = pseudo_grandchildren(m, u).map_err(|e| e.to_string())?;
            ensure(formula == direct as u64, || {
                format!("m={m} u={u}: {formula} vs {direct}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "boundary for gamma 5..=20, grandchildren for {pairs} (m, u) pairs"
    ))
}

fn oracle_jump(s: &Membership) -> usize {
    let m = s.multiplicity();
    (m + 1..).find(|&x| s.contains(x)).unwrap() - m
}

fn structural_properties() -> Outcome {
    const G: usize = 12;
    // (a) ordinary descendants have conductor 2c.
    for m in 2..=G + 1 {
        let node = NodeState::from_gaps(&GapSet::ordinary(m)).unwrap();
        let top = *node.right_generators().last().unwrap();
        ensure(top + 1 == 2 * node.conductor(), || {
            format!("ordinary m={m}")
        })?;
    }
    // (b) jump monotonicity on every explorer edge.
    let nodes = common::explored(G);
    let index: HashMap<GapSet, &NodeState> = nodes.iter().map(|n| (n.to_gaps(), n)).collect();
    let mut edges = 0;
    for n in nodes.iter().filter(|n| n.genus() >= 2) {
        let p = index[&common::parent_gaps(&n.to_gaps()).unwrap()];
        let expected = if n.multiplicity() != p.multiplicity() {
            1
        } else {
            p.jump() + n.is_pseudo_ordinary() as usize
        };
        ensure(n.jump() == expected, || format!("jump of {n}"))?;
        edges += 1;
    }
    // (c) and (d) on the oracle tree.
    let (mut weak, mut strong) = (0, 0);
    for level in naive_levels(G)
        .map_err(|e| e.to_string())?
        .iter()
        .take(G - 1)
    {
        for gaps in level {
            let parent = Membership::from_gaps(gaps);
            let (m, c) = (parent.multiplicity(), parent.conductor());
            if c == m {
                continue;
            }
            let u = oracle_jump(&parent);
            let pseudo = c == m + u;
            for child in naive_children(&parent) {
                let sigma = child.conductor() - 1;
                if sigma >= c + u {
                    ensure(!child.is_primitive(sigma + m), || {
                        format!("{gaps} minus {sigma}")
                    })?;
                    weak += 1;
                }
                let s = sigma - m;
                if pseudo && (u..2 * u).contains(&s) && s != m {
                    ensure(child.is_primitive(2 * m + s), || {
                        format!("{gaps} minus {sigma}")
                    })?;
                    strong += 1;
                }
            }
        }
    }
    Ok(format!(
        "{edges} edges; {weak} threshold and {strong} strong-generator cases"
    ))
}

fn growth() -> Outcome {
    let table =
        count_all(&ExploreConfig::new(30).mode(CountMode::AllGenera)).map_err(|e| e.to_string())?;
    ensure(table.first_growth_violation().is_none(), || {
        format!("fails at genus {:?}", table.first_growth_violation())
    })?;
    Ok(format!(
        "n_1..n_30 satisfy both inequalities, n_30 = {}",
        table.get(30).unwrap()
    ))
}

fn parallel_determinism() -> Outcome {
    let mut results = Vec::new();
    for threads in [1, 2, 4, 8] {
        let (n, t) = timed(|| count_genus(&ExploreConfig::new(30).threads(threads)));
        results.push((threads, n.map_err(|e| e.to_string())?, t));
    }
    let first = results[0].1;
    ensure(results.iter().all(|r| r.1 == first), || {
        format!("{results:?}")
    })?;
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let (t1, t8) = (results[0].2, results[3].2);
    let speedup = if cores >= 4 {
        ensure(t8.as_secs_f64() <= 0.5 * t1.as_secs_f64(), || {
            format!("8 threads {t8:?} vs 1 thread {t1:?} on {cores} cores")
        })?;
        format!("8 threads {t8:?} vs 1 thread {t1:?}")
    } else {
        format!("speedup clause not applicable: {cores} core(s) available")
    };
    Ok(format!("n_30 = {first} for 1/2/4/8 threads; {speedup}"))
}

fn performance() -> Outcome {
    let (n, t) = timed(|| count_genus(&ExploreConfig::new(35)));
    let n = n.map_err(|e| e.to_string())?;
    ensure(n == N35, || format!("n_35 = {n}, expected {N35}"))?;
    ensure(t <= Duration::from_secs(120), || format!("took {t:?}"))?;
    let mut counter = LevelCounter::new(35);
    Explorer::new(35).unwrap().explore(&mut counter);
    ensure(counter.get(35) == n, || {
        format!("full walk gives {}", counter.get(35))
    })?;
    let stretch = if t <= Duration::from_secs(20) {
        "stretch goal met"
    } else {
        "stretch goal missed"
    };
    Ok(format!("n_35 = {n} in {t:?} single-threaded ({stretch})"))
}

fn large_scale() -> Outcome {
    ExploreConfig::new(71)
        .validate()
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "n_71 = {N71} documented, not recomputed; genus 71 is within the 64-bit range"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("baseline levels", baseline_levels),
        ("oracle equivalence", oracle_equivalence),
        ("differential equivalence", differential),
        ("closed forms", closed_forms),
        ("structural properties", structural_properties),
        ("growth inequalities", growth),
        ("parallel determinism", parallel_determinism),
        ("performance envelope", performance),
        ("large-scale target", large_scale),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
