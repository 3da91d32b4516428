mod common;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rgd_core::{CheckLoop, CheckOrder, Explorer, Node, NodeState};

const ROOT_GENUS: usize = 10;
const DEPTH: usize = 14;
const SAMPLES: usize = 200;

fn generic_roots() -> Vec<NodeState> {
    common::explored(ROOT_GENUS)
        .into_iter()
        .filter(|n| n.classify().is_generic())
        .collect()
}

fn visit_multiset(f: impl FnOnce(&mut dyn FnMut(Node<'_>))) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    f(&mut |n: Node<'_>| out.push(n.gaps()));
    out.sort();
    out
}

#[test]
fn recurse_and_offspring_agree_on_random_roots() {
    let roots = generic_roots();
    assert!(roots.len() >= SAMPLES, "only {} generic roots", roots.len());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let sample: Vec<&NodeState> = roots.choose_multiple(&mut rng, SAMPLES).collect();

    let fast = Explorer::new(DEPTH).unwrap();
    let slow = Explorer::with_check(
        DEPTH,
        CheckLoop {
            order: CheckOrder::Ascending,
            ..CheckLoop::default()
        },
    )
    .unwrap();
    let mut nonempty = 0;
    for root in sample {
        let mut a = visit_multiset(|mut h| fast.rgd_recurse(root, &mut h).unwrap());
        let pos = a
            .iter()
            .position(|g| *g == root.to_gaps().into_vec())
            .unwrap();
        a.remove(pos);
        let b = visit_multiset(|mut h| slow.rgd_offspring(root, &mut h));
        assert_eq!(a, b, "root {root}");
        nonempty += !b.is_empty() as usize;
    }
    assert!(nonempty > SAMPLES / 4);
}
