#![allow(dead_code)]

use std::collections::HashMap;

use rgd_core::oracle::Membership;
use rgd_core::{Collector, Explorer, GapSet, NodeState};

/// `(genus, n_genus)` pairs frozen from the brute-force oracle.
pub fn oracle_fixture() -> Vec<(usize, u64)> {
    include_str!("../fixtures/oracle_counts.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let (g, n) = line.split_once(',').expect("genus,count");
            (g.parse().unwrap(), n.parse().unwrap())
        })
        .collect()
}

pub fn fixture_counts(gamma: usize) -> Vec<u64> {
    let table = oracle_fixture();
    assert!(
        table.len() >= gamma,
        "fixture only reaches genus {}",
        table.len()
    );
    table[..gamma].iter().map(|&(_, n)| n).collect()
}

/// Every node the explorer visits up to `gamma`, in visit order.
pub fn explored(gamma: usize) -> Vec<NodeState> {
    let mut col = Collector::default();
    Explorer::new(gamma).unwrap().explore(&mut col);
    col.nodes
}

/// Explorer nodes keyed by gap set.
pub fn by_gaps(nodes: &[NodeState]) -> HashMap<GapSet, &NodeState> {
    nodes.iter().map(|n| (n.to_gaps(), n)).collect()
}

/// Parent in the tree: put the Frobenius number back.
pub fn parent_gaps(gaps: &GapSet) -> Option<GapSet> {
    let v = gaps.as_slice();
    (v.len() >= 2).then(|| GapSet::new(v[..v.len() - 1].to_vec()).unwrap())
}

/// Second nonzero nongap minus the multiplicity, from membership alone.
pub fn oracle_jump(s: &Membership) -> usize {
    let m = s.multiplicity();
    (m + 1..).find(|&x| s.contains(x)).unwrap() - m
}

pub fn is_ordinary(s: &Membership) -> bool {
    s.conductor() == s.multiplicity()
}

/// Only the multiplicity is a left element.
pub fn is_pseudo_ordinary(s: &Membership) -> bool {
    let (m, c) = (s.multiplicity(), s.conductor());
    c > m && (m + 1..c).all(|x| !s.contains(x))
}
