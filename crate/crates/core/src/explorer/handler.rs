use crate::chain::RgdChain;
use crate::node::NodeState;

/// A visited node as seen by a [`Handler`].
///
/// `bits` borrows the explorer's working buffer and is only valid for the
/// duration of the call; siblings reuse the same memory.
#[derive(Debug, Clone, Copy)]
pub struct Node<'a> {
    /// The first `c` bits of the chain.
    pub bits: &'a [u8],
    pub m: usize,
    pub u: usize,
    pub c: usize,
    pub g: usize,
    pub r: usize,
}

impl Node<'_> {
    /// Owned copy, with room for the node's own children.
    pub fn to_state(&self) -> NodeState {
        let chain = RgdChain::from_bits(self.bits, self.c + self.m + 1);
        NodeState::from_parts(chain, self.m, self.u, self.c, self.g, self.r)
    }

    /// Gaps: everything below `m`, then `m + j` for each set left bit.
    pub fn gaps(&self) -> Vec<usize> {
        (1..self.m)
            .chain(
                (0..self.c - self.m)
                    .filter(|&j| self.bits[j] != 0)
                    .map(|j| self.m + j),
            )
            .collect()
    }

    pub fn is_pseudo_ordinary(&self) -> bool {
        self.u >= 2 && self.c == self.m + self.u
    }
}

/// Receives every node the explorer visits.
pub trait Handler {
    fn handle(&mut self, node: Node<'_>);
}

impl<F: FnMut(Node<'_>)> Handler for F {
    #[inline]
    fn handle(&mut self, node: Node<'_>) {
        self(node)
    }
}

/// Count-only mode: per-genus tallies, nothing else.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelCounter {
    counts: Vec<u64>,
}

impl LevelCounter {
    pub fn new(gamma: usize) -> Self {
        LevelCounter {
            counts: vec![0; gamma + 1],
        }
    }

    /// Tally for genus `g`.
    pub fn get(&self, g: usize) -> u64 {
        self.counts.get(g).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Tallies indexed by genus; entry 0 is always zero.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn merge(&mut self, other: &LevelCounter) {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
}

impl Handler for LevelCounter {
    #[inline(always)]
    fn handle(&mut self, node: Node<'_>) {
        if node.g >= self.counts.len() {
            self.counts.resize(node.g + 1, 0);
        }
        self.counts[node.g] += 1;
    }
}

/// Collect mode: owned copies of every visited node, in visit order.
#[derive(Debug, Clone, Default)]
pub struct Collector {
    pub nodes: Vec<NodeState>,
}

impl Handler for Collector {
    fn handle(&mut self, node: Node<'_>) {
        self.nodes.push(node.to_state());
    }
}
