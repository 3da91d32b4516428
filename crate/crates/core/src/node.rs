//! Tree nodes: a bit chain plus the scalars threaded through the walk.

use std::fmt;

use crate::chain::RgdChain;
use crate::error::{Error, Result};
use crate::gapset::GapSet;

/// One semigroup of the tree.
///
/// `m` is the multiplicity, `u` the jump (second nonzero element minus `m`),
/// `c` the conductor, `g` the genus and `r` the number of right generators.
/// The explorer carries these incrementally; [`NodeState::from_gaps`] is the
/// only place that derives them from scratch.
#[derive(Debug, Clone)]
pub struct NodeState {
    pub(crate) chain: RgdChain,
    pub(crate) m: usize,
    pub(crate) u: usize,
    pub(crate) c: usize,
    pub(crate) g: usize,
    pub(crate) r: usize,
}

/// Which of the special families a node belongs to.
///
/// A node can be both quasi-ordinary and pseudo-ordinary (`Λ_2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub ordinary: bool,
    pub quasi_ordinary: bool,
    pub pseudo_ordinary: bool,
}

impl Classification {
    pub fn is_generic(&self) -> bool {
        !(self.ordinary || self.quasi_ordinary || self.pseudo_ordinary)
    }
}

/// Buffer size that fits every chain written while exploring to `gamma`.
pub fn chain_capacity(gamma: usize) -> usize {
    3 * gamma + 4
}

impl NodeState {
    /// Encodes the semigroup whose gaps are `gaps`.
    pub fn from_gaps(gaps: &GapSet) -> Result<Self> {
        Self::from_gaps_with_capacity(gaps, 0)
    }

    /// Like [`from_gaps`](Self::from_gaps) with a chain buffer of at least
    /// `capacity` bits (never less than `max(3g + 4, c + m)`).
    pub fn from_gaps_with_capacity(gaps: &GapSet, capacity: usize) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::EmptyGapSet);
        }
        // Re-validate: GapSet values built through `new_unchecked` skip it in release.
        GapSet::new(gaps.as_slice().to_vec())?;

        let g = gaps.genus();
        let c = gaps.conductor();
        let m = (1..).find(|&x| !gaps.contains(x)).unwrap();
        let left = c - m;

        let mut nongap = vec![true; c + m];
        for &x in gaps.as_slice() {
            nongap[x] = false;
        }
        // Nonzero nongaps start at m, so a decomposition a + b has m <= a <= x/2.
        let primitive = |x: usize| !(m..=x / 2).any(|a| nongap[a] && nongap[x - a]);

        let cap = capacity.max(chain_capacity(g)).max(c + m);
        let mut chain = RgdChain::with_capacity(cap);
        chain.set_len(c);
        for j in 0..left {
            chain.set(j, !nongap[m + j]);
        }
        let mut r = 0;
        for j in left..c {
            if primitive(m + j) {
                chain.set(j, true);
                r += 1;
            }
        }
        let u = if left == 0 {
            1
        } else {
            (1..left).find(|&j| nongap[m + j]).unwrap_or(left)
        };
        Ok(NodeState {
            chain,
            m,
            u,
            c,
            g,
            r,
        })
    }

    /// Decodes a chain given as text together with the multiplicity.
    ///
    /// When the text carries a `|` marker the multiplicity may be omitted; if
    /// both are given they must agree. The chain must be exactly the encoding
    /// of the semigroup its left portion describes.
    pub fn from_chain_text(text: &str, m: Option<usize>) -> Result<Self> {
        let (chain, marker) = RgdChain::parse(text)?;
        let c = chain.len();
        let m = match (m, marker) {
            (Some(m), Some(p)) if p + m != c => {
                return Err(Error::InvalidChain(format!(
                    "marker at {p} does not match multiplicity {m} for length {c}"
                )))
            }
            (Some(m), _) => m,
            (None, Some(p)) => c - p,
            (None, None) => {
                return Err(Error::InvalidChain(
                    "multiplicity unknown: pass it or mark the conductor with '|'".into(),
                ))
            }
        };
        Self::from_chain(&chain, m)
    }

    /// Decodes `chain` with multiplicity `m`, checking it is a true encoding.
    pub fn from_chain(chain: &RgdChain, m: usize) -> Result<Self> {
        let c = chain.len();
        if m < 2 || m > c {
            return Err(Error::InvalidChain(format!(
                "multiplicity {m} must satisfy 2 <= m <= c = {c}"
            )));
        }
        let gaps = decode_gaps(chain.as_slice(), m);
        let gaps = GapSet::new(gaps).map_err(|e| Error::InvalidChain(e.to_string()))?;
        let node = NodeState::from_gaps_with_capacity(&gaps, chain.capacity())?;
        if node.m != m || node.c != c || node.chain != *chain {
            return Err(Error::InvalidChain(format!(
                "{chain} with m = {m} re-encodes as {} with m = {}",
                node.chain, node.m
            )));
        }
        Ok(node)
    }

    pub(crate) fn from_parts(
        chain: RgdChain,
        m: usize,
        u: usize,
        c: usize,
        g: usize,
        r: usize,
    ) -> Self {
        debug_assert_eq!(chain.len(), c);
        NodeState {
            chain,
            m,
            u,
            c,
            g,
            r,
        }
    }

    pub fn chain(&self) -> &RgdChain {
        &self.chain
    }

    pub fn multiplicity(&self) -> usize {
        self.m
    }

    pub fn jump(&self) -> usize {
        self.u
    }

    pub fn conductor(&self) -> usize {
        self.c
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn right_generator_count(&self) -> usize {
        self.r
    }

    pub fn frobenius(&self) -> usize {
        self.c - 1
    }

    /// Reads the gap set back from `m` and the left portion of the chain.
    pub fn to_gaps(&self) -> GapSet {
        GapSet::new_unchecked(decode_gaps(self.chain.as_slice(), self.m))
    }

    /// Right generators, increasing; all lie in `[c, c + m)`.
    pub fn right_generators(&self) -> Vec<usize> {
        (self.c - self.m..self.c)
            .filter(|&j| self.chain.get(j))
            .map(|j| self.m + j)
            .collect()
    }

    /// The minimal generating set: left primitive elements followed by the
    /// right generators.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let m = self.m;
        let left = self.c - m;
        let nongap = |x: usize| x >= self.c || (x >= m && !self.chain.get(x - m));
        let mut out: Vec<usize> = (m..m + left)
            .filter(|&x| nongap(x) && !(m..=x / 2).any(|a| nongap(a) && nongap(x - a)))
            .collect();
        out.extend(self.right_generators());
        out
    }

    pub fn classify(&self) -> Classification {
        let ordinary = self.c == self.m;
        Classification {
            ordinary,
            quasi_ordinary: !ordinary && self.g == self.m,
            pseudo_ordinary: self.u >= 2 && self.c == self.m + self.u,
        }
    }

    pub fn is_ordinary(&self) -> bool {
        self.c == self.m
    }

    pub fn is_pseudo_ordinary(&self) -> bool {
        self.u >= 2 && self.c == self.m + self.u
    }

    /// Chain text, optionally with the conductor marker before index `c - m`.
    pub fn render_chain(&self, marker: bool) -> String {
        self.chain.render(marker.then_some(self.c - self.m))
    }

    /// Recomputes every scalar from the chain and reports the first one that
    /// disagrees with the stored value.
    pub fn check_invariants(&self) -> Result<()> {
        let (m, c) = (self.m, self.c);
        let bad = |what: &str, stored: usize, derived: usize| {
            Err(Error::InvalidChain(format!(
                "{what}: stored {stored}, derived {derived} for {}",
                self.render_chain(true)
            )))
        };
        if self.chain.len() != c {
            return bad("chain length", self.chain.len(), c);
        }
        if self.chain.raw()[c..].iter().any(|&b| b != 0) {
            return Err(Error::InvalidChain("nonzero bit past the conductor".into()));
        }
        let left = c - m;
        let g = m - 1 + self.chain.count_ones(0..left);
        if g != self.g {
            return bad("genus", self.g, g);
        }
        let r = self.chain.count_ones(left..c);
        if r != self.r {
            return bad("right generators", self.r, r);
        }
        let u = if left == 0 {
            1
        } else {
            (1..left).find(|&j| !self.chain.get(j)).unwrap_or(left)
        };
        if u != self.u {
            return bad("jump", self.u, u);
        }
        Ok(())
    }
}

/// Gaps below `m`, then `m + j` for each set bit `j < c - m`.
fn decode_gaps(bits: &[u8], m: usize) -> Vec<usize> {
    let left = bits.len() - m;
    (1..m)
        .chain((0..left).filter(|&j| bits[j] != 0).map(|j| m + j))
        .collect()
}

/// Two nodes are the same semigroup when `(m, c)` and the first `c` bits agree.
impl PartialEq for NodeState {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.c == other.c && self.chain == other.chain
    }
}

impl Eq for NodeState {}

impl fmt::Display for NodeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (m={}, c={})",
            self.render_chain(true),
            self.m,
            self.c
        )
    }
}
