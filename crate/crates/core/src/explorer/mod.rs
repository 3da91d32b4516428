//! Depth-first walk of the semigroup tree over RGD bit chains.
//!
//! The walk keeps one working buffer per depth. A node copies its chain into
//! the next buffer once, then derives each child in place: set the new
//! generator bit if there is one, recurse, clear it, clear the removed
//! generator's bit, move on to the next sibling.

mod handler;

pub use handler::{Collector, Handler, LevelCounter, Node};

use crate::chain::RgdChain;
use crate::error::{Error, Result};
use crate::node::{chain_capacity, NodeState};

/// Direction of the loop that looks for `ℓ` with both `ℓ` and `s - ℓ`
/// nongaps of the child.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckOrder {
    #[default]
    Descending,
    Ascending,
}

/// Knobs for the check loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckLoop {
    pub order: CheckOrder,
    /// Added to the loop's lower end. Anything but 0 breaks the tree; it
    /// exists so verification can prove it notices a broken explorer.
    #[doc(hidden)]
    pub floor_bias: usize,
}

/// True when no `ℓ` in `[floor, s/2]` has `bits[ℓ] = bits[s-ℓ] = 0`, that is,
/// when `2m + s` is a new right generator of the child.
#[inline(always)]
pub(crate) fn no_split(bits: &[u8], s: usize, floor: usize, order: CheckOrder) -> bool {
    debug_assert!(floor >= 1);
    match order {
        CheckOrder::Descending => {
            let mut l = s / 2;
            while l >= floor && (bits[l] | bits[s - l]) != 0 {
                l -= 1;
            }
            l < floor
        }
        CheckOrder::Ascending => {
            let mid = s / 2;
            let mut l = floor;
            while l <= mid && (bits[l] | bits[s - l]) != 0 {
                l += 1;
            }
            l > mid
        }
    }
}

/// Decides whether removing `m + s` leaves `2m + s` primitive in the child.
///
/// `chain` must already be the child's chain up to index `s`: the window
/// bits in `[c - m, s)` cleared, the rest untouched. `u` is the parent's jump;
/// every `ℓ < u` indexes a gap and can be skipped.
pub fn has_new_right_generator(chain: &RgdChain, s: usize, u: usize) -> bool {
    no_split(chain.raw(), s, u.max(1), CheckOrder::Descending)
}

/// The `m` children of the ordinary semigroup of multiplicity `m`, by
/// increasing removed element.
pub fn ordinary_children(m: usize, gamma: usize) -> Result<Vec<NodeState>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("multiplicity {m} < 2")));
    }
    let cap = chain_capacity(gamma).max(2 * m + 2);
    let mut out = Vec::with_capacity(m);
    out.push(NodeState::from_parts(
        RgdChain::from_bits(&vec![1; m + 1], cap),
        m + 1,
        1,
        m + 1,
        m,
        m + 1,
    ));
    for s in 1..m {
        let c = m + s + 1;
        let mut bits = vec![0u8; c];
        bits[s..m].fill(1);
        let (u, r) = if s == 1 {
            bits[m + 1] = 1;
            (2, m - 1)
        } else {
            (1, m - s - 1)
        };
        out.push(NodeState::from_parts(
            RgdChain::from_bits(&bits, cap),
            m,
            u,
            c,
            m,
            r,
        ));
    }
    Ok(out)
}

/// The child obtained by removing the right generator `m + s`.
pub fn expand(parent: &NodeState, s: usize) -> Result<NodeState> {
    let (m, c) = (parent.m, parent.c);
    if s < c - m || s >= c || !parent.chain.get(s) {
        return Err(Error::NotRightGenerator {
            s,
            lo: c - m,
            hi: c,
        });
    }
    let cap = parent.chain.capacity().max(2 * m + s + 2);
    if parent.is_ordinary() && s == 0 {
        return Ok(NodeState::from_parts(
            RgdChain::from_bits(&vec![1; m + 1], cap),
            m + 1,
            1,
            m + 1,
            parent.g + 1,
            m + 1,
        ));
    }
    let mut chain = parent.chain.clone();
    chain.reserve(cap);
    let bits = chain.raw_mut();
    bits[c - m..s].fill(0);
    let frob = m + s;
    let inherited = bits[s + 1..c].iter().filter(|&&b| b != 0).count();
    let new = no_split(bits, s, parent.u, CheckOrder::Descending);
    bits[frob] = new as u8;
    chain.set_len(frob + 1);
    let u = if parent.is_ordinary() {
        if s == 1 {
            2
        } else {
            1
        }
    } else if parent.is_pseudo_ordinary() && s == parent.u {
        parent.u + 1
    } else {
        parent.u
    };
    Ok(NodeState::from_parts(
        chain,
        m,
        u,
        frob + 1,
        parent.g + 1,
        inherited + new as usize,
    ))
}

/// Unit of independent work in a full exploration.
///
/// Running every task of [`Explorer::tasks`] in order reproduces the visit
/// order of [`Explorer::explore`]. Distinct tasks never share buffers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    /// The multiplicity-2 path, one node per genus.
    MultiplicityTwo,
    /// The ordinary semigroup of multiplicity `m`.
    Ordinary { m: usize },
    /// The pseudo-ordinary `Λ_u` of multiplicity `m` and the subtrees of its
    /// children other than `Λ_{u+1}`.
    Pseudo { m: usize, u: usize },
    /// The quasi-ordinary children of the ordinary semigroup of multiplicity
    /// `m`, except `Λ_2`, with their subtrees.
    Quasi { m: usize },
    /// The ordinary semigroup of genus `gamma`.
    Last,
}

/// Explores the tree down to a fixed genus.
#[derive(Debug, Clone, Copy)]
pub struct Explorer {
    gamma: usize,
    cap: usize,
    check: CheckLoop,
}

impl Explorer {
    pub fn new(gamma: usize) -> Result<Self> {
        Self::with_check(gamma, CheckLoop::default())
    }

    pub fn with_check(gamma: usize, check: CheckLoop) -> Result<Self> {
        if gamma < 2 {
            return Err(Error::GenusOutOfRange {
                gamma,
                reason: "exploration needs gamma >= 2",
            });
        }
        Ok(Explorer {
            gamma,
            cap: chain_capacity(gamma),
            check,
        })
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    fn stack(&self) -> Vec<u8> {
        vec![0; (self.gamma + 3) * self.cap]
    }

    fn walk<'h, H: Handler>(&self, handler: &'h mut H) -> Walk<'h, H> {
        Walk {
            gamma: self.gamma,
            cap: self.cap,
            floor_bias: self.check.floor_bias,
            order: self.check.order,
            handler,
        }
    }

    /// Copies a node's chain into the first level of a fresh stack. Callers
    /// guarantee genus at most `gamma`, so the chain fits.
    fn seed(&self, state: &NodeState) -> Vec<u8> {
        let mut stack = self.stack();
        stack[..state.c].copy_from_slice(state.chain.as_slice());
        stack
    }

    /// Visits every semigroup of genus `1..=gamma` exactly once.
    pub fn explore<H: Handler>(&self, handler: &mut H) {
        let gamma = self.gamma;
        let cap = self.cap;
        let mut w = self.walk(handler);
        let mut stack = self.stack();
        let (d, deeper) = stack.split_at_mut(cap);

        // Multiplicity 2: the path <2, 3>, <2, 5>, <2, 7>, ...
        d[0] = 1;
        d[1] = 1;
        w.handle(d, 2, 1, 2, 1, 2);
        d[0] = 0;
        for g in 2..=gamma {
            d[2 * g - 1] = 1;
            w.handle(d, 2, 2, 2 * g, g, 1);
        }

        for m in 3..=gamma {
            d.fill(0);
            d[..m].fill(1);
            w.handle(d, m, 1, m, m - 1, m);
            d[0] = 0;
            let path_end = m.min(gamma + 2 - m);
            for u in 2..path_end {
                let c = m + u;
                d[c - 1] = 1;
                w.handle(d, m, u, c, c - 2, m - 1);
                w.pseudo(d, deeper, m, u, c, m - 2);
            }
            let c = m + path_end;
            d[c - 1] = 1;
            w.handle(d, m, path_end, c, c - 2, m - 1);
            if path_end < gamma + 2 - m {
                w.pseudo(d, deeper, m, m, c, m - 1);
            }
            w.quasi(d, deeper, m);
        }

        let m = gamma + 1;
        d.fill(0);
        d[..m].fill(1);
        w.handle(d, m, 1, m, gamma, m);
    }

    /// Independent pieces of [`explore`](Self::explore), in visit order.
    pub fn tasks(&self) -> Vec<Task> {
        let gamma = self.gamma;
        let mut tasks = vec![Task::MultiplicityTwo];
        for m in 3..=gamma {
            tasks.push(Task::Ordinary { m });
            let path_end = m.min(gamma + 2 - m);
            tasks.extend((2..=path_end).map(|u| Task::Pseudo { m, u }));
            tasks.push(Task::Quasi { m });
        }
        tasks.push(Task::Last);
        tasks
    }

    /// Runs one task on its own buffers.
    pub fn run_task<H: Handler>(&self, task: Task, handler: &mut H) {
        let gamma = self.gamma;
        let mut w = self.walk(handler);
        let mut stack = self.stack();
        let (d, deeper) = stack.split_at_mut(self.cap);
        match task {
            Task::MultiplicityTwo => {
                d[0] = 1;
                d[1] = 1;
                w.handle(d, 2, 1, 2, 1, 2);
                d[0] = 0;
                for g in 2..=gamma {
                    d[2 * g - 1] = 1;
                    w.handle(d, 2, 2, 2 * g, g, 1);
                }
            }
            Task::Ordinary { m } => {
                d[..m].fill(1);
                w.handle(d, m, 1, m, m - 1, m);
            }
            Task::Pseudo { m, u } => {
                let c = m + u;
                d[1..c].fill(1);
                d[m] = 0;
                w.handle(d, m, u, c, c - 2, m - 1);
                if c - 1 <= gamma {
                    w.pseudo(d, deeper, m, u, c, if u < m { m - 2 } else { m - 1 });
                }
            }
            Task::Quasi { m } => w.quasi(d, deeper, m),
            Task::Last => {
                let m = gamma + 1;
                d[..m].fill(1);
                w.handle(d, m, 1, m, gamma, m);
            }
        }
    }

    /// Basic recursion: visits every proper descendant of `state` down to
    /// genus `gamma`, checking every candidate new generator from `ℓ = 1`.
    pub fn rgd_offspring<H: Handler>(&self, state: &NodeState, handler: &mut H) {
        if state.g >= self.gamma {
            return;
        }
        let mut stack = self.seed(state);
        let (d, deeper) = stack.split_at_mut(self.cap);
        self.walk(handler)
            .offspring(d, deeper, state.m, state.c, state.g);
    }

    /// Refined recursion: visits `state` and all its descendants down to
    /// genus `gamma`, threading the jump and the right-generator count.
    ///
    /// `state` must be neither ordinary nor pseudo-ordinary.
    pub fn rgd_recurse<H: Handler>(&self, state: &NodeState, handler: &mut H) -> Result<()> {
        if state.is_ordinary() || state.is_pseudo_ordinary() {
            return Err(Error::InvalidArgument(format!(
                "rgd_recurse needs a node that is neither ordinary nor pseudo-ordinary, got {state}"
            )));
        }
        if state.g > self.gamma {
            return Err(Error::InvalidArgument(format!(
                "node genus {} exceeds exploration depth {}",
                state.g, self.gamma
            )));
        }
        let mut stack = self.seed(state);
        let (d, deeper) = stack.split_at_mut(self.cap);
        self.walk(handler)
            .recurse(d, deeper, state.m, state.u, state.c, state.g, state.r);
        Ok(())
    }

    /// Visits the children of a pseudo-ordinary node other than `Λ_{u+1}`,
    /// each with its subtree. The node itself is not visited.
    pub fn pseudo_expand<H: Handler>(&self, state: &NodeState, handler: &mut H) -> Result<()> {
        if !state.is_pseudo_ordinary() {
            return Err(Error::InvalidArgument(format!(
                "pseudo_expand needs a pseudo-ordinary node, got {state}"
            )));
        }
        if state.g >= self.gamma {
            return Ok(());
        }
        let (m, u) = (state.m, state.u);
        let mut stack = self.seed(state);
        let (d, deeper) = stack.split_at_mut(self.cap);
        let r = if u < m { m - 2 } else { m - 1 };
        self.walk(handler).pseudo(d, deeper, m, u, state.c, r);
        Ok(())
    }
}

struct Walk<'h, H> {
    gamma: usize,
    cap: usize,
    floor_bias: usize,
    order: CheckOrder,
    handler: &'h mut H,
}

impl<H: Handler> Walk<'_, H> {
    #[inline(always)]
    fn handle(&mut self, bits: &[u8], m: usize, u: usize, c: usize, g: usize, r: usize) {
        self.handler.handle(Node {
            bits: &bits[..c],
            m,
            u,
            c,
            g,
            r,
        });
    }

    /// Copies `chain` into the head of `stack`, zeroing the window above `c`.
    #[inline(always)]
    fn copy<'s>(
        &self,
        chain: &[u8],
        stack: &'s mut [u8],
        m: usize,
        c: usize,
    ) -> (&'s mut [u8], &'s mut [u8]) {
        let (d, deeper) = stack.split_at_mut(self.cap);
        d[..c].copy_from_slice(&chain[..c]);
        d[c..c + m].fill(0);
        (d, deeper)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &mut self,
        chain: &[u8],
        stack: &mut [u8],
        m: usize,
        u: usize,
        c: usize,
        g: usize,
        r: usize,
    ) {
        self.handle(chain, m, u, c, g, r);
        if g >= self.gamma || r == 0 {
            return;
        }
        let floor = u + self.floor_bias;
        let (d, deeper) = self.copy(chain, stack, m, c);
        let mut rt = r;
        let mut s = c - m;
        // Only removals below c + u can create a new generator.
        while s < c - m + u {
            if d[s] != 0 {
                let frob = m + s;
                if no_split(d, s, floor, self.order) {
                    d[frob] = 1;
                    self.recurse(d, deeper, m, u, frob + 1, g + 1, rt);
                    rt -= 1;
                    d[frob] = 0;
                } else {
                    rt -= 1;
                    self.recurse(d, deeper, m, u, frob + 1, g + 1, rt);
                }
                d[s] = 0;
            }
            s += 1;
        }
        while rt > 0 {
            if d[s] != 0 {
                rt -= 1;
                self.recurse(d, deeper, m, u, m + s + 1, g + 1, rt);
                d[s] = 0;
            }
            s += 1;
        }
    }

    /// Children of `Λ_u` except `Λ_{u+1}`. The first `u - 1` or `u - 2` of
    /// them (skipping `s = m`) gain the generator `2m + s`; the rest do not.
    fn pseudo(&mut self, chain: &[u8], stack: &mut [u8], m: usize, u: usize, c: usize, r: usize) {
        let g = c - 1;
        let (d, deeper) = self.copy(chain, stack, m, c);
        d[u] = 0;
        let mut rt = r;
        if 2 * u <= m {
            for s in u + 1..2 * u {
                self.strong_child(d, deeper, m, u, s, g, &mut rt);
            }
            for s in 2 * u..m {
                self.plain_child(d, deeper, m, u, s, g, &mut rt);
            }
            for s in m + 1..c {
                self.plain_child(d, deeper, m, u, s, g, &mut rt);
            }
        } else {
            for s in u + 1..m {
                self.strong_child(d, deeper, m, u, s, g, &mut rt);
            }
            for s in m + 1..2 * u {
                self.strong_child(d, deeper, m, u, s, g, &mut rt);
            }
            for s in 2 * u..c {
                self.plain_child(d, deeper, m, u, s, g, &mut rt);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    #[inline(always)]
    fn strong_child(
        &mut self,
        d: &mut [u8],
        deeper: &mut [u8],
        m: usize,
        u: usize,
        s: usize,
        g: usize,
        rt: &mut usize,
    ) {
        let frob = m + s;
        d[frob] = 1;
        self.recurse(d, deeper, m, u, frob + 1, g, *rt);
        *rt -= 1;
        d[frob] = 0;
        d[s] = 0;
    }

    #[allow(clippy::too_many_arguments)]
    #[inline(always)]
    fn plain_child(
        &mut self,
        d: &mut [u8],
        deeper: &mut [u8],
        m: usize,
        u: usize,
        s: usize,
        g: usize,
        rt: &mut usize,
    ) {
        *rt -= 1;
        self.recurse(d, deeper, m, u, m + s + 1, g, *rt);
        d[s] = 0;
    }

    /// The quasi-ordinary children `Λ~_2 .. Λ~_{m-1}` of the ordinary node of
    /// multiplicity `m`. Only `Λ~_s` with `s <= m - 2` have children.
    fn quasi(&mut self, d: &mut [u8], deeper: &mut [u8], m: usize) {
        d.fill(0);
        d[2..m].fill(1);
        let mut r = m - 3;
        for s in 2..m - 1 {
            self.recurse(d, deeper, m, 1, m + s + 1, m, r);
            r -= 1;
            d[s] = 0;
        }
        self.handle(d, m, 1, 2 * m, m, 0);
    }

    fn offspring(&mut self, chain: &[u8], stack: &mut [u8], m: usize, c: usize, g: usize) {
        if g >= self.gamma {
            return;
        }
        let floor = 1 + self.floor_bias;
        let (d, deeper) = self.copy(chain, stack, m, c);
        for s in c - m..c {
            if d[s] == 0 {
                continue;
            }
            let frob = m + s;
            let child_m = if s == 0 { m + 1 } else { m };
            if no_split(d, s, floor, self.order) {
                d[frob] = 1;
            }
            let child_c = frob + 1;
            let (u, r) = derive_jump_and_count(&d[..child_c], child_m);
            self.handle(d, child_m, u, child_c, g + 1, r);
            self.offspring(d, deeper, child_m, child_c, g + 1);
            d[frob] = 0;
            d[s] = 0;
        }
    }
}

/// Jump and right-generator count read off a chain.
fn derive_jump_and_count(bits: &[u8], m: usize) -> (usize, usize) {
    let c = bits.len();
    let left = c - m;
    let r = bits[left..].iter().filter(|&&b| b != 0).count();
    let u = if left == 0 {
        1
    } else {
        (1..left).find(|&j| bits[j] == 0).unwrap_or(left)
    };
    (u, r)
}
