//! Counting semigroups by genus.
//!
//! [`count_genus`] never walks the whole tree: the multiplicity 2 path and
//! the ordinary node of genus `gamma` contribute one semigroup each, the
//! subtrees of multiplicity `gamma` and `gamma - 1` have closed forms, and
//! every other subtree is explored only down to genus `gamma - 2`, where the
//! right generators of each child are summed instead of visited.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::explorer::{no_split, CheckOrder, Explorer, LevelCounter, Task};
use crate::node::chain_capacity;

/// Largest genus whose count is expected to fit in 64 bits. Counts grow
/// roughly by the golden ratio per genus and `n_71 ≈ 2.6e15`, which leaves
/// about 18 more genera below `u64::MAX`.
pub const MAX_GENUS: usize = 89;

/// `n_1..=n_gamma`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountTable {
    counts: Vec<u64>,
}

impl CountTable {
    /// Entry `i` of `counts` is the number of semigroups of genus `i + 1`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        CountTable { counts }
    }

    pub fn gamma(&self) -> usize {
        self.counts.len()
    }

    /// `n_g`, or `None` outside `1..=gamma`.
    pub fn get(&self, g: usize) -> Option<u64> {
        g.checked_sub(1).and_then(|i| self.counts.get(i)).copied()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    /// `(g, n_g)` pairs in increasing genus.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &n)| (i + 1, n))
    }

    /// Checks `n_{g+1} >= n_g` and `n_{g+2} >= n_{g+1} + n_g` over the table.
    /// Returns the first genus `g` where either fails.
    pub fn first_growth_violation(&self) -> Option<usize> {
        let n = &self.counts;
        (0..n.len()).find_map(|i| {
            let monotone = i + 1 >= n.len() || n[i + 1] >= n[i];
            let fib = i + 2 >= n.len() || n[i + 2] >= n[i + 1] + n[i];
            (!(monotone && fib)).then_some(i + 1)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// Only `n_gamma`, with the cutoff shortcuts.
    #[default]
    SingleGenus,
    /// Every `n_g` up to `gamma` from one full exploration.
    AllGenera,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreConfig {
    pub gamma: usize,
    pub threads: usize,
    pub mode: CountMode,
}

impl ExploreConfig {
    pub fn new(gamma: usize) -> Self {
        ExploreConfig {
            gamma,
            threads: 1,
            mode: CountMode::SingleGenus,
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn mode(mut self, mode: CountMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma < 2 {
            return Err(Error::GenusOutOfRange {
                gamma: self.gamma,
                reason: "counting needs gamma >= 2",
            });
        }
        if self.gamma > MAX_GENUS {
            return Err(Error::GenusOutOfRange {
                gamma: self.gamma,
                reason: "counts beyond genus 89 overflow 64 bits",
            });
        }
        if self.threads == 0 {
            return Err(Error::InvalidArgument(
                "thread count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Number of grandchildren of the pseudo-ordinary `Λ_u` of multiplicity `m`.
pub fn pseudo_grandchildren(m: usize, u: usize) -> Result<u64> {
    if m < 3 || u < 2 || u > m {
        return Err(Error::InvalidArgument(format!(
            "pseudo-ordinary Λ_u needs m >= 3 and 2 <= u <= m, got m = {m}, u = {u}"
        )));
    }
    Ok(grandchildren(m as u64, u as u64))
}

fn grandchildren(m: u64, u: u64) -> u64 {
    // Inherited generators of the m - 1 children sum to (m-2) + ... + 1; the
    // strong ones add u, or u - 1 once 2m sits inside [m + u, m + 2u).
    let inherited = (m - 1) * (m - 2) / 2;
    inherited + if 2 * u <= m { u } else { u - 1 }
}

/// Genus-`gamma` semigroups of multiplicity `gamma` and `gamma - 1`.
pub fn boundary_subtree_counts(gamma: usize) -> Result<(u64, u64)> {
    if gamma < 5 {
        return Err(Error::GenusOutOfRange {
            gamma,
            reason: "boundary closed forms are stated for gamma >= 5",
        });
    }
    Ok(boundary(gamma as u64))
}

fn boundary(gamma: u64) -> (u64, u64) {
    (gamma - 1, gamma - 2 + (gamma - 4) * (gamma - 3) / 2)
}

/// One parallel unit of [`count_genus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CountTask {
    /// Non-path children of `Λ_u` in the subtree of multiplicity `m`.
    Pseudo { m: usize, u: usize },
    /// Quasi-ordinary subtrees of multiplicity `m`.
    Quasi { m: usize },
}

/// Work items and closed-form remainder for multiplicity `m`,
/// `3 <= m <= gamma - 2`.
fn subtree_plan(gamma: usize, m: usize) -> (Vec<CountTask>, u64) {
    let mut tasks = Vec::new();
    let closed = if 2 * m < gamma {
        // The whole path Λ_2 .. Λ_m ends above genus gamma - 2.
        tasks.extend((2..=m).map(|u| CountTask::Pseudo { m, u }));
        0
    } else {
        // Λ_{gamma-m} sits at genus gamma - 2; its grandchildren, path
        // included, are exactly the genus-gamma nodes below it.
        tasks.extend((2..gamma - m).map(|u| CountTask::Pseudo { m, u }));
        grandchildren(m as u64, (gamma - m) as u64)
    };
    tasks.push(CountTask::Quasi { m });
    (tasks, closed)
}

/// `n_gamma`, with the cutoff and closed-form shortcuts.
pub fn count_genus(config: &ExploreConfig) -> Result<u64> {
    config.validate()?;
    let gamma = config.gamma;
    if gamma < 4 {
        return count_all(config).map(|t| t.get(gamma).unwrap());
    }
    let (top, second) = boundary(gamma as u64);
    // Multiplicity 2 and the ordinary node of genus gamma.
    let mut total = 2 + top + second;
    let mut tasks = Vec::new();
    for m in 3..gamma - 1 {
        let (t, closed) = subtree_plan(gamma, m);
        tasks.extend(t);
        total += closed;
    }
    let walker = Cutoff::new(gamma);
    let explored = sum_parallel(config.threads, &tasks, |&t| walker.run(t))?;
    total.checked_add(explored).ok_or(Error::Overflow)
}

/// Genus-`gamma` semigroups of multiplicity `m`, through the same cutoff
/// route [`count_genus`] uses.
pub fn subtree_count(gamma: usize, m: usize) -> Result<u64> {
    ExploreConfig::new(gamma).validate()?;
    if gamma < 4 {
        return Err(Error::GenusOutOfRange {
            gamma,
            reason: "per-subtree counts need gamma >= 4",
        });
    }
    Ok(match m {
        2 => 1,
        _ if m == gamma + 1 => 1,
        _ if m == gamma => boundary(gamma as u64).0,
        _ if m == gamma - 1 => boundary(gamma as u64).1,
        _ if (3..gamma - 1).contains(&m) => {
            let (tasks, closed) = subtree_plan(gamma, m);
            let walker = Cutoff::new(gamma);
            closed + tasks.iter().map(|&t| walker.run(t)).sum::<u64>()
        }
        _ => 0,
    })
}

/// `n_1..=n_gamma` from one full exploration, split into independent tasks.
pub fn count_all(config: &ExploreConfig) -> Result<CountTable> {
    config.validate()?;
    let explorer = Explorer::new(config.gamma)?;
    let tasks = explorer.tasks();
    let run = |&t: &Task| {
        let mut counter = LevelCounter::new(config.gamma);
        explorer.run_task(t, &mut counter);
        counter
    };
    let merged = if config.threads == 1 {
        tasks
            .iter()
            .map(run)
            .fold(LevelCounter::new(config.gamma), |mut a, b| {
                a.merge(&b);
                a
            })
    } else {
        pool(config.threads)?.install(|| {
            tasks.par_iter().with_max_len(1).map(run).reduce(
                || LevelCounter::new(config.gamma),
                |mut a, b| {
                    a.merge(&b);
                    a
                },
            )
        })
    };
    Ok(CountTable::from_counts(
        merged.counts()[1..=config.gamma].to_vec(),
    ))
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

fn sum_parallel<T: Sync>(threads: usize, items: &[T], f: impl Fn(&T) -> u64 + Sync) -> Result<u64> {
    let sum = if threads == 1 {
        items.iter().try_fold(0u64, |acc, t| acc.checked_add(f(t)))
    } else {
        pool(threads)?.install(|| {
            items
                .par_iter()
                .with_max_len(1)
                .map(|t| Some(f(t)))
                .try_reduce(|| 0, |a, b| a.checked_add(b))
        })
    };
    sum.ok_or(Error::Overflow)
}

/// The tree walk of the explorer, stripped down for counting one level.
///
/// Nodes carry `left = gamma - 2 - g` instead of the genus. A node at
/// `left == 0` is not copied: each child's right-generator count is read off
/// the parent chain and summed.
struct Cutoff {
    gamma: usize,
    cap: usize,
}

impl Cutoff {
    fn new(gamma: usize) -> Self {
        Cutoff {
            gamma,
            cap: chain_capacity(gamma),
        }
    }

    fn run(&self, task: CountTask) -> u64 {
        let mut stack = vec![0u8; (self.gamma + 3) * self.cap];
        let (d, deeper) = stack.split_at_mut(self.cap);
        match task {
            CountTask::Pseudo { m, u } => {
                let c = m + u;
                d[1..c].fill(1);
                d[m] = 0;
                let r = if u < m { m - 2 } else { m - 1 };
                self.pseudo(d, deeper, m, u, c, r)
            }
            CountTask::Quasi { m } => {
                d[2..m].fill(1);
                let left = self.gamma - 2 - m;
                let mut r = m - 3;
                let mut total = 0;
                for s in 2..m - 1 {
                    total += self.node(d, deeper, m, 1, m + s + 1, left, r);
                    r -= 1;
                    d[s] = 0;
                }
                total
            }
        }
    }

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
    fn node(
        &self,
        chain: &[u8],
        stack: &mut [u8],
        m: usize,
        u: usize,
        c: usize,
        left: usize,
        r: usize,
    ) -> u64 {
        if left == 0 {
            return frontier(chain, m, u, c, r);
        }
        let (d, deeper) = self.copy(chain, stack, m, c);
        let mut total = 0;
        let mut rt = r;
        let mut s = c - m;
        while s < c - m + u && rt > 0 {
            if d[s] != 0 {
                let frob = m + s;
                if no_split(d, s, u, CheckOrder::Descending) {
                    d[frob] = 1;
                    total += self.node(d, deeper, m, u, frob + 1, left - 1, rt);
                    rt -= 1;
                    d[frob] = 0;
                } else {
                    rt -= 1;
                    if rt > 0 {
                        total += self.node(d, deeper, m, u, frob + 1, left - 1, rt);
                    }
                }
                d[s] = 0;
            }
            s += 1;
        }
        // The last sibling would get no right generators: skip it.
        while rt > 1 {
            if d[s] != 0 {
                rt -= 1;
                total += self.node(d, deeper, m, u, m + s + 1, left - 1, rt);
                d[s] = 0;
            }
            s += 1;
        }
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn pseudo(
        &self,
        chain: &[u8],
        stack: &mut [u8],
        m: usize,
        u: usize,
        c: usize,
        r: usize,
    ) -> u64 {
        let left = self.gamma - 1 - c;
        let (d, deeper) = self.copy(chain, stack, m, c);
        d[u] = 0;
        let mut rt = r;
        let mut total = 0;
        let mut strong = |d: &mut [u8], deeper: &mut [u8], s: usize, rt: &mut usize| {
            let frob = m + s;
            d[frob] = 1;
            total += self.node(d, deeper, m, u, frob + 1, left, *rt);
            *rt -= 1;
            d[frob] = 0;
            d[s] = 0;
        };
        for s in (u + 1..2 * u).filter(|&s| s != m) {
            strong(d, deeper, s, &mut rt);
        }
        for s in (2 * u..c).filter(|&s| s != m) {
            rt -= 1;
            if rt == 0 {
                break;
            }
            total += self.node(d, deeper, m, u, m + s + 1, left, rt);
            d[s] = 0;
        }
        total
    }
}

/// Sum of the right-generator counts of a node's children, from the node's
/// own chain. Children below `c + u` are checked for a new generator; the
/// rest inherit `rt - 1, rt - 2, ..., 0`.
#[inline(always)]
fn frontier(chain: &[u8], m: usize, u: usize, c: usize, r: usize) -> u64 {
    let lp = c - m;
    let mut rt = r;
    let mut total = 0usize;
    let mut s = lp;
    while s < lp + u && rt > 0 {
        if chain[s] != 0 {
            // In the child, window bits below s are cleared; chain[l] with
            // l <= s/2 < lp is a left bit and stays as is.
            let mut l = s / 2;
            while l >= u && (chain[l] != 0 || (s - l < lp && chain[s - l] != 0)) {
                l -= 1;
            }
            total += if l < u { rt } else { rt - 1 };
            rt -= 1;
        }
        s += 1;
    }
    (total + rt * rt.saturating_sub(1) / 2) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pseudo_grandchildren_examples() {
        assert_eq!(pseudo_grandchildren(5, 2).unwrap(), 8);
        assert_eq!(pseudo_grandchildren(5, 4).unwrap(), 9);
        assert_eq!(pseudo_grandchildren(3, 2).unwrap(), 2);
        assert!(pseudo_grandchildren(5, 1).is_err());
        assert!(pseudo_grandchildren(5, 6).is_err());
        assert!(pseudo_grandchildren(2, 2).is_err());
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_subtree_counts(6).unwrap(), (5, 7));
        assert_eq!(boundary_subtree_counts(10).unwrap(), (9, 29));
        assert!(boundary_subtree_counts(4).is_err());
    }

    #[test]
    fn small_counts() {
        let n = |g| count_genus(&ExploreConfig::new(g)).unwrap();
        assert_eq!(n(2), 2);
        assert_eq!(n(3), 4);
        assert_eq!(n(4), 7);
        assert_eq!(n(5), 12);
        assert_eq!(n(6), 23);
        assert_eq!(n(7), 39);
    }

    #[test]
    fn count_all_examples() {
        let t = count_all(&ExploreConfig::new(3)).unwrap();
        assert_eq!(t.as_slice(), &[1, 2, 4]);
        let t = count_all(&ExploreConfig::new(8)).unwrap();
        assert_eq!(t.as_slice(), &[1, 2, 4, 7, 12, 23, 39, 67]);
        let one = count_all(&ExploreConfig::new(2)).unwrap();
        let eight = count_all(&ExploreConfig::new(2).threads(8)).unwrap();
        assert_eq!(one.as_slice(), &[1, 2]);
        assert_eq!(one, eight);
    }

    #[test]
    fn config_validation() {
        assert!(count_genus(&ExploreConfig::new(1)).is_err());
        assert!(count_genus(&ExploreConfig::new(5).threads(0)).is_err());
        assert!(matches!(
            count_genus(&ExploreConfig::new(MAX_GENUS + 1)),
            Err(Error::GenusOutOfRange { .. })
        ));
    }

    #[test]
    fn table_accessors() {
        let t = CountTable::from_counts(vec![1, 2, 4]);
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(3), Some(4));
        assert_eq!(t.get(4), None);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(1, 1), (2, 2), (3, 4)]);
        assert_eq!(t.first_growth_violation(), None);
        assert_eq!(
            CountTable::from_counts(vec![1, 2, 2]).first_growth_violation(),
            Some(1)
        );
    }
}
