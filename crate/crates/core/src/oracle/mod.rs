//! Definition-level brute force for the semigroup tree.
//!
//! Nothing in here looks at bit chains: semigroups are boolean membership
//! tables, primitive elements are found by trying every decomposition, and
//! the tree is grown by removing each right generator in turn. It is slow on
//! purpose and serves as ground truth for the fast explorer.

mod verify;

pub use verify::{
    cross_verify, cross_verify_with, Mismatch, VerifyReport, BASELINE_LEVELS, VERIFY_GENUS_LIMIT,
};

use crate::counter::CountTable;
use crate::error::{Error, Result};
use crate::gapset::GapSet;

/// Largest genus `naive_count` agrees to enumerate.
pub const ORACLE_GENUS_LIMIT: usize = 25;

/// Nongap table of a semigroup over `[0, bound)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    member: Vec<bool>,
    multiplicity: usize,
    conductor: usize,
}

impl Membership {
    /// Builds the table with the default bound `c + 2m + 1`.
    pub fn from_gaps(gaps: &GapSet) -> Self {
        let c = gaps.conductor();
        let m = (1..).find(|x| !gaps.contains(*x)).unwrap();
        Self::build(gaps, c, m, c + 2 * m + 1)
    }

    /// Builds the table over `[0, bound)`; `bound` must reach `c + m`.
    pub fn with_bound(gaps: &GapSet, bound: usize) -> Result<Self> {
        let c = gaps.conductor();
        let m = (1..).find(|x| !gaps.contains(*x)).unwrap();
        if bound < c + m {
            return Err(Error::InvalidArgument(format!(
                "membership bound {bound} below c + m = {}",
                c + m
            )));
        }
        Ok(Self::build(gaps, c, m, bound))
    }

    fn build(gaps: &GapSet, c: usize, m: usize, bound: usize) -> Self {
        let mut member = vec![true; bound];
        for &g in gaps.as_slice() {
            member[g] = false;
        }
        Membership {
            member,
            multiplicity: m,
            conductor: c,
        }
    }

    pub fn bound(&self) -> usize {
        self.member.len()
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn contains(&self, x: usize) -> bool {
        x >= self.member.len() || self.member[x]
    }

    pub fn gaps(&self) -> GapSet {
        GapSet::new_unchecked((1..self.conductor).filter(|&x| !self.member[x]).collect())
    }

    pub fn genus(&self) -> usize {
        (1..self.conductor).filter(|&x| !self.member[x]).count()
    }

    /// True when `x` is a nonzero nongap that is not a sum of two nonzero
    /// nongaps. Decidable for every `x` inside the table.
    pub fn is_primitive(&self, x: usize) -> bool {
        x > 0 && self.contains(x) && !(1..=x / 2).any(|a| self.contains(a) && self.contains(x - a))
    }

    fn without(&self, sigma: usize) -> Membership {
        let mut gaps = self.gaps().into_vec();
        let pos = gaps.partition_point(|&g| g < sigma);
        gaps.insert(pos, sigma);
        Membership::from_gaps(&GapSet::new_unchecked(gaps))
    }
}

/// All primitive elements (the minimal generating set), increasing.
pub fn naive_primitives(s: &Membership) -> Result<Vec<usize>> {
    let hi = s.conductor + s.multiplicity;
    if s.bound() < hi {
        return Err(Error::InvalidArgument(format!(
            "bound {} cannot decide primitivity of {}",
            s.bound(),
            hi - 1
        )));
    }
    Ok((1..hi).filter(|&x| s.is_primitive(x)).collect())
}

/// Primitive elements at or above the conductor.
pub fn naive_right_generators(s: &Membership) -> Vec<usize> {
    let c = s.conductor;
    (c..c + s.multiplicity)
        .filter(|&x| x > 0 && s.is_primitive(x))
        .collect()
}

/// One child per right generator, ordered by the removed element.
pub fn naive_children(s: &Membership) -> Vec<Membership> {
    naive_right_generators(s)
        .into_iter()
        .map(|sigma| s.without(sigma))
        .collect()
}

/// Gap sets of every semigroup of genus `1..=gamma`, level by level.
pub fn naive_levels(gamma: usize) -> Result<Vec<Vec<GapSet>>> {
    if gamma == 0 || gamma > ORACLE_GENUS_LIMIT {
        return Err(Error::GenusOutOfRange {
            gamma,
            reason: "oracle enumerates genus 1..=25",
        });
    }
    let mut levels = Vec::with_capacity(gamma);
    let mut current = vec![Membership::from_gaps(&GapSet::ordinary(2))];
    loop {
        levels.push(current.iter().map(Membership::gaps).collect());
        if levels.len() == gamma {
            return Ok(levels);
        }
        current = current.iter().flat_map(naive_children).collect();
    }
}

/// Level sizes `n_1..=n_gamma` by exhaustive breadth-first closure.
pub fn naive_count(gamma: usize) -> Result<CountTable> {
    if gamma == 0 || gamma > ORACLE_GENUS_LIMIT {
        return Err(Error::GenusOutOfRange {
            gamma,
            reason: "oracle enumerates genus 1..=25",
        });
    }
    let mut counts = Vec::with_capacity(gamma);
    let mut current = vec![Membership::from_gaps(&GapSet::ordinary(2))];
    loop {
        counts.push(current.len() as u64);
        if counts.len() == gamma {
            return Ok(CountTable::from_counts(counts));
        }
        current = current.iter().flat_map(naive_children).collect();
    }
}
