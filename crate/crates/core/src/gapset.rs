//! Explicit gap sets, the human-facing representation of a semigroup.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The gaps of a numerical semigroup, strictly increasing.
///
/// Construction through [`GapSet::new`] checks that the complement is
/// closed under addition, so every value of this type names a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GapSet {
    gaps: Vec<usize>,
}

impl GapSet {
    pub fn new(gaps: Vec<usize>) -> Result<Self> {
        if gaps.first() == Some(&0) || gaps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnorderedGaps);
        }
        let set = GapSet { gaps };
        set.check_closure()?;
        Ok(set)
    }

    /// Wraps a list the caller already knows to be a valid gap set.
    pub(crate) fn new_unchecked(gaps: Vec<usize>) -> Self {
        debug_assert!(
            GapSet::new(gaps.clone()).is_ok(),
            "invalid gap set {gaps:?}"
        );
        GapSet { gaps }
    }

    /// Gap set of the ordinary semigroup of multiplicity `m`.
    pub fn ordinary(m: usize) -> Self {
        GapSet {
            gaps: (1..m).collect(),
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.gaps
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Frobenius number plus one; 0 for the trivial semigroup.
    pub fn conductor(&self) -> usize {
        self.gaps.last().map_or(0, |&f| f + 1)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.gaps.binary_search(&x).is_ok()
    }

    fn check_closure(&self) -> Result<()> {
        let c = self.conductor();
        let mut member = vec![true; c];
        for &g in &self.gaps {
            member[g] = false;
        }
        // Sums at or above c are never gaps.
        for a in 1..c {
            if !member[a] {
                continue;
            }
            for b in a..c - a {
                if member[b] && !member[a + b] {
                    return Err(Error::NotClosed { a, b, sum: a + b });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for GapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for GapSet {
    type Err = Error;

    /// Parses `{1,2,4}`; whitespace around entries is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |detail: String| Error::Parse {
            what: "gap set",
            detail,
        };
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| parse_err(format!("expected braces around {s:?}")))?;
        let gaps = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        GapSet::new(gaps)
    }
}
