//! Level-by-level comparison of the explorer against the brute force.

use std::collections::BTreeMap;
use std::fmt;

use super::{naive_levels, naive_right_generators, Membership};
use crate::error::Result;
use crate::explorer::{CheckLoop, Explorer, Node};
use crate::gapset::GapSet;

/// Default genus limit for verification runs.
pub const VERIFY_GENUS_LIMIT: usize = 12;

/// Levels whose sizes are fixed by hand-checkable structure; anything deeper
/// is reported as verified "beyond baseline".
pub const BASELINE_LEVELS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    /// Left portion of a visited chain decodes to something that is not a
    /// semigroup.
    InvalidNode {
        genus: usize,
        chain: String,
        m: usize,
    },
    LevelSize {
        genus: usize,
        explorer: usize,
        oracle: usize,
    },
    Missing {
        genus: usize,
        gaps: GapSet,
    },
    Extra {
        genus: usize,
        gaps: GapSet,
    },
    Duplicate {
        genus: usize,
        gaps: GapSet,
    },
    /// Right-generator window disagrees with brute-force primitivity.
    Window {
        gaps: GapSet,
        explorer: Vec<usize>,
        oracle: Vec<usize>,
    },
    /// The bit of the edge's candidate `2m + s` (index `c - 1`) is wrong.
    NewGenerator {
        gaps: GapSet,
        explorer: bool,
        oracle: bool,
    },
    /// A carried scalar (`m`, `u`, `c`, `g` or `r`) disagrees.
    Scalar {
        gaps: GapSet,
        name: &'static str,
        explorer: usize,
        oracle: usize,
    },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::InvalidNode { genus, chain, m } => {
                write!(f, "genus {genus}: chain {chain} (m={m}) is not a semigroup")
            }
            Mismatch::LevelSize {
                genus,
                explorer,
                oracle,
            } => {
                write!(
                    f,
                    "genus {genus}: explorer visited {explorer}, oracle has {oracle}"
                )
            }
            Mismatch::Missing { genus, gaps } => write!(f, "genus {genus}: missing {gaps}"),
            Mismatch::Extra { genus, gaps } => write!(f, "genus {genus}: unexpected {gaps}"),
            Mismatch::Duplicate { genus, gaps } => write!(f, "genus {genus}: {gaps} visited twice"),
            Mismatch::Window {
                gaps,
                explorer,
                oracle,
            } => write!(
                f,
                "{gaps}: right generators {explorer:?} but oracle finds {oracle:?}"
            ),
            Mismatch::NewGenerator {
                gaps,
                explorer,
                oracle,
            } => write!(
                f,
                "{gaps}: new-generator bit {} but oracle says {}",
                *explorer as u8, *oracle as u8
            ),
            Mismatch::Scalar {
                gaps,
                name,
                explorer,
                oracle,
            } => {
                write!(f, "{gaps}: {name} = {explorer}, oracle {oracle}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub gamma: usize,
    /// Explorer level sizes, genus 1 first.
    pub explorer_counts: Vec<usize>,
    pub oracle_counts: Vec<usize>,
    pub mismatches: Vec<Mismatch>,
    /// Edges whose new-generator bit was checked.
    pub edges_checked: usize,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_divergence(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(
                f,
                "OK: {} levels beyond baseline, 0 mismatches",
                self.gamma.saturating_sub(BASELINE_LEVELS)
            )
        } else {
            write!(
                f,
                "MISMATCH: {} mismatches; first: {}",
                self.mismatches.len(),
                self.mismatches[0]
            )
        }
    }
}

struct Visit {
    gaps: Vec<usize>,
    bits: Vec<u8>,
    m: usize,
    u: usize,
    c: usize,
    g: usize,
    r: usize,
}

/// Compares the explorer at `gamma` with the oracle.
pub fn cross_verify(gamma: usize) -> Result<VerifyReport> {
    cross_verify_with(gamma, CheckLoop::default())
}

/// Same as [`cross_verify`] with a chosen check loop.
pub fn cross_verify_with(gamma: usize, check: CheckLoop) -> Result<VerifyReport> {
    let oracle = naive_levels(gamma)?;
    let explorer = Explorer::with_check(gamma, check)?;
    let mut visits = Vec::new();
    explorer.explore(&mut |n: Node<'_>| {
        // Decoded here rather than through the core types, to keep the two
        // sides independent.
        let gaps = (1..n.m)
            .chain((0..n.c - n.m).filter(|&j| n.bits[j] != 0).map(|j| n.m + j))
            .collect();
        visits.push(Visit {
            gaps,
            bits: n.bits.to_vec(),
            m: n.m,
            u: n.u,
            c: n.c,
            g: n.g,
            r: n.r,
        });
    });

    let mut mismatches = Vec::new();
    let mut edges_checked = 0;
    let mut by_level: BTreeMap<usize, Vec<GapSet>> = BTreeMap::new();
    for v in &visits {
        let gaps = match GapSet::new(v.gaps.clone()) {
            Ok(gs) if !gs.is_empty() => gs,
            _ => {
                mismatches.push(Mismatch::InvalidNode {
                    genus: v.g,
                    chain: v.bits.iter().map(|b| char::from(b'0' + b)).collect(),
                    m: v.m,
                });
                continue;
            }
        };
        let mem = Membership::from_gaps(&gaps);
        let second = (mem.multiplicity() + 1..)
            .find(|&x| mem.contains(x))
            .unwrap();
        let expected = [
            ("m", v.m, mem.multiplicity()),
            ("u", v.u, second - mem.multiplicity()),
            ("c", v.c, mem.conductor()),
            ("g", v.g, gaps.genus()),
        ];
        for (name, explorer, oracle) in expected {
            if explorer != oracle {
                mismatches.push(Mismatch::Scalar {
                    gaps: gaps.clone(),
                    name,
                    explorer,
                    oracle,
                });
            }
        }
        let oracle_rg = naive_right_generators(&mem);
        let window: Vec<usize> = (v.c - v.m..v.c)
            .filter(|&j| v.bits[j] != 0)
            .map(|j| v.m + j)
            .collect();
        if v.r != oracle_rg.len() {
            mismatches.push(Mismatch::Scalar {
                gaps: gaps.clone(),
                name: "r",
                explorer: v.r,
                oracle: oracle_rg.len(),
            });
        }
        if v.c > v.m {
            // Non-ordinary: the node was reached by removing m + s with
            // c = m + s + 1, and the candidate new generator is 2m + s.
            edges_checked += 1;
            let explorer_bit = v.bits[v.c - 1] != 0;
            let oracle_bit = mem.is_primitive(v.m + v.c - 1);
            if explorer_bit != oracle_bit {
                mismatches.push(Mismatch::NewGenerator {
                    gaps: gaps.clone(),
                    explorer: explorer_bit,
                    oracle: oracle_bit,
                });
            }
        }
        if window != oracle_rg {
            mismatches.push(Mismatch::Window {
                gaps: gaps.clone(),
                explorer: window,
                oracle: oracle_rg,
            });
        }
        by_level.entry(v.g).or_default().push(gaps);
    }

    let mut explorer_counts = Vec::with_capacity(gamma);
    let mut oracle_counts = Vec::with_capacity(gamma);
    for (i, expected) in oracle.iter().enumerate() {
        let genus = i + 1;
        let mut seen = by_level.remove(&genus).unwrap_or_default();
        explorer_counts.push(seen.len());
        oracle_counts.push(expected.len());
        if seen.len() != expected.len() {
            mismatches.push(Mismatch::LevelSize {
                genus,
                explorer: seen.len(),
                oracle: expected.len(),
            });
        }
        seen.sort();
        for w in seen.windows(2).filter(|w| w[0] == w[1]) {
            mismatches.push(Mismatch::Duplicate {
                genus,
                gaps: w[0].clone(),
            });
        }
        seen.dedup();
        let mut want = expected.clone();
        want.sort();
        let (mut i, mut j) = (0, 0);
        while i < seen.len() || j < want.len() {
            match (seen.get(i), want.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    mismatches.push(Mismatch::Extra {
                        genus,
                        gaps: a.clone(),
                    });
                    i += 1;
                }
                (Some(a), None) => {
                    mismatches.push(Mismatch::Extra {
                        genus,
                        gaps: a.clone(),
                    });
                    i += 1;
                }
                (_, Some(b)) => {
                    mismatches.push(Mismatch::Missing {
                        genus,
                        gaps: b.clone(),
                    });
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
    }
    for (genus, extra) in by_level {
        for gaps in extra {
            mismatches.push(Mismatch::Extra { genus, gaps });
        }
    }

    Ok(VerifyReport {
        gamma,
        explorer_counts,
        oracle_counts,
        mismatches,
        edges_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_at_small_genus() {
        let report = cross_verify(3).unwrap();
        assert!(report.is_ok(), "{report}");
        assert_eq!(report.explorer_counts, vec![1, 2, 4]);
        assert_eq!(
            report.to_string(),
            "OK: 0 levels beyond baseline, 0 mismatches"
        );
    }

    #[test]
    fn report_for_genus_eight() {
        let report = cross_verify(8).unwrap();
        assert_eq!(
            report.to_string(),
            "OK: 4 levels beyond baseline, 0 mismatches"
        );
        assert!(report.edges_checked > 0);
    }

    #[test]
    fn broken_check_loop_is_detected() {
        let bad = CheckLoop {
            floor_bias: 1,
            ..CheckLoop::default()
        };
        let report = cross_verify_with(8, bad).unwrap();
        assert!(!report.is_ok());
        assert!(report
            .mismatches
            .iter()
            .any(|m| matches!(m, Mismatch::NewGenerator { .. })));
        assert!(report.to_string().starts_with("MISMATCH"));
    }
}
