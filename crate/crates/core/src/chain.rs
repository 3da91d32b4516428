//! The RGD bit chain.
//!
//! Bit `j` stands for the integer `m + j`. Below `c - m` a set bit marks a
//! gap; from `c - m` up to `c` a set bit marks a right generator; everything
//! from `c` on is zero. Bits are stored one per byte so the explorer can read
//! and write them with plain indexing.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Eq)]
pub struct RgdChain {
    bits: Vec<u8>,
    len: usize,
}

impl RgdChain {
    /// An empty chain that can hold `capacity` bits.
    pub fn with_capacity(capacity: usize) -> Self {
        RgdChain {
            bits: vec![0; capacity],
            len: 0,
        }
    }

    /// Copies `bits` (each 0 or 1) into a buffer of at least `capacity` entries.
    pub fn from_bits(bits: &[u8], capacity: usize) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        let mut buf = vec![0; capacity.max(bits.len())];
        buf[..bits.len()].copy_from_slice(bits);
        RgdChain {
            bits: buf,
            len: bits.len(),
        }
    }

    /// Parses a string over `{0,1}` with at most one `|`.
    ///
    /// Returns the chain and the position of the marker, which is the index
    /// of the first bit after it.
    pub fn parse(text: &str) -> Result<(RgdChain, Option<usize>)> {
        let mut bits = Vec::with_capacity(text.len());
        let mut marker = None;
        for ch in text.trim().chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                '|' if marker.is_none() => marker = Some(bits.len()),
                _ => {
                    return Err(Error::Parse {
                        what: "bit chain",
                        detail: format!("unexpected {ch:?} in {text:?}"),
                    })
                }
            }
        }
        let len = bits.len();
        Ok((RgdChain::from_bits(&bits, len), marker))
    }

    /// Renders the significant bits, inserting `|` before index `marker`.
    pub fn render(&self, marker: Option<usize>) -> String {
        let mut out = String::with_capacity(self.len + 1);
        for (j, &b) in self.as_slice().iter().enumerate() {
            if marker == Some(j) {
                out.push('|');
            }
            out.push(if b == 0 { '0' } else { '1' });
        }
        if marker == Some(self.len) {
            out.push('|');
        }
        out
    }

    /// Number of significant bits (the conductor).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    /// Bit `j`; positions past the buffer read as zero.
    pub fn get(&self, j: usize) -> bool {
        self.bits.get(j).is_some_and(|&b| b != 0)
    }

    /// Writes bit `j`; panics past capacity.
    pub fn set(&mut self, j: usize, value: bool) {
        self.bits[j] = value as u8;
    }

    /// Changes the significant length, zeroing whatever falls outside it.
    pub fn set_len(&mut self, len: usize) {
        assert!(len <= self.bits.len(), "length {len} exceeds capacity");
        if len < self.len {
            self.bits[len..self.len].fill(0);
        }
        self.len = len;
    }

    /// Grows the buffer to hold at least `capacity` bits.
    pub fn reserve(&mut self, capacity: usize) {
        if capacity > self.bits.len() {
            self.bits.resize(capacity, 0);
        }
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits[..self.len]
    }

    /// The whole buffer, including the zeroed tail.
    pub fn raw(&self) -> &[u8] {
        &self.bits
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [u8] {
        &mut self.bits
    }

    pub fn count_ones(&self, range: std::ops::Range<usize>) -> usize {
        self.bits[range].iter().filter(|&&b| b != 0).count()
    }
}

/// Equality looks at the significant bits only, never at capacity.
impl PartialEq for RgdChain {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl std::hash::Hash for RgdChain {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state);
    }
}

impl std::fmt::Display for RgdChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in self.as_slice() {
            f.write_char(if b == 0 { '0' } else { '1' })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_and_without_marker() {
        let (a, ma) = RgdChain::parse("01|101").unwrap();
        let (b, mb) = RgdChain::parse("01101").unwrap();
        assert_eq!(a, b);
        assert_eq!(ma, Some(2));
        assert_eq!(mb, None);
        assert_eq!(a.render(Some(2)), "01|101");
        assert_eq!(a.to_string(), "01101");
        assert_eq!(RgdChain::parse("|11").unwrap().1, Some(0));
    }

    #[test]
    fn parse_rejects_junk() {
        assert!(RgdChain::parse("01a").is_err());
        assert!(RgdChain::parse("0|1|1").is_err());
    }

    #[test]
    fn set_len_zeroes_tail() {
        let mut ch = RgdChain::from_bits(&[1, 1, 1, 1], 8);
        ch.set_len(2);
        assert_eq!(ch.raw(), &[1, 1, 0, 0, 0, 0, 0, 0]);
        assert!(!ch.get(3));
        assert!(!ch.get(100));
        assert_eq!(ch.capacity(), 8);
    }

    #[test]
    fn equality_ignores_capacity() {
        assert_eq!(
            RgdChain::from_bits(&[0, 1], 2),
            RgdChain::from_bits(&[0, 1], 40)
        );
        assert_ne!(
            RgdChain::from_bits(&[0, 1], 2),
            RgdChain::from_bits(&[0, 1, 0], 2)
        );
    }
}
