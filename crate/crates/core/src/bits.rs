//! Fixed-width bitstrings.
//!
//! A [`BitString`] of width `n` is stored as its basis-state index: variable
//! `x_i` is bit `i` of the index. The textual form lists `x_0` first, so
//! `"001"` is `x_0 = 0, x_1 = 0, x_2 = 1`, index 4.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Widest bitstring supported (one machine word).
pub const MAX_BITS: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    index: u64,
    n: usize,
}

impl BitString {
    pub fn new(index: u64, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(invalid(alloc::format!("bitstring width {n} outside 1..={MAX_BITS}")));
        }
        if index >> n != 0 {
            return Err(invalid(alloc::format!("index {index} does not fit in {n} bits")));
        }
        Ok(Self { index, n })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut index = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => index |= 1 << i,
                _ => return Err(invalid(alloc::format!("bit {i} is {b}, expected 0 or 1"))),
            }
        }
        Self::new(index, bits.len())
    }

    #[inline]
    pub fn index(&self) -> u64 {
        self.index
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.index >> i) & 1 == 1
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i) as u8).collect()
    }

    pub fn weight(&self) -> u32 {
        self.index.count_ones()
    }

    pub fn complement(&self) -> Self {
        Self { index: !self.index & mask(self.n), n: self.n }
    }

    pub fn flip(&self, i: usize) -> Self {
        Self { index: self.index ^ (1 << i), n: self.n }
    }
}

#[inline]
pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(invalid(alloc::format!("unexpected character {other:?} in bitstring"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        alloc::format!("{b}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn text_lists_x0_first() {
        let b: BitString = "001".parse().unwrap();
        assert_eq!(b.index(), 4);
        assert!(b.get(2) && !b.get(0));
        assert_eq!(b.to_string(), "001");
    }

    #[test]
    fn rejects_bad_input() {
        assert!("012".parse::<BitString>().is_err());
        assert!(BitString::new(8, 3).is_err());
        assert!(BitString::from_bits(&[0, 2]).is_err());
    }

    #[test]
    fn complement_is_involution() {
        let b: BitString = "10110".parse().unwrap();
        assert_eq!(b.complement().to_string(), "01001");
        assert_eq!(b.complement().complement(), b);
    }
}
