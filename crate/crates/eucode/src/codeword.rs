//! Fixed-length bit words with a right-anchored position convention.
//!
//! Bit position 0 is the rightmost digit of the rendered word and position
//! `len - 1` the leftmost, so `"0011"` has ones at positions 0 and 1. Values
//! are read off positions counted from the right edge, while the textual
//! form always prints the leftmost bit first.

use std::fmt;
use std::str::FromStr;

const BLOCK_BITS: usize = 64;

/// A bit word of fixed length.
///
/// Bits beyond `len` in the last block are kept zero so that equality and
/// hashing work on the raw blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    len: usize,
    blocks: Vec<u64>,
}

/// A maximal run of consecutive ones, positions `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub lo: usize,
    pub hi: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    /// A run always holds at least one bit.
    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Codeword {
    /// All-zeros word of `len` bits. `len` must be at least 1.
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "a codeword has at least one bit");
        Codeword {
            len,
            blocks: vec![0; len.div_ceil(BLOCK_BITS)],
        }
    }

    /// Word of `len <= 64` bits taken from the low bits of `value`.
    pub fn from_uint(value: u64, len: usize) -> Self {
        assert!((1..=64).contains(&len), "len must be 1..=64");
        assert!(len == 64 || value < (1u64 << len), "value does not fit in {len} bits");
        Codeword {
            len,
            blocks: vec![value],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.len, "bit position {pos} out of range");
        self.blocks[pos / BLOCK_BITS] >> (pos % BLOCK_BITS) & 1 == 1
    }

    pub fn set(&mut self, pos: usize) {
        assert!(pos < self.len, "bit position {pos} out of range");
        self.blocks[pos / BLOCK_BITS] |= 1 << (pos % BLOCK_BITS);
    }

    /// Sets every bit in positions `lo..=hi`.
    pub fn set_run(&mut self, lo: usize, hi: usize) {
        for pos in lo..=hi {
            self.set(pos);
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.blocks.iter().map(|b| b.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Positions of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let base = i * BLOCK_BITS;
            std::iter::successors(nonzero(block), |&b| nonzero(b & (b - 1)))
                .map(move |b| base + b.trailing_zeros() as usize)
        })
    }

    /// Maximal runs of consecutive ones, ascending by position. Runs never
    /// wrap around the word boundary.
    pub fn runs(&self) -> Vec<Run> {
        let mut runs: Vec<Run> = Vec::new();
        for pos in self.ones() {
            match runs.last_mut() {
                Some(run) if run.hi + 1 == pos => run.hi = pos,
                _ => runs.push(Run { lo: pos, hi: pos }),
            }
        }
        runs
    }

    /// Cyclic left shift: the bit at position `p` moves to `(p + shift) mod len`.
    /// Any nonnegative shift is accepted and reduced modulo the length.
    pub fn cyclic_shift_left(&self, shift: u64) -> Codeword {
        let s = (shift % self.len as u64) as usize;
        let mut out = Codeword::zeros(self.len);
        for pos in self.ones() {
            let moved = pos + s;
            out.set(if moved >= self.len { moved - self.len } else { moved });
        }
        out
    }

    /// Hamming distance to a word of the same length.
    pub fn hamming(&self, other: &Codeword) -> u32 {
        assert_eq!(self.len, other.len, "hamming distance needs equal lengths");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }
}

fn nonzero(block: u64) -> Option<u64> {
    (block != 0).then_some(block)
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in (0..self.len).rev() {
            f.write_str(if self.get(pos) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseCodewordError {
    Empty,
    BadChar { ch: char },
}

impl fmt::Display for ParseCodewordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseCodewordError::Empty => write!(f, "empty codeword"),
            ParseCodewordError::BadChar { ch } => {
                write!(f, "codeword may contain only '0' and '1', got {ch:?}")
            }
        }
    }
}

impl std::error::Error for ParseCodewordError {}

impl FromStr for Codeword {
    type Err = ParseCodewordError;

    /// Parses the textual form: leftmost character is position `len - 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseCodewordError::Empty);
        }
        if let Some(ch) = s.chars().find(|&c| c != '0' && c != '1') {
            return Err(ParseCodewordError::BadChar { ch });
        }
        let len = s.len();
        let mut word = Codeword::zeros(len);
        for (i, byte) in s.bytes().enumerate() {
            if byte == b'1' {
                word.set(len - 1 - i);
            }
        }
        Ok(word)
    }
}
