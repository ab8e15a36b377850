//! Packed bit sequences and MSB-first bit I/O.
//!
//! [`BitSequence`] stores 64 symbols per word, little-endian within the word:
//! symbol `i` lives in word `i / 64` at bit `i % 64`. Bits past `len` in the
//! last word are always zero, so word-wise XOR + popcount gives Hamming
//! distances directly.
//!
//! [`BitWriter`] and [`BitReader`] produce and consume byte streams packed
//! most-significant-bit first, which is the on-disk order for both stream
//! payloads and raw input files.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
}

impl BitSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Builds a sequence from the low `len` bits of `value`, most significant
    /// of those bits first. Handy for enumerating all strings of a length.
    pub fn from_value(value: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        (0..len).map(|i| (value >> (len - 1 - i)) & 1 == 1).collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i & 63);
        if bit {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len & 63 == 0 {
            self.words.push(0);
        }
        if bit {
            self.words[self.len >> 6] |= 1u64 << (self.len & 63);
        }
        self.len += 1;
    }

    pub fn append(&mut self, other: &BitSequence) {
        self.extend_from(other, 0, other.len);
    }

    /// Appends `other[start..end]`.
    pub fn extend_from(&mut self, other: &BitSequence, start: usize, end: usize) {
        assert!(start <= end && end <= other.len);
        let mut i = start;
        // align destination to a word boundary bit by bit, then copy words
        while i < end && self.len & 63 != 0 {
            self.push(other.get(i));
            i += 1;
        }
        while end - i >= 64 {
            self.words.push(other.word_at(i));
            self.len += 64;
            i += 64;
        }
        while i < end {
            self.push(other.get(i));
            i += 1;
        }
    }

    /// 64 bits starting at `offset`, LSB = bit `offset`. Bits past the end
    /// read as zero.
    #[inline]
    pub(crate) fn word_at(&self, offset: usize) -> u64 {
        let w = offset >> 6;
        let s = offset & 63;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if s == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> s) | (hi << (64 - s))
        }
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn slice(&self, start: usize, end: usize) -> BitSequence {
        let mut out = BitSequence::with_capacity(end - start);
        out.extend_from(self, start, end);
        out
    }

    pub fn prefix(&self, len: usize) -> BitSequence {
        self.slice(0, len)
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Interprets `bytes` MSB-first and keeps the first `nbits` bits.
    pub fn from_bytes_msb(bytes: &[u8], nbits: usize) -> Result<Self> {
        if nbits > bytes.len() * 8 {
            return Err(Error::InvalidParameter(format!(
                "requested {nbits} bits from {} bytes",
                bytes.len()
            )));
        }
        Ok((0..nbits)
            .map(|i| (bytes[i >> 3] >> (7 - (i & 7))) & 1 == 1)
            .collect())
    }

    /// Packs MSB-first, zero-padding the final byte.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for i in 0..self.len {
            if self.get(i) {
                out[i >> 3] |= 0x80 >> (i & 7);
            }
        }
        out
    }
}

impl FromIterator<bool> for BitSequence {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut seq = BitSequence::new();
        for b in iter {
            seq.push(b);
        }
        seq
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSequence(\"{self}\")")
    }
}

impl FromStr for BitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParameter(format!("not a bit: {other:?}"))),
            })
            .collect()
    }
}

/// Number of bits needed to write any value in `0..count`; zero when
/// `count <= 1`.
#[inline]
pub fn width_for(count: u64) -> u32 {
    if count <= 1 {
        0
    } else {
        64 - (count - 1).leading_zeros()
    }
}

/// MSB-first bit writer.
#[derive(Debug, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    bits: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn write_bit(&mut self, bit: bool) {
        if self.bits & 7 == 0 {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> (self.bits & 7);
        }
        self.bits += 1;
    }

    /// Writes the low `width` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width == 64 || value >> width == 0);
        for i in (0..width).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    pub fn write_sequence(&mut self, seq: &BitSequence) {
        for b in seq.iter() {
            self.write_bit(b);
        }
    }

    pub fn bit_len(&self) -> u64 {
        self.bits
    }

    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

/// MSB-first bit reader over a byte slice.
#[derive(Debug)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    #[inline]
    pub fn read_bit(&mut self) -> Option<bool> {
        let byte = *self.bytes.get((self.pos >> 3) as usize)?;
        let bit = (byte >> (7 - (self.pos & 7))) & 1 == 1;
        self.pos += 1;
        Some(bit)
    }

    pub fn read_bits(&mut self, width: u32) -> Option<u64> {
        if self.remaining() < width as u64 {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Some(v)
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.bytes.len() as u64 * 8 - self.pos
    }

    /// True when everything left is zero padding inside the final byte.
    pub fn only_padding_left(&self) -> bool {
        if self.remaining() >= 8 {
            return false;
        }
        let mut probe = BitReader {
            bytes: self.bytes,
            pos: self.pos,
        };
        while let Some(b) = probe.read_bit() {
            if b {
                return false;
            }
        }
        true
    }
}
