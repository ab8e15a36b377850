//! Binary LZ78.
//!
//! The dictionary starts with the empty phrase at index 0. Phrase `t`
//! (1-based) is the longest dictionary entry prefixing the remaining input
//! plus one new bit, and is written as the entry index in `ceil(log2 t)`
//! bits followed by the new bit. If the input ends in the middle of a
//! phrase, only the index of the matched entry is written; the decoder
//! recognizes this case from the known output length `n`.

use crate::bits::{width_for, BitReader, BitSequence, BitWriter};
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

/// Phrase lengths of the LZ78 parse of `y`; the final one may be partial.
pub fn lz78_parse(y: &BitSequence) -> Vec<usize> {
    let mut lens = Vec::new();
    parse_with(y, |_, _, len| lens.push(len));
    lens
}

/// Calls `emit(entry_index, new_bit, phrase_len)` for each phrase.
fn parse_with(y: &BitSequence, mut emit: impl FnMut(u32, Option<bool>, usize)) {
    let mut children: Vec<[u32; 2]> = vec![[NONE; 2]];
    let mut pos = 0;
    while pos < y.len() {
        let mut node = 0u32;
        let start = pos;
        loop {
            if pos == y.len() {
                emit(node, None, pos - start);
                return;
            }
            let bit = y.get(pos);
            pos += 1;
            let next = children[node as usize][bit as usize];
            if next == NONE {
                children[node as usize][bit as usize] = children.len() as u32;
                children.push([NONE; 2]);
                emit(node, Some(bit), pos - start);
                break;
            }
            node = next;
        }
    }
}

/// Appends the LZ78 code of `y` to `w`.
pub fn lz78_encode_into(y: &BitSequence, w: &mut BitWriter) {
    let mut t = 1u64;
    parse_with(y, |index, bit, _| {
        w.write_bits(index as u64, width_for(t));
        if let Some(b) = bit {
            w.write_bit(b);
        }
        t += 1;
    });
}

pub fn lz78_encode(y: &BitSequence) -> Vec<u8> {
    let mut w = BitWriter::new();
    lz78_encode_into(y, &mut w);
    w.finish()
}

/// Decodes exactly `n` bits, rejecting out-of-range indices, truncation and
/// anything but zero padding after the last phrase.
pub fn lz78_decode(payload: &[u8], n: u64) -> Result<BitSequence> {
    let mut r = BitReader::new(payload);
    let y = lz78_decode_from(&mut r, n)?;
    if !r.only_padding_left() {
        return Err(Error::CorruptStream("trailing data after LZ78 payload".into()));
    }
    Ok(y)
}

pub fn lz78_decode_from(r: &mut BitReader<'_>, n: u64) -> Result<BitSequence> {
    // entry i > 0 is entries[i] = (parent, bit, length)
    let mut entries: Vec<(u32, bool, u64)> = vec![(NONE, false, 0)];
    let mut out = BitSequence::new();
    let mut scratch = Vec::new();
    let truncated = || Error::CorruptStream("truncated LZ78 payload".into());
    while (out.len() as u64) < n {
        let t = entries.len() as u64;
        let index = r.read_bits(width_for(t)).ok_or_else(truncated)?;
        if index >= t {
            return Err(Error::CorruptStream(format!("LZ78 index {index} out of range for {t} entries")));
        }
        let len = entries[index as usize].2;
        if out.len() as u64 + len > n {
            return Err(Error::CorruptStream("LZ78 phrase overruns declared length".into()));
        }
        scratch.clear();
        let mut e = index as u32;
        while e != 0 {
            let (parent, bit, _) = entries[e as usize];
            scratch.push(bit);
            e = parent;
        }
        for &b in scratch.iter().rev() {
            out.push(b);
        }
        if out.len() as u64 == n {
            break;
        }
        let bit = r.read_bit().ok_or_else(truncated)?;
        out.push(bit);
        entries.push((index as u32, bit, len + 1));
    }
    Ok(out)
}
