//! Packed binary stream of codewords.
//!
//! Layout: a 17-byte header (`EUC1` magic, 1-byte scheme id, big-endian
//! u16 `n` and `k`, big-endian u64 codeword count), then the codewords
//! bit-packed contiguously most-significant-position first, zero-padded to
//! a byte boundary only at the end of the stream. Classic unary codewords
//! are self-delimiting by their terminating zero; `count` still governs how
//! many to read.

use std::io::{Read, Write};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::codecs;
use crate::codeword::Codeword;
use crate::error::StreamError;
use crate::params::{Capacity, CodecParams, Scheme};

pub const MAGIC: [u8; 4] = *b"EUC1";
pub const HEADER_LEN: usize = 17;

fn scheme_id(scheme: Scheme) -> u8 {
    match scheme {
        Scheme::ClassicUnary => 1,
        Scheme::SpatialUnary => 2,
        Scheme::SpreadUnary => 3,
        Scheme::ExtendedIncreasingK => 4,
        Scheme::ExtendedFixedK => 5,
    }
}

fn scheme_from_id(id: u8) -> Option<Scheme> {
    match id {
        1 => Some(Scheme::ClassicUnary),
        2 => Some(Scheme::SpatialUnary),
        3 => Some(Scheme::SpreadUnary),
        4 => Some(Scheme::ExtendedIncreasingK),
        5 => Some(Scheme::ExtendedFixedK),
        _ => None,
    }
}

/// Self-describing stream header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub params: CodecParams,
    pub count: u64,
}

impl StreamHeader {
    pub fn new(params: CodecParams, count: u64) -> Self {
        StreamHeader { params, count }
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut bytes = [0u8; HEADER_LEN];
        bytes[..4].copy_from_slice(&MAGIC);
        bytes[4] = scheme_id(self.params.scheme);
        bytes[5..7].copy_from_slice(&self.params.n.to_be_bytes());
        bytes[7..9].copy_from_slice(&self.params.k.to_be_bytes());
        bytes[9..17].copy_from_slice(&self.count.to_be_bytes());
        bytes
    }

    pub fn from_bytes(bytes: &[u8; HEADER_LEN]) -> Result<Self, StreamError> {
        let mut magic = [0u8; 4];
        magic.copy_from_slice(&bytes[..4]);
        if magic != MAGIC {
            return Err(StreamError::BadMagic { found: magic });
        }
        let scheme = scheme_from_id(bytes[4]).ok_or_else(|| StreamError::CorruptHeader {
            detail: format!("unknown scheme id {}", bytes[4]),
        })?;
        let n = u16::from_be_bytes([bytes[5], bytes[6]]);
        let k = u16::from_be_bytes([bytes[7], bytes[8]]);
        let count = u64::from_be_bytes(bytes[9..17].try_into().expect("slice is 8 bytes"));
        let params = CodecParams { scheme, n, k };
        params
            .validate()
            .map_err(|e| StreamError::CorruptHeader { detail: e.to_string() })?;
        Ok(StreamHeader { params, count })
    }

    /// Reads and parses a header. An empty or short stream that never
    /// yields the magic reports `BadMagic`.
    pub fn read_from(source: &mut impl Read) -> Result<Self, StreamError> {
        let mut magic = [0u8; 4];
        read_exact_or(source, &mut magic, |got| StreamError::BadMagic { found: got })?;
        if magic != MAGIC {
            return Err(StreamError::BadMagic { found: magic });
        }
        let mut rest = [0u8; HEADER_LEN - 4];
        read_exact_or(source, &mut rest, |_| StreamError::CorruptHeader {
            detail: "stream ends inside the header".to_string(),
        })?;
        let mut bytes = [0u8; HEADER_LEN];
        bytes[..4].copy_from_slice(&magic);
        bytes[4..].copy_from_slice(&rest);
        Self::from_bytes(&bytes)
    }
}

fn read_exact_or(
    source: &mut impl Read,
    buf: &mut [u8],
    on_eof: impl Fn([u8; 4]) -> StreamError,
) -> Result<(), StreamError> {
    let mut filled = 0;
    while filled < buf.len() {
        match source.read(&mut buf[filled..]) {
            Ok(0) => {
                let mut got = [0u8; 4];
                got[..filled.min(4)].copy_from_slice(&buf[..filled.min(4)]);
                return Err(on_eof(got));
            }
            Ok(read) => filled += read,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(StreamError::Io(e)),
        }
    }
    Ok(())
}

struct BitWriter<'a, W: Write> {
    sink: &'a mut W,
    current: u8,
    filled: u8,
    bytes_written: u64,
}

impl<'a, W: Write> BitWriter<'a, W> {
    fn new(sink: &'a mut W) -> Self {
        BitWriter { sink, current: 0, filled: 0, bytes_written: 0 }
    }

    fn write_bit(&mut self, bit: bool) -> Result<(), StreamError> {
        self.current = (self.current << 1) | u8::from(bit);
        self.filled += 1;
        if self.filled == 8 {
            self.sink.write_all(&[self.current])?;
            self.bytes_written += 1;
            self.current = 0;
            self.filled = 0;
        }
        Ok(())
    }

    /// Flushes the final partial byte, padding with zeros.
    fn finish(mut self) -> Result<u64, StreamError> {
        if self.filled > 0 {
            self.current <<= 8 - self.filled;
            self.sink.write_all(&[self.current])?;
            self.bytes_written += 1;
        }
        Ok(self.bytes_written)
    }
}

struct BitReader<'a, R: Read> {
    source: &'a mut R,
    current: u8,
    remaining: u8,
}

impl<'a, R: Read> BitReader<'a, R> {
    fn new(source: &'a mut R) -> Self {
        BitReader { source, current: 0, remaining: 0 }
    }

    fn read_bit(&mut self) -> Result<bool, StreamError> {
        if self.remaining == 0 {
            let mut byte = [0u8; 1];
            read_exact_or(self.source, &mut byte, |_| StreamError::TruncatedStream)?;
            self.current = byte[0];
            self.remaining = 8;
        }
        let bit = self.current & 0x80 != 0;
        self.current <<= 1;
        self.remaining -= 1;
        Ok(bit)
    }

    /// After the consumed bits are shifted out, any remaining pad bits sit
    /// in `current`; they must all be zero.
    fn check_padding(&self) -> Result<(), StreamError> {
        if self.current != 0 {
            return Err(StreamError::NonzeroPadding);
        }
        Ok(())
    }
}

/// Packs `values` as a self-describing stream, returning the bytes written.
///
/// Output is deterministic byte for byte: header, then codewords
/// concatenated most-significant-position first, with zero padding only in
/// the final byte.
pub fn pack(
    params: &CodecParams,
    values: &[u64],
    sink: &mut impl Write,
) -> Result<u64, StreamError> {
    let capacity = params.capacity()?;
    if let Capacity::Bounded(max) = capacity {
        for (index, &value) in values.iter().enumerate() {
            if value > max {
                return Err(StreamError::OutOfRange { index, value, max });
            }
        }
    }
    let header = StreamHeader::new(*params, values.len() as u64);
    sink.write_all(&header.to_bytes())?;
    let mut writer = BitWriter::new(sink);
    for &value in values {
        if params.scheme == Scheme::ClassicUnary {
            for _ in 0..value {
                writer.write_bit(true)?;
            }
            writer.write_bit(false)?;
        } else {
            let word = codecs::encode(params, value)?;
            for pos in (0..word.len()).rev() {
                writer.write_bit(word.get(pos))?;
            }
        }
    }
    let payload = writer.finish()?;
    Ok(HEADER_LEN as u64 + payload)
}

/// Unpacks a stream produced by [`pack`], returning the parameters from the
/// header and the decoded values.
///
/// Reads exactly the bytes the stream occupies; trailing pad bits must be
/// zero.
pub fn unpack(source: &mut impl Read) -> Result<(CodecParams, Vec<u64>), StreamError> {
    let header = StreamHeader::read_from(source)?;
    let params = header.params;
    let count = usize::try_from(header.count).map_err(|_| StreamError::CorruptHeader {
        detail: format!("count {} exceeds addressable memory", header.count),
    })?;
    let mut reader = BitReader::new(source);
    let mut values = Vec::with_capacity(count.min(1 << 20));
    for index in 0..count {
        let value = if params.scheme == Scheme::ClassicUnary {
            let mut ones = 0u64;
            while reader.read_bit()? {
                ones += 1;
            }
            ones
        } else {
            let mut word = Codeword::zeros(params.word_len());
            for pos in (0..params.word_len()).rev() {
                if reader.read_bit()? {
                    word.set(pos);
                }
            }
            codecs::decode(&params, &word)
                .map_err(|source| StreamError::InvalidCodeword { index: index as u64, source })?
        };
        values.push(value);
    }
    reader.check_padding()?;
    Ok((params, values))
}

/// Unpacks from a byte slice, requiring that the stream consume the slice
/// exactly.
pub fn unpack_bytes(bytes: &[u8]) -> Result<(CodecParams, Vec<u64>), StreamError> {
    let mut cursor = bytes;
    let result = unpack(&mut cursor)?;
    if !cursor.is_empty() {
        return Err(StreamError::TrailingData { bytes: cursor.len() });
    }
    Ok(result)
}

/// Outcome of flipping every payload bit of a packed stream in turn.
///
/// A flip is either detected (unpacking fails) or it yields some other
/// valid stream of in-range values; nothing is silently ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorruptionReport {
    pub payload_bits: u64,
    pub detected: u64,
    pub undetected: u64,
}

impl CorruptionReport {
    pub fn detected_fraction(&self) -> f64 {
        if self.payload_bits == 0 {
            return 1.0;
        }
        self.detected as f64 / self.payload_bits as f64
    }
}

/// Flips each payload bit of `packed` in turn and reports how many flips
/// the decoder detects. The pristine stream must unpack cleanly.
pub fn corruption_scan(packed: &[u8]) -> Result<CorruptionReport, StreamError> {
    let payload_bits = scan_setup(packed)?;
    #[cfg(feature = "parallel")]
    let detected = (0..payload_bits)
        .into_par_iter()
        .filter(|&bit| flip_is_detected(packed, bit))
        .count() as u64;
    #[cfg(not(feature = "parallel"))]
    let detected = (0..payload_bits).filter(|&bit| flip_is_detected(packed, bit)).count() as u64;
    Ok(CorruptionReport { payload_bits, detected, undetected: payload_bits - detected })
}

/// Sequential variant of [`corruption_scan`].
pub fn corruption_scan_seq(packed: &[u8]) -> Result<CorruptionReport, StreamError> {
    let payload_bits = scan_setup(packed)?;
    let detected = (0..payload_bits).filter(|&bit| flip_is_detected(packed, bit)).count() as u64;
    Ok(CorruptionReport { payload_bits, detected, undetected: payload_bits - detected })
}

fn scan_setup(packed: &[u8]) -> Result<u64, StreamError> {
    unpack_bytes(packed)?;
    Ok(((packed.len() - HEADER_LEN) * 8) as u64)
}

fn flip_is_detected(packed: &[u8], bit: u64) -> bool {
    let mut mutated = packed.to_vec();
    let byte = HEADER_LEN + (bit / 8) as usize;
    mutated[byte] ^= 0x80 >> (bit % 8);
    unpack_bytes(&mutated).is_err()
}
