//! MSB-first bit packing and the 32-bit length header.

use super::StegoError;

const HEADER_BITS: usize = 32;

/// Bit `i` of `bytes`, counting MSB-first within each byte.
pub fn bit_at(bytes: &[u8], i: usize) -> bool {
    bytes[i / 8] & (0x80 >> (i % 8)) != 0
}

pub fn bytes_to_bits(data: &[u8]) -> Vec<bool> {
    (0..data.len() * 8).map(|i| bit_at(data, i)).collect()
}

pub fn bits_to_bytes(bits: &[bool]) -> Result<Vec<u8>, StegoError> {
    if !bits.len().is_multiple_of(8) {
        return Err(StegoError::NonByteAlignedBits(bits.len()));
    }
    Ok(bits
        .chunks(8)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8))
        .collect())
}

/// Parses a string of ASCII `0`/`1` characters.
pub fn parse_bit_string(s: &str) -> Result<Vec<bool>, StegoError> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(StegoError::InvalidBits(format!(
                "unexpected character {other:?} in bit string"
            ))),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A payload ready for embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMessage {
    pub bits: Vec<bool>,
    pub framed: bool,
}

impl BitMessage {
    pub fn raw(bits: Vec<bool>) -> Self {
        Self {
            bits,
            framed: false,
        }
    }

    pub fn from_bytes(data: &[u8]) -> Self {
        Self::raw(bytes_to_bits(data))
    }

    pub fn zeros(n: usize) -> Self {
        Self::raw(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self::raw(vec![true; n])
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The payload without its header, if framed.
    pub fn payload(&self) -> Result<&[bool], StegoError> {
        if self.framed {
            let n = declared_len(&self.bits)?;
            Ok(&self.bits[HEADER_BITS..HEADER_BITS + n])
        } else {
            Ok(&self.bits)
        }
    }
}

/// Prefixes `payload` with its bit count as a 32-bit big-endian integer.
pub fn frame(payload: &[bool]) -> Result<BitMessage, StegoError> {
    let len =
        u32::try_from(payload.len()).map_err(|_| StegoError::MessageTooLong(payload.len()))?;
    let mut bits = bytes_to_bits(&len.to_be_bytes());
    bits.extend_from_slice(payload);
    Ok(BitMessage { bits, framed: true })
}

/// Reads the header and returns exactly the declared payload.
pub fn deframe(bits: &[bool]) -> Result<Vec<bool>, StegoError> {
    let n = declared_len(bits)?;
    Ok(bits[HEADER_BITS..HEADER_BITS + n].to_vec())
}

/// Payload length declared by a header, checked against the bits present.
pub(crate) fn declared_len(bits: &[bool]) -> Result<usize, StegoError> {
    if bits.len() < HEADER_BITS {
        return Err(StegoError::BadHeader(format!(
            "need {HEADER_BITS} header bits, found {}",
            bits.len()
        )));
    }
    let header = bits_to_bytes(&bits[..HEADER_BITS])?;
    let n = u32::from_be_bytes([header[0], header[1], header[2], header[3]]) as usize;
    let available = bits.len() - HEADER_BITS;
    if n > available {
        return Err(StegoError::BadHeader(format!(
            "header declares {n} payload bits but only {available} follow"
        )));
    }
    Ok(n)
}

pub(crate) const fn header_bits() -> usize {
    HEADER_BITS
}
