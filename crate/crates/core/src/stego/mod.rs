//! Baseline and keyed embedding/extraction, keys and message framing.

pub mod bits;
mod embed;
mod key;

use thiserror::Error;

use crate::lexicon::LexiconError;
use crate::textstream::TextError;

pub use bits::{bits_to_bytes, bytes_to_bits, deframe, frame, BitMessage};
pub use embed::{
    capacity, embed_baseline, embed_enhanced, extract_baseline, extract_enhanced, preprocess_cover,
    MessageLength, Scheme,
};
pub use key::{key_digest, keygen, KeyDigest, StegoKey};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StegoError {
    #[error("InsufficientCapacity: message needs {needed} carriers, cover has {available}")]
    InsufficientCapacity { needed: usize, available: usize },
    #[error("TooFewCarriers: expected {needed} bits, text has {available} carriers")]
    TooFewCarriers { needed: usize, available: usize },
    #[error("BadHeader: {0}")]
    BadHeader(String),
    #[error("NonByteAlignedBits: {0} bits is not a whole number of bytes")]
    NonByteAlignedBits(usize),
    #[error("MessageTooLong: {0} bits does not fit a 32-bit length header")]
    MessageTooLong(usize),
    #[error("EntropyUnavailable: {0}")]
    EntropyUnavailable(String),
    #[error("InvalidKey: {0}")]
    InvalidKey(String),
    #[error("InvalidBits: {0}")]
    InvalidBits(String),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}
