//! Word/acronym substitution steganography for chat-style English text.
//!
//! A [`Lexicon`] pairs words or phrases with their chat acronyms. Every
//! occurrence of either form in a cover text is a carrier for one bit. The
//! keyless baseline scheme writes bit 0 as the word/phrase and bit 1 as the
//! acronym. The keyed scheme first flips carriers according to the SHA-256
//! digest of a 256-bit key, then swaps the columns of the table according to
//! the key bits themselves, so that column membership rather than surface
//! form carries the bit.
//!
//! The [`steganalysis`] module measures cover/stego closeness (Hamming,
//! Levenshtein, Jaro-Winkler, KL divergence over character distributions) and
//! runs the chosen-message and keyless-extraction attacks against both
//! schemes.
//!
//! Numeric analysis code is generic over [`num_traits::Float`]; the aliases
//! below fix the scalar for the common cases.

pub mod cases;
pub mod lexicon;
pub mod steganalysis;
pub mod stego;
pub mod textstream;

pub use cases::{run_case, CaseId, CaseOutcome, CaseRun};
pub use lexicon::{
    load_lexicon, shuffle_table, EffectiveTable, Form, Lexicon, LexiconEntry, LexiconError,
    SwapMask,
};
pub use steganalysis::{
    chosen_message_attack, compare, distinguisher_experiment, hamming_distance,
    keyless_extraction_attack, levenshtein, AnalysisError, CoverCorpus, Divergence, Hamming,
};
pub use stego::{
    bits_to_bytes, bytes_to_bits, capacity, deframe, embed_baseline, embed_enhanced,
    extract_baseline, extract_enhanced, frame, key_digest, keygen, preprocess_cover, BitMessage,
    KeyDigest, MessageLength, Scheme, StegoError, StegoKey,
};
pub use textstream::{
    find_carriers, substitute, tokenize, CarrierMatch, TextError, Token, TokenKind,
};

/// Character distribution with `f64` probabilities.
pub type Distribution64 = steganalysis::Distribution<f64>;
/// Character distribution with `f32` probabilities.
pub type Distribution32 = steganalysis::Distribution<f32>;
/// Summary statistics over an `f64` probability vector.
pub type Stats64 = steganalysis::DistributionStats<f64>;
/// Summary statistics over an `f32` probability vector.
pub type Stats32 = steganalysis::DistributionStats<f32>;
/// Cover/stego comparison computed in `f64`.
pub type AnalysisReport64 = steganalysis::AnalysisReport<f64>;
/// Cover/stego comparison computed in `f32`.
pub type AnalysisReport32 = steganalysis::AnalysisReport<f32>;

/// Jaro-Winkler similarity in `f64`.
pub fn jaro_winkler(a: &str, b: &str) -> f64 {
    steganalysis::jaro_winkler::<f64>(a, b)
}

/// Character distribution of `text` in `f64`.
pub fn char_distribution(text: &str) -> Result<Distribution64, AnalysisError> {
    steganalysis::char_distribution::<f64>(text)
}
