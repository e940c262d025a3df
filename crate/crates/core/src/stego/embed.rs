use crate::lexicon::{shuffle_table, EffectiveTable, Form, Lexicon};
use crate::textstream::{scan, substitute, CarrierMatch};

use super::bits::{bit_at, declared_len, header_bits, BitMessage};
use super::key::{key_digest, KeyDigest, StegoKey};
use super::StegoError;

const DIGEST_BITS: usize = 256;

/// How many bits an extractor should return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MessageLength {
    /// One bit per carrier in the text.
    #[default]
    All,
    Exact(usize),
    /// Read the 32-bit header and return header plus payload.
    Framed,
}

/// Embedding scheme, carrying the key when one is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheme {
    Baseline,
    Enhanced(StegoKey),
}

impl Scheme {
    pub fn embed(
        &self,
        cover: &str,
        lex: &Lexicon,
        msg: &BitMessage,
    ) -> Result<String, StegoError> {
        match self {
            Scheme::Baseline => embed_baseline(cover, lex, msg),
            Scheme::Enhanced(key) => embed_enhanced(cover, lex, key, msg),
        }
    }

    pub fn extract(
        &self,
        stego: &str,
        lex: &Lexicon,
        len: MessageLength,
    ) -> Result<Vec<bool>, StegoError> {
        match self {
            Scheme::Baseline => extract_baseline(stego, lex, len),
            Scheme::Enhanced(key) => extract_enhanced(stego, lex, key, len),
        }
    }
}

/// Number of bits the cover can hold: one per carrier.
pub fn capacity(cover: &str, lex: &Lexicon) -> usize {
    scan(cover, lex).len()
}

/// Rewrites every carrier whose form differs from its target.
///
/// Carriers that already have the target form keep their original spelling.
fn rewrite(
    text: &str,
    lex: &Lexicon,
    carriers: &[CarrierMatch],
    mut target: impl FnMut(&CarrierMatch) -> Result<Form, StegoError>,
) -> Result<String, StegoError> {
    let mut changed = Vec::new();
    let mut replacements = Vec::new();
    for c in carriers {
        let form = target(c)?;
        if form != c.form {
            replacements.push(lex.entry(c.entry_id)?.form_text(form));
            changed.push(c.clone());
        }
    }
    Ok(substitute(text, &changed, &replacements)?)
}

fn embed_with_table(
    cover: &str,
    table: &EffectiveTable<'_>,
    bits: &[bool],
) -> Result<String, StegoError> {
    let lex = table.base();
    let carriers = scan(cover, lex);
    if carriers.len() < bits.len() {
        return Err(StegoError::InsufficientCapacity {
            needed: bits.len(),
            available: carriers.len(),
        });
    }
    rewrite(cover, lex, &carriers, |c| match bits.get(c.ordinal) {
        Some(&bit) => Ok(table.form_for_bit(c.entry_id, bit)?),
        None => Ok(c.form),
    })
}

fn extract_with_table(
    stego: &str,
    table: &EffectiveTable<'_>,
    len: MessageLength,
) -> Result<Vec<bool>, StegoError> {
    let bits = scan(stego, table.base())
        .iter()
        .map(|c| table.column_of(c.entry_id, c.form))
        .collect::<Result<Vec<_>, _>>()?;
    truncate(bits, len)
}

fn truncate(mut bits: Vec<bool>, len: MessageLength) -> Result<Vec<bool>, StegoError> {
    let keep = match len {
        MessageLength::All => bits.len(),
        MessageLength::Exact(n) if n > bits.len() => {
            return Err(StegoError::TooFewCarriers {
                needed: n,
                available: bits.len(),
            })
        }
        MessageLength::Exact(n) => n,
        MessageLength::Framed => header_bits() + declared_len(&bits)?,
    };
    bits.truncate(keep);
    Ok(bits)
}

/// Keyless embedding: bit 0 is the word/phrase, bit 1 the acronym.
pub fn embed_baseline(cover: &str, lex: &Lexicon, msg: &BitMessage) -> Result<String, StegoError> {
    embed_with_table(cover, &EffectiveTable::unshuffled(lex), &msg.bits)
}

pub fn extract_baseline(
    stego: &str,
    lex: &Lexicon,
    len: MessageLength,
) -> Result<Vec<bool>, StegoError> {
    extract_with_table(stego, &EffectiveTable::unshuffled(lex), len)
}

/// Flips carrier `i` to its other form iff digest bit `i mod 256` is set.
pub fn preprocess_cover(cover: &str, lex: &Lexicon, digest: &KeyDigest) -> String {
    let carriers = scan(cover, lex);
    rewrite(cover, lex, &carriers, |c| {
        Ok(if bit_at(digest.as_bytes(), c.ordinal % DIGEST_BITS) {
            c.form.flipped()
        } else {
            c.form
        })
    })
    .expect("carrier spans come from scanning the same text")
}

/// Keyed embedding: digest-driven cover preprocessing, then substitution
/// through the key-shuffled table.
pub fn embed_enhanced(
    cover: &str,
    lex: &Lexicon,
    key: &StegoKey,
    msg: &BitMessage,
) -> Result<String, StegoError> {
    let prepared = preprocess_cover(cover, lex, &key_digest(key));
    embed_with_table(&prepared, &shuffle_table(lex, key), &msg.bits)
}

pub fn extract_enhanced(
    stego: &str,
    lex: &Lexicon,
    key: &StegoKey,
    len: MessageLength,
) -> Result<Vec<bool>, StegoError> {
    extract_with_table(stego, &shuffle_table(lex, key), len)
}
