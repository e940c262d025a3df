//! The word/acronym pair table and its key-dependent column swap.
//!
//! Column 0 holds words/phrases and column 1 holds acronyms. The keyed scheme
//! swaps the two cells of entry `j` whenever key bit `j mod 256` is set, so
//! the label of a surface form depends on the key.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::stego::bits::bit_at;
use crate::stego::StegoKey;
use crate::textstream::{is_word_char, normalize_token, tokenize_with, SymbolSet};

/// Bundled chat dictionary.
pub const DEFAULT_LEXICON_TSV: &str = include_str!("../data/default_lexicon.tsv");

const KEY_BITS: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("DuplicateForm: {0:?} appears more than once across the table")]
    DuplicateForm(String),
    #[error("EmptyField: line {0} has an empty cell")]
    EmptyField(usize),
    #[error("MalformedLine: line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("UnknownEntry: entry {0} is out of range")]
    UnknownEntry(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Form {
    WordPhrase,
    Acronym,
}

impl Form {
    pub fn flipped(self) -> Form {
        match self {
            Form::WordPhrase => Form::Acronym,
            Form::Acronym => Form::WordPhrase,
        }
    }

    /// Column label in the unshuffled table.
    pub fn base_label(self) -> bool {
        self == Form::Acronym
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::WordPhrase => "word",
            Form::Acronym => "acronym",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub entry_id: usize,
    pub word_phrase: String,
    pub acronym: String,
}

impl LexiconEntry {
    pub fn form_text(&self, form: Form) -> &str {
        match form {
            Form::WordPhrase => &self.word_phrase,
            Form::Acronym => &self.acronym,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    index: HashMap<String, (usize, Form)>,
    symbols: SymbolSet,
    /// Entries whose forms overlap another form; matched but never carriers.
    inert: Vec<bool>,
    max_tokens: usize,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for Lexicon {}

/// Parses the TSV table (`acronym<TAB>word_phrase`, `#` comments).
pub fn load_lexicon(source: &str) -> Result<Lexicon, LexiconError> {
    let mut pairs = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.starts_with('#') || raw.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = raw.split('\t').collect();
        if cells.len() != 2 {
            return Err(LexiconError::MalformedLine {
                line,
                reason: format!("expected 2 tab-separated columns, found {}", cells.len()),
            });
        }
        let acronym = cells[0].trim();
        let word = cells[1].trim();
        if acronym.is_empty() || word.is_empty() {
            return Err(LexiconError::EmptyField(line));
        }
        pairs.push((line, acronym.to_owned(), word.to_owned()));
    }
    Lexicon::build(pairs)
}

fn is_symbol_form(s: &str) -> bool {
    !s.chars().any(|c| is_word_char(c) || c.is_whitespace())
}

impl Lexicon {
    /// Builds a lexicon from `(acronym, word_phrase)` pairs.
    pub fn from_pairs<I, A, W>(pairs: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = (A, W)>,
        A: Into<String>,
        W: Into<String>,
    {
        let mut rows = Vec::new();
        for (i, (a, w)) in pairs.into_iter().enumerate() {
            let (a, w) = (a.into(), w.into());
            if a.trim().is_empty() || w.trim().is_empty() {
                return Err(LexiconError::EmptyField(i + 1));
            }
            rows.push((i + 1, a.trim().to_owned(), w.trim().to_owned()));
        }
        Self::build(rows)
    }

    fn build(rows: Vec<(usize, String, String)>) -> Result<Self, LexiconError> {
        let symbols = SymbolSet::new(
            rows.iter()
                .flat_map(|(_, a, w)| [a, w])
                .filter(|s| is_symbol_form(s))
                .cloned(),
        );

        let mut entries = Vec::with_capacity(rows.len());
        let mut index = HashMap::with_capacity(rows.len() * 2);
        let mut token_forms: Vec<(usize, Vec<String>)> = Vec::with_capacity(rows.len() * 2);
        let mut max_tokens = 0;
        for (entry_id, (line, acronym, word)) in rows.into_iter().enumerate() {
            for (text, form) in [(&word, Form::WordPhrase), (&acronym, Form::Acronym)] {
                let tokens = normalized_tokens(text, &symbols, line)?;
                let key = tokens.join(" ");
                if index.insert(key, (entry_id, form)).is_some() {
                    return Err(LexiconError::DuplicateForm(text.clone()));
                }
                max_tokens = max_tokens.max(tokens.len());
                token_forms.push((entry_id, tokens));
            }
            entries.push(LexiconEntry {
                entry_id,
                word_phrase: word,
                acronym,
            });
        }

        let inert = ambiguous_entries(entries.len(), &token_forms);
        Ok(Self {
            entries,
            index,
            symbols,
            inert,
            max_tokens,
        })
    }

    /// The bundled chat dictionary.
    pub fn bundled() -> Self {
        load_lexicon(DEFAULT_LEXICON_TSV).expect("bundled lexicon is valid")
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, entry_id: usize) -> Result<&LexiconEntry, LexiconError> {
        self.entries
            .get(entry_id)
            .ok_or(LexiconError::UnknownEntry(entry_id))
    }

    /// Looks up a normalized, space-joined token sequence.
    pub fn lookup(&self, key: &str) -> Option<(usize, Form)> {
        self.index.get(key).copied()
    }

    pub fn index_len(&self) -> usize {
        self.index.len()
    }

    pub fn symbols(&self) -> &SymbolSet {
        &self.symbols
    }

    pub fn max_tokens(&self) -> usize {
        self.max_tokens
    }

    pub fn tokenize<'a>(&self, text: &'a str) -> Vec<crate::textstream::Token<'a>> {
        tokenize_with(text, &self.symbols)
    }

    /// False for entries whose forms overlap or sit inside another entry's
    /// phrase; flipping such an occurrence could re-segment the text.
    pub fn is_carrier_entry(&self, entry_id: usize) -> bool {
        !self.inert[entry_id]
    }

    pub fn inert_entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.iter().filter(|e| self.inert[e.entry_id])
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.acronym);
            out.push('\t');
            out.push_str(&e.word_phrase);
            out.push('\n');
        }
        out
    }
}

fn normalized_tokens(
    text: &str,
    symbols: &SymbolSet,
    line: usize,
) -> Result<Vec<String>, LexiconError> {
    if is_symbol_form(text) {
        return Ok(vec![normalize_token(text)]);
    }
    let first = text.chars().next().unwrap_or(' ');
    let last = text.chars().next_back().unwrap_or(' ');
    if !is_word_char(first) || !is_word_char(last) {
        return Err(LexiconError::MalformedLine {
            line,
            reason: format!("{text:?} must start and end with a letter, digit or apostrophe"),
        });
    }
    Ok(tokenize_with(text, symbols)
        .into_iter()
        .filter(|t| t.is_word())
        .map(|t| normalize_token(t.text))
        .collect())
}

/// Marks entries with a form that is a proper contiguous part of another
/// form, or whose edge tokens overlap another form's opposite edge.
fn ambiguous_entries(n: usize, forms: &[(usize, Vec<String>)]) -> Vec<bool> {
    let mut inert = vec![false; n];
    for (i, (fe, f)) in forms.iter().enumerate() {
        for (j, (ge, g)) in forms.iter().enumerate() {
            if i == j || g.len() < 2 {
                continue;
            }
            if f.len() < g.len() && g.windows(f.len()).any(|w| w == f.as_slice()) {
                inert[*fe] = true;
            }
            let max_overlap = f.len().min(g.len());
            for k in 1..max_overlap {
                if f[f.len() - k..] == g[..k] {
                    inert[*fe] = true;
                    inert[*ge] = true;
                }
            }
        }
    }
    inert
}

/// Per-entry column swap flags derived from a key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapMask(Vec<bool>);

impl SwapMask {
    pub fn from_key(key: &StegoKey, entries: usize) -> Self {
        Self(
            (0..entries)
                .map(|j| bit_at(key.as_bytes(), j % KEY_BITS))
                .collect(),
        )
    }

    pub fn identity(entries: usize) -> Self {
        Self(vec![false; entries])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_swapped(&self, entry_id: usize) -> bool {
        self.0[entry_id]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn xor(&self, other: &SwapMask) -> SwapMask {
        SwapMask(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }
}

/// The lexicon viewed through a swap mask.
#[derive(Debug, Clone)]
pub struct EffectiveTable<'a> {
    base: &'a Lexicon,
    mask: SwapMask,
}

pub fn shuffle_table<'a>(lex: &'a Lexicon, key: &StegoKey) -> EffectiveTable<'a> {
    EffectiveTable::new(lex, SwapMask::from_key(key, lex.len()))
}

impl<'a> EffectiveTable<'a> {
    pub fn new(base: &'a Lexicon, mask: SwapMask) -> Self {
        assert_eq!(base.len(), mask.len(), "mask length must match the lexicon");
        Self { base, mask }
    }

    /// The unshuffled table.
    pub fn unshuffled(base: &'a Lexicon) -> Self {
        Self::new(base, SwapMask::identity(base.len()))
    }

    pub fn base(&self) -> &'a Lexicon {
        self.base
    }

    pub fn mask(&self) -> &SwapMask {
        &self.mask
    }

    /// Bit label of `form` for `entry_id`: false for column 0, true for column 1.
    pub fn column_of(&self, entry_id: usize, form: Form) -> Result<bool, LexiconError> {
        self.base.entry(entry_id)?;
        Ok(form.base_label() ^ self.mask.is_swapped(entry_id))
    }

    /// The form of `entry_id` that sits in column `bit`.
    pub fn form_for_bit(&self, entry_id: usize, bit: bool) -> Result<Form, LexiconError> {
        self.base.entry(entry_id)?;
        Ok(if bit ^ self.mask.is_swapped(entry_id) {
            Form::Acronym
        } else {
            Form::WordPhrase
        })
    }

    /// Canonical text in column `bit` of entry `entry_id`.
    pub fn cell(&self, entry_id: usize, bit: bool) -> Result<&'a str, LexiconError> {
        let form = self.form_for_bit(entry_id, bit)?;
        Ok(self.base.entry(entry_id)?.form_text(form))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_pairs_in_order() {
        let lex = load_lexicon("ASAP\tAs soon as possible\n4\tFor\n").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.index_len(), 4);
        assert_eq!(lex.entries()[0].acronym, "ASAP");
        assert_eq!(lex.entries()[1].word_phrase, "For");
        assert_eq!(
            lex.lookup("as soon as possible"),
            Some((0, Form::WordPhrase))
        );
        assert_eq!(lex.lookup("4"), Some((1, Form::Acronym)));
    }

    #[test]
    fn empty_input_is_valid() {
        let lex = load_lexicon("").unwrap();
        assert!(lex.is_empty());
        assert_eq!(lex.index_len(), 0);
        let lex = load_lexicon("# only a comment\n\n").unwrap();
        assert!(lex.is_empty());
    }

    #[test]
    fn duplicate_across_columns() {
        assert_eq!(
            load_lexicon("X\tfoo\nfoo\tY\n"),
            Err(LexiconError::DuplicateForm("foo".into()))
        );
        // normalization makes case and spacing irrelevant
        assert_eq!(
            load_lexicon("X\tFor  you\nY\tfor you\n"),
            Err(LexiconError::DuplicateForm("for you".into()))
        );
        // a pair whose two cells normalize alike
        assert!(matches!(
            load_lexicon("ok\tOK\n"),
            Err(LexiconError::DuplicateForm(_))
        ));
    }

    #[test]
    fn malformed_and_empty_cells() {
        assert!(matches!(
            load_lexicon("a\tb\tc\n"),
            Err(LexiconError::MalformedLine { line: 1, .. })
        ));
        assert!(matches!(
            load_lexicon("# c\nonly one\n"),
            Err(LexiconError::MalformedLine { line: 2, .. })
        ));
        assert_eq!(load_lexicon("X\t \n"), Err(LexiconError::EmptyField(1)));
        assert_eq!(load_lexicon("\tword\n"), Err(LexiconError::EmptyField(1)));
        assert!(matches!(
            load_lexicon("ETC\tet cetera.\n"),
            Err(LexiconError::MalformedLine { .. })
        ));
    }

    #[test]
    fn bundled_lexicon_loads() {
        let lex = Lexicon::bundled();
        assert!(lex.len() > 90);
        assert_eq!(lex.entries()[0].acronym, "&");
        assert!(lex.symbols().contains_char('&'));
        let inert: Vec<&str> = lex.inert_entries().map(|e| e.acronym.as_str()).collect();
        assert!(inert.contains(&"4"));
        assert!(inert.contains(&"2"));
        assert!(!inert.contains(&"&"));
        assert!(!inert.contains(&"4U"));
    }

    #[test]
    fn ambiguity_rules() {
        let lex = Lexicon::from_pairs([
            ("4", "For"),
            ("4U", "For you"),
            ("LOL", "Laughing out loud"),
            ("ROFL", "Rolling on the floor laughing"),
            ("&", "and"),
        ])
        .unwrap();
        let carrier: Vec<bool> = (0..lex.len()).map(|j| lex.is_carrier_entry(j)).collect();
        assert_eq!(carrier, vec![false, true, false, false, true]);
    }

    #[test]
    fn tsv_round_trip() {
        let lex = Lexicon::bundled();
        let again = load_lexicon(&lex.to_tsv()).unwrap();
        assert_eq!(lex, again);
    }

    fn key_with(bits: &[usize]) -> StegoKey {
        let mut bytes = [0u8; 32];
        for &b in bits {
            bytes[b / 8] |= 0x80 >> (b % 8);
        }
        StegoKey::from_bytes(bytes)
    }

    #[test]
    fn zero_key_is_identity() {
        let lex = Lexicon::bundled();
        let t = shuffle_table(&lex, &StegoKey::from_bytes([0; 32]));
        for j in 0..lex.len() {
            assert!(!t.column_of(j, Form::WordPhrase).unwrap());
            assert!(t.column_of(j, Form::Acronym).unwrap());
        }
    }

    #[test]
    fn all_ones_key_swaps_everything() {
        let lex = Lexicon::bundled();
        let t = shuffle_table(&lex, &StegoKey::from_bytes([0xff; 32]));
        for j in 0..lex.len() {
            assert!(!t.column_of(j, Form::Acronym).unwrap());
            assert_eq!(t.form_for_bit(j, false).unwrap(), Form::Acronym);
        }
    }

    #[test]
    fn mask_wraps_at_256() {
        let pairs: Vec<(String, String)> = (0..300)
            .map(|i| (format!("A{i}"), format!("word{i}")))
            .collect();
        let lex = Lexicon::from_pairs(pairs).unwrap();
        let t = shuffle_table(&lex, &key_with(&[0]));
        let swapped: Vec<usize> = (0..300).filter(|&j| t.mask().is_swapped(j)).collect();
        assert_eq!(swapped, vec![0, 256]);
    }

    #[test]
    fn key_bits_are_msb_first() {
        let lex = Lexicon::from_pairs((0..16).map(|i| (format!("A{i}"), format!("w{i}")))).unwrap();
        let mut bytes = [0u8; 32];
        bytes[0] = 0b1000_0001;
        bytes[1] = 0b0100_0000;
        let mask = SwapMask::from_key(&StegoKey::from_bytes(bytes), lex.len());
        let on: Vec<usize> = (0..16).filter(|&j| mask.is_swapped(j)).collect();
        assert_eq!(on, vec![0, 7, 9]);
    }

    #[test]
    fn column_of_examples() {
        let lex = Lexicon::from_pairs([("&", "and"), ("2", "To")]).unwrap();
        let t = EffectiveTable::new(&lex, SwapMask(vec![false, true]));
        assert!(!t.column_of(0, Form::WordPhrase).unwrap());
        assert!(t.column_of(1, Form::WordPhrase).unwrap());
        assert_eq!(t.cell(1, false).unwrap(), "2");
        assert_eq!(
            t.column_of(2, Form::Acronym),
            Err(LexiconError::UnknownEntry(2))
        );
        assert_eq!(t.form_for_bit(5, true), Err(LexiconError::UnknownEntry(5)));
    }

    #[test]
    fn form_for_bit_inverts_column_of_exhaustively() {
        let lex = Lexicon::from_pairs([("&", "and"), ("2", "To")]).unwrap();
        for m in 0..4u8 {
            let mask = SwapMask(vec![m & 1 != 0, m & 2 != 0]);
            let t = EffectiveTable::new(&lex, mask);
            for j in 0..2 {
                for bit in [false, true] {
                    let form = t.form_for_bit(j, bit).unwrap();
                    assert_eq!(t.column_of(j, form).unwrap(), bit);
                }
                for form in [Form::WordPhrase, Form::Acronym] {
                    let bit = t.column_of(j, form).unwrap();
                    assert_eq!(t.form_for_bit(j, bit).unwrap(), form);
                }
                // exactly one form carries label 0
                let zeros = [Form::WordPhrase, Form::Acronym]
                    .iter()
                    .filter(|&&f| !t.column_of(j, f).unwrap())
                    .count();
                assert_eq!(zeros, 1);
            }
        }
    }
}
