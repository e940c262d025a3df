//! Lossless tokenization and greedy longest-match carrier detection.
//!
//! A word token is a maximal run of letters, digits and apostrophes. Every
//! other character belongs to a separator run, except that a standalone
//! occurrence of a symbol-only lexicon form (such as `&`) is promoted to a
//! word token. "Standalone" means neither neighbouring character is a word
//! character or a lexicon symbol character.

use std::collections::HashSet;
use std::ops::Range;

use thiserror::Error;

use crate::lexicon::{Form, Lexicon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("SpanMismatch: {0}")]
    SpanMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Separator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// Character offsets into the source.
    pub span: Range<usize>,
    /// Byte offsets into the source.
    pub bytes: Range<usize>,
}

impl Token<'_> {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

pub(crate) fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

pub fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_apostrophe(c)
}

/// Case-folded, apostrophe-normalized form of a single token.
pub(crate) fn normalize_token(text: &str) -> String {
    text.chars()
        .map(|c| if is_apostrophe(c) { '\'' } else { c })
        .flat_map(char::to_lowercase)
        .collect()
}

/// Symbol-only forms that the tokenizer promotes to word tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolSet {
    // longest first so that multi-character symbols win
    forms: Vec<String>,
    chars: HashSet<char>,
}

impl SymbolSet {
    pub fn new<I, S>(forms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut forms: Vec<String> = forms.into_iter().map(Into::into).collect();
        forms.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then(a.cmp(b)));
        forms.dedup();
        let chars = forms.iter().flat_map(|f| f.chars()).collect();
        Self { forms, chars }
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn contains_char(&self, c: char) -> bool {
        self.chars.contains(&c)
    }

    /// True for characters that cannot glue onto a neighbouring carrier.
    pub(crate) fn is_neutral(&self, c: Option<char>) -> bool {
        match c {
            None => true,
            Some(c) => !is_word_char(c) && !self.chars.contains(&c),
        }
    }
}

/// Tokenizes without symbol promotion.
pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    tokenize_with(text, &SymbolSet::default())
}

pub fn tokenize_with<'a>(text: &'a str, symbols: &SymbolSet) -> Vec<Token<'a>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(text.len(), |&(b, _)| b);
    let mut tokens = Vec::new();
    let mut push = |kind, start: usize, end: usize| {
        let bytes = byte_at(start)..byte_at(end);
        tokens.push(Token {
            kind,
            text: &text[bytes.clone()],
            span: start..end,
            bytes,
        });
    };

    let n = chars.len();
    let mut i = 0;
    while i < n {
        let start = i;
        if is_word_char(chars[i].1) {
            while i < n && is_word_char(chars[i].1) {
                i += 1;
            }
            push(TokenKind::Word, start, i);
            continue;
        }
        let mut sep_start = start;
        while i < n && !is_word_char(chars[i].1) {
            if let Some(len) = promoted_symbol_at(text, &chars, i, symbols) {
                if sep_start < i {
                    push(TokenKind::Separator, sep_start, i);
                }
                push(TokenKind::Word, i, i + len);
                i += len;
                sep_start = i;
            } else {
                i += 1;
            }
        }
        if sep_start < i {
            push(TokenKind::Separator, sep_start, i);
        }
    }
    tokens
}

fn promoted_symbol_at(
    text: &str,
    chars: &[(usize, char)],
    i: usize,
    symbols: &SymbolSet,
) -> Option<usize> {
    if symbols.is_empty() || !symbols.contains_char(chars[i].1) {
        return None;
    }
    let rest = &text[chars[i].0..];
    let prev = i.checked_sub(1).map(|p| chars[p].1);
    symbols.forms.iter().find_map(|form| {
        if !rest.starts_with(form.as_str()) {
            return None;
        }
        let len = form.chars().count();
        let next = chars.get(i + len).map(|&(_, c)| c);
        (symbols.is_neutral(prev) && symbols.is_neutral(next)).then_some(len)
    })
}

/// One lexicon occurrence that carries a bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierMatch {
    pub ordinal: usize,
    pub entry_id: usize,
    pub form: Form,
    /// Token index range covered by the match.
    pub token_span: Range<usize>,
    /// Byte range in the source text.
    pub byte_span: Range<usize>,
}

/// Greedy left-to-right longest-match scan.
///
/// Consecutive words in a phrase window may be separated by any separator run
/// without a line break. A window whose entry is ambiguous in the lexicon, or
/// whose outer neighbours are lexicon symbol characters, is consumed but not
/// reported: flipping it could change how the surrounding text segments.
pub fn find_carriers(tokens: &[Token<'_>], lex: &Lexicon) -> Vec<CarrierMatch> {
    let words: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.is_word().then_some(i))
        .collect();
    let normalized: Vec<String> = words
        .iter()
        .map(|&i| normalize_token(tokens[i].text))
        .collect();

    let mut out = Vec::new();
    let mut w = 0;
    while w < words.len() {
        let mut reach = 1;
        while reach < lex.max_tokens() && w + reach < words.len() {
            let (a, b) = (words[w + reach - 1], words[w + reach]);
            let joined = (a + 1..b).all(|s| !tokens[s].text.contains('\n'));
            if !joined {
                break;
            }
            reach += 1;
        }

        let found = (1..=reach).rev().find_map(|len| {
            let key = normalized[w..w + len].join(" ");
            lex.lookup(&key).map(|hit| (len, hit))
        });
        let Some((len, (entry_id, form))) = found else {
            w += 1;
            continue;
        };

        let first = words[w];
        let last = words[w + len - 1];
        let byte_span = tokens[first].bytes.start..tokens[last].bytes.end;
        if lex.is_carrier_entry(entry_id) && neutral_neighbours(tokens, first, last, lex) {
            out.push(CarrierMatch {
                ordinal: out.len(),
                entry_id,
                form,
                token_span: first..last + 1,
                byte_span,
            });
        }
        w += len;
    }
    out
}

fn neutral_neighbours(tokens: &[Token<'_>], first: usize, last: usize, lex: &Lexicon) -> bool {
    let before = first
        .checked_sub(1)
        .and_then(|i| tokens[i].text.chars().next_back());
    let after = tokens.get(last + 1).and_then(|t| t.text.chars().next());
    lex.symbols().is_neutral(before) && lex.symbols().is_neutral(after)
}

/// Tokenizes with the lexicon's symbol set and returns its carriers.
pub fn scan(text: &str, lex: &Lexicon) -> Vec<CarrierMatch> {
    find_carriers(&lex.tokenize(text), lex)
}

/// Replaces each matched byte span with the corresponding replacement text.
pub fn substitute<S: AsRef<str>>(
    text: &str,
    matches: &[CarrierMatch],
    replacements: &[S],
) -> Result<String, TextError> {
    if matches.len() != replacements.len() {
        return Err(TextError::SpanMismatch(format!(
            "{} matches but {} replacements",
            matches.len(),
            replacements.len()
        )));
    }
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for (m, r) in matches.iter().zip(replacements) {
        let span = &m.byte_span;
        if span.start < cursor || span.end < span.start || span.end > text.len() {
            return Err(TextError::SpanMismatch(format!(
                "carrier {} at bytes {}..{} is out of order or out of range",
                m.ordinal, span.start, span.end
            )));
        }
        if !text.is_char_boundary(span.start) || !text.is_char_boundary(span.end) {
            return Err(TextError::SpanMismatch(format!(
                "carrier {} does not fall on character boundaries",
                m.ordinal
            )));
        }
        out.push_str(&text[cursor..span.start]);
        out.push_str(r.as_ref());
        cursor = span.end;
    }
    out.push_str(&text[cursor..]);
    Ok(out)
}
