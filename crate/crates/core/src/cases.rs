//! The three chosen-cover experiments against the baseline scheme.
//!
//! Case 1 uses a cover whose carriers are all words/phrases, case 2 one whose
//! carriers are all acronyms, case 3 a mix. Each case embeds an all-zeros and
//! then an all-ones message sized to the full capacity of the cover and
//! compares the result with the cover.

use std::fmt;

use serde::Serialize;

use crate::lexicon::{Form, Lexicon};
use crate::steganalysis::{compare, AnalysisError, AnalysisReport};
use crate::stego::{embed_baseline, BitMessage};
use crate::textstream::scan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseId {
    /// Carriers all in word/phrase form (or none at all).
    WordsOnly,
    /// Carriers all in acronym form.
    AcronymsOnly,
    /// Both forms present.
    Mixed,
}

impl CaseId {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(CaseId::WordsOnly),
            2 => Some(CaseId::AcronymsOnly),
            3 => Some(CaseId::Mixed),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            CaseId::WordsOnly => 1,
            CaseId::AcronymsOnly => 2,
            CaseId::Mixed => 3,
        }
    }

    fn admits(self, words: usize, acronyms: usize) -> bool {
        match self {
            CaseId::WordsOnly => acronyms == 0,
            CaseId::AcronymsOnly => acronyms > 0 && words == 0,
            CaseId::Mixed => acronyms > 0 && words > 0,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRun {
    pub message: &'static str,
    pub bits: usize,
    #[serde(skip)]
    pub stego: String,
    /// Acronym-form carriers left in the stego object.
    pub stego_acronyms: usize,
    pub report: AnalysisReport<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub case: u8,
    pub capacity: usize,
    pub cover_words: usize,
    pub cover_acronyms: usize,
    pub zeros: CaseRun,
    pub ones: CaseRun,
}

fn form_counts(text: &str, lex: &Lexicon) -> (usize, usize) {
    let carriers = scan(text, lex);
    let acronyms = carriers.iter().filter(|c| c.form == Form::Acronym).count();
    (carriers.len() - acronyms, acronyms)
}

pub fn run_case(case: CaseId, lex: &Lexicon, cover: &str) -> Result<CaseOutcome, AnalysisError> {
    let (words, acronyms) = form_counts(cover, lex);
    if !case.admits(words, acronyms) {
        return Err(AnalysisError::CaseProfileMismatch(format!(
            "{case} does not admit a cover with {words} word-form and {acronyms} acronym-form carriers"
        )));
    }
    let capacity = words + acronyms;
    let run = |message: &'static str, msg: BitMessage| -> Result<CaseRun, AnalysisError> {
        let stego = embed_baseline(cover, lex, &msg)?;
        let report = compare::<f64>(cover, &stego)?;
        Ok(CaseRun {
            message,
            bits: msg.len(),
            stego_acronyms: form_counts(&stego, lex).1,
            stego,
            report,
        })
    };
    Ok(CaseOutcome {
        case: case.number(),
        capacity,
        cover_words: words,
        cover_acronyms: acronyms,
        zeros: run("all-zeros", BitMessage::zeros(capacity))?,
        ones: run("all-ones", BitMessage::ones(capacity))?,
    })
}
