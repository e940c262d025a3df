//! Random cover texts with a known carrier layout.

#![allow(dead_code)]

use std::collections::BTreeSet;

use acrostego::textstream::scan;
use acrostego::{Form, Lexicon};
use rand::seq::SliceRandom;
use rand::Rng;

const FILLERS: &[&str] = &[
    "apple", "river", "quietly", "seven", "blue", "mountain", "pencil", "window", "jumped",
    "kettle", "orange", "garden", "whisper", "lamp", "coffee", "yellow", "thunder", "basket",
    "violin", "ocean", "marble", "cactus", "ladder", "silver", "tiger", "planet", "spoon",
    "meadow", "rocket", "velvet", "walrus", "pepper", "candle", "falcon", "harbor", "nugget",
    "puzzle", "saddle", "turnip", "zebra",
];

const SEPARATORS: &[&str] = &[
    " ", " ", " ", " ", ", ", ". ", "! ", "? ", "\n", " - ", "; ", ": ", " (", ") ",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormPolicy {
    Words,
    Acronyms,
    Mixed,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub text: String,
    /// `(entry_id, form)` per carrier, in text order.
    pub carriers: Vec<(usize, Form)>,
}

pub struct CoverGen<'a> {
    lex: &'a Lexicon,
    entries: Vec<usize>,
    fillers: Vec<&'static str>,
    separators: Vec<&'static str>,
}

impl<'a> CoverGen<'a> {
    pub fn new(lex: &'a Lexicon) -> Self {
        let mut form_tokens = BTreeSet::new();
        for e in lex.entries() {
            for form in [&e.word_phrase, &e.acronym] {
                for t in lex.tokenize(form).iter().filter(|t| t.is_word()) {
                    form_tokens.insert(t.text.to_lowercase());
                }
            }
        }
        let fillers = FILLERS
            .iter()
            .copied()
            .filter(|f| !form_tokens.contains(*f))
            .collect::<Vec<_>>();
        assert!(
            fillers.len() > 10,
            "too few filler words survive the lexicon"
        );
        let separators = SEPARATORS
            .iter()
            .copied()
            .filter(|s| !s.chars().any(|c| lex.symbols().contains_char(c)))
            .collect();
        let entries = (0..lex.len())
            .filter(|&i| lex.is_carrier_entry(i))
            .collect();
        Self {
            lex,
            entries,
            fillers,
            separators,
        }
    }

    pub fn carrier_entries(&self) -> &[usize] {
        &self.entries
    }

    fn styled<R: Rng>(rng: &mut R, s: &str) -> String {
        match rng.gen_range(0..10) {
            0 => s.to_uppercase(),
            1 => s.to_lowercase(),
            2 => {
                let mut cs = s.chars();
                match cs.next() {
                    Some(c) => c.to_uppercase().chain(cs).collect(),
                    None => String::new(),
                }
            }
            _ => s.to_owned(),
        }
    }

    fn pick_form<R: Rng>(rng: &mut R, policy: FormPolicy) -> Form {
        match policy {
            FormPolicy::Words => Form::WordPhrase,
            FormPolicy::Acronyms => Form::Acronym,
            FormPolicy::Mixed => {
                if rng.gen() {
                    Form::Acronym
                } else {
                    Form::WordPhrase
                }
            }
        }
    }

    /// A cover with exactly `n` carriers. Mixed covers with two or more
    /// carriers contain both forms.
    pub fn generate<R: Rng>(&self, rng: &mut R, n: usize, policy: FormPolicy) -> Generated {
        self.build(rng, policy, |placed, _| placed >= n, n)
    }

    /// A cover of at least `bytes` bytes.
    pub fn generate_len<R: Rng>(&self, rng: &mut R, bytes: usize, policy: FormPolicy) -> Generated {
        self.build(rng, policy, |_, len| len >= bytes, usize::MAX)
    }

    fn build<R: Rng>(
        &self,
        rng: &mut R,
        policy: FormPolicy,
        done: impl Fn(usize, usize) -> bool,
        n: usize,
    ) -> Generated {
        let mut parts: Vec<String> = Vec::new();
        let mut carriers = Vec::new();
        let mut text_len = 0;
        let push = |parts: &mut Vec<String>, s: String, len: &mut usize| {
            *len += s.len();
            parts.push(s);
        };
        while !done(carriers.len(), text_len) {
            let fillers = rng.gen_range(1..4);
            for _ in 0..fillers {
                let f = self.fillers.choose(rng).unwrap();
                push(&mut parts, Self::styled(rng, f), &mut text_len);
                push(
                    &mut parts,
                    self.separators.choose(rng).unwrap().to_string(),
                    &mut text_len,
                );
            }
            if done(carriers.len(), text_len) {
                break;
            }
            let entry = *self.entries.choose(rng).unwrap();
            let mut form = Self::pick_form(rng, policy);
            if policy == FormPolicy::Mixed && n >= 2 && carriers.len() + 1 == n {
                if carriers.iter().all(|&(_, f)| f == Form::Acronym) {
                    form = Form::WordPhrase;
                } else if carriers.iter().all(|&(_, f)| f == Form::WordPhrase) {
                    form = Form::Acronym;
                }
            }
            let e = &self.lex.entries()[entry];
            push(
                &mut parts,
                Self::styled(rng, e.form_text(form)),
                &mut text_len,
            );
            push(
                &mut parts,
                self.separators.choose(rng).unwrap().to_string(),
                &mut text_len,
            );
            carriers.push((entry, form));
        }
        let f = self.fillers.choose(rng).unwrap();
        parts.push(f.to_string());
        let text = parts.concat();
        let found: Vec<(usize, Form)> = scan(&text, self.lex)
            .iter()
            .map(|c| (c.entry_id, c.form))
            .collect();
        assert_eq!(
            found, carriers,
            "generator layout disagrees with the scanner: {text:?}"
        );
        Generated { text, carriers }
    }
}
