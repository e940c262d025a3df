//! Chosen-message, keyless-extraction and distinguishing experiments.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::lexicon::{Form, Lexicon};
use crate::stego::{
    capacity, extract_baseline, extract_enhanced, keygen, BitMessage, MessageLength, Scheme,
};
use crate::textstream::scan;

use super::AnalysisError;

/// Bundled chat corpus, one message per line.
pub const DEFAULT_CORPUS: &str = include_str!("../../data/chat_corpus.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    Baseline,
    Enhanced,
}

/// What the attacker uses to read bits out of a stego object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Adversary {
    /// The public baseline extractor.
    Keyless,
    /// The keyed extractor with an independently drawn key.
    WrongKey,
}

/// A carrier whose form differed between the all-zeros and all-ones stego.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exposure {
    pub ordinal: usize,
    pub entry_id: usize,
    pub zero_form: Form,
    pub one_form: Form,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InferredLabeling {
    /// Length of the chosen messages the oracle accepted.
    pub message_bits: usize,
    pub exposures: Vec<Exposure>,
    /// Inferred bit-0 form per exposed entry.
    pub labels: BTreeMap<usize, Form>,
    /// Majority bit-0 form among exposed entries, used for the rest.
    pub default_zero_form: Form,
}

impl InferredLabeling {
    pub fn is_exposed(&self, entry_id: usize) -> bool {
        self.labels.contains_key(&entry_id)
    }

    pub fn predict_zero_form(&self, entry_id: usize) -> Form {
        self.labels
            .get(&entry_id)
            .copied()
            .unwrap_or(self.default_zero_form)
    }
}

/// Feeds all-zeros and all-ones messages through `oracle` and reads the
/// embedding rule off the differences.
///
/// The oracle returns `None` when it refuses a message (too long for the
/// cover). The longest accepted length is found by bisection, so the attacker
/// needs no knowledge of the cover's capacity. The public lexicon is used to
/// align the two stego objects carrier by carrier.
pub fn chosen_message_attack<O>(
    mut oracle: O,
    probe_cover: &str,
    lex: &Lexicon,
) -> Result<InferredLabeling, AnalysisError>
where
    O: FnMut(&str, &[bool]) -> Option<String>,
{
    let upper = lex
        .tokenize(probe_cover)
        .iter()
        .filter(|t| t.is_word())
        .count();
    let (mut lo, mut hi) = (0, upper);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if oracle(probe_cover, &vec![false; mid]).is_some() {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let n = lo;
    if n == 0 {
        return Err(AnalysisError::OracleCapacityZero);
    }

    let refused = || AnalysisError::OracleInconsistent("oracle refused an accepted length".into());
    let zeros = oracle(probe_cover, &vec![false; n]).ok_or_else(refused)?;
    let ones = oracle(probe_cover, &vec![true; n]).ok_or_else(refused)?;
    let (c0, c1) = (scan(&zeros, lex), scan(&ones, lex));
    if c0.len() != c1.len() || c0.len() < n {
        return Err(AnalysisError::OracleInconsistent(format!(
            "stego objects hold {} and {} carriers for a {n}-bit message",
            c0.len(),
            c1.len()
        )));
    }

    let mut exposures = Vec::new();
    let mut labels = BTreeMap::new();
    for (a, b) in c0.iter().zip(&c1).take(n) {
        if a.entry_id != b.entry_id {
            return Err(AnalysisError::OracleInconsistent(format!(
                "carrier {} maps to different entries",
                a.ordinal
            )));
        }
        if a.form == b.form {
            continue;
        }
        if let Some(prev) = labels.insert(a.entry_id, a.form) {
            if prev != a.form {
                return Err(AnalysisError::OracleInconsistent(format!(
                    "entry {} encodes bit 0 in both forms",
                    a.entry_id
                )));
            }
        }
        exposures.push(Exposure {
            ordinal: a.ordinal,
            entry_id: a.entry_id,
            zero_form: a.form,
            one_form: b.form,
        });
    }

    let acronyms = labels.values().filter(|&&f| f == Form::Acronym).count();
    let default_zero_form = if acronyms * 2 > labels.len() {
        Form::Acronym
    } else {
        Form::WordPhrase
    };
    Ok(InferredLabeling {
        message_bits: n,
        exposures,
        labels,
        default_zero_form,
    })
}

fn agreement(got: &[bool], truth: &[bool]) -> f64 {
    if truth.is_empty() {
        return 1.0;
    }
    let hits = truth
        .iter()
        .enumerate()
        .filter(|&(i, t)| got.get(i) == Some(t))
        .count();
    hits as f64 / truth.len() as f64
}

/// Fraction of `truth` recovered by the keyless baseline extractor.
pub fn keyless_extraction_attack(stego: &str, lex: &Lexicon, truth: &[bool]) -> f64 {
    let got = extract_baseline(stego, lex, MessageLength::All).unwrap_or_default();
    agreement(&got, truth)
}

/// Lines of chat text from which trial covers are assembled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCorpus {
    lines: Vec<String>,
}

impl CoverCorpus {
    pub fn from_text(text: &str) -> Self {
        Self {
            lines: text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(str::to_owned)
                .collect(),
        }
    }

    pub fn bundled() -> Self {
        Self::from_text(DEFAULT_CORPUS)
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn capacity(&self, lex: &Lexicon) -> usize {
        self.lines.iter().map(|l| capacity(l, lex)).sum()
    }

    /// Joins randomly ordered lines until the cover holds `needed` carriers.
    pub fn assemble<R: Rng>(
        &self,
        lex: &Lexicon,
        needed: usize,
        rng: &mut R,
    ) -> Result<String, AnalysisError> {
        let caps: Vec<usize> = self.lines.iter().map(|l| capacity(l, lex)).collect();
        self.assemble_with(&caps, needed, rng)
    }

    fn assemble_with<R: Rng>(
        &self,
        caps: &[usize],
        needed: usize,
        rng: &mut R,
    ) -> Result<String, AnalysisError> {
        let available: usize = caps.iter().sum();
        if available < needed {
            return Err(AnalysisError::InsufficientCorpusCapacity { needed, available });
        }
        let mut order: Vec<usize> = (0..self.lines.len()).collect();
        order.shuffle(rng);
        let mut picked = Vec::new();
        let mut have = 0;
        for i in order {
            if have >= needed && !picked.is_empty() {
                break;
            }
            have += caps[i];
            picked.push(self.lines[i].as_str());
        }
        Ok(picked.join("\n"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistinguisherConfig {
    pub scheme: SchemeKind,
    pub adversary: Adversary,
    pub trials: usize,
    pub bits_per_trial: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinguisherSummary {
    pub scheme: SchemeKind,
    pub adversary: Adversary,
    pub trials: usize,
    pub total_bits: usize,
    pub mean_accuracy: f64,
    pub stderr: f64,
}

/// Repeats the extraction attack over fresh keys, messages and covers.
///
/// Every random draw comes from one ChaCha20 stream seeded with
/// `config.seed`, in trial order, so a seed fixes the whole experiment.
pub fn distinguisher_experiment(
    config: &DistinguisherConfig,
    lex: &Lexicon,
    corpus: &CoverCorpus,
) -> Result<DistinguisherSummary, AnalysisError> {
    if config.trials == 0 {
        return Err(AnalysisError::NoTrials);
    }
    let caps: Vec<usize> = corpus.lines.iter().map(|l| capacity(l, lex)).collect();
    let n = config.bits_per_trial;
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut accuracies = Vec::with_capacity(config.trials);
    for _ in 0..config.trials {
        let key = keygen(&mut rng)?;
        let wrong = keygen(&mut rng)?;
        let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let cover = corpus.assemble_with(&caps, n, &mut rng)?;
        let scheme = match config.scheme {
            SchemeKind::Baseline => Scheme::Baseline,
            SchemeKind::Enhanced => Scheme::Enhanced(key),
        };
        let stego = scheme.embed(&cover, lex, &BitMessage::raw(bits.clone()))?;
        let accuracy = match config.adversary {
            Adversary::Keyless => keyless_extraction_attack(&stego, lex, &bits),
            Adversary::WrongKey => agreement(
                &extract_enhanced(&stego, lex, &wrong, MessageLength::Exact(n))?,
                &bits,
            ),
        };
        accuracies.push(accuracy);
    }

    let t = accuracies.len() as f64;
    let mean = accuracies.iter().sum::<f64>() / t;
    let stderr = if accuracies.len() > 1 {
        let var = accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (t - 1.0);
        (var / t).sqrt()
    } else {
        0.0
    };
    Ok(DistinguisherSummary {
        scheme: config.scheme,
        adversary: config.adversary,
        trials: config.trials,
        total_bits: config.trials * n,
        mean_accuracy: mean,
        stderr,
    })
}
