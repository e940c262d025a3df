//! Cover/stego closeness measurements and attacks on the two schemes.

mod attack;
mod distance;
mod distribution;
mod report;

use thiserror::Error;

use crate::stego::StegoError;

pub use attack::{
    chosen_message_attack, distinguisher_experiment, keyless_extraction_attack, Adversary,
    CoverCorpus, DistinguisherConfig, DistinguisherSummary, Exposure, InferredLabeling, SchemeKind,
};
pub use distance::{hamming_distance, jaro, jaro_winkler, levenshtein, Hamming};
pub use distribution::{
    char_distribution, dist_stats, kl_divergence, Distribution, DistributionStats, Divergence,
};
pub use report::{compare, AnalysisReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("EmptyText: no character distribution exists for empty text")]
    EmptyText,
    #[error("OracleCapacityZero: the probe cover holds no carriers")]
    OracleCapacityZero,
    #[error("OracleInconsistent: {0}")]
    OracleInconsistent(String),
    #[error("InsufficientCorpusCapacity: need {needed} carriers, corpus has {available}")]
    InsufficientCorpusCapacity { needed: usize, available: usize },
    #[error("NoTrials: the experiment needs at least one trial")]
    NoTrials,
    #[error("CaseProfileMismatch: {0}")]
    CaseProfileMismatch(String),
    #[error(transparent)]
    Stego(#[from] StegoError),
}
