use std::fmt;

use num_traits::Float;
use serde::Serialize;

use super::distance::{hamming_distance, jaro_winkler, levenshtein, Hamming};
use super::distribution::{
    char_distribution, dist_stats, kl_divergence, DistributionStats, Divergence,
};
use super::AnalysisError;

/// Closeness of a cover text and its stego object.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport<F> {
    pub hamming: Hamming,
    pub levenshtein: usize,
    pub jaro_winkler_similarity: F,
    pub jaro_winkler_distance: F,
    pub kl_cover_vs_stego: Divergence<F>,
    pub stats_cover: DistributionStats<F>,
    pub stats_stego: DistributionStats<F>,
    pub stats_diff: DistributionStats<F>,
}

pub fn compare<F: Float>(cover: &str, stego: &str) -> Result<AnalysisReport<F>, AnalysisError> {
    let pc = char_distribution::<F>(cover)?;
    let ps = char_distribution::<F>(stego)?;
    let stats_cover = dist_stats(&pc);
    let stats_stego = dist_stats(&ps);
    let similarity = jaro_winkler::<F>(cover, stego);
    Ok(AnalysisReport {
        hamming: hamming_distance(cover, stego),
        levenshtein: levenshtein(cover, stego),
        jaro_winkler_similarity: similarity,
        jaro_winkler_distance: F::one() - similarity,
        kl_cover_vs_stego: kl_divergence(&pc, &ps),
        stats_diff: stats_cover.abs_diff(&stats_stego),
        stats_cover,
        stats_stego,
    })
}

impl<F: Float> AnalysisReport<F> {
    /// True when every difference field is exactly zero.
    pub fn is_exact_match(&self) -> bool {
        self.hamming == Hamming::Distance(0)
            && self.levenshtein == 0
            && self.jaro_winkler_distance.is_zero()
            && self.kl_cover_vs_stego.is_zero()
            && self.stats_diff.is_zero()
    }
}

/// Two plain-text tables: distances, then distribution statistics.
impl<F: Float + fmt::Display> fmt::Display for AnalysisReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Distance\tDifference")?;
        match self.hamming {
            Hamming::Distance(d) => writeln!(f, "Hamming\t{d}")?,
            Hamming::DifferentLengths => writeln!(f, "Hamming\tDifferent file lengths")?,
        }
        writeln!(f, "Levenshtein\t{}", self.levenshtein)?;
        writeln!(f, "Jaro-Winkler\t{:.3}", self.jaro_winkler_distance)?;
        match self.kl_cover_vs_stego {
            Divergence::Finite(v) => writeln!(f, "KL(cover||stego)\t{v:.6}")?,
            Divergence::Infinite => writeln!(f, "KL(cover||stego)\tInfinite")?,
        }
        writeln!(f)?;
        writeln!(f, "\tCover Text\tStego Object\tDifference")?;
        let rows = [
            (
                "Mean",
                self.stats_cover.mean,
                self.stats_stego.mean,
                self.stats_diff.mean,
            ),
            (
                "Variance",
                self.stats_cover.variance,
                self.stats_stego.variance,
                self.stats_diff.variance,
            ),
            (
                "STD",
                self.stats_cover.std,
                self.stats_stego.std,
                self.stats_diff.std,
            ),
        ];
        for (name, c, s, d) in rows {
            writeln!(f, "{name}\t{c:.6}\t{s:.6}\t{d:.6}")?;
        }
        Ok(())
    }
}
