//! Character frequency distributions, their summary statistics and the
//! relative entropy between them.

use std::collections::BTreeMap;
use std::io;

use num_traits::Float;
use serde::{Serialize, Serializer};

use super::AnalysisError;

/// Relative frequency of each Unicode scalar present in a text.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<F> {
    probs: BTreeMap<char, F>,
}

impl<F: Float> Distribution<F> {
    /// Normalizes positive weights into a distribution; `None` if no weight
    /// is positive. Non-positive weights are dropped.
    pub fn from_weights<I: IntoIterator<Item = (char, F)>>(weights: I) -> Option<Self> {
        let mut probs: BTreeMap<char, F> = BTreeMap::new();
        for (c, w) in weights {
            if w > F::zero() {
                let slot = probs.entry(c).or_insert_with(F::zero);
                *slot = *slot + w;
            }
        }
        let total = probs.values().fold(F::zero(), |acc, &w| acc + w);
        if probs.is_empty() || !total.is_finite() {
            return None;
        }
        for p in probs.values_mut() {
            *p = *p / total;
        }
        Some(Self { probs })
    }

    pub fn probs(&self) -> &BTreeMap<char, F> {
        &self.probs
    }

    pub fn prob(&self, symbol: char) -> F {
        self.probs.get(&symbol).copied().unwrap_or_else(F::zero)
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    /// Writes `symbol,probability` rows, in symbol order, with a header.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), csv::Error>
    where
        F: std::fmt::Display,
    {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["symbol", "probability"])?;
        for (c, p) in &self.probs {
            w.write_record([c.to_string(), p.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn char_distribution<F: Float>(text: &str) -> Result<Distribution<F>, AnalysisError> {
    let mut counts: BTreeMap<char, usize> = BTreeMap::new();
    for c in text.chars() {
        *counts.entry(c).or_default() += 1;
    }
    let total: usize = counts.values().sum();
    if total == 0 {
        return Err(AnalysisError::EmptyText);
    }
    let total = F::from(total).expect("count fits the float type");
    let probs = counts
        .into_iter()
        .map(|(c, n)| (c, F::from(n).expect("count fits the float type") / total))
        .collect();
    Ok(Distribution { probs })
}

/// A divergence value that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Divergence<F> {
    Finite(F),
    /// Some symbol of the first distribution is absent from the second.
    Infinite,
}

impl<F: Float> Divergence<F> {
    pub fn is_zero(&self) -> bool {
        matches!(self, Divergence::Finite(v) if v.is_zero())
    }

    pub fn finite(&self) -> Option<F> {
        match self {
            Divergence::Finite(v) => Some(*v),
            Divergence::Infinite => None,
        }
    }
}

impl<F: Serialize> Serialize for Divergence<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Divergence::Finite(v) => v.serialize(s),
            Divergence::Infinite => s.serialize_str("Infinite"),
        }
    }
}

/// `sum over p's support of p(x) * log2(p(x) / q(x))`.
pub fn kl_divergence<F: Float>(p: &Distribution<F>, q: &Distribution<F>) -> Divergence<F> {
    let mut sum = F::zero();
    for (c, &pc) in &p.probs {
        if pc.is_zero() {
            continue;
        }
        let qc = q.prob(*c);
        if qc.is_zero() {
            return Divergence::Infinite;
        }
        sum = sum + pc * (pc / qc).log2();
    }
    Divergence::Finite(sum)
}

/// Population statistics of a probability vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionStats<F> {
    pub mean: F,
    pub variance: F,
    pub std: F,
}

impl<F: Float> DistributionStats<F> {
    /// Field-wise absolute difference.
    pub fn abs_diff(&self, other: &Self) -> Self {
        Self {
            mean: (self.mean - other.mean).abs(),
            variance: (self.variance - other.variance).abs(),
            std: (self.std - other.std).abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mean.is_zero() && self.variance.is_zero() && self.std.is_zero()
    }
}

pub fn dist_stats<F: Float>(d: &Distribution<F>) -> DistributionStats<F> {
    let n = F::from(d.probs.len()).expect("support size fits the float type");
    let mean = d.probs.values().fold(F::zero(), |acc, &p| acc + p) / n;
    let variance = d
        .probs
        .values()
        .fold(F::zero(), |acc, &p| acc + (p - mean) * (p - mean))
        / n;
    DistributionStats {
        mean,
        variance,
        std: variance.sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(pairs: &[(char, f64)]) -> Distribution<f64> {
        Distribution::from_weights(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn counting() {
        let d = char_distribution::<f64>("aa").unwrap();
        assert_eq!(d.probs().len(), 1);
        assert_eq!(d.prob('a'), 1.0);
        let d = char_distribution::<f64>("ab").unwrap();
        assert_eq!((d.prob('a'), d.prob('b')), (0.5, 0.5));
        let d = char_distribution::<f64>("aab").unwrap();
        assert!((d.prob('a') - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.prob('b') - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(char_distribution::<f64>(""), Err(AnalysisError::EmptyText));
    }

    #[test]
    fn kl_examples() {
        let d = char_distribution::<f64>("hello world").unwrap();
        assert_eq!(kl_divergence(&d, &d), Divergence::Finite(0.0));

        let p = dist(&[('a', 0.5), ('b', 0.5)]);
        let q = dist(&[('a', 0.25), ('b', 0.75)]);
        let v = kl_divergence(&p, &q).finite().unwrap();
        // 0.5*log2(2) + 0.5*log2(2/3)
        assert!((v - 0.2075).abs() < 1e-4);

        let r = dist(&[('a', 1.0)]);
        assert_eq!(kl_divergence(&p, &r), Divergence::Infinite);
        // symbols only in q contribute nothing
        assert!(kl_divergence(&r, &p).finite().is_some());
    }

    #[test]
    fn stats_examples() {
        let s = dist_stats(&char_distribution::<f64>("abcd").unwrap());
        assert_eq!((s.mean, s.variance), (0.25, 0.0));
        let s = dist_stats(&char_distribution::<f64>("zzz").unwrap());
        assert_eq!((s.mean, s.variance, s.std), (1.0, 0.0, 0.0));
        let s = dist_stats(&dist(&[('a', 0.25), ('b', 0.75)]));
        assert_eq!((s.mean, s.variance, s.std), (0.5, 0.0625, 0.25));
    }

    #[test]
    fn from_weights_normalizes() {
        let d = Distribution::<f64>::from_weights([('a', 1.0), ('b', 3.0), ('c', 0.0)]).unwrap();
        assert_eq!(d.support_size(), 2);
        assert_eq!(d.prob('b'), 0.75);
        assert!(Distribution::<f64>::from_weights([('a', 0.0)]).is_none());
    }

    #[test]
    fn f32_path() {
        let d = char_distribution::<f32>("aab").unwrap();
        let s = dist_stats(&d);
        assert!((s.mean - 0.5).abs() < 1e-6);
        assert!((s.std * s.std - s.variance).abs() < 1e-6);
    }

    #[test]
    fn csv_export() {
        let d = char_distribution::<f64>("ab").unwrap();
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "symbol,probability\na,0.5\nb,0.5\n"
        );
    }
}
