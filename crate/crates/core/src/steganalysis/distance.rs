//! String distances over Unicode scalar values.

use num_traits::Float;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hamming {
    Distance(usize),
    /// The inputs differ in length, so no Hamming distance exists.
    DifferentLengths,
}

impl Serialize for Hamming {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Hamming::Distance(d) => s.serialize_u64(*d as u64),
            Hamming::DifferentLengths => s.serialize_str("DifferentLengths"),
        }
    }
}

pub fn hamming_distance(a: &str, b: &str) -> Hamming {
    let (a, b): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
    if a.len() != b.len() {
        return Hamming::DifferentLengths;
    }
    Hamming::Distance(a.iter().zip(&b).filter(|(x, y)| x != y).count())
}

/// Edit distance with unit-cost insertion, deletion and substitution.
pub fn levenshtein(a: &str, b: &str) -> usize {
    if a.is_ascii() && b.is_ascii() {
        return edit_distance(a.as_bytes(), b.as_bytes());
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    edit_distance(&a, &b)
}

fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut row: SmallVec<[usize; 64]> = (0..=short.len()).collect();
    for (i, lc) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, sc) in short.iter().enumerate() {
            let sub = diag + usize::from(lc != sc);
            diag = row[j + 1];
            row[j + 1] = sub.min(row[j] + 1).min(diag + 1);
        }
    }
    row[short.len()]
}

pub fn jaro<F: Float>(a: &str, b: &str) -> F {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() && b.is_empty() {
        return F::one();
    }
    if a.is_empty() || b.is_empty() {
        return F::zero();
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut b_used = vec![false; b.len()];
    let mut a_matched = Vec::with_capacity(a.len());
    for (i, ca) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        if let Some(j) = (lo..hi).find(|&j| !b_used[j] && b[j] == *ca) {
            b_used[j] = true;
            a_matched.push(*ca);
        }
    }
    let m = a_matched.len();
    if m == 0 {
        return F::zero();
    }
    let b_matched = b.iter().zip(&b_used).filter_map(|(c, &u)| u.then_some(c));
    let half_transpositions = a_matched
        .iter()
        .zip(b_matched)
        .filter(|(x, y)| x != y)
        .count();

    let cast = |n: usize| F::from(n).expect("count fits the float type");
    let m_f = cast(m);
    let t = cast(half_transpositions) / cast(2);
    (m_f / cast(a.len()) + m_f / cast(b.len()) + (m_f - t) / m_f) / cast(3)
}

/// Jaro similarity boosted by the common prefix (scale 0.1, at most 4 chars).
pub fn jaro_winkler<F: Float>(a: &str, b: &str) -> F {
    let sim = jaro::<F>(a, b);
    let prefix = a
        .chars()
        .zip(b.chars())
        .take(4)
        .take_while(|(x, y)| x == y)
        .count();
    let scale = F::from(0.1).expect("0.1 is representable");
    let l = F::from(prefix).expect("prefix fits the float type");
    sim + l * scale * (F::one() - sim)
}
