mod common;

use acrostego::steganalysis::{kl_divergence, Distribution};
use acrostego::textstream::scan;
use acrostego::{
    capacity, embed_baseline, hamming_distance, levenshtein, load_lexicon, tokenize, BitMessage,
    Divergence, Hamming, Lexicon, MessageLength, Scheme, StegoKey, SwapMask,
};
use common::{CoverGen, FormPolicy};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn lex() -> &'static Lexicon {
    use std::sync::OnceLock;
    static LEX: OnceLock<Lexicon> = OnceLock::new();
    LEX.get_or_init(Lexicon::bundled)
}

fn naive_lev(a: &[char], b: &[char]) -> usize {
    match (a.split_last(), b.split_last()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => (naive_lev(ra, rb) + usize::from(x != y))
            .min(naive_lev(ra, b) + 1)
            .min(naive_lev(a, rb) + 1),
    }
}

fn flip_all(text: &str, mask: &[bool]) -> String {
    let carriers = scan(text, lex());
    let mut out = String::new();
    let mut last = 0;
    for c in &carriers {
        out.push_str(&text[last..c.byte_span.start]);
        let form = if mask[c.ordinal % mask.len()] {
            c.form.flipped()
        } else {
            c.form
        };
        out.push_str(lex().entries()[c.entry_id].form_text(form));
        last = c.byte_span.end;
    }
    out.push_str(&text[last..]);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tokenize_is_lossless(s in "\\PC{0,80}") {
        let joined: String = tokenize(&s).iter().map(|t| t.text).collect();
        prop_assert_eq!(joined, s.clone());
        let toks = lex().tokenize(&s);
        prop_assert_eq!(toks.iter().map(|t| t.text).collect::<String>(), s);
    }

    #[test]
    fn scan_is_flip_stable(seed in any::<u64>(), n in 0usize..40, mask in prop::collection::vec(any::<bool>(), 1..8)) {
        let gen = CoverGen::new(lex());
        let g = gen.generate(&mut ChaCha20Rng::seed_from_u64(seed), n, FormPolicy::Mixed);
        let flipped = flip_all(&g.text, &mask);
        let before: Vec<usize> = scan(&g.text, lex()).iter().map(|c| c.entry_id).collect();
        let after: Vec<usize> = scan(&flipped, lex()).iter().map(|c| c.entry_id).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn round_trip_any_scheme(seed in any::<u64>(), n in 1usize..50, key in any::<[u8; 32]>(), bits in prop::collection::vec(any::<bool>(), 0..50), keyed in any::<bool>()) {
        let gen = CoverGen::new(lex());
        let cover = gen.generate(&mut ChaCha20Rng::seed_from_u64(seed), n, FormPolicy::Mixed).text;
        let bits: Vec<bool> = bits.into_iter().take(n).collect();
        let scheme = if keyed { Scheme::Enhanced(StegoKey::from_bytes(key)) } else { Scheme::Baseline };
        let stego = scheme.embed(&cover, lex(), &BitMessage::raw(bits.clone())).unwrap();
        prop_assert_eq!(scheme.extract(&stego, lex(), MessageLength::Exact(bits.len())).unwrap(), bits);
        prop_assert_eq!(capacity(&stego, lex()), n);
    }

    #[test]
    fn non_carrier_text_preserved(seed in any::<u64>(), n in 1usize..30, bits in prop::collection::vec(any::<bool>(), 30)) {
        let gen = CoverGen::new(lex());
        let cover = gen.generate(&mut ChaCha20Rng::seed_from_u64(seed), n, FormPolicy::Mixed).text;
        let stego = embed_baseline(&cover, lex(), &BitMessage::raw(bits[..n].to_vec())).unwrap();
        let gaps = |t: &str| {
            let cs = scan(t, lex());
            let mut out = Vec::new();
            let mut last = 0;
            for c in &cs {
                out.push(t[last..c.byte_span.start].to_owned());
                last = c.byte_span.end;
            }
            out.push(t[last..].to_owned());
            out
        };
        prop_assert_eq!(gaps(&cover), gaps(&stego));
    }

    #[test]
    fn capacity_monotone_under_line_append(a in any::<u64>(), b in any::<u64>(), n in 0usize..20, m in 0usize..20) {
        let gen = CoverGen::new(lex());
        let x = gen.generate(&mut ChaCha20Rng::seed_from_u64(a), n, FormPolicy::Mixed).text;
        let y = gen.generate(&mut ChaCha20Rng::seed_from_u64(b), m, FormPolicy::Mixed).text;
        let joined = format!("{x}\n{y}");
        prop_assert!(capacity(&joined, lex()) >= capacity(&x, lex()));
        prop_assert_eq!(capacity(&joined, lex()), n + m);
    }

    #[test]
    fn levenshtein_axioms(a in "\\PC{0,64}", b in "\\PC{0,64}", c in "\\PC{0,64}") {
        prop_assert_eq!(levenshtein(&a, &a), 0);
        prop_assert_eq!(levenshtein(&a, &b), levenshtein(&b, &a));
        prop_assert_eq!(levenshtein(&a, &b) == 0, a == b);
        prop_assert!(levenshtein(&a, &c) <= levenshtein(&a, &b) + levenshtein(&b, &c));
        let (la, lb) = (a.chars().count(), b.chars().count());
        prop_assert!(levenshtein(&a, &b) >= la.abs_diff(lb));
        prop_assert!(levenshtein(&a, &b) <= la.max(lb));
    }

    #[test]
    fn levenshtein_matches_recursion(a in "[ab\u{e9}]{0,7}", b in "[ab\u{e9}]{0,7}") {
        let (ca, cb): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
        prop_assert_eq!(levenshtein(&a, &b), naive_lev(&ca, &cb));
    }

    #[test]
    fn hamming_bounds_levenshtein(a in "[abc]{0,12}", b in "[abc]{0,12}") {
        match hamming_distance(&a, &b) {
            Hamming::Distance(h) => {
                prop_assert!(levenshtein(&a, &b) <= h);
                if h <= 1 {
                    prop_assert_eq!(levenshtein(&a, &b), h);
                }
            }
            Hamming::DifferentLengths => prop_assert_ne!(a.len(), b.len()),
        }
    }

    #[test]
    fn kl_is_nonnegative(p in prop::collection::vec(0.01f64..1.0, 1..8), q in prop::collection::vec(0.01f64..1.0, 8)) {
        let chars = "abcdefgh".chars();
        let dp = Distribution::from_weights(chars.clone().zip(p.iter().copied())).unwrap();
        let dq = Distribution::from_weights(chars.zip(q.iter().copied())).unwrap();
        match kl_divergence(&dp, &dq) {
            Divergence::Finite(v) => prop_assert!(v >= -1e-12),
            Divergence::Infinite => prop_assert!(false, "q covers p's support"),
        }
        prop_assert_eq!(kl_divergence(&dp, &dp), Divergence::Finite(0.0));
    }

    #[test]
    fn lexicon_load_is_deterministic(keep in prop::collection::vec(any::<bool>(), 95)) {
        let tsv = lex().to_tsv();
        let lines: Vec<&str> = tsv.lines().zip(keep.iter().cycle()).filter(|(_, k)| **k).map(|(l, _)| l).collect();
        let src = lines.join("\n");
        let a = load_lexicon(&src).unwrap();
        let b = load_lexicon(&src).unwrap();
        prop_assert_eq!(a.entries(), b.entries());
        let c = load_lexicon(&a.to_tsv()).unwrap();
        prop_assert_eq!(c.entries(), a.entries());
    }

    #[test]
    fn mask_xor_is_an_involution(k1 in any::<[u8; 32]>(), k2 in any::<[u8; 32]>(), n in 1usize..600) {
        let a = SwapMask::from_key(&StegoKey::from_bytes(k1), n);
        let b = SwapMask::from_key(&StegoKey::from_bytes(k2), n);
        prop_assert_eq!(a.xor(&b).xor(&b), a.clone());
        prop_assert_eq!(a.xor(&a), SwapMask::identity(n));
    }
}
