//! Formal integer combinations of bar words, the shuffle product, and
//! the divided powers gamma_k on even-length words.
//!
//! Letters are interned ids so the same engine expands universal
//! identities on abstract letters and evaluates symmetry conditions on
//! concrete monoid elements.

use crate::error::{Error, Result};
use crate::perms::{block_shuffles, shuffles};
use std::collections::BTreeMap;
use std::fmt;

pub type Letter = u32;

/// A basis tensor [a_1 | ... | a_n].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord {
    letters: Vec<Letter>,
}

impl BarWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BarWord { letters }
    }

    pub fn empty() -> Self {
        BarWord { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn concat(&self, other: &BarWord) -> BarWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BarWord { letters }
    }

    /// Repeat the word k times.
    pub fn repeated(&self, k: usize) -> BarWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BarWord { letters }
    }

    pub fn has_consecutive_repeat(&self) -> bool {
        self.letters.windows(2).any(|w| w[0] == w[1])
    }

    /// Render with a naming function, e.g. `[a|b|a|b]`.
    pub fn display_with(&self, name: impl Fn(Letter) -> String) -> String {
        let parts: Vec<String> = self.letters.iter().map(|&l| name(l)).collect();
        format!("[{}]", parts.join("|"))
    }
}

impl fmt::Display for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|l| l.to_string()))
    }
}

/// An integer combination of equal-length bar words. Zero coefficients
/// are never stored; term order is lexicographic for reproducibility.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<BarWord, i64>,
}

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn single(word: BarWord, coeff: i64) -> Self {
        let mut s = WordSum::zero();
        s.add_term(word, coeff);
        s
    }

    pub fn add_term(&mut self, word: BarWord, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if let Some(w) = self.terms.first_key_value().map(|(w, _)| w.len()) {
            assert_eq!(w, word.len(), "mixed word lengths in a WordSum");
        }
        let entry = self.terms.entry(word).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, other: &WordSum) -> WordSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> WordSum {
        let mut out = WordSum::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, word: &BarWord) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    /// Substitute letters and re-collect (repeated images may merge terms).
    pub fn substitute(&self, map: impl Fn(Letter) -> Letter) -> WordSum {
        let mut out = WordSum::zero();
        for (w, c) in &self.terms {
            let word = BarWord::new(w.letters.iter().map(|&l| map(l)).collect());
            out.add_term(word, *c);
        }
        out
    }

    pub fn display_with(&self, name: impl Fn(Letter) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if *c < 0 {
                    s.push_str("- ");
                }
            } else if *c < 0 {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            if mag != 1 {
                s.push_str(&mag.to_string());
            }
            s.push_str(&w.display_with(&name));
        }
        s
    }
}

/// Signed shuffle product: the sum over (|u|,|v|)-shuffles of the
/// interleavings of u and v, each with the sign of the shuffle.
pub fn shuffle_product(u: &BarWord, v: &BarWord) -> WordSum {
    if u.is_empty() {
        return WordSum::single(v.clone(), 1);
    }
    if v.is_empty() {
        return WordSum::single(u.clone(), 1);
    }
    let w = u.concat(v);
    let mut out = WordSum::zero();
    for sigma in shuffles(u.len(), v.len()) {
        let word = BarWord::new(sigma.apply(w.letters()));
        out.add_term(word, sigma.sign());
    }
    out
}

/// Divided power gamma_k of an even-length word: the signed sum over
/// block shuffles of the k-fold repetition whose k leading terms occur
/// in order, with like terms collected.
pub fn gamma(k: usize, word: &BarWord) -> Result<WordSum> {
    let n = word.len();
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    assert!(k >= 1);
    if k == 1 {
        return Ok(WordSum::single(word.clone(), 1));
    }
    let repeated = word.repeated(k);
    let mut out = WordSum::zero();
    for sigma in block_shuffles(k, n, true) {
        let term = BarWord::new(sigma.apply(repeated.letters()));
        out.add_term(term, sigma.sign());
    }
    Ok(out)
}

/// Spanning set of the degree-n shuffle decomposables over a finite
/// alphabet: all products u * v with |u| + |v| = n and |u|, |v| >= 1,
/// zero sums pruned.
pub fn decomposable_span_basis(alphabet: &[Letter], n: usize) -> Vec<WordSum> {
    let mut out = Vec::new();
    for i in 1..n {
        let j = n - i;
        if i > j {
            break; // graded commutativity makes (j,i) redundant
        }
        for u in words_over(alphabet, i) {
            for v in words_over(alphabet, j) {
                let p = shuffle_product(&u, &v);
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// All words of a given length over an alphabet, lexicographic.
pub fn words_over(alphabet: &[Letter], n: usize) -> Vec<BarWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(alphabet: &[Letter], n: usize, cur: &mut Vec<Letter>, out: &mut Vec<BarWord>) {
        if cur.len() == n {
            out.push(BarWord::new(cur.clone()));
            return;
        }
        for &a in alphabet {
            cur.push(a);
            rec(alphabet, n, cur, out);
            cur.pop();
        }
    }
    rec(alphabet, n, &mut cur, &mut out);
    out
}

/// Intern table for human-readable letter names in the CLI.
#[derive(Default, Debug, Clone)]
pub struct Interner {
    names: Vec<String>,
}

impl Interner {
    pub fn intern(&mut self, name: &str) -> Letter {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return i as Letter;
        }
        self.names.push(name.to_string());
        (self.names.len() - 1) as Letter
    }

    pub fn name(&self, l: Letter) -> String {
        self.names.get(l as usize).cloned().unwrap_or_else(|| l.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Letter]) -> BarWord {
        BarWord::new(letters.to_vec())
    }

    const A: Letter = 0;
    const B: Letter = 1;
    const C: Letter = 2;
    const D: Letter = 3;

    fn name(l: Letter) -> String {
        ["a", "b", "c", "d", "e", "f"][l as usize].to_string()
    }

    #[test]
    fn shuffle_product_examples() {
        // [a].[b] = [a|b] - [b|a]
        let p = shuffle_product(&w(&[A]), &w(&[B]));
        assert_eq!(p.display_with(name), "[a|b] - [b|a]");

        // [a].[b|c] = [a|b|c] - [b|a|c] + [b|c|a]
        let p = shuffle_product(&w(&[A]), &w(&[B, C]));
        assert_eq!(p.coeff(&w(&[A, B, C])), 1);
        assert_eq!(p.coeff(&w(&[B, A, C])), -1);
        assert_eq!(p.coeff(&w(&[B, C, A])), 1);
        assert_eq!(p.len(), 3);

        // empty unit
        let p = shuffle_product(&BarWord::empty(), &w(&[B, C]));
        assert_eq!(p, WordSum::single(w(&[B, C]), 1));
    }

    #[test]
    fn shuffle_product_graded_commutativity() {
        // u.v = (-1)^{|u||v|} v.u, exhaustively for short words over {a,b}
        let alphabet = [A, B];
        for lu in 1..=3usize {
            for lv in 1..=3usize {
                let sign = if lu * lv % 2 == 0 { 1 } else { -1 };
                for u in words_over(&alphabet, lu) {
                    for v in words_over(&alphabet, lv) {
                        let uv = shuffle_product(&u, &v);
                        let vu = shuffle_product(&v, &u);
                        assert_eq!(uv, vu.scale(sign), "u={u} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_of_pairs_is_repetition() {
        for k in 1..=4 {
            let g = gamma(k, &w(&[A, B])).unwrap();
            assert_eq!(g, WordSum::single(w(&[A, B]).repeated(k), 1), "k={k}");
        }
    }

    #[test]
    fn gamma_two_of_four_letters_exact() {
        let g = gamma(2, &w(&[A, B, C, D])).unwrap();
        let expected = [
            (vec![A, B, C, D, A, B, C, D], 1),
            (vec![A, B, C, A, D, B, C, D], -1),
            (vec![A, B, C, A, B, D, C, D], 1),
            (vec![A, B, A, C, D, B, C, D], 1),
            (vec![A, B, A, C, B, D, C, D], -1),
            (vec![A, B, A, B, C, D, C, D], 2),
        ];
        assert_eq!(g.len(), expected.len());
        for (letters, coeff) in expected {
            assert_eq!(g.coeff(&w(&letters)), coeff, "term {:?}", letters);
        }
    }

    #[test]
    fn gamma_three_of_four_letters_shape() {
        let g = gamma(3, &w(&[A, B, C, D])).unwrap();
        assert_eq!(g.len(), 53);
        let min = g.terms().map(|(_, c)| c).min().unwrap();
        let max = g.terms().map(|(_, c)| c).max().unwrap();
        assert_eq!(min, -4);
        assert_eq!(max, 6);
    }

    #[test]
    fn gamma_rejects_odd_length() {
        match gamma(2, &w(&[A, B, C])) {
            Err(Error::OddLength(3)) => {}
            other => panic!("expected OddLength, got {other:?}"),
        }
    }

    #[test]
    fn gamma_terms_have_no_consecutive_repeats() {
        for n in [2usize, 4] {
            let word = BarWord::new((0..n as Letter).collect());
            for k in 1..=3 {
                let g = gamma(k, &word).unwrap();
                for (term, c) in g.terms() {
                    assert_ne!(c, 0);
                    assert!(
                        !term.has_consecutive_repeat(),
                        "gamma({k}) term {term} repeats a letter"
                    );
                }
            }
        }
    }

    #[test]
    fn gamma_terms_lead_with_first_letter() {
        for (k, n) in [(2usize, 2usize), (3, 2), (2, 4), (3, 4)] {
            let word = BarWord::new((0..n as Letter).collect());
            let g = gamma(k, &word).unwrap();
            for (term, _) in g.terms() {
                assert_eq!(term.letters()[0], word.letters()[0]);
            }
        }
    }

    #[test]
    fn factorial_gamma_is_decomposable() {
        // k! gamma_k(w) lies in the span of shuffle products, by exact solve
        use crate::linalg::{field_solve, Rationals, Ring, SparseMat};
        let q = Rationals;
        let cases: Vec<(usize, BarWord)> = vec![
            (2, w(&[A, B])),
            (3, w(&[A, B])),
            (2, w(&[A, B, C, D])),
        ];
        for (k, word) in cases {
            let n = word.len() * k;
            let alphabet: Vec<Letter> = word.letters().to_vec();
            let spanning = decomposable_span_basis(&alphabet, n);
            assert!(!spanning.is_empty());
            // column space: all words of length n over the alphabet
            let all_words = words_over(&alphabet, n);
            let index: std::collections::BTreeMap<&BarWord, usize> =
                all_words.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut triplets = Vec::new();
            for (j, p) in spanning.iter().enumerate() {
                for (term, c) in p.terms() {
                    triplets.push((index[term], j, q.from_i64(c)));
                }
            }
            let a = SparseMat::from_triplets(&q, all_words.len(), spanning.len(), triplets);
            let target = gamma(k, &word).unwrap().scale((1..=k as i64).product());
            let mut b_triplets = Vec::new();
            for (term, c) in target.terms() {
                b_triplets.push((index[term], 0, q.from_i64(c)));
            }
            let b = SparseMat::from_triplets(&q, all_words.len(), 1, b_triplets);
            assert!(
                field_solve(&q, &a, &b).is_some(),
                "{k}! gamma_{k}({word}) not in the decomposable span"
            );
        }
    }

    #[test]
    fn decomposable_span_examples() {
        // n = 1: no splits
        assert!(decomposable_span_basis(&[A], 1).is_empty());
        // one letter, n = 2: [a].[a] = [a|a] - [a|a] = 0, pruned
        assert!(decomposable_span_basis(&[A], 2).is_empty());
        // two letters, n = 2: contains [a|b] - [b|a]
        let span = decomposable_span_basis(&[A, B], 2);
        let target = shuffle_product(&w(&[A]), &w(&[B]));
        assert!(span.contains(&target));
    }
}
