//! The three permutation families behind the symmetry conditions:
//! (i,j)-shuffles, k-monotone permutations, and block shuffles with
//! ordered leading terms.
//!
//! A permutation is kept as its image sequence (s(1), ..., s(n)), read
//! as "which argument goes in each slot": the fixed convention
//! throughout is (s . sigma)(a_1, ..., a_n) = s(a_{sigma(1)}, ..., a_{sigma(n)}).
//! Values are 1-based in display and 0-based in storage.

use std::fmt;

/// A permutation of {1, ..., n}, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From 0-based images; panics unless it is a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v < n && !seen[v], "not a permutation");
            seen[v] = true;
        }
        Permutation { images }
    }

    /// From the 1-based sequence notation used in displays.
    pub fn from_one_based(seq: &[usize]) -> Self {
        Self::from_images(seq.iter().map(|&v| v - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based image of 0-based slot `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Parity sign via inversion count.
    pub fn sign(&self) -> i64 {
        let n = self.images.len();
        let mut inversions = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Apply to a tuple: out[i] = tuple[sigma(i)].
    pub fn apply<T: Clone>(&self, tuple: &[T]) -> Vec<T> {
        assert_eq!(tuple.len(), self.images.len());
        self.images.iter().map(|&i| tuple[i].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.len() <= 9 {
            for &v in &self.images {
                write!(f, "{}", v + 1)?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.images.iter().map(|&v| (v + 1).to_string()).collect();
            write!(f, "({})", strs.join(","))
        }
    }
}

/// All (i,j)-shuffles: permutations of {1..i+j} whose sequences keep
/// 1..i and i+1..i+j in increasing relative order. Lexicographic in the
/// image sequence; there are binomial(i+j, i) of them.
pub fn shuffles(i: usize, j: usize) -> Vec<Permutation> {
    assert!(i >= 1 && j >= 1);
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(i + j);
    gen_shuffles(i, j, 0, 0, &mut seq, &mut out);
    out.sort();
    out
}

fn gen_shuffles(
    i: usize,
    j: usize,
    used_a: usize,
    used_b: usize,
    seq: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if used_a == i && used_b == j {
        out.push(Permutation { images: seq.clone() });
        return;
    }
    if used_a < i {
        seq.push(used_a);
        gen_shuffles(i, j, used_a + 1, used_b, seq, out);
        seq.pop();
    }
    if used_b < j {
        seq.push(i + used_b);
        gen_shuffles(i, j, used_a, used_b + 1, seq, out);
        seq.pop();
    }
}

/// Predicate form of the shuffle condition, used as an independent check.
pub fn is_shuffle(p: &Permutation, i: usize) -> bool {
    let pos_of = |v: usize| p.images.iter().position(|&x| x == v).unwrap();
    let increasing = |lo: usize, hi: usize| (lo..hi).all(|v| v + 1 >= hi || pos_of(v) < pos_of(v + 1));
    increasing(0, i) && increasing(i, p.len())
}

/// k-monotone permutations of {1..n}: the sequence starts with k, the
/// values 1..k occur in decreasing order and k+1..n in increasing order.
/// Returned with dr = the sum of the (1-based) positions of 1..k-1.
/// Lexicographic order; there are binomial(n-1, k-1) of them.
pub fn monotone(k: usize, n: usize) -> Vec<(Permutation, i64)> {
    assert!(k >= 1 && k <= n);
    // slots 2..n receive a merge of (k-1, ..., 1) and (k+1, ..., n)
    let mut out = Vec::new();
    let mut seq = vec![k - 1];
    gen_monotone(k, n, 0, 0, &mut seq, &mut out);
    out.sort();
    out.into_iter()
        .map(|p| {
            let dr: i64 = p
                .images
                .iter()
                .enumerate()
                .filter(|(_, &v)| v < k - 1)
                .map(|(pos, _)| (pos + 1) as i64)
                .sum();
            (p, dr)
        })
        .collect()
}

fn gen_monotone(
    k: usize,
    n: usize,
    used_dec: usize,
    used_inc: usize,
    seq: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if used_dec == k - 1 && used_inc == n - k {
        out.push(Permutation { images: seq.clone() });
        return;
    }
    if used_dec < k - 1 {
        seq.push(k - 2 - used_dec);
        gen_monotone(k, n, used_dec + 1, used_inc, seq, out);
        seq.pop();
    }
    if used_inc < n - k {
        seq.push(k + used_inc);
        gen_monotone(k, n, used_dec, used_inc + 1, seq, out);
        seq.pop();
    }
}

/// Predicate form of the k-monotone condition.
pub fn is_monotone(p: &Permutation, k: usize) -> bool {
    if p.images[0] != k - 1 {
        return false;
    }
    let pos_of = |v: usize| p.images.iter().position(|&x| x == v).unwrap();
    let dec = (0..k - 1).all(|v| pos_of(v + 1) < pos_of(v));
    let inc = (k..p.len()).all(|v| v + 1 >= p.len() || pos_of(v) < pos_of(v + 1));
    dec && inc
}

/// Shuffles of {1..k*n} split into k consecutive blocks of size n.
/// With `ordered_leading = true`, keeps only those where the first
/// elements of the k blocks occur in order (the divided-power family).
pub fn block_shuffles(k: usize, n: usize, ordered_leading: bool) -> Vec<Permutation> {
    assert!(k >= 1 && n >= 1);
    let mut out = Vec::new();
    let mut used = vec![0usize; k];
    let mut seq = Vec::with_capacity(k * n);
    gen_blocks(k, n, &mut used, &mut seq, &mut out);
    if ordered_leading {
        out.retain(|p| {
            let pos_of =
                |v: usize| p.images.iter().position(|&x| x == v).unwrap();
            (0..k - 1).all(|b| pos_of(b * n) < pos_of((b + 1) * n))
        });
    }
    out.sort();
    out
}

fn gen_blocks(
    k: usize,
    n: usize,
    used: &mut Vec<usize>,
    seq: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if seq.len() == k * n {
        out.push(Permutation { images: seq.clone() });
        return;
    }
    for b in 0..k {
        if used[b] < n {
            seq.push(b * n + used[b]);
            used[b] += 1;
            gen_blocks(k, n, used, seq, out);
            used[b] -= 1;
            seq.pop();
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force enumeration of all permutations of {0..n-1}.
    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation::from_images(cur.clone()));
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    #[test]
    fn shuffle_smallest_cases() {
        let s = shuffles(1, 1);
        let strs: Vec<String> = s.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["12", "21"]);

        let s = shuffles(1, 2);
        let strs: Vec<String> = s.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["123", "213", "231"]);

        assert_eq!(shuffles(2, 2).len(), 6);
    }

    #[test]
    fn shuffles_match_exhaustive_filter() {
        for n in 2..=6 {
            for i in 1..n {
                let j = n - i;
                let fast = shuffles(i, j);
                let slow: Vec<Permutation> =
                    all_perms(n).into_iter().filter(|p| is_shuffle(p, i)).collect();
                assert_eq!(fast, slow, "shuffles({i},{j})");
                assert_eq!(fast.len(), binomial(n, i));
            }
        }
    }

    #[test]
    fn monotone_golden_4_of_6() {
        let got: Vec<String> = monotone(4, 6).iter().map(|(p, _)| p.to_string()).collect();
        let expected = vec![
            "432156", "432516", "432561", "435216", "435261", "435621", "453216", "453261",
            "453621", "456321",
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn monotone_n_of_n_is_reversal() {
        for n in 1..=7 {
            let m = monotone(n, n);
            assert_eq!(m.len(), 1);
            let expected: Vec<usize> = (0..n).rev().collect();
            assert_eq!(m[0].0.images(), &expected[..]);
        }
    }

    #[test]
    fn monotone_2_of_4_with_dr() {
        let m = monotone(2, 4);
        let got: Vec<(String, i64)> = m.iter().map(|(p, dr)| (p.to_string(), *dr)).collect();
        assert_eq!(
            got,
            vec![("2134".into(), 2), ("2314".into(), 3), ("2341".into(), 4)]
        );
    }

    #[test]
    fn monotone_counts_and_partition() {
        for n in 1..=8 {
            let mut total = 0;
            for k in 1..=n {
                let m = monotone(k, n);
                assert_eq!(m.len(), binomial(n - 1, k - 1), "monotone({k},{n})");
                total += m.len();
            }
            assert_eq!(total, 1 << (n - 1));
        }
        // each returned permutation passes the predicate (independent check)
        for n in 2..=6 {
            for k in 1..=n {
                let from_filter: Vec<Permutation> =
                    all_perms(n).into_iter().filter(|p| is_monotone(p, k)).collect();
                let fast: Vec<Permutation> = monotone(k, n).into_iter().map(|(p, _)| p).collect();
                assert_eq!(fast, from_filter);
            }
        }
    }

    #[test]
    fn block_shuffle_counts() {
        // blocks of size 1: leading-term order forces the identity
        assert_eq!(block_shuffles(2, 1, true).len(), 1);
        assert_eq!(block_shuffles(2, 1, true)[0], Permutation::identity(2));
        // unrestricted (2,2): all 6 shuffles
        assert_eq!(block_shuffles(2, 2, false).len(), 6);
        // ordered leading terms: 3 of them
        assert_eq!(block_shuffles(2, 2, true).len(), 3);
        // ordered subset = unrestricted filtered by the leading-term predicate
        let all = block_shuffles(2, 2, false);
        let filtered: Vec<&Permutation> = all
            .iter()
            .filter(|p| {
                let pos_of = |v: usize| p.images().iter().position(|&x| x == v).unwrap();
                pos_of(0) < pos_of(2)
            })
            .collect();
        let ordered = block_shuffles(2, 2, true);
        assert_eq!(filtered.len(), ordered.len());
        for (a, b) in filtered.iter().zip(&ordered) {
            assert_eq!(**a, *b);
        }
    }

    #[test]
    fn block_shuffles_agree_with_two_block_shuffles() {
        // k = 2 blocks of size n are exactly the (n,n)-shuffles
        for n in 1..=3 {
            let a = block_shuffles(2, n, false);
            let b = shuffles(n, n);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(Permutation::from_one_based(&[2, 1]).sign(), -1);
        assert_eq!(Permutation::from_one_based(&[4, 3, 2, 1]).sign(), 1);
    }

    #[test]
    fn sign_is_multiplicative() {
        for p in all_perms(4) {
            for q in all_perms(4) {
                let composed = Permutation::from_images(p.apply(q.images()));
                assert_eq!(composed.sign(), p.sign() * q.sign());
            }
        }
    }
}
