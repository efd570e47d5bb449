//! Permutations of `{1..n}` in one-line notation.
//!
//! Composition follows the function convention: `p.compose(&q)` maps
//! `k ↦ p(q(k))`. Left multiplication by a simple transposition `s_i`
//! swaps the *values* `i` and `i+1`; right multiplication swaps the
//! *positions* `i` and `i+1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::muinv::Composition;

/// A permutation stored as its one-line word with 1-based values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation { n, word });
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { n, word });
            }
            seen[v] = true;
        }
        Ok(Self {
            word: word.into_iter().map(|v| v as u8).collect(),
        })
    }

    /// Caller guarantees `word` is a rearrangement of `1..=word.len()`.
    pub(crate) fn from_bytes(word: Vec<u8>) -> Self {
        debug_assert!(Self::new(word.iter().map(|&v| v as usize).collect()).is_ok());
        Self { word }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_bytes((1..=n as u8).collect())
    }

    /// The longest element `w₀ = [n, n-1, …, 1]`.
    pub fn longest(n: usize) -> Self {
        Self::from_bytes((1..=n as u8).rev().collect())
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_generator(n, i)?;
        let mut p = Self::identity(n);
        p.word.swap(i - 1, i);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn bytes(&self) -> &[u8] {
        &self.word
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    /// Image of the 1-based point `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.word[k - 1] as usize
    }

    /// 1-based position of the value `v`, i.e. `p⁻¹(v)`.
    pub fn position(&self, v: usize) -> usize {
        self.word.iter().position(|&x| x as usize == v).unwrap() + 1
    }

    pub fn is_identity(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(k, &v)| v as usize == k + 1)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self::from_bytes(
            other
                .word
                .iter()
                .map(|&q| self.word[q as usize - 1])
                .collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (k, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (k + 1) as u8;
        }
        Self::from_bytes(inv)
    }

    /// `s_i ∘ self`: swaps the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        let (a, b) = (i as u8, i as u8 + 1);
        Self::from_bytes(
            self.word
                .iter()
                .map(|&v| {
                    if v == a {
                        b
                    } else if v == b {
                        a
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// `self ∘ s_i`: swaps the positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Self::from_bytes(word)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn excedance(&self) -> usize {
        self.word
            .iter()
            .enumerate()
            .filter(|&(k, &v)| v as usize > k + 1)
            .count()
    }

    pub fn is_involution(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(k, &v)| self.word[v as usize - 1] as usize == k + 1)
    }

    /// Rank of an involution in the reverse weak order on `I_n`:
    /// `(ℓ(p) + exc(p)) / 2`.
    pub fn involution_rank(&self) -> Result<usize> {
        if !self.is_involution() {
            return Err(Error::NotInvolution(self.to_string()));
        }
        let total = self.length() + self.excedance();
        debug_assert!(total.is_multiple_of(2));
        Ok(total / 2)
    }

    /// The 2-cycles `(a, b)` with `a < b`, ordered by `a`.
    pub fn two_cycles(&self) -> Vec<(usize, usize)> {
        self.word
            .iter()
            .enumerate()
            .filter(|&(k, &v)| v as usize > k + 1 && self.word[v as usize - 1] as usize == k + 1)
            .map(|(k, &v)| (k + 1, v as usize))
            .collect()
    }

    /// Builds an involution of size `n` from disjoint transpositions.
    pub fn from_two_cycles(n: usize, cycles: &[(usize, usize)]) -> Result<Permutation> {
        let mut word: Vec<usize> = (1..=n).collect();
        for &(a, b) in cycles {
            if a == 0 || b == 0 || a > n || b > n || a == b || word[a - 1] != a || word[b - 1] != b
            {
                return Err(Error::Parse(format!("bad cycle ({a},{b}) for n = {n}")));
            }
            word[a - 1] = b;
            word[b - 1] = a;
        }
        Permutation::new(word)
    }

    /// Indices `i` with `p(i) > p(i+1)`, i.e. `ℓ(p s_i) < ℓ(p)`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .collect()
    }

    /// Indices `i` with `p⁻¹(i) > p⁻¹(i+1)`, i.e. `ℓ(s_i p) < ℓ(p)`.
    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// Every reduced word, in lexicographic order.
    pub fn reduced_words(&self) -> Vec<ReducedWord> {
        let mut out = Vec::new();
        let mut suffix = Vec::with_capacity(self.length());
        collect_reduced_words(self, &mut suffix, &mut out);
        out.sort();
        out
    }

    /// Number of reduced words, without materializing them.
    pub fn count_reduced_words(&self) -> BigUint {
        let mut memo = HashMap::new();
        count_words_memo(self, &mut memo)
    }

    /// The lexicographically smallest reduced word.
    pub fn lex_min_reduced_word(&self) -> ReducedWord {
        let mut letters = Vec::with_capacity(self.length());
        let mut rest = self.clone();
        while let Some(&i) = rest.left_descents().first() {
            letters.push(i);
            rest = rest.left_mul_simple(i);
        }
        ReducedWord(letters)
    }

    /// Splits `self = u ∘ v` with `u ∈ S_μ` (stabilizing every value block of
    /// `μ`) and `v` the minimal-length representative of the coset `S_μ·self`.
    pub fn coset_decompose(&self, mu: &Composition) -> Result<(Permutation, Permutation)> {
        if mu.n() != self.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: mu.n(),
            });
        }
        let mut v = self.word.clone();
        for block in mu.blocks() {
            let (lo, hi) = (block.start as u8 + 1, block.end as u8);
            let positions: Vec<usize> =
                (0..v.len()).filter(|&k| v[k] >= lo && v[k] <= hi).collect();
            for (value, &pos) in (lo..=hi).zip(&positions) {
                v[pos] = value;
            }
        }
        let v = Self::from_bytes(v);
        let u = self.compose(&v.inverse())?;
        Ok((u, v))
    }

    /// Whether `self` lies in the parabolic subgroup `S_μ`.
    pub fn in_parabolic(&self, mu: &Composition) -> bool {
        mu.n() == self.len()
            && mu.blocks().all(|b| {
                (b.start..b.end).all(|k| {
                    let v = self.word[k] as usize - 1;
                    v >= b.start && v < b.end
                })
            })
    }

    /// Bruhat order by the rank-matrix dominance criterion.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        let n = self.len();
        if n != other.len() {
            return Err(Error::SizeMismatch {
                left: n,
                right: other.len(),
            });
        }
        // r[j] = #{a ≤ i : w(a) ≥ j}, updated row by row.
        let mut rp = vec![0usize; n + 2];
        let mut rq = vec![0usize; n + 2];
        for i in 0..n {
            let (a, b) = (self.word[i] as usize, other.word[i] as usize);
            rp[1..=a].iter_mut().for_each(|r| *r += 1);
            rq[1..=b].iter_mut().for_each(|r| *r += 1);
            if (1..=n).any(|j| rp[j] > rq[j]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((1..=n as u8).collect::<Vec<u8>>());
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut w = current.clone();
            if next_lex(&mut w) {
                next = Some(w);
            }
            Some(Permutation::from_bytes(current))
        })
    }
}

fn next_lex(w: &mut [u8]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

fn collect_reduced_words(p: &Permutation, suffix: &mut Vec<usize>, out: &mut Vec<ReducedWord>) {
    let descents = p.right_descents();
    if descents.is_empty() {
        out.push(ReducedWord(suffix.iter().rev().copied().collect()));
        return;
    }
    for i in descents {
        suffix.push(i);
        collect_reduced_words(&p.right_mul_simple(i), suffix, out);
        suffix.pop();
    }
}

fn count_words_memo(p: &Permutation, memo: &mut HashMap<Vec<u8>, BigUint>) -> BigUint {
    if let Some(c) = memo.get(&p.word) {
        return c.clone();
    }
    let descents = p.right_descents();
    let count = if descents.is_empty() {
        BigUint::one()
    } else {
        descents.into_iter().fold(BigUint::zero(), |acc, i| {
            acc + count_words_memo(&p.right_mul_simple(i), memo)
        })
    };
    memo.insert(p.word.clone(), count.clone());
    count
}

pub(crate) fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::GeneratorOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// Writes a value sequence as a digit string when every value is a single
/// digit, comma-separated otherwise.
pub(crate) fn write_values(f: &mut fmt::Formatter<'_>, values: &[u8], n: usize) -> fmt::Result {
    let sep = if n <= 9 { "" } else { "," };
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses one run of values: `"3421"` (single digits) or `"10,3,4"`.
pub(crate) fn parse_values(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect()
    } else {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("unexpected character {c:?}")))
            })
            .collect()
    }
}

pub(crate) fn strip_brackets(s: &str) -> &str {
    let s = s.trim();
    let s = s.strip_prefix('[').unwrap_or(s);
    s.strip_suffix(']').unwrap_or(s).trim()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.word, self.len())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_values(strip_brackets(s))?)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.to_vec()
    }
}

/// A word in the simple transpositions, read as the product
/// `s_{i_1} s_{i_2} ⋯ s_{i_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplies the letters out left to right, starting from the identity.
    pub fn evaluate(&self, n: usize) -> Result<Permutation> {
        let mut p = Permutation::identity(n);
        for &i in &self.0 {
            check_generator(n, i)?;
            p = p.right_mul_simple(i);
        }
        Ok(p)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{i}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("213").compose(&p("132")).unwrap(), p("231"));
        let q = p("3142");
        assert_eq!(Permutation::identity(4).compose(&q).unwrap(), q);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
        assert!(matches!(
            p("12").compose(&p("123")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn length_and_excedance() {
        assert_eq!(p("1234").length(), 0);
        assert_eq!(p("3421").length(), 5);
        assert_eq!(Permutation::longest(7).length(), 21);
        assert_eq!(Permutation::identity(5).excedance(), 0);
        assert_eq!(p("21").excedance(), 1);
        assert_eq!(p("54321").excedance(), 2);
    }

    #[test]
    fn involution_rank_examples() {
        assert_eq!(Permutation::identity(6).involution_rank().unwrap(), 0);
        assert_eq!(p("54321").involution_rank().unwrap(), 6);
        assert_eq!(p("321").involution_rank().unwrap(), 2);
        assert!(matches!(
            p("231").involution_rank(),
            Err(Error::NotInvolution(_))
        ));
    }

    #[test]
    fn reduced_word_examples() {
        assert_eq!(
            Permutation::identity(3).reduced_words(),
            vec![ReducedWord(vec![])]
        );
        assert_eq!(p("213").reduced_words(), vec![ReducedWord(vec![1])]);
        let total = p("3421").count_reduced_words() + p("4231").count_reduced_words();
        assert_eq!(total, BigUint::from(11u32));
        assert_eq!(
            p("3421").reduced_words().len() + p("4231").reduced_words().len(),
            11
        );
        for w in p("4231").reduced_words() {
            assert_eq!(w.evaluate(4).unwrap(), p("4231"));
        }
        // w₀ in S_4 has 16 reduced words.
        assert_eq!(
            Permutation::longest(4).count_reduced_words(),
            BigUint::from(16u32)
        );
    }

    #[test]
    fn lex_min_word_is_reduced() {
        for w in Permutation::all(5) {
            let word = w.lex_min_reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(word.evaluate(5).unwrap(), w);
            assert_eq!(Some(&word), w.reduced_words().first());
        }
    }

    #[test]
    fn coset_examples() {
        let mu = Composition::new(vec![3, 1]).unwrap();
        let (u, v) = Permutation::identity(4).coset_decompose(&mu).unwrap();
        assert!(u.is_identity() && v.is_identity());

        let (u, v) = p("4321").coset_decompose(&mu).unwrap();
        assert_eq!(v.length(), 3);
        assert_eq!(v, p("4123"));
        assert!(u.in_parabolic(&mu));
        assert_eq!(u.compose(&v).unwrap(), p("4321"));

        let inside = p("3214");
        let (u, v) = inside.coset_decompose(&mu).unwrap();
        assert_eq!(u, inside);
        assert!(v.is_identity());
    }

    #[test]
    fn bruhat_examples() {
        assert!(Permutation::identity(4).bruhat_leq(&p("2413")).unwrap());
        assert!(p("2134").bruhat_leq(&p("3214")).unwrap());
        assert!(!p("21").bruhat_leq(&p("12")).unwrap());
        assert!(!p("231").bruhat_leq(&p("312")).unwrap());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("[3421]").to_vec(), vec![3, 4, 2, 1]);
        let big: Permutation = "10,2,3,4,5,6,7,8,9,1".parse().unwrap();
        assert_eq!(big.to_string(), "10,2,3,4,5,6,7,8,9,1");
        assert_eq!(big.length(), 17);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12x".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().unwrap().is_empty());
    }

    #[test]
    fn generator_bounds() {
        assert!(Permutation::simple(4, 0).is_err());
        assert!(Permutation::simple(4, 4).is_err());
        assert_eq!(Permutation::simple(4, 2).unwrap(), p("1324"));
    }

    #[test]
    fn all_enumerates_factorial() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(5).count(), 120);
        let v: Vec<_> = Permutation::all(3).collect();
        assert_eq!(v.first().unwrap(), &p("123"));
        assert_eq!(v.last().unwrap(), &p("321"));
    }
}
