//! Compositions and μ-involutions.
//!
//! A μ-involution is a permutation cut into consecutive strings of lengths
//! `μ_1, …, μ_k`, where every string, read as a permutation of its own
//! alphabet (order-isomorphically), is an involution.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{parse_values, strip_brackets, write_values, Permutation};

/// An ordered sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Arc<[usize]>,
    // prefix[j] = ν_j, prefix[0] = 0
    prefix: Arc<[usize]>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidComposition(parts));
        }
        let mut prefix = Vec::with_capacity(parts.len() + 1);
        prefix.push(0);
        for &m in &parts {
            prefix.push(prefix.last().unwrap() + m);
        }
        Ok(Self {
            parts: parts.into(),
            prefix: prefix.into(),
        })
    }

    /// The one-part composition `(n)`.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `(1, 1, …, 1)` with `n` parts.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    /// Inverse of [`Composition::subset`]: `{ν_1, …, ν_{k-1}} ⊆ [n-1]`.
    pub fn from_subset(n: usize, subset: &[usize]) -> Result<Self> {
        let mut cuts: Vec<usize> = subset.to_vec();
        cuts.sort_unstable();
        cuts.dedup();
        if n == 0 || cuts.iter().any(|&c| c == 0 || c >= n) {
            return Err(Error::Parse(format!(
                "{subset:?} is not a subset of [{}]",
                n.saturating_sub(1)
            )));
        }
        let mut parts = Vec::with_capacity(cuts.len() + 1);
        let mut last = 0;
        for c in cuts.into_iter().chain(std::iter::once(n)) {
            parts.push(c - last);
            last = c;
        }
        Self::new(parts)
    }

    /// All `2^(n-1)` compositions of `n`, ordered by their cut subsets read as
    /// binary numbers.
    pub fn all(n: usize) -> Vec<Composition> {
        if n == 0 {
            return Vec::new();
        }
        (0u64..1 << (n - 1))
            .map(|mask| {
                let subset: Vec<usize> = (1..n).filter(|c| mask >> (c - 1) & 1 == 1).collect();
                Composition::from_subset(n, &subset).unwrap()
            })
            .collect()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.prefix[self.parts.len()]
    }

    /// Number of parts `k`.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// `ν_j = μ_1 + ⋯ + μ_j`.
    pub fn nu(&self, j: usize) -> usize {
        self.prefix[j]
    }

    /// The associated subset `{ν_1, …, ν_{k-1}}` of `[n-1]`.
    pub fn subset(&self) -> Vec<usize> {
        self.prefix[1..self.parts.len()].to_vec()
    }

    /// 0-based half-open position ranges of the strings. The same ranges,
    /// shifted by one, are the value blocks of the parabolic subgroup `S_μ`.
    pub fn blocks(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.prefix.windows(2).map(|w| w[0]..w[1])
    }

    /// Index of the string holding the 1-based position `pos`.
    pub fn string_of_position(&self, pos: usize) -> usize {
        self.prefix[1..].partition_point(|&nu| nu < pos)
    }

    /// `Σ ⌊μ_i / 2⌋`.
    pub fn half_floor_sum(&self) -> usize {
        self.parts.iter().map(|m| m / 2).sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("composition part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts.to_vec()
    }
}

/// Order-isomorphic image of a string of distinct values on `{1..len}`.
pub fn string_to_relative(values: &[usize]) -> Result<Permutation> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateValue(w[0]));
    }
    Ok(Permutation::from_bytes(relative_bytes(
        values.iter().copied(),
        &sorted,
    )))
}

fn relative_bytes(values: impl Iterator<Item = usize>, sorted: &[usize]) -> Vec<u8> {
    values
        .map(|v| sorted.binary_search(&v).unwrap() as u8 + 1)
        .collect()
}

/// Number of involutions in `S_m`.
pub fn involution_count(m: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for k in 2..=m {
        let next = &cur + &prev * BigUint::from(k - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// All involutions of `S_n`, in lexicographic order.
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn extend(word: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        let Some(first) = word.iter().position(|&v| v == 0) else {
            out.push(Permutation::from_bytes(word.clone()));
            return;
        };
        word[first] = first as u8 + 1;
        extend(word, out);
        for other in first + 1..word.len() {
            if word[other] == 0 {
                word[first] = other as u8 + 1;
                word[other] = first as u8 + 1;
                extend(word, out);
                word[other] = 0;
            }
        }
        word[first] = 0;
    }
    let mut out = Vec::new();
    extend(&mut vec![0; n], &mut out);
    out.sort();
    out
}

/// `|I_μ| = n! / (μ_1! ⋯ μ_k!) · Π #I_{μ_i}`.
pub fn count_mu_involutions(mu: &Composition) -> BigUint {
    let factorial = |m: usize| (1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
    let mut count = factorial(mu.n());
    for &m in mu.parts() {
        count /= factorial(m);
        count *= involution_count(m);
    }
    count
}

/// A permutation together with its μ-string structure; labels a B-orbit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MuInvolutionJson", into = "MuInvolutionJson")]
pub struct MuInvolution {
    mu: Composition,
    perm: Permutation,
}

#[derive(Serialize, Deserialize)]
struct MuInvolutionJson {
    mu: Vec<usize>,
    word: Vec<usize>,
}

impl TryFrom<MuInvolutionJson> for MuInvolution {
    type Error = Error;

    fn try_from(j: MuInvolutionJson) -> Result<Self> {
        MuInvolution::validate(Permutation::new(j.word)?, Composition::new(j.mu)?)
    }
}

impl From<MuInvolution> for MuInvolutionJson {
    fn from(pi: MuInvolution) -> Self {
        MuInvolutionJson {
            mu: pi.mu.parts().to_vec(),
            word: pi.perm.to_vec(),
        }
    }
}

impl MuInvolution {
    /// Checks that every μ-string is an involution in relative order.
    pub fn validate(perm: Permutation, mu: Composition) -> Result<Self> {
        if perm.len() != mu.n() {
            return Err(Error::SizeMismatch {
                left: perm.len(),
                right: mu.n(),
            });
        }
        let pi = Self { mu, perm };
        for (index, block) in pi.mu.blocks().enumerate() {
            if !pi.relative(index).is_involution() {
                let string = StringDisplay(&pi.perm.bytes()[block], pi.mu.n()).to_string();
                return Err(Error::InvalidString { index, string });
            }
        }
        Ok(pi)
    }

    /// Caller guarantees validity.
    pub(crate) fn from_parts(mu: Composition, perm: Permutation) -> Self {
        Self { mu, perm }
    }

    /// `e_μ`: the identity word cut by `μ`.
    pub fn identity(mu: &Composition) -> Self {
        Self {
            perm: Permutation::identity(mu.n()),
            mu: mu.clone(),
        }
    }

    /// `π_{0,μ}`: the i-th string carries the alphabet `{n-ν_i+1 .. n-ν_{i-1}}`
    /// in decreasing order.
    pub fn top(mu: &Composition) -> Self {
        Self {
            perm: Permutation::longest(mu.n()),
            mu: mu.clone(),
        }
    }

    pub fn mu(&self) -> &Composition {
        &self.mu
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.mu.n()
    }

    pub fn into_perm(self) -> Permutation {
        self.perm
    }

    /// The `index`-th (0-based) string of values.
    pub fn string(&self, index: usize) -> &[u8] {
        &self.perm.bytes()[self.mu.nu(index)..self.mu.nu(index + 1)]
    }

    pub fn strings(&self) -> Vec<Vec<usize>> {
        (0..self.mu.num_parts())
            .map(|i| self.string(i).iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// The `index`-th string as a permutation of `{1..μ_index}`.
    pub fn relative(&self, index: usize) -> Permutation {
        let s = self.string(index);
        let mut sorted: Vec<usize> = s.iter().map(|&v| v as usize).collect();
        sorted.sort_unstable();
        Permutation::from_bytes(relative_bytes(s.iter().map(|&v| v as usize), &sorted))
    }

    /// `ℓ_μ(π)`: the fewest inversions of `π` with its strings rearranged,
    /// plus `Σ (ℓ(α_i) + exc(α_i)) / 2` over the relative strings.
    ///
    /// The first term is `min_{w ∈ S_μ} ℓ(π ∘ w)`, the length of `π` with
    /// each string sorted. It equals `ℓ(v)` for the minimal representative
    /// `v` in the decomposition of `π⁻¹`. Minimizing `ℓ(w ∘ π)` instead is
    /// not a rank function: on `μ = (1,2)` it gives `[3|12]` rank 1, while
    /// that element sits two covers above `e_μ`.
    pub fn rank(&self) -> usize {
        let (_, v) = self.perm.inverse().coset_decompose(&self.mu).unwrap();
        v.length() + self.string_rank()
    }

    /// `π` with every string sorted increasingly.
    pub fn sorted_strings(&self) -> Permutation {
        let mut word = self.perm.bytes().to_vec();
        for block in self.mu.blocks() {
            word[block].sort_unstable();
        }
        Permutation::from_bytes(word)
    }

    /// The string part `Σ (ℓ(α_i) + exc(α_i)) / 2` of the rank.
    pub fn string_rank(&self) -> usize {
        (0..self.mu.num_parts())
            .map(|i| self.relative(i).involution_rank().unwrap())
            .sum()
    }

    /// Total number of 2-cycles across the relative string permutations.
    pub fn double_edge_count(&self) -> usize {
        (0..self.mu.num_parts())
            .map(|i| self.relative(i).excedance())
            .sum()
    }

    /// Bar-delimited text form, e.g. `26|8351|7|94`.
    pub fn bar_string(&self) -> String {
        self.to_string()
    }
}

struct StringDisplay<'a>(&'a [u8], usize);

impl fmt::Display for StringDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, self.0, self.1)
    }
}

impl fmt::Display for MuInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.mu.blocks().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write_values(f, &self.perm.bytes()[block], self.mu.n())?;
        }
        Ok(())
    }
}

impl fmt::Debug for MuInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for MuInvolution {
    type Err = Error;

    /// Parses `26|8351|7|94`, optionally bracketed; `μ` comes from the bars.
    /// Comma-free strings are read digit by digit; if that does not give a
    /// permutation, each comma-free string is read as a single number.
    fn from_str(s: &str) -> Result<Self> {
        let body = strip_brackets(s);
        if body.is_empty() {
            return Err(Error::Parse("empty μ-involution".into()));
        }
        let pieces: Vec<&str> = body.split('|').map(str::trim).collect();
        let read = |whole_numbers: bool| -> Result<(Vec<usize>, Vec<usize>)> {
            let mut word = Vec::new();
            let mut parts = Vec::new();
            for piece in &pieces {
                let values = if whole_numbers && !piece.contains(',') {
                    vec![piece
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{piece:?}: {e}")))?]
                } else {
                    parse_values(piece)?
                };
                parts.push(values.len());
                word.extend(values);
            }
            Ok((word, parts))
        };
        let (word, parts) = read(false)?;
        let (perm, mu) = match Permutation::new(word) {
            Ok(p) => (p, parts),
            Err(e) => {
                let (word, parts) = read(true).map_err(|_| e.clone())?;
                (Permutation::new(word).map_err(|_| e)?, parts)
            }
        };
        MuInvolution::validate(perm, Composition::new(mu)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn composition_basics() {
        let c = mu(&[2, 4, 1, 2]);
        assert_eq!(c.n(), 9);
        assert_eq!(c.subset(), vec![2, 6, 7]);
        assert_eq!(Composition::from_subset(9, &[7, 2, 6]).unwrap(), c);
        assert_eq!(c.string_of_position(1), 0);
        assert_eq!(c.string_of_position(3), 1);
        assert_eq!(c.string_of_position(7), 2);
        assert_eq!(c.string_of_position(9), 3);
        assert_eq!("3,1".parse::<Composition>().unwrap(), mu(&[3, 1]));
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![2, 0]).is_err());
        assert_eq!(Composition::all(7).len(), 64);
        assert_eq!(Composition::all(1), vec![mu(&[1])]);
    }

    #[test]
    fn validate_examples() {
        let pi: MuInvolution = "[26|8351|7|94]".parse().unwrap();
        assert_eq!(pi.mu(), &mu(&[2, 4, 1, 2]));
        assert_eq!(pi.relative(1).to_vec(), vec![4, 2, 3, 1]);

        assert!(MuInvolution::validate(Permutation::identity(5), mu(&[2, 3])).is_ok());

        let err = "231|4".parse::<MuInvolution>().unwrap_err();
        assert_eq!(
            err,
            Error::InvalidString {
                index: 0,
                string: "231".into()
            }
        );
    }

    #[test]
    fn relative_examples() {
        assert_eq!(
            string_to_relative(&[8, 3, 5, 1]).unwrap().to_vec(),
            vec![4, 2, 3, 1]
        );
        assert_eq!(
            string_to_relative(&[5, 2, 6, 4]).unwrap().to_vec(),
            vec![3, 1, 4, 2]
        );
        assert!(string_to_relative(&[2, 5, 7]).unwrap().is_identity());
        assert_eq!(
            string_to_relative(&[3, 1, 3]),
            Err(Error::DuplicateValue(3))
        );
    }

    #[test]
    fn distinguished_elements() {
        assert_eq!(MuInvolution::identity(&mu(&[3, 1])).to_string(), "123|4");
        assert_eq!(MuInvolution::top(&mu(&[4, 2])).to_string(), "6543|21");
        assert_eq!(MuInvolution::top(&mu(&[3, 1])).to_string(), "432|1");
        assert_eq!(MuInvolution::top(&mu(&[5])).to_string(), "54321");
        assert_eq!(MuInvolution::identity(&mu(&[1, 1, 1])).to_string(), "1|2|3");
    }

    #[test]
    fn rank_examples() {
        let m = mu(&[3, 1]);
        assert_eq!(MuInvolution::identity(&m).rank(), 0);
        assert_eq!(MuInvolution::top(&m).rank(), 5);
        for n in 1..=12 {
            let top = MuInvolution::top(&Composition::single(n).unwrap());
            assert_eq!(top.rank(), n * n / 4);
        }
    }

    #[test]
    fn rank_uses_sorted_strings() {
        let pi: MuInvolution = "3|12".parse().unwrap();
        assert_eq!(pi.rank(), 2);
        assert_eq!(pi.sorted_strings().length(), 2);
        let pi: MuInvolution = "2|31".parse().unwrap();
        assert_eq!(pi.rank(), 2);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_mu_involutions(&mu(&[5])), BigUint::from(26u32));
        assert_eq!(
            count_mu_involutions(&mu(&[1, 1, 1, 1, 1])),
            BigUint::from(120u32)
        );
        assert_eq!(count_mu_involutions(&mu(&[3, 1])), BigUint::from(16u32));
        assert_eq!(involutions(5).len(), 26);
        assert_eq!(involution_count(10), BigUint::from(9496u32));
    }

    #[test]
    fn double_edge_count_of_top() {
        for c in Composition::all(7) {
            assert_eq!(
                MuInvolution::top(&c).double_edge_count(),
                c.half_floor_sum()
            );
        }
    }

    #[test]
    fn wide_parse_and_display() {
        let pi: MuInvolution = "10|9|8|7|6|5|4|3|2|1".parse().unwrap();
        assert_eq!(pi.mu(), &Composition::ones(10).unwrap());
        assert_eq!(pi.to_string(), "10|9|8|7|6|5|4|3|2|1");
        let top = MuInvolution::top(&mu(&[4, 6]));
        let back: MuInvolution = top.to_string().parse().unwrap();
        assert_eq!(back, top);
        assert_eq!(top.to_string(), "10,9,8,7|6,5,4,3,2,1");
    }

    #[test]
    fn json_shape() {
        let pi: MuInvolution = "26|8351|7|94".parse().unwrap();
        let json = serde_json::to_string(&pi).unwrap();
        assert_eq!(json, r#"{"mu":[2,4,1,2],"word":[2,6,8,3,5,1,7,9,4]}"#);
        let back: MuInvolution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pi);
        assert!(serde_json::from_str::<MuInvolution>(r#"{"mu":[3,1],"word":[2,3,1,4]}"#).is_err());
    }
}
