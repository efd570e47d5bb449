//! The Richardson–Springer monoid action on μ-involutions.
//!
//! For a simple transposition `s_i` and a μ-involution `π`:
//!
//! 1. if `i+1` precedes `i` in `π`, then `s_i · π = π`;
//! 2. if `i` precedes `i+1` and they lie in different strings, `s_i · π = s_i π`;
//! 3. if they lie in the same string `α`, with `a` the relative rank of `i`:
//!    (a) when `α` fixes both relatively, `α` becomes `s_a α` (a 2-cycle is added);
//!    (b) otherwise `α` becomes `s_a α s_a`.
//!
//! Words act right to left: `(s_{i_1} ⋯ s_{i_l}) · π = s_{i_1} · (⋯ (s_{i_l} · π))`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::muinv::{Composition, MuInvolution};
use crate::perm::{check_generator, Permutation};

/// Which branch of the action a generator takes on a given element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    Fixed,
    CrossString,
    InsertTwoCycle,
    Conjugate,
}

impl StepKind {
    pub fn moves(self) -> bool {
        self != StepKind::Fixed
    }
}

/// Computes `s_i` acting on a raw word under `mu`. Returns the branch taken and
/// the new word, or `None` when the element is fixed. `i` must be in range.
pub(crate) fn act_raw(word: &[u8], mu: &Composition, i: usize) -> (StepKind, Option<Vec<u8>>) {
    let (a, b) = (i as u8, i as u8 + 1);
    let pos_a = word.iter().position(|&v| v == a).unwrap();
    let pos_b = word.iter().position(|&v| v == b).unwrap();
    if pos_a > pos_b {
        return (StepKind::Fixed, None);
    }
    let string = mu.string_of_position(pos_a + 1);
    let swap_values = |w: &mut [u8]| {
        for v in w.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    };
    if string != mu.string_of_position(pos_b + 1) {
        let mut out = word.to_vec();
        swap_values(&mut out);
        return (StepKind::CrossString, Some(out));
    }

    let (lo, hi) = (mu.nu(string), mu.nu(string + 1));
    let alpha = &word[lo..hi];
    let mut alphabet = alpha.to_vec();
    alphabet.sort_unstable();
    let mut sigma: Vec<u8> = alpha
        .iter()
        .map(|v| alphabet.binary_search(v).unwrap() as u8 + 1)
        .collect();
    // 0-based relative rank of i; i+1 sits at rank + 1.
    let rank = alphabet.binary_search(&a).unwrap();
    let (ra, rb) = (rank as u8 + 1, rank as u8 + 2);
    let fixes_both = sigma[rank] == ra && sigma[rank + 1] == rb;
    let kind = if fixes_both {
        StepKind::InsertTwoCycle
    } else {
        sigma.swap(rank, rank + 1);
        StepKind::Conjugate
    };
    for v in sigma.iter_mut() {
        if *v == ra {
            *v = rb;
        } else if *v == rb {
            *v = ra;
        }
    }
    let mut out = word.to_vec();
    for (slot, r) in out[lo..hi].iter_mut().zip(&sigma) {
        *slot = alphabet[*r as usize - 1];
    }
    (kind, Some(out))
}

/// The branch `s_i` takes on `pi`.
pub fn classify(i: usize, pi: &MuInvolution) -> Result<StepKind> {
    check_generator(pi.n(), i)?;
    Ok(act_raw(pi.perm().bytes(), pi.mu(), i).0)
}

/// `s_i · π`.
pub fn act_simple(i: usize, pi: &MuInvolution) -> Result<MuInvolution> {
    check_generator(pi.n(), i)?;
    Ok(match act_raw(pi.perm().bytes(), pi.mu(), i).1 {
        None => pi.clone(),
        Some(word) => MuInvolution::from_parts(pi.mu().clone(), Permutation::from_bytes(word)),
    })
}

/// A word in the monoid generators; not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoidWord(pub Vec<usize>);

impl MonoidWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// The lexicographically smallest reduced word of `w`.
    pub fn from_permutation(w: &Permutation) -> Self {
        MonoidWord(w.lex_min_reduced_word().0)
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{i}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `w · π`, folding the letters from the right.
pub fn act_word(word: &MonoidWord, pi: &MuInvolution) -> Result<MuInvolution> {
    let n = pi.n();
    for &i in word.letters() {
        check_generator(n, i)?;
    }
    let mut current = pi.perm().bytes().to_vec();
    for &i in word.letters().iter().rev() {
        if let (_, Some(next)) = act_raw(&current, pi.mu(), i) {
            current = next;
        }
    }
    Ok(MuInvolution::from_parts(
        pi.mu().clone(),
        Permutation::from_bytes(current),
    ))
}

/// `w · π` for a permutation `w`, through its lexicographically smallest
/// reduced word. Any reduced word gives the same result.
pub fn act_permutation(w: &Permutation, pi: &MuInvolution) -> Result<MuInvolution> {
    if w.len() != pi.n() {
        return Err(crate::Error::SizeMismatch {
            left: w.len(),
            right: pi.n(),
        });
    }
    act_word(&MonoidWord::from_permutation(w), pi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Idempotence,
    Commutation,
    Braid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationViolation {
    pub relation: Relation,
    pub element: String,
    pub i: usize,
    pub j: usize,
}

/// Result of checking the monoid relations over a sample.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub elements: usize,
    pub checks: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: RelationReport) -> RelationReport {
        self.elements += other.elements;
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} elements, {} relation instances, {} violations",
            self.elements,
            self.checks,
            self.violations.len()
        )
    }
}

/// Checks idempotence, far commutation and the braid relation for every
/// applicable pair of generators on every sample element.
pub fn verify_relations(n: usize, sample: &[MuInvolution]) -> RelationReport {
    sample
        .par_iter()
        .map(|pi| relations_at(n, pi))
        .reduce(RelationReport::default, RelationReport::merge)
}

fn relations_at(n: usize, pi: &MuInvolution) -> RelationReport {
    let mut report = RelationReport {
        elements: 1,
        ..Default::default()
    };
    let act = |w: &[usize]| act_word(&MonoidWord(w.to_vec()), pi).unwrap();
    let mut record = |relation, i, j, ok: bool| {
        report.checks += 1;
        if !ok {
            report.violations.push(RelationViolation {
                relation,
                element: pi.to_string(),
                i,
                j,
            });
        }
    };
    for i in 1..n {
        record(Relation::Idempotence, i, i, act(&[i, i]) == act(&[i]));
        for j in i + 2..n {
            record(Relation::Commutation, i, j, act(&[i, j]) == act(&[j, i]));
        }
        if i + 1 < n {
            record(
                Relation::Braid,
                i,
                i + 1,
                act(&[i, i + 1, i]) == act(&[i + 1, i, i + 1]),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(s: &str) -> MuInvolution {
        s.parse().unwrap()
    }

    #[test]
    fn mixed_composition_example() {
        let p = pi("314|6|27|5");
        let expected = [
            "324|6|17|5",
            "314|6|27|5",
            "431|6|27|5",
            "315|6|27|4",
            "314|6|27|5",
            "314|7|26|5",
        ];
        for (i, want) in (1..=6).zip(expected) {
            assert_eq!(act_simple(i, &p).unwrap().to_string(), want, "s_{i}");
        }
    }

    #[test]
    fn involution_example() {
        let p = pi("5734162");
        let expected = [
            "7534261", "5734162", "5743162", "5734162", "6734512", "5734162",
        ];
        for (i, want) in (1..=6).zip(expected) {
            assert_eq!(act_simple(i, &p).unwrap().to_string(), want, "s_{i}");
        }
    }

    #[test]
    fn top_is_fixed() {
        for mu in Composition::all(6) {
            let top = MuInvolution::top(&mu);
            for i in 1..6 {
                assert_eq!(act_simple(i, &top).unwrap(), top);
            }
        }
    }

    #[test]
    fn step_kinds() {
        let e = pi("123|4");
        assert_eq!(classify(1, &e).unwrap(), StepKind::InsertTwoCycle);
        assert_eq!(classify(3, &e).unwrap(), StepKind::CrossString);
        assert_eq!(classify(2, &pi("213|4")).unwrap(), StepKind::Conjugate);
        assert_eq!(classify(1, &pi("213|4")).unwrap(), StepKind::Fixed);
    }

    #[test]
    fn out_of_range_generator() {
        let e = pi("123|4");
        assert!(act_simple(0, &e).is_err());
        assert!(act_simple(4, &e).is_err());
        assert!(act_word(&MonoidWord(vec![1, 7]), &e).is_err());
    }

    #[test]
    fn word_actions() {
        let e = pi("123|4");
        assert_eq!(act_word(&MonoidWord::default(), &e).unwrap(), e);
        let w: Permutation = "3421".parse().unwrap();
        assert_eq!(act_permutation(&w, &e).unwrap().to_string(), "432|1");
        for w in w.reduced_words() {
            assert_eq!(act_word(&MonoidWord(w.0), &e).unwrap().to_string(), "432|1");
        }
    }

    #[test]
    fn braid_words_agree_on_i4() {
        let mu = Composition::single(4).unwrap();
        for p in crate::muinv::involutions(4) {
            let p = MuInvolution::validate(p, mu.clone()).unwrap();
            assert_eq!(
                act_word(&MonoidWord(vec![1, 2, 1]), &p).unwrap(),
                act_word(&MonoidWord(vec![2, 1, 2]), &p).unwrap()
            );
        }
    }

    #[test]
    fn empty_sample_passes() {
        let r = verify_relations(5, &[]);
        assert!(r.passed());
        assert_eq!(r.checks, 0);
    }
}
