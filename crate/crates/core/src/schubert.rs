//! Integer polynomials in `x_1, x_2, …`, divided differences, Schubert
//! polynomials and the restriction classes of closed B-orbits.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::muinv::Composition;
use crate::perm::Permutation;
use crate::poset::d_set_mu;

/// Exponent vector with trailing zeros removed; `exps[k]` is the power of
/// `x_{k+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(mut exps: Vec<u16>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    /// Power of `x_i` (1-based).
    pub fn exp(&self, i: usize) -> u16 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn with_pair(&self, i: usize, p: u16, q: u16) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() < i + 1 {
            exps.resize(i + 1, 0);
        }
        exps[i - 1] = p;
        exps[i] = q;
        Monomial::new(exps)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut exps = long.clone();
        for (e, &f) in exps.iter_mut().zip(short.iter()) {
            *e = e.checked_add(f).expect("exponent overflow");
        }
        Monomial(exps)
    }
}

/// A polynomial with `i64` coefficients; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(Monomial::default(), c)
    }

    pub fn term(m: Monomial, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are 1-based");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Self::term(Monomial::new(exps), 1)
    }

    pub fn monomial(exps: &[u16], c: i64) -> Self {
        Self::term(Monomial::new(exps.to_vec()), c)
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(c).expect("coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Largest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    pub fn scale(&self, c: i64) -> Polynomial {
        if c == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, &k)| (m.clone(), k.checked_mul(c).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exchanges `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Polynomial {
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            out.add_term(m.with_pair(i, m.exp(i + 1), m.exp(i)), c);
        }
        out
    }

    /// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`, monomial by monomial:
    /// `(x^p y^q - x^q y^p) / (x - y) = x^q y^q (x^{d-1} + x^{d-2} y + ⋯ + y^{d-1})`
    /// for `d = p - q > 0`, negated when `p < q`, zero when `p = q`.
    pub fn divided_difference(&self, i: usize) -> Polynomial {
        assert!(i >= 1, "divided differences are 1-based");
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            let (p, q) = (m.exp(i), m.exp(i + 1));
            let (hi, lo, sign) = match p.cmp(&q) {
                std::cmp::Ordering::Equal => continue,
                std::cmp::Ordering::Greater => (p, q, 1),
                std::cmp::Ordering::Less => (q, p, -1),
            };
            let d = hi - lo;
            for k in 0..d {
                out.add_term(m.with_pair(i, lo + d - 1 - k, lo + k), sign * c);
            }
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        let width = self.num_vars();
        self.terms
            .iter()
            .rev()
            .map(|(m, &c)| {
                let mut exps = m.0.clone();
                exps.resize(width, 0);
                TermJson { exps, coef: c }
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[TermJson]) -> Polynomial {
        let mut out = Self::zero();
        for t in terms {
            out.add_term(Monomial::new(t.exps.clone()), t.coef);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u16>,
    pub coef: i64,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Polynomial::from_json_terms(&Vec::<TermJson>::deserialize(
            d,
        )?))
    }
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing lexicographic order, e.g. `2*x1^2 + 2*x1*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, &c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        if e == 1 {
                            format!("x{}", v + 1)
                        } else {
                            format!("x{}^{e}", v + 1)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, &c) in &self.terms {
            for (b, &d) in &rhs.terms {
                out.add_term(a.times(b), c.checked_mul(d).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

/// `x_1^{n-1} x_2^{n-2} ⋯ x_{n-1}`, the Schubert polynomial of `w₀ ∈ S_n`.
pub fn staircase(n: usize) -> Polynomial {
    let exps: Vec<u16> = (1..n).rev().map(|e| e as u16).collect();
    Polynomial::monomial(&exps, 1)
}

/// A permutation with its Schubert polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertClass {
    pub w: Permutation,
    pub poly: Polynomial,
}

/// `𝔖_w`: start from the staircase monomial for `w₀` and apply `∂_{b_1}`,
/// then `∂_{b_2}`, … for a reduced word `b_1 ⋯ b_l` of `w₀w`.
pub fn schubert(w: &Permutation) -> SchubertClass {
    let n = w.len();
    let path = Permutation::longest(n)
        .compose(w)
        .unwrap()
        .lex_min_reduced_word();
    SchubertClass {
        w: w.clone(),
        poly: schubert_along(n, path.letters()),
    }
}

/// Applies `∂_{letters[0]}` first, then `∂_{letters[1]}`, … to the staircase.
pub fn schubert_along(n: usize, letters: &[usize]) -> Polynomial {
    letters
        .iter()
        .fold(staircase(n), |f, &i| f.divided_difference(i))
}

/// Memoized Schubert polynomials for one `n`, via `𝔖_w = ∂_i 𝔖_{w s_i}`
/// whenever `w(i) < w(i+1)`.
#[derive(Debug, Default)]
pub struct SchubertCache {
    memo: HashMap<Permutation, Polynomial>,
}

impl SchubertCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, w: &Permutation) -> Polynomial {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let n = w.len();
        let poly = match (1..n).find(|&i| w.apply(i) < w.apply(i + 1)) {
            None => staircase(n),
            Some(i) => self.get(&w.right_mul_simple(i)).divided_difference(i),
        };
        self.memo.insert(w.clone(), poly.clone());
        poly
    }
}

/// Which power of 2 multiplies the restriction class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentMode {
    /// `D(π_{0,μ}) = Σ ⌊μ_i / 2⌋`, the double-edge count of any maximal chain.
    DoubleEdges,
    /// `⌊n / 2⌋` for every `μ`.
    Uniform,
}

impl ExponentMode {
    pub fn exponent(self, mu: &Composition) -> usize {
        match self {
            ExponentMode::DoubleEdges => mu.half_floor_sum(),
            ExponentMode::Uniform => mu.n() / 2,
        }
    }
}

/// `2^e Σ_{w ∈ D_μ} 𝔖_{w⁻¹}`.
pub fn restriction_class(mu: &Composition, mode: ExponentMode) -> Polynomial {
    let mut cache = SchubertCache::new();
    let sum: Polynomial = d_set_mu(mu).iter().map(|w| cache.get(&w.inverse())).sum();
    sum.scale(1i64 << mode.exponent(mu))
}

fn binomial(i: usize, j: usize) -> Polynomial {
    &Polynomial::var(i) + &Polynomial::var(j)
}

/// `∏_{1 ≤ i ≤ j ≤ n-i} (x_i + x_j)`.
pub fn conjecture_product(n: usize) -> Polynomial {
    let mut out = Polynomial::one();
    for i in 1..=n {
        for j in i..=n.saturating_sub(i) {
            out = &out * &binomial(i, j);
        }
    }
    out
}

/// `2^{⌊n/2⌋} ∏_{i ≤ n/2} x_i ∏_{1 ≤ i < j < n+1-i} (x_i + x_j)`.
pub fn conjecture_product_factored(n: usize) -> Polynomial {
    let mut out = Polynomial::constant(1i64 << (n / 2));
    for i in 1..=n / 2 {
        out = &out * &Polynomial::var(i);
    }
    for i in 1..=n {
        for j in i + 1..(n + 1).saturating_sub(i) {
            out = &out * &binomial(i, j);
        }
    }
    out
}

/// Restriction class of the closed orbit in `O_{(n)}` against both printed
/// forms of the conjectured product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub restriction: Polynomial,
    pub product: Polynomial,
    pub factored: Polynomial,
    /// `restriction - product`; empty on success.
    pub diff: Polynomial,
}

impl ConjectureReport {
    pub fn matches_product(&self) -> bool {
        self.diff.is_zero()
    }

    pub fn matches_factored(&self) -> bool {
        self.restriction == self.factored
    }

    pub fn passed(&self) -> bool {
        self.matches_product() && self.matches_factored()
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS: {}", self.restriction)
        } else {
            writeln!(f, "FAIL: n = {}", self.n)?;
            writeln!(f, "  restriction: {}", self.restriction)?;
            writeln!(f, "  product:     {}", self.product)?;
            writeln!(f, "  factored:    {}", self.factored)?;
            write!(f, "  difference:  {}", self.diff)
        }
    }
}

pub fn check_conjecture(n: usize) -> ConjectureReport {
    let mu = Composition::single(n.max(1)).unwrap();
    let restriction = if n == 0 {
        Polynomial::one()
    } else {
        restriction_class(&mu, ExponentMode::DoubleEdges)
    };
    let product = conjecture_product(n);
    let factored = conjecture_product_factored(n);
    let diff = &restriction - &product;
    ConjectureReport {
        n,
        restriction,
        product,
        factored,
        diff,
    }
}

/// The class computed with both exponent conventions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentComparison {
    pub mu: Vec<usize>,
    pub double_edge_exponent: usize,
    pub uniform_exponent: usize,
    pub double_edge_class: Polynomial,
    pub uniform_class: Polynomial,
    /// The uniform `⌊n/2⌋` is being applied to a composition with more than
    /// one part, where the two formulas are distinct statements.
    pub flagged: bool,
}

impl ExponentComparison {
    pub fn exponents_agree(&self) -> bool {
        self.double_edge_exponent == self.uniform_exponent
    }
}

impl fmt::Display for ExponentComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mu.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "mu=({}) double-edge exponent {} uniform exponent {}: {}{}",
            parts.join(","),
            self.double_edge_exponent,
            self.uniform_exponent,
            if self.exponents_agree() {
                "agree"
            } else {
                "differ"
            },
            if self.flagged {
                " [FLAG: formulas differ for multi-part mu]"
            } else {
                ""
            }
        )
    }
}

pub fn compare_exponent_conventions(mu: &Composition) -> ExponentComparison {
    let mut cache = SchubertCache::new();
    let sum: Polynomial = d_set_mu(mu).iter().map(|w| cache.get(&w.inverse())).sum();
    let (de, un) = (
        ExponentMode::DoubleEdges.exponent(mu),
        ExponentMode::Uniform.exponent(mu),
    );
    ExponentComparison {
        mu: mu.parts().to_vec(),
        double_edge_exponent: de,
        uniform_exponent: un,
        double_edge_class: sum.scale(1i64 << de),
        uniform_class: sum.scale(1i64 << un),
        flagged: mu.num_parts() > 1,
    }
}
