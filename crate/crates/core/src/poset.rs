//! The reverse weak order on `I_μ`: Hasse diagram, W-sets, the sets `D_n` and
//! `D_μ`, maximal chains, and the checks tying them together.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{self, act_raw, StepKind};
use crate::muinv::{count_mu_involutions, involutions, Composition, MuInvolution};
use crate::perm::{check_generator, Permutation, ReducedWord};
use crate::report::{Check, Report};

/// Largest `n` for which posets are built unless a caller raises it.
pub const DEFAULT_MAX_N: usize = 10;
/// Largest number of chains [`WeakOrderPoset::maximal_chains`] will list.
pub const DEFAULT_CHAIN_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplicity {
    Single,
    Double,
}

/// A labeled cover `source --s_label--> target`, stored from lower to higher
/// rank. Node ids index [`WeakOrderPoset::nodes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringEdge {
    pub source: usize,
    pub target: usize,
    pub label: usize,
    pub multiplicity: Multiplicity,
}

/// Multiplicity of the cover `source --s_i--> s_i · source`. Double exactly
/// when the step inserts a 2-cycle inside one string.
pub fn classify_edge(source: &MuInvolution, i: usize) -> Result<Multiplicity> {
    match monoid::classify(i, source)? {
        StepKind::Fixed => Err(Error::NotCovering {
            label: i,
            source_word: source.to_string(),
        }),
        StepKind::InsertTwoCycle => Ok(Multiplicity::Double),
        StepKind::CrossString | StepKind::Conjugate => Ok(Multiplicity::Single),
    }
}

/// Hasse diagram of the reverse weak order on `I_μ`.
///
/// Nodes are sorted by `(rank, word)`; node 0 is `e_μ` and the last node is
/// `π_{0,μ}`.
#[derive(Clone, Debug)]
pub struct WeakOrderPoset {
    mu: Composition,
    nodes: Vec<Permutation>,
    ranks: Vec<usize>,
    index: HashMap<Permutation, usize>,
    edges: Vec<CoveringEdge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

/// Builds the poset with the default bound `n ≤ 10`.
pub fn build_poset(mu: &Composition) -> Result<WeakOrderPoset> {
    WeakOrderPoset::build(mu, DEFAULT_MAX_N)
}

impl WeakOrderPoset {
    /// Breadth-first closure of `e_μ` under all generators.
    pub fn build(mu: &Composition, max_n: usize) -> Result<Self> {
        let n = mu.n();
        if n > max_n {
            return Err(Error::ResourceBound {
                n,
                limit: max_n,
                estimate: count_mu_involutions(mu).to_string(),
            });
        }
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut words: Vec<Vec<u8>> = Vec::new();
        let mut raw_edges: Vec<(usize, usize, usize, StepKind)> = Vec::new();

        let bottom: Vec<u8> = (1..=n as u8).collect();
        seen.insert(bottom.clone(), 0);
        words.push(bottom);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let steps: Vec<Vec<(usize, StepKind, Vec<u8>)>> = frontier
                .par_iter()
                .map(|&id| {
                    (1..n)
                        .filter_map(|i| match act_raw(&words[id], mu, i) {
                            (kind, Some(w)) => Some((i, kind, w)),
                            (_, None) => None,
                        })
                        .collect()
                })
                .collect();
            let mut next = Vec::new();
            for (&source, succ) in frontier.iter().zip(steps) {
                for (label, kind, word) in succ {
                    let target = match seen.get(&word) {
                        Some(&t) => t,
                        None => {
                            let t = words.len();
                            seen.insert(word.clone(), t);
                            words.push(word);
                            next.push(t);
                            t
                        }
                    };
                    raw_edges.push((source, target, label, kind));
                }
            }
            frontier = next;
        }
        drop(seen);

        let nodes: Vec<Permutation> = words.into_iter().map(Permutation::from_bytes).collect();
        let raw_ranks: Vec<usize> = nodes
            .par_iter()
            .map(|p| MuInvolution::from_parts(mu.clone(), p.clone()).rank())
            .collect();
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&a, &b| (raw_ranks[a], &nodes[a]).cmp(&(raw_ranks[b], &nodes[b])));
        let mut relabel = vec![0usize; nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut slots: Vec<Option<Permutation>> = nodes.into_iter().map(Some).collect();
        let nodes: Vec<Permutation> = order
            .iter()
            .map(|&old| slots[old].take().unwrap())
            .collect();
        let ranks: Vec<usize> = order.iter().map(|&old| raw_ranks[old]).collect();

        let mut edges: Vec<CoveringEdge> = raw_edges
            .into_iter()
            .map(|(s, t, label, kind)| CoveringEdge {
                source: relabel[s],
                target: relabel[t],
                label,
                multiplicity: if kind == StepKind::InsertTwoCycle {
                    Multiplicity::Double
                } else {
                    Multiplicity::Single
                },
            })
            .collect();
        edges.sort();
        Ok(Self::assemble(mu.clone(), nodes, ranks, edges))
    }

    fn assemble(
        mu: Composition,
        nodes: Vec<Permutation>,
        ranks: Vec<usize>,
        edges: Vec<CoveringEdge>,
    ) -> Self {
        let mut out_edges = vec![Vec::new(); nodes.len()];
        let mut in_edges = vec![Vec::new(); nodes.len()];
        for (k, e) in edges.iter().enumerate() {
            out_edges[e.source].push(k);
            in_edges[e.target].push(k);
        }
        let index = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, p)| (p, k))
            .collect();
        Self {
            mu,
            nodes,
            ranks,
            index,
            edges,
            out_edges,
            in_edges,
        }
    }

    pub fn mu(&self) -> &Composition {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Permutation] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> MuInvolution {
        MuInvolution::from_parts(self.mu.clone(), self.nodes[id].clone())
    }

    pub fn rank_of(&self, id: usize) -> usize {
        self.ranks[id]
    }

    pub fn edges(&self) -> &[CoveringEdge] {
        &self.edges
    }

    pub fn out_edges(&self, id: usize) -> impl Iterator<Item = &CoveringEdge> {
        self.out_edges[id].iter().map(|&k| &self.edges[k])
    }

    pub fn in_edges(&self, id: usize) -> impl Iterator<Item = &CoveringEdge> {
        self.in_edges[id].iter().map(|&k| &self.edges[k])
    }

    pub fn id_of(&self, pi: &MuInvolution) -> Option<usize> {
        if pi.mu() != &self.mu {
            return None;
        }
        self.index.get(pi.perm()).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `ℓ_μ(π_{0,μ})`.
    pub fn height(&self) -> usize {
        self.ranks[self.top()]
    }

    /// Node ids with no outgoing / no incoming covers.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.out_edges[k].is_empty())
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.in_edges[k].is_empty())
            .collect()
    }

    /// Node ids in an order where every edge goes forward.
    fn topological(&self) -> impl Iterator<Item = usize> {
        // Sorted by BFS-discovered rank; edges always raise the rank of a
        // well-formed poset, checked by `check_graded`.
        0..self.len()
    }

    /// Number of labeled maximal chains from `e_μ` to `π_{0,μ}`.
    pub fn count_maximal_chains(&self) -> BigUint {
        let mut paths = vec![BigUint::zero(); self.len()];
        paths[self.bottom()] = BigUint::one();
        for id in self.topological() {
            if paths[id].is_zero() {
                continue;
            }
            let here = paths[id].clone();
            for e in self.out_edges(id) {
                paths[e.target] += &here;
            }
        }
        paths[self.top()].clone()
    }

    /// Lists every maximal chain, refusing when there are more than `limit`.
    pub fn maximal_chains(&self, limit: usize) -> Result<Vec<Chain>> {
        let count = self.count_maximal_chains();
        if count > BigUint::from(limit) {
            return Err(Error::ChainLimit {
                count: count.to_string(),
                limit,
            });
        }
        let mut out = Vec::new();
        let mut nodes = vec![self.bottom()];
        let mut labels = Vec::new();
        self.chains_from(self.bottom(), &mut nodes, &mut labels, &mut out);
        out.sort();
        Ok(out)
    }

    fn chains_from(
        &self,
        id: usize,
        nodes: &mut Vec<usize>,
        labels: &mut Vec<usize>,
        out: &mut Vec<Chain>,
    ) {
        if id == self.top() {
            out.push(Chain {
                nodes: nodes.clone(),
                labels: labels.clone(),
            });
            return;
        }
        for e in self.out_edges(id) {
            nodes.push(e.target);
            labels.push(e.label);
            self.chains_from(e.target, nodes, labels, out);
            nodes.pop();
            labels.pop();
        }
    }

    /// `W(π)` for every node, by the rank-increasing recursion
    /// `W(π) = ⋃_{π' --s--> π} { s w' : w' ∈ W(π'), ℓ(s w') = ℓ(w') + 1 }`.
    pub fn all_w_sets(&self) -> Vec<BTreeSet<Permutation>> {
        let mut sets: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); self.len()];
        sets[self.bottom()].insert(Permutation::identity(self.mu.n()));
        for id in self.topological() {
            for &k in &self.in_edges[id] {
                let e = self.edges[k];
                let extended: Vec<Permutation> = sets[e.source]
                    .iter()
                    .filter(|w| w.position(e.label) < w.position(e.label + 1))
                    .map(|w| w.left_mul_simple(e.label))
                    .collect();
                sets[id].extend(extended);
            }
        }
        sets
    }

    /// `W(π)` for one node. Only the down-set of `π` is visited, and W-sets
    /// are dropped once every cover leaving them has been consumed.
    pub fn w_set(&self, pi: &MuInvolution) -> Result<WSet> {
        let target = self
            .id_of(pi)
            .ok_or_else(|| Error::UnknownNode(pi.to_string()))?;
        let mut below = vec![false; self.len()];
        below[target] = true;
        for id in (0..=target).rev() {
            if below[id] {
                for e in self.in_edges(id) {
                    below[e.source] = true;
                }
            }
        }
        let mut pending: Vec<usize> = (0..self.len())
            .map(|id| self.out_edges(id).filter(|e| below[e.target]).count())
            .collect();
        let mut sets: Vec<Option<BTreeSet<Permutation>>> = vec![None; self.len()];
        sets[self.bottom()] = Some(BTreeSet::from([Permutation::identity(self.mu.n())]));
        for id in self.topological().filter(|&id| below[id]) {
            let mut here = sets[id].take().unwrap_or_default();
            for &k in &self.in_edges[id] {
                let e = self.edges[k];
                let source = sets[e.source].as_ref().expect("source processed first");
                here.extend(
                    source
                        .iter()
                        .filter(|w| w.position(e.label) < w.position(e.label + 1))
                        .map(|w| w.left_mul_simple(e.label)),
                );
                pending[e.source] -= 1;
                if pending[e.source] == 0 && e.source != target {
                    sets[e.source] = None;
                }
            }
            sets[id] = Some(here);
            if id == target {
                break;
            }
        }
        Ok(WSet {
            pi: pi.clone(),
            elements: sets[target]
                .take()
                .unwrap_or_default()
                .into_iter()
                .collect(),
        })
    }

    pub fn to_export(&self) -> PosetExport {
        PosetExport {
            mu: self.mu.parts().to_vec(),
            nodes: (0..self.len())
                .map(|id| {
                    let pi = self.node(id);
                    NodeExport {
                        id: pi.to_string(),
                        word: pi.perm().to_vec(),
                        rank: self.ranks[id],
                        dcount: pi.double_edge_count(),
                    }
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeExport {
                    src: self.node(e.source).to_string(),
                    dst: self.node(e.target).to_string(),
                    label: e.label,
                    mult: e.multiplicity,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("poset export serializes")
    }

    /// Rebuilds a poset from its JSON export, validating every node and edge
    /// endpoint.
    pub fn from_json(text: &str) -> Result<Self> {
        let export: PosetExport =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_export(export)
    }

    pub fn from_export(export: PosetExport) -> Result<Self> {
        let mu = Composition::new(export.mu)?;
        let mut pairs: Vec<(usize, Permutation, String)> = export
            .nodes
            .into_iter()
            .map(|node| {
                let pi = MuInvolution::validate(Permutation::new(node.word)?, mu.clone())?;
                Ok((node.rank, pi.perm().clone(), node.id))
            })
            .collect::<Result<_>>()?;
        pairs.sort();
        let ids: HashMap<String, usize> = pairs
            .iter()
            .enumerate()
            .map(|(k, (_, _, id))| (id.clone(), k))
            .collect();
        let lookup = |id: &str| {
            ids.get(id)
                .copied()
                .ok_or_else(|| Error::UnknownNode(id.to_string()))
        };
        let mut edges = export
            .edges
            .iter()
            .map(|e| {
                check_generator(mu.n(), e.label)?;
                Ok(CoveringEdge {
                    source: lookup(&e.src)?,
                    target: lookup(&e.dst)?,
                    label: e.label,
                    multiplicity: e.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        edges.sort();
        let (ranks, nodes) = pairs.into_iter().map(|(r, p, _)| (r, p)).unzip();
        Ok(Self::assemble(mu, nodes, ranks, edges))
    }

    /// Graphviz rendering, bottom to top, one `rank=same` group per level.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"I_{}\" {{", self.mu);
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=plaintext];");
        let mut start = 0;
        while start < self.len() {
            let rank = self.ranks[start];
            let end = start
                + self.ranks[start..]
                    .iter()
                    .take_while(|&&r| r == rank)
                    .count();
            let names: Vec<String> = (start..end)
                .map(|id| format!("\"{}\";", self.node(id)))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {} }}", names.join(" "));
            start = end;
        }
        for e in &self.edges {
            let style = match e.multiplicity {
                Multiplicity::Single => "",
                Multiplicity::Double => ", color=\"black:invis:black\", mult=double",
            };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"s_{}\"{}];",
                self.node(e.source),
                self.node(e.target),
                e.label,
                style
            );
        }
        out.push_str("}\n");
        out
    }
}

/// A maximal chain: node ids from bottom to top and the generator applied at
/// each step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub nodes: Vec<usize>,
    pub labels: Vec<usize>,
}

impl Chain {
    /// The reduced word of the W-set element traced by this chain; the last
    /// step is the leftmost letter.
    pub fn word(&self) -> ReducedWord {
        ReducedWord(self.labels.iter().rev().copied().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeExport {
    pub id: String,
    pub word: Vec<usize>,
    pub rank: usize,
    pub dcount: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeExport {
    pub src: String,
    pub dst: String,
    pub label: usize,
    pub mult: Multiplicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetExport {
    pub mu: Vec<usize>,
    pub nodes: Vec<NodeExport>,
    pub edges: Vec<EdgeExport>,
}

/// The minimal-length permutations carrying `e_μ` to `pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSet {
    pub pi: MuInvolution,
    /// Sorted lexicographically.
    pub elements: Vec<Permutation>,
}

impl WSet {
    /// `W(Y_π) = W(π)⁻¹`, the set indexing the orbit-closure side.
    pub fn inverse_elements(&self) -> Vec<Permutation> {
        let mut inv: Vec<Permutation> = self.elements.iter().map(Permutation::inverse).collect();
        inv.sort();
        inv
    }
}

/// `W(π)`; builds the poset on `π`'s composition.
pub fn w_set(pi: &MuInvolution, poset: &WeakOrderPoset) -> Result<WSet> {
    poset.w_set(pi)
}

/// `D_n` by recursion: every element has `n` immediately left of `1`, and
/// deleting that pair and lowering the rest by one lands in `D_{n-2}`.
pub fn d_set(n: usize) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = d_set_words(n)
        .into_iter()
        .map(Permutation::from_bytes)
        .collect();
    out.sort();
    out
}

fn d_set_words(n: usize) -> Vec<Vec<u8>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![1]],
        _ => {
            let mut out = Vec::new();
            for inner in d_set_words(n - 2) {
                let shifted: Vec<u8> = inner.iter().map(|v| v + 1).collect();
                for slot in 0..=shifted.len() {
                    let mut w = Vec::with_capacity(n);
                    w.extend_from_slice(&shifted[..slot]);
                    w.push(n as u8);
                    w.push(1);
                    w.extend_from_slice(&shifted[slot..]);
                    out.push(w);
                }
            }
            out
        }
    }
}

/// Whether `w ∈ D_n` by the positional definition: for every `i ≤ n/2`, the
/// value `n+1-i` appears before `i` and no value strictly between them sits
/// between them in `w`.
pub fn in_d_set(w: &Permutation) -> bool {
    let n = w.len();
    let pos = w.inverse();
    (1..=n / 2).all(|i| {
        let (hi, lo) = (pos.apply(n + 1 - i), pos.apply(i));
        hi < lo && (i + 1..n + 1 - i).all(|j| !(hi < pos.apply(j) && pos.apply(j) < lo))
    })
}

/// `D_n` by filtering all of `S_n` through [`in_d_set`].
pub fn d_set_by_filter(n: usize) -> Vec<Permutation> {
    Permutation::all(n).filter(in_d_set).collect()
}

/// `(n-1)!! = (n-1)(n-3)⋯`.
pub fn double_factorial_below(n: usize) -> BigUint {
    (1..n)
        .rev()
        .step_by(2)
        .fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `D_μ`: the i-th string uses the alphabet `{n-ν_i+1 .. n-ν_{i-1}}` and its
/// relative permutation lies in `D_{μ_i}`.
pub fn d_set_mu(mu: &Composition) -> Vec<Permutation> {
    let n = mu.n();
    let mut words: Vec<Vec<u8>> = vec![Vec::with_capacity(n)];
    for (i, &part) in mu.parts().iter().enumerate() {
        let base = (n - mu.nu(i + 1)) as u8;
        let blocks = d_set_words(part);
        words = words
            .into_iter()
            .flat_map(|prefix| {
                blocks.iter().map(move |b| {
                    let mut w = prefix.clone();
                    w.extend(b.iter().map(|v| v + base));
                    w
                })
            })
            .collect();
    }
    let mut out: Vec<Permutation> = words.into_iter().map(Permutation::from_bytes).collect();
    out.sort();
    out
}

fn summarize<T: std::fmt::Debug>(items: &[T]) -> String {
    const SHOWN: usize = 3;
    if items.len() <= SHOWN {
        format!("{items:?}")
    } else {
        format!("{:?} and {} more", &items[..SHOWN], items.len() - SHOWN)
    }
}

/// Node count, unique extremes, and every edge raising `ℓ_μ` by one; then the
/// shortest and longest path lengths from the bottom to every node both equal
/// its rank, so all maximal chains have length `ℓ_μ(π_{0,μ})`.
pub fn check_graded(poset: &WeakOrderPoset) -> Check {
    let mut problems = Vec::new();
    let expected = count_mu_involutions(poset.mu());
    if BigUint::from(poset.len()) != expected {
        problems.push(format!("{} nodes, expected {expected}", poset.len()));
    }
    let top = MuInvolution::top(poset.mu());
    if poset.minimal_elements() != vec![poset.bottom()]
        || !poset.node(poset.bottom()).perm().is_identity()
    {
        problems.push("bottom is not the unique minimal element e_μ".into());
    }
    if poset.maximal_elements() != vec![poset.top()] || poset.node(poset.top()) != top {
        problems.push("top is not the unique maximal element π_{0,μ}".into());
    }
    for e in poset.edges() {
        if poset.rank_of(e.target) != poset.rank_of(e.source) + 1 {
            problems.push(format!(
                "edge {} -> {}",
                poset.node(e.source),
                poset.node(e.target)
            ));
        }
    }
    let mut shortest = vec![usize::MAX; poset.len()];
    let mut longest = vec![0usize; poset.len()];
    shortest[poset.bottom()] = 0;
    for id in poset.topological() {
        for e in poset.out_edges(id) {
            shortest[e.target] = shortest[e.target].min(shortest[id] + 1);
            longest[e.target] = longest[e.target].max(longest[id] + 1);
        }
    }
    for id in 0..poset.len() {
        if shortest[id] != poset.rank_of(id) || longest[id] != poset.rank_of(id) {
            problems.push(format!(
                "{}: chain lengths {}..{} vs rank {}",
                poset.node(id),
                shortest[id],
                longest[id],
                poset.rank_of(id)
            ));
        }
    }
    Check::new(
        format!(
            "graded with rank ℓ_μ, height {} on I_{}",
            top.rank(),
            poset.mu()
        ),
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} nodes, {} edges", poset.len(), poset.edges().len())
        } else {
            summarize(&problems)
        },
    )
}

/// Every path from `e_μ` to a node crosses the same number of double edges,
/// equal to the node's 2-cycle count.
pub fn check_double_edges(poset: &WeakOrderPoset) -> Check {
    let mut lo = vec![usize::MAX; poset.len()];
    let mut hi = vec![0usize; poset.len()];
    lo[poset.bottom()] = 0;
    for id in poset.topological() {
        for e in poset.out_edges(id) {
            let step = usize::from(e.multiplicity == Multiplicity::Double);
            lo[e.target] = lo[e.target].min(lo[id] + step);
            hi[e.target] = hi[e.target].max(hi[id] + step);
        }
    }
    let mut problems = Vec::new();
    for id in 0..poset.len() {
        let pi = poset.node(id);
        let d = pi.double_edge_count();
        if lo[id] != d || hi[id] != d {
            problems.push(format!(
                "{pi}: paths carry {}..{} doubles, D = {d}",
                lo[id], hi[id]
            ));
        }
    }
    for e in poset.edges() {
        let kind = classify_edge(&poset.node(e.source), e.label);
        if kind != Ok(e.multiplicity) {
            problems.push(format!(
                "edge {} s_{} misclassified",
                poset.node(e.source),
                e.label
            ));
        }
    }
    let top_d = poset.node(poset.top()).double_edge_count();
    if top_d != poset.mu().half_floor_sum() {
        problems.push(format!(
            "D(top) = {top_d}, expected {}",
            poset.mu().half_floor_sum()
        ));
    }
    Check::new(
        format!("double-edge count path-invariant on I_{}", poset.mu()),
        problems.is_empty(),
        if problems.is_empty() {
            format!("D(top) = {top_d}")
        } else {
            summarize(&problems)
        },
    )
}

/// For every node and generator: `ℓ_μ(s_i · π) = ℓ_μ(π) + 1` when `i`
/// precedes `i+1` in `π`, and `s_i · π = π` otherwise.
pub fn check_rank_increments(poset: &WeakOrderPoset) -> Check {
    let n = poset.mu().n();
    let problems: Vec<String> = (0..poset.len())
        .into_par_iter()
        .flat_map_iter(|id| {
            let pi = poset.node(id);
            let rank = poset.rank_of(id);
            (1..n).filter_map(move |i| {
                let next = monoid::act_simple(i, &pi).unwrap();
                let ascent = pi.perm().position(i) < pi.perm().position(i + 1);
                let want = if ascent { rank + 1 } else { rank };
                let ok = next.rank() == want && (ascent || next == pi);
                (!ok).then(|| format!("{pi} s_{i}"))
            })
        })
        .collect();
    Check::new(
        format!("rank increment law on I_{}", poset.mu()),
        problems.is_empty(),
        summarize(&problems),
    )
}

/// Covers in `I_n` are Bruhat-comparable as permutations.
pub fn check_bruhat_covers(poset: &WeakOrderPoset) -> Check {
    let bad: Vec<String> = poset
        .edges()
        .iter()
        .filter(|e| {
            !poset.nodes()[e.source]
                .bruhat_leq(&poset.nodes()[e.target])
                .unwrap()
        })
        .map(|e| format!("{} -> {}", poset.node(e.source), poset.node(e.target)))
        .collect();
    Check::new(
        format!("covers are Bruhat-increasing on I_{}", poset.mu()),
        bad.is_empty(),
        summarize(&bad),
    )
}

/// Chains from `e_{(n)}` built from the words
/// `(s_{n-1} ⋯ s_{j+1})(s_1 ⋯ s_{i-1})` for `j < i` and
/// `(s_{n-1} ⋯ s_j)(s_1 ⋯ s_{i-1})` for `i < j`: checks where each lands and
/// how its rank compares with the word length.
pub fn check_outer_cycle_words(n: usize) -> Check {
    let mut problems = Vec::new();
    let mut instances = 0;
    let Ok(mu) = Composition::single(n) else {
        return Check::new("outer-cycle words", true, "n = 0");
    };
    let e = MuInvolution::identity(&mu);
    let word_for = |from: usize, i: usize| -> Vec<usize> { (from..n).rev().chain(1..i).collect() };
    let mut check =
        |letters: Vec<usize>, cycles: Vec<(usize, usize)>, deficit: usize, case: &str| {
            instances += 1;
            let v = ReducedWord(letters.clone()).evaluate(n).unwrap();
            let landed = monoid::act_word(&monoid::MonoidWord(letters.clone()), &e).unwrap();
            let expected = Permutation::from_two_cycles(n, &cycles).unwrap();
            let reduced = letters.len() == v.length();
            let via_perm = monoid::act_permutation(&v, &e).unwrap();
            if landed.perm() != &expected
                || landed.rank() + deficit != v.length()
                || !reduced
                || via_perm != landed
            {
                problems.push(format!(
                    "{case} word {letters:?}: got {landed}, rank {}",
                    landed.rank()
                ));
            }
        };
    for j in 1..n {
        for i in j + 1..=n {
            let letters = word_for(j + 1, i);
            if i == j + 1 {
                check(letters, vec![(1, n)], 0, "i=j+1");
            } else if i == j + 2 {
                check(letters, vec![(1, n)], 1, "i=j+2");
            } else {
                check(letters, vec![(1, n), (j + 1, i - 1)], 1, "i>j+2");
            }
        }
    }
    for i in 1..n {
        for j in i + 1..=n {
            let mut cycles = Vec::new();
            if i > 1 {
                cycles.push((1, i));
            }
            if j < n {
                cycles.push((j, n));
            }
            check(word_for(j, i), cycles, 0, "i<j");
        }
    }
    Check::new(
        format!("outer-cycle words at n = {n}"),
        problems.is_empty(),
        if problems.is_empty() {
            format!("{instances} instances")
        } else {
            summarize(&problems)
        },
    )
}

/// Any cover in `I_n` that creates the 2-cycle `(1, n)` is labeled `s_1` or
/// `s_{n-1}`.
pub fn check_outer_cycle_labels(n: usize) -> Check {
    let mut instances = 0;
    let mut problems = Vec::new();
    if let Ok(mu) = Composition::single(n) {
        for p in involutions(n) {
            if n < 2 || p.apply(1) == n {
                continue;
            }
            let pi = MuInvolution::from_parts(mu.clone(), p);
            for i in 1..n {
                let next = monoid::act_simple(i, &pi).unwrap();
                if next.perm().apply(1) == n {
                    instances += 1;
                    if i != 1 && i != n - 1 {
                        problems.push(format!("{pi} --s_{i}--> {next}"));
                    }
                }
            }
        }
    }
    Check::new(
        format!(
            "covers creating (1,{n}) use s_1 or s_{}",
            n.saturating_sub(1)
        ),
        problems.is_empty(),
        if problems.is_empty() {
            format!("{instances} instances")
        } else {
            summarize(&problems)
        },
    )
}

/// `W(π_{0,μ}) = D_μ`, plus the two constructions of each `D_{μ_i}` agreeing
/// and the outer-cycle lemmas at `n = |μ|`.
pub fn verify_main_theorems(mu: &Composition, max_n: usize) -> Result<Report> {
    let poset = WeakOrderPoset::build(mu, max_n)?;
    Ok(main_theorem_checks(&poset))
}

fn main_theorem_checks(poset: &WeakOrderPoset) -> Report {
    let mu = poset.mu();
    let mut report = Report::new();
    let top = MuInvolution::top(mu);
    let w = poset.w_set(&top).expect("top is in the poset");
    let d = d_set_mu(mu);
    report.push(Check::new(
        format!("W(π_0) = D_μ for μ = {mu}"),
        w.elements == d,
        format!("|W| = {}, |D_μ| = {}", w.elements.len(), d.len()),
    ));
    let mut sizes: Vec<usize> = mu.parts().to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    for m in sizes {
        let (rec, filt) = (d_set(m), d_set_by_filter(m));
        report.push(Check::new(
            format!("D_{m} recursive = filtered, size (m-1)!!"),
            rec == filt && BigUint::from(rec.len()) == double_factorial_below(m),
            format!("{} elements", rec.len()),
        ));
    }
    report.push(check_outer_cycle_words(mu.n()));
    report.push(check_outer_cycle_labels(mu.n()));
    report
}

/// Everything checkable on a single `I_μ`: monoid relations, rank increments,
/// gradedness, double-edge invariance, chain count against reduced words of
/// `D_μ`, Bruhat compatibility for `μ = (n)`, and the main theorems.
pub fn verify_all(mu: &Composition, max_n: usize) -> Result<Report> {
    let poset = WeakOrderPoset::build(mu, max_n)?;
    let mut report = Report::new();
    let sample: Vec<MuInvolution> = (0..poset.len()).map(|id| poset.node(id)).collect();
    let relations = monoid::verify_relations(mu.n(), &sample);
    report.push(Check::new(
        format!("monoid relations on I_{mu}"),
        relations.passed(),
        relations.to_string(),
    ));
    report.push(check_rank_increments(&poset));
    report.push(check_graded(&poset));
    report.push(check_double_edges(&poset));
    let chains = poset.count_maximal_chains();
    let words: BigUint = d_set_mu(mu)
        .iter()
        .map(Permutation::count_reduced_words)
        .sum();
    report.push(Check::new(
        format!("maximal chains of I_{mu} = reduced words of D_μ"),
        chains == words,
        format!("{chains} chains"),
    ));
    if mu.num_parts() == 1 {
        report.push(check_bruhat_covers(&poset));
    }
    report.extend(main_theorem_checks(&poset));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn perms(words: &[&str]) -> Vec<Permutation> {
        let mut v: Vec<Permutation> = words.iter().map(|w| w.parse().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn figure_sized_posets() {
        let p5 = build_poset(&mu(&[5])).unwrap();
        assert_eq!(p5.len(), 26);
        assert_eq!(p5.height(), 6);
        assert_eq!(p5.node(p5.top()).perm().two_cycles(), vec![(1, 5), (2, 4)]);

        let p31 = build_poset(&mu(&[3, 1])).unwrap();
        assert_eq!(p31.len(), 16);
        assert_eq!(p31.height(), 5);
        assert_eq!(p31.node(p31.top()).to_string(), "432|1");
        assert_eq!(p31.count_maximal_chains(), BigUint::from(11u32));

        let p1 = build_poset(&mu(&[1])).unwrap();
        assert_eq!(p1.len(), 1);
        assert!(p1.edges().is_empty());
        assert_eq!(p1.count_maximal_chains(), BigUint::one());
    }

    #[test]
    fn edge_multiplicities() {
        let e: MuInvolution = "123|4".parse().unwrap();
        assert_eq!(classify_edge(&e, 1), Ok(Multiplicity::Double));
        assert_eq!(classify_edge(&e, 3), Ok(Multiplicity::Single));
        let id5 = MuInvolution::identity(&mu(&[5]));
        for i in 1..5 {
            assert_eq!(classify_edge(&id5, i), Ok(Multiplicity::Double));
        }
        let top = MuInvolution::top(&mu(&[5]));
        assert!(matches!(
            classify_edge(&top, 2),
            Err(Error::NotCovering { .. })
        ));
    }

    #[test]
    fn w_set_examples() {
        let p = build_poset(&mu(&[3, 1])).unwrap();
        let e = MuInvolution::identity(&mu(&[3, 1]));
        assert_eq!(
            p.w_set(&e).unwrap().elements,
            vec![Permutation::identity(4)]
        );
        let top = MuInvolution::top(&mu(&[3, 1]));
        assert_eq!(p.w_set(&top).unwrap().elements, perms(&["3421", "4231"]));

        let p42 = build_poset(&mu(&[4, 2])).unwrap();
        let top = MuInvolution::top(&mu(&[4, 2]));
        let w = p42.w_set(&top).unwrap();
        assert_eq!(w.elements, perms(&["546321", "563421", "635421"]));
        assert_eq!(w.inverse_elements().len(), 3);
    }

    #[test]
    fn w_set_single_node_matches_table() {
        let p = build_poset(&mu(&[2, 3])).unwrap();
        let all = p.all_w_sets();
        for (id, set) in all.iter().enumerate() {
            let one = p.w_set(&p.node(id)).unwrap();
            let want: Vec<Permutation> = set.iter().cloned().collect();
            assert_eq!(one.elements, want);
        }
    }

    #[test]
    fn unknown_node_is_rejected() {
        let p = build_poset(&mu(&[3, 1])).unwrap();
        let other = MuInvolution::identity(&mu(&[2, 2]));
        assert!(matches!(p.w_set(&other), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn d_set_tables() {
        assert_eq!(d_set(1), perms(&["1"]));
        assert_eq!(d_set(2), perms(&["21"]));
        assert_eq!(d_set(3), perms(&["231", "312"]));
        assert_eq!(d_set(4), perms(&["3241", "3412", "4132"]));
        for n in 1..=10 {
            assert_eq!(BigUint::from(d_set(n).len()), double_factorial_below(n));
        }
        assert_eq!(d_set(10).len(), 945);
        for n in 1..=7 {
            assert_eq!(d_set(n), d_set_by_filter(n));
        }
    }

    #[test]
    fn d_set_mu_examples() {
        assert_eq!(
            d_set_mu(&mu(&[4, 2])),
            perms(&["546321", "563421", "635421"])
        );
        assert_eq!(d_set_mu(&mu(&[5])), d_set(5));
        assert_eq!(d_set_mu(&mu(&[1, 1, 1, 1])), vec![Permutation::longest(4)]);
    }

    #[test]
    fn chain_enumeration() {
        let p = build_poset(&mu(&[3, 1])).unwrap();
        let chains = p.maximal_chains(100).unwrap();
        assert_eq!(chains.len(), 11);
        let top = p.node(p.top());
        for c in &chains {
            let w = c.word().evaluate(4).unwrap();
            assert!(w == "3421".parse().unwrap() || w == "4231".parse().unwrap());
            assert_eq!(monoid::act_permutation(&w, &p.node(0)).unwrap(), top);
            let doubles = c
                .nodes
                .windows(2)
                .zip(&c.labels)
                .filter(|(pair, &l)| classify_edge(&p.node(pair[0]), l) == Ok(Multiplicity::Double))
                .count();
            assert_eq!(doubles, 1);
        }
        assert!(matches!(
            p.maximal_chains(10),
            Err(Error::ChainLimit { .. })
        ));
        let p2 = build_poset(&mu(&[2])).unwrap();
        assert_eq!(p2.count_maximal_chains(), BigUint::one());
    }

    #[test]
    fn resource_bound() {
        let err = WeakOrderPoset::build(&mu(&[6]), 5).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceBound {
                n: 6,
                limit: 5,
                estimate: "76".into()
            }
        );
    }

    #[test]
    fn json_round_trip() {
        let p = build_poset(&mu(&[2, 2])).unwrap();
        let back = WeakOrderPoset::from_json(&p.to_json()).unwrap();
        assert_eq!(back.nodes(), p.nodes());
        assert_eq!(back.edges(), p.edges());
        assert_eq!(back.to_export(), p.to_export());
    }

    #[test]
    fn dot_output() {
        let dot = build_poset(&mu(&[3, 1])).unwrap().to_dot();
        assert!(dot.starts_with("digraph \"I_(3,1)\" {"));
        assert!(dot.contains(
            "\"123|4\" -> \"213|4\" [label=\"s_1\", color=\"black:invis:black\", mult=double];"
        ));
        assert!(dot.contains("\"123|4\" -> \"124|3\" [label=\"s_3\"];"));
        assert_eq!(dot.matches("rank=same").count(), 6);
    }

    #[test]
    fn verify_all_small() {
        for n in 1..=4 {
            for c in Composition::all(n) {
                let report = verify_all(&c, DEFAULT_MAX_N).unwrap();
                assert!(report.passed(), "{c}: {report}");
            }
        }
    }
}
