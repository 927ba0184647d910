//! Exhaustive enumeration of w-trees up to isotopy.
//!
//! Generation is deliberately naive so that it can serve as the reference
//! for the closed-form counts: every spanning tree of the complete bipartite
//! graph on the type's vertices, every plane embedding of it, deduplicated by
//! canonical code. Degree bounds only discard trees whose edge weights could
//! not all be positive.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{automorphism_order, canonical_code_marked, CanonicalCode, Half, PlaneMap};
use crate::error::{Error, Result};
use crate::tree::{derive_edge_weights, PlaneTree, Topology};
use crate::types::{Color, WeightedType};
use crate::weight::Weight;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Cap on generated candidates (labeled trees plus embeddings), shared
/// across worker threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, amount: u64) -> Result<()> {
        let before = self.used.fetch_add(amount, Ordering::Relaxed);
        if before.saturating_add(amount) > self.limit {
            Err(Error::ResourceBudget { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// A spanning tree of `K_{s,t}`; edges are `(white index, black index)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledTree {
    pub s: usize,
    pub t: usize,
    pub edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    pub fn white_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.s];
        for &(w, _) in &self.edges {
            d[w] += 1;
        }
        d
    }

    pub fn black_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.t];
        for &(_, b) in &self.edges {
            d[b] += 1;
        }
        d
    }
}

/// Every spanning tree of `K_{s,t}` exactly once.
pub fn labeled_bipartite_trees(s: usize, t: usize, budget: &Budget) -> Result<Vec<LabeledTree>> {
    let mut out = Vec::new();
    for_each_labeled_tree(s, t, &vec![usize::MAX; s], &vec![usize::MAX; t], budget, |edges| {
        out.push(LabeledTree { s, t, edges: edges.to_vec() });
    })?;
    Ok(out)
}

/// Spanning trees of `K_{s,t}` respecting per-vertex degree caps.
///
/// Trees are generated as parent functions towards the last black vertex:
/// every white picks a black parent, every other black picks a white parent,
/// and assignments closing a cycle are rejected as soon as they appear.
pub fn for_each_labeled_tree(
    s: usize,
    t: usize,
    max_white_degree: &[usize],
    max_black_degree: &[usize],
    budget: &Budget,
    mut visit: impl FnMut(&[(usize, usize)]),
) -> Result<()> {
    assert!(s >= 1 && t >= 1, "both color classes must be non-empty");
    let root = t - 1;
    let mut gen = ParentSearch {
        s,
        t,
        root,
        max_w: max_white_degree,
        max_b: max_black_degree,
        deg_w: vec![1; s],
        deg_b: (0..t).map(|b| usize::from(b != root)).collect(),
        black_parent: vec![usize::MAX; t],
        white_parent: vec![usize::MAX; s],
        edges: Vec::with_capacity(s + t - 1),
    };
    if gen.deg_w.iter().zip(max_white_degree).any(|(d, m)| d > m)
        || gen.deg_b.iter().zip(max_black_degree).any(|(d, m)| d > m)
    {
        return Ok(());
    }
    gen.assign_black(0, budget, &mut visit)
}

struct ParentSearch<'a> {
    s: usize,
    t: usize,
    root: usize,
    max_w: &'a [usize],
    max_b: &'a [usize],
    deg_w: Vec<usize>,
    deg_b: Vec<usize>,
    /// White parent of each non-root black.
    black_parent: Vec<usize>,
    /// Black parent of each white.
    white_parent: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl ParentSearch<'_> {
    fn assign_black(&mut self, b: usize, budget: &Budget, visit: &mut impl FnMut(&[(usize, usize)])) -> Result<()> {
        if b == self.t {
            return self.assign_white(0, budget, visit);
        }
        if b == self.root {
            return self.assign_black(b + 1, budget, visit);
        }
        for w in 0..self.s {
            if self.deg_w[w] < self.max_w[w] {
                self.deg_w[w] += 1;
                self.black_parent[b] = w;
                self.assign_black(b + 1, budget, visit)?;
                self.deg_w[w] -= 1;
            }
        }
        self.black_parent[b] = usize::MAX;
        Ok(())
    }

    fn closes_cycle(&self, w: usize, b: usize) -> bool {
        let mut black = b;
        for _ in 0..=self.s {
            if black == self.root {
                return false;
            }
            let white = self.black_parent[black];
            if white == w {
                return true;
            }
            let next = self.white_parent[white];
            if next == usize::MAX {
                return false;
            }
            black = next;
        }
        true
    }

    fn assign_white(&mut self, w: usize, budget: &Budget, visit: &mut impl FnMut(&[(usize, usize)])) -> Result<()> {
        if w == self.s {
            budget.charge(1)?;
            self.edges.clear();
            for ww in 0..self.s {
                self.edges.push((ww, self.white_parent[ww]));
            }
            for b in (0..self.t).filter(|&b| b != self.root) {
                self.edges.push((self.black_parent[b], b));
            }
            visit(&self.edges);
            return Ok(());
        }
        for b in 0..self.t {
            if self.deg_b[b] < self.max_b[b] && !self.closes_cycle(w, b) {
                self.deg_b[b] += 1;
                self.white_parent[w] = b;
                self.assign_white(w + 1, budget, visit)?;
                self.deg_b[b] -= 1;
            }
        }
        self.white_parent[w] = usize::MAX;
        Ok(())
    }
}

/// A labeled tree that passed edge-weight derivation. Vertices `0..s` are
/// white, `s..s+t` black.
struct WeightedTopology {
    colors: Vec<Color>,
    weights: Vec<Weight>,
    edges: Vec<(usize, usize)>,
    edge_weights: Vec<Weight>,
}

fn weighted_topologies(white: &[Weight], black: &[Weight], budget: &Budget) -> Result<Vec<WeightedTopology>> {
    let (s, t) = (white.len(), black.len());
    let unit = Weight::gcd_of(white.iter().chain(black).copied()).expect("non-empty type");
    let cap = |w: &Weight| w.multiple_of(unit).map_or(0, |k| k as usize).min(s + t - 1);
    let max_w: Vec<usize> = white.iter().map(cap).collect();
    let max_b: Vec<usize> = black.iter().map(cap).collect();
    let colors: Vec<Color> = std::iter::repeat_n(Color::White, s).chain(std::iter::repeat_n(Color::Black, t)).collect();
    let weights: Vec<Weight> = white.iter().chain(black).copied().collect();

    let mut out = Vec::new();
    let mut failure = None;
    for_each_labeled_tree(s, t, &max_w, &max_b, budget, |edges| {
        let topo = Topology {
            colors: colors.clone(),
            weights: weights.clone(),
            edges: edges.iter().map(|&(w, b)| (w, s + b)).collect(),
        };
        match derive_edge_weights(&topo) {
            Ok(edge_weights) => out.push(WeightedTopology {
                colors: topo.colors,
                weights: topo.weights,
                edges: topo.edges,
                edge_weights,
            }),
            Err(Error::NonPositiveEdge { .. }) => {}
            Err(e) => failure = failure.take().or(Some(e)),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// All permutations of `0..n` with `perm[0] == 0`, i.e. the cyclic orders.
fn cyclic_orders(n: usize) -> Vec<Vec<usize>> {
    if n <= 1 {
        return vec![(0..n).collect()];
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut v = Vec::with_capacity(n);
        v.push(0);
        v.extend_from_slice(p);
        out.push(v);
    });
    out
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Canonical codes of every plane embedding of one weighted topology.
fn embedding_codes(topo: &WeightedTopology, budget: &Budget, seen: &mut HashSet<CanonicalCode>) -> Result<()> {
    let n = topo.colors.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in topo.edges.iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    let count: u64 = incident.iter().map(|l| factorial(l.len().saturating_sub(1))).product();
    budget.charge(count)?;

    let orders: Vec<Vec<Vec<usize>>> = incident.iter().map(|l| cyclic_orders(l.len())).collect();
    let mut choice = vec![0usize; n];
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut map = PlaneMap {
        colors: topo.colors.clone(),
        weights: topo.weights.clone(),
        adj: incident.iter().map(|l| Vec::with_capacity(l.len())).collect(),
    };
    loop {
        for v in 0..n {
            rotation[v].clear();
            rotation[v].extend(orders[v][choice[v]].iter().map(|&k| incident[v][k]));
        }
        for v in 0..n {
            map.adj[v].clear();
            for &e in &rotation[v] {
                let (a, b) = topo.edges[e];
                let nbr = if a == v { b } else { a };
                let back = rotation[nbr].iter().position(|&x| x == e).expect("edge is incident");
                map.adj[v].push(Half { nbr, edge_weight: topo.edge_weights[e], back });
            }
        }
        seen.insert(map.min_code(None).0);

        // odometer over the per-vertex cyclic orders
        let mut v = 0;
        loop {
            if v == n {
                return Ok(());
            }
            choice[v] += 1;
            if choice[v] < orders[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

fn codes_for_assignment(white: &[Weight], black: &[Weight], budget: &Budget) -> Result<BTreeSet<CanonicalCode>> {
    let topologies = weighted_topologies(white, black, budget)?;
    let sets = topologies
        .par_iter()
        .try_fold(HashSet::new, |mut seen, topo| {
            embedding_codes(topo, budget, &mut seen)?;
            Ok::<_, Error>(seen)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sets.into_iter().flatten().collect())
}

/// Canonical codes of all w-trees of `ty`, in code order.
pub fn enumerate_codes(ty: &WeightedType, budget: &Budget) -> Result<BTreeSet<CanonicalCode>> {
    // One fixed assignment of weights to vertex labels suffices: relabeling
    // within a color is a bijection on labeled trees that preserves isotopy.
    codes_for_assignment(ty.white(), ty.black(), budget)
}

/// Canonical representatives of all w-trees of `ty`, sorted by code.
pub fn enumerate_wtrees(ty: &WeightedType, budget: &Budget) -> Result<Vec<PlaneTree>> {
    enumerate_codes(ty, budget)?.iter().map(|code| code.to_tree()).collect()
}

/// Isotopy classes bucketed by automorphism order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCensus {
    pub total: u64,
    #[serde(rename = "byOrder")]
    pub by_order: BTreeMap<usize, u64>,
}

impl SymmetryCensus {
    pub fn from_trees(trees: &[PlaneTree]) -> Self {
        let mut by_order = BTreeMap::new();
        for tree in trees {
            *by_order.entry(automorphism_order(tree)).or_insert(0) += 1;
        }
        SymmetryCensus { total: trees.len() as u64, by_order }
    }

    /// Number of labeled trees of the derivative type, `sum p / order`.
    pub fn labeled_total(&self, label_factor: u64) -> u64 {
        self.by_order.iter().map(|(&order, &count)| count * label_factor / order as u64).sum()
    }
}

pub fn symmetric_census(ty: &WeightedType, budget: &Budget) -> Result<SymmetryCensus> {
    Ok(SymmetryCensus::from_trees(&enumerate_wtrees(ty, budget)?))
}

/// Number of isotopy classes of (tree of `ty`, marked vertex of the given
/// color and weight) pairs: automorphism orbits of candidate vertices summed
/// over all trees.
pub fn marked_vertex_orbits(ty: &WeightedType, color: Color, weight: Weight, budget: &Budget) -> Result<u64> {
    let trees = enumerate_wtrees(ty, budget)?;
    Ok(trees
        .iter()
        .map(|tree| {
            tree.vertices()
                .iter()
                .enumerate()
                .filter(|(_, v)| v.color == color && v.weight == weight)
                .map(|(i, _)| canonical_code_marked(tree, i))
                .collect::<BTreeSet<_>>()
                .len() as u64
        })
        .sum())
}

/// Integer partitions of `n` as non-decreasing lists, in lexicographic order.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min_part..=remaining {
            if remaining - part == 0 || remaining - part >= part {
                cur.push(part);
                rec(remaining - part, part, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Every type of total weight `n`: all pairs of partitions of `n`.
pub fn enumerate_types(n: u32) -> Vec<WeightedType> {
    let parts = integer_partitions(n);
    let to_weights = |p: &Vec<u32>| p.iter().map(|&k| Weight::integer(k as i64)).collect::<Vec<_>>();
    parts
        .iter()
        .flat_map(|white| {
            parts.iter().map(move |black| {
                WeightedType::new(to_weights(white), to_weights(black)).expect("partitions of n balance")
            })
        })
        .collect()
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..cur.len()).rev().find(|&j| cur[i - 1] < cur[j]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
