//! Plane weighted bipartite trees and edge-weight derivation.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::canonical::{self, CanonicalCode, Half, PlaneMap};
use crate::error::{Error, Result};
use crate::types::Color;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub color: Color,
    pub weight: Weight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub weight: Weight,
}

/// A w-tree: a bipartite tree with positive vertex and edge weights, each
/// vertex weight equal to the sum of its incident edge weights, together with
/// a rotation system (counterclockwise order of edges around each vertex).
#[derive(Debug, Clone)]
pub struct PlaneTree {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Edge ids around each vertex, indexed like `vertices`.
    rotation: Vec<Vec<usize>>,
    map: PlaneMap,
}

/// A bipartite tree with colored, weighted vertices but no edge weights.
/// Vertices are addressed by index; edges are index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub colors: Vec<Color>,
    pub weights: Vec<Weight>,
    pub edges: Vec<(usize, usize)>,
}

/// Derives the unique edge weights satisfying the vertex-sum axiom by
/// repeatedly peeling leaves.
pub fn derive_edge_weights(topology: &Topology) -> Result<Vec<Weight>> {
    derive_edge_weights_by(topology, |leaves| leaves.len() - 1)
}

/// Same as [`derive_edge_weights`], with `choose` picking which of the
/// current leaves (given as vertex indices) is peeled next.
pub fn derive_edge_weights_by(topology: &Topology, mut choose: impl FnMut(&[usize]) -> usize) -> Result<Vec<Weight>> {
    let n = topology.colors.len();
    if topology.weights.len() != n {
        return Err(Error::InvalidTree("colors and weights differ in length".into()));
    }
    check_tree_shape(n, &topology.edges, &topology.colors)?;

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in topology.edges.iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut residual = topology.weights.clone();
    let mut edge_weight: Vec<Option<Weight>> = vec![None; topology.edges.len()];
    let mut removed = vec![false; n];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();

    for _ in 0..n.saturating_sub(1) {
        let pick = choose(&leaves);
        let leaf = leaves.swap_remove(pick);
        let e =
            incident[leaf].iter().copied().find(|&e| edge_weight[e].is_none()).expect("a leaf has one unassigned edge");
        let (a, b) = topology.edges[e];
        let other = if a == leaf { b } else { a };
        edge_weight[e] = Some(residual[leaf]);
        residual[other] = residual[other].checked_sub(residual[leaf]).ok_or(Error::Overflow)?;
        removed[leaf] = true;
        degree[other] -= 1;
        if degree[other] == 1 {
            leaves.push(other);
        }
    }
    let last = (0..n).find(|&v| !removed[v]).expect("one vertex remains");
    if !residual[last].is_zero() {
        return Err(Error::ResidualMismatch(residual[last]));
    }
    let weights: Vec<Weight> = edge_weight.into_iter().map(|w| w.expect("all edges peeled")).collect();
    if let Some((edge, &weight)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
        return Err(Error::NonPositiveEdge { edge, weight });
    }
    Ok(weights)
}

fn check_tree_shape(n: usize, edges: &[(usize, usize)], colors: &[Color]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidTree("no vertices".into()));
    }
    if edges.len() + 1 != n {
        return Err(Error::InvalidTree(format!("{} vertices but {} edges", n, edges.len())));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::InvalidTree(format!("edge ({a}, {b}) has an unknown endpoint")));
        }
        if colors[a] == colors[b] {
            return Err(Error::InvalidTree(format!("edge ({a}, {b}) joins two {} vertices", colors[a])));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::InvalidTree("edges contain a cycle".into()));
        }
        parent[ra] = rb;
    }
    Ok(())
}

impl PlaneTree {
    /// Validates every w-tree invariant and builds the tree.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, rotation: &BTreeMap<usize, Vec<usize>>) -> Result<Self> {
        let vindex: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        if vindex.len() != vertices.len() {
            return Err(Error::InvalidTree("duplicate vertex id".into()));
        }
        let eindex: HashMap<usize, usize> = edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        if eindex.len() != edges.len() {
            return Err(Error::InvalidTree("duplicate edge id".into()));
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for e in &edges {
            let (Some(&a), Some(&b)) = (vindex.get(&e.u), vindex.get(&e.v)) else {
                return Err(Error::InvalidTree(format!("edge {} has an unknown endpoint", e.id)));
            };
            if !e.weight.is_positive() {
                return Err(Error::NonPositiveEdge { edge: e.id, weight: e.weight });
            }
            pairs.push((a, b));
        }
        let colors: Vec<Color> = vertices.iter().map(|v| v.color).collect();
        check_tree_shape(vertices.len(), &pairs, &colors)?;
        if let Some(v) = vertices.iter().find(|v| !v.weight.is_positive()) {
            return Err(Error::NonPositiveWeight(v.weight));
        }

        let mut rot = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let list =
                rotation.get(&v.id).ok_or_else(|| Error::InvalidTree(format!("vertex {} has no rotation", v.id)))?;
            let mut expected: Vec<usize> =
                edges.iter().zip(&pairs).filter(|(_, &(a, b))| a == i || b == i).map(|(e, _)| e.id).collect();
            let mut got = list.clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(Error::InvalidTree(format!(
                    "rotation at vertex {} does not list its incident edges exactly once",
                    v.id
                )));
            }
            let sum: Weight = list.iter().map(|id| edges[eindex[id]].weight).sum();
            if sum != v.weight {
                return Err(Error::InvalidTree(format!(
                    "vertex {} has weight {} but its edges sum to {}",
                    v.id, v.weight, sum
                )));
            }
            rot.push(list.clone());
        }
        if rotation.len() != vertices.len() {
            return Err(Error::InvalidTree("rotation names an unknown vertex".into()));
        }

        let map = build_map(&vertices, &edges, &pairs, &rot, &eindex);
        Ok(PlaneTree { vertices, edges, rotation: rot, map })
    }

    /// Builds a tree from a topology and per-vertex rotations (edge indices in
    /// counterclockwise order), deriving the edge weights.
    pub fn from_topology(topology: &Topology, rotation: &[Vec<usize>]) -> Result<Self> {
        let weights = derive_edge_weights(topology)?;
        let vertices = (0..topology.colors.len())
            .map(|i| Vertex { id: i, color: topology.colors[i], weight: topology.weights[i] })
            .collect();
        let edges = topology
            .edges
            .iter()
            .zip(&weights)
            .enumerate()
            .map(|(id, (&(u, v), &weight))| Edge { id, u, v, weight })
            .collect();
        let rotation = rotation.iter().cloned().enumerate().collect();
        PlaneTree::new(vertices, edges, &rotation)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Counterclockwise edge ids around the vertex at `index`.
    pub fn rotation_at(&self, index: usize) -> &[usize] {
        &self.rotation[index]
    }

    pub fn rotation_map(&self) -> BTreeMap<usize, Vec<usize>> {
        self.vertices.iter().zip(&self.rotation).map(|(v, r)| (v.id, r.clone())).collect()
    }

    pub(crate) fn map(&self) -> &PlaneMap {
        &self.map
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canonical::canonical_code(self)
    }

    /// Vertex weights of a color in non-decreasing order.
    pub fn weights_of(&self, color: Color) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self.vertices.iter().filter(|v| v.color == color).map(|v| v.weight).collect();
        ws.sort();
        ws
    }

    pub fn to_document(&self) -> TreeDocument {
        TreeDocument {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            rotation: self.rotation_map().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("tree documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TreeDocument = serde_json::from_str(text).map_err(|e| Error::InvalidTree(e.to_string()))?;
        doc.into_tree()
    }

    /// Graphviz rendering: white vertices unfilled, black filled, edges
    /// labeled by weight.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph \"{}\" {{", name.replace('"', "'")).unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        for v in &self.vertices {
            let style = match v.color {
                Color::White => "style=solid, fillcolor=white, fontcolor=black",
                Color::Black => "style=filled, fillcolor=black, fontcolor=white",
            };
            writeln!(out, "  v{} [label=\"{}\", {}];", v.id, v.weight, style).unwrap();
        }
        for e in &self.edges {
            writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.u, e.v, e.weight).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn build_map(
    vertices: &[Vertex],
    edges: &[Edge],
    pairs: &[(usize, usize)],
    rot: &[Vec<usize>],
    eindex: &HashMap<usize, usize>,
) -> PlaneMap {
    let n = vertices.len();
    // position of each (vertex, edge) in that vertex's rotation
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, list) in rot.iter().enumerate() {
        for (k, id) in list.iter().enumerate() {
            pos.insert((v, eindex[id]), k);
        }
    }
    let adj = (0..n)
        .map(|v| {
            rot[v]
                .iter()
                .map(|id| {
                    let e = eindex[id];
                    let (a, b) = pairs[e];
                    let nbr = if a == v { b } else { a };
                    Half { nbr, edge_weight: edges[e].weight, back: pos[&(nbr, e)] }
                })
                .collect()
        })
        .collect();
    PlaneMap {
        colors: vertices.iter().map(|v| v.color).collect(),
        weights: vertices.iter().map(|v| v.weight).collect(),
        adj,
    }
}

/// JSON shape of a tree: weights as decimal or `p/q` strings, rotation keyed
/// by vertex id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub rotation: BTreeMap<String, Vec<usize>>,
}

impl TreeDocument {
    pub fn into_tree(self) -> Result<PlaneTree> {
        let rotation = self
            .rotation
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|k| (k, v))
                    .map_err(|_| Error::InvalidTree(format!("rotation key `{k}` is not a vertex id")))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        PlaneTree::new(self.vertices, self.edges, &rotation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Color::{Black, White};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(n: i64) -> Weight {
        Weight::integer(n)
    }

    /// First tree of the six in type <5,12|1,7,9>: path 1-12-9-5 with 7 hanging off 12.
    fn example_one_first() -> Topology {
        Topology {
            colors: vec![Black, White, Black, White, Black],
            weights: vec![w(1), w(12), w(9), w(5), w(7)],
            edges: vec![(0, 1), (1, 2), (2, 3), (1, 4)],
        }
    }

    #[test]
    fn example_one_edge_weights() {
        let weights = derive_edge_weights(&example_one_first()).unwrap();
        assert_eq!(weights, vec![w(1), w(4), w(5), w(7)]);
    }

    #[test]
    fn star_edges_are_forced_to_one() {
        let n = 6;
        let mut colors = vec![White];
        let mut weights = vec![w(n)];
        let mut edges = Vec::new();
        for i in 0..n as usize {
            colors.push(Black);
            weights.push(w(1));
            edges.push((0, i + 1));
        }
        let ew = derive_edge_weights(&Topology { colors, weights, edges }).unwrap();
        assert!(ew.iter().all(|&x| x == w(1)));
    }

    #[test]
    fn zero_cut_is_rejected() {
        let topo = Topology {
            colors: vec![White, Black, White, Black],
            weights: vec![w(2), w(2), w(3), w(3)],
            edges: vec![(0, 1), (1, 2), (2, 3)],
        };
        assert_eq!(derive_edge_weights(&topo), Err(Error::NonPositiveEdge { edge: 1, weight: w(0) }));
    }

    #[test]
    fn residual_mismatch_when_sums_differ() {
        let topo = Topology { colors: vec![White, Black], weights: vec![w(2), w(3)], edges: vec![(0, 1)] };
        assert_eq!(derive_edge_weights(&topo), Err(Error::ResidualMismatch(w(-1))));
    }

    #[test]
    fn non_trees_are_rejected() {
        let same_color = Topology { colors: vec![White, White], weights: vec![w(1), w(1)], edges: vec![(0, 1)] };
        assert!(matches!(derive_edge_weights(&same_color), Err(Error::InvalidTree(_))));
        let disconnected =
            Topology { colors: vec![White, Black, White], weights: vec![w(1), w(1), w(1)], edges: vec![(0, 1)] };
        assert!(matches!(derive_edge_weights(&disconnected), Err(Error::InvalidTree(_))));
    }

    #[test]
    fn peeling_order_does_not_matter() {
        let topo = Topology {
            colors: vec![White, Black, White, Black, White, Black, Black],
            weights: vec![w(4), w(6), w(8), w(2), w(3), w(6), w(1)],
            edges: vec![(0, 1), (1, 2), (2, 3), (2, 5), (4, 5), (0, 6)],
        };
        let reference = derive_edge_weights(&topo);
        assert!(reference.is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let got = derive_edge_weights_by(&topo, |leaves| rng.gen_range(0..leaves.len()));
            assert_eq!(got, reference);
        }
    }

    #[test]
    fn constructor_rejects_weight_violations() {
        let vertices = vec![Vertex { id: 0, color: White, weight: w(2) }, Vertex { id: 1, color: Black, weight: w(2) }];
        let edges = vec![Edge { id: 0, u: 0, v: 1, weight: w(1) }];
        let rotation: BTreeMap<usize, Vec<usize>> = [(0, vec![0]), (1, vec![0])].into();
        assert!(matches!(PlaneTree::new(vertices, edges, &rotation), Err(Error::InvalidTree(_))));
    }

    #[test]
    fn constructor_rejects_bad_rotation() {
        let topo = Topology {
            colors: vec![White, Black, Black],
            weights: vec![w(2), w(1), w(1)],
            edges: vec![(0, 1), (0, 2)],
        };
        let err = PlaneTree::from_topology(&topo, &[vec![0, 0], vec![0], vec![1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidTree(_)));
    }

    #[test]
    fn json_round_trip() {
        let tree =
            PlaneTree::from_topology(&example_one_first(), &[vec![0], vec![0, 3, 1], vec![1, 2], vec![2], vec![3]])
                .unwrap();
        let json = tree.to_json();
        assert!(json.contains("\"weight\":\"12\""));
        let back = PlaneTree::from_json(&json).unwrap();
        assert_eq!(back.canonical_code(), tree.canonical_code());
        assert_eq!(back.rotation_map(), tree.rotation_map());
    }

    #[test]
    fn dot_marks_colors() {
        let topo = Topology { colors: vec![White, Black], weights: vec![w(3), w(3)], edges: vec![(0, 1)] };
        let dot = PlaneTree::from_topology(&topo, &[vec![0], vec![0]]).unwrap().to_dot("t");
        assert!(dot.contains("v0 [label=\"3\", style=solid"));
        assert!(dot.contains("v1 [label=\"3\", style=filled, fillcolor=black"));
        assert!(dot.contains("v0 -- v1 [label=\"3\"]"));
    }
}
