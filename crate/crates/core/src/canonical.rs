//! Canonical codes of plane trees up to orientation-preserving isotopy.
//!
//! A code is the depth-first traversal of the tree rooted at a dart (a vertex
//! together with a starting edge), following the counterclockwise rotation at
//! every vertex. Each visited vertex contributes its color and weight, each
//! traversed edge its weight, bracketed by depth markers. The canonical code is
//! the lexicographic minimum over all darts; the number of darts attaining it
//! is the order of the automorphism group, which acts freely on darts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{Edge, PlaneTree, Vertex};
use crate::types::Color;
use crate::weight::Weight;

/// One code symbol. The derived order is the code alphabet order:
/// down < up < white < black < mark < weights (by rational value).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Down,
    Up,
    White,
    Black,
    Mark,
    Weight(Weight),
}

impl Token {
    fn color(c: Color) -> Token {
        match c {
            Color::White => Token::White,
            Color::Black => Token::Black,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<Token>);

/// Half-edge as seen from one endpoint.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Half {
    pub nbr: usize,
    pub edge_weight: Weight,
    /// Position of the same edge in the neighbor's rotation.
    pub back: usize,
}

/// Index-based plane map used by the traversal.
#[derive(Debug, Clone)]
pub(crate) struct PlaneMap {
    pub colors: Vec<Color>,
    pub weights: Vec<Weight>,
    pub adj: Vec<Vec<Half>>,
}

struct Emitter<'a> {
    out: Vec<Token>,
    best: Option<&'a [Token]>,
    cmp: Ordering,
}

impl Emitter<'_> {
    /// Returns false once the partial code is known to exceed `best`.
    fn push(&mut self, tok: Token) -> bool {
        if self.cmp == Ordering::Equal {
            if let Some(best) = self.best {
                self.cmp = match best.get(self.out.len()) {
                    Some(b) => tok.cmp(b),
                    None => Ordering::Greater,
                };
            }
        }
        self.out.push(tok);
        self.cmp != Ordering::Greater
    }
}

impl PlaneMap {
    fn vertex_tokens(&self, v: usize, mark: Option<usize>, em: &mut Emitter) -> bool {
        em.push(Token::color(self.colors[v]))
            && em.push(Token::Weight(self.weights[v]))
            && (mark != Some(v) || em.push(Token::Mark))
    }

    fn emit_branch(&self, v: usize, entry: usize, mark: Option<usize>, em: &mut Emitter) -> bool {
        if !(em.push(Token::Down) && em.push(Token::Weight(self.adj[v][entry].edge_weight))) {
            return false;
        }
        if !self.vertex_tokens(v, mark, em) {
            return false;
        }
        let d = self.adj[v].len();
        for j in 1..d {
            let h = self.adj[v][(entry + j) % d];
            if !self.emit_branch(h.nbr, h.back, mark, em) {
                return false;
            }
        }
        em.push(Token::Up)
    }

    fn emit_root(&self, v: usize, start: usize, mark: Option<usize>, em: &mut Emitter) -> bool {
        if !self.vertex_tokens(v, mark, em) {
            return false;
        }
        let d = self.adj[v].len();
        for j in 0..d {
            let h = self.adj[v][(start + j) % d];
            if !self.emit_branch(h.nbr, h.back, mark, em) {
                return false;
            }
        }
        true
    }

    /// Code of the tree rooted at dart `(v, start)`.
    #[cfg(test)]
    pub(crate) fn code_at(&self, v: usize, start: usize, mark: Option<usize>) -> CanonicalCode {
        let mut em = Emitter { out: Vec::new(), best: None, cmp: Ordering::Equal };
        self.emit_root(v, start, mark, &mut em);
        CanonicalCode(em.out)
    }

    /// Minimal code, the number of darts attaining it, and one such dart.
    pub(crate) fn min_code(&self, mark: Option<usize>) -> (CanonicalCode, usize, (usize, usize)) {
        // Only darts at vertices with the least leading tokens can be minimal.
        // A marked vertex is followed by `Mark`, which sorts after `Down`.
        let key = |v: usize| (self.colors[v], self.weights[v], mark == Some(v));
        let best_key = (0..self.colors.len()).map(key).min().expect("tree has vertices");
        let mut best: Option<Vec<Token>> = None;
        let mut count = 0;
        let mut root = (0, 0);
        for v in (0..self.colors.len()).filter(|&v| key(v) == best_key) {
            for start in 0..self.adj[v].len() {
                let mut em = Emitter { out: Vec::new(), best: best.as_deref(), cmp: Ordering::Equal };
                let finished = self.emit_root(v, start, mark, &mut em);
                let cmp = if best.is_none() { Ordering::Less } else { em.cmp };
                match (finished, cmp) {
                    (true, Ordering::Less) => {
                        best = Some(em.out);
                        count = 1;
                        root = (v, start);
                    }
                    (true, Ordering::Equal) => count += 1,
                    _ => {}
                }
            }
        }
        (CanonicalCode(best.expect("tree has a dart")), count, root)
    }
}

/// Lexicographically minimal rooted traversal code of `tree`.
pub fn canonical_code(tree: &PlaneTree) -> CanonicalCode {
    tree.map().min_code(None).0
}

/// Canonical code of `tree` with the vertex at `index` distinguished.
pub fn canonical_code_marked(tree: &PlaneTree, index: usize) -> CanonicalCode {
    tree.map().min_code(Some(index)).0
}

/// Order of the group of color-, weight- and rotation-preserving automorphisms.
pub fn automorphism_order(tree: &PlaneTree) -> usize {
    tree.map().min_code(None).1
}

pub fn are_isotopic(a: &PlaneTree, b: &PlaneTree) -> bool {
    a.vertices().len() == b.vertices().len() && canonical_code(a) == canonical_code(b)
}

/// The canonical representative of the isotopy class of `tree`: vertices and
/// edges renumbered in traversal order from the minimal dart.
pub fn canonical_form(tree: &PlaneTree) -> PlaneTree {
    canonical_code(tree).to_tree().expect("canonical codes decode")
}

impl CanonicalCode {
    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    /// Byte serialization: one tag byte per token (down 0, up 1, white 2,
    /// black 3, mark 4, weight 5); a weight tag is followed by its numerator
    /// and denominator as big-endian 8-byte integers. For integer weights the
    /// byte order agrees with the token order.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.0.len() * 4);
        for tok in &self.0 {
            match tok {
                Token::Down => out.push(0),
                Token::Up => out.push(1),
                Token::White => out.push(2),
                Token::Black => out.push(3),
                Token::Mark => out.push(4),
                Token::Weight(w) => {
                    out.push(5);
                    out.extend_from_slice(&(w.numer() as u64).to_be_bytes());
                    out.extend_from_slice(&(w.denom() as u64).to_be_bytes());
                }
            }
        }
        out
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the plane tree the code describes. Vertex 0 is the root; ids
    /// follow first appearance. Marks are ignored.
    pub fn to_tree(&self) -> Result<PlaneTree> {
        let bad = || Error::InvalidTree("malformed canonical code".into());
        let toks = &self.0;
        let mut i = 0;
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut rotation: BTreeMap<usize, Vec<usize>> = BTreeMap::new();

        let read_vertex = |i: &mut usize, vertices: &mut Vec<Vertex>| -> Result<usize> {
            let color = match toks.get(*i) {
                Some(Token::White) => Color::White,
                Some(Token::Black) => Color::Black,
                _ => return Err(bad()),
            };
            let Some(Token::Weight(weight)) = toks.get(*i + 1) else { return Err(bad()) };
            *i += 2;
            if toks.get(*i) == Some(&Token::Mark) {
                *i += 1;
            }
            let id = vertices.len();
            vertices.push(Vertex { id, color, weight: *weight });
            Ok(id)
        };

        let root = read_vertex(&mut i, &mut vertices)?;
        rotation.insert(root, Vec::new());
        let mut stack = vec![root];
        while i < toks.len() {
            match toks[i] {
                Token::Down => {
                    let Some(Token::Weight(ew)) = toks.get(i + 1) else { return Err(bad()) };
                    i += 2;
                    let parent = *stack.last().ok_or_else(bad)?;
                    let child = read_vertex(&mut i, &mut vertices)?;
                    let id = edges.len();
                    edges.push(Edge { id, u: parent, v: child, weight: *ew });
                    rotation.get_mut(&parent).ok_or_else(bad)?.push(id);
                    rotation.insert(child, vec![id]);
                    stack.push(child);
                }
                Token::Up => {
                    if stack.len() < 2 {
                        return Err(bad());
                    }
                    stack.pop();
                    i += 1;
                }
                _ => return Err(bad()),
            }
        }
        if stack.len() != 1 {
            return Err(bad());
        }
        PlaneTree::new(vertices, edges, &rotation)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for tok in &self.0 {
            match tok {
                Token::Down => f.write_str("(")?,
                Token::Up => f.write_str(")")?,
                Token::White => f.write_str("o")?,
                Token::Black => f.write_str("*")?,
                Token::Mark => f.write_str("!")?,
                Token::Weight(w) => write!(f, "{w} ")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Topology;
    use crate::types::Color::{Black, White};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(n: i64) -> Weight {
        Weight::integer(n)
    }

    fn path(colors: &[Color], weights: &[i64]) -> PlaneTree {
        let n = colors.len();
        let topo = Topology {
            colors: colors.to_vec(),
            weights: weights.iter().map(|&x| w(x)).collect(),
            edges: (0..n - 1).map(|i| (i, i + 1)).collect(),
        };
        let rot: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut r = Vec::new();
                if i > 0 {
                    r.push(i - 1);
                }
                if i + 1 < n {
                    r.push(i);
                }
                r
            })
            .collect();
        PlaneTree::from_topology(&topo, &rot).unwrap()
    }

    fn star(center: Color, leaves: &[i64]) -> PlaneTree {
        let total: i64 = leaves.iter().sum();
        let mut colors = vec![center];
        let mut weights = vec![w(total)];
        let mut edges = Vec::new();
        for (i, &l) in leaves.iter().enumerate() {
            colors.push(center.opposite());
            weights.push(w(l));
            edges.push((0, i + 1));
        }
        let mut rot = vec![(0..leaves.len()).collect::<Vec<_>>()];
        rot.extend((0..leaves.len()).map(|i| vec![i]));
        PlaneTree::from_topology(&Topology { colors, weights, edges }, &rot).unwrap()
    }

    /// Randomly renumbers vertex and edge ids, shuffles storage order and
    /// cyclically rotates every rotation list.
    fn scramble(tree: &PlaneTree, rng: &mut impl Rng) -> PlaneTree {
        let n = tree.vertices().len();
        let m = tree.edges().len();
        let mut vid: Vec<usize> = (100..100 + n).collect();
        let mut eid: Vec<usize> = (500..500 + m).collect();
        vid.shuffle(rng);
        eid.shuffle(rng);
        let id_of_v: BTreeMap<usize, usize> = tree.vertices().iter().enumerate().map(|(i, v)| (v.id, vid[i])).collect();
        let id_of_e: BTreeMap<usize, usize> = tree.edges().iter().enumerate().map(|(i, e)| (e.id, eid[i])).collect();
        let mut vertices: Vec<Vertex> = tree.vertices().iter().map(|v| Vertex { id: id_of_v[&v.id], ..*v }).collect();
        let mut edges: Vec<Edge> = tree
            .edges()
            .iter()
            .map(|e| {
                let (u, v) = if rng.gen() { (e.u, e.v) } else { (e.v, e.u) };
                Edge { id: id_of_e[&e.id], u: id_of_v[&u], v: id_of_v[&v], weight: e.weight }
            })
            .collect();
        vertices.shuffle(rng);
        edges.shuffle(rng);
        let rotation = tree
            .rotation_map()
            .into_iter()
            .map(|(v, list)| {
                let mut list: Vec<usize> = list.iter().map(|e| id_of_e[e]).collect();
                let k = rng.gen_range(0..list.len());
                list.rotate_left(k);
                (id_of_v[&v], list)
            })
            .collect();
        PlaneTree::new(vertices, edges, &rotation).unwrap()
    }

    #[test]
    fn single_edge_codes_agree() {
        let a = path(&[White, Black], &[4, 4]);
        let b = path(&[Black, White], &[4, 4]);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_eq!(automorphism_order(&a), 1);
        assert_eq!(format!("{:?}", canonical_code(&a)), "o4 (4 *4 )");
    }

    #[test]
    fn weight_orderings_of_a_path_differ() {
        // the last two trees of <5,12|1,7,9>
        let a = path(&[Black, White, Black, White, Black], &[7, 12, 9, 5, 1]);
        let b = path(&[Black, White, Black, White, Black], &[1, 5, 7, 12, 9]);
        assert_ne!(canonical_code(&a), canonical_code(&b));
        assert!(!are_isotopic(&a, &b));
    }

    #[test]
    fn star_symmetry() {
        assert_eq!(automorphism_order(&star(White, &[1; 5])), 5);
        assert_eq!(automorphism_order(&star(White, &[1, 1])), 2);
        assert_eq!(automorphism_order(&star(White, &[1, 2, 1, 2])), 2);
        assert_eq!(automorphism_order(&star(White, &[1, 1, 2])), 1);
    }

    #[test]
    fn star_order_matches_rotation_brute_force() {
        // order = number of cyclic shifts of the leaf sequence that fix it
        let leaves = [1, 2, 1, 2, 1, 2];
        let expected = (0..leaves.len())
            .filter(|&k| {
                let mut r = leaves.to_vec();
                r.rotate_left(k);
                r == leaves
            })
            .count();
        assert_eq!(automorphism_order(&star(Black, &leaves)), expected);
    }

    #[test]
    fn third_order_symmetric_tree() {
        // white 6 at the center, three branches black 3 with a white 1 leaf
        let topo = Topology {
            colors: vec![White, Black, Black, Black, White, White, White],
            weights: [6, 3, 3, 3, 1, 1, 1].map(w).to_vec(),
            edges: vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)],
        };
        let rot = vec![vec![0, 1, 2], vec![0, 3], vec![1, 4], vec![2, 5], vec![3], vec![4], vec![5]];
        let tree = PlaneTree::from_topology(&topo, &rot).unwrap();
        assert_eq!(automorphism_order(&tree), 3);
    }

    #[test]
    fn mirror_images_are_distinct() {
        // center white 6 with branches of different shape, in both orientations
        let topo = Topology {
            colors: vec![White, Black, Black, Black, White],
            weights: [6, 1, 2, 4, 1].map(w).to_vec(),
            edges: vec![(0, 1), (0, 2), (0, 3), (3, 4)],
        };
        let a = PlaneTree::from_topology(&topo, &[vec![0, 1, 2], vec![0], vec![1], vec![2, 3], vec![3]]).unwrap();
        let b = PlaneTree::from_topology(&topo, &[vec![0, 2, 1], vec![0], vec![1], vec![2, 3], vec![3]]).unwrap();
        assert!(!are_isotopic(&a, &b));
    }

    #[test]
    fn relabeling_preserves_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let topo = Topology {
            colors: vec![White, Black, White, Black, White, Black, Black],
            weights: [4, 6, 8, 2, 3, 6, 1].map(w).to_vec(),
            edges: vec![(0, 1), (1, 2), (2, 3), (2, 5), (4, 5), (0, 6)],
        };
        let rot = vec![vec![0, 5], vec![0, 1], vec![1, 2, 3], vec![2], vec![4], vec![3, 4], vec![5]];
        let tree = PlaneTree::from_topology(&topo, &rot).unwrap();
        let code = canonical_code(&tree);
        for _ in 0..100 {
            assert_eq!(canonical_code(&scramble(&tree, &mut rng)), code);
        }
    }

    #[test]
    fn code_decodes_to_isotopic_tree() {
        let tree = star(White, &[1, 2, 1, 3]);
        let canon = canonical_form(&tree);
        assert_eq!(canonical_code(&canon), canonical_code(&tree));
        assert_eq!(canon.map().code_at(0, 0, None), canonical_code(&tree));
    }

    #[test]
    fn hex_is_lowercase_and_tagged() {
        let hex = canonical_code(&path(&[White, Black], &[1, 1])).to_hex();
        assert!(hex.starts_with("0205"));
        assert_eq!(hex, hex.to_lowercase());
    }

    #[test]
    fn marks_split_orbits() {
        let tree = star(White, &[1, 1, 1]);
        let marked: std::collections::BTreeSet<_> = (1..4).map(|leaf| canonical_code_marked(&tree, leaf)).collect();
        assert_eq!(marked.len(), 1);
        let tree = star(White, &[1, 2, 1, 1]);
        let marked: std::collections::BTreeSet<_> =
            [1, 3, 4].iter().map(|&leaf| canonical_code_marked(&tree, leaf)).collect();
        assert_eq!(marked.len(), 3);
    }
}
