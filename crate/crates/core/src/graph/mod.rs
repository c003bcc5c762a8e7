//! Simple undirected graphs on contiguous 0-based vertices.
//!
//! Adjacency is stored as one bitset row per vertex. Every traversal visits
//! neighbours in increasing index order, so all derived objects (spanning
//! trees, nets, balls) are deterministic.

mod json;
mod net;
mod random;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use json::GraphJson;
pub use net::NetCertificate;
pub use random::random_connected;

const WORD: usize = 64;

/// Label attached to an edge by the Cayley constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeType {
    TypeI,
    TypeIi,
    Plain,
}

impl EdgeType {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeType::TypeI => "type_i",
            EdgeType::TypeIi => "type_ii",
            EdgeType::Plain => "plain",
        }
    }
}

impl FromStr for EdgeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "type_i" => Ok(EdgeType::TypeI),
            "type_ii" => Ok(EdgeType::TypeIi),
            "plain" => Ok(EdgeType::Plain),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Complete,
    Path,
    Cycle,
    Empty,
    /// One center joined to `k - 1` leaves.
    Star,
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" | "complete_k" => Ok(NamedGraph::Complete),
            "path" | "path_k" => Ok(NamedGraph::Path),
            "cycle" | "cycle_k" => Ok(NamedGraph::Cycle),
            "empty" | "empty_k" => Ok(NamedGraph::Empty),
            "star" | "star_k" => Ok(NamedGraph::Star),
            other => Err(Error::InvalidArgument(format!("unknown graph kind {other:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<Vec<u64>>,
    edge_types: Option<BTreeMap<(usize, usize), EdgeType>>,
}

#[inline]
fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        Graph { n, rows: vec![vec![0; words]; n], edge_types: None }
    }

    /// Builds a graph from an edge list, rejecting loops, parallel edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!("duplicate edge {{{u},{v}}}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Graph whose edges are given by a bitmask over the upper triangle, in
    /// the order (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
    pub fn from_upper_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::new(n);
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Adds the edge `{u, v}`. Panics on loops or out-of-range vertices.
    ///
    /// On a labeled graph the new edge is labeled `plain`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.rows[u][v / WORD] |= 1 << (v % WORD);
        self.rows[v][u / WORD] |= 1 << (u % WORD);
        if let Some(types) = &mut self.edge_types {
            types.entry(ordered(u, v)).or_insert(EdgeType::Plain);
        }
    }

    /// Adds a labeled edge, turning the graph into a labeled one if needed.
    /// Existing unlabeled edges become `plain`.
    pub fn add_labeled_edge(&mut self, u: usize, v: usize, label: EdgeType) {
        if self.edge_types.is_none() {
            self.set_all_plain();
        }
        self.add_edge(u, v);
        if let Some(types) = &mut self.edge_types {
            types.insert(ordered(u, v), label);
        }
    }

    fn set_all_plain(&mut self) {
        let types = self.edges().into_iter().map(|e| (e, EdgeType::Plain)).collect();
        self.edge_types = Some(types);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u][v / WORD] &= !(1 << (v % WORD));
        self.rows[v][u / WORD] &= !(1 << (u % WORD));
        if let Some(types) = &mut self.edge_types {
            types.remove(&ordered(u, v));
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Bitset row of `v`.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v]
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * WORD + t)
                }
            })
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn is_labeled(&self) -> bool {
        self.edge_types.is_some()
    }

    /// Label of an existing edge. Unlabeled graphs report `plain`.
    pub fn edge_type(&self, u: usize, v: usize) -> Option<EdgeType> {
        if !self.has_edge(u, v) {
            return None;
        }
        match &self.edge_types {
            Some(types) => types.get(&ordered(u, v)).copied(),
            None => Some(EdgeType::Plain),
        }
    }

    /// Spanning subgraph keeping only edges with the given label.
    pub fn edges_of_type(&self, label: EdgeType) -> Graph {
        let mut out = Graph::new(self.n);
        for (u, v) in self.edges() {
            if self.edge_type(u, v) == Some(label) {
                out.add_edge(u, v);
            }
        }
        out
    }

    /// Drops all edge labels.
    pub fn unlabeled(&self) -> Graph {
        Graph { edge_types: None, ..self.clone() }
    }

    /// Breadth-first distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        self.bfs(src, usize::MAX).0
    }

    /// BFS up to depth `limit`; returns (distances, parents).
    fn bfs(&self, src: usize, limit: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut dist = vec![None; self.n];
        let mut parent = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == limit {
                continue;
            }
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// Distance between two vertices, `None` if they lie in different components.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    /// BFS spanning tree of the component of `root`: `parent[root] = None`,
    /// and unreachable vertices also map to `None`.
    pub fn spanning_tree(&self, root: usize) -> Result<Vec<Option<usize>>> {
        self.check_vertex(root)?;
        Ok(self.bfs(root, usize::MAX).1)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let dist = self.distances_from(s);
            let comp: Vec<usize> = (0..self.n).filter(|&v| dist[v].is_some()).collect();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n {
            for d in self.distances_from(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Induced subgraph on `vertices` (in the given order). Labels are kept.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut out = Graph::new(vertices.len());
        if self.is_labeled() {
            out.edge_types = Some(BTreeMap::new());
        }
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX && i < j {
                    match self.edge_type(v, w) {
                        Some(t) if self.is_labeled() => out.add_labeled_edge(i, j, t),
                        _ => out.add_edge(i, j),
                    }
                }
            }
        }
        out
    }

    /// Deletes `removed` and returns the survivor graph together with the
    /// map from new indices to old ones.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        (self.induced_subgraph(&keep), keep)
    }

    /// Subgraph induced by all vertices within distance `r` of `v`, with the
    /// map from ball indices to host indices (sorted ascending).
    pub fn ball(&self, v: usize, r: usize) -> Result<(Graph, Vec<usize>)> {
        self.check_vertex(v)?;
        let (dist, _) = self.bfs(v, r);
        let members: Vec<usize> = (0..self.n).filter(|&w| dist[w].is_some()).collect();
        Ok((self.induced_subgraph(&members), members))
    }

    /// Complements every pair between `s` and its complement.
    pub fn switch_set(&self, s: &[usize]) -> Result<Graph> {
        let mut mask = vec![false; self.n];
        for &v in s {
            self.check_vertex(v)?;
            mask[v] = true;
        }
        Ok(self.switch_mask(&mask))
    }

    /// [`Graph::switch_set`] with the subset given as a membership mask.
    pub fn switch_mask(&self, mask: &[bool]) -> Graph {
        assert_eq!(mask.len(), self.n);
        let mut out = self.clone();
        for u in 0..self.n {
            if !mask[u] {
                continue;
            }
            for (v, &inside) in mask.iter().enumerate() {
                if inside || u == v {
                    continue;
                }
                if self.has_edge(u, v) {
                    out.remove_edge(u, v);
                } else {
                    out.add_edge(u, v);
                }
            }
        }
        out
    }

    /// Replaces each edge carrying `selector` by a path with `length` edges.
    /// Unlabeled graphs treat every edge as `plain`. Fresh vertices are
    /// appended in the order of the sorted selected edges, numbered from the
    /// smaller endpoint outwards; path edges keep the selector label.
    pub fn subdivide_edges(&self, selector: EdgeType, length: usize) -> Result<Graph> {
        if length == 0 {
            return Err(Error::InvalidArgument("subdivision length must be ≥ 1".into()));
        }
        if length == 1 {
            return Ok(self.clone());
        }
        let selected: Vec<(usize, usize)> =
            self.edges().into_iter().filter(|&(u, v)| self.edge_type(u, v) == Some(selector)).collect();
        let n_new = self.n + selected.len() * (length - 1);
        let mut out = Graph::new(n_new);
        let labeled = self.is_labeled();
        if labeled {
            out.edge_types = Some(BTreeMap::new());
        }
        let push = |out: &mut Graph, a: usize, b: usize, t: EdgeType| {
            if labeled {
                out.add_labeled_edge(a, b, t);
            } else {
                out.add_edge(a, b);
            }
        };
        for (u, v) in self.edges() {
            let t = self.edge_type(u, v).unwrap();
            if t != selector {
                push(&mut out, u, v, t);
            }
        }
        let mut next = self.n;
        for (u, v) in selected {
            let mut prev = u;
            for _ in 1..length {
                push(&mut out, prev, next, selector);
                prev = next;
                next += 1;
            }
            push(&mut out, prev, v, selector);
        }
        Ok(out)
    }

    pub fn build_named(kind: NamedGraph, k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be ≥ 1".into()));
        }
        let mut g = Graph::new(k);
        match kind {
            NamedGraph::Complete => {
                for v in 1..k {
                    for u in 0..v {
                        g.add_edge(u, v);
                    }
                }
            }
            NamedGraph::Path => {
                for v in 1..k {
                    g.add_edge(v - 1, v);
                }
            }
            NamedGraph::Cycle => {
                if k < 3 {
                    return Err(Error::InvalidArgument("cycles need k ≥ 3".into()));
                }
                for v in 1..k {
                    g.add_edge(v - 1, v);
                }
                g.add_edge(k - 1, 0);
            }
            NamedGraph::Empty => {}
            NamedGraph::Star => {
                for v in 1..k {
                    g.add_edge(0, v);
                }
            }
        }
        Ok(g)
    }

    pub fn complete(k: usize) -> Graph {
        Graph::build_named(NamedGraph::Complete, k.max(1)).unwrap()
    }

    pub fn path(k: usize) -> Graph {
        Graph::build_named(NamedGraph::Path, k.max(1)).unwrap()
    }

    /// Disjoint union; part order is preserved in the vertex numbering.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let n = parts.iter().map(Graph::n).sum();
        let labeled = parts.iter().any(Graph::is_labeled);
        let mut out = Graph::new(n);
        if labeled {
            out.edge_types = Some(BTreeMap::new());
        }
        let mut offset = 0;
        for part in parts {
            for (u, v) in part.edges() {
                let t = part.edge_type(u, v).unwrap();
                if labeled {
                    out.add_labeled_edge(u + offset, v + offset, t);
                } else {
                    out.add_edge(u + offset, v + offset);
                }
            }
            offset += part.n;
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut out = Graph::new(self.n);
        for (u, v) in self.edges() {
            out.add_edge(perm[u], perm[v]);
        }
        out
    }

    /// Dense adjacency matrix.
    pub fn adjacency(&self) -> crate::linalg::SymMatrix {
        let mut m = crate::linalg::SymMatrix::zeros(self.n);
        for (u, v) in self.edges() {
            m.set(u, v, 1.0);
            m.set(v, u, 1.0);
        }
        m
    }

    /// Checks the labeling invariant: labels cover exactly the edge set.
    pub fn labels_consistent(&self) -> bool {
        match &self.edge_types {
            None => true,
            Some(types) => {
                let edges = self.edges();
                edges.len() == types.len() && edges.iter().all(|e| types.contains_key(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::complete(3)
    }

    #[test]
    fn named_graphs() {
        let k3 = Graph::build_named(NamedGraph::Complete, 3).unwrap();
        assert_eq!(k3.edge_count(), 3);
        let p1 = Graph::build_named(NamedGraph::Path, 1).unwrap();
        assert_eq!((p1.n(), p1.edge_count()), (1, 0));
        let p3 = Graph::build_named(NamedGraph::Path, 3).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::build_named(NamedGraph::Complete, 7).unwrap().edge_count(), 21);
        assert!(Graph::build_named(NamedGraph::Empty, 0).is_err());
        assert!("wheel".parse::<NamedGraph>().is_err());
    }

    #[test]
    fn unions() {
        let u = Graph::disjoint_union(&[triangle(), triangle()]);
        assert_eq!((u.n(), u.edge_count(), u.components().len()), (6, 6, 2));
        assert_eq!(Graph::disjoint_union(&[]).n(), 0);
        let e1 = Graph::build_named(NamedGraph::Empty, 1).unwrap();
        let u = Graph::disjoint_union(&[triangle(), triangle(), e1]);
        assert_eq!((u.n(), u.edge_count(), u.components().len()), (7, 6, 3));
        assert!(!u.has_edge(2, 3));
    }

    #[test]
    fn subdivision() {
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(e.subdivide_edges(EdgeType::Plain, 1).unwrap(), e);
        let p = e.subdivide_edges(EdgeType::Plain, 3).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.edges(), vec![(0, 2), (1, 3), (2, 3)]);
        assert_eq!(p.max_degree(), 2);
        assert!(p.is_connected());
        assert!(e.subdivide_edges(EdgeType::Plain, 0).is_err());
        assert!("type_iii".parse::<EdgeType>().is_err());
        // no type_ii edges in an unlabeled graph
        assert_eq!(e.subdivide_edges(EdgeType::TypeIi, 4).unwrap(), e);
    }

    #[test]
    fn labeled_subdivision_keeps_labels() {
        let mut g = Graph::new(3);
        g.add_labeled_edge(0, 1, EdgeType::TypeI);
        g.add_labeled_edge(1, 2, EdgeType::TypeIi);
        let h = g.subdivide_edges(EdgeType::TypeIi, 3).unwrap();
        assert_eq!(h.n(), 5);
        assert!(h.labels_consistent());
        assert_eq!(h.edge_type(0, 1), Some(EdgeType::TypeI));
        assert_eq!(h.edge_type(1, 3), Some(EdgeType::TypeIi));
        assert_eq!(h.edge_type(4, 2), Some(EdgeType::TypeIi));
    }

    #[test]
    fn balls() {
        let p5 = Graph::path(5);
        let (b, map) = p5.ball(2, 1).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(b, Graph::path(3));
        assert_eq!(p5.ball(4, 0).unwrap().0.n(), 1);
        assert_eq!(triangle().ball(1, 1).unwrap().0, triangle());
        assert!(p5.ball(5, 1).is_err());
    }

    #[test]
    fn switching() {
        let t = triangle();
        assert_eq!(t.switch_set(&[]).unwrap(), t);
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(e.switch_set(&[0]).unwrap().edge_count(), 0);
        let s = t.switch_set(&[0]).unwrap();
        assert_eq!(s.edges(), vec![(1, 2)]);
        assert_eq!(t.switch_set(&[0, 1, 2]).unwrap(), t);
        assert!(t.switch_set(&[3]).is_err());
    }

    #[test]
    fn traversal_plumbing() {
        let p3 = Graph::path(3);
        assert!(p3.is_connected());
        assert_eq!(p3.max_degree(), 2);
        assert_eq!(p3.components().len(), 1);
        assert_eq!(p3.spanning_tree(0).unwrap(), vec![None, Some(0), Some(1)]);
        let edges: Vec<Graph> = (0..4).map(|_| Graph::path(2)).collect();
        assert_eq!(Graph::disjoint_union(&edges).components().len(), 4);
        assert_eq!(Graph::new(0).components().len(), 0);
        assert_eq!(Graph::path(6).diameter(), Some(5));
    }

    #[test]
    fn upper_mask_order() {
        // bits: (0,1) (0,2) (1,2)
        let g = Graph::from_upper_mask(3, 0b101);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_bad_edge_lists() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn wide_bitsets() {
        let g = Graph::path(200);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert_eq!(g.edge_count(), 199);
    }
}
