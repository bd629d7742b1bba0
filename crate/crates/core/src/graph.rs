//! Finite simple graphs: components, bridges, chordless cycles, the cycle
//! core, and reduced (non-backtracking) paths as elements of the
//! fundamental groupoid.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Default cap on the number of chordless cycles enumerated.
pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// An undirected simple graph on opaque `usize` vertex ids.
///
/// Adjacency is kept in ordered sets so every traversal is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        Graph {
            adj: vertices.into_iter().map(|v| (v, VertexSet::new())).collect(),
        }
    }

    pub fn from_edges<I, E>(vertices: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::with_vertices(vertices);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Adds the edge `u`-`v`. Both endpoints must already be vertices and
    /// loops are rejected. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {u}")));
        }
        if !self.contains(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// The induced subgraph on `set ∩ V(self)`.
    pub fn induced(&self, set: &VertexSet) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| set.contains(v))
            .map(|(&v, n)| (v, n.intersection(set).copied().collect()))
            .collect();
        Graph { adj }
    }

    fn component_of(&self, v: Vertex) -> VertexSet {
        let mut seen = VertexSet::new();
        let mut queue = VecDeque::from([v]);
        seen.insert(v);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connected components, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if !seen.contains(&v) {
                let c = self.component_of(v);
                seen.extend(c.iter().copied());
                out.push(c);
            }
        }
        out
    }

    /// Connected and non-empty.
    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => false,
            Some(v) => self.component_of(v).len() == self.vertex_count(),
        }
    }

    /// True iff some edge lies outside a spanning forest.
    pub fn has_cycle(&self) -> bool {
        self.edge_count() + self.components().len() > self.vertex_count()
    }

    /// All bridges as `(u, v)` with `u < v`.
    pub fn bridges(&self) -> BTreeSet<(Vertex, Vertex)> {
        // Iterative low-link DFS.
        let mut disc: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut low: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut out = BTreeSet::new();
        let mut time = 0;
        for root in self.vertices() {
            if disc.contains_key(&root) {
                continue;
            }
            // (vertex, parent, neighbour list, next index)
            let mut stack: Vec<(Vertex, Option<Vertex>, Vec<Vertex>, usize)> = Vec::new();
            disc.insert(root, time);
            low.insert(root, time);
            time += 1;
            stack.push((root, None, self.neighbors(root).collect(), 0));
            while let Some(frame) = stack.last_mut() {
                let (v, parent) = (frame.0, frame.1);
                if frame.3 < frame.2.len() {
                    let w = frame.2[frame.3];
                    frame.3 += 1;
                    if Some(w) == parent {
                        continue;
                    }
                    if let Some(&dw) = disc.get(&w) {
                        let lv = low[&v].min(dw);
                        low.insert(v, lv);
                    } else {
                        disc.insert(w, time);
                        low.insert(w, time);
                        time += 1;
                        stack.push((w, Some(v), self.neighbors(w).collect(), 0));
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent {
                        let lv = low[&v];
                        let lp = low[&p].min(lv);
                        low.insert(p, lp);
                        if lv > disc[&p] {
                            out.insert((p.min(v), p.max(v)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Breadth-first spanning tree of the component of `root`, as a parent map.
    /// Neighbours are visited in increasing order, which fixes the tree.
    pub fn bfs_tree(&self, root: Vertex) -> Result<BTreeMap<Vertex, Vertex>> {
        if !self.contains(root) {
            return Err(Error::UnknownVertex(root));
        }
        let mut parent = BTreeMap::new();
        let mut seen = VertexSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if seen.insert(w) {
                    parent.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        Ok(parent)
    }

    /// A shortest path from `from` to any vertex of `targets`, avoiding the
    /// vertices in `avoid`. Ties go to the lexicographically first BFS route.
    pub fn shortest_path_to_set(&self, from: Vertex, targets: &VertexSet, avoid: &VertexSet) -> Option<Vec<Vertex>> {
        if !self.contains(from) || avoid.contains(&from) {
            return None;
        }
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut seen = VertexSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if targets.contains(&u) {
                let mut path = vec![u];
                let mut cur = u;
                while let Some(&p) = parent.get(&cur) {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for w in self.neighbors(u) {
                if !avoid.contains(&w) && seen.insert(w) {
                    parent.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Vertex set of the connected component containing `v`.
pub fn connected_component(g: &Graph, v: Vertex) -> Result<VertexSet> {
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    Ok(g.component_of(v))
}

/// A chordless cycle, stored without repeating the first vertex.
///
/// The stored rotation starts at the smallest vertex and runs in the
/// direction whose second vertex is smaller, so equal cycles compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    /// Canonicalizes a closed vertex sequence (first vertex not repeated).
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Precondition(format!("cycle of length {n} < 3")));
        }
        let distinct: VertexSet = vertices.iter().copied().collect();
        if distinct.len() != n {
            return Err(Error::Precondition("cycle repeats a vertex".into()));
        }
        let start = (0..n).min_by_key(|&i| vertices[i]).unwrap();
        vertices.rotate_left(start);
        if vertices[n - 1] < vertices[1] {
            vertices[1..].reverse();
        }
        Ok(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// The closed path starting and ending at `at`, following the stored
    /// orientation.
    pub fn closed_path_from(&self, at: Vertex) -> Option<ReducedPath> {
        let i = self.vertices.iter().position(|&v| v == at)?;
        let n = self.vertices.len();
        let walk = (0..=n).map(|k| self.vertices[(i + k) % n]).collect();
        Some(ReducedPath { vertices: walk })
    }
}

/// Every chordless cycle of `g`, each exactly once, in canonical form.
pub fn chordless_cycles(g: &Graph) -> Result<Vec<Cycle>> {
    chordless_cycles_capped(g, DEFAULT_CYCLE_CAP)
}

pub fn chordless_cycles_capped(g: &Graph, cap: usize) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    for start in g.vertices() {
        for first in g.neighbors(start).filter(|&w| w > start) {
            let mut path = vec![start, first];
            extend_chordless(g, &mut path, &mut out, cap)?;
        }
    }
    out.sort();
    Ok(out)
}

// `path` is an induced path whose first vertex is the smallest of any cycle
// it can close into. Each cycle is reported once: when its last vertex is
// larger than its second.
fn extend_chordless(g: &Graph, path: &mut Vec<Vertex>, out: &mut Vec<Cycle>, cap: usize) -> Result<()> {
    let start = path[0];
    let last = *path.last().unwrap();
    let candidates: Vec<Vertex> = g.neighbors(last).filter(|&w| w > start).collect();
    for w in candidates {
        if path.contains(&w) {
            continue;
        }
        let inner = &path[1..path.len() - 1];
        if inner.iter().any(|&p| g.adjacent(p, w)) {
            continue;
        }
        if g.adjacent(start, w) {
            if path.len() >= 2 && w > path[1] {
                let mut cyc = path.clone();
                cyc.push(w);
                out.push(Cycle::new(cyc)?);
                if out.len() > cap {
                    return Err(Error::CycleCap { cap });
                }
            }
            continue;
        }
        path.push(w);
        extend_chordless(g, path, out, cap)?;
        path.pop();
    }
    Ok(())
}

/// Whether `set` is a pre-cycle core: its induced subgraph is connected and
/// contains every cycle of `g`.
///
/// A cycle is a union of non-bridge edges and every non-bridge edge lies on
/// a chordless cycle, so containing all cycles is the same as containing
/// both endpoints of every non-bridge edge.
pub fn is_pre_cycle_core(g: &Graph, set: &VertexSet) -> bool {
    if !set.iter().all(|&v| g.contains(v)) {
        return false;
    }
    if !g.induced(set).is_connected() {
        return false;
    }
    let bridges = g.bridges();
    g.edges()
        .filter(|e| !bridges.contains(e))
        .all(|(u, v)| set.contains(&u) && set.contains(&v))
}

/// The cycle core: the unique minimal pre-cycle core of a connected graph
/// that contains a cycle.
///
/// Contracts the 2-edge-connected components to get the bridge tree, marks
/// the components carrying a cycle, and keeps the smallest subtree that
/// spans the marked ones.
pub fn cycle_core(g: &Graph) -> Result<VertexSet> {
    if !g.is_connected() {
        return Err(Error::Precondition(format!(
            "cycle core needs a connected graph; this one has {} components",
            g.components().len()
        )));
    }
    if !g.has_cycle() {
        return Err(Error::Precondition(
            "cycle core needs a graph with a cycle; this one is a tree".into(),
        ));
    }
    let bridges = g.bridges();
    let mut two_edge = g.clone();
    for &(u, v) in &bridges {
        two_edge.adj.get_mut(&u).unwrap().remove(&v);
        two_edge.adj.get_mut(&v).unwrap().remove(&u);
    }
    let blocks = two_edge.components();
    let block_of: BTreeMap<Vertex, usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |&v| (v, i)))
        .collect();

    let mut tree = Graph::with_vertices(0..blocks.len());
    for &(u, v) in &bridges {
        tree.add_edge(block_of[&u], block_of[&v])?;
    }
    // A 2-edge-connected block with more than one vertex carries a cycle.
    let marked: VertexSet = (0..blocks.len()).filter(|&i| blocks[i].len() > 1).collect();

    let mut alive = tree.vertex_set();
    let mut leaves: Vec<Vertex> = alive
        .iter()
        .copied()
        .filter(|&b| tree.degree(b) <= 1 && !marked.contains(&b))
        .collect();
    let mut degree: BTreeMap<Vertex, usize> = alive.iter().map(|&b| (b, tree.degree(b))).collect();
    while let Some(b) = leaves.pop() {
        if !alive.remove(&b) {
            continue;
        }
        for n in tree.neighbors(b) {
            if alive.contains(&n) {
                let d = degree.get_mut(&n).unwrap();
                *d -= 1;
                if *d <= 1 && !marked.contains(&n) {
                    leaves.push(n);
                }
            }
        }
    }
    Ok(alive.iter().flat_map(|&b| blocks[b].iter().copied()).collect())
}

/// A non-backtracking path `(v0, v1, …, vn)`; `(v0)` is the identity at `v0`.
///
/// Each element of the fundamental groupoid of a graph has exactly one such
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedPath {
    vertices: Vec<Vertex>,
}

impl ReducedPath {
    pub fn identity(v: Vertex) -> Self {
        ReducedPath { vertices: vec![v] }
    }

    /// A path given by its vertex sequence, which must not backtrack or
    /// repeat a vertex consecutively. Adjacency is not checked.
    pub fn from_vertices(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPath);
        }
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::NotAdjacent(w[0], w[1]));
            }
        }
        if vertices.windows(3).any(|w| w[0] == w[2]) {
            return Err(Error::Precondition("path backtracks".into()));
        }
        Ok(ReducedPath { vertices })
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn inverse(&self) -> ReducedPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        ReducedPath { vertices }
    }

    /// Groupoid product `self · other` (traverse `self`, then `other`).
    pub fn compose(&self, other: &ReducedPath) -> Result<ReducedPath> {
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch {
                end: self.end(),
                start: other.start(),
            });
        }
        let mut out = self.vertices.clone();
        for &v in &other.vertices[1..] {
            push_reducing(&mut out, v);
        }
        Ok(ReducedPath { vertices: out })
    }

    /// `self^k` for a closed path; negative powers use the inverse.
    pub fn power(&self, k: i64) -> Result<ReducedPath> {
        if !self.is_closed() {
            return Err(Error::Precondition("power of a non-closed path".into()));
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = ReducedPath::identity(self.start());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

fn push_reducing(stack: &mut Vec<Vertex>, v: Vertex) {
    let n = stack.len();
    if n >= 2 && stack[n - 2] == v {
        stack.pop();
    } else {
        stack.push(v);
    }
}

/// Freely reduces a walk in `g` by cancelling backtracks `(a, b, a)`.
pub fn reduce_path(g: &Graph, walk: &[Vertex]) -> Result<ReducedPath> {
    let (&first, rest) = walk.split_first().ok_or(Error::EmptyPath)?;
    if !g.contains(first) {
        return Err(Error::UnknownVertex(first));
    }
    let mut prev = first;
    let mut out = vec![first];
    for &v in rest {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        if !g.adjacent(prev, v) {
            return Err(Error::NotAdjacent(prev, v));
        }
        push_reducing(&mut out, v);
        prev = v;
    }
    Ok(ReducedPath { vertices: out })
}

/// Signed number of times a closed path runs around `cycle` in the cycle's
/// stored orientation. Edges off the cycle are ignored.
pub fn winding_number(path: &ReducedPath, cycle: &[Vertex]) -> i64 {
    let n = cycle.len();
    let mut forward = 0i64;
    for (a, b) in path.edges() {
        for i in 0..n {
            let (u, v) = (cycle[i], cycle[(i + 1) % n]);
            if (a, b) == (u, v) {
                forward += 1;
            } else if (a, b) == (v, u) {
                forward -= 1;
            }
        }
    }
    forward / n as i64
}
