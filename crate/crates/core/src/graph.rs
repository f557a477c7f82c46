//! Undirected simple graphs over dense vertex indices.
//!
//! Every [`Graph`] stores its vertices as the dense range `0..n` together with
//! a strictly ascending list of external labels. Deleting vertices produces a
//! new graph whose surviving vertices keep their labels, so labels are the
//! stable identifiers across a reduction sequence while indices are only
//! meaningful relative to one graph value.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::error::GraphError;

/// Dense vertex index, valid for one particular [`Graph`].
pub type Vertex = usize;

/// External vertex identifier, preserved by [`Graph::remove_vertices`].
pub type Label = u32;

/// A sorted, duplicate-free collection of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Builds a set from an already strictly ascending vector.
    ///
    /// Panics if the input is not strictly ascending.
    pub fn from_sorted(vertices: Vec<Vertex>) -> Self {
        assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "vertex list is not strictly ascending"
        );
        Self(vertices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

/// Connected components, ordered by their smallest vertex.
pub type ComponentList = Vec<VertexSet>;

/// An immutable undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<Vec<Vertex>>,
    num_edges: usize,
}

impl Graph {
    /// The graph with `n` isolated vertices labelled `0..n`.
    pub fn empty(n: usize) -> Self {
        Self {
            labels: (0..n as Label).collect(),
            adj: vec![Vec::new(); n],
            num_edges: 0,
        }
    }

    /// Builds a graph on `0..n` (labels equal to indices).
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::with_labels((0..n as Label).collect(), edges)
    }

    /// Builds a graph whose vertex `i` carries `labels[i]`.
    ///
    /// Labels must be strictly ascending. Self-loops, duplicate edges and
    /// endpoints outside `0..labels.len()` are rejected.
    pub fn with_labels(labels: Vec<Label>, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if let Some(w) = labels.windows(2).find(|w| w[0] >= w[1]) {
            return Err(GraphError::UnsortedLabels(w[0], w[1]));
        }
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u.max(v), n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            labels,
            adj,
            num_edges: edges.len(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, label: Label) -> Option<Vertex> {
        self.labels.binary_search(&label).ok()
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<Label> {
        set.iter().map(|v| self.labels[v]).collect()
    }

    fn check_subset(&self, x: &VertexSet) -> Result<(), GraphError> {
        match x.as_slice().last() {
            Some(&v) if v >= self.num_vertices() => {
                Err(GraphError::VertexOutOfRange(v, self.num_vertices()))
            }
            _ => Ok(()),
        }
    }

    /// Partition of the vertex set into connected components, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> ComponentList {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp.into());
        }
        out
    }

    /// `G - x`. Survivors keep their labels; indices are renumbered densely in
    /// ascending order.
    pub fn remove_vertices(&self, x: &VertexSet) -> Result<Graph, GraphError> {
        self.check_subset(x)?;
        let n = self.num_vertices();
        let mut new_index = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n - x.len());
        for v in 0..n {
            if !x.contains(v) {
                new_index[v] = labels.len();
                labels.push(self.labels[v]);
            }
        }
        let mut adj = vec![Vec::new(); labels.len()];
        let mut num_edges = 0;
        for v in 0..n {
            let nv = new_index[v];
            if nv == usize::MAX {
                continue;
            }
            for &w in &self.adj[v] {
                let nw = new_index[w];
                if nw != usize::MAX {
                    adj[nv].push(nw);
                    if nv < nw {
                        num_edges += 1;
                    }
                }
            }
        }
        Ok(Graph {
            labels,
            adj,
            num_edges,
        })
    }

    /// `G[x]`, with labels carried over.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph, GraphError> {
        self.check_subset(x)?;
        let complement: VertexSet = self.vertices().filter(|&v| !x.contains(v)).collect();
        self.remove_vertices(&complement)
    }

    /// `N(x)`: vertices outside `x` with a neighbor in `x`.
    pub fn neighborhood(&self, x: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_subset(x)?;
        Ok(x
            .iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&w| !x.contains(w))
            .collect())
    }

    /// Whether `G[x]` is connected. The empty set is not connected.
    pub fn is_connected_set(&self, x: &[Vertex]) -> bool {
        let Some(&start) = x.first() else {
            return false;
        };
        let mut reached = vec![start];
        let mut i = 0;
        while i < reached.len() {
            let u = reached[i];
            i += 1;
            for &w in x {
                if !reached.contains(&w) && self.has_edge(u, w) {
                    reached.push(w);
                }
            }
        }
        reached.len() == x.len()
    }

    /// Every vertex set of exactly `size` vertices inducing a connected
    /// subgraph, each once, in ascending lexicographic order.
    pub fn connected_sets(&self, size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.for_each_connected_set(size, |_| false, |set| {
            out.push(VertexSet::from(set.to_vec()));
            ControlFlow::Continue(())
        });
        out.sort_unstable();
        out
    }

    /// Visits every connected vertex set of exactly `size` vertices.
    ///
    /// Each set is grown from its smallest vertex (the anchor) by only adding
    /// larger vertices from the exclusive neighborhood of the partial set, so
    /// every set is produced exactly once without deduplication.
    ///
    /// `prune` is called on every partial set before it is extended; returning
    /// `true` skips the partial set and all its supersets, so it must be
    /// monotone under inclusion. `visit` receives the members in insertion
    /// order and may stop the walk early.
    pub fn for_each_connected_set<P, F>(&self, size: usize, mut prune: P, mut visit: F)
    where
        P: FnMut(&[Vertex]) -> bool,
        F: FnMut(&[Vertex]) -> ControlFlow<()>,
    {
        if size == 0 {
            return;
        }
        let mut walk = SetWalk {
            graph: self,
            size,
            members: Vec::with_capacity(size),
        };
        for anchor in self.vertices() {
            walk.members.push(anchor);
            let flow = if prune(&walk.members) {
                ControlFlow::Continue(())
            } else {
                let ext: Vec<Vertex> = self.adj[anchor].iter().copied().filter(|&w| w > anchor).collect();
                walk.extend(anchor, ext, &mut prune, &mut visit)
            };
            walk.members.pop();
            if flow.is_break() {
                return;
            }
        }
    }
}

struct SetWalk<'g> {
    graph: &'g Graph,
    size: usize,
    members: Vec<Vertex>,
}

impl SetWalk<'_> {
    fn extend<P, F>(
        &mut self,
        anchor: Vertex,
        mut ext: Vec<Vertex>,
        prune: &mut P,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        P: FnMut(&[Vertex]) -> bool,
        F: FnMut(&[Vertex]) -> ControlFlow<()>,
    {
        if self.members.len() == self.size {
            return visit(&self.members);
        }
        // Consume the extension set in ascending order.
        ext.sort_unstable();
        ext.reverse();
        while let Some(w) = ext.pop() {
            let g = self.graph;
            let mut next_ext = ext.clone();
            for &u in g.neighbors(w) {
                if u > anchor
                    && !self.members.contains(&u)
                    && !self.members.iter().any(|&s| g.has_edge(s, u))
                    && !next_ext.contains(&u)
                {
                    next_ext.push(u);
                }
            }
            self.members.push(w);
            let flow = if prune(&self.members) {
                ControlFlow::Continue(())
            } else {
                self.extend(anchor, next_ext, prune, visit)
            };
            self.members.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}
