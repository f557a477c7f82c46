//! Maximum bipartite matching and crown extraction by alternating reachability.

use std::collections::VecDeque;

use crate::error::MatchingError;

/// A bipartite graph with sides `0..num_a` and `0..num_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    num_b: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(num_a: usize, num_b: usize) -> Self {
        Self {
            num_b,
            adj: vec![Vec::new(); num_a],
        }
    }

    /// Duplicate edges are merged.
    pub fn from_edges(num_a: usize, num_b: usize, edges: &[(usize, usize)]) -> Result<Self, MatchingError> {
        let mut bg = Self::new(num_a, num_b);
        for &(a, b) in edges {
            if a >= num_a || b >= num_b {
                return Err(MatchingError::EdgeOutOfRange(a, b));
            }
            bg.adj[a].push(b);
        }
        for list in &mut bg.adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(bg)
    }

    pub fn num_a(&self) -> usize {
        self.adj.len()
    }

    pub fn num_b(&self) -> usize {
        self.num_b
    }

    /// b-neighbors of `a`, ascending.
    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().map(move |&b| (a, b)))
    }
}

/// A matching stored from both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate_a: Vec<Option<usize>>,
    mate_b: Vec<Option<usize>>,
}

impl Matching {
    fn empty(num_a: usize, num_b: usize) -> Self {
        Self {
            mate_a: vec![None; num_a],
            mate_b: vec![None; num_b],
        }
    }

    pub fn len(&self) -> usize {
        self.mate_a.iter().filter(|m| m.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mate_of_a(&self, a: usize) -> Option<usize> {
        self.mate_a[a]
    }

    pub fn mate_of_b(&self, b: usize) -> Option<usize> {
        self.mate_b[b]
    }

    /// Matched pairs `(a, b)` in ascending order of `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate_a
            .iter()
            .enumerate()
            .filter_map(|(a, m)| m.map(|b| (a, b)))
    }

    /// Every pair is an edge and both mate arrays agree.
    pub fn is_valid_for(&self, bg: &BipartiteGraph) -> bool {
        self.mate_a.len() == bg.num_a()
            && self.mate_b.len() == bg.num_b()
            && self
                .pairs()
                .all(|(a, b)| bg.has_edge(a, b) && self.mate_b[b] == Some(a))
            && self
                .mate_b
                .iter()
                .enumerate()
                .all(|(b, m)| m.is_none_or(|a| self.mate_a[a] == Some(b)))
    }
}

/// Hopcroft-Karp. BFS layers and DFS augmentations visit vertices in
/// ascending order, so the result is a deterministic function of the input.
pub fn max_matching(bg: &BipartiteGraph) -> Matching {
    let num_a = bg.num_a();
    let mut m = Matching::empty(num_a, bg.num_b());
    let mut dist = vec![usize::MAX; num_a];
    loop {
        // Layered BFS from free a-vertices.
        let mut queue = VecDeque::new();
        for a in 0..num_a {
            if m.mate_a[a].is_none() {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = usize::MAX;
            }
        }
        let mut found_free_b = false;
        while let Some(a) = queue.pop_front() {
            for &b in bg.neighbors(a) {
                match m.mate_b[b] {
                    None => found_free_b = true,
                    Some(a2) if dist[a2] == usize::MAX => {
                        dist[a2] = dist[a] + 1;
                        queue.push_back(a2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found_free_b {
            break;
        }
        let mut augmented = false;
        for a in 0..num_a {
            if m.mate_a[a].is_none() && augment(bg, &mut m, &mut dist, a) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    m
}

fn augment(bg: &BipartiteGraph, m: &mut Matching, dist: &mut [usize], a: usize) -> bool {
    let d = dist[a];
    dist[a] = usize::MAX;
    for &b in bg.neighbors(a) {
        let ok = match m.mate_b[b] {
            None => true,
            Some(a2) => dist[a2] != usize::MAX && dist[a2] == d + 1 && augment(bg, m, dist, a2),
        };
        if ok {
            m.mate_a[a] = Some(b);
            m.mate_b[b] = Some(a);
            return true;
        }
    }
    false
}

/// A crown `(I, J)` of a bipartite graph: `N(I) ⊆ J` and `J` is matched into `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcCrown {
    /// a-vertices, ascending.
    pub i_side: Vec<usize>,
    /// b-vertices, ascending.
    pub j_side: Vec<usize>,
    /// `(b, a)` pairs, one per element of `j_side`, ascending in `b`.
    pub witness: Vec<(usize, usize)>,
}

impl VcCrown {
    /// Checks the crown properties against `bg`, including strictness
    /// (`|I| > |J|`).
    pub fn is_valid_for(&self, bg: &BipartiteGraph) -> bool {
        let in_i = membership(bg.num_a(), &self.i_side);
        let in_j = membership(bg.num_b(), &self.j_side);
        let (Some(in_i), Some(in_j)) = (in_i, in_j) else {
            return false;
        };
        if self.i_side.is_empty() || self.i_side.len() <= self.j_side.len() {
            return false;
        }
        let closed = self
            .i_side
            .iter()
            .all(|&a| bg.neighbors(a).iter().all(|&b| in_j[b]));
        let mut used_a = vec![false; bg.num_a()];
        let saturates = self.witness.len() == self.j_side.len()
            && self
                .witness
                .iter()
                .zip(&self.j_side)
                .all(|(&(b, a), &jb)| {
                    let fresh = a < used_a.len() && !used_a[a];
                    if fresh {
                        used_a[a] = true;
                    }
                    b == jb && fresh && in_i[a] && bg.has_edge(a, b)
                });
        closed && saturates
    }
}

fn membership(n: usize, members: &[usize]) -> Option<Vec<bool>> {
    let mut flags = vec![false; n];
    for &x in members {
        if x >= n || flags[x] {
            return None;
        }
        flags[x] = true;
    }
    Some(flags)
}

/// Finds a strict crown from a maximum matching, or `None` when the matching
/// saturates side a.
///
/// Starting from the unsaturated a-vertices `Z`, walks alternating paths
/// (non-matching edges a→b, matching edges b→a). The reached a-vertices form
/// `I`, the reached b-vertices form `J`, and the matching restricted to `J`
/// is the witness.
pub fn find_vc_crown(bg: &BipartiteGraph) -> Option<VcCrown> {
    let m = max_matching(bg);
    find_vc_crown_with(bg, &m)
}

/// As [`find_vc_crown`], reusing a maximum matching that was already computed.
pub fn find_vc_crown_with(bg: &BipartiteGraph, m: &Matching) -> Option<VcCrown> {
    let mut reach_a = vec![false; bg.num_a()];
    let mut reach_b = vec![false; bg.num_b()];
    let mut queue: VecDeque<usize> = (0..bg.num_a()).filter(|&a| m.mate_of_a(a).is_none()).collect();
    if queue.is_empty() {
        return None;
    }
    for &a in &queue {
        reach_a[a] = true;
    }
    while let Some(a) = queue.pop_front() {
        for &b in bg.neighbors(a) {
            if reach_b[b] || m.mate_of_a(a) == Some(b) {
                continue;
            }
            reach_b[b] = true;
            // A reached free b would be an augmenting path.
            let a2 = m
                .mate_of_b(b)
                .expect("alternating path reached an unsaturated b-vertex; matching is not maximum");
            if !reach_a[a2] {
                reach_a[a2] = true;
                queue.push_back(a2);
            }
        }
    }
    let i_side: Vec<usize> = (0..bg.num_a()).filter(|&a| reach_a[a]).collect();
    let j_side: Vec<usize> = (0..bg.num_b()).filter(|&b| reach_b[b]).collect();
    let witness = j_side
        .iter()
        .map(|&b| (b, m.mate_of_b(b).expect("reached b-vertices are saturated")))
        .collect();
    Some(VcCrown {
        i_side,
        j_side,
        witness,
    })
}
