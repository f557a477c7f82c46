//! Crown decompositions for exact component order and their LP-guided search.

use thiserror::Error;

use crate::error::KernelError;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::lp::{
    build_wecoc_lp, classify_vertices, solve_lp_exact, solve_wecoc_lazy, Classification, CoveringLp,
    LpSolution,
};
use crate::matching::{find_vc_crown, BipartiteGraph};
use crate::Rational;

use super::{rule1_size_check, Instance, LpMode};

/// A partition `(I, J, R)` of the vertex set where every component of `G[I]`
/// has exactly `l` vertices, `N(I) ⊆ J`, and each vertex of `J` is matched to
/// a distinct adjacent component of `G[I]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcocCrown {
    pub i_set: VertexSet,
    pub j_set: VertexSet,
    pub r_set: VertexSet,
    /// `(j, component)` pairs in ascending order of `j`.
    pub component_matching: Vec<(Vertex, VertexSet)>,
}

impl EcocCrown {
    /// Number of components of `G[I]`, assuming the crown is valid.
    pub fn num_components(&self, l: usize) -> usize {
        self.i_set.len() / l
    }
}

/// The first crown property found to fail.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrownViolation {
    #[error("I, J and R do not partition the vertex set")]
    NotAPartition,
    #[error("I is empty")]
    EmptyI,
    #[error("component of G[I] starting at vertex {first} has {size} vertices, expected {expected}")]
    ComponentSize { first: Vertex, size: usize, expected: usize },
    #[error("edge {0}-{1} joins I and R")]
    EdgeToRest(Vertex, Vertex),
    #[error("vertex {0} of J is not matched exactly once")]
    Unmatched(Vertex),
    #[error("matching entry for {0} is not a component of G[I]")]
    NotAComponent(Vertex),
    #[error("two vertices of J are matched to the component containing {0}")]
    NotInjective(Vertex),
    #[error("vertex {0} of J is not adjacent to its matched component")]
    NotAdjacent(Vertex),
}

/// Checks every crown property of `crown` against `g` and `l`.
pub fn check_ecoc_crown(g: &Graph, crown: &EcocCrown, l: usize) -> Result<(), CrownViolation> {
    let n = g.num_vertices();
    let mut owner = vec![0u8; n];
    for (tag, set) in [(1u8, &crown.i_set), (2, &crown.j_set), (3, &crown.r_set)] {
        for v in set.iter() {
            if v >= n || owner[v] != 0 {
                return Err(CrownViolation::NotAPartition);
            }
            owner[v] = tag;
        }
    }
    if owner.contains(&0) {
        return Err(CrownViolation::NotAPartition);
    }
    if crown.i_set.is_empty() {
        return Err(CrownViolation::EmptyI);
    }
    for u in crown.i_set.iter() {
        if let Some(&r) = g.neighbors(u).iter().find(|&&w| owner[w] == 3) {
            return Err(CrownViolation::EdgeToRest(u, r));
        }
    }
    let components = components_within(g, &crown.i_set);
    if let Some(c) = components.iter().find(|c| c.len() != l) {
        return Err(CrownViolation::ComponentSize {
            first: c.first().unwrap_or_default(),
            size: c.len(),
            expected: l,
        });
    }
    let mut used = vec![false; components.len()];
    let mut matched_j = Vec::with_capacity(crown.component_matching.len());
    for (j, comp) in &crown.component_matching {
        let Some(idx) = components.iter().position(|c| c == comp) else {
            return Err(CrownViolation::NotAComponent(*j));
        };
        if used[idx] {
            return Err(CrownViolation::NotInjective(comp.first().unwrap_or_default()));
        }
        used[idx] = true;
        if *j >= n || !comp.iter().any(|u| g.has_edge(*j, u)) {
            return Err(CrownViolation::NotAdjacent(*j));
        }
        matched_j.push(*j);
    }
    matched_j.sort_unstable();
    for j in crown.j_set.iter() {
        if matched_j.binary_search(&j).is_err() {
            return Err(CrownViolation::Unmatched(j));
        }
    }
    if let Some(w) = matched_j.windows(2).find(|w| w[0] == w[1]) {
        return Err(CrownViolation::Unmatched(w[0]));
    }
    if matched_j.len() != crown.j_set.len() {
        let stray = matched_j.iter().find(|&&j| !crown.j_set.contains(j));
        return Err(CrownViolation::Unmatched(stray.copied().unwrap_or_default()));
    }
    Ok(())
}

pub fn validate_ecoc_crown(g: &Graph, crown: &EcocCrown, l: usize) -> bool {
    check_ecoc_crown(g, crown, l).is_ok()
}

/// Components of `G[x]` expressed in the indices of `g`.
pub(crate) fn components_within(g: &Graph, x: &VertexSet) -> Vec<VertexSet> {
    let sub = g
        .induced_subgraph(x)
        .expect("subset of the vertex set");
    let members = x.as_slice();
    sub.connected_components()
        .into_iter()
        .map(|c| c.iter().map(|i| members[i]).collect())
        .collect()
}

/// `(G - (I ∪ J), k - |J|)` after validating the crown.
pub fn apply_crown(inst: &Instance, crown: &EcocCrown) -> Result<Instance, KernelError> {
    check_ecoc_crown(&inst.graph, crown, inst.l)?;
    let removed = crown.i_set.union(&crown.j_set);
    Ok(Instance {
        graph: inst.graph.remove_vertices(&removed)?,
        k: inst.k - crown.j_set.len() as i64,
        l: inst.l,
    })
}

/// Everything computed by one LP-guided crown search.
#[derive(Clone, Debug)]
pub struct CrownSearch {
    /// The LP whose optimum was computed. With lazy generation this holds
    /// only the generated constraints.
    pub lp: CoveringLp,
    pub solution: LpSolution<Rational>,
    pub classification: Classification,
    pub crown: Option<EcocCrown>,
}

/// Solves the covering LP, classifies vertices, and extracts a crown from
/// the size-`l` components of `G[A]` against `B`.
///
/// Requires that Rules 1–3 do not apply, which is what makes a `None`
/// answer a proof that the instance is a no-instance.
pub fn search_crown(inst: &Instance, mode: LpMode) -> Result<CrownSearch, KernelError> {
    if rule1_size_check(inst) {
        return Err(KernelError::Precondition("instance is already within the size bound"));
    }
    if inst
        .graph
        .connected_components()
        .iter()
        .any(|c| c.len() <= inst.l)
    {
        return Err(KernelError::Precondition("a component has at most l vertices"));
    }
    let (lp, solution) = match mode {
        LpMode::Eager => {
            let lp = build_wecoc_lp(&inst.graph, inst.l);
            let sol = solve_lp_exact(&lp);
            (lp, sol)
        }
        LpMode::Lazy => {
            let lazy = solve_wecoc_lazy(&inst.graph, inst.l);
            (lazy.generated, lazy.solution)
        }
    };
    let classification = classify_vertices(&solution);
    let crown = crown_from_classification(&inst.graph, inst.l, &classification)?;
    Ok(CrownSearch {
        lp,
        solution,
        classification,
        crown,
    })
}

/// The crown found by [`search_crown`] with the eager LP, if any.
pub fn find_ecoc_crown_via_lp(inst: &Instance) -> Result<Option<EcocCrown>, KernelError> {
    search_crown(inst, LpMode::Eager).map(|s| s.crown)
}

/// Builds the auxiliary bipartite graph (size-`l` components of `G[A]`
/// against the vertices of `B`) and lifts its crown back to `G`.
///
/// Errors if a component of `G[A]` has more than `l` vertices or if a size-`l`
/// component has a neighbor outside `B`; both contradict LP feasibility.
pub fn crown_from_classification(
    g: &Graph,
    l: usize,
    cls: &Classification,
) -> Result<Option<EcocCrown>, KernelError> {
    let mut side_a = Vec::new();
    for comp in components_within(g, &cls.zeros) {
        if comp.len() > l {
            return Err(KernelError::Invariant(format!(
                "component of G[A] at vertex {} has {} > l vertices",
                g.label(comp.first().unwrap_or_default()),
                comp.len()
            )));
        }
        if comp.len() == l {
            side_a.push(comp);
        }
    }
    let ones = cls.ones.as_slice();
    let mut edges = Vec::new();
    for (a, comp) in side_a.iter().enumerate() {
        for w in g.neighborhood(comp)?.iter() {
            let b = ones.binary_search(&w).map_err(|_| {
                KernelError::Invariant(format!(
                    "vertex {} next to a zero-valued component of order l has value below one",
                    g.label(w)
                ))
            })?;
            edges.push((a, b));
        }
    }
    let bg = BipartiteGraph::from_edges(side_a.len(), ones.len(), &edges)
        .expect("edge endpoints come from side_a and ones");
    let Some(vc) = find_vc_crown(&bg) else {
        return Ok(None);
    };
    let i_set: VertexSet = vc.i_side.iter().flat_map(|&a| side_a[a].iter()).collect();
    let j_set: VertexSet = vc.j_side.iter().map(|&b| ones[b]).collect();
    let component_matching = vc
        .witness
        .iter()
        .map(|&(b, a)| (ones[b], side_a[a].clone()))
        .collect();
    let r_set: VertexSet = g
        .vertices()
        .filter(|&v| !i_set.contains(v) && !j_set.contains(v))
        .collect();
    Ok(Some(EcocCrown {
        i_set,
        j_set,
        r_set,
        component_matching,
    }))
}
