//! Exhaustive ground-truth solvers for small inputs.
//!
//! These are deliberately naive and share no code with the kernelization
//! path beyond reading adjacency lists: components are computed with bitmask
//! flood fill and subsets are enumerated as machine words.

use crate::error::OracleError;
use crate::graph::{Graph, VertexSet};
use crate::kernel::Instance;
use crate::matching::BipartiteGraph;

pub const ECOC_LIMIT: usize = 22;
pub const IP_LIMIT: usize = 16;
pub const MATCHING_LIMIT: usize = 12;

/// Answer of the exhaustive l-ECOC search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    /// A solution of size at most the budget exists.
    pub feasible: bool,
    /// Minimum solution size, when the search reached it.
    pub optimum: Option<usize>,
    pub witness: Option<VertexSet>,
}

fn guard(size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

/// Sizes of the connected components of the subgraph induced by `alive`.
fn component_sizes(adj: &[u32], alive: u32, mut f: impl FnMut(u32) -> bool) -> bool {
    let mut left = alive;
    while left != 0 {
        let seed = left & left.wrapping_neg();
        let mut comp = seed;
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[v] & alive;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        if !f(comp.count_ones()) {
            return false;
        }
        left &= !comp;
    }
    true
}

/// Whether every component of `G - deleted` has exactly `l` vertices.
pub fn leaves_exact_components(g: &Graph, deleted: &VertexSet, l: usize) -> bool {
    assert!(g.num_vertices() <= 32);
    let adj = adjacency_masks(g);
    let all = full_mask(g.num_vertices());
    let del = deleted.iter().fold(0u32, |m, v| m | (1 << v));
    component_sizes(&adj, all & !del, |s| s as usize == l)
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Calls `f` on every `size`-subset of `0..n` as a bitmask, in colex order,
/// until `f` returns `true`.
fn find_subset(n: usize, size: usize, mut f: impl FnMut(u32) -> bool) -> Option<u32> {
    if size > n {
        return None;
    }
    if size == 0 {
        return f(0).then_some(0);
    }
    let mut s: u32 = (1u32 << size) - 1;
    let limit = full_mask(n);
    loop {
        if f(s) {
            return Some(s);
        }
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 {
            return None;
        }
        let next = (((r ^ s) >> 2) / c) | r;
        if next > limit || next < s {
            return None;
        }
        s = next;
    }
}

fn mask_to_set(mask: u32) -> VertexSet {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

fn min_deletion(g: &Graph, max_size: usize, ok: impl Fn(u32) -> bool) -> Option<(usize, u32)> {
    let n = g.num_vertices();
    let all = full_mask(n);
    (0..=max_size.min(n)).find_map(|size| find_subset(n, size, |del| ok(all & !del)).map(|m| (size, m)))
}

/// Decides the instance by trying all deletion sets of size at most `k` in
/// increasing size.
pub fn brute_force_ecoc(inst: &Instance) -> Result<OracleAnswer, OracleError> {
    let n = inst.graph.num_vertices();
    guard(n, ECOC_LIMIT)?;
    if inst.k < 0 {
        return Ok(OracleAnswer {
            feasible: false,
            optimum: None,
            witness: None,
        });
    }
    let adj = adjacency_masks(&inst.graph);
    let l = inst.l as u32;
    let found = min_deletion(&inst.graph, inst.k as usize, |alive| {
        component_sizes(&adj, alive, |s| s == l)
    });
    Ok(match found {
        Some((size, mask)) => OracleAnswer {
            feasible: true,
            optimum: Some(size),
            witness: Some(mask_to_set(mask)),
        },
        None => OracleAnswer {
            feasible: false,
            optimum: None,
            witness: None,
        },
    })
}

/// Minimum deletion set size with no budget. Deleting everything always
/// works, so the answer is always feasible.
pub fn brute_force_ecoc_optimum(g: &Graph, l: usize) -> Result<OracleAnswer, OracleError> {
    let n = g.num_vertices();
    brute_force_ecoc(&Instance::new(g.clone(), n as i64, l))
}

/// Minimum number of vertices hitting every connected `(l + 1)`-set, i.e.
/// leaving only components of at most `l` vertices.
pub fn brute_force_wecoc_ip(g: &Graph, l: usize) -> Result<usize, OracleError> {
    guard(g.num_vertices(), IP_LIMIT)?;
    let adj = adjacency_masks(g);
    let l = l as u32;
    let (size, _) = min_deletion(g, g.num_vertices(), |alive| {
        component_sizes(&adj, alive, |s| s <= l)
    })
    .expect("deleting every vertex is always feasible");
    Ok(size)
}

/// Maximum matching size by exhaustive search over the a-side.
pub fn brute_force_max_matching(bg: &BipartiteGraph) -> Result<usize, OracleError> {
    guard(bg.num_a() + bg.num_b(), MATCHING_LIMIT)?;
    fn go(bg: &BipartiteGraph, a: usize, used: u32) -> usize {
        if a == bg.num_a() {
            return 0;
        }
        let mut best = go(bg, a + 1, used);
        for &b in bg.neighbors(a) {
            if used & (1 << b) == 0 {
                best = best.max(1 + go(bg, a + 1, used | (1 << b)));
            }
        }
        best
    }
    Ok(go(bg, 0, 0))
}
