//! Seeded instance generators.
//!
//! All randomness comes from [`SplitMix64`] and is consumed in a fixed,
//! documented order, so a spec and seed determine the instance bit for bit on
//! any platform.

use num_rational::Ratio;

use crate::graph::{Graph, Label, Vertex};
use crate::kernel::Instance;

/// Steele, Lea and Flood's SplitMix64.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..bound` via the high half of a 128-bit
    /// product (one draw, no rejection). `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// `true` with probability `p`: one draw, `below(denom) < numer`.
    /// Probabilities 0 and 1 still consume a draw.
    pub fn bernoulli(&mut self, p: Probability) -> bool {
        self.below(*p.0.denom()) < *p.0.numer()
    }
}

/// A rational probability in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probability(Ratio<u64>);

impl Probability {
    pub fn new(numer: u64, denom: u64) -> Option<Self> {
        (denom > 0 && numer <= denom).then(|| Self(Ratio::new(numer, denom)))
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl std::str::FromStr for Probability {
    type Err = String;

    /// Accepts `a/b` or a plain decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid probability `{s}`");
        let (numer, denom) = if let Some((a, b)) = s.split_once('/') {
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        } else {
            let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
            if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let denom = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            let numer = int.checked_mul(denom).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
            (numer, denom)
        };
        Probability::new(numer, denom).ok_or_else(bad)
    }
}

/// Generator parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Planted {
        components: usize,
        l: usize,
        k: usize,
        p: Probability,
        seed: u64,
    },
    Random {
        n: usize,
        p: Probability,
        l: usize,
        k: usize,
        seed: u64,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Instance {
        match *self {
            GenSpec::Planted {
                components,
                l,
                k,
                p,
                seed,
            } => gen_planted(components, l, k, p, seed),
            GenSpec::Random { n, p, l, k, seed } => gen_random(n, p, l, k, seed),
        }
    }
}

fn labelled(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    let labels: Vec<Label> = (1..=n as Label).collect();
    Graph::with_labels(labels, edges).expect("generated edges are simple")
}

/// A yes-instance by construction.
///
/// Draw order: for each block of `l` vertices, a random spanning tree
/// (vertex `i > 0` of the block attaches to `below(i)`), then every non-tree
/// pair of the block in lexicographic order with probability `p`. Next, every
/// pair with at least one of the `k` solution vertices, in lexicographic
/// order, with probability `p`. Finally a Fisher-Yates shuffle (from the last
/// position down) relabels the vertices. Labels are `1..=n`.
pub fn gen_planted(components: usize, l: usize, k: usize, p: Probability, seed: u64) -> Instance {
    assert!(l >= 1, "component order must be positive");
    let mut rng = SplitMix64::new(seed);
    let block_vertices = components * l;
    let n = block_vertices + k;
    let mut edges = Vec::new();
    for c in 0..components {
        let base = c * l;
        let mut tree = vec![usize::MAX; l];
        for i in 1..l {
            tree[i] = rng.below(i as u64) as usize;
            edges.push((base + tree[i], base + i));
        }
        for i in 0..l {
            for j in i + 1..l {
                if tree[j] != i && rng.bernoulli(p) {
                    edges.push((base + i, base + j));
                }
            }
        }
    }
    for u in 0..n {
        for v in (u + 1).max(block_vertices)..n {
            if rng.bernoulli(p) {
                edges.push((u, v));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    let edges: Vec<_> = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Instance::new(labelled(n, &edges), k as i64, l)
}

/// `G(n, p)`: every pair in lexicographic order with probability `p`.
pub fn gen_random(n: usize, p: Probability, l: usize, k: usize, seed: u64) -> Instance {
    assert!(l >= 1, "component order must be positive");
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                edges.push((u, v));
            }
        }
    }
    Instance::new(labelled(n, &edges), k as i64, l)
}
