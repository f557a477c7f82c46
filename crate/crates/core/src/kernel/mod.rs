//! Reduction rules and the kernelization driver.
//!
//! Each iteration tries, in order: the size bound (stop), removal of a
//! component smaller than `l` (paying for its vertices), removal of a
//! component of exactly `l` vertices (free), and finally an LP-guided crown
//! whose head `J` is deleted together with its crown `I`. When no crown
//! exists while the size bound is exceeded the instance is a no-instance.

mod crown;
mod trace;

pub use crown::{
    apply_crown, check_ecoc_crown, crown_from_classification, find_ecoc_crown_via_lp, search_crown,
    validate_ecoc_crown, CrownSearch, CrownViolation, EcocCrown,
};
pub use trace::{CrownRecord, End, NoReason, Rule, Trace, TraceStep};

use crate::error::KernelError;
use crate::graph::{Graph, VertexSet};

/// A graph, a deletion budget `k` and the required component order `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: i64,
    pub l: usize,
}

impl Instance {
    pub fn new(graph: Graph, k: i64, l: usize) -> Self {
        assert!(l >= 1, "component order must be positive");
        Self { graph, k, l }
    }

    /// `(l + 1) k + l - 1` with `k` clamped at zero.
    pub fn size_bound(&self) -> usize {
        let k = self.k.max(0) as usize;
        (self.l + 1) * k + self.l - 1
    }
}

/// How the covering LP is materialized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LpMode {
    /// Enumerate every connected `(l + 1)`-set before solving.
    #[default]
    Eager,
    /// Generate violated constraints on demand.
    Lazy,
}

/// Rule 1: the instance already has at most `(l + 1) k + l - 1` vertices.
pub fn rule1_size_check(inst: &Instance) -> bool {
    inst.graph.num_vertices() <= inst.size_bound()
}

/// Outcome of Rules 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReduction {
    pub rule: Rule,
    pub component: VertexSet,
    pub instance: Instance,
}

/// Rules 2 and 3. A component smaller than `l` is preferred over one of
/// exactly `l` vertices; ties go to the component with the smallest vertex.
pub fn rule23_component_reduction(inst: &Instance) -> Option<ComponentReduction> {
    let comps = inst.graph.connected_components();
    let (rule, comp) = comps
        .iter()
        .find(|c| c.len() < inst.l)
        .map(|c| (Rule::SmallComponent, c))
        .or_else(|| {
            comps
                .iter()
                .find(|c| c.len() == inst.l)
                .map(|c| (Rule::ExactComponent, c))
        })?;
    let cost = match rule {
        Rule::SmallComponent => comp.len() as i64,
        _ => 0,
    };
    let graph = inst
        .graph
        .remove_vertices(comp)
        .expect("component is a vertex subset");
    Some(ComponentReduction {
        rule,
        component: comp.clone(),
        instance: Instance {
            graph,
            k: inst.k - cost,
            l: inst.l,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Kernel(Instance),
    No(NoReason),
}

impl Outcome {
    pub fn is_no(&self) -> bool {
        matches!(self, Outcome::No(_))
    }

    pub fn kernel(&self) -> Option<&Instance> {
        match self {
            Outcome::Kernel(inst) => Some(inst),
            Outcome::No(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    pub outcome: Outcome,
    pub trace: Trace,
}

impl KernelResult {
    /// Applications of Rules 2, 3 and 4.
    pub fn rule_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for step in &self.trace.steps {
            match step.rule {
                Rule::SmallComponent => counts[0] += 1,
                Rule::ExactComponent => counts[1] += 1,
                Rule::LpCrown => counts[2] += 1,
                Rule::SizeBound => {}
            }
        }
        counts
    }

    /// Re-applies the recorded steps to `original`, re-validating every
    /// crown, and checks that the recorded outcome comes out.
    pub fn replay(&self, original: &Instance) -> Result<(), KernelError> {
        let replayed = self.trace.replay(original)?;
        match (&self.outcome, replayed) {
            (Outcome::Kernel(a), Some(b)) if *a == b => Ok(()),
            (Outcome::No(_), None) => Ok(()),
            _ => Err(KernelError::Invariant("replayed trace disagrees with the outcome".into())),
        }
    }
}

/// Runs the kernelization with the eager LP.
pub fn kernelize(inst: &Instance) -> KernelResult {
    kernelize_with(inst, LpMode::Eager, |_, _| {})
}

/// Runs the kernelization, reporting every LP-guided crown search to
/// `observer` together with the instance it ran on.
///
/// Panics if the crown search hits an internal invariant violation; that
/// would mean the LP solution is not feasible.
pub fn kernelize_with<F>(inst: &Instance, mode: LpMode, mut observer: F) -> KernelResult
where
    F: FnMut(&Instance, &CrownSearch),
{
    assert!(inst.l >= 1, "component order must be positive");
    let mut current = inst.clone();
    let mut steps = Vec::new();
    let end = loop {
        if current.k < 0 {
            break End::No(NoReason::NegativeBudget);
        }
        if rule1_size_check(&current) {
            break End::Kernel;
        }
        if let Some(red) = rule23_component_reduction(&current) {
            steps.push(TraceStep {
                rule: red.rule,
                k_before: current.k,
                k_after: red.instance.k,
                removed: current.graph.labels_of(&red.component),
                crown: None,
            });
            current = red.instance;
            continue;
        }
        let search = search_crown(&current, mode).unwrap_or_else(|e| panic!("crown search failed: {e}"));
        observer(&current, &search);
        let Some(crown) = search.crown else {
            break End::No(NoReason::NoCrown);
        };
        let next = apply_crown(&current, &crown).unwrap_or_else(|e| panic!("extracted crown rejected: {e}"));
        let g = &current.graph;
        steps.push(TraceStep {
            rule: Rule::LpCrown,
            k_before: current.k,
            k_after: next.k,
            removed: g.labels_of(&crown.i_set.union(&crown.j_set)),
            crown: Some(CrownRecord {
                i: g.labels_of(&crown.i_set),
                j: g.labels_of(&crown.j_set),
                matching: crown
                    .component_matching
                    .iter()
                    .map(|(j, c)| (g.label(*j), g.labels_of(c)))
                    .collect(),
            }),
        });
        current = next;
    };
    let outcome = match &end {
        End::Kernel => Outcome::Kernel(current.clone()),
        End::No(reason) => Outcome::No(*reason),
    };
    KernelResult {
        trace: Trace {
            l: inst.l,
            k: inst.k,
            n: inst.graph.num_vertices(),
            steps,
            end,
            kernel_labels: match &outcome {
                Outcome::Kernel(k) => k.graph.labels().to_vec(),
                Outcome::No(_) => Vec::new(),
            },
            kernel_k: current.k,
        },
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn inst(n: usize, edges: &[(usize, usize)], k: i64, l: usize) -> Instance {
        Instance::new(Graph::from_edges(n, edges).unwrap(), k, l)
    }

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn star() -> Instance {
        inst(4, &[(0, 1), (0, 2), (0, 3)], 1, 1)
    }

    fn p5() -> Instance {
        inst(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], 1, 2)
    }

    #[test]
    fn rule1_examples() {
        assert!(!rule1_size_check(&inst(4, &[], 1, 1)));
        assert!(rule1_size_check(&inst(0, &[], 0, 3)));
        assert!(rule1_size_check(&inst(4, &[], 1, 2)));
        assert!(rule1_size_check(&inst(0, &[], 0, 1)));
    }

    #[test]
    fn rule23_examples() {
        let red = rule23_component_reduction(&inst(1, &[], 1, 2)).unwrap();
        assert_eq!(red.rule, Rule::SmallComponent);
        assert!(red.instance.graph.is_empty());
        assert_eq!(red.instance.k, 0);

        let red = rule23_component_reduction(&inst(3, &[(1, 2)], 0, 2)).unwrap();
        // the isolated vertex 0 is smaller than l and goes first
        assert_eq!(red.rule, Rule::SmallComponent);
        assert_eq!(red.component, set(&[0]));

        let red = rule23_component_reduction(&inst(2, &[(0, 1)], 0, 2)).unwrap();
        assert_eq!(red.rule, Rule::ExactComponent);
        assert_eq!(red.instance.k, 0);
        assert!(red.instance.graph.is_empty());

        let p5 = p5();
        assert_eq!(rule23_component_reduction(&p5), None);
    }

    #[test]
    fn star_crown() {
        let crown = find_ecoc_crown_via_lp(&star()).unwrap().unwrap();
        assert_eq!(crown.i_set, set(&[1, 2, 3]));
        assert_eq!(crown.j_set, set(&[0]));
        assert!(crown.r_set.is_empty());
        assert!(validate_ecoc_crown(&star().graph, &crown, 1));
        let next = apply_crown(&star(), &crown).unwrap();
        assert!(next.graph.is_empty());
        assert_eq!(next.k, 0);
    }

    #[test]
    fn path_crown() {
        let search = search_crown(&p5(), LpMode::Eager).unwrap();
        assert_eq!(search.solution.objective, crate::Rational::from_integer(1.into()));
        assert_eq!(search.classification.zeros, set(&[0, 1, 3, 4]));
        assert_eq!(search.classification.ones, set(&[2]));
        let crown = search.crown.unwrap();
        assert_eq!(crown.i_set, set(&[0, 1, 3, 4]));
        assert_eq!(crown.j_set, set(&[2]));
        let next = apply_crown(&p5(), &crown).unwrap();
        assert!(next.graph.is_empty());
        assert_eq!(next.k, 0);
    }

    #[test]
    fn crown_without_head() {
        // one component of order l next to an unrelated rest
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let crown = EcocCrown {
            i_set: set(&[0, 1]),
            j_set: VertexSet::new(),
            r_set: set(&[2, 3, 4]),
            component_matching: vec![],
        };
        let next = apply_crown(&Instance::new(g, 2, 2), &crown).unwrap();
        assert_eq!(next.k, 2);
        assert_eq!(next.graph.labels(), &[2, 3, 4]);
    }

    #[test]
    fn invalid_crowns() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        // I = {0,1} touches 2 which sits in R
        let leaky = EcocCrown {
            i_set: set(&[0, 1]),
            j_set: VertexSet::new(),
            r_set: set(&[2, 3, 4]),
            component_matching: vec![],
        };
        assert_eq!(check_ecoc_crown(&g, &leaky, 2), Err(CrownViolation::EdgeToRest(1, 2)));
        assert!(apply_crown(&Instance::new(g.clone(), 1, 2), &leaky).is_err());

        // star with two leaves as components of order 1, both J-vertices share one
        let g = Graph::from_edges(5, &[(0, 2), (1, 2), (0, 3), (1, 4)]).unwrap();
        let shared = EcocCrown {
            i_set: set(&[2]),
            j_set: set(&[0, 1]),
            r_set: set(&[3, 4]),
            component_matching: vec![(0, set(&[2])), (1, set(&[2]))],
        };
        assert_eq!(check_ecoc_crown(&g, &shared, 1), Err(CrownViolation::NotInjective(2)));
    }

    #[test]
    fn kernelize_examples() {
        let res = kernelize(&star());
        let kernel = res.outcome.kernel().unwrap();
        assert!(kernel.graph.is_empty());
        assert_eq!(kernel.k, 0);
        assert_eq!(res.rule_counts(), [0, 0, 1]);
        res.replay(&star()).unwrap();

        // n = 1 is within the bound l - 1 = 1, so Rule 1 stops first
        let res = kernelize(&inst(1, &[], 0, 2));
        assert_eq!(res.outcome.kernel().unwrap().graph.num_vertices(), 1);
        assert!(res.trace.steps.is_empty());

        // isolated vertex next to a path on three vertices
        let res = kernelize(&inst(4, &[(1, 2), (2, 3)], 0, 2));
        assert_eq!(res.outcome, Outcome::No(NoReason::NegativeBudget));
        assert_eq!(res.trace.steps[0].k_after, -1);

        let res = kernelize(&inst(2, &[(0, 1)], 0, 2));
        assert_eq!(res.rule_counts(), [0, 1, 0]);
        assert_eq!(res.outcome.kernel().unwrap().k, 0);
        assert!(res.outcome.kernel().unwrap().graph.is_empty());
    }

    #[test]
    fn triangle_with_no_budget_is_no() {
        // K4 with l = 1, k = 1: vertex cover needs 3
        let k4 = inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 1, 1);
        let res = kernelize(&k4);
        assert_eq!(res.outcome, Outcome::No(NoReason::NoCrown));
        res.replay(&k4).unwrap();
    }

    #[test]
    fn search_rejects_reducible_instances() {
        assert!(matches!(
            search_crown(&inst(3, &[(0, 1)], 0, 1), LpMode::Eager),
            Err(KernelError::Precondition(_))
        ));
    }
}
