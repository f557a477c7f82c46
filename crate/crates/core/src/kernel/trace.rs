use std::fmt;

use crate::error::KernelError;
use crate::graph::{Label, VertexSet};

use super::crown::{apply_crown, EcocCrown};
use super::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Rule 1, terminal.
    SizeBound,
    /// Rule 2: component with fewer than `l` vertices.
    SmallComponent,
    /// Rule 3: component with exactly `l` vertices.
    ExactComponent,
    /// Rule 4: LP-guided crown.
    LpCrown,
}

impl Rule {
    pub fn number(self) -> u8 {
        match self {
            Rule::SizeBound => 1,
            Rule::SmallComponent => 2,
            Rule::ExactComponent => 3,
            Rule::LpCrown => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoReason {
    NegativeBudget,
    NoCrown,
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoReason::NegativeBudget => "negative-budget",
            NoReason::NoCrown => "no-crown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Kernel,
    No(NoReason),
}

/// Crown witness in vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrownRecord {
    pub i: Vec<Label>,
    pub j: Vec<Label>,
    pub matching: Vec<(Label, Vec<Label>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub k_before: i64,
    pub k_after: i64,
    /// Labels of the deleted vertices, ascending.
    pub removed: Vec<Label>,
    pub crown: Option<CrownRecord>,
}

/// The ordered record of a kernelization run.
///
/// Renders as line-oriented text:
///
/// ```text
/// c ecoc kernelization trace
/// input n 5 k 1 l 2
/// step 1 | rule 4 | k 1 -> 0 | removed 1 2 3 4 5 | I 1 2 4 5 | J 3 | M 3:1,2
/// end kernel | n 0 | k 0 | labels
/// ```
///
/// `M j:c1,c2,...` pairs a head vertex with its matched component. A run that
/// ends in a no-instance finishes with `end no | <reason>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub n: usize,
    pub k: i64,
    pub l: usize,
    pub steps: Vec<TraceStep>,
    pub end: End,
    /// Labels of the kernel vertices, empty for a no answer.
    pub kernel_labels: Vec<Label>,
    pub kernel_k: i64,
}

fn join(labels: &[Label], sep: &str) -> String {
    labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep)
}

/// Each label preceded by a space, so empty lists leave no trailing blank.
fn spaced(labels: &[Label]) -> String {
    labels.iter().map(|l| format!(" {l}")).collect()
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c ecoc kernelization trace")?;
        writeln!(f, "input n {} k {} l {}", self.n, self.k, self.l)?;
        for (i, s) in self.steps.iter().enumerate() {
            write!(
                f,
                "step {} | rule {} | k {} -> {} | removed{}",
                i + 1,
                s.rule.number(),
                s.k_before,
                s.k_after,
                spaced(&s.removed)
            )?;
            if let Some(c) = &s.crown {
                write!(f, " | I{} | J{} | M", spaced(&c.i), spaced(&c.j))?;
                for (j, comp) in &c.matching {
                    write!(f, " {}:{}", j, join(comp, ","))?;
                }
            }
            writeln!(f)?;
        }
        match self.end {
            End::Kernel => writeln!(
                f,
                "end kernel | n {} | k {} | labels{}",
                self.kernel_labels.len(),
                self.kernel_k,
                spaced(&self.kernel_labels)
            ),
            End::No(reason) => writeln!(f, "end no | {reason}"),
        }
    }
}

impl Trace {
    /// Re-applies every step to `original`. Returns the resulting instance,
    /// or `None` when the trace ends in a no answer.
    pub fn replay(&self, original: &Instance) -> Result<Option<Instance>, KernelError> {
        let bad = |msg: String| KernelError::Invariant(msg);
        let mut current = original.clone();
        for (idx, step) in self.steps.iter().enumerate() {
            let g = &current.graph;
            let to_set = |labels: &[Label]| -> Result<VertexSet, KernelError> {
                labels
                    .iter()
                    .map(|&lab| {
                        g.index_of(lab)
                            .ok_or_else(|| bad(format!("step {}: unknown label {lab}", idx + 1)))
                    })
                    .collect()
            };
            if step.k_before != current.k {
                return Err(bad(format!("step {}: budget mismatch", idx + 1)));
            }
            let removed = to_set(&step.removed)?;
            let next = match step.rule {
                Rule::SmallComponent | Rule::ExactComponent => {
                    let is_component = g.connected_components().contains(&removed);
                    let size_ok = match step.rule {
                        Rule::SmallComponent => removed.len() < current.l,
                        _ => removed.len() == current.l,
                    };
                    if !is_component || !size_ok {
                        return Err(bad(format!("step {}: not a removable component", idx + 1)));
                    }
                    let cost = if step.rule == Rule::SmallComponent { removed.len() as i64 } else { 0 };
                    Instance {
                        graph: g.remove_vertices(&removed)?,
                        k: current.k - cost,
                        l: current.l,
                    }
                }
                Rule::LpCrown => {
                    let rec = step
                        .crown
                        .as_ref()
                        .ok_or_else(|| bad(format!("step {}: missing crown", idx + 1)))?;
                    let i_set = to_set(&rec.i)?;
                    let j_set = to_set(&rec.j)?;
                    let mut component_matching = Vec::new();
                    for (j, comp) in &rec.matching {
                        let jv = to_set(&[*j])?.first().expect("one label");
                        component_matching.push((jv, to_set(comp)?));
                    }
                    let r_set = g
                        .vertices()
                        .filter(|&v| !i_set.contains(v) && !j_set.contains(v))
                        .collect();
                    if i_set.union(&j_set) != removed {
                        return Err(bad(format!("step {}: removed set differs from I and J", idx + 1)));
                    }
                    let crown = EcocCrown {
                        i_set,
                        j_set,
                        r_set,
                        component_matching,
                    };
                    apply_crown(&current, &crown)?
                }
                Rule::SizeBound => return Err(bad(format!("step {}: rule 1 is terminal", idx + 1))),
            };
            if next.k != step.k_after {
                return Err(bad(format!("step {}: budget mismatch after step", idx + 1)));
            }
            current = next;
        }
        match self.end {
            End::Kernel => Ok(Some(current)),
            End::No(NoReason::NegativeBudget) if current.k < 0 => Ok(None),
            // A missing crown cannot be re-checked without re-solving the LP.
            End::No(NoReason::NoCrown) => Ok(None),
            End::No(_) => Err(bad("trace ends in no with a valid budget".into())),
        }
    }
}
