//! The covering LP over connected vertex sets and its exact solution.
//!
//! For a graph `G` and order `l` the LP has one variable per vertex and the
//! constraint `sum_{v in C} x_v >= 1` for every connected set `C` of `l + 1`
//! vertices, with `0 <= x_v <= 1`. The upper bounds never bind at an optimum
//! (lowering a value above one keeps every constraint satisfied), so the
//! solver works on the unbounded form and the returned values stay in `[0, 1]`.

mod simplex;

use std::fmt::Debug;
use std::io::{self, Write};
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::NumAssignRef;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::Rational;
use simplex::{Optimum, PackingSimplex};

pub use simplex::{ExactInteger, Overflow};

/// Ordered field used to check and classify solutions.
///
/// The solver itself runs over an [`ExactInteger`] ring and reports values
/// as [`Ratio`]s of it. Checking is generic so that solutions can be
/// inspected in any field, floating point included (without tolerance).
pub trait LpScalar: NumAssignRef + Clone + PartialOrd + Debug {}

impl<T: NumAssignRef + Clone + PartialOrd + Debug> LpScalar for T {}

/// The covering LP of a graph for a fixed component order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringLp {
    num_vars: usize,
    l: usize,
    constraints: Vec<VertexSet>,
}

impl CoveringLp {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn constraints(&self) -> &[VertexSet] {
        &self.constraints
    }

    /// Whether every value lies in `[0, 1]` and every constraint holds.
    pub fn is_satisfied_by<T: LpScalar>(&self, values: &[T]) -> bool {
        let (zero, one) = (T::zero(), T::one());
        values.len() == self.num_vars
            && values.iter().all(|x| *x >= zero && *x <= one)
            && self.constraints.iter().all(|c| {
                let mut s = T::zero();
                for v in c.iter() {
                    s += &values[v];
                }
                s >= one
            })
    }

    /// Writes the LP in CPLEX LP text format, naming variables by label.
    pub fn write_lp_format<W: Write>(&self, g: &Graph, out: &mut W) -> io::Result<()> {
        let var = |v: Vertex| format!("x{}", g.label(v));
        writeln!(out, "\\ covering LP, l = {}, {} constraints", self.l, self.constraints.len())?;
        writeln!(out, "Minimize")?;
        let obj: Vec<String> = (0..self.num_vars).map(var).collect();
        if obj.is_empty() {
            writeln!(out, " obj: 0 x0")?;
        } else {
            writeln!(out, " obj: {}", obj.join(" + "))?;
        }
        writeln!(out, "Subject To")?;
        for (i, c) in self.constraints.iter().enumerate() {
            let terms: Vec<String> = c.iter().map(var).collect();
            writeln!(out, " c{}: {} >= 1", i + 1, terms.join(" + "))?;
        }
        writeln!(out, "Bounds")?;
        for v in 0..self.num_vars {
            writeln!(out, " 0 <= {} <= 1", var(v))?;
        }
        writeln!(out, "End")
    }
}

/// Builds the LP with every connected `(l + 1)`-set as a constraint.
pub fn build_wecoc_lp(g: &Graph, l: usize) -> CoveringLp {
    assert!(l >= 1, "component order must be positive");
    CoveringLp {
        num_vars: g.num_vertices(),
        l,
        constraints: g.connected_sets(l + 1),
    }
}

/// An optimal LP solution together with its dual certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution<T> {
    /// One value per vertex.
    pub values: Vec<T>,
    pub objective: T,
    /// Dual value per constraint of the LP the solution was computed for.
    pub dual: Vec<T>,
}

impl<T: LpScalar> LpSolution<T> {
    pub fn value(&self, v: Vertex) -> &T {
        &self.values[v]
    }

    /// Checks optimality through LP duality: the values are feasible, the dual
    /// is feasible for the packing dual, and both objectives coincide.
    pub fn certifies_optimality(&self, lp: &CoveringLp) -> bool {
        let zero = T::zero();
        let one = T::one();
        if !lp.is_satisfied_by(&self.values) || self.dual.len() != lp.constraints.len() {
            return false;
        }
        let mut load = vec![T::zero(); lp.num_vars];
        for (c, y) in lp.constraints.iter().zip(&self.dual) {
            if *y < zero {
                return false;
            }
            for v in c.iter() {
                load[v] += y;
            }
        }
        let mut primal = T::zero();
        for x in &self.values {
            primal += x;
        }
        let mut dual = T::zero();
        for y in &self.dual {
            dual += y;
        }
        load.iter().all(|s| *s <= one) && primal == dual && primal == self.objective
    }
}

fn finish<R: ExactInteger>(opt: Optimum<R>) -> Result<LpSolution<Ratio<R>>, Overflow> {
    let mut total = R::zero();
    for x in &opt.x {
        total = total.checked_add(x).ok_or(Overflow)?;
    }
    let objective = Ratio::new(total, opt.den.clone());
    let ratio = |v: Vec<R>| -> Vec<Ratio<R>> { v.into_iter().map(|x| Ratio::new(x, opt.den.clone())).collect() };
    let values = ratio(opt.x);
    let dual = ratio(opt.y);
    Ok(LpSolution {
        values,
        objective,
        dual,
    })
}

/// Solves a covering LP with constraints materialized up front, in the
/// integer ring `R`. Fails only if `R` overflows.
pub fn solve_covering<R: ExactInteger>(lp: &CoveringLp) -> Result<LpSolution<Ratio<R>>, Overflow> {
    let mut simplex = PackingSimplex::<R>::new(lp.num_vars);
    simplex.add_columns(lp.constraints.iter().map(|c| c.as_slice().to_vec()));
    finish(simplex.solve()?)
}

/// Exact solve: machine integers first, arbitrary precision if they
/// overflow. Both runs make the same pivots, so the result does not depend
/// on which one finished.
pub fn solve_lp_exact(lp: &CoveringLp) -> LpSolution<Rational> {
    match solve_covering::<i128>(lp) {
        Ok(sol) => widen(sol),
        Err(Overflow) => solve_covering::<BigInt>(lp).expect("arbitrary precision cannot overflow"),
    }
}

fn widen(sol: LpSolution<Ratio<i128>>) -> LpSolution<Rational> {
    let big = |x: Ratio<i128>| Ratio::new_raw(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
    LpSolution {
        values: sol.values.into_iter().map(big).collect(),
        objective: big(sol.objective),
        dual: sol.dual.into_iter().map(big).collect(),
    }
}

/// Result of the row-generation solve: the constraints that were generated
/// and an optimal solution of the full LP.
#[derive(Clone, Debug)]
pub struct LazySolve<T> {
    pub generated: CoveringLp,
    pub solution: LpSolution<T>,
    pub rounds: usize,
}

/// Solves the covering LP by constraint generation in the ring `R`.
/// Starting from no constraints, each round adds a batch of violated
/// connected sets found by a search that abandons partial sets whose value
/// already reaches one.
pub fn solve_wecoc_lazy_in<R: ExactInteger>(g: &Graph, l: usize) -> Result<LazySolve<Ratio<R>>, Overflow> {
    assert!(l >= 1, "component order must be positive");
    let n = g.num_vertices();
    let batch = (2 * n).max(32);
    let mut simplex = PackingSimplex::<R>::new(n);
    let mut generated = Vec::new();
    let mut rounds = 0;
    loop {
        let opt = simplex.solve()?;
        rounds += 1;
        let violated = violated_sets(g, l + 1, &opt, batch)?;
        if violated.is_empty() {
            let lp = CoveringLp {
                num_vars: n,
                l,
                constraints: generated,
            };
            return Ok(LazySolve {
                generated: lp,
                solution: finish(opt)?,
                rounds,
            });
        }
        simplex.add_columns(violated.iter().map(|c| c.as_slice().to_vec()));
        generated.extend(violated);
    }
}

/// Exact constraint generation with the same fallback as [`solve_lp_exact`].
pub fn solve_wecoc_lazy(g: &Graph, l: usize) -> LazySolve<Rational> {
    match solve_wecoc_lazy_in::<i128>(g, l) {
        Ok(s) => LazySolve {
            generated: s.generated,
            solution: widen(s.solution),
            rounds: s.rounds,
        },
        Err(Overflow) => solve_wecoc_lazy_in::<BigInt>(g, l).expect("arbitrary precision cannot overflow"),
    }
}

fn violated_sets<R: ExactInteger>(g: &Graph, size: usize, opt: &Optimum<R>, limit: usize) -> Result<Vec<VertexSet>, Overflow> {
    let mut overflow = false;
    let mut reaches_one = |set: &[Vertex]| {
        let mut s = R::zero();
        for &v in set {
            match s.checked_add(&opt.x[v]) {
                Some(t) => s = t,
                None => {
                    overflow = true;
                    return true;
                }
            }
        }
        s >= opt.den
    };
    let mut out = Vec::new();
    g.for_each_connected_set(size, &mut reaches_one, |set| {
        out.push(VertexSet::from(set.to_vec()));
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if overflow {
        return Err(Overflow);
    }
    Ok(out)
}

/// Vertices split by exact LP value.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Classification {
    /// `x_v = 0`
    pub zeros: VertexSet,
    /// `x_v = 1`
    pub ones: VertexSet,
    pub fractional: VertexSet,
}

pub fn classify_vertices<T: LpScalar>(sol: &LpSolution<T>) -> Classification {
    let (mut zeros, mut ones, mut fractional) = (Vec::new(), Vec::new(), Vec::new());
    for (v, x) in sol.values.iter().enumerate() {
        if x.is_zero() {
            zeros.push(v);
        } else if x.is_one() {
            ones.push(v);
        } else {
            fractional.push(v);
        }
    }
    Classification {
        zeros: VertexSet::from_sorted(zeros),
        ones: VertexSet::from_sorted(ones),
        fractional: VertexSet::from_sorted(fractional),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Ratio;

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn star() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn triangle() -> Graph {
        graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn lp_constraints() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(build_wecoc_lp(&p3, 1).constraints(), &[set(&[0, 1]), set(&[1, 2])]);
        assert_eq!(build_wecoc_lp(&triangle(), 2).constraints(), &[set(&[0, 1, 2])]);
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(build_wecoc_lp(&p4, 2).constraints(), &[set(&[0, 1, 2]), set(&[1, 2, 3])]);
    }

    #[test]
    fn star_objective_and_classes() {
        let lp = build_wecoc_lp(&star(), 1);
        let sol = solve_lp_exact(&lp);
        assert_eq!(sol.objective, rat(1, 1));
        assert!(sol.certifies_optimality(&lp));
        let cls = classify_vertices(&sol);
        assert_eq!(cls.ones, set(&[0]));
        assert_eq!(cls.zeros, set(&[1, 2, 3]));
        assert!(cls.fractional.is_empty());
    }

    #[test]
    fn triangle_objectives() {
        let lp = build_wecoc_lp(&triangle(), 1);
        let sol = solve_lp_exact(&lp);
        assert_eq!(sol.objective, rat(3, 2));
        assert_eq!(sol.values, vec![rat(1, 2); 3]);
        let cls = classify_vertices(&sol);
        assert!(cls.zeros.is_empty() && cls.ones.is_empty());
        assert_eq!(cls.fractional, set(&[0, 1, 2]));

        let lp2 = build_wecoc_lp(&triangle(), 2);
        assert_eq!(solve_lp_exact(&lp2).objective, rat(1, 1));
    }

    #[test]
    fn constraint_free_lp() {
        let g = graph(3, &[(0, 1)]);
        let lp = build_wecoc_lp(&g, 2);
        assert!(lp.constraints().is_empty());
        let sol = solve_lp_exact(&lp);
        assert_eq!(sol.objective, rat(0, 1));
        assert_eq!(classify_vertices(&sol).zeros, set(&[0, 1, 2]));
    }

    #[test]
    fn other_scalars() {
        let lp = build_wecoc_lp(&triangle(), 1);
        let small = solve_covering::<i64>(&lp).unwrap();
        assert_eq!(small.objective, Ratio::new(3, 2));
        assert!(small.certifies_optimality(&lp));
        let float = LpSolution {
            values: vec![0.5f64; 3],
            objective: 1.5,
            dual: vec![0.5; 3],
        };
        assert!(float.certifies_optimality(&lp));
    }

    #[test]
    fn lazy_matches_eager() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        for l in 1..=3 {
            let lp = build_wecoc_lp(&g, l);
            let eager = solve_lp_exact(&lp);
            let lazy = solve_wecoc_lazy(&g, l);
            assert_eq!(eager.objective, lazy.solution.objective);
            assert!(lp.is_satisfied_by(&lazy.solution.values));
            assert!(lazy.solution.certifies_optimality(&lazy.generated));
        }
    }

    #[test]
    fn lp_text_dump() {
        let mut buf = Vec::new();
        build_wecoc_lp(&graph(2, &[(0, 1)]), 1)
            .write_lp_format(&graph(2, &[(0, 1)]), &mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains(" c1: x0 + x1 >= 1"));
        assert!(text.ends_with("End\n"));
    }
}
