//! Fraction-free revised simplex for packing LPs
//!
//! ```text
//! max  sum_j y_j   s.t.  sum_{j : v in S_j} y_j <= 1  (every row v),  y >= 0
//! ```
//!
//! where column `j` is the 0/1 indicator of a row subset `S_j`. The all-slack
//! basis is feasible, so no phase one is needed. The simplex multipliers at
//! optimality solve the covering dual `min sum x_v` subject to
//! `sum_{v in S_j} x_v >= 1`, `x >= 0`.
//!
//! The basis inverse is an integer matrix over one shared denominator,
//! `B^{-1} = N / D` with `D = det B > 0`. Pivoting on row `r` with integer
//! direction `d = N a_q` sets `D' = d_r`, keeps row `r` and replaces every
//! other row `i` by `(N_i d_r - d_i N_r) / D`. That division is always exact,
//! so no gcd is ever taken.

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};
use std::fmt::Debug;

/// Integer ring the simplex runs over. Bounded types report overflow
/// through the checked operations; arbitrary-precision ones never do.
pub trait ExactInteger: Integer + Signed + Clone + Debug + CheckedAdd + CheckedSub + CheckedMul {}

impl<R> ExactInteger for R where R: Integer + Signed + Clone + Debug + CheckedAdd + CheckedSub + CheckedMul {}

/// An intermediate value did not fit the integer type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

/// Variable order for tie-breaking and Bland's rule: slacks first, then
/// columns in insertion order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Slack(usize),
    Column(usize),
}

/// Consecutive degenerate pivots after which pricing switches from
/// Dantzig's rule to Bland's rule.
const DEGENERATE_STREAK: usize = 16;

fn add<R: ExactInteger>(a: &R, b: &R) -> Result<R, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

fn sub<R: ExactInteger>(a: &R, b: &R) -> Result<R, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}

fn mul<R: ExactInteger>(a: &R, b: &R) -> Result<R, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

/// `(a p - b q) / den`, exact.
fn cross<R: ExactInteger>(a: &R, p: &R, b: &R, q: &R, den: &R) -> Result<R, Overflow> {
    let num = if b.is_zero() || q.is_zero() {
        mul(a, p)?
    } else {
        sub(&mul(a, p)?, &mul(b, q)?)?
    };
    debug_assert!(num.is_multiple_of(den));
    Ok(num / den.clone())
}

pub(crate) struct PackingSimplex<R> {
    rows: usize,
    columns: Vec<Vec<usize>>,
    basis: Vec<Var>,
    /// Numerators of the basis inverse, `rows x rows`.
    inverse: Vec<Vec<R>>,
    /// Numerators of the basic variable values.
    beta: Vec<R>,
    /// Shared positive denominator.
    det: R,
}

/// Covering values per row and packing values per column, as numerators
/// over `den`.
pub(crate) struct Optimum<R> {
    pub x: Vec<R>,
    pub y: Vec<R>,
    pub den: R,
}

impl<R: ExactInteger> PackingSimplex<R> {
    pub fn new(rows: usize) -> Self {
        let inverse = (0..rows)
            .map(|r| (0..rows).map(|c| if r == c { R::one() } else { R::zero() }).collect())
            .collect();
        Self {
            rows,
            columns: Vec::new(),
            basis: (0..rows).map(Var::Slack).collect(),
            inverse,
            beta: vec![R::one(); rows],
            det: R::one(),
        }
    }

    /// Appends columns. The current basis stays primal feasible.
    pub fn add_columns<I: IntoIterator<Item = Vec<usize>>>(&mut self, cols: I) {
        for col in cols {
            debug_assert!(col.iter().all(|&r| r < self.rows));
            self.columns.push(col);
        }
    }

    /// Numerators of the simplex multipliers `c_B^T B^{-1}`.
    fn multipliers(&self) -> Result<Vec<R>, Overflow> {
        let mut pi = vec![R::zero(); self.rows];
        for (r, var) in self.basis.iter().enumerate() {
            if let Var::Column(_) = var {
                for (p, b) in pi.iter_mut().zip(&self.inverse[r]) {
                    if !b.is_zero() {
                        *p = add(p, b)?;
                    }
                }
            }
        }
        Ok(pi)
    }

    /// Picks the entering variable among those with positive reduced cost:
    /// the largest (Dantzig, first on ties) or, under Bland's rule, the first
    /// in variable order. Reduced costs are scaled by `det`: `-pi_v` for
    /// slacks and `det - sum pi_v` for columns.
    fn entering(&self, pi: &[R], bland: bool) -> Result<Option<Var>, Overflow> {
        let mut best: Option<(Var, R)> = None;
        let mut consider = |var: Var, rc: R| {
            if !rc.is_positive() {
                return false;
            }
            if bland {
                best = Some((var, rc));
                return true;
            }
            if best.as_ref().is_none_or(|(_, b)| rc > *b) {
                best = Some((var, rc));
            }
            false
        };
        for (v, p) in pi.iter().enumerate() {
            if consider(Var::Slack(v), sub(&R::zero(), p)?) {
                return Ok(best.map(|(v, _)| v));
            }
        }
        for (j, col) in self.columns.iter().enumerate() {
            let mut rc = self.det.clone();
            for &v in col {
                rc = sub(&rc, &pi[v])?;
            }
            if consider(Var::Column(j), rc) {
                break;
            }
        }
        Ok(best.map(|(v, _)| v))
    }

    /// Numerators of `B^{-1} a_q`.
    fn direction(&self, var: Var) -> Result<Vec<R>, Overflow> {
        match var {
            Var::Slack(v) => Ok(self.inverse.iter().map(|row| row[v].clone()).collect()),
            Var::Column(j) => self
                .inverse
                .iter()
                .map(|row| {
                    let mut s = R::zero();
                    for &v in &self.columns[j] {
                        s = add(&s, &row[v])?;
                    }
                    Ok(s)
                })
                .collect(),
        }
    }

    /// Ratio test; ties go to the smallest basic variable.
    fn leaving(&self, d: &[R]) -> Result<usize, Overflow> {
        let mut best: Option<usize> = None;
        for r in 0..self.rows {
            if !d[r].is_positive() {
                continue;
            }
            best = Some(match best {
                None => r,
                Some(b) => {
                    // beta_r / d_r  vs  beta_b / d_b, with d_r, d_b > 0
                    let lhs = mul(&self.beta[r], &d[b])?;
                    let rhs = mul(&self.beta[b], &d[r])?;
                    if lhs < rhs || (lhs == rhs && self.basis[r] < self.basis[b]) {
                        r
                    } else {
                        b
                    }
                }
            });
        }
        // Every column has a positive entry in a row whose slack bounds it.
        Ok(best.expect("packing LP cannot be unbounded"))
    }

    fn pivot(&mut self, r: usize, d: &[R], var: Var) -> Result<(), Overflow> {
        let piv = &d[r];
        let pivot_row = self.inverse[r].clone();
        let pivot_beta = self.beta[r].clone();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let di = &d[i];
            for (x, p) in self.inverse[i].iter_mut().zip(&pivot_row) {
                if !x.is_zero() || !(di.is_zero() || p.is_zero()) {
                    *x = cross(x, piv, di, p, &self.det)?;
                }
            }
            self.beta[i] = cross(&self.beta[i], piv, di, &pivot_beta, &self.det)?;
        }
        // d_r / det > 0 and det > 0, so the new denominator stays positive.
        self.det = piv.clone();
        self.basis[r] = var;
        Ok(())
    }

    /// Runs to optimality.
    ///
    /// Pricing is Dantzig's rule until [`DEGENERATE_STREAK`] consecutive
    /// pivots fail to move, then Bland's rule until one does. Cycling needs
    /// an unbroken run of degenerate pivots, and Bland's rule cannot cycle.
    pub fn solve(&mut self) -> Result<Optimum<R>, Overflow> {
        let mut stalled = 0;
        loop {
            let pi = self.multipliers()?;
            let Some(var) = self.entering(&pi, stalled >= DEGENERATE_STREAK)? else {
                let mut y = vec![R::zero(); self.columns.len()];
                for (r, var) in self.basis.iter().enumerate() {
                    if let Var::Column(j) = var {
                        y[*j] = self.beta[r].clone();
                    }
                }
                return Ok(Optimum {
                    x: pi,
                    y,
                    den: self.det.clone(),
                });
            };
            let d = self.direction(var)?;
            let r = self.leaving(&d)?;
            if self.beta[r].is_zero() {
                stalled += 1;
            } else {
                stalled = 0;
            }
            self.pivot(r, &d, var)?;
        }
    }
}
