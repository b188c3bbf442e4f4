//! A small exact linear programming solver.
//!
//! Dense two-phase simplex over the rationals with Bland's anti-cycling rule.
//! All variables are nonnegative; callers split free variables themselves.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::linalg::Rat;

/// Relation of a constraint row to its right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `a·x ≤ b`
    Le,
    /// `a·x ≥ b`
    Ge,
    /// `a·x = b`
    Eq,
}

/// A linear program `maximize c·x` subject to rows and `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    vars: usize,
    objective: Vec<Rat>,
    rows: Vec<(Vec<Rat>, Relation, Rat)>,
}

/// Result of solving a linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// No point satisfies the constraints.
    Infeasible,
    /// The objective is unbounded above on the feasible region.
    Unbounded,
    /// An optimal vertex and its objective value.
    Optimal {
        /// Objective value.
        value: Rat,
        /// Optimal point.
        x: Vec<Rat>,
    },
}

impl LinearProgram {
    /// A program in `vars` nonnegative variables with zero objective.
    pub fn new(vars: usize) -> Self {
        Self { vars, objective: vec![Rat::zero(); vars], rows: Vec::new() }
    }

    /// Sets the objective to maximize.
    pub fn maximize(&mut self, c: Vec<Rat>) -> &mut Self {
        assert_eq!(c.len(), self.vars, "objective length must equal variable count");
        self.objective = c;
        self
    }

    /// Adds a constraint row.
    pub fn constrain(&mut self, a: Vec<Rat>, rel: Relation, b: Rat) -> &mut Self {
        assert_eq!(a.len(), self.vars, "row length must equal variable count");
        self.rows.push((a, rel, b));
        self
    }

    /// Solves the program exactly.
    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }

    /// True when the constraints admit a solution.
    pub fn is_feasible(&self) -> bool {
        let mut p = self.clone();
        p.objective = vec![Rat::zero(); self.vars];
        !matches!(p.solve(), LpOutcome::Infeasible)
    }
}

struct Tableau {
    // Rows 0..m are constraints, each with rhs in the last column.
    t: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    n_struct: usize,
    n_total: usize,
    artificial_start: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let n = lp.vars;
        let n_slack = lp.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let artificial_start = n + n_slack;
        let n_total = artificial_start + m;
        let mut t = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n;
        for (i, (a, rel, b)) in lp.rows.iter().enumerate() {
            let mut row = vec![Rat::zero(); n_total + 1];
            row[..n].clone_from_slice(a);
            match rel {
                Relation::Le => {
                    row[slack] = Rat::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rat::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[n_total] = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[artificial_start + i] = Rat::one();
            basis.push(artificial_start + i);
            t.push(row);
        }
        Self { t, basis, n_struct: n, n_total, artificial_start }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·x` over the columns allowed by `allowed`. Returns
    /// `false` when unbounded.
    fn optimize(&mut self, cost: &[Rat], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // Reduced cost of column j: cost_j - Σ cost_{basis_i} t_ij.
            let entering = (0..self.n_total).filter(|&j| allowed(j)).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() && !self.t[i][j].is_zero() {
                        rc -= &cost[bi] * &self.t[i][j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else { return true };
            let rhs = self.n_total;
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.t.len() {
                if self.t[i][c].is_positive() {
                    let ratio = &self.t[i][rhs] / &self.t[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let a0 = self.artificial_start;
        let rhs = self.n_total;
        let mut phase1 = vec![Rat::zero(); self.n_total];
        for x in phase1.iter_mut().skip(a0) {
            *x = -Rat::one();
        }
        self.optimize(&phase1, &|_| true);
        let infeasibility: Rat = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= a0)
            .map(|(i, _)| self.t[i][rhs].clone())
            .sum();
        if !infeasibility.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut i = 0;
        while i < self.t.len() {
            if self.basis[i] >= a0 {
                match (0..a0).find(|&j| !self.t[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.t.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        let mut cost = vec![Rat::zero(); self.n_total];
        cost[..self.n_struct].clone_from_slice(&lp.objective);
        if !self.optimize(&cost, &|j| j < a0) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rat::zero(); self.n_struct];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                x[b] = self.t[i][rhs].clone();
            }
        }
        let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { value, x }
    }
}
