//! Exact rational linear programming.
//!
//! A small dense two-phase simplex over `BigRational`, used by the polyhedral
//! layer to decide feasibility, boundedness, implicit equalities, and
//! redundancy. Problems are of the form
//!
//! ```text
//! maximize c.x  subject to  A x <= b,  x free
//! ```
//!
//! Free variables are split internally into differences of nonnegative ones.
//! Pivoting uses Bland's rule throughout, so the solver terminates on every
//! input. The solver holds no shared state and is reentrant.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A linear program over free rational variables: `a . x <= c` rows.
#[derive(Clone, Debug)]
pub struct LpProblem {
    num_vars: usize,
    rows: Vec<(Vec<BigRational>, BigRational)>,
}

/// Result of an LP solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem { num_vars, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Add the constraint `a . x <= c`.
    pub fn add_constraint(&mut self, a: Vec<BigRational>, c: BigRational) {
        debug_assert_eq!(a.len(), self.num_vars);
        self.rows.push((a, c));
    }

    /// Add the equality `a . x = c` as a pair of inequalities.
    pub fn add_equality(&mut self, a: Vec<BigRational>, c: BigRational) {
        let neg: Vec<BigRational> = a.iter().map(|x| -x).collect();
        self.add_constraint(a, c.clone());
        self.add_constraint(neg, -c);
    }

    pub fn is_feasible(&self) -> bool {
        let zero_obj = vec![BigRational::zero(); self.num_vars];
        !matches!(self.maximize(&zero_obj), LpOutcome::Infeasible)
    }

    /// Maximize `obj . x` over the feasible region.
    pub fn maximize(&self, obj: &[BigRational]) -> LpOutcome {
        debug_assert_eq!(obj.len(), self.num_vars);
        Tableau::solve(self, obj)
    }

    /// Minimize `obj . x` over the feasible region (maximize the negation).
    pub fn minimize(&self, obj: &[BigRational]) -> LpOutcome {
        let neg: Vec<BigRational> = obj.iter().map(|x| -x).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal { value: -value, point },
            other => other,
        }
    }
}

/// Dense simplex tableau on the split-variable standard form.
struct Tableau {
    /// `rows[i]` has `cols + 1` entries; the last entry is the rhs.
    rows: Vec<Vec<BigRational>>,
    /// Reduced-cost row with `cols + 1` entries; the last entry is minus the
    /// current objective value.
    cost: Vec<BigRational>,
    /// Basic variable (column index) of each row.
    basis: Vec<usize>,
    /// Number of variable columns (excluding the rhs).
    cols: usize,
}

impl Tableau {
    fn solve(p: &LpProblem, obj: &[BigRational]) -> LpOutcome {
        let n = p.num_vars;
        let split = 2 * n;
        let m = p.rows.len();
        let cols = split + m;

        let mut rows = Vec::with_capacity(m);
        for (i, (a, c)) in p.rows.iter().enumerate() {
            let mut row = vec![BigRational::zero(); cols + 1];
            for (j, aj) in a.iter().enumerate() {
                row[j] = aj.clone();
                row[n + j] = -aj.clone();
            }
            row[split + i] = BigRational::one();
            row[cols] = c.clone();
            rows.push(row);
        }
        let basis: Vec<usize> = (0..m).map(|i| split + i).collect();
        let cost = vec![BigRational::zero(); cols + 1];
        let mut t = Tableau { rows, cost, basis, cols };

        if !t.phase_one() {
            return LpOutcome::Infeasible;
        }

        // Install the real objective on the split columns and price out the
        // basic variables.
        let mut full_obj = vec![BigRational::zero(); t.cols];
        for (j, c) in obj.iter().enumerate() {
            full_obj[j] = c.clone();
            full_obj[n + j] = -c.clone();
        }
        t.cost = full_obj.clone();
        t.cost.push(BigRational::zero());
        for i in 0..t.rows.len() {
            let cb = full_obj[t.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..=t.cols {
                let delta = &cb * &t.rows[i][j];
                t.cost[j] = &t.cost[j] - &delta;
            }
        }

        if !t.run_simplex() {
            return LpOutcome::Unbounded;
        }

        let value = -t.cost[t.cols].clone();
        let mut assign = vec![BigRational::zero(); t.cols];
        for (i, &b) in t.basis.iter().enumerate() {
            assign[b] = t.rows[i][t.cols].clone();
        }
        let point: Vec<BigRational> = (0..n).map(|j| &assign[j] - &assign[n + j]).collect();
        LpOutcome::Optimal { value, point }
    }

    /// Drive all right-hand sides nonnegative with an auxiliary column.
    /// Returns false if the problem is infeasible.
    fn phase_one(&mut self) -> bool {
        let rhs = self.cols;
        let worst = (0..self.rows.len())
            .filter(|&i| self.rows[i][rhs].is_negative())
            .min_by(|&a, &b| self.rows[a][rhs].cmp(&self.rows[b][rhs]));
        let Some(worst) = worst else {
            return true;
        };

        // Append the auxiliary column (coefficient -1 everywhere) just before
        // the rhs.
        let aux = self.cols;
        for row in &mut self.rows {
            row.insert(aux, -BigRational::one());
        }
        self.cols += 1;
        self.cost = vec![BigRational::zero(); self.cols + 1];
        self.cost[aux] = -BigRational::one();

        self.pivot(worst, aux);
        let bounded = self.run_simplex();
        debug_assert!(bounded, "phase-1 objective is bounded by construction");
        let value = -self.cost[self.cols].clone();
        if !value.is_zero() {
            return false;
        }

        // If the auxiliary variable is still basic (at zero), pivot it out or
        // drop its row entirely when the row carries no information.
        if let Some(r) = self.basis.iter().position(|&b| b == aux) {
            match (0..aux).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => self.pivot(r, j),
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        for row in &mut self.rows {
            row.remove(aux);
        }
        self.cols -= 1;
        true
    }

    /// Bland-rule simplex loop; returns false on unboundedness.
    fn run_simplex(&mut self) -> bool {
        loop {
            let Some(enter) = (0..self.cols).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let rhs = self.cols;
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let coeff = &self.rows[i][enter];
                if !coeff.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][rhs] / coeff;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        debug_assert!(!inv.is_zero());
        for x in self.rows[row].iter_mut() {
            *x = &*x / &inv;
        }
        let pivot_row = self.rows[row].clone();
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                let delta = &factor * p;
                *x = &*x - &delta;
            }
        }
        let factor = self.cost[col].clone();
        if !factor.is_zero() {
            for (x, p) in self.cost.iter_mut().zip(&pivot_row) {
                let delta = &factor * p;
                *x = &*x - &delta;
            }
        }
        self.basis[row] = col;
    }
}
