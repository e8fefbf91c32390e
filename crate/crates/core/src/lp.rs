//! Exact rational linear programming: two-phase tableau simplex under Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Sense {
    Min,
    Max,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<Q>,
    free: Vec<bool>,
    rows: Vec<(Vec<Q>, Relation, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Q>,
        value: Q,
        /// Indices of constraints holding with equality at `x`.
        active: Vec<usize>,
    },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    /// Variables are nonnegative unless marked free.
    pub fn minimize(objective: Vec<Q>) -> Self {
        let n = objective.len();
        LinearProgram { sense: Sense::Min, objective, free: vec![false; n], rows: Vec::new() }
    }

    pub fn maximize(objective: Vec<Q>) -> Self {
        LinearProgram { sense: Sense::Max, ..Self::minimize(objective) }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_free(&mut self, j: usize) -> &mut Self {
        self.free[j] = true;
        self
    }

    pub fn constraint(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.rows.push((coeffs, rel, rhs));
        self
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars();
        // Column layout: x+ (n), x- for free vars, one slack per inequality.
        let free_cols: Vec<usize> = (0..n).filter(|&j| self.free[j]).collect();
        let n_slack = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let width = n + free_cols.len() + n_slack;
        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        let mut slack_of_row = vec![None; self.rows.len()];
        let mut next_slack = n + free_cols.len();
        for (i, (coeffs, rel, rhs)) in self.rows.iter().enumerate() {
            let mut row = vec![Q::zero(); width];
            row[..n].clone_from_slice(coeffs);
            for (k, &j) in free_cols.iter().enumerate() {
                row[n + k] = -coeffs[j].clone();
            }
            match rel {
                Relation::Le => row[next_slack] = Q::one(),
                Relation::Ge => row[next_slack] = -Q::one(),
                Relation::Eq => {}
            }
            if *rel != Relation::Eq {
                slack_of_row[i] = Some(next_slack);
                next_slack += 1;
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let sign = if self.sense == Sense::Max { -Q::one() } else { Q::one() };
        let mut c = vec![Q::zero(); width];
        for (cj, oj) in c.iter_mut().zip(&self.objective) {
            *cj = &sign * oj;
        }
        for (k, &j) in free_cols.iter().enumerate() {
            c[n + k] = -(&sign * &self.objective[j]);
        }
        match solve_standard(&a, &b, &c) {
            StandardOutcome::Infeasible => LpOutcome::Infeasible,
            StandardOutcome::Unbounded => LpOutcome::Unbounded,
            StandardOutcome::Optimal(y) => {
                let mut x: Vec<Q> = y[..n].to_vec();
                for (k, &j) in free_cols.iter().enumerate() {
                    x[j] -= &y[n + k];
                }
                let value: Q = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                let active = (0..self.rows.len()).filter(|&i| slack_of_row[i].is_none_or(|s| y[s].is_zero())).collect();
                LpOutcome::Optimal { x, value, active }
            }
        }
    }
}

enum StandardOutcome {
    Optimal(Vec<Q>),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
}

const PIVOT_LIMIT: usize = 1_000_000;

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        self.rows[i].last().expect("rhs column")
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations over columns `< ncols` for costs `c`; false if unbounded.
    fn optimize(&mut self, c: &[Q], ncols: usize) -> bool {
        for _ in 0..PIVOT_LIMIT {
            let entering = (0..ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z: Q = self.basis.iter().enumerate().map(|(i, &bj)| &c[bj] * &self.rows[i][j]).sum();
                (&c[j] - z).is_negative()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
        panic!("simplex exceeded {PIVOT_LIMIT} pivots; Bland's rule should prevent cycling");
    }
}

/// min `c·y` subject to `A y = b`, `y ≥ 0`.
fn solve_standard(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> StandardOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if neg { -v.clone() } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect() };
    let mut phase1 = vec![Q::zero(); n + m];
    for v in phase1.iter_mut().skip(n) {
        *v = Q::one();
    }
    let bounded = t.optimize(&phase1, n + m);
    debug_assert!(bounded, "phase one is bounded below by zero");
    let infeasibility: Q = (0..t.rows.len()).filter(|&i| t.basis[i] >= n).map(|i| t.rhs(i).clone()).sum();
    if infeasibility.is_positive() {
        return StandardOutcome::Infeasible;
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut c2 = c.to_vec();
    c2.extend((0..m).map(|_| Q::zero()));
    if !t.optimize(&c2, n) {
        return StandardOutcome::Unbounded;
    }
    let mut y = vec![Q::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        y[bj] = t.rhs(i).clone();
    }
    StandardOutcome::Optimal(y)
}
