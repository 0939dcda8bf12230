//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex over `BigRational` with Bland's
//! anti-cycling rule. All variables are constrained to be nonnegative;
//! callers split free variables themselves.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

impl Constraint {
    pub fn new(coeffs: Vec<Q>, relation: Relation, rhs: Q) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn add(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    /// Returns some point satisfying every constraint, or `None`.
    pub fn feasible_point(&self) -> Option<Vec<Q>> {
        match self.maximize(&vec![Q::zero(); self.num_vars]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }

    /// Maximizes `objective · x` subject to the constraints and `x >= 0`.
    pub fn maximize(&self, objective: &[Q]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars);
        let n = self.num_vars;
        let m = self.constraints.len();

        // Column layout: structural | slack/surplus | artificial.
        let mut slack_cols = 0;
        let mut art_cols = 0;
        for c in &self.constraints {
            let rel = normalized_relation(c);
            match rel {
                Relation::Le => slack_cols += 1,
                Relation::Ge => {
                    slack_cols += 1;
                    art_cols += 1
                }
                Relation::Eq => art_cols += 1,
            }
        }
        let total = n + slack_cols + art_cols;
        let art_start = n + slack_cols;
        let mut t = Tableau {
            rows: Vec::with_capacity(m),
            rhs: Vec::with_capacity(m),
            basis: Vec::with_capacity(m),
        };
        let (mut next_slack, mut next_art) = (n, art_start);
        for c in &self.constraints {
            let flip = c.rhs.is_negative();
            let sgn = |v: &Q| if flip { -v.clone() } else { v.clone() };
            let mut row: Vec<Q> = c.coeffs.iter().map(sgn).collect();
            row.resize(total, Q::zero());
            let rhs = sgn(&c.rhs);
            match normalized_relation(c) {
                Relation::Le => {
                    row[next_slack] = Q::one();
                    t.basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Q::one();
                    next_slack += 1;
                    row[next_art] = Q::one();
                    t.basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Q::one();
                    t.basis.push(next_art);
                    next_art += 1;
                }
            }
            t.rows.push(row);
            t.rhs.push(rhs);
        }

        if art_cols > 0 {
            let mut phase1 = vec![Q::zero(); total];
            for c in phase1.iter_mut().skip(art_start) {
                *c = -Q::one();
            }
            let allowed = vec![true; total];
            // Phase one is bounded below by zero, so it always terminates.
            t.optimize(&phase1, &allowed);
            let value: Q = t
                .basis
                .iter()
                .zip(&t.rhs)
                .filter(|(b, _)| **b >= art_start)
                .map(|(_, r)| r.clone())
                .sum();
            if !value.is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut r = 0;
            while r < t.rows.len() {
                if t.basis[r] >= art_start {
                    match (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                        Some(j) => {
                            t.pivot(r, j);
                            r += 1;
                        }
                        None => {
                            t.rows.remove(r);
                            t.rhs.remove(r);
                            t.basis.remove(r);
                        }
                    }
                } else {
                    r += 1;
                }
            }
        }

        let mut cost = objective.to_vec();
        cost.resize(total, Q::zero());
        let allowed: Vec<bool> = (0..total).map(|j| j < art_start).collect();
        if !t.optimize(&cost, &allowed) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Q::zero(); n];
        for (b, r) in t.basis.iter().zip(&t.rhs) {
            if *b < n {
                x[*b] = r.clone();
            }
        }
        let value = x.iter().zip(objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { x, value }
    }
}

fn normalized_relation(c: &Constraint) -> Relation {
    match (c.relation, c.rhs.is_negative()) {
        (Relation::Le, true) => Relation::Ge,
        (Relation::Ge, true) => Relation::Le,
        (r, _) => r,
    }
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Runs primal simplex for `max cost·x`. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            // Bland: smallest improving column.
            let entering = (0..cost.len()).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() {
                        reduced -= &cost[*b] * &self.rows[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }
}

/// Shorthand for an integer rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}
