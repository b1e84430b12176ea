//! Exact-rational linear programming: a dense two-phase tableau simplex
//! with Bland's anti-cycling rule. Optimal results return a dual solution
//! and are re-verified (primal/dual feasibility, complementary slackness,
//! equal objectives) before being handed back.

use crate::error::{Error, Result};
use crate::exact::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// max/min c.x subject to row relations, x >= 0.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub direction: Direction,
    pub objective: Vec<Rat>,
    pub rows: Vec<(Vec<Rat>, Relation, Rat)>,
}

impl LinearProgram {
    pub fn new(direction: Direction, objective: Vec<Rat>) -> Self {
        LinearProgram {
            direction,
            objective,
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<Rat>, rel: Relation, rhs: Rat) -> Result<()> {
        if coeffs.len() != self.objective.len() {
            return Err(Error::WrongValueCount {
                expected: self.objective.len(),
                got: coeffs.len(),
            });
        }
        self.rows.push((coeffs, rel, rhs));
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. On `Optimal`, `value` is the exact optimum, `primal` the
/// optimizer, and `dual` one dual vector per constraint row (signs follow
/// the convention: >= 0 on Le rows, <= 0 on Ge rows, free on Eq rows, for
/// a maximization; negated for minimization).
#[derive(Debug, Clone)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Rat,
    pub primal: Vec<Rat>,
    pub dual: Vec<Rat>,
}

struct Tableau {
    /// rows x cols; the last column is the rhs.
    a: Vec<Vec<Rat>>,
    /// objective row (reduced costs), last entry = objective value.
    cost: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].clone().recip();
        for x in self.a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..self.a.len() {
            if r != row && !self.a[r][col].is_zero() {
                let f = self.a[r][col].clone();
                for c in 0..=self.ncols {
                    let t = &self.a[row][c] * &f;
                    self.a[r][c] -= t;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for c in 0..=self.ncols {
                let t = &self.a[row][c] * &f;
                self.cost[c] -= t;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = smallest-index column with positive
    /// reduced cost; leaving = min ratio, ties by smallest basis index.
    /// Returns false at optimality; error on unboundedness.
    fn simplex_step(&mut self, allowed: &dyn Fn(usize) -> bool) -> Result<bool> {
        let mut entering = None;
        for c in 0..self.ncols {
            if allowed(c) && self.cost[c].is_positive() {
                entering = Some(c);
                break;
            }
        }
        let Some(col) = entering else {
            return Ok(false);
        };
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..self.a.len() {
            if self.a[r][col].is_positive() {
                let ratio = &self.a[r][self.ncols] / &self.a[r][col];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Internal("unbounded".into()));
        };
        self.pivot(row, col);
        Ok(true)
    }
}

/// Exact two-phase simplex. See `LpResult` for the output conventions.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpResult> {
    let n = lp.num_vars();
    let m = lp.rows.len();
    let maximize = lp.direction == Direction::Maximize;

    // Normalize rows to nonnegative rhs; flipped rows get negated duals.
    let mut rows: Vec<(Vec<Rat>, Relation, Rat)> = lp.rows.clone();
    let mut flipped = vec![false; m];
    for (r, (coeffs, rel, rhs)) in rows.iter_mut().enumerate() {
        if rhs.is_negative() {
            flipped[r] = true;
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
            *rhs = -rhs.clone();
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    // Column layout: structural | slack/surplus | artificial | rhs.
    let mut nslack = 0usize;
    for (_, rel, _) in &rows {
        if *rel != Relation::Eq {
            nslack += 1;
        }
    }
    let mut nart = 0usize;
    for (_, rel, _) in &rows {
        if *rel != Relation::Le {
            nart += 1;
        }
    }
    let ncols = n + nslack + nart;
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    // support columns for dual extraction: the column that starts as +e_r
    let mut unit_col = vec![0usize; m];
    let mut artificial = vec![false; ncols];
    {
        let mut s = 0usize;
        let mut t = 0usize;
        for (r, (coeffs, rel, rhs)) in rows.iter().enumerate() {
            let mut row: Vec<Rat> = Vec::with_capacity(ncols + 1);
            row.extend(coeffs.iter().cloned());
            row.extend(std::iter::repeat(Rat::zero()).take(ncols - n));
            row.push(rhs.clone());
            match rel {
                Relation::Le => {
                    row[n + s] = Rat::one();
                    basis[r] = n + s;
                    unit_col[r] = n + s;
                    s += 1;
                }
                Relation::Ge => {
                    row[n + s] = -Rat::one();
                    s += 1;
                    row[n + nslack + t] = Rat::one();
                    basis[r] = n + nslack + t;
                    unit_col[r] = n + nslack + t;
                    artificial[n + nslack + t] = true;
                    t += 1;
                }
                Relation::Eq => {
                    row[n + nslack + t] = Rat::one();
                    basis[r] = n + nslack + t;
                    unit_col[r] = n + nslack + t;
                    artificial[n + nslack + t] = true;
                    t += 1;
                }
            }
            a.push(row);
        }
    }

    let mut tab = Tableau {
        a,
        cost: vec![Rat::zero(); ncols + 1],
        basis,
        ncols,
    };

    // Phase 1: maximize -(sum of artificials).
    if nart > 0 {
        for c in 0..ncols {
            if artificial[c] {
                tab.cost[c] = -Rat::one();
            }
        }
        // price out the basic artificials
        for r in 0..m {
            if artificial[tab.basis[r]] {
                for c in 0..=ncols {
                    let t = tab.a[r][c].clone();
                    tab.cost[c] += t;
                }
            }
        }
        loop {
            match tab.simplex_step(&|_| true) {
                Ok(true) => {}
                Ok(false) => break,
                Err(_) => return Err(Error::Internal("phase-1 unbounded".into())),
            }
        }
        // cost[ncols] now holds -(sum of artificials) phase-1 value offset;
        // infeasible iff the attained value is negative.
        let attained = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| artificial[b])
            .fold(Rat::zero(), |acc, (r, _)| acc + &tab.a[r][ncols]);
        if !attained.is_zero() {
            return Ok(LpResult {
                status: LpStatus::Infeasible,
                value: Rat::zero(),
                primal: vec![],
                dual: vec![],
            });
        }
        // drive remaining degenerate artificials out of the basis
        for r in 0..m {
            if artificial[tab.basis[r]] {
                if let Some(c) = (0..ncols).find(|&c| !artificial[c] && !tab.a[r][c].is_zero()) {
                    tab.pivot(r, c);
                }
                // a fully zero row is redundant; its artificial stays basic
                // at value zero, harmless in phase 2 (it never re-enters).
            }
        }
    }

    // Phase 2: the real objective.
    let obj: Vec<Rat> = if maximize {
        lp.objective.clone()
    } else {
        lp.objective.iter().map(|c| -c.clone()).collect()
    };
    tab.cost = vec![Rat::zero(); ncols + 1];
    for c in 0..n {
        tab.cost[c] = obj[c].clone();
    }
    // price out the current basis
    for r in 0..m {
        let b = tab.basis[r];
        if b < n && !obj[b].is_zero() {
            let f = obj[b].clone();
            for c in 0..=ncols {
                let t = &tab.a[r][c] * &f;
                tab.cost[c] -= t;
            }
        }
    }
    loop {
        match tab.simplex_step(&|c| !artificial[c]) {
            Ok(true) => {}
            Ok(false) => break,
            Err(_) => {
                return Ok(LpResult {
                    status: LpStatus::Unbounded,
                    value: Rat::zero(),
                    primal: vec![],
                    dual: vec![],
                })
            }
        }
    }

    // Read out the primal solution.
    let mut primal = vec![Rat::zero(); n];
    for r in 0..m {
        if tab.basis[r] < n {
            primal[tab.basis[r]] = tab.a[r][ncols].clone();
        }
    }
    let raw_value = -tab.cost[ncols].clone();
    // Duals: y_r = -(reduced cost of the column that started as +e_r),
    // negated again for rows that were sign-flipped above.
    let dual_max: Vec<Rat> = (0..m)
        .map(|r| {
            let y = -tab.cost[unit_col[r]].clone();
            if flipped[r] {
                -y
            } else {
                y
            }
        })
        .collect();

    let (value, dual) = if maximize {
        (raw_value, dual_max)
    } else {
        (-raw_value, dual_max.iter().map(|y| -y.clone()).collect())
    };

    let result = LpResult {
        status: LpStatus::Optimal,
        value,
        primal,
        dual,
    };
    verify_optimal(lp, &result)?;
    Ok(result)
}

/// Exact verification of an optimal result: primal feasibility, dual
/// feasibility, complementary slackness, and strong duality.
fn verify_optimal(lp: &LinearProgram, res: &LpResult) -> Result<()> {
    let n = lp.num_vars();
    let maximize = lp.direction == Direction::Maximize;
    let fail = |msg: &str| Err(Error::Internal(format!("LP verification failed: {msg}")));

    if res.primal.iter().any(|x| x.is_negative()) {
        return fail("negative primal variable");
    }
    let mut obj = Rat::zero();
    for (c, x) in lp.objective.iter().zip(&res.primal) {
        obj += c * x;
    }
    if obj != res.value {
        return fail("objective mismatch");
    }
    // primal feasibility + slackness terms
    let mut dual_obj = Rat::zero();
    for ((coeffs, rel, rhs), y) in lp.rows.iter().zip(&res.dual) {
        let mut ax = Rat::zero();
        for (a, x) in coeffs.iter().zip(&res.primal) {
            ax += a * x;
        }
        let ok = match rel {
            Relation::Le => ax <= *rhs,
            Relation::Eq => ax == *rhs,
            Relation::Ge => ax >= *rhs,
        };
        if !ok {
            return fail("primal infeasibility");
        }
        // dual sign convention (for max: Le -> y >= 0, Ge -> y <= 0)
        let sign_ok = match (rel, maximize) {
            (Relation::Eq, _) => true,
            (Relation::Le, true) | (Relation::Ge, false) => !y.is_negative(),
            (Relation::Ge, true) | (Relation::Le, false) => !y.is_positive(),
        };
        if !sign_ok {
            return fail("dual sign");
        }
        // complementary slackness on rows
        if !y.is_zero() && ax != *rhs {
            return fail("row complementary slackness");
        }
        dual_obj += y * rhs;
    }
    // dual feasibility + slackness on columns
    for j in 0..n {
        let mut yta = Rat::zero();
        for ((coeffs, _, _), y) in lp.rows.iter().zip(&res.dual) {
            yta += &coeffs[j] * y;
        }
        let cj = &lp.objective[j];
        let ok = if maximize { yta >= *cj } else { yta <= *cj };
        if !ok {
            return fail("dual infeasibility");
        }
        if !res.primal[j].is_zero() && yta != *cj {
            return fail("column complementary slackness");
        }
    }
    if dual_obj != res.value {
        return fail("strong duality gap");
    }
    Ok(())
}
