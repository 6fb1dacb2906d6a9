//! Dense two-phase simplex over exact rationals.
//!
//! Problems are `minimize c·x` subject to linear rows and `x >= 0`. Bland's
//! rule keeps pivoting finite on degenerate problems. The instances here are
//! small (a handful of variables, tens of rows), so a dense tableau is fine.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    rel: Relation,
    rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    nvars: usize,
    objective: Vec<Rational>,
    rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram {
            nvars: objective.len(),
            objective,
            rows: Vec::new(),
        }
    }

    /// A pure feasibility problem in `nvars` variables.
    pub fn feasibility(nvars: usize) -> Self {
        Self::new(vec![Rational::zero(); nvars])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars, "constraint width");
        self.rows.push(Row { coeffs, rel, rhs });
        self
    }

    pub fn minimize(&self) -> LpOutcome {
        solve(self.nvars, &self.objective, &self.rows)
    }

    /// Among optimal points, the lexicographically smallest one: fix the
    /// optimum, then minimize `x_0`, `x_1`, ... in turn.
    pub fn lex_min_optimal(&self) -> LpOutcome {
        let first = self.minimize();
        let LpOutcome::Optimal { value, .. } = &first else {
            return first;
        };
        let mut rows = self.rows.clone();
        rows.push(Row {
            coeffs: self.objective.clone(),
            rel: Relation::Eq,
            rhs: value.clone(),
        });
        let mut point = Vec::with_capacity(self.nvars);
        for k in 0..self.nvars {
            let mut obj = vec![Rational::zero(); self.nvars];
            obj[k] = Rational::from_integer(1.into());
            let xk = match solve(self.nvars, &obj, &rows) {
                LpOutcome::Optimal { value, .. } => value,
                other => unreachable!("optimal face became {other:?}"),
            };
            let mut fix = vec![Rational::zero(); self.nvars];
            fix[k] = Rational::from_integer(1.into());
            rows.push(Row {
                coeffs: fix,
                rel: Relation::Eq,
                rhs: xk.clone(),
            });
            point.push(xk);
        }
        LpOutcome::Optimal {
            value: value.clone(),
            point,
        }
    }

    /// Minimum over integer points, by LP-based branch and bound. Intended
    /// for the bounded problems used here; returns `None` if infeasible.
    pub fn integer_minimize(&self) -> Option<LpOutcome> {
        let mut best: Option<(Rational, Vec<Rational>)> = None;
        let mut stack = vec![self.rows.clone()];
        while let Some(rows) = stack.pop() {
            let LpOutcome::Optimal { value, point } = solve(self.nvars, &self.objective, &rows) else {
                continue;
            };
            if best.as_ref().is_some_and(|(b, _)| value >= *b) {
                continue;
            }
            match point.iter().position(|x| !x.is_integer()) {
                None => best = Some((value, point)),
                Some(k) => {
                    let mut unit = vec![Rational::zero(); self.nvars];
                    unit[k] = Rational::from_integer(1.into());
                    let mut down = rows.clone();
                    down.push(Row {
                        coeffs: unit.clone(),
                        rel: Relation::Le,
                        rhs: point[k].floor(),
                    });
                    let mut up = rows;
                    up.push(Row {
                        coeffs: unit,
                        rel: Relation::Ge,
                        rhs: point[k].ceil(),
                    });
                    stack.push(up);
                    stack.push(down);
                }
            }
        }
        best.map(|(value, point)| LpOutcome::Optimal { value, point })
    }
}

struct Tableau {
    /// Each row holds the column coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.ncols]
    }

    /// Minimize `cost` over columns with `allowed[j]`; false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        reduced -= &cost[self.basis[i]] * &row[j];
                    }
                }
                reduced.is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(Rational, usize)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((q, br)) => ratio < *q || (ratio == *q && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((ratio, r));
                }
            }
            match best {
                Some((_, r)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .sum()
    }
}

fn solve(nvars: usize, objective: &[Rational], rows: &[Row]) -> LpOutcome {
    let zero = Rational::zero();
    let one = Rational::from_integer(1.into());
    // Normalize to nonnegative right-hand sides.
    let rows: Vec<Row> = rows
        .iter()
        .map(|row| {
            if row.rhs.is_negative() {
                Row {
                    coeffs: row.coeffs.iter().map(|x| -x).collect(),
                    rel: match row.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    },
                    rhs: -&row.rhs,
                }
            } else {
                row.clone()
            }
        })
        .collect();
    let nslack = rows.iter().filter(|r| r.rel != Relation::Eq).count();
    let nart = rows.iter().filter(|r| r.rel != Relation::Le).count();
    let ncols = nvars + nslack + nart;
    let mut tab = Tableau {
        rows: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
        ncols,
    };
    let (mut s, mut a) = (nvars, nvars + nslack);
    for row in &rows {
        let mut t = vec![zero.clone(); ncols + 1];
        t[..nvars].clone_from_slice(&row.coeffs);
        t[ncols] = row.rhs.clone();
        match row.rel {
            Relation::Le => {
                t[s] = one.clone();
                tab.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                t[s] = -one.clone();
                s += 1;
                t[a] = one.clone();
                tab.basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                t[a] = one.clone();
                tab.basis.push(a);
                a += 1;
            }
        }
        tab.rows.push(t);
    }

    let is_art = |j: usize| j >= nvars + nslack;
    if nart > 0 {
        let mut phase1 = vec![zero.clone(); ncols];
        for c in phase1.iter_mut().skip(nvars + nslack) {
            *c = one.clone();
        }
        let all = vec![true; ncols];
        tab.optimize(&phase1, &all);
        if tab.objective(&phase1).is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.rows.len() {
            if is_art(tab.basis[r]) {
                match (0..nvars + nslack).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(c) => tab.pivot(r, c),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut cost = vec![zero.clone(); ncols];
    cost[..nvars].clone_from_slice(objective);
    let allowed: Vec<bool> = (0..ncols).map(|j| !is_art(j)).collect();
    if !tab.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![zero; nvars];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nvars {
            point[b] = tab.rhs(i).clone();
        }
    }
    LpOutcome::Optimal {
        value: tab.objective(&cost),
        point,
    }
}
