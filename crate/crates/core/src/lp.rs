//! Exact feasibility of mixed systems of linear equalities, non-strict and
//! strict inequalities, by Gaussian substitution followed by Fourier–Motzkin
//! elimination. Returns a witness point when feasible.
//!
//! Strict inequalities are carried through elimination directly (a combined
//! inequality is strict when either parent is), so no margin variable is needed.

use std::collections::HashMap;

use crate::linalg::{dot, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

/// `⟨coeffs, x⟩ rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vector,
    pub rel: Rel,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn holds(&self, x: &[Scalar]) -> bool {
        let v = dot(&self.coeffs, x);
        match self.rel {
            Rel::Eq => v == self.rhs,
            Rel::Ge => v >= self.rhs,
            Rel::Gt => v > self.rhs,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    nvars: usize,
    rows: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn push(&mut self, coeffs: Vector, rel: Rel, rhs: Scalar) {
        assert_eq!(coeffs.len(), self.nvars, "constraint arity");
        self.rows.push(Constraint { coeffs, rel, rhs });
    }

    pub fn eq(&mut self, coeffs: Vector, rhs: Scalar) {
        self.push(coeffs, Rel::Eq, rhs);
    }

    pub fn ge(&mut self, coeffs: Vector, rhs: Scalar) {
        self.push(coeffs, Rel::Ge, rhs);
    }

    pub fn gt(&mut self, coeffs: Vector, rhs: Scalar) {
        self.push(coeffs, Rel::Gt, rhs);
    }

    pub fn le(&mut self, coeffs: Vector, rhs: Scalar) {
        self.push(coeffs.iter().map(|c| -c).collect(), Rel::Ge, -rhs);
    }

    pub fn lt(&mut self, coeffs: Vector, rhs: Scalar) {
        self.push(coeffs.iter().map(|c| -c).collect(), Rel::Gt, -rhs);
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }

    /// A point satisfying every constraint, or `None` if there is none.
    pub fn solve(&self) -> Option<Vector> {
        let n = self.nvars;
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for c in &self.rows {
            match c.rel {
                Rel::Eq => eqs.push(Row { a: c.coeffs.clone(), strict: false, r: c.rhs.clone() }),
                Rel::Ge => ineqs.push(Row { a: c.coeffs.clone(), strict: false, r: c.rhs.clone() }),
                Rel::Gt => ineqs.push(Row { a: c.coeffs.clone(), strict: true, r: c.rhs.clone() }),
            }
        }

        // Equalities: x_j = (r − Σ_{k≠j} a_k x_k) / a_j, substituted everywhere.
        let mut substitutions: Vec<(usize, Row)> = Vec::new();
        while let Some(e) = eqs.pop() {
            let Some(j) = e.a.iter().position(|x| !x.is_zero()) else {
                if !e.r.is_zero() {
                    return None;
                }
                continue;
            };
            let inv = e.a[j].inv().expect("nonzero");
            let e = e.scaled(&inv);
            for row in eqs.iter_mut().chain(ineqs.iter_mut()) {
                row.eliminate(j, &e);
            }
            for (_, row) in substitutions.iter_mut() {
                row.eliminate(j, &e);
            }
            substitutions.push((j, e));
        }

        let mut active: Vec<bool> = vec![true; n];
        for (j, _) in &substitutions {
            active[*j] = false;
        }
        let mut current = simplify(ineqs)?;
        let mut steps: Vec<(usize, Vec<Row>)> = Vec::new();
        loop {
            let Some(j) = pick_variable(&current, &active) else { break };
            active[j] = false;
            let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for row in current {
                match row.a[j].sign() {
                    1 => lower.push(row),
                    -1 => upper.push(row),
                    _ => rest.push(row),
                }
            }
            for p in &lower {
                for q in &upper {
                    // p/a_p + q/|a_q| cancels x_j.
                    let fp = p.a[j].inv().expect("nonzero");
                    let fq = q.a[j].abs().inv().expect("nonzero");
                    let mut combined = p.scaled(&fp);
                    combined.add_assign(&q.scaled(&fq));
                    combined.a[j] = Scalar::zero();
                    rest.push(combined);
                }
            }
            let mut bounds = lower;
            bounds.extend(upper);
            steps.push((j, bounds));
            current = simplify(rest)?;
        }

        // Back substitution, last eliminated variable first.
        let mut x = vec![Scalar::zero(); n];
        for (j, bounds) in steps.iter().rev() {
            x[*j] = choose_value(*j, bounds, &x);
        }
        for (j, e) in substitutions.iter().rev() {
            // e: x_j + Σ_{k≠j} a_k x_k = r
            let mut v = e.r.clone();
            for (k, a) in e.a.iter().enumerate() {
                if k != *j && !a.is_zero() {
                    v -= &(a * &x[k]);
                }
            }
            x[*j] = v;
        }
        debug_assert!(self.rows.iter().all(|c| c.holds(&x)), "witness violates system");
        Some(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Row {
    a: Vector,
    strict: bool,
    r: Scalar,
}

impl Row {
    fn scaled(&self, f: &Scalar) -> Row {
        Row { a: self.a.iter().map(|x| x * f).collect(), strict: self.strict, r: &self.r * f }
    }

    fn add_assign(&mut self, o: &Row) {
        for (x, y) in self.a.iter_mut().zip(&o.a) {
            if !y.is_zero() {
                *x += y;
            }
        }
        self.r += &o.r;
        self.strict |= o.strict;
    }

    /// Substitute `x_j` using the normalized equality `e` (coefficient 1 on `j`).
    fn eliminate(&mut self, j: usize, e: &Row) {
        if self.a[j].is_zero() {
            return;
        }
        let f = self.a[j].clone();
        for (k, y) in e.a.iter().enumerate() {
            if !y.is_zero() {
                self.a[k] -= &(&f * y);
            }
        }
        self.a[j] = Scalar::zero();
        self.r -= &(&f * &e.r);
    }
}

/// Drop trivial rows, detect contradictions, and keep one representative per
/// direction (the tightest right-hand side).
fn simplify(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: HashMap<Vector, (Scalar, bool)> = HashMap::new();
    let mut order: Vec<Vector> = Vec::new();
    for row in rows {
        let Some(lead) = row.a.iter().find(|x| !x.is_zero()) else {
            let ok = if row.strict { row.r.is_negative() } else { !row.r.is_positive() };
            if !ok {
                return None;
            }
            continue;
        };
        let f = lead.abs().inv().expect("nonzero");
        let row = row.scaled(&f);
        match best.get_mut(&row.a) {
            None => {
                order.push(row.a.clone());
                best.insert(row.a, (row.r, row.strict));
            }
            Some((r, strict)) => {
                if row.r > *r || (row.r == *r && row.strict) {
                    *r = row.r;
                    *strict = row.strict;
                }
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|a| {
                let (r, strict) = best.remove(&a).expect("recorded");
                Row { a, strict, r }
            })
            .collect(),
    )
}

fn pick_variable(rows: &[Row], active: &[bool]) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for j in (0..active.len()).filter(|&j| active[j]) {
        let (mut p, mut q, mut any) = (0usize, 0usize, false);
        for row in rows {
            match row.a[j].sign() {
                1 => p += 1,
                -1 => q += 1,
                _ => continue,
            }
            any = true;
        }
        if !any {
            continue;
        }
        let cost = p * q;
        if best.map_or(true, |(c, _)| cost < c) {
            best = Some((cost, j));
        }
    }
    best.map(|(_, j)| j)
}

/// A value for `x_j` within the bounds, given values of the variables
/// eliminated after it.
fn choose_value(j: usize, bounds: &[Row], x: &[Scalar]) -> Scalar {
    let mut lo: Option<(Scalar, bool)> = None;
    let mut hi: Option<(Scalar, bool)> = None;
    for row in bounds {
        let mut rest = row.r.clone();
        for (k, a) in row.a.iter().enumerate() {
            if k != j && !a.is_zero() {
                rest -= &(a * &x[k]);
            }
        }
        let bound = &rest / &row.a[j];
        if row.a[j].is_positive() {
            if lo.as_ref().map_or(true, |(v, s)| bound > *v || (bound == *v && row.strict && !s)) {
                lo = Some((bound, row.strict));
            }
        } else if hi.as_ref().map_or(true, |(v, s)| bound < *v || (bound == *v && row.strict && !s)) {
            hi = Some((bound, row.strict));
        }
    }
    let one = Scalar::one();
    match (lo, hi) {
        (Some((l, _)), Some((h, _))) => {
            if l == h {
                l
            } else {
                (&l + &h) * Scalar::ratio(1, 2)
            }
        }
        (Some((l, _)), None) => {
            if l.is_negative() {
                Scalar::zero()
            } else {
                l + one
            }
        }
        (None, Some((h, _))) => {
            if h.is_positive() {
                Scalar::zero()
            } else {
                h - one
            }
        }
        (None, None) => Scalar::zero(),
    }
}
