//! Exact two-phase simplex method with Bland's rule.
//!
//! Solves `max c·x  s.t.  A x <= b` over free real variables `x`.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Q, x: Vec<Q> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj·z` over columns accepted by `allowed`. Returns false if unbounded.
    fn optimize(&mut self, obj: &[Q], allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.width).filter(|&j| allowed(j)).find(|&j| {
                let mut cost = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !obj[b].is_zero() {
                        cost -= &obj[b] * &self.rows[i][j];
                    }
                }
                cost.is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(Q, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn value(&self, obj: &[Q]) -> Q {
        self.basis
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (i, &b)| acc + &obj[b] * self.rhs(i))
    }
}

pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let art0 = 2 * n + m;
    let width = art0 + negative.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if b[i].is_negative() { -Q::one() } else { Q::one() };
        let mut row = vec![Q::zero(); width + 1];
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
            row[n + j] = -&row[j];
        }
        row[2 * n + i] = sign.clone();
        row[width] = &b[i] * &sign;
        if let Some(pos) = negative.iter().position(|&r| r == i) {
            row[art0 + pos] = Q::one();
            basis.push(art0 + pos);
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, width };

    if !negative.is_empty() {
        let mut phase1 = vec![Q::zero(); width];
        for x in &mut phase1[art0..] {
            *x = -Q::one();
        }
        t.optimize(&phase1, |_| true);
        if t.value(&phase1).is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art0 {
                match (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
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
    }

    let mut obj = vec![Q::zero(); width];
    for j in 0..n {
        obj[j] = c[j].clone();
        obj[n + j] = -c[j].clone();
    }
    if !t.optimize(&obj, |j| j < art0) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] += t.rhs(i);
        } else if bv < 2 * n {
            x[bv - n] -= t.rhs(i);
        }
    }
    LpOutcome::Optimal { value: t.value(&obj), x }
}
