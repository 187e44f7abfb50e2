//! A small exact two-phase simplex over arbitrary-precision rationals.
//!
//! Used by the polytope code for vertex tests and cone dimensions. Bland's
//! rule guarantees termination; everything is exact, no tolerances.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Unbounded,
    Infeasible,
}

/// Maximize `c . x` subject to `a_ub x <= b_ub`, `a_eq x = b_eq`, `x >= 0`.
pub fn solve_lp(
    c: &[BigRational],
    a_ub: &[Vec<BigRational>],
    b_ub: &[BigRational],
    a_eq: &[Vec<BigRational>],
    b_eq: &[BigRational],
) -> LpOutcome {
    let n = c.len();
    let m_ub = a_ub.len();
    let m_eq = a_eq.len();
    let m = m_ub + m_eq;
    let n_slack = m_ub;
    let total = n + n_slack + m;

    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for (i, row) in a_ub.iter().enumerate() {
        assert_eq!(row.len(), n);
        let mut r = vec![BigRational::zero(); total];
        r[..n].clone_from_slice(row);
        r[n + i] = BigRational::one();
        rows.push(r);
        rhs.push(b_ub[i].clone());
    }
    for row in a_eq.iter() {
        assert_eq!(row.len(), n);
        let mut r = vec![BigRational::zero(); total];
        r[..n].clone_from_slice(row);
        rows.push(r);
    }
    rhs.extend(b_eq.iter().cloned());
    // Normalize rhs >= 0.
    for i in 0..m {
        if rhs[i].is_negative() {
            for v in rows[i].iter_mut() {
                *v = -v.clone();
            }
            rhs[i] = -rhs[i].clone();
        }
    }
    // Artificial identity basis.
    let mut basis = Vec::with_capacity(m);
    for (i, row) in rows.iter_mut().enumerate() {
        row[n + n_slack + i] = BigRational::one();
        basis.push(n + n_slack + i);
    }

    let mut t = Tableau { rows, rhs, basis, n_cols: total, blocked_from: None };

    // Phase 1: maximize -(sum of artificials).
    let mut obj1 = vec![BigRational::zero(); total];
    for j in 0..m {
        obj1[n + n_slack + j] = -BigRational::one();
    }
    match t.optimize(&obj1) {
        SimplexResult::Unbounded => unreachable!("phase-1 objective is bounded"),
        SimplexResult::Optimal(v) => {
            if v.is_negative() {
                return LpOutcome::Infeasible;
            }
        }
    }
    // Drive artificial variables out of the basis where possible.
    let art_start = n + n_slack;
    for i in 0..t.basis.len() {
        if t.basis[i] >= art_start {
            for j in 0..art_start {
                if !t.rows[i][j].is_zero() {
                    t.pivot(i, j);
                    break;
                }
            }
            // If no pivot exists the row is redundant; the artificial stays
            // basic at value zero, which is harmless.
        }
    }
    // Phase 2 with artificial columns blocked from entering.
    let mut obj2 = vec![BigRational::zero(); total];
    obj2[..n].clone_from_slice(c);
    t.blocked_from = Some(art_start);
    match t.optimize(&obj2) {
        SimplexResult::Unbounded => LpOutcome::Unbounded,
        SimplexResult::Optimal(v) => {
            let mut x = vec![BigRational::zero(); n];
            for (i, &b) in t.basis.iter().enumerate() {
                if b < n {
                    x[b] = t.rhs[i].clone();
                }
            }
            LpOutcome::Optimal { value: v, x }
        }
    }
}

enum SimplexResult {
    Optimal(BigRational),
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    n_cols: usize,
    blocked_from: Option<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        debug_assert!(!piv.is_zero());
        for v in self.rows[r].iter_mut() {
            *v = &*v / &piv;
        }
        self.rhs[r] = &self.rhs[r] / &piv;
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.n_cols {
                let d = &self.rows[r][j] * &f;
                self.rows[i][j] = &self.rows[i][j] - d;
            }
            let d = &self.rhs[r] * &f;
            self.rhs[i] = &self.rhs[i] - d;
        }
        self.basis[r] = c;
    }

    fn optimize(&mut self, c: &[BigRational]) -> SimplexResult {
        loop {
            // Reduced costs: c_j - c_B . (tableau column j).
            let mut reduced = c.to_vec();
            for (i, &b) in self.basis.iter().enumerate() {
                let cb = c[b].clone();
                if cb.is_zero() {
                    continue;
                }
                for j in 0..self.n_cols {
                    let d = &self.rows[i][j] * &cb;
                    reduced[j] = &reduced[j] - d;
                }
            }
            let limit = self.blocked_from.unwrap_or(self.n_cols);
            // Bland: smallest improving index.
            let entering = (0..limit).find(|&j| reduced[j].is_positive());
            let Some(col) = entering else {
                let mut value = BigRational::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    value += &c[b] * &self.rhs[i];
                }
                return SimplexResult::Optimal(value);
            };
            // Ratio test with Bland tie-break on basis index.
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][col];
                    match &leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < *lr
                                || (ratio == *lr && self.basis[i] < self.basis[*li])
                            {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            match leave {
                None => return SimplexResult::Unbounded,
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn simple_max() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let out = solve_lp(
            &[r(1), r(1)],
            &[vec![r(1), r(2)], vec![r(3), r(1)]],
            &[r(4), r(6)],
            &[],
            &[],
        );
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rq(14, 5)),
            _ => panic!("expected optimum"),
        }
    }

    #[test]
    fn infeasible_detected() {
        let out = solve_lp(&[r(0)], &[vec![r(1)]], &[r(-1)], &[], &[]);
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let out = solve_lp(&[r(1)], &[], &[], &[], &[]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn equality_membership() {
        // Is (1/2, 1/2) in conv{(0,0),(1,0),(0,1)}?
        let pts = [[0, 0], [1, 0], [0, 1]];
        let mut a_eq: Vec<Vec<BigRational>> = vec![Vec::new(), Vec::new(), Vec::new()];
        for p in &pts {
            a_eq[0].push(r(p[0]));
            a_eq[1].push(r(p[1]));
            a_eq[2].push(r(1));
        }
        let b_eq = vec![rq(1, 2), rq(1, 2), r(1)];
        let out = solve_lp(&[r(0), r(0), r(0)], &[], &[], &a_eq, &b_eq);
        assert!(matches!(out, LpOutcome::Optimal { .. }));
        let b_eq2 = vec![r(2), r(2), r(1)];
        let out2 = solve_lp(&[r(0), r(0), r(0)], &[], &[], &a_eq, &b_eq2);
        assert_eq!(out2, LpOutcome::Infeasible);
    }
}
