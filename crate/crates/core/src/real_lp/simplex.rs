//! Dense two-phase primal simplex over exact rationals, Bland's rule.
//!
//! Small and unoptimized on purpose: the separation LPs solved here have a
//! handful of variables and at most a few hundred rows, and exactness is
//! worth more than speed.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal,
    Infeasible,
    Unbounded,
}

pub struct LpSolution {
    pub outcome: LpOutcome,
    /// Values of the structural variables (empty unless optimal).
    pub values: Vec<BigRational>,
    /// Objective value at the optimum (zero unless optimal).
    pub objective: BigRational,
}

/// Maximize `c . y` subject to `rows . y <= rhs`, `y >= 0`.
pub fn maximize(
    rows: &[Vec<BigRational>],
    rhs: &[BigRational],
    c: &[BigRational],
) -> LpSolution {
    let m = rows.len();
    let n = c.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(rhs.len(), m);

    // Columns: n structural, m slacks, then one artificial per negative rhs.
    let negatives: Vec<usize> = (0..m).filter(|&i| rhs[i].is_negative()).collect();
    let total = n + m + negatives.len();
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut b: Vec<BigRational> = Vec::with_capacity(m);
    let mut next_artificial = n + m;
    for i in 0..m {
        let mut row = vec![BigRational::zero(); total];
        let negate = rhs[i].is_negative();
        for j in 0..n {
            row[j] = if negate { -rows[i][j].clone() } else { rows[i][j].clone() };
        }
        row[n + i] = if negate { -BigRational::one() } else { BigRational::one() };
        if negate {
            row[next_artificial] = BigRational::one();
            basis.push(next_artificial);
            next_artificial += 1;
            b.push(-rhs[i].clone());
        } else {
            basis.push(n + i);
            b.push(rhs[i].clone());
        }
        t.push(row);
    }

    if !negatives.is_empty() {
        // Phase 1: maximize minus the sum of artificials.
        let mut phase1 = vec![BigRational::zero(); total];
        for c in phase1.iter_mut().skip(n + m) {
            *c = -BigRational::one();
        }
        let (outcome, objective) = run(&mut t, &mut b, &mut basis, &phase1, total, usize::MAX);
        debug_assert_eq!(outcome, LpOutcome::Optimal, "phase 1 is bounded");
        if !objective.is_zero() {
            return LpSolution {
                outcome: LpOutcome::Infeasible,
                values: Vec::new(),
                objective: BigRational::zero(),
            };
        }
        // Pivot any artificial still basic (at zero) out on a real column,
        // or drop its redundant row.
        let mut i = 0;
        while i < t.len() {
            if basis[i] >= n + m {
                if let Some(j) = (0..n + m).find(|&j| !t[i][j].is_zero()) {
                    pivot(&mut t, &mut b, &mut basis, i, j);
                } else {
                    t.remove(i);
                    b.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    // Phase 2 over the real objective; artificial columns are barred.
    let mut cost = vec![BigRational::zero(); total];
    cost[..n].clone_from_slice(c);
    let (outcome, objective) = run(&mut t, &mut b, &mut basis, &cost, n + m, usize::MAX);
    if outcome != LpOutcome::Optimal {
        return LpSolution { outcome, values: Vec::new(), objective: BigRational::zero() };
    }
    let mut values = vec![BigRational::zero(); n];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < n {
            values[bi] = b[i].clone();
        }
    }
    LpSolution { outcome: LpOutcome::Optimal, values, objective }
}

/// Bland-rule pivoting until optimal or unbounded. Columns at index
/// `allowed_cols` or beyond never enter. Returns the objective value.
fn run(
    t: &mut [Vec<BigRational>],
    b: &mut [BigRational],
    basis: &mut [usize],
    cost: &[BigRational],
    allowed_cols: usize,
    max_pivots: usize,
) -> (LpOutcome, BigRational) {
    let total = cost.len();
    // reduced costs: z[j] = cost[j] - sum_i cost[basis[i]] * t[i][j]
    let mut z: Vec<BigRational> = cost.to_vec();
    let mut obj = BigRational::zero();
    for (i, &bi) in basis.iter().enumerate() {
        if !cost[bi].is_zero() {
            let cb = cost[bi].clone();
            for j in 0..total {
                let delta = &cb * &t[i][j];
                z[j] -= delta;
            }
            obj += cb * &b[i];
        }
    }

    for _ in 0..max_pivots {
        let Some(enter) = (0..allowed_cols.min(total)).find(|&j| z[j].is_positive()) else {
            return (LpOutcome::Optimal, obj);
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..t.len() {
            if t[i][enter].is_positive() {
                let ratio = &b[i] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => {
                        ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(row) = leave else {
            return (LpOutcome::Unbounded, obj);
        };
        let gain = &z[enter] * (&b[row] / &t[row][enter]);
        obj += gain;
        pivot(t, b, basis, row, enter);
        // update reduced costs
        let factor = z[enter].clone();
        for j in 0..total {
            let delta = &factor * &t[row][j];
            z[j] -= delta;
        }
    }
    unreachable!("pivot budget exhausted; Bland's rule precludes cycling")
}

fn pivot(t: &mut [Vec<BigRational>], b: &mut [BigRational], basis: &mut [usize], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    b[row] /= &p;
    for i in 0..t.len() {
        if i == row || t[i][col].is_zero() {
            continue;
        }
        let f = t[i][col].clone();
        for j in 0..t[i].len() {
            let delta = &f * &t[row][j];
            t[i][j] -= delta;
        }
        let delta = &f * &b[row];
        b[i] -= delta;
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn simple_bounded_max() {
        // max x + 2y s.t. x + y <= 3, x <= 2, y <= 2
        let rows = vec![
            vec![q(1, 1), q(1, 1)],
            vec![q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1)],
        ];
        let rhs = vec![q(3, 1), q(2, 1), q(2, 1)];
        let sol = maximize(&rows, &rhs, &[q(1, 1), q(2, 1)]);
        assert_eq!(sol.outcome, LpOutcome::Optimal);
        assert_eq!(sol.objective, q(5, 1));
        assert_eq!(sol.values, vec![q(1, 1), q(2, 1)]);
    }

    #[test]
    fn negative_rhs_requires_phase_one() {
        // max y s.t. -x <= -1 (x >= 1), x + y <= 2
        let rows = vec![vec![q(-1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]];
        let rhs = vec![q(-1, 1), q(2, 1)];
        let sol = maximize(&rows, &rhs, &[q(0, 1), q(1, 1)]);
        assert_eq!(sol.outcome, LpOutcome::Optimal);
        assert_eq!(sol.objective, q(1, 1));
    }

    #[test]
    fn infeasible_system() {
        // x <= 1 and x >= 2
        let rows = vec![vec![q(1, 1)], vec![q(-1, 1)]];
        let rhs = vec![q(1, 1), q(-2, 1)];
        let sol = maximize(&rows, &rhs, &[q(1, 1)]);
        assert_eq!(sol.outcome, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let sol = maximize(&[], &[], &[q(1, 1)]);
        assert_eq!(sol.outcome, LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // max x s.t. 3x <= 1
        let sol = maximize(&[vec![q(3, 1)]], &[q(1, 1)], &[q(1, 1)]);
        assert_eq!(sol.values, vec![q(1, 3)]);
    }
}
