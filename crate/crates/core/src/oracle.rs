//! Exhaustive reference solvers. Deliberately free of any pruning: these
//! are the ground truth the cleverer solvers are tested against.

use crate::bitvec::BitVector;
use crate::error::SolveError;
use crate::instance::{canonical_radius, Instance, OptimalSolution, Solution};

/// Default cap on the dimension accepted by [`brute_force_solve`]; beyond
/// it the 2^d center sweep is refused.
pub const DEFAULT_BRUTE_LIMIT: u32 = 22;

/// Enumerate the supports of all centers of conciseness at most
/// `max_ones`, in ascending conciseness and lexicographically within one
/// conciseness. The visitor returns `true` to stop early; the function
/// reports whether it was stopped.
pub(crate) fn for_each_center(dim: u32, max_ones: u32, mut visit: impl FnMut(&[u32]) -> bool) -> bool {
    let max_ones = max_ones.min(dim) as usize;
    let mut support: Vec<u32> = Vec::with_capacity(max_ones);
    for k in 0..=max_ones {
        support.clear();
        support.extend(1..=k as u32);
        loop {
            if visit(&support) {
                return true;
            }
            if k == 0 || !next_combination(&mut support, dim) {
                break;
            }
        }
    }
    false
}

/// Advance a sorted k-subset of `[1, dim]` to its lexicographic successor.
fn next_combination(support: &mut [u32], dim: u32) -> bool {
    let k = support.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if support[i] < dim - (k - 1 - i) as u32 {
            support[i] += 1;
            for j in i + 1..k {
                support[j] = support[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Decide an instance by sweeping all 2^d centers in ascending
/// conciseness. Returns the optimum: minimum conciseness, then minimum
/// radius, ties broken by lexicographically smallest support.
pub fn brute_force_solve(inst: &Instance) -> Result<Option<OptimalSolution>, SolveError> {
    brute_force_solve_with_limit(inst, DEFAULT_BRUTE_LIMIT)
}

/// [`brute_force_solve`] with an explicit dimension cap.
pub fn brute_force_solve_with_limit(
    inst: &Instance,
    limit: u32,
) -> Result<Option<OptimalSolution>, SolveError> {
    if inst.dim() > limit {
        return Err(SolveError::Refused(format!(
            "brute force refuses dimension {} above limit {limit}",
            inst.dim()
        )));
    }
    Ok(best_center_up_to(inst, inst.dim()))
}

/// Decide whether a center of conciseness at most `budget` exists, by the
/// same enumeration as [`brute_force_solve`] restricted to small supports.
pub fn solve_bounded_conciseness(inst: &Instance, budget: u32) -> Option<Solution> {
    best_center_up_to(inst, budget).map(|opt| opt.solution)
}

/// Scan conciseness levels 0..=cap; at the first level holding any valid
/// center, return the minimum-radius one (lex-least support on radius ties).
fn best_center_up_to(inst: &Instance, cap: u32) -> Option<OptimalSolution> {
    let cap = cap.min(inst.dim());
    for k in 0..=cap {
        let mut best: Option<Solution> = None;
        let mut support: Vec<u32> = (1..=k).collect();
        loop {
            let center = BitVector::new(inst.dim(), support.clone()).expect("enumerated support");
            if let Some(radius) = canonical_radius(inst, &center).expect("same dimension") {
                if best.as_ref().is_none_or(|b| radius < b.radius) {
                    best = Some(Solution { center, radius });
                }
            }
            if k == 0 || !next_combination(&mut support, inst.dim()) {
                break;
            }
        }
        if let Some(solution) = best {
            return Some(OptimalSolution { solution, conciseness: k });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::{bv, inst_a, parity};
    use crate::instance::verify;

    #[test]
    fn enumeration_order_is_conciseness_then_lex() {
        let mut seen = Vec::new();
        for_each_center(3, 3, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
    }

    #[test]
    fn solves_inst_a() {
        let opt = brute_force_solve(&inst_a()).unwrap().unwrap();
        assert_eq!(opt.solution.center, bv(3, &[1, 2, 3]));
        assert_eq!(opt.solution.radius, 1);
        assert_eq!(opt.conciseness, 3);
    }

    #[test]
    fn parity_is_no() {
        assert!(brute_force_solve(&parity()).unwrap().is_none());
    }

    #[test]
    fn single_pair() {
        let inst = crate::instance::Instance::new(2, vec![bv(2, &[1])], vec![bv(2, &[2])]).unwrap();
        let opt = brute_force_solve(&inst).unwrap().unwrap();
        assert_eq!(opt.solution.center, bv(2, &[1]));
        assert_eq!(opt.solution.radius, 0);
        assert_eq!(opt.conciseness, 1);
    }

    #[test]
    fn refuses_large_dimension() {
        let inst = crate::instance::Instance::new(40, vec![bv(40, &[1])], vec![bv(40, &[2])]).unwrap();
        assert!(matches!(brute_force_solve(&inst), Err(SolveError::Refused(_))));
    }

    #[test]
    fn bounded_conciseness_examples() {
        let a = inst_a();
        assert!(solve_bounded_conciseness(&a, 2).is_none());
        let sol = solve_bounded_conciseness(&a, 3).unwrap();
        assert_eq!(sol.center, bv(3, &[1, 2, 3]));
        assert_eq!(sol.radius, 1);
    }

    #[test]
    fn bounded_at_full_budget_equals_brute() {
        for inst in [inst_a(), parity()] {
            let brute = brute_force_solve(&inst).unwrap();
            let bounded = solve_bounded_conciseness(&inst, inst.dim());
            assert_eq!(brute.map(|o| o.solution), bounded);
        }
    }

    #[test]
    fn every_answer_verifies() {
        let a = inst_a();
        let opt = brute_force_solve(&a).unwrap().unwrap();
        assert!(verify(&a, &opt.solution.center, opt.solution.radius).unwrap());
    }

    #[test]
    fn bounded_present_iff_brute_within_budget() {
        let mut rng = crate::generators::SplitMix64::new(0xb0b);
        let mut done = 0;
        while done < 80 {
            let d = 1 + rng.below(8) as u32;
            let seed = rng.next_u64();
            let Ok(inst) = crate::generators::gen_random(d, 2, 2, d.min(3), seed) else {
                continue;
            };
            done += 1;
            let brute = brute_force_solve(&inst).unwrap();
            for budget in 0..=d {
                let bounded = solve_bounded_conciseness(&inst, budget);
                let expect = brute.as_ref().is_some_and(|o| o.conciseness <= budget);
                assert_eq!(bounded.is_some(), expect, "{inst:?} budget {budget}");
            }
        }
    }
}
