//! Linear-time solver for instances whose vectors carry at most three ones.
//!
//! For a fixed solution center `c`, `con(v) - 2 |O(v) ∩ O(c)|` compares
//! distances from `c`, and its minimum over the red vectors lies in
//! `[-3, 3]`. The solver cases on that minimum: the two outer cases each
//! have a single canonical candidate, and the two inner cases become
//! Boolean CSPs over the coordinates whose relations are closed under the
//! majority operation, hence reducible to 2-SAT.

use crate::bitvec::BitVector;
use crate::error::SolveError;
use crate::instance::{canonical_radius, empty_color_solution, Instance, Solution};
use crate::twosat::{solve_2sat, Lit, TwoSatFormula};

/// The four cases on the minimum red comparison value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    /// Minimum red value at most -1.
    RedNegative,
    /// Minimum red value exactly 0.
    RedZero,
    /// Minimum red value exactly 1.
    RedOne,
    /// Minimum red value at least 2.
    RedLarge,
}

pub const ALL_CASES: [CaseId; 4] =
    [CaseId::RedNegative, CaseId::RedZero, CaseId::RedOne, CaseId::RedLarge];

/// The constraint relations appearing in the two CSP cases, all over
/// scopes of arity 1..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Only the all-one tuple.
    AllOnes,
    /// Only the all-zero tuple.
    AllZeros,
    /// Tuples with at most one 1.
    AtMostOne,
    /// Tuples with at least one 1.
    AtLeastOne,
    /// Tuples with at least two 1s.
    AtLeastTwo,
}

impl Relation {
    /// Membership of a tuple, by counting ones.
    pub fn contains(self, tuple: &[bool]) -> bool {
        let ones = tuple.iter().filter(|&&b| b).count();
        match self {
            Relation::AllOnes => ones == tuple.len(),
            Relation::AllZeros => ones == 0,
            Relation::AtMostOne => ones <= 1,
            Relation::AtLeastOne => ones >= 1,
            Relation::AtLeastTwo => ones >= 2,
        }
    }

    /// Expand the relation on the given scope into equivalent 2-CNF
    /// clauses. Exactness is covered by truth-table tests.
    pub fn to_clauses(self, scope: &[usize], f: &mut TwoSatFormula) -> Result<(), SolveError> {
        if scope.is_empty() || scope.len() > 3 {
            return Err(SolveError::Internal(format!(
                "relation scope arity {} outside 1..=3",
                scope.len()
            )));
        }
        let pairs = || {
            (0..scope.len())
                .flat_map(|i| (i + 1..scope.len()).map(move |j| (scope[i], scope[j])))
        };
        match self {
            Relation::AllOnes => scope.iter().for_each(|&v| f.add_unit(Lit::pos(v))),
            Relation::AllZeros => scope.iter().for_each(|&v| f.add_unit(Lit::neg(v))),
            Relation::AtMostOne => pairs().for_each(|(a, b)| f.add_or(Lit::neg(a), Lit::neg(b))),
            Relation::AtLeastOne => match scope {
                [v] => f.add_unit(Lit::pos(*v)),
                [a, b] => f.add_or(Lit::pos(*a), Lit::pos(*b)),
                _ => {
                    return Err(SolveError::Internal(
                        "at-least-one used only on scopes of arity <= 2".into(),
                    ))
                }
            },
            Relation::AtLeastTwo => match scope {
                // empty relation: a single entry cannot hold two ones
                [v] => {
                    f.add_unit(Lit::pos(*v));
                    f.add_unit(Lit::neg(*v));
                }
                [a, b] => {
                    f.add_unit(Lit::pos(*a));
                    f.add_unit(Lit::pos(*b));
                }
                // arity 3: every pair must contain a one
                _ => pairs().for_each(|(a, b)| f.add_or(Lit::pos(a), Lit::pos(b))),
            },
        }
        Ok(())
    }
}

/// The relation attached to one vector in the CSP of an inner case, by
/// color and conciseness (1..=3).
fn case_relation(case: CaseId, is_blue: bool, con: u32) -> Relation {
    match (case, is_blue, con) {
        (CaseId::RedZero, true, 1) => Relation::AllOnes,
        (CaseId::RedZero, true, 2) => Relation::AllOnes,
        (CaseId::RedZero, true, 3) => Relation::AtLeastTwo,
        (CaseId::RedZero, false, 1) => Relation::AllZeros,
        (CaseId::RedZero, false, 2) => Relation::AtMostOne,
        (CaseId::RedZero, false, 3) => Relation::AtMostOne,
        (CaseId::RedOne, true, 1) => Relation::AllOnes,
        (CaseId::RedOne, true, 2) => Relation::AtLeastOne,
        (CaseId::RedOne, true, 3) => Relation::AtLeastTwo,
        (CaseId::RedOne, false, 1) => Relation::AllZeros,
        (CaseId::RedOne, false, 2) => Relation::AllZeros,
        (CaseId::RedOne, false, 3) => Relation::AtMostOne,
        _ => unreachable!("case_relation({case:?}, {is_blue}, {con})"),
    }
}

/// Build the 2-CNF encoding of the CSP for one of the two inner cases.
/// One Boolean variable per coordinate (variable `i` is coordinate `i+1`).
pub fn build_case_csp(inst: &Instance, case: CaseId) -> Result<TwoSatFormula, SolveError> {
    if !matches!(case, CaseId::RedZero | CaseId::RedOne) {
        return Err(SolveError::Internal(format!("case {case:?} has no CSP")));
    }
    ensure_low_conciseness(inst)?;
    let mut f = TwoSatFormula::new(inst.dim() as usize);
    for (vectors, is_blue) in [(inst.blues(), true), (inst.reds(), false)] {
        for v in vectors {
            if v.conciseness() == 0 {
                continue; // handled by the case guards in `case_candidate`
            }
            let scope: Vec<usize> = v.support().iter().map(|&c| (c - 1) as usize).collect();
            case_relation(case, is_blue, v.conciseness()).to_clauses(&scope, &mut f)?;
        }
    }
    Ok(f)
}

/// The at most one candidate center a case proposes. The candidate still
/// has to pass verification; for the CSP cases a satisfiable CSP whose
/// candidate fails is an internal error.
pub fn case_candidate(inst: &Instance, case: CaseId) -> Result<Option<BitVector>, SolveError> {
    ensure_low_conciseness(inst)?;
    let d = inst.dim();
    match case {
        CaseId::RedNegative => {
            // Requires every blue strictly negative, impossible when some
            // blue has at most one 1; otherwise the union of blue supports
            // is the only candidate worth checking.
            if inst.blues().iter().any(|b| b.conciseness() <= 1) {
                return Ok(None);
            }
            let mut coords: Vec<u32> = inst.blues().iter().flat_map(|b| b.support()).copied().collect();
            coords.sort_unstable();
            coords.dedup();
            Ok(Some(BitVector::new(d, coords).expect("sorted support")))
        }
        CaseId::RedLarge => {
            // Every red must share no selected coordinate; candidate is
            // everything outside the union of red supports.
            let mut red_union: Vec<u32> =
                inst.reds().iter().flat_map(|r| r.support()).copied().collect();
            red_union.sort_unstable();
            red_union.dedup();
            let union = BitVector::new(d, red_union).expect("sorted support");
            Ok(Some(union.complement()))
        }
        CaseId::RedZero | CaseId::RedOne => {
            // A zero-conciseness vector pins its comparison value at 0,
            // which contradicts the case bound for the color below.
            let impossible = match case {
                CaseId::RedZero => inst.blues().iter().any(|b| b.conciseness() == 0),
                _ => inst.reds().iter().any(|r| r.conciseness() == 0),
            };
            if impossible {
                return Ok(None);
            }
            let f = build_case_csp(inst, case)?;
            Ok(solve_2sat(&f).map(|assignment| {
                BitVector::from_coords(
                    d,
                    assignment
                        .iter()
                        .enumerate()
                        .filter(|(_, &b)| b)
                        .map(|(i, _)| i as u32 + 1),
                )
                .expect("assignment indexes coordinates")
            }))
        }
    }
}

/// Decide an instance with data conciseness at most 3 in time linear in
/// `|V| * d`, trying the four cases in order and returning the first
/// candidate that verifies.
pub fn solve_icon3(inst: &Instance) -> Result<Option<Solution>, SolveError> {
    ensure_low_conciseness(inst)?;
    if let Some(answer) = empty_color_solution(inst, None) {
        return Ok(answer);
    }
    for case in ALL_CASES {
        let Some(center) = case_candidate(inst, case)? else {
            continue;
        };
        match canonical_radius(inst, &center).expect("same dim") {
            Some(radius) => return Ok(Some(Solution { center, radius })),
            None if matches!(case, CaseId::RedZero | CaseId::RedOne) => {
                // The CSP encodes "is a solution" exactly for its case;
                // a satisfying assignment that does not verify means the
                // encoding is broken, not that the instance is NO.
                return Err(SolveError::Internal(format!(
                    "case {case:?} produced a CSP-satisfying candidate that fails verification"
                )));
            }
            None => {}
        }
    }
    Ok(None)
}

fn ensure_low_conciseness(inst: &Instance) -> Result<(), SolveError> {
    if inst.data_conciseness() > 3 {
        return Err(SolveError::Refused(format!(
            "requires data conciseness <= 3, instance has {}",
            inst.data_conciseness()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::{bv, parity};
    use crate::instance::{verify, Instance};
    use crate::oracle::brute_force_solve;

    #[test]
    fn red_large_case_example() {
        let inst = Instance::new(3, vec![bv(3, &[2, 3])], vec![bv(3, &[1])]).unwrap();
        let sol = solve_icon3(&inst).unwrap().unwrap();
        assert_eq!(sol.center, bv(3, &[2, 3]));
        assert_eq!(sol.radius, 0);
    }

    #[test]
    fn red_negative_case_example() {
        let inst = Instance::new(4, vec![bv(4, &[1, 2])], vec![bv(4, &[3, 4])]).unwrap();
        let sol = solve_icon3(&inst).unwrap().unwrap();
        assert_eq!(sol.center, bv(4, &[1, 2]));
        assert_eq!(sol.radius, 0);
    }

    #[test]
    fn parity_is_no() {
        assert_eq!(solve_icon3(&parity()).unwrap(), None);
    }

    #[test]
    fn red_negative_rejects_concise_blue() {
        let inst =
            Instance::new(3, vec![bv(3, &[2]), bv(3, &[1, 2])], vec![bv(3, &[3])]).unwrap();
        assert_eq!(case_candidate(&inst, CaseId::RedNegative).unwrap(), None);
    }

    #[test]
    fn red_zero_csp_example() {
        // blues={110}, reds={011}: blue forces x1=x2=1, red allows at most
        // one of {x2,x3}, so x3=0 and the candidate is 110.
        let inst = Instance::new(3, vec![bv(3, &[1, 2])], vec![bv(3, &[2, 3])]).unwrap();
        let cand = case_candidate(&inst, CaseId::RedZero).unwrap().unwrap();
        assert_eq!(cand, bv(3, &[1, 2]));
    }

    #[test]
    fn refuses_high_conciseness() {
        let inst = Instance::new(4, vec![bv(4, &[1, 2, 3, 4])], vec![bv(4, &[1])]).unwrap();
        assert!(matches!(solve_icon3(&inst), Err(SolveError::Refused(_))));
    }

    #[test]
    fn relation_clause_shapes() {
        let mut f = TwoSatFormula::new(3);
        Relation::AtLeastTwo.to_clauses(&[0, 1, 2], &mut f).unwrap();
        assert_eq!(f.clauses.len(), 3);
        let mut f = TwoSatFormula::new(3);
        Relation::AtMostOne.to_clauses(&[0, 1, 2], &mut f).unwrap();
        assert_eq!(f.clauses.len(), 3);
        let mut f = TwoSatFormula::new(2);
        Relation::AllOnes.to_clauses(&[0, 1], &mut f).unwrap();
        assert_eq!(f.clauses.len(), 2);
    }

    /// Truth-table check that a relation's clause expansion is exact.
    fn encoding_is_exact(rel: Relation, arity: usize) {
        let scope: Vec<usize> = (0..arity).collect();
        let mut f = TwoSatFormula::new(arity);
        rel.to_clauses(&scope, &mut f).unwrap();
        for m in 0..1u32 << arity {
            let tuple: Vec<bool> = (0..arity).map(|i| m >> i & 1 == 1).collect();
            assert_eq!(
                f.satisfied_by(&tuple),
                rel.contains(&tuple),
                "{rel:?}/{arity} at {tuple:?}"
            );
        }
    }

    #[test]
    fn all_case_encodings_are_exact() {
        for arity in 1..=3 {
            encoding_is_exact(Relation::AllOnes, arity);
            encoding_is_exact(Relation::AllZeros, arity);
            encoding_is_exact(Relation::AtMostOne, arity);
            encoding_is_exact(Relation::AtLeastTwo, arity);
            if arity <= 2 {
                encoding_is_exact(Relation::AtLeastOne, arity);
            }
        }
    }

    /// Closure under the ternary Boolean majority, checked exhaustively.
    #[test]
    fn relations_closed_under_majority() {
        for arity in 1..=3usize {
            for rel in [
                Relation::AllOnes,
                Relation::AllZeros,
                Relation::AtMostOne,
                Relation::AtLeastTwo,
            ] {
                let tuples: Vec<Vec<bool>> = (0..1u32 << arity)
                    .map(|m| (0..arity).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
                    .filter(|t| rel.contains(t))
                    .collect();
                for a in &tuples {
                    for b in &tuples {
                        for c in &tuples {
                            let maj: Vec<bool> = (0..arity)
                                .map(|i| {
                                    (u8::from(a[i]) + u8::from(b[i]) + u8::from(c[i])) >= 2
                                })
                                .collect();
                            assert!(rel.contains(&maj), "{rel:?}/{arity} not majority-closed");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_oracle_on_small_instances() {
        let mut state = 0xc59_1c0_u64;
        let mut rng = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        let mut checked = 0;
        while checked < 120 {
            let d = (rng() % 8 + 1) as u32;
            let make = |rng: &mut dyn FnMut() -> u64| {
                let k = rng() % 4.min(d as u64 + 1);
                let mut coords: Vec<u32> = (1..=d).collect();
                for i in 0..k as usize {
                    let j = i + (rng() as usize) % (coords.len() - i);
                    coords.swap(i, j);
                }
                let mut s: Vec<u32> = coords[..k as usize].to_vec();
                s.sort_unstable();
                BitVector::new(d, s).unwrap()
            };
            let blues: Vec<_> = (0..rng() % 4 + 1).map(|_| make(&mut rng)).collect();
            let reds: Vec<_> = (0..rng() % 4 + 1).map(|_| make(&mut rng)).collect();
            let reds: Vec<_> = reds.into_iter().filter(|r| !blues.contains(r)).collect();
            if reds.is_empty() {
                continue;
            }
            let inst = Instance::new(d, blues, reds).unwrap();
            let expect = brute_force_solve(&inst).unwrap().is_some();
            let got = solve_icon3(&inst).unwrap();
            assert_eq!(got.is_some(), expect, "{inst:?}");
            if let Some(sol) = got {
                assert!(verify(&inst, &sol.center, sol.radius).unwrap());
            }
            checked += 1;
        }
    }
}
