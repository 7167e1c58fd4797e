//! Subset-enumeration and search-tree solvers.
//!
//! `solve_icon_blue` / `solve_icon_red` enumerate candidate centers over
//! the union of blue (resp. red) supports; `solve_scp_icon` grows a center
//! one coordinate at a time, branching on a violated red/blue pair, with
//! depth capped by the conciseness budget.

use crate::bitvec::BitVector;
use crate::error::SolveError;
use crate::instance::{canonical_radius, empty_color_solution, Instance, Solution};

/// Default cap on the union-of-supports size enumerated by
/// [`solve_icon_blue`] and [`solve_icon_red`].
pub const DEFAULT_UNION_LIMIT: u32 = 22;

fn sorted_union<'a>(vectors: impl Iterator<Item = &'a BitVector>) -> Vec<u32> {
    let mut coords: Vec<u32> = vectors.flat_map(|v| v.support()).copied().collect();
    coords.sort_unstable();
    coords.dedup();
    coords
}

/// Enumerate the subsets of `pool` ascending by size, lexicographically
/// within one size, handing each to `visit` until it returns `true`.
fn for_each_subset(pool: &[u32], mut visit: impl FnMut(&[u32]) -> bool) -> bool {
    let n = pool.len();
    let mut picked: Vec<usize> = Vec::with_capacity(n);
    for k in 0..=n {
        picked.clear();
        picked.extend(0..k);
        loop {
            let subset: Vec<u32> = picked.iter().map(|&i| pool[i]).collect();
            if visit(&subset) {
                return true;
            }
            // advance the index combination
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if picked[i] < n - (k - i) {
                    picked[i] += 1;
                    for j in i + 1..k {
                        picked[j] = picked[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    false
}

/// FPT in data conciseness plus the number of blues: some solution has its
/// support inside the union of blue supports, so it suffices to try the
/// indicator of every subset of that union.
pub fn solve_icon_blue(inst: &Instance) -> Result<Option<Solution>, SolveError> {
    solve_icon_blue_with_limit(inst, DEFAULT_UNION_LIMIT)
}

pub fn solve_icon_blue_with_limit(
    inst: &Instance,
    limit: u32,
) -> Result<Option<Solution>, SolveError> {
    if let Some(answer) = empty_color_solution(inst, None) {
        return Ok(answer);
    }
    let pool = sorted_union(inst.blues().iter());
    if pool.len() as u32 > limit {
        return Err(SolveError::Refused(format!(
            "blue support union has {} coordinates, limit is {limit}",
            pool.len()
        )));
    }
    let mut found = None;
    for_each_subset(&pool, |subset| {
        let center = BitVector::new(inst.dim(), subset.to_vec()).expect("sorted subset");
        if let Some(radius) = canonical_radius(inst, &center).expect("same dim") {
            found = Some(Solution { center, radius });
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// The red-side counterpart: some solution is 1 everywhere outside the
/// union of red supports (raising such a coordinate adds one to every red
/// distance and at most one to every blue distance), so candidates are
/// that complement plus any subset of the union.
pub fn solve_icon_red(inst: &Instance) -> Result<Option<Solution>, SolveError> {
    solve_icon_red_with_limit(inst, DEFAULT_UNION_LIMIT)
}

pub fn solve_icon_red_with_limit(
    inst: &Instance,
    limit: u32,
) -> Result<Option<Solution>, SolveError> {
    if let Some(answer) = empty_color_solution(inst, None) {
        return Ok(answer);
    }
    let pool = sorted_union(inst.reds().iter());
    if pool.len() as u32 > limit {
        return Err(SolveError::Refused(format!(
            "red support union has {} coordinates, limit is {limit}",
            pool.len()
        )));
    }
    let outside =
        BitVector::new(inst.dim(), pool.clone()).expect("sorted union").complement();
    let mut found = None;
    for_each_subset(&pool, |subset| {
        let inside = BitVector::new(inst.dim(), subset.to_vec()).expect("sorted subset");
        let center = outside.xor(&inside).expect("same dim");
        if let Some(radius) = canonical_radius(inst, &center).expect("same dim") {
            found = Some(Solution { center, radius });
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Counters reported by [`solve_scp_icon_with_stats`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// Search-tree nodes visited, the root included.
    pub nodes: u64,
}

/// Bounded-conciseness search tree: start from the all-zero center; at a
/// node that is not yet a solution pick the first violated (red, blue)
/// pair in file order and branch on the blue-only coordinates that raise
/// the red distance relative to the blue one.
pub fn solve_scp_icon(inst: &Instance, budget: u32) -> Option<Solution> {
    solve_scp_icon_with_stats(inst, budget, false).0
}

/// `memoize` enables an optional visited-support set that deduplicates
/// branches; the plain search matches the bound counted by the tests.
pub fn solve_scp_icon_with_stats(
    inst: &Instance,
    budget: u32,
    memoize: bool,
) -> (Option<Solution>, SearchStats) {
    let mut stats = SearchStats::default();
    if let Some(answer) = empty_color_solution(inst, Some(budget)) {
        stats.nodes = 1;
        return (answer, stats);
    }
    let mut visited: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    let mut center = BitVector::zero(inst.dim());
    let result = descend(inst, budget, &mut center, &mut stats, memoize.then_some(&mut visited));
    (result, stats)
}

fn descend(
    inst: &Instance,
    budget: u32,
    center: &mut BitVector,
    stats: &mut SearchStats,
    mut visited: Option<&mut std::collections::HashSet<Vec<u32>>>,
) -> Option<Solution> {
    stats.nodes += 1;
    if let Some(radius) = canonical_radius(inst, center).expect("same dim") {
        return Some(Solution { center: center.clone(), radius });
    }
    if center.conciseness() >= budget {
        return None;
    }
    // First violated pair in file order: a red at most as far as some blue.
    let violated = inst.reds().iter().find_map(|r| {
        let dr = center.hamming(r).expect("same dim");
        inst.blues()
            .iter()
            .find(|b| dr <= center.hamming(b).expect("same dim"))
            .map(|b| (r, b))
    });
    let (red, blue) = violated.expect("not a solution, so some pair is violated");
    let branch_coords: Vec<u32> = blue
        .support()
        .iter()
        .filter(|&&c| !red.get(c) && !center.get(c))
        .copied()
        .collect();
    for c in branch_coords {
        let child = center.xor(&BitVector::from_coords(inst.dim(), [c]).unwrap()).unwrap();
        if let Some(v) = visited.as_deref_mut() {
            if !v.insert(child.support().to_vec()) {
                continue;
            }
        }
        let mut child = child;
        if let Some(sol) = descend(inst, budget, &mut child, stats, visited.as_deref_mut()) {
            return Some(sol);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::{bv, inst_a, parity};
    use crate::instance::Instance;
    use crate::oracle::solve_bounded_conciseness;

    #[test]
    fn blue_enumeration_on_inst_a() {
        let sol = solve_icon_blue(&inst_a()).unwrap().unwrap();
        assert_eq!(sol.center, bv(3, &[1, 2, 3]));
        assert_eq!(sol.radius, 1);
    }

    #[test]
    fn blue_enumeration_on_parity_is_no() {
        assert_eq!(solve_icon_blue(&parity()).unwrap(), None);
    }

    #[test]
    fn blue_singleton_pair() {
        let inst = Instance::new(2, vec![bv(2, &[1])], vec![bv(2, &[2])]).unwrap();
        let sol = solve_icon_blue(&inst).unwrap().unwrap();
        assert_eq!(sol.center, bv(2, &[1]));
        assert_eq!(sol.radius, 0);
    }

    #[test]
    fn red_enumeration_examples() {
        // inst A: the red union is empty, the lone candidate is 111.
        let sol = solve_icon_red(&inst_a()).unwrap().unwrap();
        assert_eq!(sol.center, bv(3, &[1, 2, 3]));
        assert_eq!(sol.radius, 1);

        // reds={110}, blues={001}: the empty red subset already works.
        let inst = Instance::new(3, vec![bv(3, &[3])], vec![bv(3, &[1, 2])]).unwrap();
        let sol = solve_icon_red(&inst).unwrap().unwrap();
        assert_eq!(sol.center, bv(3, &[3]));
        assert_eq!(sol.radius, 0);

        assert_eq!(solve_icon_red(&parity()).unwrap(), None);
    }

    #[test]
    fn union_limit_refusal() {
        let inst = Instance::new(
            30,
            vec![BitVector::from_coords(30, 1..=25).unwrap()],
            vec![bv(30, &[26])],
        )
        .unwrap();
        assert!(matches!(solve_icon_blue_with_limit(&inst, 22), Err(SolveError::Refused(_))));
    }

    #[test]
    fn search_tree_on_inst_a() {
        let sol = solve_scp_icon(&inst_a(), 3).unwrap();
        assert_eq!(sol.center, bv(3, &[1, 2, 3]));
        assert_eq!(sol.radius, 1);
        assert_eq!(solve_scp_icon(&inst_a(), 2), None);
    }

    #[test]
    fn zero_budget_root_success() {
        let inst = Instance::new(2, vec![BitVector::zero(2)], vec![bv(2, &[1, 2])]).unwrap();
        let sol = solve_scp_icon(&inst, 0).unwrap();
        assert_eq!(sol.center, BitVector::zero(2));
    }

    #[test]
    fn search_tree_matches_bounded_oracle() {
        let mut state = 0xb4a_9c2_u64;
        let mut rng = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        let mut checked = 0;
        while checked < 80 {
            let d = (rng() % 8 + 2) as u32;
            let make = |rng: &mut dyn FnMut() -> u64| {
                let k = rng() % (d as u64 / 2 + 1);
                let mut coords: Vec<u32> = (1..=d).collect();
                for i in 0..k as usize {
                    let j = i + (rng() as usize) % (coords.len() - i);
                    coords.swap(i, j);
                }
                let mut s: Vec<u32> = coords[..k as usize].to_vec();
                s.sort_unstable();
                BitVector::new(d, s).unwrap()
            };
            let blues: Vec<_> = (0..rng() % 3 + 1).map(|_| make(&mut rng)).collect();
            let reds: Vec<_> = (0..rng() % 3 + 1)
                .map(|_| make(&mut rng))
                .filter(|r| !blues.contains(r))
                .collect();
            if reds.is_empty() {
                continue;
            }
            let inst = Instance::new(d, blues, reds).unwrap();
            let icon = inst.data_conciseness() as u64;
            for budget in 0..=3u32 {
                let (got, stats) = solve_scp_icon_with_stats(&inst, budget, false);
                let expect = solve_bounded_conciseness(&inst, budget);
                assert_eq!(got.is_some(), expect.is_some(), "{inst:?} budget {budget}");
                let bound: u64 = (0..=budget)
                    .map(|j| icon.saturating_pow(j))
                    .sum();
                assert!(stats.nodes <= bound.max(1), "{} > {} on {inst:?}", stats.nodes, bound);
            }
            checked += 1;
        }
    }
}
