//! Separation as integer feasibility over column types.
//!
//! Columns of the vector matrix that carry the same 0/1 pattern are
//! interchangeable with respect to all pairwise distances, so a center is
//! determined, up to exchange, by how many ones it places inside each
//! column type. One bounded integer variable per type and one inequality
//! per (blue, red) pair encode the whole problem.

use crate::bitvec::BitVector;
use crate::error::SolveError;
use crate::instance::{canonical_radius, empty_color_solution, Instance, Solution};
use std::fmt::Write as _;

/// An equivalence class of coordinates: identical matrix columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnType {
    /// The column pattern, one bit per vector in canonical order
    /// (blues then reds, file order).
    pub signature: Vec<bool>,
    /// Coordinates carrying this column, ascending.
    pub coords: Vec<u32>,
}

impl ColumnType {
    /// Number of coordinates in the class.
    pub fn count(&self) -> u32 {
        self.coords.len() as u32
    }
}

/// `sum(coeffs[i] * x_i) <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLe {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

/// The feasibility model: one variable per column type, bounded by the
/// class size, plus one pair constraint per (blue, red).
#[derive(Debug, Clone)]
pub struct ColumnIlp {
    /// Upper bound of each variable (lower bounds are all 0).
    pub bounds: Vec<u32>,
    pub constraints: Vec<LinearLe>,
}

/// Partition `[1, d]` by column signature; classes ordered by their
/// smallest coordinate.
pub fn column_types(inst: &Instance) -> Vec<ColumnType> {
    let vectors: Vec<&BitVector> = inst.vectors().collect();
    let mut classes: Vec<ColumnType> = Vec::new();
    let mut index: std::collections::HashMap<Vec<bool>, usize> = std::collections::HashMap::new();
    for c in 1..=inst.dim() {
        let signature: Vec<bool> = vectors.iter().map(|v| v.get(c)).collect();
        match index.get(&signature) {
            Some(&i) => classes[i].coords.push(c),
            None => {
                index.insert(signature.clone(), classes.len());
                classes.push(ColumnType { signature, coords: vec![c] });
            }
        }
    }
    // Scanning coordinates ascending already orders classes by first coord.
    classes
}

/// Build the pair constraints. With `x_i` the number of center ones inside
/// type `i`, a vector that is 0 on the type contributes `x_i` to its
/// distance and one that is 1 contributes `n_i - x_i`; requiring each blue
/// strictly closer than each red is linear in the `x_i`.
pub fn build_ilp(inst: &Instance, types: &[ColumnType]) -> Result<ColumnIlp, SolveError> {
    if inst.blues().is_empty() || inst.reds().is_empty() {
        return Err(SolveError::Refused(
            "column ILP needs both colors nonempty; degenerate instances are handled upstream"
                .into(),
        ));
    }
    let nb = inst.blues().len();
    let bounds: Vec<u32> = types.iter().map(ColumnType::count).collect();
    let mut constraints = Vec::with_capacity(nb * inst.reds().len());
    for (bi, _) in inst.blues().iter().enumerate() {
        for (ri, _) in inst.reds().iter().enumerate() {
            let mut coeffs = vec![0i64; types.len()];
            let mut rhs: i64 = -1;
            for (ti, t) in types.iter().enumerate() {
                let blue_one = t.signature[bi];
                let red_one = t.signature[nb + ri];
                // distance contribution difference (blue minus red)
                match (blue_one, red_one) {
                    (false, true) => {
                        // x - (n - x) = 2x - n
                        coeffs[ti] += 2;
                        rhs += i64::from(t.count());
                    }
                    (true, false) => {
                        // (n - x) - x = n - 2x
                        coeffs[ti] -= 2;
                        rhs -= i64::from(t.count());
                    }
                    _ => {}
                }
            }
            constraints.push(LinearLe { coeffs, rhs });
        }
    }
    Ok(ColumnIlp { bounds, constraints })
}

/// Deterministic feasibility search: depth-first over the variables in
/// type order, values ascending, pruning on per-constraint interval
/// bounds tightened to a fixpoint after each assignment. Pruning only
/// removes infeasible subtrees, so the first leaf reached is the same as
/// in the unpruned ascending search.
pub fn solve_ilp_feasibility(model: &ColumnIlp) -> Option<Vec<u32>> {
    let n = model.bounds.len();
    let mut domains: Vec<(i64, i64)> = model.bounds.iter().map(|&b| (0, i64::from(b))).collect();
    if propagate(model, &mut domains).is_err() {
        return None;
    }
    let mut assignment = vec![0u32; n];
    if search(model, &domains, 0, &mut assignment) {
        Some(assignment)
    } else {
        None
    }
}

struct Infeasible;

/// Shave variable bounds using every constraint until nothing changes.
fn propagate(model: &ColumnIlp, domains: &mut [(i64, i64)]) -> Result<(), Infeasible> {
    loop {
        let mut changed = false;
        for c in &model.constraints {
            // minimal achievable LHS and each variable's slack
            let mut min_lhs: i64 = 0;
            for (i, &a) in c.coeffs.iter().enumerate() {
                min_lhs += if a >= 0 { a * domains[i].0 } else { a * domains[i].1 };
            }
            if min_lhs > c.rhs {
                return Err(Infeasible);
            }
            for (i, &a) in c.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let others = min_lhs - if a >= 0 { a * domains[i].0 } else { a * domains[i].1 };
                let budget = c.rhs - others;
                if a > 0 {
                    // a * x <= budget
                    let hi = budget.div_euclid(a);
                    if hi < domains[i].1 {
                        domains[i].1 = hi;
                        changed = true;
                    }
                } else {
                    // a * x <= budget with a < 0  =>  x >= ceil(budget / a)
                    let lo = -budget.div_euclid(-a);
                    if lo > domains[i].0 {
                        domains[i].0 = lo;
                        changed = true;
                    }
                }
                if domains[i].0 > domains[i].1 {
                    return Err(Infeasible);
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

fn search(model: &ColumnIlp, domains: &[(i64, i64)], var: usize, assignment: &mut [u32]) -> bool {
    if var == model.bounds.len() {
        return true;
    }
    let (lo, hi) = domains[var];
    for value in lo..=hi {
        let mut child: Vec<(i64, i64)> = domains.to_vec();
        child[var] = (value, value);
        if propagate(model, &mut child).is_err() {
            continue;
        }
        assignment[var] = value as u32;
        if search(model, &child, var + 1, assignment) {
            return true;
        }
    }
    false
}

/// Turn a feasible assignment into a concrete center: within each column
/// type, set the first `x_i` coordinates. Any other placement gives the
/// same distances; this one is the deterministic choice.
pub fn reconstruct_center(
    inst: &Instance,
    types: &[ColumnType],
    assignment: &[u32],
) -> Result<Solution, SolveError> {
    let mut coords: Vec<u32> = Vec::new();
    for (t, &x) in types.iter().zip(assignment) {
        coords.extend_from_slice(&t.coords[..x as usize]);
    }
    coords.sort_unstable();
    let center = BitVector::new(inst.dim(), coords)
        .map_err(|e| SolveError::Internal(format!("reconstructed center invalid: {e}")))?;
    let radius = canonical_radius(inst, &center)
        .expect("same dim")
        .ok_or_else(|| {
            SolveError::Internal("feasible assignment reconstructed to a non-separating center".into())
        })?;
    Ok(Solution { center, radius })
}

/// End-to-end solver: group columns, build and search the model,
/// reconstruct. Degenerate color cases are answered directly.
pub fn solve_ilp(inst: &Instance) -> Result<Option<Solution>, SolveError> {
    if let Some(answer) = empty_color_solution(inst, None) {
        return Ok(answer);
    }
    let types = column_types(inst);
    let model = build_ilp(inst, &types)?;
    match solve_ilp_feasibility(&model) {
        Some(assignment) => reconstruct_center(inst, &types, &assignment).map(Some),
        None => Ok(None),
    }
}

/// Plain-text dump of the model: bounds lines, then constraints with
/// integer coefficients.
pub fn dump_ilp(model: &ColumnIlp) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "bounds");
    for (i, &b) in model.bounds.iter().enumerate() {
        let _ = writeln!(out, "0 <= x{} <= {b}", i + 1);
    }
    let _ = writeln!(out, "subject to");
    for c in &model.constraints {
        let mut first = true;
        for (i, &a) in c.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if first {
                let _ = write!(out, "{a} x{}", i + 1);
                first = false;
            } else {
                let _ = write!(out, " {a:+} x{}", i + 1);
            }
        }
        if first {
            let _ = write!(out, "0");
        }
        let _ = writeln!(out, " <= {}", c.rhs);
    }
    out
}
