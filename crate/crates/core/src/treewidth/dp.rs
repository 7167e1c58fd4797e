//! The record-based dynamic program over a nice tree decomposition.
//!
//! For a target center conciseness and radius, each node keeps a table of
//! reachable records `(past, selected-bag-coordinates, per-bag-vector
//! shared counts)`; the future count is implicit since the three parts sum
//! to the target. An entry remembers just enough provenance to rebuild a
//! concrete center at the root by collecting the coordinates whose forget
//! decision was "selected".

use super::decomposition::{IncidenceGraph, NiceTreeDecomposition, NodeKind};
use crate::bitvec::BitVector;
use crate::error::SolveError;
use crate::instance::{canonical_radius, verify, Instance, OptimalSolution, Solution};
use std::collections::HashMap;

/// DP record key. Orders as (past, bag-coordinate subset rank, shared
/// counts in mixed radix), the tie-break order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpKey {
    /// Selected coordinates already forgotten below the node.
    pub past: u16,
    /// Selected coordinates of the bag, as a bitmask over the node's
    /// sorted coordinate list.
    pub bag_center: u64,
    /// Per bag vector (sorted order): selected forgotten coordinates
    /// shared with that vector's support.
    pub bag_vectors: Vec<u16>,
}

/// Provenance stored per reachable key; enough to walk back down.
#[derive(Debug, Clone)]
enum Entry {
    Leaf,
    FromChild,
    ForgetCoord { selected: bool },
    ForgetVector { shared: u16 },
    Join { left: DpKey },
}

type Table = HashMap<DpKey, Entry>;

/// Node-local data precomputed once per (instance, decomposition) pair.
struct NodeCtx {
    kind: NodeKind,
    children: Vec<usize>,
    bag_coords: Vec<u32>,
    bag_vectors: Vec<u32>,
    /// Introduce/forget: whether the affected vertex is a coordinate.
    vertex_is_coord: bool,
    /// Introduce/forget position of the affected vertex within the
    /// relevant sorted list (of this node for introduce, of the child for
    /// forget).
    position: usize,
    /// Forget-coordinate: per child bag vector, 1 if the forgotten
    /// coordinate lies in that vector's support.
    alpha_bump: Vec<u16>,
    /// Forget-vector: mask over the child's bag coordinates hitting the
    /// vector's support, plus its conciseness and color.
    support_mask: u64,
    conciseness: u32,
    is_blue: bool,
}

/// Table-size accounting for one solver invocation.
#[derive(Debug, Clone, Copy, Default)]
pub struct DpStats {
    /// Keys materialized across all (conciseness, radius) runs.
    pub total_keys: u64,
    /// Largest single node table seen.
    pub max_table: usize,
    /// Violations of the exact achievable-tuple bound
    /// `(target+1) * 2^#bagcoords * (min(target, icon)+1)^#bagvectors`.
    pub exact_bound_violations: u64,
    /// Violations of the coarser `target^2 * 2^|bag| * min(target, icon)^|bag|`
    /// bound, counted only where it applies (target >= 2, min >= 1).
    pub coarse_bound_violations: u64,
}

pub struct DpOutcome {
    pub result: Option<OptimalSolution>,
    pub stats: DpStats,
}

fn insert_bit(mask: u64, pos: usize, bit: bool) -> u64 {
    let low = mask & ((1u64 << pos) - 1);
    let high = (mask >> pos) << (pos + 1);
    low | high | ((bit as u64) << pos)
}

fn remove_bit(mask: u64, pos: usize) -> (u64, bool) {
    let bit = mask >> pos & 1 == 1;
    let low = mask & ((1u64 << pos) - 1);
    let high = (mask >> (pos + 1)) << pos;
    (low | high, bit)
}

fn build_contexts(
    inst: &Instance,
    g: &IncidenceGraph,
    ntd: &NiceTreeDecomposition,
) -> Result<Vec<NodeCtx>, SolveError> {
    let vectors: Vec<&BitVector> = inst.vectors().collect();
    let mut ctxs = Vec::with_capacity(ntd.nodes.len());
    for node in &ntd.nodes {
        let bag_coords: Vec<u32> =
            node.bag.iter().copied().filter(|&v| !g.is_vector_vertex(v)).collect();
        let bag_vectors: Vec<u32> =
            node.bag.iter().copied().filter(|&v| g.is_vector_vertex(v)).collect();
        if bag_coords.len() > 60 {
            return Err(SolveError::Refused(format!(
                "bag with {} coordinates exceeds the 60-coordinate mask limit",
                bag_coords.len()
            )));
        }
        let mut ctx = NodeCtx {
            kind: node.kind,
            children: node.children.clone(),
            bag_coords,
            bag_vectors,
            vertex_is_coord: false,
            position: 0,
            alpha_bump: Vec::new(),
            support_mask: 0,
            conciseness: 0,
            is_blue: false,
        };
        match node.kind {
            NodeKind::Leaf | NodeKind::Join => {}
            NodeKind::Introduce(v) => {
                ctx.vertex_is_coord = !g.is_vector_vertex(v);
                if g.is_vector_vertex(v) {
                    ctx.position =
                        ctx.bag_vectors.binary_search(&v).expect("introduced vector in bag");
                } else {
                    ctx.position =
                        ctx.bag_coords.binary_search(&v).expect("introduced coordinate in bag");
                }
            }
            NodeKind::Forget(v) => {
                ctx.vertex_is_coord = !g.is_vector_vertex(v);
                let child = &ntd.nodes[node.children[0]];
                let child_coords: Vec<u32> =
                    child.bag.iter().copied().filter(|&u| !g.is_vector_vertex(u)).collect();
                let child_vectors: Vec<u32> =
                    child.bag.iter().copied().filter(|&u| g.is_vector_vertex(u)).collect();
                if g.is_vector_vertex(v) {
                    ctx.position = child_vectors.binary_search(&v).expect("forgotten vector");
                    let vec = vectors[v as usize];
                    ctx.conciseness = vec.conciseness();
                    ctx.is_blue = (v as usize) < inst.blues().len();
                    for (i, &cv) in child_coords.iter().enumerate() {
                        if vec.get(g.coordinate_of(cv)) {
                            ctx.support_mask |= 1 << i;
                        }
                    }
                } else {
                    ctx.position = child_coords.binary_search(&v).expect("forgotten coordinate");
                    let coord = g.coordinate_of(v);
                    ctx.alpha_bump = child_vectors
                        .iter()
                        .map(|&u| u16::from(vectors[u as usize].get(coord)))
                        .collect();
                }
            }
        }
        ctxs.push(ctx);
    }
    Ok(ctxs)
}

/// Insert preferring, in order: forget-coordinate unselected over
/// selected, smaller forgotten-shared count, smaller left join key.
fn insert_entry(table: &mut Table, key: DpKey, entry: Entry) {
    match table.entry(key) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(entry);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            let replace = match (o.get(), &entry) {
                (Entry::ForgetCoord { selected: true }, Entry::ForgetCoord { selected: false }) => true,
                (Entry::ForgetVector { shared: old }, Entry::ForgetVector { shared: new }) => {
                    new < old
                }
                (Entry::Join { left: old }, Entry::Join { left: new }) => new < old,
                _ => false,
            };
            if replace {
                o.insert(entry);
            }
        }
    }
}

/// One bottom-up pass for a fixed (target conciseness, radius); returns
/// per-node tables unless some table empties out.
fn run_pass(
    ctxs: &[NodeCtx],
    order: &[usize],
    target: u32,
    radius: u32,
    icon: u32,
    stats: &mut DpStats,
) -> Option<Vec<Table>> {
    let mut tables: Vec<Table> = (0..ctxs.len()).map(|_| Table::new()).collect();
    for &n in order {
        let ctx = &ctxs[n];
        let mut table = Table::new();
        match ctx.kind {
            NodeKind::Leaf => {
                table.insert(DpKey { past: 0, bag_center: 0, bag_vectors: Vec::new() }, Entry::Leaf);
            }
            NodeKind::Introduce(_) => {
                let child = &tables[ctx.children[0]];
                for key in child.keys() {
                    if !ctx.vertex_is_coord {
                        let mut alpha = key.bag_vectors.clone();
                        alpha.insert(ctx.position, 0);
                        insert_entry(
                            &mut table,
                            DpKey { past: key.past, bag_center: key.bag_center, bag_vectors: alpha },
                            Entry::FromChild,
                        );
                    } else {
                        // unselected
                        insert_entry(
                            &mut table,
                            DpKey {
                                past: key.past,
                                bag_center: insert_bit(key.bag_center, ctx.position, false),
                                bag_vectors: key.bag_vectors.clone(),
                            },
                            Entry::FromChild,
                        );
                        // selected: consumes one unit of future budget
                        let future = target as i64
                            - key.past as i64
                            - key.bag_center.count_ones() as i64;
                        if future >= 1 {
                            insert_entry(
                                &mut table,
                                DpKey {
                                    past: key.past,
                                    bag_center: insert_bit(key.bag_center, ctx.position, true),
                                    bag_vectors: key.bag_vectors.clone(),
                                },
                                Entry::FromChild,
                            );
                        }
                    }
                }
            }
            NodeKind::Forget(_) => {
                let child = &tables[ctx.children[0]];
                if ctx.vertex_is_coord {
                    for key in child.keys() {
                        let (mask, selected) = remove_bit(key.bag_center, ctx.position);
                        if !selected {
                            insert_entry(
                                &mut table,
                                DpKey {
                                    past: key.past,
                                    bag_center: mask,
                                    bag_vectors: key.bag_vectors.clone(),
                                },
                                Entry::ForgetCoord { selected: false },
                            );
                        } else {
                            let alpha: Vec<u16> = key
                                .bag_vectors
                                .iter()
                                .zip(&ctx.alpha_bump)
                                .map(|(&a, &b)| a + b)
                                .collect();
                            insert_entry(
                                &mut table,
                                DpKey { past: key.past + 1, bag_center: mask, bag_vectors: alpha },
                                Entry::ForgetCoord { selected: true },
                            );
                        }
                    }
                } else {
                    for key in child.keys() {
                        let shared_forgotten = key.bag_vectors[ctx.position];
                        let in_bag = (key.bag_center & ctx.support_mask).count_ones();
                        let dist = target as i64 + ctx.conciseness as i64
                            - 2 * (shared_forgotten as i64 + in_bag as i64);
                        let ok = if ctx.is_blue {
                            dist <= radius as i64
                        } else {
                            dist > radius as i64
                        };
                        if !ok {
                            continue;
                        }
                        let mut alpha = key.bag_vectors.clone();
                        alpha.remove(ctx.position);
                        insert_entry(
                            &mut table,
                            DpKey { past: key.past, bag_center: key.bag_center, bag_vectors: alpha },
                            Entry::ForgetVector { shared: shared_forgotten },
                        );
                    }
                }
            }
            NodeKind::Join => {
                let left = &tables[ctx.children[0]];
                let right = &tables[ctx.children[1]];
                let mut by_mask: HashMap<u64, Vec<&DpKey>> = HashMap::new();
                for key in right.keys() {
                    by_mask.entry(key.bag_center).or_default().push(key);
                }
                for k1 in left.keys() {
                    let Some(partners) = by_mask.get(&k1.bag_center) else {
                        continue;
                    };
                    for k2 in partners {
                        let past = k1.past as u32 + k2.past as u32;
                        if past + k1.bag_center.count_ones() > target {
                            continue;
                        }
                        let alpha: Vec<u16> = k1
                            .bag_vectors
                            .iter()
                            .zip(&k2.bag_vectors)
                            .map(|(&a, &b)| a + b)
                            .collect();
                        insert_entry(
                            &mut table,
                            DpKey { past: past as u16, bag_center: k1.bag_center, bag_vectors: alpha },
                            Entry::Join { left: (*k1).clone() },
                        );
                    }
                }
            }
        }
        if table.is_empty() {
            return None;
        }
        stats.total_keys += table.len() as u64;
        stats.max_table = stats.max_table.max(table.len());
        check_bounds(ctx, table.len(), target, icon, stats);
        tables[n] = table;
    }
    Some(tables)
}

fn check_bounds(ctx: &NodeCtx, keys: usize, target: u32, icon: u32, stats: &mut DpStats) {
    let nc = ctx.bag_coords.len() as u32;
    let nv = ctx.bag_vectors.len() as u32;
    let m = target.min(icon) as u128;
    let exact: u128 = (target as u128 + 1)
        .saturating_mul(1u128 << nc.min(120))
        .saturating_mul((m + 1).saturating_pow(nv));
    if keys as u128 > exact {
        stats.exact_bound_violations += 1;
    }
    if target >= 2 && m >= 1 {
        let coarse: u128 = (target as u128 * target as u128)
            .saturating_mul(1u128 << (nc + nv).min(120))
            .saturating_mul(m.saturating_pow(nc + nv));
        if keys as u128 > coarse {
            stats.coarse_bound_violations += 1;
        }
    }
}

/// Walk provenance from the root key down, collecting the coordinates
/// whose forget decision was "selected".
fn materialize(
    g: &IncidenceGraph,
    ctxs: &[NodeCtx],
    tables: &[Table],
    ntd: &NiceTreeDecomposition,
    root_key: DpKey,
) -> Vec<u32> {
    let mut coords: Vec<u32> = Vec::new();
    let mut stack: Vec<(usize, DpKey)> = vec![(ntd.root, root_key)];
    while let Some((n, key)) = stack.pop() {
        let ctx = &ctxs[n];
        let entry = tables[n].get(&key).expect("reachable key").clone();
        match (&ctx.kind, entry) {
            (NodeKind::Leaf, _) => {}
            (NodeKind::Introduce(v), Entry::FromChild) => {
                if g.is_vector_vertex(*v) {
                    let mut alpha = key.bag_vectors.clone();
                    alpha.remove(ctx.position);
                    stack.push((
                        ctx.children[0],
                        DpKey { past: key.past, bag_center: key.bag_center, bag_vectors: alpha },
                    ));
                } else {
                    let (mask, _) = remove_bit(key.bag_center, ctx.position);
                    stack.push((
                        ctx.children[0],
                        DpKey { past: key.past, bag_center: mask, bag_vectors: key.bag_vectors },
                    ));
                }
            }
            (NodeKind::Forget(v), Entry::ForgetCoord { selected }) => {
                if selected {
                    coords.push(g.coordinate_of(*v));
                }
                let mask = insert_bit(key.bag_center, ctx.position, selected);
                let alpha: Vec<u16> = if selected {
                    key.bag_vectors
                        .iter()
                        .zip(&ctx.alpha_bump)
                        .map(|(&a, &b)| a - b)
                        .collect()
                } else {
                    key.bag_vectors.clone()
                };
                stack.push((
                    ctx.children[0],
                    DpKey {
                        past: key.past - u16::from(selected),
                        bag_center: mask,
                        bag_vectors: alpha,
                    },
                ));
            }
            (NodeKind::Forget(_), Entry::ForgetVector { shared }) => {
                let mut alpha = key.bag_vectors.clone();
                alpha.insert(ctx.position, shared);
                stack.push((
                    ctx.children[0],
                    DpKey { past: key.past, bag_center: key.bag_center, bag_vectors: alpha },
                ));
            }
            (NodeKind::Join, Entry::Join { left }) => {
                let right = DpKey {
                    past: key.past - left.past,
                    bag_center: key.bag_center,
                    bag_vectors: key
                        .bag_vectors
                        .iter()
                        .zip(&left.bag_vectors)
                        .map(|(&a, &b)| a - b)
                        .collect(),
                };
                stack.push((ctx.children[0], left));
                stack.push((ctx.children[1], right));
            }
            (kind, entry) => unreachable!("provenance mismatch: {kind:?} with {entry:?}"),
        }
    }
    coords.sort_unstable();
    coords
}

/// Sweep target conciseness (ascending, capped by the union of supports)
/// and radius (ascending); the first reachable root record yields the
/// optimum: minimum conciseness, then minimum radius.
pub fn solve_treewidth_with_stats(
    inst: &Instance,
    g: &IncidenceGraph,
    ntd: &NiceTreeDecomposition,
    validate: bool,
) -> Result<DpOutcome, SolveError> {
    if validate && !super::decomposition::validate_decomposition(g, ntd) {
        return Err(SolveError::Refused("invalid tree decomposition for this instance".into()));
    }
    if inst.dim() > u32::from(u16::MAX) {
        return Err(SolveError::Refused("record counters are 16-bit; dimension too large".into()));
    }
    let ctxs = build_contexts(inst, g, ntd)?;
    let order = ntd.postorder();
    let icon = inst.data_conciseness();
    let mut stats = DpStats::default();

    // With blues present, a minimum-conciseness center never selects a
    // coordinate outside the union of supports: dropping such a coordinate
    // lowers every distance by one, keeping validity with a smaller radius
    // (which stays nonnegative against a nonempty blue side). So the sweep
    // can stop at the union size. Without blues the radius floor breaks
    // that argument and the full range is needed.
    let union_size = if inst.blues().is_empty() {
        inst.dim()
    } else {
        let mut coords: Vec<u32> = inst.vectors().flat_map(|v| v.support()).copied().collect();
        coords.sort_unstable();
        coords.dedup();
        coords.len() as u32
    };
    let d = inst.dim();
    for target in 0..=union_size.min(d) {
        for radius in 0..=d {
            let Some(tables) = run_pass(&ctxs, &order, target, radius, icon, &mut stats) else {
                continue;
            };
            let root_key =
                DpKey { past: target as u16, bag_center: 0, bag_vectors: Vec::new() };
            if !tables[ntd.root].contains_key(&root_key) {
                continue;
            }
            let coords = materialize(g, &ctxs, &tables, ntd, root_key);
            if coords.len() as u32 != target {
                return Err(SolveError::Internal(format!(
                    "materialized center has {} ones, expected {target}",
                    coords.len()
                )));
            }
            let center = BitVector::new(d, coords)
                .map_err(|e| SolveError::Internal(format!("bad materialized center: {e}")))?;
            if !verify(inst, &center, radius).expect("same dim") {
                return Err(SolveError::Internal(
                    "materialized center fails verification".into(),
                ));
            }
            debug_assert_eq!(canonical_radius(inst, &center).expect("same dim"), Some(radius));
            return Ok(DpOutcome {
                result: Some(OptimalSolution {
                    solution: Solution { center, radius },
                    conciseness: target,
                }),
                stats,
            });
        }
    }
    Ok(DpOutcome { result: None, stats })
}
