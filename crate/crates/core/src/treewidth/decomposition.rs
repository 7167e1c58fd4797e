//! Incidence graphs, a min-fill decomposition heuristic, nicification and
//! validation.

use crate::instance::Instance;
use std::collections::BTreeSet;

/// The bipartite graph on vectors and coordinates with an edge wherever a
/// vector carries a 1. Vertex ids: blues in file order, then reds, then
/// coordinate `i` at id `num_vectors + i - 1`.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    pub num_blues: usize,
    pub num_reds: usize,
    pub dim: u32,
    adj: Vec<Vec<u32>>,
}

impl IncidenceGraph {
    pub fn num_vectors(&self) -> usize {
        self.num_blues + self.num_reds
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vectors() + self.dim as usize
    }

    pub fn is_vector_vertex(&self, v: u32) -> bool {
        (v as usize) < self.num_vectors()
    }

    /// The 1-based coordinate a coordinate-vertex stands for.
    pub fn coordinate_of(&self, v: u32) -> u32 {
        debug_assert!(!self.is_vector_vertex(v));
        v - self.num_vectors() as u32 + 1
    }

    pub fn vertex_of_coordinate(&self, c: u32) -> u32 {
        self.num_vectors() as u32 + c - 1
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(v, ns)| ns.iter().map(move |&w| (v as u32, w)))
            .filter(|&(v, w)| v < w)
    }
}

pub fn build_incidence_graph(inst: &Instance) -> IncidenceGraph {
    let nv = inst.num_vectors();
    let mut adj = vec![Vec::new(); nv + inst.dim() as usize];
    for (vi, v) in inst.vectors().enumerate() {
        for &c in v.support() {
            let cv = nv as u32 + c - 1;
            adj[vi].push(cv);
            adj[cv as usize].push(vi as u32);
        }
    }
    for ns in &mut adj {
        ns.sort_unstable();
    }
    IncidenceGraph { num_blues: inst.blues().len(), num_reds: inst.reds().len(), dim: inst.dim(), adj }
}

/// A rooted-but-untyped tree decomposition: bags plus tree edges.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<u32>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> u32 {
        self.bags.iter().map(Vec::len).max().unwrap_or(1) as u32 - 1
    }
}

/// Node kinds of a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(u32),
    Forget(u32),
    Join,
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted vertex ids.
    pub bag: Vec<u32>,
    pub children: Vec<usize>,
}

/// A rooted tree of leaf/introduce/forget/join nodes with empty root and
/// leaf bags.
#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> u32 {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).max(1) as u32 - 1
    }

    /// Children-before-parent ordering.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((n, expanded)) = stack.pop() {
            if expanded {
                order.push(n);
            } else {
                stack.push((n, true));
                for &c in &self.nodes[n].children {
                    stack.push((c, false));
                }
            }
        }
        order
    }
}

/// Min-fill elimination: repeatedly eliminate the vertex whose
/// neighborhood needs the fewest fill edges (ties to the smallest id),
/// recording `{v} ∪ N(v)` as its bag, then build the standard clique tree
/// over those bags.
pub fn min_fill_decomposition(g: &IncidenceGraph) -> TreeDecomposition {
    let n = g.num_vertices();
    let mut adj: Vec<BTreeSet<u32>> = (0..n)
        .map(|v| g.neighbors(v as u32).iter().copied().collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut bags: Vec<Vec<u32>> = Vec::with_capacity(n);

    for _ in 0..n {
        let mut best: Option<(usize, u32)> = None; // (fill, vertex)
        for v in 0..n as u32 {
            if !alive[v as usize] {
                continue;
            }
            let ns: Vec<u32> = adj[v as usize].iter().copied().collect();
            let mut fill = 0usize;
            for (i, &a) in ns.iter().enumerate() {
                for &b in &ns[i + 1..] {
                    if !adj[a as usize].contains(&b) {
                        fill += 1;
                    }
                }
            }
            if best.is_none_or(|(bf, _)| fill < bf) {
                best = Some((fill, v));
            }
        }
        let (_, v) = best.expect("some vertex is alive");
        let ns: Vec<u32> = adj[v as usize].iter().copied().collect();
        let mut bag = ns.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        order.push(v);
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                adj[a as usize].insert(b);
                adj[b as usize].insert(a);
            }
        }
        for &a in &ns {
            adj[a as usize].remove(&v);
        }
        adj[v as usize].clear();
        alive[v as usize] = false;
    }

    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let parent = bags[i]
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| position[u as usize])
            .min()
            .or((i + 1 < n).then_some(i + 1));
        if let Some(p) = parent {
            edges.push((i, p));
        }
    }
    TreeDecomposition { bags, edges }
}

fn push_node(nodes: &mut Vec<NiceNode>, kind: NodeKind, bag: Vec<u32>, children: Vec<usize>) -> usize {
    nodes.push(NiceNode { kind, bag, children });
    nodes.len() - 1
}

/// Forget/introduce chain transforming the node `top` (with bag `from`)
/// into a node with bag `to`; returns the chain's top node.
fn morph(nodes: &mut Vec<NiceNode>, top: usize, from: &[u32], to: &[u32]) -> usize {
    let mut cur = top;
    let mut cur_bag: Vec<u32> = from.to_vec();
    let to_forget: Vec<u32> = from.iter().copied().filter(|v| !to.contains(v)).collect();
    for v in to_forget {
        cur_bag.retain(|&u| u != v);
        cur = push_node(nodes, NodeKind::Forget(v), cur_bag.clone(), vec![cur]);
    }
    let to_introduce: Vec<u32> = to.iter().copied().filter(|v| !cur_bag.contains(v)).collect();
    for v in to_introduce {
        cur_bag.push(v);
        cur_bag.sort_unstable();
        cur = push_node(nodes, NodeKind::Introduce(v), cur_bag.clone(), vec![cur]);
    }
    cur
}

/// Turn a tree decomposition into a nice one: root it at bag 0, morph
/// between adjacent bags with forget/introduce chains, binarize
/// multi-child nodes with joins, and pad the root and the leaves down to
/// empty bags.
pub fn nicify(td: &TreeDecomposition) -> NiceTreeDecomposition {
    assert!(!td.bags.is_empty(), "decomposition must have at least one bag");
    let n = td.bags.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }

    let mut nodes: Vec<NiceNode> = Vec::new();
    // Iterative post-order over the rooted bag tree; each finished frame
    // yields a nice node whose bag equals its td bag, sorted.
    struct Frame {
        bag_id: usize,
        parent: usize,
        next_child: usize,
        built: Vec<usize>,
    }
    let sentinel = usize::MAX;
    let mut result: Option<usize> = None;
    let mut stack = vec![Frame { bag_id: 0, parent: sentinel, next_child: 0, built: vec![] }];
    while let Some(frame) = stack.last_mut() {
        let kids: Vec<usize> =
            adj[frame.bag_id].iter().copied().filter(|&c| c != frame.parent).collect();
        if frame.next_child < kids.len() {
            let child = kids[frame.next_child];
            frame.next_child += 1;
            let bag_id = frame.bag_id;
            stack.push(Frame { bag_id: child, parent: bag_id, next_child: 0, built: vec![] });
            continue;
        }
        let frame = stack.pop().expect("frame");
        let mut bag = td.bags[frame.bag_id].clone();
        bag.sort_unstable();
        // Morph each built child subtree's top into this bag.
        let morphed: Vec<usize> = frame
            .built
            .iter()
            .map(|&top| {
                let from = nodes[top].bag.clone();
                morph(&mut nodes, top, &from, &bag)
            })
            .collect();
        let top = match morphed.len() {
            0 => {
                let leaf = push_node(&mut nodes, NodeKind::Leaf, Vec::new(), Vec::new());
                morph(&mut nodes, leaf, &[], &bag)
            }
            1 => morphed[0],
            _ => {
                let mut cur = morphed[0];
                for &m in &morphed[1..] {
                    cur = push_node(&mut nodes, NodeKind::Join, bag.clone(), vec![cur, m]);
                }
                cur
            }
        };
        match stack.last_mut() {
            Some(parent_frame) => parent_frame.built.push(top),
            None => result = Some(top),
        }
    }
    // Forget everything above the old root down to an empty bag.
    let top = result.expect("nicification produced a tree");
    let from = nodes[top].bag.clone();
    let root = morph(&mut nodes, top, &from, &[]);
    NiceTreeDecomposition { root, nodes }
}

/// Convenience: min-fill plus nicification.
pub fn heuristic_tree_decomposition(g: &IncidenceGraph) -> NiceTreeDecomposition {
    nicify(&min_fill_decomposition(g))
}

/// Check all the properties the dynamic program relies on: node-kind
/// arities and bag relations, empty root and leaf bags, every vertex in
/// some bag with a connected occurrence, every edge covered by a bag.
pub fn validate_decomposition(g: &IncidenceGraph, ntd: &NiceTreeDecomposition) -> bool {
    let n = ntd.nodes.len();
    if ntd.root >= n {
        return false;
    }
    // The root must reach every node exactly once (a tree).
    let mut seen = vec![false; n];
    let mut stack = vec![ntd.root];
    let mut reached = 0;
    while let Some(v) = stack.pop() {
        if seen[v] {
            return false;
        }
        seen[v] = true;
        reached += 1;
        stack.extend(ntd.nodes[v].children.iter().copied());
    }
    if reached != n {
        return false;
    }
    if !ntd.nodes[ntd.root].bag.is_empty() {
        return false;
    }
    for node in &ntd.nodes {
        if node.bag.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if node.bag.iter().any(|&v| v as usize >= g.num_vertices()) {
            return false;
        }
        let ok = match node.kind {
            NodeKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
            NodeKind::Introduce(v) => {
                node.children.len() == 1 && {
                    let child = &ntd.nodes[node.children[0]];
                    node.bag.contains(&v)
                        && !child.bag.contains(&v)
                        && node.bag.iter().filter(|&&u| u != v).eq(child.bag.iter())
                }
            }
            NodeKind::Forget(v) => {
                node.children.len() == 1 && {
                    let child = &ntd.nodes[node.children[0]];
                    !node.bag.contains(&v)
                        && child.bag.contains(&v)
                        && child.bag.iter().filter(|&&u| u != v).eq(node.bag.iter())
                }
            }
            NodeKind::Join => {
                node.children.len() == 2
                    && ntd.nodes[node.children[0]].bag == node.bag
                    && ntd.nodes[node.children[1]].bag == node.bag
            }
        };
        if !ok {
            return false;
        }
    }
    // Connected occurrences: per vertex, #nodes containing it minus
    // #tree-edges whose both ends contain it must be exactly 1; and every
    // vertex occurs somewhere.
    let mut occurrences = vec![0i64; g.num_vertices()];
    for node in &ntd.nodes {
        for &v in &node.bag {
            occurrences[v as usize] += 1;
        }
        for &c in &node.children {
            for &v in &ntd.nodes[c].bag {
                if node.bag.contains(&v) {
                    occurrences[v as usize] -= 1;
                }
            }
        }
    }
    if occurrences.iter().any(|&k| k != 1) {
        return false;
    }
    // Edge coverage.
    for (u, v) in g.edges() {
        let covered = ntd.nodes.iter().any(|n| n.bag.contains(&u) && n.bag.contains(&v));
        if !covered {
            return false;
        }
    }
    true
}
