//! 2-SAT over the implication graph.
//!
//! Satisfiability is decided by Tarjan's strongly connected components on
//! the implication graph. Satisfying assignments are extracted greedily in
//! variable order with a preference for `false`, so variables the formula
//! does not force default to 0.

use std::fmt::Write as _;

/// A literal: variable index (0-based) plus polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, positive: false }
    }

    fn negated(self) -> Self {
        Self { var: self.var, positive: !self.positive }
    }
}

/// A clause with one or two literals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    Unit(Lit),
    Or(Lit, Lit),
}

/// A conjunction of 1- and 2-literal clauses.
#[derive(Debug, Clone, Default)]
pub struct TwoSatFormula {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl TwoSatFormula {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, clauses: Vec::new() }
    }

    pub fn add_unit(&mut self, l: Lit) {
        debug_assert!(l.var < self.num_vars);
        self.clauses.push(Clause::Unit(l));
    }

    pub fn add_or(&mut self, a: Lit, b: Lit) {
        debug_assert!(a.var < self.num_vars && b.var < self.num_vars);
        self.clauses.push(Clause::Or(a, b));
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        let val = |l: Lit| assignment[l.var] == l.positive;
        self.clauses.iter().all(|c| match *c {
            Clause::Unit(l) => val(l),
            Clause::Or(a, b) => val(a) || val(b),
        })
    }

    /// DIMACS CNF serialization (units as 1-literal clauses).
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        let lit = |l: Lit| if l.positive { (l.var + 1) as i64 } else { -((l.var + 1) as i64) };
        for c in &self.clauses {
            match *c {
                Clause::Unit(l) => {
                    let _ = writeln!(out, "{} 0", lit(l));
                }
                Clause::Or(a, b) => {
                    let _ = writeln!(out, "{} {} 0", lit(a), lit(b));
                }
            }
        }
        out
    }
}

/// Node id of a literal in the implication graph.
fn node(l: Lit) -> usize {
    l.var * 2 + usize::from(!l.positive)
}

fn node_lit(n: usize) -> Lit {
    Lit { var: n / 2, positive: n.is_multiple_of(2) }
}

struct ImplicationGraph {
    succ: Vec<Vec<u32>>,
}

impl ImplicationGraph {
    fn build(f: &TwoSatFormula) -> Self {
        let mut succ = vec![Vec::new(); f.num_vars * 2];
        let mut imply = |from: Lit, to: Lit| succ[node(from)].push(node(to) as u32);
        for c in &f.clauses {
            match *c {
                Clause::Unit(l) => imply(l.negated(), l),
                Clause::Or(a, b) => {
                    imply(a.negated(), b);
                    imply(b.negated(), a);
                }
            }
        }
        Self { succ }
    }

    /// Iterative Tarjan; components are numbered in pop order (sinks of the
    /// condensation get the smallest ids).
    fn scc(&self) -> Vec<u32> {
        let n = self.succ.len();
        const UNSET: u32 = u32::MAX;
        let mut index = vec![UNSET; n];
        let mut low = vec![0u32; n];
        let mut comp = vec![UNSET; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut on_stack = vec![false; n];
        let mut next_index = 0u32;
        let mut next_comp = 0u32;
        // call stack: (node, next child position)
        let mut calls: Vec<(u32, usize)> = Vec::new();

        for root in 0..n as u32 {
            if index[root as usize] != UNSET {
                continue;
            }
            calls.push((root, 0));
            while let Some(&mut (v, ref mut ci)) = calls.last_mut() {
                let v = v as usize;
                if *ci == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v as u32);
                    on_stack[v] = true;
                }
                if let Some(&w) = self.succ[v].get(*ci) {
                    *ci += 1;
                    let w = w as usize;
                    if index[w] == UNSET {
                        calls.push((w as u32, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().expect("scc stack") as usize;
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                    calls.pop();
                    if let Some(&mut (p, _)) = calls.last_mut() {
                        let p = p as usize;
                        low[p] = low[p].min(low[v]);
                    }
                }
            }
        }
        comp
    }
}

/// Find a satisfying assignment or report unsatisfiability.
///
/// The returned assignment is deterministic: variables are fixed in index
/// order, preferring `false`, with all implications propagated after each
/// choice. The lex-first preference keeps candidate centers built from the
/// assignment concise.
pub fn solve_2sat(f: &TwoSatFormula) -> Option<Vec<bool>> {
    let graph = ImplicationGraph::build(f);
    let comp = graph.scc();
    for v in 0..f.num_vars {
        if comp[node(Lit::pos(v))] == comp[node(Lit::neg(v))] {
            return None;
        }
    }

    // marked[n]: literal n is true in the partial assignment.
    let mut marked = vec![false; f.num_vars * 2];
    let mut trail: Vec<usize> = Vec::new();

    // Propagate truth of `start`; false on conflict (a variable getting
    // both polarities), leaving the trail for the caller to undo.
    let propagate = |marked: &mut Vec<bool>, trail: &mut Vec<usize>, start: usize| -> bool {
        let mut queue = vec![start];
        while let Some(nd) = queue.pop() {
            if marked[nd] {
                continue;
            }
            if marked[node(node_lit(nd).negated())] {
                return false;
            }
            marked[nd] = true;
            trail.push(nd);
            queue.extend(graph.succ[nd].iter().map(|&w| w as usize));
        }
        true
    };

    for v in 0..f.num_vars {
        if marked[node(Lit::pos(v))] || marked[node(Lit::neg(v))] {
            continue;
        }
        trail.clear();
        if !propagate(&mut marked, &mut trail, node(Lit::neg(v))) {
            for &nd in &trail {
                marked[nd] = false;
            }
            trail.clear();
            let ok = propagate(&mut marked, &mut trail, node(Lit::pos(v)));
            // The formula is satisfiable and all earlier choices are closed
            // under implication, so the second polarity cannot fail.
            debug_assert!(ok);
            if !ok {
                return None;
            }
        }
    }
    Some((0..f.num_vars).map(|v| marked[node(Lit::pos(v))]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefers_false_for_free_variables() {
        // {(x ∨ y), (¬x ∨ y)}: y is forced, x is free and defaults to 0.
        let mut f = TwoSatFormula::new(2);
        f.add_or(Lit::pos(0), Lit::pos(1));
        f.add_or(Lit::neg(0), Lit::pos(1));
        assert_eq!(solve_2sat(&f), Some(vec![false, true]));
    }

    #[test]
    fn contradiction_is_unsat() {
        let mut f = TwoSatFormula::new(1);
        f.add_unit(Lit::pos(0));
        f.add_unit(Lit::neg(0));
        assert_eq!(solve_2sat(&f), None);
    }

    #[test]
    fn empty_formula_is_all_false() {
        let f = TwoSatFormula::new(3);
        assert_eq!(solve_2sat(&f), Some(vec![false, false, false]));
    }

    #[test]
    fn dimacs_output() {
        let mut f = TwoSatFormula::new(2);
        f.add_unit(Lit::pos(0));
        f.add_or(Lit::neg(0), Lit::pos(1));
        assert_eq!(f.to_dimacs(), "p cnf 2 2\n1 0\n-1 2 0\n");
    }

    /// Brute-force satisfiability over all assignments.
    fn truth_table_sat(f: &TwoSatFormula) -> bool {
        (0..1u32 << f.num_vars).any(|m| {
            let assignment: Vec<bool> = (0..f.num_vars).map(|v| m >> v & 1 == 1).collect();
            f.satisfied_by(&assignment)
        })
    }

    #[test]
    fn agrees_with_truth_table_on_random_formulas() {
        let mut state = 0x5eed_25a7_u64;
        let mut rng = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        for _ in 0..300 {
            let nv = (rng() % 8 + 1) as usize;
            let nc = (rng() % 14) as usize;
            let mut f = TwoSatFormula::new(nv);
            for _ in 0..nc {
                let a = Lit { var: (rng() % nv as u64) as usize, positive: rng() % 2 == 0 };
                if rng() % 4 == 0 {
                    f.add_unit(a);
                } else {
                    let b = Lit { var: (rng() % nv as u64) as usize, positive: rng() % 2 == 0 };
                    f.add_or(a, b);
                }
            }
            match solve_2sat(&f) {
                Some(assignment) => assert!(f.satisfied_by(&assignment)),
                None => assert!(!truth_table_sat(&f)),
            }
        }
    }
}
