//! Hardness constructions repurposed as instance generators, with
//! brute-force oracles for the source problems so reductions can be
//! round-trip tested.

use crate::bitvec::BitVector;
use crate::error::{ParseError, ParseErrorKind};
use crate::instance::Instance;

/// Minimum-radius source: `2n`-dimensional vectors, asking for a center
/// covering all of them within radius `n`. The reductions implement the
/// restricted variant whose instances contain the all-zero vector and
/// whose centers carry exactly `n` ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrInstance {
    pub n: u32,
    pub vectors: Vec<BitVector>,
}

impl MrInstance {
    pub fn new(n: u32, vectors: Vec<BitVector>) -> Result<Self, String> {
        if n == 0 {
            return Err("n must be positive".into());
        }
        for v in &vectors {
            if v.dim() != 2 * n {
                return Err(format!("vector dimension {} is not 2n = {}", v.dim(), 2 * n));
            }
        }
        let mut dedup: Vec<BitVector> = Vec::with_capacity(vectors.len());
        for v in vectors {
            if !dedup.contains(&v) {
                dedup.push(v);
            }
        }
        Ok(Self { n, vectors: dedup })
    }

    pub fn dim(&self) -> u32 {
        2 * self.n
    }
}

/// Uniform-set-size hitting set: family over a universe, all sets of size
/// `set_size`, budget `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: u32,
    pub sets: Vec<Vec<u32>>,
    pub set_size: u32,
    pub budget: u32,
}

impl HittingSetInstance {
    pub fn new(universe: u32, sets: Vec<Vec<u32>>, budget: u32) -> Result<Self, String> {
        if sets.is_empty() {
            return Err("need at least one set".into());
        }
        let set_size = sets[0].len() as u32;
        if set_size == 0 {
            return Err("sets must be nonempty".into());
        }
        for s in &sets {
            if s.len() as u32 != set_size {
                return Err("all sets must have the same size".into());
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err("set elements must be strictly increasing".into());
            }
            if s.iter().any(|&u| u < 1 || u > universe) {
                return Err("set element outside the universe".into());
            }
        }
        Ok(Self { universe, sets, set_size, budget })
    }
}

/// Multicolored independent set: `k` parts of size `n`, each part a
/// clique; cross edges listed explicitly. Vertices are `1..=n*k`, part `i`
/// holding `(i-1)*n + 1 ..= i*n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McisInstance {
    pub parts: u32,
    pub part_size: u32,
    pub cross_edges: Vec<(u32, u32)>,
}

impl McisInstance {
    pub fn new(parts: u32, part_size: u32, cross_edges: Vec<(u32, u32)>) -> Result<Self, String> {
        if parts == 0 || part_size == 0 {
            return Err("parts and part size must be positive".into());
        }
        if parts >= 2 && part_size * parts + 1 < 2 * parts {
            return Err("construction needs n*k - 2k + 1 >= 0".into());
        }
        let nv = parts * part_size;
        let part_of = |v: u32| (v - 1) / part_size;
        for &(u, v) in &cross_edges {
            if u < 1 || v < 1 || u > nv || v > nv || u == v {
                return Err(format!("bad edge ({u}, {v})"));
            }
            if part_of(u) == part_of(v) {
                return Err("edges within a part are implicit (parts are cliques)".into());
            }
        }
        Ok(Self { parts, part_size, cross_edges })
    }

    pub fn num_vertices(&self) -> u32 {
        self.parts * self.part_size
    }

    /// All edges: the listed cross edges plus the implicit clique edges.
    pub fn all_edges(&self) -> Vec<(u32, u32)> {
        let mut edges = self.cross_edges.clone();
        for p in 0..self.parts {
            let base = p * self.part_size + 1;
            for a in base..base + self.part_size {
                for b in a + 1..base + self.part_size {
                    edges.push((a, b));
                }
            }
        }
        edges
    }
}

/// Boolean CSP over two 4-ary relations: "at most 2 ones" (red) and
/// "at least 3 ones" (blue).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma4Instance {
    pub num_vars: u32,
    /// (is_blue, scope of four distinct variables).
    pub constraints: Vec<(bool, [u32; 4])>,
}

impl Gamma4Instance {
    pub fn new(num_vars: u32, constraints: Vec<(bool, [u32; 4])>) -> Result<Self, String> {
        for (_, scope) in &constraints {
            let mut s = *scope;
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err("scope variables must be distinct".into());
            }
            if s.iter().any(|&v| v < 1 || v > num_vars) {
                return Err("scope variable out of range".into());
            }
        }
        Ok(Self { num_vars, constraints })
    }

    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.constraints.iter().all(|&(is_blue, scope)| {
            let ones = scope.iter().filter(|&&v| assignment >> (v - 1) & 1 == 1).count();
            if is_blue {
                ones >= 3
            } else {
                ones <= 2
            }
        })
    }
}

/// Extend a `2n`-dimensional vector by two coordinates valued (0, 1).
fn extend_mr(v: &BitVector) -> BitVector {
    let dim = v.dim() + 2;
    let mut support = v.support().to_vec();
    support.push(dim);
    BitVector::new(dim, support).expect("extension stays sorted")
}

/// Reduce (restricted) minimum radius to separation with two red vectors:
/// ensure the all-ones vector is present, extend everything by the
/// coordinate pair (0, 1) as blues, and add the all-zero and all-one
/// vectors of the extended dimension as the reds.
pub fn reduce_mr_to_2red(mr: &MrInstance) -> Instance {
    let dim = mr.dim() + 2;
    let all_ones = BitVector::ones(mr.dim());
    let mut blues: Vec<BitVector> = mr.vectors.iter().map(extend_mr).collect();
    let ones_ext = extend_mr(&all_ones);
    if !blues.contains(&ones_ext) {
        blues.push(ones_ext);
    }
    let reds = vec![BitVector::zero(dim), BitVector::ones(dim)];
    Instance::new(dim, blues, reds).expect("construction keeps colors disjoint")
}

/// The color-swapped variant: two blue vectors.
pub fn reduce_mr_to_2blue(mr: &MrInstance) -> Instance {
    reduce_mr_to_2red(mr).swap_colors()
}

/// Is there a center with exactly `n` ones covering all vectors within
/// radius `n`? Checked by enumerating all `2^{2n}` centers.
pub fn solve_mr_bf(mr: &MrInstance) -> Result<bool, String> {
    if mr.dim() > 24 {
        return Err("minimum-radius brute force limited to 2n <= 24".into());
    }
    let d = mr.dim();
    let mut found = false;
    crate::oracle::for_each_center(d, d, |support| {
        if support.len() as u32 != mr.n {
            return false;
        }
        let c = BitVector::new(d, support.to_vec()).expect("enumerated support");
        if mr.vectors.iter().all(|v| c.hamming(v).expect("same dim") <= mr.n) {
            found = true;
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Hitting set to conciseness-bounded separation: one coordinate per
/// element plus `set_size` dummy coordinates; a blue vector per set, a
/// single red on the dummies, budget `k`.
pub fn reduce_hittingset(hs: &HittingSetInstance) -> (Instance, u32) {
    let dim = hs.universe + hs.set_size;
    let blues: Vec<BitVector> = hs
        .sets
        .iter()
        .map(|s| BitVector::new(dim, s.clone()).expect("validated set"))
        .collect();
    let red = BitVector::from_coords(dim, hs.universe + 1..=dim).expect("dummy coords");
    let inst = Instance::new(dim, blues, vec![red]).expect("red uses only dummy coordinates");
    (inst, hs.budget)
}

pub fn solve_hittingset_bf(hs: &HittingSetInstance) -> Result<bool, String> {
    if hs.universe > 16 {
        return Err("hitting-set brute force limited to universes of 16".into());
    }
    let k = hs.budget.min(hs.universe);
    for mask in 0u32..1 << hs.universe {
        if mask.count_ones() > k {
            continue;
        }
        if hs.sets.iter().all(|s| s.iter().any(|&u| mask >> (u - 1) & 1 == 1)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Multicolored independent set to conciseness-bounded separation: vertex
/// coordinates plus `n*k - 2k + 1` dummies; a red per edge (endpoints plus
/// all dummies), one red on the dummies alone, one blue on all vertex
/// coordinates, budget `k`.
pub fn reduce_mcis(mcis: &McisInstance) -> (Instance, u32) {
    let nv = mcis.num_vertices();
    let num_dummies = nv + 1 - 2 * mcis.parts;
    let dim = nv + num_dummies;
    let dummy_coords: Vec<u32> = (nv + 1..=dim).collect();
    let mut reds: Vec<BitVector> = Vec::new();
    for &(u, v) in &mcis.all_edges() {
        let mut support = vec![u.min(v), u.max(v)];
        support.extend_from_slice(&dummy_coords);
        reds.push(BitVector::new(dim, support).expect("sorted support"));
    }
    reds.push(BitVector::from_coords(dim, dummy_coords.iter().copied()).expect("dummies"));
    let blue = BitVector::from_coords(dim, 1..=nv).expect("vertex coords");
    let inst = Instance::new(dim, vec![blue], reds).expect("blue differs from every red");
    (inst, mcis.parts)
}

pub fn solve_mcis_bf(mcis: &McisInstance) -> Result<bool, String> {
    if mcis.num_vertices() > 16 {
        return Err("independent-set brute force limited to 16 vertices".into());
    }
    let adjacent: Vec<(u32, u32)> = mcis.cross_edges.clone();
    let n = mcis.part_size as u64;
    let k = mcis.parts;
    let combos = n.checked_pow(k).ok_or("too many combinations")?;
    for combo in 0..combos {
        let mut pick = Vec::with_capacity(k as usize);
        let mut c = combo;
        for p in 0..k {
            pick.push(p * mcis.part_size + (c % n) as u32 + 1);
            c /= n;
        }
        let independent = pick.iter().enumerate().all(|(i, &u)| {
            pick[i + 1..].iter().all(|&v| {
                !adjacent.contains(&(u, v)) && !adjacent.contains(&(v, u))
            })
        });
        if independent {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Coordinate layout of the CSP reduction, in construction order:
/// variables, the eight pattern coordinates, two fresh coordinates per
/// pattern-pair red, and four fresh coordinates per padding blue.
struct Gamma4Layout {
    num_vars: u32,
}

impl Gamma4Layout {
    fn pattern(&self, i: u32) -> u32 {
        debug_assert!((1..=8).contains(&i));
        self.num_vars + i
    }

    /// Fresh pair for the red on pattern coordinates (i, j), 1 <= i < j <= 8,
    /// pairs in lexicographic order.
    fn fresh_pair(&self, pair_index: u32) -> (u32, u32) {
        let base = self.num_vars + 8 + 2 * pair_index;
        (base + 1, base + 2)
    }

    fn padding(&self, block: u32, slot: u32) -> u32 {
        debug_assert!((1..=4).contains(&block) && (1..=4).contains(&slot));
        self.num_vars + 8 + 56 + 4 * (block - 1) + slot
    }

    fn dim(&self) -> u32 {
        self.num_vars + 8 + 56 + 16
    }
}

/// Reduce a `Gamma4` CSP to plain separation with data conciseness
/// exactly 4. Scope vectors carry the constraints; two gadget families
/// force any separating center to behave like a satisfying assignment.
pub fn reduce_gamma4(csp: &Gamma4Instance) -> Result<Instance, String> {
    let layout = Gamma4Layout { num_vars: csp.num_vars };
    let dim = layout.dim();
    let mut blues: Vec<BitVector> = Vec::new();
    let mut reds: Vec<BitVector> = Vec::new();
    for &(is_blue, scope) in &csp.constraints {
        let v = BitVector::from_coords(dim, scope.iter().copied()).expect("validated scope");
        if is_blue {
            if !blues.contains(&v) {
                blues.push(v);
            }
        } else if !reds.contains(&v) {
            reds.push(v);
        }
    }
    for b in &blues {
        if reds.contains(b) {
            return Err(
                "a red and a blue constraint share one scope; the CSP is trivially unsatisfiable \
                 and the construction would produce a vector in both colors"
                    .into(),
            );
        }
    }
    // Pattern gadget: two blues over the eight pattern coordinates and a
    // red for every pattern pair, each with two fresh coordinates.
    blues.push(BitVector::from_coords(dim, (1..=4).map(|i| layout.pattern(i))).unwrap());
    blues.push(BitVector::from_coords(dim, (5..=8).map(|i| layout.pattern(i))).unwrap());
    let mut pair_index = 0;
    for i in 1..=8u32 {
        for j in i + 1..=8 {
            let (f1, f2) = layout.fresh_pair(pair_index);
            pair_index += 1;
            reds.push(
                BitVector::from_coords(dim, [layout.pattern(i), layout.pattern(j), f1, f2])
                    .unwrap(),
            );
        }
    }
    // Padding gadget: four blues on fresh quadruples and one red picking
    // the first coordinate of each quadruple.
    for block in 1..=4u32 {
        blues.push(
            BitVector::from_coords(dim, (1..=4).map(|slot| layout.padding(block, slot))).unwrap(),
        );
    }
    reds.push(BitVector::from_coords(dim, (1..=4).map(|block| layout.padding(block, 1))).unwrap());
    Instance::new(dim, blues, reds)
}

/// Truth-table satisfiability of a `Gamma4` CSP.
pub fn solve_gamma4_bf(csp: &Gamma4Instance) -> Result<bool, String> {
    if csp.num_vars > 20 {
        return Err("CSP brute force limited to 20 variables".into());
    }
    Ok((0..1u64 << csp.num_vars).any(|a| csp.satisfied_by(a)))
}

// ---------------------------------------------------------------------
// Source-problem text formats.

/// MR: the instance format restricted to one color (all vectors `B`),
/// with an even dimension.
pub fn parse_mr(text: &str) -> Result<MrInstance, ParseError> {
    let parsed = crate::format::parse_instance(text)?;
    let inst = parsed.instance;
    if !inst.reds().is_empty() {
        return Err(ParseError::new(
            1,
            ParseErrorKind::MalformedLine("minimum-radius files list vectors as `B` lines only".into()),
        ));
    }
    if inst.dim() % 2 != 0 {
        return Err(ParseError::new(
            1,
            ParseErrorKind::MalformedHeader("minimum-radius dimension must be even".into()),
        ));
    }
    MrInstance::new(inst.dim() / 2, inst.blues().to_vec())
        .map_err(|e| ParseError::new(1, ParseErrorKind::MalformedHeader(e)))
}

/// Hitting set: `u <universe>`, `k <budget>`, then `s <e1> <e2> ...` lines.
pub fn parse_hittingset(text: &str) -> Result<HittingSetInstance, ParseError> {
    let mut universe: Option<u32> = None;
    let mut budget: Option<u32> = None;
    let mut sets: Vec<Vec<u32>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next().unwrap() {
            "u" => {
                universe = Some(parse_u32(tokens.next(), lineno)?);
            }
            "k" => {
                budget = Some(parse_u32(tokens.next(), lineno)?);
            }
            "s" => {
                let mut set = Vec::new();
                for t in tokens {
                    set.push(t.parse::<u32>().map_err(|_| {
                        ParseError::new(lineno, ParseErrorKind::MalformedLine(format!("bad element `{t}`")))
                    })?);
                }
                sets.push(set);
            }
            other => {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedLine(format!("unknown tag `{other}`")),
                ))
            }
        }
    }
    let (Some(u), Some(k)) = (universe, budget) else {
        return Err(ParseError::new(
            1,
            ParseErrorKind::MalformedHeader("hitting-set files need `u` and `k` lines".into()),
        ));
    };
    HittingSetInstance::new(u, sets, k)
        .map_err(|e| ParseError::new(1, ParseErrorKind::MalformedHeader(e)))
}

/// MCIS: `p <parts> <part-size>`, then `e <u> <v>` cross-edge lines.
pub fn parse_mcis(text: &str) -> Result<McisInstance, ParseError> {
    let mut shape: Option<(u32, u32)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next().unwrap() {
            "p" => {
                let k = parse_u32(tokens.next(), lineno)?;
                let n = parse_u32(tokens.next(), lineno)?;
                shape = Some((k, n));
            }
            "e" => {
                let u = parse_u32(tokens.next(), lineno)?;
                let v = parse_u32(tokens.next(), lineno)?;
                edges.push((u, v));
            }
            other => {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedLine(format!("unknown tag `{other}`")),
                ))
            }
        }
    }
    let Some((k, n)) = shape else {
        return Err(ParseError::new(
            1,
            ParseErrorKind::MalformedHeader("MCIS files need a `p <parts> <part-size>` line".into()),
        ));
    };
    McisInstance::new(k, n, edges).map_err(|e| ParseError::new(1, ParseErrorKind::MalformedHeader(e)))
}

/// `Gamma4`: one `<R|B> v1 v2 v3 v4` line per constraint; the variable
/// count is the largest index seen.
pub fn parse_gamma4(text: &str) -> Result<Gamma4Instance, ParseError> {
    let mut constraints: Vec<(bool, [u32; 4])> = Vec::new();
    let mut max_var = 0u32;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let is_blue = match tokens.next().unwrap() {
            "B" => true,
            "R" => false,
            other => {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedLine(format!("expected `B` or `R`, found `{other}`")),
                ))
            }
        };
        let vars: Vec<u32> = tokens
            .map(|t| {
                t.parse::<u32>().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedLine(format!("bad variable `{t}`")))
                })
            })
            .collect::<Result<_, _>>()?;
        if vars.len() != 4 {
            return Err(ParseError::new(
                lineno,
                ParseErrorKind::MalformedLine("constraints have arity exactly 4".into()),
            ));
        }
        max_var = max_var.max(*vars.iter().max().unwrap());
        constraints.push((is_blue, [vars[0], vars[1], vars[2], vars[3]]));
    }
    Gamma4Instance::new(max_var.max(1), constraints)
        .map_err(|e| ParseError::new(1, ParseErrorKind::MalformedLine(e)))
}

fn parse_u32(token: Option<&str>, lineno: usize) -> Result<u32, ParseError> {
    token
        .and_then(|t| t.parse::<u32>().ok())
        .ok_or_else(|| ParseError::new(lineno, ParseErrorKind::MalformedLine("expected a number".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::bv;
    use crate::instance::verify;
    use crate::oracle::{brute_force_solve, solve_bounded_conciseness};

    #[test]
    fn mr_reduction_example() {
        let mr = MrInstance::new(
            1,
            vec![BitVector::zero(2), bv(2, &[1, 2])],
        )
        .unwrap();
        let inst = reduce_mr_to_2red(&mr);
        assert_eq!(inst.dim(), 4);
        let mut blues = inst.blues().to_vec();
        blues.sort();
        assert_eq!(blues, vec![bv(4, &[1, 2, 4]), bv(4, &[4])]);
        assert_eq!(inst.reds(), &[BitVector::zero(4), BitVector::ones(4)]);
        assert!(verify(&inst, &bv(4, &[2, 4]), 1).unwrap());
    }

    #[test]
    fn mr_reduction_adds_all_ones() {
        let mr = MrInstance::new(1, vec![BitVector::zero(2)]).unwrap();
        let inst = reduce_mr_to_2red(&mr);
        assert_eq!(inst.blues().len(), 2);
        assert!(inst.blues().contains(&bv(4, &[1, 2, 4])));
        assert_eq!(inst.reds().len(), 2);
    }

    #[test]
    fn mr_2blue_is_the_swap() {
        let mr = MrInstance::new(1, vec![BitVector::zero(2), bv(2, &[1, 2])]).unwrap();
        let inst = reduce_mr_to_2blue(&mr);
        assert_eq!(inst.blues().len(), 2);
        // center = complement of 0101 = 1010, radius 4 - 1 - 1 = 2.
        assert!(verify(&inst, &bv(4, &[1, 3]), 2).unwrap());
    }

    #[test]
    fn mr_bf_examples() {
        let mr = MrInstance::new(1, vec![BitVector::zero(2), bv(2, &[1, 2])]).unwrap();
        assert!(solve_mr_bf(&mr).unwrap());
        // {00, 10, 01} has no exactly-one-one center within radius 1.
        let mr = MrInstance::new(1, vec![BitVector::zero(2), bv(2, &[1]), bv(2, &[2])]).unwrap();
        assert!(!solve_mr_bf(&mr).unwrap());
    }

    #[test]
    fn mr_round_trip_on_rest_instances() {
        let mut rng = crate::generators::SplitMix64::new(0x3d5);
        let mut done = 0;
        while done < 60 {
            let n = 1 + rng.below(3) as u32;
            let d = 2 * n;
            let count = 1 + rng.below(4) as usize;
            let mut vectors = vec![BitVector::zero(d)];
            for _ in 0..count {
                let k = rng.below(d as u64 + 1) as u32;
                let v = BitVector::new(d, rng.subset(d, k)).unwrap();
                if !vectors.contains(&v) {
                    vectors.push(v);
                }
            }
            let mr = MrInstance::new(n, vectors).unwrap();
            let expected = solve_mr_bf(&mr).unwrap();
            for inst in [reduce_mr_to_2red(&mr), reduce_mr_to_2blue(&mr)] {
                let got = brute_force_solve(&inst).unwrap();
                assert_eq!(got.is_some(), expected, "{mr:?}");
            }
            done += 1;
        }
    }

    #[test]
    fn hitting_set_example() {
        let hs = HittingSetInstance::new(2, vec![vec![1], vec![2]], 2).unwrap();
        let (inst, budget) = reduce_hittingset(&hs);
        assert_eq!(budget, 2);
        assert_eq!(inst.dim(), 3);
        assert_eq!(inst.blues(), &[bv(3, &[1]), bv(3, &[2])]);
        assert_eq!(inst.reds(), &[bv(3, &[3])]);
        assert!(verify(&inst, &bv(3, &[1, 2]), 1).unwrap());
        // budget 1 is infeasible
        assert!(!solve_hittingset_bf(&HittingSetInstance::new(2, vec![vec![1], vec![2]], 1).unwrap())
            .unwrap());
        assert!(solve_bounded_conciseness(&inst, 1).is_none());
    }

    #[test]
    fn hitting_set_round_trip() {
        let mut rng = crate::generators::SplitMix64::new(0x45);
        for _ in 0..60 {
            let universe = 2 + rng.below(7) as u32;
            let set_size = 1 + rng.below(3.min(universe as u64)) as u32;
            let num_sets = 1 + rng.below(5) as usize;
            let sets: Vec<Vec<u32>> =
                (0..num_sets).map(|_| rng.subset(universe, set_size)).collect();
            let budget = rng.below(universe as u64 + 1) as u32;
            let hs = HittingSetInstance::new(universe, sets, budget).unwrap();
            let (inst, scp) = reduce_hittingset(&hs);
            assert_eq!(inst.reds().len(), 1);
            let expected = solve_hittingset_bf(&hs).unwrap();
            let got = solve_bounded_conciseness(&inst, scp);
            assert_eq!(got.is_some(), expected, "{hs:?}");
        }
    }

    #[test]
    fn mcis_example() {
        let mcis = McisInstance::new(2, 2, vec![(1, 3)]).unwrap();
        let (inst, scp) = reduce_mcis(&mcis);
        assert_eq!(scp, 2);
        assert_eq!(inst.dim(), 5);
        assert_eq!(inst.blues().len(), 1);
        assert_eq!(inst.blues()[0].conciseness(), 4);
        // {a, d} = vertices 1 and 4 is independent.
        assert!(solve_mcis_bf(&mcis).unwrap());
        assert!(solve_bounded_conciseness(&inst, scp).is_some());
    }

    #[test]
    fn mcis_complete_cross_graph_is_no() {
        let edges: Vec<(u32, u32)> =
            vec![(1, 3), (1, 4), (2, 3), (2, 4)];
        let mcis = McisInstance::new(2, 2, edges).unwrap();
        assert!(!solve_mcis_bf(&mcis).unwrap());
        let (inst, scp) = reduce_mcis(&mcis);
        assert!(solve_bounded_conciseness(&inst, scp).is_none());
    }

    #[test]
    fn mcis_round_trip() {
        let mut rng = crate::generators::SplitMix64::new(0x77);
        for _ in 0..60 {
            let parts = 2 + rng.below(2) as u32; // 2 or 3
            let part_size = 2 + rng.below(2) as u32; // 2 or 3
            if parts * part_size > 8 {
                continue;
            }
            let nv = parts * part_size;
            let mut edges = Vec::new();
            for u in 1..=nv {
                for v in u + 1..=nv {
                    if (u - 1) / part_size != (v - 1) / part_size && rng.below(2) == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let mcis = McisInstance::new(parts, part_size, edges).unwrap();
            let (inst, scp) = reduce_mcis(&mcis);
            let expected = solve_mcis_bf(&mcis).unwrap();
            let got = solve_bounded_conciseness(&inst, scp);
            assert_eq!(got.is_some(), expected, "{mcis:?}");
        }
    }

    #[test]
    fn gamma4_gadget_only_counts() {
        let csp = Gamma4Instance::new(1, vec![]).unwrap();
        let inst = reduce_gamma4(&csp).unwrap();
        assert_eq!(inst.blues().len(), 6);
        assert_eq!(inst.reds().len(), 29);
        assert_eq!(inst.dim(), 1 + 80);
        assert_eq!(inst.data_conciseness(), 4);
    }

    #[test]
    fn gamma4_single_blue_constraint_is_satisfiable() {
        let csp = Gamma4Instance::new(4, vec![(true, [1, 2, 3, 4])]).unwrap();
        assert!(solve_gamma4_bf(&csp).unwrap());
        let inst = reduce_gamma4(&csp).unwrap();
        assert_eq!(inst.data_conciseness(), 4);
        assert_eq!(inst.blues().len(), 7);
        assert_eq!(inst.reds().len(), 29);
    }

    #[test]
    fn gamma4_unsatisfiable_sources_reduce_to_no() {
        // With at most three constraints (and no shared scope across the
        // colors) the CSP is always satisfiable, so the NO direction needs
        // denser sources: a blue scope whose every weight-3 selection is
        // blocked by a red constraint.
        let unsat = Gamma4Instance::new(
            5,
            vec![
                (true, [1, 2, 3, 4]),
                (false, [1, 2, 3, 5]),
                (false, [1, 2, 4, 5]),
                (false, [1, 3, 4, 5]),
                (false, [2, 3, 4, 5]),
            ],
        )
        .unwrap();
        assert!(!solve_gamma4_bf(&unsat).unwrap());
        let inst = reduce_gamma4(&unsat).unwrap();
        assert_eq!(inst.data_conciseness(), 4);
        assert_eq!(crate::ilp::solve_ilp(&inst).unwrap(), None);
    }

    #[test]
    fn gamma4_duplicate_cross_color_scope_is_rejected() {
        let csp =
            Gamma4Instance::new(4, vec![(true, [1, 2, 3, 4]), (false, [4, 3, 2, 1])]).unwrap();
        assert!(reduce_gamma4(&csp).is_err());
    }

    #[test]
    fn source_formats_parse() {
        let mr = parse_mr("d 4\nB\nB 1 2 3 4\n").unwrap();
        assert_eq!(mr.n, 2);
        assert!(parse_mr("d 3\nB 1\n").is_err());
        assert!(parse_mr("d 4\nB 1\nR 2\n").is_err());

        let hs = parse_hittingset("u 3\nk 1\ns 1 2\ns 2 3\n").unwrap();
        assert_eq!(hs.set_size, 2);
        assert!(parse_hittingset("u 3\ns 1\n").is_err());

        let mcis = parse_mcis("p 2 2\ne 1 3\n").unwrap();
        assert_eq!(mcis.num_vertices(), 4);
        assert!(parse_mcis("p 2 2\ne 1 2\n").is_err());

        let csp = parse_gamma4("B 1 2 3 4\nR 2 3 4 5\n").unwrap();
        assert_eq!(csp.num_vars, 5);
        assert_eq!(csp.constraints.len(), 2);
        assert!(parse_gamma4("B 1 2 3\n").is_err());
    }
}
