//! Seeded random instance generators.
//!
//! Determinism matters more than statistical quality here, so the RNG is a
//! self-contained splitmix64: identical seeds give identical instances on
//! every platform and toolchain.

use crate::bitvec::BitVector;
use crate::instance::Instance;

/// splitmix64; passes through all of `u64` with a full period.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        // Rejection sampling to kill modulo bias; loops are astronomically rare.
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// A uniform k-subset of `[1, d]`, sorted.
    pub fn subset(&mut self, d: u32, k: u32) -> Vec<u32> {
        debug_assert!(k <= d);
        let mut pool: Vec<u32> = (1..=d).collect();
        for i in 0..k as usize {
            let j = i + self.below((pool.len() - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut s = pool[..k as usize].to_vec();
        s.sort_unstable();
        s
    }

    /// A uniform permutation of `[1, d]` (image of coordinate i at i-1).
    pub fn permutation(&mut self, d: u32) -> Vec<u32> {
        let mut perm: Vec<u32> = (1..=d).collect();
        for i in (1..perm.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        perm
    }
}

/// Random instance: every vector gets a support size uniform in
/// `0..=max_conciseness` and a uniform support of that size; duplicate
/// draws (within or across colors) are rejected and redrawn. Blues are
/// drawn before reds.
pub fn gen_random(
    dim: u32,
    num_reds: usize,
    num_blues: usize,
    max_conciseness: u32,
    seed: u64,
) -> Result<Instance, String> {
    if dim == 0 {
        return Err("dimension must be positive".into());
    }
    if max_conciseness > dim {
        return Err("max conciseness exceeds the dimension".into());
    }
    if dim < 63 && (num_reds + num_blues) as u128 > 1u128 << dim {
        return Err("more vectors requested than exist".into());
    }
    let mut rng = SplitMix64::new(seed);
    let mut blues: Vec<BitVector> = Vec::with_capacity(num_blues);
    let mut reds: Vec<BitVector> = Vec::with_capacity(num_reds);
    let mut rejections = 0u32;
    while blues.len() < num_blues || reds.len() < num_reds {
        let drawing_blue = blues.len() < num_blues;
        let k = rng.below(max_conciseness as u64 + 1) as u32;
        let v = BitVector::new(dim, rng.subset(dim, k)).expect("sampled support");
        if blues.contains(&v) || reds.contains(&v) {
            rejections += 1;
            if rejections >= 1000 {
                return Err("1000 consecutive duplicate draws; parameters too tight".into());
            }
            continue;
        }
        rejections = 0;
        if drawing_blue {
            blues.push(v);
        } else {
            reds.push(v);
        }
    }
    Instance::new(dim, blues, reds)
}

/// Path-structured instances: every support sits inside a window of three
/// consecutive coordinates, which keeps the incidence graph path-like and
/// its treewidth small. Construction plants a YES answer: blues vary a
/// center support within its window, reds occupy windows disjoint from it.
pub fn gen_path(dim: u32, num_reds: usize, num_blues: usize, seed: u64) -> Result<Instance, String> {
    if dim < 9 {
        return Err("path instances need dimension at least 9".into());
    }
    if num_blues > 7 {
        return Err("a width-3 window only holds 7 distinct nonempty supports".into());
    }
    let mut rng = SplitMix64::new(seed);
    let windows = dim - 2; // window w covers coordinates w, w+1, w+2
    let center_window = 1 + rng.below(windows as u64) as u32;
    let center_coords = [center_window, center_window + 1, center_window + 2];

    let mut blues: Vec<BitVector> = Vec::with_capacity(num_blues);
    let mut reds: Vec<BitVector> = Vec::with_capacity(num_reds);
    // Blues: nonempty subsets of the center window. The full window is a
    // center within distance 2 of all of them.
    while blues.len() < num_blues {
        let k = 1 + rng.below(3) as usize;
        let mut coords: Vec<u32> = center_coords.to_vec();
        for i in 0..k {
            let j = i + rng.below((coords.len() - i) as u64) as usize;
            coords.swap(i, j);
        }
        let mut s = coords[..k].to_vec();
        s.sort_unstable();
        let v = BitVector::new(dim, s).expect("window support");
        if !blues.contains(&v) {
            blues.push(v);
        }
    }
    // Reds: nonempty supports in windows disjoint from the center window.
    let mut guard = 0;
    while reds.len() < num_reds {
        guard += 1;
        if guard > 10_000 {
            return Err("cannot place that many distinct red windows".into());
        }
        let w = 1 + rng.below(windows as u64) as u32;
        if w + 2 >= center_window && w <= center_window + 2 {
            continue; // overlaps the center window
        }
        let k = 1 + rng.below(3) as usize;
        let mut coords = [w, w + 1, w + 2];
        for i in 0..k {
            let j = i + rng.below((coords.len() - i) as u64) as usize;
            coords.swap(i, j);
        }
        let mut s = coords[..k].to_vec();
        s.sort_unstable();
        let v = BitVector::new(dim, s).expect("window support");
        if reds.contains(&v) {
            continue;
        }
        reds.push(v);
    }
    Instance::new(dim, blues, reds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::verify;
    use crate::oracle::brute_force_solve_with_limit;

    #[test]
    fn deterministic_given_seed() {
        let a = gen_random(4, 2, 2, 2, 7).unwrap();
        let b = gen_random(4, 2, 2, 2, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn respects_conciseness_cap() {
        for seed in 0..20 {
            let inst = gen_random(10, 3, 3, 3, seed).unwrap();
            assert!(inst.data_conciseness() <= 3);
        }
    }

    #[test]
    fn one_dimensional_pair() {
        let inst = gen_random(1, 1, 1, 1, 42).unwrap();
        let mut all: Vec<_> = inst.vectors().cloned().collect();
        all.sort();
        assert_eq!(all, vec![BitVector::zero(1), BitVector::new(1, vec![1]).unwrap()]);
    }

    #[test]
    fn too_tight_parameters_error() {
        assert!(gen_random(1, 2, 1, 1, 0).is_err());
        assert!(gen_random(2, 4, 1, 0, 0).is_err());
    }

    #[test]
    fn path_generator_rejects_impossible_blue_counts() {
        assert!(gen_path(20, 2, 8, 0).is_err());
        assert!(gen_path(8, 2, 2, 0).is_err());
    }

    #[test]
    fn path_instances_are_yes_with_window_supports() {
        for seed in 0..10 {
            let inst = gen_path(20, 6, 4, seed).unwrap();
            for v in inst.vectors() {
                let s = v.support();
                assert!(!s.is_empty());
                assert!(s.last().unwrap() - s.first().unwrap() <= 2, "support exceeds a window");
            }
            let opt = brute_force_solve_with_limit(&inst, 20).unwrap();
            let opt = opt.expect("planted YES");
            assert!(verify(&inst, &opt.solution.center, opt.solution.radius).unwrap());
        }
    }
}
