use crate::error::DimensionMismatch;
use std::fmt;

/// A point of `{0,1}^d`, stored by its support: the sorted list of
/// 1-based coordinates carrying a `1`.
///
/// All set operations are merge-based, so their cost is proportional to
/// the conciseness of the operands rather than to the dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    support: Vec<u32>,
    dim: u32,
}

impl BitVector {
    /// Build a vector from its support. The support must be strictly
    /// increasing and contained in `[1, dim]`.
    pub fn new(dim: u32, support: Vec<u32>) -> Result<Self, String> {
        if dim == 0 {
            return Err("dimension must be positive".into());
        }
        for (i, &c) in support.iter().enumerate() {
            if c < 1 || c > dim {
                return Err(format!("coordinate {c} out of range [1, {dim}]"));
            }
            if i > 0 && support[i - 1] >= c {
                return Err(format!("support not strictly increasing at coordinate {c}"));
            }
        }
        Ok(Self { support, dim })
    }

    /// The all-zero vector.
    pub fn zero(dim: u32) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self { support: Vec::new(), dim }
    }

    /// The all-one vector.
    pub fn ones(dim: u32) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self { support: (1..=dim).collect(), dim }
    }

    /// Convenience constructor from an unsorted coordinate list; sorts and
    /// rejects duplicates.
    pub fn from_coords(dim: u32, coords: impl IntoIterator<Item = u32>) -> Result<Self, String> {
        let mut support: Vec<u32> = coords.into_iter().collect();
        support.sort_unstable();
        Self::new(dim, support)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// The sorted 1-based coordinates where the vector is 1.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// Number of ones; the conciseness measure of a vector.
    pub fn conciseness(&self) -> u32 {
        self.support.len() as u32
    }

    pub fn get(&self, coord: u32) -> bool {
        self.support.binary_search(&coord).is_ok()
    }

    /// `|O(self) ∩ O(other)|` by a two-pointer merge.
    pub fn intersection_size(&self, other: &Self) -> u32 {
        let (mut i, mut j, mut n) = (0usize, 0usize, 0u32);
        while i < self.support.len() && j < other.support.len() {
            match self.support[i].cmp(&other.support[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// Hamming distance `|O(self) Δ O(other)|`, computed through the
    /// identity `con(u) + con(v) - 2 |O(u) ∩ O(v)|`.
    pub fn hamming(&self, other: &Self) -> Result<u32, DimensionMismatch> {
        if self.dim != other.dim {
            return Err(DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(self.conciseness() + other.conciseness() - 2 * self.intersection_size(other))
    }

    /// Coordinate-wise exclusive or.
    pub fn xor(&self, mask: &Self) -> Result<Self, DimensionMismatch> {
        if self.dim != mask.dim {
            return Err(DimensionMismatch { left: self.dim, right: mask.dim });
        }
        let mut support = Vec::with_capacity(self.support.len() + mask.support.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.support.len() || j < mask.support.len() {
            match (self.support.get(i), mask.support.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a < b => {
                    support.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) => {
                    support.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    support.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    support.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Self { support, dim: self.dim })
    }

    /// Bit-wise complement.
    pub fn complement(&self) -> Self {
        let mut support = Vec::with_capacity((self.dim as usize) - self.support.len());
        let mut it = self.support.iter().peekable();
        for c in 1..=self.dim {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                support.push(c);
            }
        }
        Self { support, dim: self.dim }
    }

    /// Apply a permutation of `[1, d]`; `perm[i-1]` is the image of
    /// coordinate `i`.
    pub fn permute(&self, perm: &[u32]) -> Result<Self, String> {
        if perm.len() != self.dim as usize {
            return Err("permutation length must equal the dimension".into());
        }
        Self::from_coords(self.dim, self.support.iter().map(|&c| perm[(c - 1) as usize]))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 1..=self.dim {
            write!(f, "{}", u8::from(self.get(c)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn bv(dim: u32, coords: &[u32]) -> BitVector {
        BitVector::from_coords(dim, coords.iter().copied()).unwrap()
    }

    #[test]
    fn hamming_examples() {
        // 110 vs 101
        assert_eq!(bv(3, &[1, 2]).hamming(&bv(3, &[1, 3])).unwrap(), 2);
        // identical vectors
        assert_eq!(bv(3, &[1, 2]).hamming(&bv(3, &[1, 2])).unwrap(), 0);
        // 111 vs 000
        assert_eq!(bv(3, &[1, 2, 3]).hamming(&BitVector::zero(3)).unwrap(), 3);
    }

    #[test]
    fn hamming_dimension_mismatch() {
        assert!(bv(3, &[1]).hamming(&bv(4, &[1])).is_err());
    }

    #[test]
    fn rejects_bad_support() {
        assert!(BitVector::new(3, vec![0]).is_err());
        assert!(BitVector::new(3, vec![4]).is_err());
        assert!(BitVector::new(3, vec![2, 2]).is_err());
        assert!(BitVector::new(3, vec![3, 1]).is_err());
        assert!(BitVector::new(0, vec![]).is_err());
    }

    #[test]
    fn complement_flips_everything() {
        let v = bv(5, &[2, 4]);
        assert_eq!(v.complement().support(), &[1, 3, 5]);
        assert_eq!(v.complement().complement(), v);
    }

    fn arb_bitvector(dim: u32) -> impl Strategy<Value = BitVector> {
        prop::collection::vec(prop::bool::ANY, dim as usize).prop_map(move |bits| {
            BitVector::from_coords(
                dim,
                bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32 + 1),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn hamming_matches_direct_count(u in arb_bitvector(12), v in arb_bitvector(12)) {
            let direct = (1..=12).filter(|&c| u.get(c) != v.get(c)).count() as u32;
            prop_assert_eq!(u.hamming(&v).unwrap(), direct);
        }

        #[test]
        fn metric_axioms(u in arb_bitvector(10), v in arb_bitvector(10), w in arb_bitvector(10)) {
            prop_assert_eq!(u.hamming(&v).unwrap(), v.hamming(&u).unwrap());
            prop_assert_eq!(u.hamming(&v).unwrap() == 0, u == v);
            prop_assert!(u.hamming(&w).unwrap() <= u.hamming(&v).unwrap() + v.hamming(&w).unwrap());
        }

        #[test]
        fn xor_is_involution(u in arb_bitvector(10), m in arb_bitvector(10)) {
            prop_assert_eq!(u.xor(&m).unwrap().xor(&m).unwrap(), u);
        }

        #[test]
        fn xor_preserves_hamming(u in arb_bitvector(10), v in arb_bitvector(10), m in arb_bitvector(10)) {
            let (um, vm) = (u.xor(&m).unwrap(), v.xor(&m).unwrap());
            prop_assert_eq!(um.hamming(&vm).unwrap(), u.hamming(&v).unwrap());
        }
    }
}
