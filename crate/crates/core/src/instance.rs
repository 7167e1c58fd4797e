use crate::bitvec::BitVector;
use crate::error::DimensionMismatch;

/// A labelled training set: red and blue vectors of a common dimension.
///
/// Vector order is preserved as given (file order); several solvers use it
/// as a deterministic tie-break. Within a color the vectors form a set and
/// the two colors are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    dim: u32,
    blues: Vec<BitVector>,
    reds: Vec<BitVector>,
}

/// A separating center and radius: all blues within `radius`, all reds
/// strictly outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub center: BitVector,
    pub radius: u32,
}

/// A solution that is additionally optimal: the center has minimum
/// conciseness among all valid centers, and minimum radius among the
/// centers of that conciseness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalSolution {
    pub solution: Solution,
    pub conciseness: u32,
}

impl Instance {
    /// Build an instance, checking dimensions and color disjointness.
    /// Duplicates within one color are dropped silently (the colors are
    /// sets); a vector occurring in both colors is an error.
    pub fn new(dim: u32, blues: Vec<BitVector>, reds: Vec<BitVector>) -> Result<Self, String> {
        let mut seen_blue: Vec<&BitVector> = Vec::new();
        let mut seen_red: Vec<&BitVector> = Vec::new();
        for v in blues.iter().chain(reds.iter()) {
            if v.dim() != dim {
                return Err(format!("vector dimension {} differs from instance dimension {dim}", v.dim()));
            }
        }
        let mut blues_dedup = Vec::with_capacity(blues.len());
        for v in &blues {
            if !seen_blue.contains(&v) {
                seen_blue.push(v);
                blues_dedup.push(v.clone());
            }
        }
        let mut reds_dedup = Vec::with_capacity(reds.len());
        for v in &reds {
            if seen_blue.contains(&v) {
                return Err("vector appears in both colors".into());
            }
            if !seen_red.contains(&v) {
                seen_red.push(v);
                reds_dedup.push(v.clone());
            }
        }
        Ok(Self { dim, blues: blues_dedup, reds: reds_dedup })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn blues(&self) -> &[BitVector] {
        &self.blues
    }

    pub fn reds(&self) -> &[BitVector] {
        &self.reds
    }

    /// All vectors, blues first, in file order. This is the canonical
    /// vector ordering used wherever a solver needs one.
    pub fn vectors(&self) -> impl Iterator<Item = &BitVector> {
        self.blues.iter().chain(self.reds.iter())
    }

    pub fn num_vectors(&self) -> usize {
        self.blues.len() + self.reds.len()
    }

    /// Data conciseness: the maximum number of ones in any vector.
    pub fn data_conciseness(&self) -> u32 {
        self.vectors().map(BitVector::conciseness).max().unwrap_or(0)
    }

    /// Sort each color block lexicographically by support; the order the
    /// writer emits.
    pub fn normalized(&self) -> Self {
        let mut blues = self.blues.clone();
        let mut reds = self.reds.clone();
        blues.sort();
        reds.sort();
        Self { dim: self.dim, blues, reds }
    }

    /// Replace every vector by its XOR with `mask`, keeping colors. An
    /// involution that preserves all pairwise Hamming distances.
    pub fn xor_normalize(&self, mask: &BitVector) -> Result<Self, DimensionMismatch> {
        if mask.dim() != self.dim {
            return Err(DimensionMismatch { left: self.dim, right: mask.dim() });
        }
        let blues = self.blues.iter().map(|v| v.xor(mask)).collect::<Result<_, _>>()?;
        let reds = self.reds.iter().map(|v| v.xor(mask)).collect::<Result<_, _>>()?;
        Ok(Self { dim: self.dim, blues, reds })
    }

    /// Exchange the two colors. A witness `(c, r)` for the original maps to
    /// `(complement(c), d - r - 1)` for the swapped instance.
    pub fn swap_colors(&self) -> Self {
        Self { dim: self.dim, blues: self.reds.clone(), reds: self.blues.clone() }
    }

    /// Apply a coordinate permutation to every vector; `perm[i-1]` is the
    /// image of coordinate `i`.
    pub fn permute(&self, perm: &[u32]) -> Result<Self, String> {
        let blues = self.blues.iter().map(|v| v.permute(perm)).collect::<Result<_, _>>()?;
        let reds = self.reds.iter().map(|v| v.permute(perm)).collect::<Result<_, _>>()?;
        Ok(Self { dim: self.dim, blues, reds })
    }
}

/// True iff every blue vector is at distance at most `radius` from
/// `center` and every red vector at distance at least `radius + 1`.
pub fn verify(inst: &Instance, center: &BitVector, radius: u32) -> Result<bool, DimensionMismatch> {
    if center.dim() != inst.dim() {
        return Err(DimensionMismatch { left: inst.dim(), right: center.dim() });
    }
    for b in inst.blues() {
        if center.hamming(b)? > radius {
            return Ok(false);
        }
    }
    for r in inst.reds() {
        if center.hamming(r)? <= radius {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Like [`verify`], but reports the first violating vector on failure:
/// `(is_blue, index within its color)`.
pub fn first_violation(
    inst: &Instance,
    center: &BitVector,
    radius: u32,
) -> Result<Option<(bool, usize)>, DimensionMismatch> {
    if center.dim() != inst.dim() {
        return Err(DimensionMismatch { left: inst.dim(), right: center.dim() });
    }
    for (i, b) in inst.blues().iter().enumerate() {
        if center.hamming(b)? > radius {
            return Ok(Some((true, i)));
        }
    }
    for (i, r) in inst.reds().iter().enumerate() {
        if center.hamming(r)? <= radius {
            return Ok(Some((false, i)));
        }
    }
    Ok(None)
}

/// The minimum valid radius for a fixed center: the maximum blue distance,
/// provided it is strictly below the minimum red distance; `None` otherwise.
/// With no blues the maximum is taken as 0, with no reds the minimum as
/// unbounded.
pub fn canonical_radius(inst: &Instance, center: &BitVector) -> Result<Option<u32>, DimensionMismatch> {
    if center.dim() != inst.dim() {
        return Err(DimensionMismatch { left: inst.dim(), right: center.dim() });
    }
    let mut max_blue = 0u32;
    for b in inst.blues() {
        max_blue = max_blue.max(center.hamming(b)?);
    }
    for r in inst.reds() {
        if center.hamming(r)? <= max_blue {
            return Ok(None);
        }
    }
    Ok(Some(max_blue))
}

/// Shared handling for instances with an empty color, which most solvers'
/// case analyses do not cover. Returns `None` when both colors are
/// populated; otherwise `Some(answer)`:
///
/// * no blues: YES iff some vector of conciseness at most `budget`
///   (default `d`) is not red, witnessed with radius 0 by the first such
///   vector in (conciseness, lexicographic) order;
/// * no reds: YES with the all-zero center and radius `d`.
pub fn empty_color_solution(inst: &Instance, budget: Option<u32>) -> Option<Option<Solution>> {
    if !inst.blues().is_empty() && !inst.reds().is_empty() {
        return None;
    }
    if inst.blues().is_empty() {
        let cap = budget.unwrap_or(inst.dim()).min(inst.dim());
        let mut found = None;
        crate::oracle::for_each_center(inst.dim(), cap, |support| {
            let c = BitVector::new(inst.dim(), support.to_vec()).expect("enumerated support");
            if !inst.reds().contains(&c) {
                found = Some(c);
                true
            } else {
                false
            }
        });
        Some(found.map(|center| Solution { center, radius: 0 }))
    } else {
        Some(Some(Solution { center: BitVector::zero(inst.dim()), radius: inst.dim() }))
    }
}
