//! Real-valued hypersphere classification via linear programming.
//!
//! Over `[0,1]^d` the separation question is polynomial: for every
//! (red, blue) pair the requirement "blue strictly closer than red" loses
//! its quadratic terms and becomes linear in the center coordinates. The
//! strictness is realized by a maximized slack variable; a separating
//! center exists iff the optimal slack is positive.

pub mod simplex;

use crate::error::{ParseError, ParseErrorKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use simplex::{maximize, LpOutcome};

/// Red and blue rational vectors over `[0,1]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealInstance {
    dim: u32,
    blues: Vec<Vec<BigRational>>,
    reds: Vec<Vec<BigRational>>,
}

impl RealInstance {
    pub fn new(
        dim: u32,
        blues: Vec<Vec<BigRational>>,
        reds: Vec<Vec<BigRational>>,
    ) -> Result<Self, String> {
        if dim == 0 {
            return Err("dimension must be positive".into());
        }
        for v in blues.iter().chain(reds.iter()) {
            if v.len() != dim as usize {
                return Err(format!("vector length {} differs from dimension {dim}", v.len()));
            }
            if v.iter().any(|x| x.is_negative() || *x > BigRational::one()) {
                return Err("entries must lie in [0, 1]".into());
            }
        }
        for r in &reds {
            if blues.contains(r) {
                return Err("vector appears in both colors".into());
            }
        }
        Ok(Self { dim, blues, reds })
    }

    /// Lift a binary instance to rationals.
    pub fn from_binary(inst: &crate::instance::Instance) -> Self {
        let lift = |v: &crate::bitvec::BitVector| {
            (1..=inst.dim())
                .map(|c| if v.get(c) { BigRational::one() } else { BigRational::zero() })
                .collect()
        };
        Self {
            dim: inst.dim(),
            blues: inst.blues().iter().map(lift).collect(),
            reds: inst.reds().iter().map(lift).collect(),
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn blues(&self) -> &[Vec<BigRational>] {
        &self.blues
    }

    pub fn reds(&self) -> &[Vec<BigRational>] {
        &self.reds
    }
}

/// The separation LP: center coordinates `x_1..x_d` plus the slack; one
/// inequality per (red, blue) pair, box constraints on everything, and the
/// slack as the objective.
#[derive(Debug, Clone)]
pub struct SeparationLp {
    pub dim: u32,
    /// Rows `sum coeffs[i] * x_i + slack <= rhs`, one per (red, blue) pair
    /// in (red-major) order.
    pub pair_constraints: Vec<(Vec<BigRational>, BigRational)>,
    /// Whether the `[0,1]` box on the center coordinates is included.
    pub boxed: bool,
}

impl SeparationLp {
    /// Total constraint count: pair rows plus the box rows
    /// (`0 <= x_i <= 1` for each coordinate and `0 <= slack <= 1`).
    pub fn num_constraints(&self) -> usize {
        self.pair_constraints.len() + if self.boxed { 2 * self.dim as usize + 2 } else { 2 }
    }
}

/// For a pair (red `r`, blue `b`), strict closeness of the blue reduces to
/// `sum_i 2 (r_i - b_i) x_i + slack <= sum_i (r_i^2 - b_i^2)`.
pub fn build_separation_lp(inst: &RealInstance) -> SeparationLp {
    build_separation_lp_with(inst, true)
}

pub fn build_separation_lp_with(inst: &RealInstance, boxed: bool) -> SeparationLp {
    let mut pair_constraints = Vec::with_capacity(inst.reds.len() * inst.blues.len());
    for r in &inst.reds {
        for b in &inst.blues {
            let coeffs: Vec<BigRational> = (0..inst.dim as usize)
                .map(|i| BigRational::from(BigInt::from(2)) * (&r[i] - &b[i]))
                .collect();
            let rhs: BigRational =
                (0..inst.dim as usize).map(|i| &r[i] * &r[i] - &b[i] * &b[i]).sum();
            pair_constraints.push((coeffs, rhs));
        }
    }
    SeparationLp { dim: inst.dim, pair_constraints, boxed }
}

/// A solved real separation: the center, the maximal slack, and the exact
/// squared radius (maximum squared Euclidean distance to a blue vector).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSolution {
    pub center: Vec<BigRational>,
    pub slack: BigRational,
    pub radius_squared: BigRational,
}

/// Solve the separation LP exactly. `Some` iff the optimal slack is
/// strictly positive, i.e. a strictly separating center exists.
pub fn solve_real(inst: &RealInstance) -> Option<RealSolution> {
    solve_real_with(inst, true)
}

pub fn solve_real_with(inst: &RealInstance, boxed: bool) -> Option<RealSolution> {
    let lp = build_separation_lp_with(inst, boxed);
    let d = inst.dim as usize;
    // Variables y: with the box, x_1..x_d then slack; without it, each
    // coordinate splits into a positive and a negative part.
    let num_x = if boxed { d } else { 2 * d };
    let slack_col = num_x;
    let n = num_x + 1;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for (coeffs, b) in &lp.pair_constraints {
        let mut row = vec![BigRational::zero(); n];
        for i in 0..d {
            if boxed {
                row[i] = coeffs[i].clone();
            } else {
                row[2 * i] = coeffs[i].clone();
                row[2 * i + 1] = -coeffs[i].clone();
            }
        }
        row[slack_col] = BigRational::one();
        rows.push(row);
        rhs.push(b.clone());
    }
    if boxed {
        for i in 0..d {
            let mut row = vec![BigRational::zero(); n];
            row[i] = BigRational::one();
            rows.push(row);
            rhs.push(BigRational::one());
        }
    }
    let mut slack_row = vec![BigRational::zero(); n];
    slack_row[slack_col] = BigRational::one();
    rows.push(slack_row);
    rhs.push(BigRational::one());

    let mut objective = vec![BigRational::zero(); n];
    objective[slack_col] = BigRational::one();

    let sol = maximize(&rows, &rhs, &objective);
    if sol.outcome != LpOutcome::Optimal || !sol.objective.is_positive() {
        return None;
    }
    let center: Vec<BigRational> = (0..d)
        .map(|i| {
            if boxed {
                sol.values[i].clone()
            } else {
                &sol.values[2 * i] - &sol.values[2 * i + 1]
            }
        })
        .collect();
    let radius_squared = inst
        .blues
        .iter()
        .map(|b| squared_distance(b, &center))
        .max()
        .unwrap_or_else(BigRational::zero);
    Some(RealSolution { center, slack: sol.objective, radius_squared })
}

pub fn squared_distance(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum()
}

/// Exact soundness check: every blue strictly closer to the center than
/// every red.
pub fn strictly_separates(inst: &RealInstance, center: &[BigRational]) -> bool {
    let max_blue = inst.blues.iter().map(|b| squared_distance(b, center)).max();
    let min_red = inst.reds.iter().map(|r| squared_distance(r, center)).min();
    match (max_blue, min_red) {
        (Some(mb), Some(mr)) => mb < mr,
        (None, _) => true,
        (_, None) => true,
    }
}

/// Parse the real instance format: like the binary format, but tokens are
/// `coordinate:value` pairs (omitted coordinates are 0). A bare
/// coordinate means value 1, so binary instance files parse as their
/// rational lift. Values are integers, decimals, or `p/q` fractions.
pub fn parse_real_instance(text: &str) -> Result<RealInstance, ParseError> {
    let mut dim: Option<u32> = None;
    let mut blues: Vec<Vec<BigRational>> = Vec::new();
    let mut reds: Vec<Vec<BigRational>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().expect("nonempty");
        let Some(d) = dim else {
            if tag != "d" {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedHeader(format!("expected `d <dim>`, found `{line}`")),
                ));
            }
            let value = tokens.next().ok_or_else(|| {
                ParseError::new(lineno, ParseErrorKind::MalformedHeader("missing dimension".into()))
            })?;
            let d: u32 = value.parse().map_err(|_| {
                ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedHeader(format!("invalid dimension `{value}`")),
                )
            })?;
            if d == 0 {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedHeader("dimension must be positive".into()),
                ));
            }
            dim = Some(d);
            continue;
        };
        let is_blue = match tag {
            "B" => true,
            "R" => false,
            other => {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedLine(format!("expected `B` or `R`, found `{other}`")),
                ))
            }
        };
        let mut v = vec![BigRational::zero(); d as usize];
        let mut last_coord = 0u64;
        for tok in tokens {
            let (coord_str, value) = match tok.split_once(':') {
                Some((c, val)) => (c, parse_rational(val).ok_or_else(|| {
                    ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedLine(format!("invalid value `{val}`")),
                    )
                })?),
                None => (tok, BigRational::one()),
            };
            let coord: u64 = coord_str.parse().map_err(|_| {
                ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedLine(format!("invalid coordinate `{coord_str}`")),
                )
            })?;
            if coord < 1 || coord > d as u64 {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::CoordinateOutOfRange { coord, dim: d },
                ));
            }
            if coord <= last_coord {
                return Err(ParseError::new(lineno, ParseErrorKind::UnsortedSupport(coord as u32)));
            }
            last_coord = coord;
            if value.is_negative() || value > BigRational::one() {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedLine(format!("value `{tok}` outside [0, 1]")),
                ));
            }
            v[(coord - 1) as usize] = value;
        }
        let (own, other) = if is_blue { (&mut blues, &reds) } else { (&mut reds, &blues) };
        if other.contains(&v) {
            return Err(ParseError::new(lineno, ParseErrorKind::CrossColorDuplicate));
        }
        if !own.contains(&v) {
            own.push(v);
        }
    }
    let Some(d) = dim else {
        return Err(ParseError::new(
            text.lines().count().max(1),
            ParseErrorKind::MalformedHeader("missing `d <dim>` header".into()),
        ));
    };
    Ok(RealInstance { dim: d, blues, reds })
}

/// `42`, `0.25`, or `1/3`.
fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.parse().ok()?;
        let d: BigInt = den.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let n: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Some(BigRational::new(n, d));
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from(n))
}
