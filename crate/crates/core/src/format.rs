//! The canonical instance file format.
//!
//! UTF-8 text; lines starting with `#` are comments and blank lines are
//! ignored. The first remaining line is the header `d <dim>`, followed by
//! one line per vector: `<B|R> <c1> <c2> ...` listing the 1-indexed,
//! strictly increasing coordinates of the 1-entries. A bare `B` or `R`
//! denotes the all-zero vector.

use crate::bitvec::BitVector;
use crate::error::{ParseError, ParseErrorKind};
use crate::instance::Instance;
use std::fmt::Write as _;

/// A parsed instance plus non-fatal diagnostics (duplicate vectors within
/// one color are dropped with a warning).
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub instance: Instance,
    pub warnings: Vec<String>,
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut dim: Option<u32> = None;
    let mut blues: Vec<BitVector> = Vec::new();
    let mut reds: Vec<BitVector> = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().expect("nonempty line");
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
            if tokens.next().is_some() {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedHeader("trailing tokens after dimension".into()),
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
        let mut support: Vec<u32> = Vec::new();
        for tok in tokens {
            let c: u64 = tok.parse().map_err(|_| {
                ParseError::new(
                    lineno,
                    ParseErrorKind::MalformedLine(format!("invalid coordinate `{tok}`")),
                )
            })?;
            if c < 1 || c > d as u64 {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::CoordinateOutOfRange { coord: c, dim: d },
                ));
            }
            let c = c as u32;
            if support.last().is_some_and(|&prev| prev >= c) {
                return Err(ParseError::new(lineno, ParseErrorKind::UnsortedSupport(c)));
            }
            support.push(c);
        }
        let v = BitVector::new(d, support).expect("validated support");
        let (own, other) = if is_blue { (&mut blues, &reds) } else { (&mut reds, &blues) };
        if other.contains(&v) {
            return Err(ParseError::new(lineno, ParseErrorKind::CrossColorDuplicate));
        }
        if own.contains(&v) {
            warnings.push(format!(
                "line {lineno}: duplicate {} vector dropped",
                if is_blue { "blue" } else { "red" }
            ));
        } else {
            own.push(v);
        }
    }

    let Some(d) = dim else {
        return Err(ParseError::new(
            text.lines().count().max(1),
            ParseErrorKind::MalformedHeader("missing `d <dim>` header".into()),
        ));
    };
    let instance = Instance::new(d, blues, reds).expect("parser enforces the invariants");
    Ok(ParsedInstance { instance, warnings })
}

/// Serialize an instance: blues before reds, each block sorted
/// lexicographically by support.
pub fn write_instance(inst: &Instance) -> String {
    write_instance_with_comments(inst, &[])
}

/// Like [`write_instance`], with leading `#` comment lines.
pub fn write_instance_with_comments(inst: &Instance, comments: &[String]) -> String {
    let norm = inst.normalized();
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "d {}", norm.dim());
    for (tag, block) in [("B", norm.blues()), ("R", norm.reds())] {
        for v in block {
            out.push_str(tag);
            for c in v.support() {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ParseErrorKind;
    use crate::instance::tests::{bv, inst_a};
    use proptest::prelude::*;

    #[test]
    fn parses_inst_a_with_bare_red_line() {
        let parsed = parse_instance("d 3\nB 1 2\nB 1 3\nR").unwrap();
        assert_eq!(parsed.instance, inst_a());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let parsed = parse_instance("# hello\n\nd 2\n# mid\nB 1\nR 2\n").unwrap();
        assert_eq!(parsed.instance.dim(), 2);
        assert_eq!(parsed.instance.num_vectors(), 2);
    }

    #[test]
    fn cross_color_duplicate_is_error() {
        let err = parse_instance("d 2\nB 1\nR 1").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.kind, ParseErrorKind::CrossColorDuplicate);
    }

    #[test]
    fn coordinate_out_of_range_is_error() {
        let err = parse_instance("d 2\nB 3").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::CoordinateOutOfRange { coord: 3, dim: 2 }));
    }

    #[test]
    fn unsorted_or_duplicate_support_is_error() {
        assert!(matches!(
            parse_instance("d 3\nB 2 1").unwrap_err().kind,
            ParseErrorKind::UnsortedSupport(1)
        ));
        assert!(matches!(
            parse_instance("d 3\nB 2 2").unwrap_err().kind,
            ParseErrorKind::UnsortedSupport(2)
        ));
    }

    #[test]
    fn missing_or_bad_header() {
        assert!(matches!(
            parse_instance("B 1").unwrap_err().kind,
            ParseErrorKind::MalformedHeader(_)
        ));
        assert!(matches!(
            parse_instance("d 0").unwrap_err().kind,
            ParseErrorKind::MalformedHeader(_)
        ));
        assert!(matches!(
            parse_instance("").unwrap_err().kind,
            ParseErrorKind::MalformedHeader(_)
        ));
    }

    #[test]
    fn within_color_duplicate_warns() {
        let parsed = parse_instance("d 2\nB 1\nB 1\nR 2").unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.instance.blues().len(), 1);
    }

    #[test]
    fn writer_orders_blues_then_reds_lexicographically() {
        let inst = crate::instance::Instance::new(
            3,
            vec![bv(3, &[2, 3]), bv(3, &[1])],
            vec![bv(3, &[3]), bv(3, &[2])],
        )
        .unwrap();
        assert_eq!(write_instance(&inst), "d 3\nB 1\nB 2 3\nR 2\nR 3\n");
    }

    fn arb_instance() -> impl Strategy<Value = crate::instance::Instance> {
        (2u32..=8).prop_flat_map(|d| {
            let vec_strategy = prop::collection::vec(prop::bool::ANY, d as usize).prop_map(
                move |bits| {
                    crate::bitvec::BitVector::from_coords(
                        d,
                        bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32 + 1),
                    )
                    .unwrap()
                },
            );
            (
                prop::collection::vec(vec_strategy.clone(), 0..5),
                prop::collection::vec(vec_strategy, 0..5),
            )
                .prop_filter_map("disjoint colors", move |(blues, reds)| {
                    let reds: Vec<_> =
                        reds.into_iter().filter(|r| !blues.contains(r)).collect();
                    crate::instance::Instance::new(d, blues, reds).ok()
                })
        })
    }

    proptest! {
        #[test]
        fn round_trip_is_identity_up_to_normalization(inst in arb_instance()) {
            let text = write_instance(&inst);
            let parsed = parse_instance(&text).unwrap();
            prop_assert_eq!(parsed.instance, inst.normalized());
            prop_assert!(parsed.warnings.is_empty());
        }
    }
}
