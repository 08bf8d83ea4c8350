//! Semantic checks shared by the parser and by [`super::validate`].

use std::collections::HashSet;

use super::diagnostic::{DiagCode, Diagnostic};
use crate::kinematics::DhRow;

/// Attribute of a joint line, used to point a diagnostic at the right column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Field {
    Index,
    Type,
    A,
    Alpha,
    D,
    Offset,
    Min,
    Max,
    Fixed,
}

impl Field {
    pub(crate) const ATTRIBUTES: [Field; 8] = [
        Field::Type,
        Field::A,
        Field::Alpha,
        Field::D,
        Field::Offset,
        Field::Min,
        Field::Max,
        Field::Fixed,
    ];

    pub(crate) fn key(self) -> &'static str {
        match self {
            Field::Index => "index",
            Field::Type => "type",
            Field::A => "a",
            Field::Alpha => "alpha",
            Field::D => "d",
            Field::Offset => "offset",
            Field::Min => "min",
            Field::Max => "max",
            Field::Fixed => "fixed",
        }
    }

    pub(crate) fn from_key(key: &str) -> Option<Field> {
        Field::ATTRIBUTES.iter().copied().find(|f| f.key() == key)
    }

    pub(crate) fn slot(self) -> usize {
        self as usize
    }
}

/// Maps (row position, field) to a 1-based (line, column).
pub(crate) trait Locate {
    fn row(&self, pos: usize, field: Field) -> (usize, usize);
    fn header(&self) -> (usize, usize);
}

pub(crate) fn check_chain(rows: &[DhRow], at: &impl Locate) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();

    for (pos, row) in rows.iter().enumerate() {
        let err = |field, code, msg: String| {
            let (line, col) = at.row(pos, field);
            Diagnostic::error(code, line, col, msg)
        };

        let expected = pos + 1;
        if !seen.insert(row.index) {
            out.push(err(
                Field::Index,
                DiagCode::DuplicateIndex,
                format!("joint index {} appears more than once", row.index),
            ));
        } else if row.index != expected {
            out.push(err(
                Field::Index,
                DiagCode::NonContiguousIndex,
                format!("expected joint index {expected}, found {}", row.index),
            ));
        }

        let mut finite = true;
        for (field, value) in [
            (Field::A, row.a),
            (Field::Alpha, row.alpha),
            (Field::D, row.d),
            (Field::Offset, row.theta_offset),
            (Field::Min, row.limits.min),
            (Field::Max, row.limits.max),
        ]
        .into_iter()
        .chain(row.fixed.map(|v| (Field::Fixed, v)))
        {
            if !value.is_finite() {
                finite = false;
                out.push(err(
                    field,
                    DiagCode::NonFinite,
                    format!("`{}` of joint {} is not finite", field.key(), row.index),
                ));
            }
        }
        if !finite {
            continue;
        }

        let limits = row.limits;
        if limits.min > limits.max {
            out.push(err(
                Field::Min,
                DiagCode::LimitsInverted,
                format!(
                    "joint {}: min {} exceeds max {}",
                    row.index, limits.min, limits.max
                ),
            ));
            continue;
        }
        if let Some(fixed) = row.fixed {
            if !limits.contains(fixed) {
                out.push(err(
                    Field::Fixed,
                    DiagCode::FixedOutOfLimits,
                    format!(
                        "joint {}: fixed value {} lies outside [{}, {}]",
                        row.index, fixed, limits.min, limits.max
                    ),
                ));
            }
        }
        if limits.min == limits.max {
            let (line, col) = at.row(pos, Field::Min);
            out.push(Diagnostic::warning(
                DiagCode::ZeroSpanLimits,
                line,
                col,
                format!("joint {}: min equals max ({})", row.index, limits.min),
            ));
        }
    }

    let (line, col) = at.header();
    if rows.is_empty() {
        out.push(Diagnostic::error(
            DiagCode::NoJoints,
            line,
            col,
            "robot has no joints",
        ));
    } else if rows.iter().all(|r| !r.is_movable()) {
        out.push(Diagnostic::error(
            DiagCode::AllJointsFixed,
            line,
            col,
            "every joint is fixed; at least one degree of freedom is required",
        ));
    }
    out
}
