//! Canonical text form of a [`RobotModel`].

use std::f64::consts::PI;
use std::fmt::Write;

use crate::kinematics::{DhRow, JointKind, LengthUnit, RobotModel};

/// Angles within this distance of `±pi/D` are written as the `pi` token.
const PI_TOKEN_TOLERANCE: f64 = 1e-15;
const MAX_PI_DENOMINATOR: u32 = 16;

/// Writes `model` in canonical form: one space between fields, fields in
/// fixed order, lengths in the model's source unit.
pub fn serialize_robot(model: &RobotModel) -> String {
    let mut out = String::new();
    let name: String = model
        .name
        .chars()
        .map(|c| {
            if c == '"' || c == '\n' || c == '\r' {
                '\''
            } else {
                c
            }
        })
        .collect();
    let _ = writeln!(out, "robot \"{name}\"");
    let _ = writeln!(out, "units {}", model.source_units.as_str());
    for row in &model.rows {
        out.push_str(&joint_line(row, model.source_units));
        out.push('\n');
    }
    out
}

fn joint_line(row: &DhRow, unit: LengthUnit) -> String {
    let joint_value = |v: f64| match row.kind {
        JointKind::Revolute => angle_token(v),
        JointKind::Prismatic => length_token(v, unit),
    };
    let mut line = format!(
        "joint {} type={} a={} alpha={} d={} offset={} min={} max={}",
        row.index,
        row.kind.as_str(),
        length_token(row.a, unit),
        angle_token(row.alpha),
        length_token(row.d, unit),
        angle_token(row.theta_offset),
        joint_value(row.limits.min),
        joint_value(row.limits.max),
    );
    if let Some(fixed) = row.fixed {
        let _ = write!(line, " fixed={}", joint_value(fixed));
    }
    line
}

/// `pi`, `-pi/2`, ... when the value is one of those fractions, else the
/// shortest decimal that reads back to the same bits.
pub(crate) fn angle_token(value: f64) -> String {
    if value != 0.0 {
        for denom in 1..=MAX_PI_DENOMINATOR {
            let magnitude = PI / f64::from(denom);
            if (value.abs() - magnitude).abs() <= PI_TOKEN_TOLERANCE {
                let sign = if value < 0.0 { "-" } else { "" };
                return match denom {
                    1 => format!("{sign}pi"),
                    _ => format!("{sign}pi/{denom}"),
                };
            }
        }
    }
    decimal(value)
}

/// Decimal in `unit` that the parser scales back to exactly `meters`.
pub(crate) fn length_token(meters: f64, unit: LengthUnit) -> String {
    let factor = unit.factor_to_meters();
    if factor == 1.0 {
        return decimal(meters);
    }
    let guess = meters / factor;
    let mut best: Option<String> = None;
    let mut candidate = guess;
    let mut below = guess;
    for _ in 0..16 {
        for y in [candidate, below] {
            if y * factor == meters {
                let text = decimal(y);
                if best.as_ref().is_none_or(|b| text.len() < b.len()) {
                    best = Some(text);
                }
            }
        }
        candidate = candidate.next_up();
        below = below.next_down();
    }
    best.unwrap_or_else(|| decimal(guess))
}

/// Shortest round-trip decimal, never in exponent form and never `-0`.
fn decimal(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    format!("{value}")
}
