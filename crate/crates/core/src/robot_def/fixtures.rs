//! The three arms shipped with the crate.
//!
//! Each fixture exists twice: as `.robot` text under `fixtures/` and as the
//! constants below. Tests keep the two in lockstep.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::kinematics::{DhRow, LengthUnit, Limits, RobotModel};

pub const FIXTURE_NAMES: [&str; 3] = ["smokie", "wam", "wam-code-variant"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown built-in robot `{0}` (expected one of: smokie, wam, wam-code-variant)")]
pub struct UnknownFixture(pub String);

pub fn builtin_fixture(name: &str) -> Result<RobotModel, UnknownFixture> {
    match name {
        "smokie" => Ok(smokie()),
        "wam" => Ok(wam()),
        "wam-code-variant" => Ok(wam_code_variant()),
        other => Err(UnknownFixture(other.to_string())),
    }
}

/// On-disk description text of a built-in fixture.
pub fn builtin_source(name: &str) -> Result<&'static str, UnknownFixture> {
    match name {
        "smokie" => Ok(include_str!("../../fixtures/smokie.robot")),
        "wam" => Ok(include_str!("../../fixtures/wam.robot")),
        "wam-code-variant" => Ok(include_str!("../../fixtures/wam-code-variant.robot")),
        other => Err(UnknownFixture(other.to_string())),
    }
}

fn cm(v: f64) -> f64 {
    v * LengthUnit::Centimeter.factor_to_meters()
}

/// Smokie Robots OUR: six revolute joints, each with a full turn of travel.
/// Written in centimeters.
pub fn smokie() -> RobotModel {
    let full = Limits::new(-PI, PI);
    RobotModel::new(
        "Smokie OUR",
        LengthUnit::Centimeter,
        vec![
            DhRow::revolute(1, 0.0, FRAC_PI_2, 0.0, full),
            DhRow::revolute(2, cm(43.0), 0.0, 0.0, full),
            DhRow::revolute(3, cm(33.6), 0.0, 0.0, full),
            DhRow::revolute(4, 0.0, FRAC_PI_2, cm(11.5), full),
            DhRow::revolute(5, 0.0, -FRAC_PI_2, cm(14.5), full),
            DhRow::revolute(6, 0.0, 0.0, cm(11.5), full),
        ],
    )
}

/// Barrett WAM with data-sheet limits; joint 1 frozen at zero.
pub fn wam() -> RobotModel {
    RobotModel::new(
        "Barrett WAM",
        LengthUnit::Meter,
        vec![
            DhRow::revolute(1, 0.0, -FRAC_PI_2, 0.0, Limits::new(-2.6, 2.6)).with_fixed(0.0),
            DhRow::revolute(2, 0.0, FRAC_PI_2, 0.0, Limits::new(-2.0, 2.0)),
            DhRow::revolute(3, 0.045, -FRAC_PI_2, 0.55, Limits::new(-2.8, 2.8)),
            DhRow::revolute(4, -0.045, FRAC_PI_2, 0.0, Limits::new(-0.9, 3.1)),
            DhRow::revolute(5, 0.0, -FRAC_PI_2, 0.3, Limits::new(-4.8, 1.3)),
            DhRow::revolute(6, 0.0, FRAC_PI_2, 0.0, Limits::new(-1.6, 1.6)),
            DhRow::revolute(7, 0.0, 0.0, 0.06, Limits::new(-2.2, 2.2)),
        ],
    )
}

/// Barrett WAM as typed into the original MATLAB script. Differs from
/// [`wam`] in the base offset, alpha signs, a3/a4 signs and joint 2/4 limits.
#[allow(clippy::approx_constant)]
pub fn wam_code_variant() -> RobotModel {
    RobotModel::new(
        "Barrett WAM (script variant)",
        LengthUnit::Meter,
        vec![
            DhRow::revolute(1, 0.0, FRAC_PI_2, 0.0345, Limits::new(-2.6, 2.6)).with_fixed(0.0),
            DhRow::revolute(2, 0.0, -FRAC_PI_2, 0.0, Limits::new(-1.9, 1.9)),
            DhRow::revolute(3, -0.045, FRAC_PI_2, 0.55, Limits::new(-2.8, 2.8)),
            DhRow::revolute(4, 0.045, -FRAC_PI_2, 0.0, Limits::new(-0.9, 3.14)),
            DhRow::revolute(5, 0.0, -FRAC_PI_2, 0.30, Limits::new(-4.8, 1.3)),
            DhRow::revolute(6, 0.0, FRAC_PI_2, 0.0, Limits::new(-1.6, 1.6)),
            DhRow::revolute(7, 0.0, 0.0, 0.060, Limits::new(-2.2, 2.2)),
        ],
    )
}
