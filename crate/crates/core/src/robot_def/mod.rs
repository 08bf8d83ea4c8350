//! Robot description files: parsing, validation, canonical serialization and
//! the built-in fixtures.

mod checks;
pub mod diagnostic;
pub mod fixtures;
mod parse;
mod serialize;

pub use diagnostic::{has_errors, DiagCode, Diagnostic, Severity};
pub use fixtures::{builtin_fixture, builtin_source, UnknownFixture, FIXTURE_NAMES};
pub use parse::{check_robot, check_robot_bytes, parse_robot, parse_robot_bytes, ParseReport};
pub use serialize::serialize_robot;

pub(crate) use parse::parse_angle;

use checks::{check_chain, Field, Locate};

use crate::kinematics::RobotModel;

/// Positions diagnostics in the canonical serialization of the model: the
/// two header lines, then joint `k` (0-based) on line `k + 3`.
struct CanonicalLines;

impl Locate for CanonicalLines {
    fn row(&self, pos: usize, _field: Field) -> (usize, usize) {
        (pos + 3, 1)
    }

    fn header(&self) -> (usize, usize) {
        (1, 1)
    }
}

/// Checks the chain invariants of an in-memory model. Returns no diagnostics
/// for a valid model without zero-span limits.
pub fn validate(model: &RobotModel) -> Vec<Diagnostic> {
    check_chain(&model.rows, &CanonicalLines)
}
