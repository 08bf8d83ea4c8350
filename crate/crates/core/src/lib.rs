//! Denavit-Hartenberg forward kinematics and Monte Carlo workspace mapping.
//!
//! The crate is split into four layers:
//!
//! * [`kinematics`] evaluates single-link D-H transforms and composes them
//!   along a serial chain.
//! * [`robot_def`] reads and writes the line-oriented `.robot` description
//!   format and ships the built-in `smokie`, `wam` and `wam-code-variant`
//!   fixtures.
//! * [`rng`] is a splitmix64 stream, bit-exact across platforms.
//! * [`workspace`] samples joint space within limits and turns the resulting
//!   end-effector positions into point clouds, voxel grids and projections.
//!
//! [`cli`] wires all of it into the `dhkin` binary.

pub mod cli;
pub mod kinematics;
pub mod rng;
pub mod robot_def;
pub mod workspace;

pub use kinematics::{
    ee_position, forward_kinematics, frame_chain, link_transform, DhRow, HomTransform, JointKind,
    JointVector, KinematicsError, LengthUnit, Limits, RobotModel,
};
pub use rng::SplitMix64;
pub use robot_def::{
    builtin_fixture, parse_robot, serialize_robot, validate, DiagCode, Diagnostic, Severity,
};
pub use workspace::{
    generate_cloud, project, reachable, sample_config, summarize, voxelize, Plane, PointCloud,
    SampleSpec, VoxelGrid, WorkspaceError, WorkspaceSummary,
};
