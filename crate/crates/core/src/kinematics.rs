//! Per-link Denavit-Hartenberg transforms and their composition along a chain.
//!
//! Everything here is radians and meters. Unit handling happens when a
//! description is loaded (see [`crate::robot_def`]).

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("joint value for row {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("expected {expected} joint values (one per movable joint), got {got}")]
    Arity { expected: usize, got: usize },

    #[error("joint {index}: value {value} is {bound} limit {limit}")]
    OutOfLimits {
        index: usize,
        value: f64,
        bound: Bound,
        limit: f64,
    },
}

/// Which side of a joint interval was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Min,
    Max,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Min => f.write_str("below min"),
            Bound::Max => f.write_str("above max"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JointKind {
    Revolute,
    Prismatic,
}

impl JointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            JointKind::Revolute => "revolute",
            JointKind::Prismatic => "prismatic",
        }
    }
}

/// Closed joint interval, radians for revolute rows and meters for prismatic ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub min: f64,
    pub max: f64,
}

impl Limits {
    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, q: f64) -> bool {
        self.min <= q && q <= self.max
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }
}

/// One link of a serial chain in standard D-H form.
#[derive(Debug, Clone, PartialEq)]
pub struct DhRow {
    /// 1-based position in the chain.
    pub index: usize,
    pub kind: JointKind,
    pub a: f64,
    pub alpha: f64,
    pub d: f64,
    pub theta_offset: f64,
    pub limits: Limits,
    /// Constant joint value for a frozen joint.
    pub fixed: Option<f64>,
}

impl DhRow {
    pub fn revolute(index: usize, a: f64, alpha: f64, d: f64, limits: Limits) -> Self {
        Self {
            index,
            kind: JointKind::Revolute,
            a,
            alpha,
            d,
            theta_offset: 0.0,
            limits,
            fixed: None,
        }
    }

    pub fn prismatic(index: usize, a: f64, alpha: f64, d: f64, limits: Limits) -> Self {
        Self {
            kind: JointKind::Prismatic,
            ..Self::revolute(index, a, alpha, d, limits)
        }
    }

    pub fn with_fixed(mut self, value: f64) -> Self {
        self.fixed = Some(value);
        self
    }

    pub fn with_offset(mut self, theta_offset: f64) -> Self {
        self.theta_offset = theta_offset;
        self
    }

    pub fn is_movable(&self) -> bool {
        self.fixed.is_none()
    }

    /// Upper bound on the translation this link can contribute, over its limits.
    fn reach_contribution(&self) -> f64 {
        let extension = match (self.kind, self.fixed) {
            (JointKind::Revolute, _) => self.d.abs(),
            (JointKind::Prismatic, Some(q)) => (self.d + q).abs(),
            (JointKind::Prismatic, None) => (self.d + self.limits.min)
                .abs()
                .max((self.d + self.limits.max).abs()),
        };
        self.a.abs() + extension
    }
}

/// Length unit a description was written in. Rows are always stored in meters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthUnit {
    Meter,
    Centimeter,
    Millimeter,
}

impl LengthUnit {
    pub fn factor_to_meters(self) -> f64 {
        match self {
            LengthUnit::Meter => 1.0,
            LengthUnit::Centimeter => 0.01,
            LengthUnit::Millimeter => 0.001,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LengthUnit::Meter => "m",
            LengthUnit::Centimeter => "cm",
            LengthUnit::Millimeter => "mm",
        }
    }

    pub fn parse(token: &str) -> Option<Self> {
        match token {
            "m" => Some(LengthUnit::Meter),
            "cm" => Some(LengthUnit::Centimeter),
            "mm" => Some(LengthUnit::Millimeter),
            _ => None,
        }
    }
}

/// Ordered serial chain. Fields are public; [`crate::robot_def::validate`]
/// reports whether a hand-built model satisfies the chain invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotModel {
    pub name: String,
    pub rows: Vec<DhRow>,
    pub source_units: LengthUnit,
}

impl RobotModel {
    pub fn new(name: impl Into<String>, source_units: LengthUnit, rows: Vec<DhRow>) -> Self {
        Self {
            name: name.into(),
            rows,
            source_units,
        }
    }

    pub fn movable_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_movable()).count()
    }

    pub fn movable_rows(&self) -> impl Iterator<Item = &DhRow> {
        self.rows.iter().filter(|r| r.is_movable())
    }

    /// Triangle-inequality bound on `|ee_position|` over every admissible config.
    pub fn reach_bound(&self) -> f64 {
        self.rows.iter().map(DhRow::reach_contribution).sum()
    }
}

/// One value per movable row, in chain order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct JointVector(pub Vec<f64>);

impl JointVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for JointVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// Row-major 4x4 homogeneous transform.
#[derive(Clone, Copy, PartialEq)]
pub struct HomTransform(pub [f64; 16]);

impl fmt::Debug for HomTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.chunks(4)).finish()
    }
}

impl Default for HomTransform {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl HomTransform {
    pub const IDENTITY: HomTransform = HomTransform([
        1.0, 0.0, 0.0, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, 0.0, 0.0, 1.0,
    ]);

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        let mut m = [0.0; 16];
        for (r, row) in rows.iter().enumerate() {
            m[r * 4..r * 4 + 4].copy_from_slice(row);
        }
        Self(m)
    }

    pub fn translation(x: f64, y: f64, z: f64) -> Self {
        let mut t = Self::IDENTITY;
        t.0[3] = x;
        t.0[7] = y;
        t.0[11] = z;
        t
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row * 4 + col]
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        let m = &self.0;
        [
            [m[0], m[1], m[2], m[3]],
            [m[4], m[5], m[6], m[7]],
            [m[8], m[9], m[10], m[11]],
            [m[12], m[13], m[14], m[15]],
        ]
    }

    pub fn rotation(&self) -> [[f64; 3]; 3] {
        let m = &self.0;
        [[m[0], m[1], m[2]], [m[4], m[5], m[6]], [m[8], m[9], m[10]]]
    }

    /// The fourth column without the homogeneous 1.
    pub fn position(&self) -> [f64; 3] {
        [self.0[3], self.0[7], self.0[11]]
    }

    /// `self * rhs`.
    pub fn compose(&self, rhs: &HomTransform) -> HomTransform {
        let (l, r) = (&self.0, &rhs.0);
        let mut out = [0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                out[i * 4 + j] = l[i * 4] * r[j]
                    + l[i * 4 + 1] * r[4 + j]
                    + l[i * 4 + 2] * r[8 + j]
                    + l[i * 4 + 3] * r[12 + j];
            }
        }
        HomTransform(out)
    }

    /// `max |R Rᵀ - I|` over the rotation block.
    pub fn orthonormality_error(&self) -> f64 {
        let r = self.rotation();
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| r[i][k] * r[j][k]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn rotation_det(&self) -> f64 {
        let r = self.rotation();
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    pub fn has_homogeneous_bottom_row(&self) -> bool {
        self.0[12..] == [0.0, 0.0, 0.0, 1.0]
    }

    pub fn max_abs_diff(&self, other: &HomTransform) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Mul for HomTransform {
    type Output = HomTransform;

    fn mul(self, rhs: HomTransform) -> HomTransform {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a HomTransform> for &'a HomTransform {
    type Output = HomTransform;

    fn mul(self, rhs: &'a HomTransform) -> HomTransform {
        self.compose(rhs)
    }
}

/// Standard D-H link matrix `Rot_z(θ) Trans_z(d) Trans_x(a) Rot_x(α)`.
///
/// For a revolute row `q` is added to `theta_offset`; for a prismatic row it
/// is added to `d`. Fixed rows expect their fixed value as `q`.
pub fn link_transform(row: &DhRow, q: f64) -> Result<HomTransform, KinematicsError> {
    if !q.is_finite() {
        return Err(KinematicsError::NonFinite {
            index: row.index,
            value: q,
        });
    }
    Ok(link_matrix(row, q))
}

fn link_matrix(row: &DhRow, q: f64) -> HomTransform {
    let (theta, d) = match row.kind {
        JointKind::Revolute => (row.theta_offset + q, row.d),
        JointKind::Prismatic => (row.theta_offset, row.d + q),
    };
    dh_matrix(row.a, row.alpha, d, theta)
}

// libm rather than the platform math library, so results are bit-identical
// on every target.
fn dh_matrix(a: f64, alpha: f64, d: f64, theta: f64) -> HomTransform {
    let (st, ct) = libm::sincos(theta);
    let (sa, ca) = libm::sincos(alpha);
    HomTransform([
        ct,
        -st * ca,
        st * sa,
        a * ct, //
        st,
        ct * ca,
        -ct * sa,
        a * st, //
        0.0,
        sa,
        ca,
        d, //
        0.0,
        0.0,
        0.0,
        1.0,
    ])
}

/// Pairs every row with the joint value it is evaluated at, checking arity
/// and limits first.
fn resolve_values<'m>(
    model: &'m RobotModel,
    config: &JointVector,
) -> Result<Vec<(&'m DhRow, f64)>, KinematicsError> {
    let expected = model.movable_count();
    if config.len() != expected {
        return Err(KinematicsError::Arity {
            expected,
            got: config.len(),
        });
    }
    let mut values = config.0.iter().copied();
    let mut out = Vec::with_capacity(model.rows.len());
    for row in &model.rows {
        let q = match row.fixed {
            Some(v) => v,
            None => {
                let q = values.next().expect("arity checked above");
                check_limits(row, q)?;
                q
            }
        };
        out.push((row, q));
    }
    Ok(out)
}

fn check_limits(row: &DhRow, q: f64) -> Result<(), KinematicsError> {
    if !q.is_finite() {
        return Err(KinematicsError::NonFinite {
            index: row.index,
            value: q,
        });
    }
    if q < row.limits.min {
        return Err(KinematicsError::OutOfLimits {
            index: row.index,
            value: q,
            bound: Bound::Min,
            limit: row.limits.min,
        });
    }
    if q > row.limits.max {
        return Err(KinematicsError::OutOfLimits {
            index: row.index,
            value: q,
            bound: Bound::Max,
            limit: row.limits.max,
        });
    }
    Ok(())
}

/// Base to end-effector transform `A1 A2 ... An` over every row.
pub fn forward_kinematics(
    model: &RobotModel,
    config: &JointVector,
) -> Result<HomTransform, KinematicsError> {
    let mut t = HomTransform::IDENTITY;
    for (row, q) in resolve_values(model, config)? {
        t = t.compose(&link_transform(row, q)?);
    }
    Ok(t)
}

/// Every intermediate frame: `[I, A1, A1 A2, ..., A1 ... An]`.
pub fn frame_chain(
    model: &RobotModel,
    config: &JointVector,
) -> Result<Vec<HomTransform>, KinematicsError> {
    let resolved = resolve_values(model, config)?;
    let mut frames = Vec::with_capacity(resolved.len() + 1);
    let mut t = HomTransform::IDENTITY;
    frames.push(t);
    for (row, q) in resolved {
        t = t.compose(&link_transform(row, q)?);
        frames.push(t);
    }
    Ok(frames)
}

pub fn ee_position(model: &RobotModel, config: &JointVector) -> Result<[f64; 3], KinematicsError> {
    forward_kinematics(model, config).map(|t| t.position())
}

/// Forward kinematics for configs already known to be in range (the Monte
/// Carlo sampler only produces such configs). Skips the limit checks.
pub(crate) fn ee_position_unchecked(model: &RobotModel, values: &[f64]) -> [f64; 3] {
    let mut values = values.iter().copied();
    let mut t = HomTransform::IDENTITY;
    for row in &model.rows {
        let q = row.fixed.unwrap_or_else(|| values.next().unwrap_or(0.0));
        t = t.compose(&link_matrix(row, q));
    }
    t.position()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn row(a: f64, alpha: f64, d: f64) -> DhRow {
        DhRow::revolute(1, a, alpha, d, Limits::new(-PI, PI))
    }

    #[test]
    fn zero_row_is_identity() {
        let t = link_transform(&row(0.0, 0.0, 0.0), 0.0).unwrap();
        assert_eq!(t, HomTransform::IDENTITY);
    }

    #[test]
    fn pure_x_translation() {
        let t = link_transform(&row(1.0, 0.0, 0.0), 0.0).unwrap();
        assert_eq!(t, HomTransform::translation(1.0, 0.0, 0.0));
    }

    #[test]
    fn quarter_turns_permute_axes() {
        let t = link_transform(&row(0.0, FRAC_PI_2, 0.0), FRAC_PI_2).unwrap();
        let expected = HomTransform::from_rows([
            [0.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(t.max_abs_diff(&expected) < 1e-15, "{t:?}");
    }

    #[test]
    fn non_finite_q_rejected() {
        let r = row(0.0, 0.0, 0.0);
        assert!(matches!(
            link_transform(&r, f64::NAN),
            Err(KinematicsError::NonFinite { index: 1, .. })
        ));
        assert!(link_transform(&r, f64::INFINITY).is_err());
    }

    #[test]
    fn prismatic_extends_d() {
        let r = DhRow::prismatic(1, 0.0, 0.0, 0.25, Limits::new(0.0, 1.0));
        let t = link_transform(&r, 0.5).unwrap();
        assert_eq!(t.position(), [0.0, 0.0, 0.75]);
        assert_eq!(t.rotation(), HomTransform::IDENTITY.rotation());
    }

    #[test]
    fn compose_with_identity() {
        let t = link_transform(&row(0.3, 0.4, 0.5), 1.1).unwrap();
        assert_eq!(t.compose(&HomTransform::IDENTITY), t);
        assert_eq!(HomTransform::IDENTITY.compose(&t), t);
    }

    #[test]
    fn translations_add() {
        let t = HomTransform::translation(1.0, 0.0, 0.0) * HomTransform::translation(0.0, 2.0, 0.0);
        assert_eq!(t.position(), [1.0, 2.0, 0.0]);
    }

    #[test]
    fn all_fixed_chain_is_identity() {
        let model = RobotModel::new(
            "frozen",
            LengthUnit::Meter,
            vec![row(0.0, 0.0, 0.0).with_fixed(0.0), {
                let mut r = row(0.0, 0.0, 0.0).with_fixed(0.0);
                r.index = 2;
                r
            }],
        );
        let t = forward_kinematics(&model, &JointVector::default()).unwrap();
        assert_eq!(t, HomTransform::IDENTITY);
        assert_eq!(
            ee_position(&model, &JointVector::default()).unwrap(),
            [0.0; 3]
        );
    }

    #[test]
    fn arity_and_limit_errors() {
        let model = RobotModel::new(
            "one",
            LengthUnit::Meter,
            vec![DhRow::revolute(1, 0.1, 0.0, 0.0, Limits::new(-1.0, 1.0))],
        );
        assert_eq!(
            forward_kinematics(&model, &JointVector::zeros(2)),
            Err(KinematicsError::Arity {
                expected: 1,
                got: 2
            })
        );
        assert_eq!(
            forward_kinematics(&model, &JointVector::new(vec![1.5])),
            Err(KinematicsError::OutOfLimits {
                index: 1,
                value: 1.5,
                bound: Bound::Max,
                limit: 1.0
            })
        );
        assert!(matches!(
            forward_kinematics(&model, &JointVector::new(vec![-1.5])),
            Err(KinematicsError::OutOfLimits {
                bound: Bound::Min,
                ..
            })
        ));
        // boundary values are admissible
        assert!(forward_kinematics(&model, &JointVector::new(vec![1.0])).is_ok());
    }

    #[test]
    fn single_link_chain() {
        let model = RobotModel::new(
            "one",
            LengthUnit::Meter,
            vec![DhRow::revolute(1, 0.1, 0.2, 0.3, Limits::new(-1.0, 1.0))],
        );
        let q = JointVector::new(vec![0.4]);
        let chain = frame_chain(&model, &q).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0], HomTransform::IDENTITY);
        assert_eq!(chain[1], link_transform(&model.rows[0], 0.4).unwrap());
    }

    #[test]
    fn reach_bound_counts_prismatic_extension() {
        let model = RobotModel::new(
            "slide",
            LengthUnit::Meter,
            vec![
                DhRow::revolute(1, 0.5, 0.0, 0.1, Limits::new(-1.0, 1.0)),
                DhRow::prismatic(2, 0.0, 0.0, 0.2, Limits::new(-0.6, 0.3)),
            ],
        );
        assert!((model.reach_bound() - (0.6 + 0.5)).abs() < 1e-15);
    }
}
