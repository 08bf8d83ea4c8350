//! Monte Carlo workspace mapping.
//!
//! Joint configurations are drawn uniformly inside each movable joint's
//! limits from one logical splitmix64 stream: sample `k` (0-based) consumes
//! draws `k*m .. (k+1)*m` where `m` is the movable-joint count. Any worker
//! can jump to sample `k` with [`SplitMix64::advanced`], so the cloud is the
//! same for every thread count.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::kinematics::{ee_position_unchecked, JointVector, Limits, RobotModel};
use crate::rng::SplitMix64;

pub const DEFAULT_SAMPLES: usize = 20_000;
pub const DEFAULT_VOXEL_RESOLUTION: f64 = 0.02;

/// Samples per parallel work item.
const CHUNK: usize = 2048;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorkspaceError {
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("voxel resolution must be positive and finite, got {0}")]
    BadResolution(f64),
    #[error("cannot summarize an empty point cloud")]
    EmptyCloud,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub n: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(n: usize, seed: u64) -> Result<Self, WorkspaceError> {
        if n == 0 {
            return Err(WorkspaceError::NoSamples);
        }
        Ok(Self { n, seed })
    }
}

/// End-effector positions in sample order, with where they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub robot: String,
    pub seed: u64,
    pub points: Vec<[f64; 3]>,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The first `n` samples as a cloud of their own.
    pub fn prefix(&self, n: usize) -> PointCloud {
        PointCloud {
            robot: self.robot.clone(),
            seed: self.seed,
            points: self.points[..n.min(self.points.len())].to_vec(),
        }
    }
}

/// Draws one configuration: `min + (max - min) * u` per movable joint in
/// chain order, one draw each. Fixed joints consume nothing.
pub fn sample_config(model: &RobotModel, rng: &mut SplitMix64) -> JointVector {
    let mut values = Vec::with_capacity(model.movable_count());
    fill_config(model, rng, &mut values);
    JointVector(values)
}

fn fill_config(model: &RobotModel, rng: &mut SplitMix64, values: &mut Vec<f64>) {
    values.clear();
    for row in model.movable_rows() {
        let Limits { min, max } = row.limits;
        let u = rng.next_unit();
        let mut q = min + (max - min) * u;
        // u < 1, but the product can still round up onto max.
        if q >= max && min < max {
            q = max.next_down();
        }
        values.push(q);
    }
}

/// The Monte Carlo cloud for `spec`, computed in parallel.
pub fn generate_cloud(model: &RobotModel, spec: SampleSpec) -> PointCloud {
    let m = model.movable_count() as u64;
    let origin = SplitMix64::new(spec.seed);
    let mut points = vec![[0.0; 3]; spec.n];
    points
        .par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(chunk, out)| {
            let first = (chunk * CHUNK) as u64;
            let mut rng = origin.advanced(first.wrapping_mul(m));
            let mut q = Vec::with_capacity(m as usize);
            for p in out.iter_mut() {
                fill_config(model, &mut rng, &mut q);
                *p = ee_position_unchecked(model, &q);
            }
        });
    PointCloud {
        robot: model.name.clone(),
        seed: spec.seed,
        points,
    }
}

/// Single-threaded reference for [`generate_cloud`]; walks the stream once.
pub fn generate_cloud_sequential(model: &RobotModel, spec: SampleSpec) -> PointCloud {
    let mut rng = SplitMix64::new(spec.seed);
    let mut q = Vec::with_capacity(model.movable_count());
    let points = (0..spec.n)
        .map(|_| {
            fill_config(model, &mut rng, &mut q);
            ee_position_unchecked(model, &q)
        })
        .collect();
    PointCloud {
        robot: model.name.clone(),
        seed: spec.seed,
        points,
    }
}

pub type VoxelIndex = [i64; 3];

/// Occupied cells of a grid anchored at the origin: point `p` falls in cell
/// `floor(p / resolution)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VoxelGrid {
    resolution: f64,
    occupied: BTreeSet<VoxelIndex>,
}

impl VoxelGrid {
    pub fn new(resolution: f64) -> Result<Self, WorkspaceError> {
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(WorkspaceError::BadResolution(resolution));
        }
        Ok(Self {
            resolution,
            occupied: BTreeSet::new(),
        })
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn cell_of(&self, p: [f64; 3]) -> VoxelIndex {
        p.map(|c| (c / self.resolution).floor() as i64)
    }

    pub fn insert(&mut self, p: [f64; 3]) {
        let cell = self.cell_of(p);
        self.occupied.insert(cell);
    }

    pub fn contains_cell(&self, cell: &VoxelIndex) -> bool {
        self.occupied.contains(cell)
    }

    pub fn occupied(&self) -> impl Iterator<Item = &VoxelIndex> {
        self.occupied.iter()
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied.len()
    }

    /// `occupied_count * resolution^3`.
    pub fn volume(&self) -> f64 {
        let r = self.resolution;
        self.occupied.len() as f64 * (r * r * r)
    }

    pub fn is_subset(&self, other: &VoxelGrid) -> bool {
        self.resolution == other.resolution && self.occupied.is_subset(&other.occupied)
    }

    /// Set union with another grid of the same resolution.
    pub fn merge(&mut self, other: VoxelGrid) {
        debug_assert_eq!(self.resolution, other.resolution);
        self.occupied.extend(other.occupied);
    }
}

pub fn voxelize(cloud: &PointCloud, resolution: f64) -> Result<VoxelGrid, WorkspaceError> {
    let empty = VoxelGrid::new(resolution)?;
    Ok(cloud
        .points
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut grid = empty.clone();
            chunk.iter().for_each(|&p| grid.insert(p));
            grid
        })
        .reduce(
            || empty.clone(),
            |mut a, b| {
                a.merge(b);
                a
            },
        ))
}

pub fn reachable(grid: &VoxelGrid, point: [f64; 3]) -> bool {
    grid.contains_cell(&grid.cell_of(point))
}

/// Key order is the JSON output order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkspaceSummary {
    pub robot: String,
    pub n: usize,
    pub seed: u64,
    pub voxel_resolution: f64,
    pub occupied_count: usize,
    pub volume_m3: f64,
    pub max_reach_m: f64,
    pub bbox_min: [f64; 3],
    pub bbox_max: [f64; 3],
}

pub fn summarize(cloud: &PointCloud, resolution: f64) -> Result<WorkspaceSummary, WorkspaceError> {
    let grid = voxelize(cloud, resolution)?;
    if cloud.is_empty() {
        return Err(WorkspaceError::EmptyCloud);
    }
    let mut bbox_min = [f64::INFINITY; 3];
    let mut bbox_max = [f64::NEG_INFINITY; 3];
    let mut max_reach = 0.0f64;
    for p in &cloud.points {
        for axis in 0..3 {
            bbox_min[axis] = bbox_min[axis].min(p[axis]);
            bbox_max[axis] = bbox_max[axis].max(p[axis]);
        }
        max_reach = max_reach.max(norm(*p));
    }
    Ok(WorkspaceSummary {
        robot: cloud.robot.clone(),
        n: cloud.len(),
        seed: cloud.seed,
        voxel_resolution: resolution,
        occupied_count: grid.occupied_count(),
        volume_m3: grid.volume(),
        max_reach_m: max_reach,
        bbox_min,
        bbox_max,
    })
}

pub fn norm(p: [f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

/// Viewing plane; the named axes are kept, the third is dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    /// Top view.
    Xy,
    Xz,
    Yz,
}

impl Plane {
    pub fn axes(self) -> (usize, usize) {
        match self {
            Plane::Xy => (0, 1),
            Plane::Xz => (0, 2),
            Plane::Yz => (1, 2),
        }
    }
}

impl std::str::FromStr for Plane {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xy" => Ok(Plane::Xy),
            "xz" => Ok(Plane::Xz),
            "yz" => Ok(Plane::Yz),
            other => Err(format!("unknown plane `{other}` (expected xy, xz or yz)")),
        }
    }
}

pub fn project(cloud: &PointCloud, plane: Plane) -> Vec<[f64; 2]> {
    project_points(&cloud.points, plane)
}

pub fn project_points(points: &[[f64; 3]], plane: Plane) -> Vec<[f64; 2]> {
    let (u, v) = plane.axes();
    points.iter().map(|p| [p[u], p[v]]).collect()
}
