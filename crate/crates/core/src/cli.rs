//! The `dhkin` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 robot file syntax, 3 robot file
//! validation, 4 joint values rejected by forward kinematics, 5 I/O.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::kinematics::{forward_kinematics, JointKind, JointVector, KinematicsError, RobotModel};
use crate::robot_def::{
    builtin_source, check_robot, check_robot_bytes, parse_angle, Diagnostic, ParseReport,
};
use crate::workspace::{
    generate_cloud, project, summarize, Plane, PointCloud, SampleSpec, DEFAULT_SAMPLES,
    DEFAULT_VOXEL_RESOLUTION,
};

const BUILTIN_SCHEME: &str = "builtin:";

#[derive(Debug, Parser)]
#[command(
    name = "dhkin",
    version,
    about = "Denavit-Hartenberg forward kinematics and Monte Carlo workspace mapping"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a robot description and print its diagnostics.
    Validate {
        /// Path to a .robot file, or builtin:<smokie|wam|wam-code-variant>.
        robot: String,
    },
    /// Print the base to end-effector transform for one configuration.
    Fk {
        robot: String,
        /// Comma-separated values, one per movable joint (radians or meters).
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Read revolute values of --q in degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Write the sampled end-effector point cloud.
    Workspace {
        robot: String,
        #[command(flatten)]
        sampling: Sampling,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CloudFormat::Csv)]
        format: CloudFormat,
    },
    /// Write a planar projection of the sampled cloud as u,v CSV.
    Project {
        robot: String,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum)]
        plane: PlaneArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the voxel volume estimate and reach summary as JSON.
    Volume {
        robot: String,
        #[command(flatten)]
        sampling: Sampling,
        /// Voxel edge length in meters.
        #[arg(long, default_value_t = DEFAULT_VOXEL_RESOLUTION, value_parser = positive_f64)]
        voxel: f64,
    },
}

#[derive(Debug, clap::Args)]
struct Sampling {
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = positive_usize)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CloudFormat {
    Csv,
    Ply,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlaneArg {
    Xy,
    Xz,
    Yz,
}

impl From<PlaneArg> for Plane {
    fn from(p: PlaneArg) -> Plane {
        match p {
            PlaneArg::Xy => Plane::Xy,
            PlaneArg::Xz => Plane::Xz,
            PlaneArg::Yz => Plane::Yz,
        }
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}: robot description has syntax errors")]
    Syntax {
        source_name: String,
        diagnostics: Vec<Diagnostic>,
    },
    #[error("{source_name}: robot description is invalid")]
    Invalid {
        source_name: String,
        diagnostics: Vec<Diagnostic>,
    },
    #[error("{0}")]
    Kinematics(#[from] KinematicsError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Syntax { .. } => 2,
            CliError::Invalid { .. } => 3,
            CliError::Kinematics(_) => 4,
            CliError::Io { .. } => 5,
        }
    }

    fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            report(&e, err);
            e.exit_code()
        }
    }
}

fn report(e: &CliError, err: &mut dyn Write) {
    match e {
        CliError::Syntax {
            source_name,
            diagnostics,
        }
        | CliError::Invalid {
            source_name,
            diagnostics,
        } => {
            print_diagnostics(source_name, diagnostics, err);
        }
        other => {
            let _ = writeln!(err, "error: {other}");
        }
    }
}

fn print_diagnostics(source_name: &str, diagnostics: &[Diagnostic], err: &mut dyn Write) {
    for d in diagnostics {
        let _ = writeln!(err, "{source_name}:{d}");
    }
}

struct Loaded {
    source_name: String,
    report: ParseReport,
}

fn load_report(robot: &str) -> Result<Loaded, CliError> {
    if let Some(name) = robot.strip_prefix(BUILTIN_SCHEME) {
        let text = builtin_source(name).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(Loaded {
            source_name: robot.to_string(),
            report: check_robot(text),
        });
    }
    let bytes = std::fs::read(robot).map_err(|e| CliError::io(robot, e))?;
    Ok(Loaded {
        source_name: robot.to_string(),
        report: check_robot_bytes(&bytes),
    })
}

fn into_model(loaded: Loaded) -> Result<(RobotModel, Vec<Diagnostic>), CliError> {
    let Loaded {
        source_name,
        report,
    } = loaded;
    match report.model {
        Some(model) => Ok((model, report.diagnostics)),
        None => {
            let syntax = report
                .diagnostics
                .iter()
                .any(|d| d.is_error() && d.code.is_syntax());
            let diagnostics = report.diagnostics;
            Err(if syntax {
                CliError::Syntax {
                    source_name,
                    diagnostics,
                }
            } else {
                CliError::Invalid {
                    source_name,
                    diagnostics,
                }
            })
        }
    }
}

fn load_model(robot: &str) -> Result<RobotModel, CliError> {
    into_model(load_report(robot)?).map(|(model, _)| model)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Validate { robot } => {
            let loaded = load_report(&robot)?;
            let source_name = loaded.source_name.clone();
            let (_, warnings) = into_model(loaded)?;
            print_diagnostics(&source_name, &warnings, err);
            Ok(())
        }
        Command::Fk { robot, q, degrees } => {
            let model = load_model(&robot)?;
            let config = parse_joint_values(&model, &q, degrees)?;
            let t = forward_kinematics(&model, &config)?;
            let mut text = String::new();
            for row in t.rows() {
                let cells: Vec<String> = row.iter().map(|&v| fixed9(v)).collect();
                let _ = writeln!(text, "{}", cells.join(" "));
            }
            let [x, y, z] = t.position();
            let _ = writeln!(text, "{} {} {}", fixed9(x), fixed9(y), fixed9(z));
            write_stdout(out, &text)
        }
        Command::Workspace {
            robot,
            sampling,
            out: path,
            format,
        } => {
            let cloud = sample(&robot, &sampling)?;
            let text = match format {
                CloudFormat::Csv => cloud_csv(&cloud),
                CloudFormat::Ply => cloud_ply(&cloud),
            };
            emit(path.as_deref(), &text, out)
        }
        Command::Project {
            robot,
            sampling,
            plane,
            out: path,
        } => {
            let cloud = sample(&robot, &sampling)?;
            let text = projection_csv(&project(&cloud, plane.into()));
            emit(path.as_deref(), &text, out)
        }
        Command::Volume {
            robot,
            sampling,
            voxel,
        } => {
            let cloud = sample(&robot, &sampling)?;
            let summary = summarize(&cloud, voxel).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut text = serde_json::to_string(&summary)
                .map_err(|e| CliError::io("<stdout>", io::Error::other(e)))?;
            text.push('\n');
            write_stdout(out, &text)
        }
    }
}

fn sample(robot: &str, sampling: &Sampling) -> Result<PointCloud, CliError> {
    let model = load_model(robot)?;
    let spec = SampleSpec::new(sampling.samples, sampling.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(generate_cloud(&model, spec))
}

/// Parses `--q`. Values map onto movable joints in order; with `degrees`,
/// values for revolute joints are converted to radians.
fn parse_joint_values(model: &RobotModel, q: &str, degrees: bool) -> Result<JointVector, CliError> {
    let values = q
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            parse_angle(tok).map_err(|_| CliError::Usage(format!("--q: bad joint value `{tok}`")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    let values = if degrees {
        values
            .into_iter()
            .zip(
                model
                    .movable_rows()
                    .map(|r| r.kind)
                    .chain(std::iter::repeat(JointKind::Revolute)),
            )
            .map(|(v, kind)| match kind {
                JointKind::Revolute => v.to_radians(),
                JointKind::Prismatic => v,
            })
            .collect()
    } else {
        values
    };
    Ok(JointVector(values))
}

/// `{:.9}` without a negative sign on values that round to zero.
pub fn fixed9(v: f64) -> String {
    let s = format!("{v:.9}");
    if s == "-0.000000000" {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn cloud_csv(cloud: &PointCloud) -> String {
    let mut s = String::with_capacity(40 * (cloud.len() + 1));
    s.push_str("x,y,z\n");
    for &[x, y, z] in &cloud.points {
        let _ = writeln!(s, "{},{},{}", fixed9(x), fixed9(y), fixed9(z));
    }
    s
}

pub fn cloud_ply(cloud: &PointCloud) -> String {
    let mut s = String::with_capacity(40 * (cloud.len() + 8));
    s.push_str("ply\nformat ascii 1.0\n");
    let _ = writeln!(s, "comment robot {}", cloud.robot.replace('\n', " "));
    let _ = writeln!(s, "comment seed {} samples {}", cloud.seed, cloud.len());
    let _ = writeln!(s, "element vertex {}", cloud.len());
    s.push_str("property float x\nproperty float y\nproperty float z\nend_header\n");
    for &[x, y, z] in &cloud.points {
        let _ = writeln!(s, "{} {} {}", fixed9(x), fixed9(y), fixed9(z));
    }
    s
}

pub fn projection_csv(points: &[[f64; 2]]) -> String {
    let mut s = String::with_capacity(28 * (points.len() + 1));
    s.push_str("u,v\n");
    for &[u, v] in points {
        let _ = writeln!(s, "{},{}", fixed9(u), fixed9(v));
    }
    s
}

fn write_stdout(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io("<stdout>", e))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => write_stdout(out, text),
    }
}

/// Writes to a temporary file beside `path`, then renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(bytes)
        .and_then(|_| tmp.flush())
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("dhkin").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn negative_zero_is_printed_unsigned() {
        assert_eq!(fixed9(-1e-17), "0.000000000");
        assert_eq!(fixed9(-0.0), "0.000000000");
        assert_eq!(fixed9(-0.5), "-0.500000000");
    }

    #[test]
    fn fk_wam_zero_position() {
        let (code, out, _) = run_capture(&["fk", "builtin:wam", "--q", "0,0,0,0,0,0"]);
        assert_eq!(code, 0);
        assert_eq!(
            out.lines().last(),
            Some("0.000000000 0.000000000 0.910000000")
        );
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn fk_accepts_negative_and_pi_values() {
        let (code, _, err) = run_capture(&["fk", "builtin:smokie", "--q", "-pi/2,0,0,0,0,-1.0"]);
        assert_eq!(code, 0, "{err}");
    }

    #[test]
    fn degrees_only_changes_input() {
        let (_, rad, _) = run_capture(&[
            "fk",
            "builtin:smokie",
            "--q",
            "1.5707963267948966,0,0,0,0,0",
        ]);
        let (_, deg, _) =
            run_capture(&["fk", "builtin:smokie", "--q", "90,0,0,0,0,0", "--degrees"]);
        assert_eq!(rad, deg);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&[]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(run_capture(&["fk", "builtin:wam", "--q", "a,b"]).0, 1);
        assert_eq!(run_capture(&["validate", "builtin:puma"]).0, 1);
        assert_eq!(
            run_capture(&["volume", "builtin:wam", "--samples", "0"]).0,
            1
        );
        assert_eq!(
            run_capture(&["volume", "builtin:wam", "--voxel", "-1"]).0,
            1
        );
        assert_eq!(
            run_capture(&["project", "builtin:wam", "--plane", "xw"]).0,
            1
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("workspace"));
    }

    #[test]
    fn fk_arity_error() {
        let (code, _, err) = run_capture(&["fk", "builtin:wam", "--q", "0,0,0"]);
        assert_eq!(code, 4);
        assert!(err.contains("expected 6"), "{err}");
    }

    #[test]
    fn volume_json_key_order() {
        let (code, out, _) = run_capture(&[
            "volume",
            "builtin:wam",
            "--samples",
            "50",
            "--seed",
            "1",
            "--voxel",
            "0.1",
        ]);
        assert_eq!(code, 0);
        let keys = [
            "robot",
            "n",
            "seed",
            "voxel_resolution",
            "occupied_count",
            "volume_m3",
            "max_reach_m",
            "bbox_min",
            "bbox_max",
        ];
        let positions: Vec<usize> = keys
            .iter()
            .map(|k| out.find(&format!("\"{k}\":")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{out}");
        assert_eq!(out.lines().count(), 1);
    }

    #[test]
    fn ply_header() {
        let (code, out, _) = run_capture(&[
            "workspace",
            "builtin:wam",
            "--samples",
            "3",
            "--format",
            "ply",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "ply");
        assert_eq!(lines[1], "format ascii 1.0");
        assert!(lines.contains(&"element vertex 3"));
        let end = lines.iter().position(|l| *l == "end_header").unwrap();
        assert_eq!(lines.len() - end - 1, 3);
    }
}
