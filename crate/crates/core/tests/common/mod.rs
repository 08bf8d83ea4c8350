//! Test-only reference math. Plain nested arrays and a naive triple loop,
//! sharing nothing with the library's transform code.

#![allow(dead_code)]

pub mod malformed;

pub type Mat4 = [[f64; 4]; 4];

pub fn identity() -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn matmul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            c[i][j] = acc;
        }
    }
    c
}

pub fn rot_z(theta: f64) -> Mat4 {
    let mut m = identity();
    m[0][0] = theta.cos();
    m[0][1] = -theta.sin();
    m[1][0] = theta.sin();
    m[1][1] = theta.cos();
    m
}

pub fn rot_x(alpha: f64) -> Mat4 {
    let mut m = identity();
    m[1][1] = alpha.cos();
    m[1][2] = -alpha.sin();
    m[2][1] = alpha.sin();
    m[2][2] = alpha.cos();
    m
}

pub fn trans(x: f64, y: f64, z: f64) -> Mat4 {
    let mut m = identity();
    m[0][3] = x;
    m[1][3] = y;
    m[2][3] = z;
    m
}

/// `Rot_z(theta) * Trans_z(d) * Trans_x(a) * Rot_x(alpha)`, multiplied out
/// factor by factor.
pub fn elementary_link(a: f64, alpha: f64, d: f64, theta: f64) -> Mat4 {
    let m = matmul(&rot_z(theta), &trans(0.0, 0.0, d));
    let m = matmul(&m, &trans(a, 0.0, 0.0));
    matmul(&m, &rot_x(alpha))
}

/// Chain of `(a, alpha, d, theta)` links.
pub fn chain(links: &[(f64, f64, f64, f64)]) -> Mat4 {
    links.iter().fold(identity(), |acc, &(a, alpha, d, theta)| {
        matmul(&acc, &elementary_link(a, alpha, d, theta))
    })
}

pub fn position(m: &Mat4) -> [f64; 3] {
    [m[0][3], m[1][3], m[2][3]]
}

pub fn max_abs_diff(a: &Mat4, b: &[[f64; 4]; 4]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}

/// Reference splitmix64, written from the published algorithm with u128
/// arithmetic instead of wrapping ops.
pub struct RefSplitMix {
    state: u128,
}

impl RefSplitMix {
    const MOD: u128 = 1 << 64;

    pub fn new(seed: u64) -> Self {
        Self {
            state: seed as u128,
        }
    }

    pub fn next(&mut self) -> u64 {
        self.state = (self.state + 0x9E37_79B9_7F4A_7C15) % Self::MOD;
        let mut z = self.state;
        z = ((z ^ (z >> 30)) * 0xBF58_476D_1CE4_E5B9) % Self::MOD;
        z = ((z ^ (z >> 27)) * 0x94D0_49BB_1331_11EB) % Self::MOD;
        (z ^ (z >> 31)) as u64
    }
}

/// Hand-entered parameter tables, `(a, alpha, d)` in meters and radians.
pub const WAM_TABLE: [(f64, f64, f64); 7] = [
    (0.0, -std::f64::consts::FRAC_PI_2, 0.0),
    (0.0, std::f64::consts::FRAC_PI_2, 0.0),
    (0.045, -std::f64::consts::FRAC_PI_2, 0.55),
    (-0.045, std::f64::consts::FRAC_PI_2, 0.0),
    (0.0, -std::f64::consts::FRAC_PI_2, 0.3),
    (0.0, std::f64::consts::FRAC_PI_2, 0.0),
    (0.0, 0.0, 0.06),
];

pub const SMOKIE_TABLE: [(f64, f64, f64); 6] = [
    (0.0, std::f64::consts::FRAC_PI_2, 0.0),
    (0.43, 0.0, 0.0),
    (0.336, 0.0, 0.0),
    (0.0, std::f64::consts::FRAC_PI_2, 0.115),
    (0.0, -std::f64::consts::FRAC_PI_2, 0.145),
    (0.0, 0.0, 0.115),
];

pub fn table_chain(table: &[(f64, f64, f64)], thetas: &[f64]) -> Mat4 {
    let links: Vec<_> = table
        .iter()
        .zip(thetas)
        .map(|(&(a, alpha, d), &t)| (a, alpha, d, t))
        .collect();
    chain(&links)
}

/// Largest `|p|` over a dense grid of WAM joints 2-4 (Table 3 limits), every
/// other joint at zero.
pub fn wam_grid_reach(steps: usize) -> f64 {
    let lims = [(-2.0, 2.0), (-2.8, 2.8), (-0.9, 3.1)];
    let at = |(lo, hi): (f64, f64), i: usize| lo + (hi - lo) * i as f64 / (steps - 1) as f64;
    let mut best = 0.0f64;
    for i in 0..steps {
        for j in 0..steps {
            for k in 0..steps {
                let q = [
                    0.0,
                    at(lims[0], i),
                    at(lims[1], j),
                    at(lims[2], k),
                    0.0,
                    0.0,
                    0.0,
                ];
                let p = position(&table_chain(&WAM_TABLE, &q));
                best = best.max((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt());
            }
        }
    }
    best
}
