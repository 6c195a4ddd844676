//! Von Neumann analysis: amplification factors of the three- and five-point
//! schemes and numerical stability sweeps over Courant-number space.
//!
//! For the 2D scheme the Fourier symbol is
//!
//! ```text
//! G = g_{-1} e^{-i tx} + g_0 + g_1 e^{i tx} + d_{-1} e^{-i ty} + d_1 e^{i ty}
//! ```
//!
//! and a Courant pair is stable when `|G| <= 1 + tol` at every sampled pair
//! of phase angles. Ties at `|G| = 1` count as stable.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::output::{pgm_p2, sig9};
use crate::schemes1d::{BetaSpec, SchemeCoefficients1D};
use crate::schemes2d::SchemeCoefficients2D;

pub const DEFAULT_ANGLES: usize = 128;
pub const DEFAULT_GRID: usize = 200;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MIN_RESOLUTION: usize = 64;

/// `|G(theta)|` of the three-point scheme.
pub fn amplification_1d(coeffs: &SchemeCoefficients1D, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let re = coeffs.b_0 + (coeffs.b_m1 + coeffs.b_p1) * c;
    let im = (coeffs.b_p1 - coeffs.b_m1) * s;
    re.hypot(im)
}

/// `|G(theta_x, theta_y)|` of the five-point scheme.
pub fn amplification_2d(coeffs: &SchemeCoefficients2D, theta_x: f64, theta_y: f64) -> f64 {
    let (sx, cx) = theta_x.sin_cos();
    let (sy, cy) = theta_y.sin_cos();
    let re = coeffs.g_0 + (coeffs.g_m1 + coeffs.g_p1) * cx + (coeffs.d_m1 + coeffs.d_p1) * cy;
    let im = (coeffs.g_p1 - coeffs.g_m1) * sx + (coeffs.d_p1 - coeffs.d_m1) * sy;
    re.hypot(im)
}

/// Uniform phase angles `2 pi k / n`, `k = 0..n`, with cached cos/sin.
#[derive(Debug, Clone)]
pub struct AngleSampling {
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl AngleSampling {
    pub fn uniform(n: usize) -> Self {
        let (sin, cos) = (0..n).map(|k| (2.0 * PI * k as f64 / n as f64).sin_cos()).unzip();
        Self { cos, sin }
    }

    pub fn len(&self) -> usize {
        self.cos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cos.is_empty()
    }
}

pub fn max_amplification_1d(coeffs: &SchemeCoefficients1D, angles: &AngleSampling) -> f64 {
    let a = coeffs.b_m1 + coeffs.b_p1;
    let b = coeffs.b_p1 - coeffs.b_m1;
    angles
        .cos
        .iter()
        .zip(&angles.sin)
        .map(|(c, s)| (coeffs.b_0 + a * c).hypot(b * s))
        .fold(0.0, f64::max)
}

/// Whether `|G| <= 1 + tol` at every sampled angle pair. Returns early on
/// the first violation.
pub fn is_stable_2d(coeffs: &SchemeCoefficients2D, angles: &AngleSampling, tol: f64) -> bool {
    let bound = (1.0 + tol) * (1.0 + tol);
    let ax = coeffs.g_m1 + coeffs.g_p1;
    let bx = coeffs.g_p1 - coeffs.g_m1;
    let ay = coeffs.d_m1 + coeffs.d_p1;
    let by = coeffs.d_p1 - coeffs.d_m1;
    let re_y: Vec<f64> = angles.cos.iter().map(|c| ay * c).collect();
    let im_y: Vec<f64> = angles.sin.iter().map(|s| by * s).collect();
    for (cx, sx) in angles.cos.iter().zip(&angles.sin) {
        let re_x = coeffs.g_0 + ax * cx;
        let im_x = bx * sx;
        for (ry, iy) in re_y.iter().zip(&im_y) {
            let re = re_x + ry;
            let im = im_x + iy;
            if re * re + im * im > bound {
                return false;
            }
        }
    }
    true
}

fn check_resolution(name: &str, n: usize) -> Result<()> {
    if n < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!(
            "{name} must be at least {MIN_RESOLUTION}, got {n}"
        )));
    }
    Ok(())
}

/// Largest sampled `c = k / c_resolution` such that every sampled Courant
/// number up to it is stable; 0 when the first sample is already unstable.
pub fn stability_limit_1d_numeric(
    beta: &BetaSpec,
    c_resolution: usize,
    angle_resolution: usize,
    tol: f64,
) -> Result<f64> {
    check_resolution("c_resolution", c_resolution)?;
    check_resolution("angle_resolution", angle_resolution)?;
    beta.validate()?;
    let angles = AngleSampling::uniform(angle_resolution);
    let mut limit = 0.0;
    for k in 1..=c_resolution {
        let c = k as f64 / c_resolution as f64;
        if max_amplification_1d(&beta.coefficients(c), &angles) > 1.0 + tol {
            break;
        }
        limit = c;
    }
    Ok(limit)
}

/// Boolean stability grid over `[0, cx_max] x [0, cy_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityMap {
    pub beta: BetaSpec,
    pub cx_values: Vec<f64>,
    pub cy_values: Vec<f64>,
    /// `stable[i * cy_values.len() + j]` refers to `(cx_values[i], cy_values[j])`.
    pub stable: Vec<bool>,
    pub tolerance: f64,
}

impl StabilityMap {
    #[inline]
    pub fn is_stable(&self, i: usize, j: usize) -> bool {
        self.stable[i * self.cy_values.len() + j]
    }

    pub fn stable_count(&self) -> usize {
        self.stable.iter().filter(|&&s| s).count()
    }

    /// Largest `cx` on the `cy = 0` axis reached from the origin through
    /// stable cells, and likewise for `cy`.
    pub fn axis_intercepts(&self) -> (f64, f64) {
        let along = |values: &[f64], stable: &dyn Fn(usize) -> bool| {
            let mut last = None;
            for (k, v) in values.iter().enumerate() {
                if !stable(k) {
                    break;
                }
                last = Some(*v);
            }
            last.unwrap_or(0.0)
        };
        let x = along(&self.cx_values, &|i| self.is_stable(i, 0));
        let y = along(&self.cy_values, &|j| self.is_stable(0, j));
        (x, y)
    }

    pub fn grid_spacing(&self) -> (f64, f64) {
        let h = |v: &[f64]| if v.len() > 1 { v[1] - v[0] } else { 0.0 };
        (h(&self.cx_values), h(&self.cy_values))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("cx,cy,stable\n");
        for (i, cx) in self.cx_values.iter().enumerate() {
            for (j, cy) in self.cy_values.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    sig9(*cx),
                    sig9(*cy),
                    u8::from(self.is_stable(i, j))
                ));
            }
        }
        out
    }

    /// Plain PGM, one pixel per cell: width along `cx`, height along `cy`,
    /// largest `cy` on the top row; 255 = stable, 0 = unstable.
    pub fn to_pgm(&self) -> String {
        let (nx, ny) = (self.cx_values.len(), self.cy_values.len());
        let rows = (0..ny).rev().map(|j| {
            (0..nx)
                .map(|i| if self.is_stable(i, j) { 255u8 } else { 0 })
                .collect()
        });
        pgm_p2(nx, ny, rows)
    }
}

/// Stable-cell fraction of a map.
pub fn region_area(map: &StabilityMap) -> f64 {
    if map.stable.is_empty() {
        return 0.0;
    }
    map.stable_count() as f64 / map.stable.len() as f64
}

/// `n` equispaced samples on `[0, max]`, both ends included.
fn courant_axis(max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| max * k as f64 / (n - 1) as f64).collect()
}

/// Numerical stability region of the 2D scheme with the same `beta` in
/// both directions, evaluated in parallel over Courant pairs.
pub fn stability_map_2d(
    beta: &BetaSpec,
    cx_max: f64,
    cy_max: f64,
    grid_n: usize,
    angle_n: usize,
    tol: f64,
) -> Result<StabilityMap> {
    check_resolution("grid_n", grid_n)?;
    check_resolution("angle_n", angle_n)?;
    beta.validate()?;
    if !(cx_max > 0.0 && cy_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Courant ranges must be positive, got ({cx_max}, {cy_max})"
        )));
    }
    let cx_values = courant_axis(cx_max, grid_n);
    let cy_values = courant_axis(cy_max, grid_n);
    let angles = AngleSampling::uniform(angle_n);
    let stable = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / grid_n, idx % grid_n);
            let coeffs = SchemeCoefficients2D::from_beta_specs(beta, beta, cx_values[i], cy_values[j]);
            is_stable_2d(&coeffs, &angles, tol)
        })
        .collect();
    Ok(StabilityMap {
        beta: *beta,
        cx_values,
        cy_values,
        stable,
        tolerance: tol,
    })
}
