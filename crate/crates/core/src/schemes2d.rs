//! Simultaneous-update Rusanov-type scheme for
//! `q_t + lambda_x q_x + lambda_y q_y = 0` on a periodic Cartesian mesh.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fluxes::ScalarFluxInput;
use crate::schemes1d::BetaSpec;

/// Five-point stencil weights: `g_*` along x, `d_*` along y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeCoefficients2D {
    pub g_m1: f64,
    pub g_0: f64,
    pub g_p1: f64,
    pub d_m1: f64,
    pub d_p1: f64,
}

impl SchemeCoefficients2D {
    /// From Courant numbers and viscosity coefficients `d = beta c` per direction.
    pub fn from_viscosity(cx: f64, visc_x: f64, cy: f64, visc_y: f64) -> Self {
        Self {
            g_m1: 0.5 * (cx + visc_x),
            g_0: 1.0 - visc_x - visc_y,
            g_p1: 0.5 * (visc_x - cx),
            d_m1: 0.5 * (cy + visc_y),
            d_p1: 0.5 * (visc_y - cy),
        }
    }

    /// Weights for `beta(c)` curves; a direction with zero Courant number
    /// contributes nothing.
    pub fn from_beta_specs(beta_x: &BetaSpec, beta_y: &BetaSpec, cx: f64, cy: f64) -> Self {
        Self::from_viscosity(cx, beta_x.viscosity(cx), cy, beta_y.viscosity(cy))
    }

    pub fn sum(&self) -> f64 {
        self.g_m1 + self.g_0 + self.g_p1 + self.d_m1 + self.d_p1
    }

    pub fn is_nonnegative(&self) -> bool {
        [self.g_m1, self.g_0, self.g_p1, self.d_m1, self.d_p1]
            .iter()
            .all(|&w| w >= 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Advection2DSpec {
    pub lambda_x: f64,
    pub lambda_y: f64,
    pub beta_x: f64,
    pub beta_y: f64,
    pub cx: f64,
    pub cy: f64,
}

impl Advection2DSpec {
    pub fn new(lambda_x: f64, lambda_y: f64, beta_x: f64, beta_y: f64, cx: f64, cy: f64) -> Result<Self> {
        if !(lambda_x >= 0.0 && lambda_y >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "advection speeds must be non-negative, got ({lambda_x}, {lambda_y})"
            )));
        }
        if !(beta_x >= 0.0 && beta_y >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must be non-negative, got ({beta_x}, {beta_y})"
            )));
        }
        if !(cx >= 0.0 && cy >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Courant numbers must be non-negative, got ({cx}, {cy})"
            )));
        }
        Ok(Self {
            lambda_x,
            lambda_y,
            beta_x,
            beta_y,
            cx,
            cy,
        })
    }

    /// Unit speeds and a common beta in both directions.
    pub fn isotropic(beta: f64, cx: f64, cy: f64) -> Result<Self> {
        Self::new(1.0, 1.0, beta, beta, cx, cy)
    }
}

pub fn coefficients_2d(spec: &Advection2DSpec) -> SchemeCoefficients2D {
    SchemeCoefficients2D::from_viscosity(
        spec.cx,
        spec.beta_x * spec.cx,
        spec.cy,
        spec.beta_y * spec.cy,
    )
}

/// All five weights non-negative. With `lambda_x, lambda_y >= 0` this is
/// `beta_x >= 1`, `beta_y >= 1` and `beta_x c_x + beta_y c_y <= 1` (for
/// positive Courant numbers).
pub fn is_monotone_2d(spec: &Advection2DSpec) -> bool {
    coefficients_2d(spec).is_nonnegative()
}

/// Periodic cell field stored row-major: `data[j * nx + i]`, `i` along x.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub nx: usize,
    pub ny: usize,
    pub data: Vec<f64>,
}

impl Field2D {
    pub fn new(nx: usize, ny: usize, data: Vec<f64>) -> Result<Self> {
        if nx == 0 || ny == 0 || data.len() != nx * ny {
            return Err(Error::InvalidGrid(format!(
                "field of {} values does not fit {nx} x {ny}",
                data.len()
            )));
        }
        Ok(Self { nx, ny, data })
    }

    pub fn from_fn(nx: usize, ny: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let data = (0..ny).flat_map(|j| (0..nx).map(move |i| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self { nx, ny, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.nx + i]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ny, self.nx, |i, j| self.get(j, i))
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}

/// One five-point update into `out`; rows are processed in parallel.
pub fn step_2d_into(q: &Field2D, coeffs: &SchemeCoefficients2D, out: &mut Field2D) {
    assert_eq!((q.nx, q.ny), (out.nx, out.ny));
    let (nx, ny) = (q.nx, q.ny);
    let c = *coeffs;
    out.data
        .par_chunks_mut(nx)
        .enumerate()
        .for_each(|(j, row)| {
            let jm = if j == 0 { ny - 1 } else { j - 1 };
            let jp = if j + 1 == ny { 0 } else { j + 1 };
            let here = &q.data[j * nx..(j + 1) * nx];
            let below = &q.data[jm * nx..(jm + 1) * nx];
            let above = &q.data[jp * nx..(jp + 1) * nx];
            for i in 0..nx {
                let im = if i == 0 { nx - 1 } else { i - 1 };
                let ip = if i + 1 == nx { 0 } else { i + 1 };
                row[i] = c.g_m1 * here[im]
                    + c.g_0 * here[i]
                    + c.g_p1 * here[ip]
                    + c.d_m1 * below[i]
                    + c.d_p1 * above[i];
            }
        });
}

pub fn step_2d(q: &Field2D, coeffs: &SchemeCoefficients2D) -> Field2D {
    let mut out = q.clone();
    step_2d_into(q, coeffs, &mut out);
    out
}

/// The same update written as flux differences of Rusanov fluxes,
/// `q - dt/dx (f_{i+1/2} - f_{i-1/2}) - dt/dy (g_{j+1/2} - g_{j-1/2})`.
pub fn step_2d_conservative(q: &Field2D, spec: &Advection2DSpec) -> Field2D {
    let (nx, ny) = (q.nx, q.ny);
    let ratio = |c: f64, lambda: f64| if lambda > 0.0 { c / lambda } else { 0.0 };
    let rx = ratio(spec.cx, spec.lambda_x);
    let ry = ratio(spec.cy, spec.lambda_y);
    let fx = |a: f64, b: f64| ScalarFluxInput::with_beta(a, b, spec.lambda_x, spec.beta_x).rusanov();
    let fy = |a: f64, b: f64| ScalarFluxInput::with_beta(a, b, spec.lambda_y, spec.beta_y).rusanov();
    Field2D::from_fn(nx, ny, |i, j| {
        let im = (i + nx - 1) % nx;
        let ip = (i + 1) % nx;
        let jm = (j + ny - 1) % ny;
        let jp = (j + 1) % ny;
        let v = q.get(i, j);
        let dfx = fx(v, q.get(ip, j)) - fx(q.get(im, j), v);
        let dfy = fy(v, q.get(i, jp)) - fy(q.get(i, jm), v);
        v - rx * dfx - ry * dfy
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_field(nx: usize, ny: usize, seed: u64) -> Field2D {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        Field2D::from_fn(nx, ny, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn assert_coeffs(c: SchemeCoefficients2D, expected: [f64; 5]) {
        let got = [c.g_m1, c.g_0, c.g_p1, c.d_m1, c.d_p1];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-15, "{got:?} vs {expected:?}");
        }
    }

    #[test]
    fn coefficient_examples() {
        let upwind = coefficients_2d(&Advection2DSpec::isotropic(1.0, 0.25, 0.25).unwrap());
        assert_coeffs(upwind, [0.25, 0.5, 0.0, 0.25, 0.0]);
        let still = coefficients_2d(&Advection2DSpec::isotropic(1.7, 0.0, 0.0).unwrap());
        assert_coeffs(still, [0.0, 1.0, 0.0, 0.0, 0.0]);
        let c = coefficients_2d(&Advection2DSpec::isotropic(2.0, 0.2, 0.2).unwrap());
        assert!((c.g_p1 - 0.1).abs() < 1e-15 && (c.d_p1 - 0.1).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_one_on_grid() {
        for beta in [0.5, 1.0, 1.5, 2.0] {
            for a in 0..50 {
                for b in 0..50 {
                    let spec = Advection2DSpec::isotropic(beta, a as f64 / 49.0, b as f64 / 49.0).unwrap();
                    assert!((coefficients_2d(&spec).sum() - 1.0).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn monotonicity_examples() {
        let under = |cy| Advection2DSpec::new(1.0, 1.0, 0.75, 1.0, 0.3, cy).unwrap();
        for cy in [0.0, 0.2, 0.5] {
            assert!(!is_monotone_2d(&under(cy)));
        }
        for (cx, cy) in [(0.5, 0.5), (0.2, 0.3), (1.0, 0.0)] {
            assert!(is_monotone_2d(&Advection2DSpec::isotropic(1.0, cx, cy).unwrap()));
        }
        assert!(!is_monotone_2d(&Advection2DSpec::isotropic(1.25, 0.5, 0.5).unwrap()));
    }

    #[test]
    fn constant_field_is_steady() {
        let q = Field2D::from_fn(8, 5, |_, _| 3.25);
        let out = step_2d(&q, &coefficients_2d(&Advection2DSpec::isotropic(0.6, 0.3, 0.4).unwrap()));
        assert!(out.data.iter().all(|v| (v - 3.25).abs() < 1e-14));
    }

    #[test]
    fn unit_courant_shift_in_x() {
        let q = random_field(6, 4, 3);
        let out = step_2d(&q, &coefficients_2d(&Advection2DSpec::isotropic(1.0, 1.0, 0.0).unwrap()));
        for j in 0..4 {
            for i in 0..6 {
                assert_eq!(out.get(i, j), q.get((i + 5) % 6, j));
            }
        }
    }

    #[test]
    fn stencil_matches_flux_form() {
        let q = random_field(17, 11, 7);
        for (beta, cx, cy) in [(1.0, 0.3, 0.4), (0.5, 0.2, 0.1), (1.75, 0.25, 0.3), (2.0, 0.0, 0.5)] {
            let spec = Advection2DSpec::new(1.3, 0.7, beta, beta * 1.1, cx, cy).unwrap();
            let a = step_2d(&q, &coefficients_2d(&spec));
            let b = step_2d_conservative(&q, &spec);
            for (x, y) in a.data.iter().zip(&b.data) {
                assert!((x - y).abs() <= 1e-12, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn monotone_steps_keep_product_data_bounds() {
        let q = Field2D::from_fn(20, 20, |i, j| (i as f64 * 0.3).sin() * (j as f64 * 0.7).cos());
        let (lo, hi) = q.min_max();
        let coeffs = coefficients_2d(&Advection2DSpec::isotropic(1.2, 0.4, 0.35).unwrap());
        assert!(coeffs.is_nonnegative());
        let mut f = q;
        for _ in 0..50 {
            f = step_2d(&f, &coeffs);
            let (a, b) = f.min_max();
            assert!(a >= lo - 1e-12 && b <= hi + 1e-12);
        }
    }

    #[test]
    fn transpose_symmetry() {
        let q = random_field(9, 13, 11);
        let spec = Advection2DSpec::new(1.0, 1.0, 1.3, 0.8, 0.2, 0.45).unwrap();
        let swapped = Advection2DSpec::new(1.0, 1.0, 0.8, 1.3, 0.45, 0.2).unwrap();
        let a = step_2d(&q, &coefficients_2d(&spec)).transpose();
        let b = step_2d(&q.transpose(), &coefficients_2d(&swapped));
        for (x, y) in a.data.iter().zip(&b.data) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn field_shape_is_checked() {
        assert!(Field2D::new(3, 3, vec![0.0; 8]).is_err());
        assert!(Field2D::new(0, 3, vec![]).is_err());
        assert!(Advection2DSpec::new(-1.0, 1.0, 1.0, 1.0, 0.1, 0.1).is_err());
    }
}
