//! Shared mesh and run-configuration types.

use crate::error::{Error, Result};

/// Boundary treatment of a 1D mesh. Only periodic wrap-around is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Periodic,
}

/// Uniform cell-centred mesh on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub n_cells: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
    pub boundary: Boundary,
}

impl Grid1D {
    pub fn new(n_cells: usize, x_min: f64, x_max: f64) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::InvalidGrid("n_cells must be at least 1".into()));
        }
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "require x_max > x_min, got [{x_min}, {x_max}]"
            )));
        }
        Ok(Self {
            n_cells,
            x_min,
            x_max,
            dx: (x_max - x_min) / n_cells as f64,
            boundary: Boundary::Periodic,
        })
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Centre of cell `i`, `x_min + (i + 1/2) dx`.
    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }

    /// Periodic neighbour index `i + offset`.
    #[inline]
    pub fn wrap(&self, i: usize, offset: isize) -> usize {
        let n = self.n_cells as isize;
        (i as isize + offset).rem_euclid(n) as usize
    }
}

/// Builds a periodic grid, see [`Grid1D::new`].
pub fn build_grid(n_cells: usize, x_min: f64, x_max: f64) -> Result<Grid1D> {
    Grid1D::new(n_cells, x_min, x_max)
}

/// Courant numbers `c_x = lambda_x dt / dx`, `c_y = lambda_y dt / dy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CourantPair {
    pub cx: f64,
    pub cy: f64,
}

impl CourantPair {
    pub fn new(cx: f64, cy: f64) -> Result<Self> {
        if !(cx >= 0.0 && cy >= 0.0) || !cx.is_finite() || !cy.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Courant numbers must be finite and non-negative, got ({cx}, {cy})"
            )));
        }
        Ok(Self { cx, cy })
    }
}

/// Time-marching settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// CFL safety coefficient in `(0, 1]`.
    pub cfl_coefficient: f64,
    pub output_time: f64,
    pub courant_number: f64,
}

impl RunConfig {
    pub fn new(cfl_coefficient: f64, output_time: f64, courant_number: f64) -> Result<Self> {
        if !(cfl_coefficient > 0.0 && cfl_coefficient <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "CFL coefficient must lie in (0, 1], got {cfl_coefficient}"
            )));
        }
        if !(output_time >= 0.0 && output_time.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "output time must be finite and non-negative, got {output_time}"
            )));
        }
        if !(courant_number > 0.0 && courant_number.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Courant number must be positive, got {courant_number}"
            )));
        }
        Ok(Self {
            cfl_coefficient,
            output_time,
            courant_number,
        })
    }
}
