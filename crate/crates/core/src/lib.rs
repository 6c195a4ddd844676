//! Wave-speed bounds for Riemann solvers, Rusanov-type three- and
//! five-point schemes for linear advection, and von Neumann stability
//! sweeps.
//!
//! The Euler side provides an exact star-state solver, the five classical
//! wave-speed estimators and the HLL/Rusanov fluxes. The linear side treats
//! every three-point scheme as a Rusanov scheme with speed `beta * lambda`
//! and analyses it through its coefficients and amplification factor.

// NaN-rejecting guards are written as `!(x > 0.0)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod estimators;
pub mod euler;
pub mod fluxes;
pub mod grid;
pub mod output;
pub mod schemes1d;
pub mod schemes2d;
pub mod vonneumann;

pub use error::{Error, Result};
pub use estimators::{estimator_table, EstimatorId, EstimatorTable, WaveSpeedPair};
pub use euler::{
    conserved_to_primitive, physical_flux, primitive_to_conserved, reference_problems, solve_star,
    ConservedState, PrimitiveState, RiemannProblem, StarRegion,
};
pub use fluxes::{hll_flux, rusanov_flux, scalar_rusanov_flux};
pub use grid::{build_grid, Boundary, CourantPair, Grid1D, RunConfig};
pub use schemes1d::{
    advect_square_wave, coefficients, stability_limit, AdvectionResult, BetaSpec, PerturbationSpec,
    SchemeCoefficients1D,
};
pub use schemes2d::{coefficients_2d, Advection2DSpec, Field2D, SchemeCoefficients2D};
pub use vonneumann::{
    amplification_1d, amplification_2d, region_area, stability_limit_1d_numeric, stability_map_2d,
    StabilityMap,
};
