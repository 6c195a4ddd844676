//! The beta-parametrised family of three-point Rusanov-type schemes for
//! `q_t + lambda q_x = 0`, `lambda > 0`.
//!
//! With the wave-speed estimate `s_hat = beta lambda` the conservative
//! update becomes
//!
//! ```text
//! q_i^{n+1} = b_{-1} q_{i-1} + b_0 q_i + b_1 q_{i+1}
//! b_{-1} = c (1 + beta) / 2,  b_0 = 1 - beta c,  b_1 = c (beta - 1) / 2
//! ```
//!
//! Classical schemes are particular `beta(c)` curves, see [`BetaSpec`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::euler::PrimitiveState;
use crate::grid::Grid1D;
use crate::output::sig9;

/// Wave-speed coefficient `beta`, constant or a function of the Courant number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaSpec {
    Constant(f64),
    /// Godunov upwind, `beta = 1`.
    Upwind,
    /// `beta = c`.
    LaxWendroff,
    /// `beta = 1 / c`.
    LaxFriedrichs,
    /// `beta = (1 + c^2) / (2c)`.
    Force,
    /// `beta = 2c`.
    GodunovCentred,
    /// Forward in time, centred in space: `beta = 0`.
    Ftcs,
    /// `beta = (1/(alpha c) + alpha c) / 2`.
    ForceAlpha(f64),
}

impl BetaSpec {
    /// `beta(c)`. Curves with a `1/c` term are infinite at `c = 0`.
    pub fn beta(&self, c: f64) -> f64 {
        match *self {
            BetaSpec::Constant(b) => b,
            BetaSpec::Upwind => 1.0,
            BetaSpec::LaxWendroff => c,
            BetaSpec::LaxFriedrichs => 1.0 / c,
            BetaSpec::Force => (1.0 + c * c) / (2.0 * c),
            BetaSpec::GodunovCentred => 2.0 * c,
            BetaSpec::Ftcs => 0.0,
            BetaSpec::ForceAlpha(alpha) => 0.5 * (1.0 / (alpha * c) + alpha * c),
        }
    }

    /// Viscosity coefficient `d = beta c`; zero at `c = 0` (no transport in
    /// that direction, hence no flux at all).
    pub fn viscosity(&self, c: f64) -> f64 {
        if c == 0.0 {
            return 0.0;
        }
        self.beta(c) * c
    }

    pub fn coefficients(&self, c: f64) -> SchemeCoefficients1D {
        if c == 0.0 {
            return SchemeCoefficients1D::IDENTITY;
        }
        coefficients(self.beta(c), c)
    }

    /// Analytic linear stability limit.
    pub fn stability_limit(&self) -> f64 {
        match *self {
            // stable iff c^2 <= beta c <= 1, i.e. c <= min(beta, 1/beta)
            BetaSpec::Constant(b) if b > 0.0 => b.min(1.0 / b),
            BetaSpec::Constant(_) => 0.0,
            BetaSpec::Upwind | BetaSpec::LaxWendroff | BetaSpec::LaxFriedrichs | BetaSpec::Force => 1.0,
            BetaSpec::GodunovCentred => std::f64::consts::FRAC_1_SQRT_2,
            BetaSpec::Ftcs => 0.0,
            BetaSpec::ForceAlpha(alpha) if alpha > 0.5 => (2.0 * alpha - 1.0).sqrt() / alpha,
            BetaSpec::ForceAlpha(_) => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BetaSpec::Constant(b) if !(b >= 0.0 && b.is_finite()) => Err(Error::InvalidParameter(
                format!("beta must be finite and non-negative, got {b}"),
            )),
            BetaSpec::ForceAlpha(a) if !(a > 0.0 && a.is_finite()) => Err(Error::InvalidParameter(
                format!("alpha must be positive, got {a}"),
            )),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            BetaSpec::Constant(b) => format!("beta={}", sig9(b)),
            BetaSpec::Upwind => "upwind".into(),
            BetaSpec::LaxWendroff => "lax_wendroff".into(),
            BetaSpec::LaxFriedrichs => "lax_friedrichs".into(),
            BetaSpec::Force => "force".into(),
            BetaSpec::GodunovCentred => "godunov_centred".into(),
            BetaSpec::Ftcs => "ftcs".into(),
            BetaSpec::ForceAlpha(a) => format!("force_alpha={}", sig9(a)),
        }
    }
}

impl fmt::Display for BetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Accepts a number (constant `beta`), a scheme name (`upwind`, `lw`,
/// `lf`, `force`, `gc`, `ftcs`) or `force-alpha:<alpha>`.
impl FromStr for BetaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        let spec = match lower.as_str() {
            "upwind" | "gu" => BetaSpec::Upwind,
            "lw" | "lax_wendroff" | "lax-wendroff" => BetaSpec::LaxWendroff,
            "lf" | "lax_friedrichs" | "lax-friedrichs" => BetaSpec::LaxFriedrichs,
            "force" | "fo" => BetaSpec::Force,
            "gc" | "godunov_centred" | "godunov-centred" => BetaSpec::GodunovCentred,
            "ftcs" => BetaSpec::Ftcs,
            _ => {
                let alpha = lower
                    .strip_prefix("force-alpha:")
                    .or_else(|| lower.strip_prefix("force_alpha="))
                    .or_else(|| lower.strip_prefix("fa:"));
                let bad = || Error::InvalidParameter(format!("unrecognised beta spec '{s}'"));
                match alpha {
                    Some(a) => BetaSpec::ForceAlpha(a.parse().map_err(|_| bad())?),
                    None => {
                        let b = lower.strip_prefix("beta=").unwrap_or(&lower);
                        BetaSpec::Constant(b.parse().map_err(|_| bad())?)
                    }
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Constant perturbation of the exact speed, `beta = 1 - eps_B` or `1 + eps_T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PerturbationSpec {
    Under(f64),
    Over(f64),
}

impl PerturbationSpec {
    /// `eps_B` must lie in `[0, 1]`, `eps_T` in `[0, inf)`.
    pub fn new_under(eps: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&eps) {
            Ok(PerturbationSpec::Under(eps))
        } else {
            Err(Error::InvalidParameter(format!("eps_B must lie in [0, 1], got {eps}")))
        }
    }

    pub fn new_over(eps: f64) -> Result<Self> {
        if eps >= 0.0 && eps.is_finite() {
            Ok(PerturbationSpec::Over(eps))
        } else {
            Err(Error::InvalidParameter(format!("eps_T must be non-negative, got {eps}")))
        }
    }

    pub fn beta(&self) -> f64 {
        match *self {
            PerturbationSpec::Under(e) => 1.0 - e,
            PerturbationSpec::Over(e) => 1.0 + e,
        }
    }

    /// `1 - eps_B` or `1 / (1 + eps_T)`.
    pub fn stability_limit(&self) -> f64 {
        match *self {
            PerturbationSpec::Under(e) => 1.0 - e,
            PerturbationSpec::Over(e) => 1.0 / (1.0 + e),
        }
    }
}

impl From<PerturbationSpec> for BetaSpec {
    fn from(p: PerturbationSpec) -> Self {
        BetaSpec::Constant(p.beta())
    }
}

pub fn stability_limit(spec: impl Into<BetaSpec>) -> f64 {
    spec.into().stability_limit()
}

/// Weights of `q_{i-1}, q_i, q_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeCoefficients1D {
    pub b_m1: f64,
    pub b_0: f64,
    pub b_p1: f64,
}

impl SchemeCoefficients1D {
    pub const IDENTITY: Self = Self {
        b_m1: 0.0,
        b_0: 1.0,
        b_p1: 0.0,
    };

    pub fn sum(&self) -> f64 {
        self.b_m1 + self.b_0 + self.b_p1
    }

    pub fn is_nonnegative(&self) -> bool {
        self.b_m1 >= 0.0 && self.b_0 >= 0.0 && self.b_p1 >= 0.0
    }
}

pub fn coefficients(beta: f64, c: f64) -> SchemeCoefficients1D {
    SchemeCoefficients1D {
        b_m1: 0.5 * c * (1.0 + beta),
        b_0: 1.0 - beta * c,
        b_p1: 0.5 * c * (beta - 1.0),
    }
}

/// Viscosity coefficient `d = beta c` of the form
/// `q_i - c/2 (q_{i+1} - q_{i-1}) + d/2 (q_{i+1} - 2 q_i + q_{i-1})`.
pub fn viscous_form(beta: f64, c: f64) -> f64 {
    beta * c
}

/// Leading-order numerical viscosity `dx lambda (beta - c) / 2`.
pub fn numerical_viscosity(beta: f64, c: f64, dx: f64, lambda: f64) -> f64 {
    0.5 * dx * lambda * (beta - c)
}

/// `1 <= beta <= 1/c`, i.e. all three weights non-negative.
pub fn is_monotone(beta: f64, c: f64) -> bool {
    beta >= 1.0 && beta * c <= 1.0
}

/// One update with periodic indexing, writing into `out`.
pub fn step_into(q: &[f64], coeffs: &SchemeCoefficients1D, out: &mut [f64]) {
    let n = q.len();
    assert_eq!(n, out.len());
    if n == 0 {
        return;
    }
    let SchemeCoefficients1D { b_m1, b_0, b_p1 } = *coeffs;
    for i in 0..n {
        let left = q[if i == 0 { n - 1 } else { i - 1 }];
        let right = q[if i + 1 == n { 0 } else { i + 1 }];
        out[i] = b_m1 * left + b_0 * q[i] + b_p1 * right;
    }
}

pub fn step(q: &[f64], coeffs: &SchemeCoefficients1D) -> Vec<f64> {
    let mut out = vec![0.0; q.len()];
    step_into(q, coeffs, &mut out);
    out
}

/// Time step sizes reaching `t_out` exactly: full steps of `dt`, the last
/// one shrunk (or snapped to `dt` when within roundoff of it).
pub fn time_steps(dt: f64, t_out: f64) -> Vec<f64> {
    if t_out <= 0.0 {
        return Vec::new();
    }
    let n = ((t_out / dt) - 1e-9).ceil().max(1.0) as usize;
    let mut steps = vec![dt; n];
    let last = t_out - (n - 1) as f64 * dt;
    if (last - dt).abs() > 1e-12 * dt {
        steps[n - 1] = last;
    }
    steps
}

/// Marches `q` to `t_out` at Courant number `c` (speed `lambda`, mesh
/// `dx`); returns the number of steps taken.
pub fn advect(q: &mut Vec<f64>, beta: &BetaSpec, c: f64, lambda: f64, dx: f64, t_out: f64) -> usize {
    let dt = c * dx / lambda;
    let steps = time_steps(dt, t_out);
    let mut scratch = vec![0.0; q.len()];
    let full = beta.coefficients(c);
    for &h in &steps {
        let coeffs = if h == dt { full } else { beta.coefficients(lambda * h / dx) };
        step_into(q, &coeffs, &mut scratch);
        std::mem::swap(q, &mut scratch);
    }
    steps.len()
}

/// Unit square pulse on `[1/4, 3/4]`, zero elsewhere.
pub fn square_wave(x: f64) -> f64 {
    if (0.25..=0.75).contains(&x) {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdvectionResult {
    pub beta: BetaSpec,
    pub c: f64,
    pub t_out: f64,
    pub x: Vec<f64>,
    pub numerical: Vec<f64>,
    pub exact: Vec<f64>,
    pub linf: f64,
    /// `sum |error| dx`.
    pub l1: f64,
    pub qmax: f64,
    pub qmin: f64,
    pub steps: usize,
}

impl AdvectionResult {
    pub fn max_abs(&self) -> f64 {
        self.qmax.abs().max(self.qmin.abs())
    }

    pub fn profile_csv(&self) -> String {
        let mut out = String::from("x,q_numerical,q_exact\n");
        for ((x, q), e) in self.x.iter().zip(&self.numerical).zip(&self.exact) {
            out.push_str(&format!("{},{},{}\n", sig9(*x), sig9(*q), sig9(*e)));
        }
        out
    }

    pub fn norms_csv(&self) -> String {
        format!(
            "beta,c,T,Linf,L1,qmax,qmin\n{},{},{},{},{},{},{}\n",
            sig9(self.beta.beta(self.c)),
            sig9(self.c),
            sig9(self.t_out),
            sig9(self.linf),
            sig9(self.l1),
            sig9(self.qmax),
            sig9(self.qmin)
        )
    }
}

/// Square pulse advected with unit speed on the periodic unit interval.
pub fn advect_square_wave(n_cells: usize, beta: BetaSpec, c: f64, t_out: f64) -> Result<AdvectionResult> {
    beta.validate()?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("Courant number must be positive, got {c}")));
    }
    if !(t_out >= 0.0 && t_out.is_finite()) {
        return Err(Error::InvalidParameter(format!("output time must be non-negative, got {t_out}")));
    }
    let lambda = 1.0;
    let grid = Grid1D::new(n_cells, 0.0, 1.0)?;
    let x = grid.centers();
    let mut q: Vec<f64> = x.iter().map(|&x| square_wave(x)).collect();
    let steps = advect(&mut q, &beta, c, lambda, grid.dx, t_out);

    let shift = lambda * t_out;
    let exact: Vec<f64> = x
        .iter()
        .map(|&x| square_wave(grid.x_min + (x - shift - grid.x_min).rem_euclid(grid.length())))
        .collect();
    let errors = q.iter().zip(&exact).map(|(a, b)| (a - b).abs());
    let linf = errors.clone().fold(0.0, f64::max);
    let l1 = errors.sum::<f64>() * grid.dx;
    let qmax = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let qmin = q.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(AdvectionResult {
        beta,
        c,
        t_out,
        x,
        numerical: q,
        exact,
        linf,
        l1,
        qmax,
        qmin,
        steps,
    })
}

/// Runs above this peak magnitude are reported as unstable.
pub const INSTABILITY_THRESHOLD: f64 = 1.05;

/// `max_i (|u_i| + c_i)` over Euler data; underestimates the true maximal
/// speed whenever a shock forms from quiescent data.
pub fn max_signal_speed(states: &[PrimitiveState], gamma: f64) -> Result<f64> {
    if states.is_empty() {
        return Err(Error::InvalidParameter("no states given".into()));
    }
    let mut s_max: f64 = 0.0;
    for s in states {
        s.validate()?;
        s_max = s_max.max(s.u.abs() + s.sound_speed(gamma));
    }
    Ok(s_max)
}

/// `dt = C_cfl c_lim dx / S_max`.
pub fn compute_time_step(s_max: f64, dx: f64, cfl_coefficient: f64, c_lim: f64) -> Result<f64> {
    if !(dx > 0.0) {
        return Err(Error::InvalidParameter(format!("dx must be positive, got {dx}")));
    }
    if !(cfl_coefficient > 0.0 && cfl_coefficient <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "CFL coefficient must lie in (0, 1], got {cfl_coefficient}"
        )));
    }
    if s_max.abs() == 0.0 {
        return Err(Error::ZeroMaxSpeed);
    }
    Ok(cfl_coefficient * c_lim * dx / s_max.abs())
}

pub fn euler_time_step(states: &[PrimitiveState], gamma: f64, dx: f64, cfl_coefficient: f64, c_lim: f64) -> Result<f64> {
    compute_time_step(max_signal_speed(states, gamma)?, dx, cfl_coefficient, c_lim)
}
