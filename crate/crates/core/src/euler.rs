//! Ideal-gas Euler state algebra and the exact Riemann star-state solver.
//!
//! The solver finds the star pressure `p*` as the root of
//!
//! ```text
//! f(p) = f_L(p) + f_R(p) + (u_R - u_L)
//! ```
//!
//! where `f_K` is the shock (Rankine-Hugoniot) branch for `p > p_K` and the
//! isentropic rarefaction branch otherwise. Only the star values and the
//! outermost signal speeds are computed; the similarity solution is not
//! sampled.

use crate::error::{Error, Result};

/// Euler flux or state triple `(rho, rho u, E)`.
pub type Triple = [f64; 3];

const MAX_ITERATIONS: usize = 60;
const PRESSURE_TOLERANCE: f64 = 1e-10;
const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Gas state in primitive variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

/// Gas state in conserved variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedState {
    pub rho: f64,
    pub mom: f64,
    pub energy: f64,
}

impl PrimitiveState {
    pub fn new(rho: f64, u: f64, p: f64) -> Result<Self> {
        let s = Self { rho, u, p };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(Error::Inadmissible(format!("density must be positive, got {}", self.rho)));
        }
        if !(self.p > 0.0 && self.p.is_finite()) {
            return Err(Error::Inadmissible(format!("pressure must be positive, got {}", self.p)));
        }
        if !self.u.is_finite() {
            return Err(Error::Inadmissible(format!("velocity must be finite, got {}", self.u)));
        }
        Ok(())
    }

    /// `sqrt(gamma p / rho)`, unchecked.
    #[inline]
    pub fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }

    #[inline]
    pub fn total_energy(&self, gamma: f64) -> f64 {
        self.p / (gamma - 1.0) + 0.5 * self.rho * self.u * self.u
    }

    /// Specific total enthalpy `H = (E + p) / rho`.
    #[inline]
    pub fn total_enthalpy(&self, gamma: f64) -> f64 {
        (self.total_energy(gamma) + self.p) / self.rho
    }

    /// Same state seen in a mirrored frame (`x -> -x`).
    pub fn mirrored(&self) -> Self {
        Self { u: -self.u, ..*self }
    }
}

impl ConservedState {
    pub fn as_array(&self) -> Triple {
        [self.rho, self.mom, self.energy]
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 1.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("ratio of specific heats must exceed 1, got {gamma}")))
    }
}

pub fn sound_speed(s: &PrimitiveState, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    s.validate()?;
    Ok(s.sound_speed(gamma))
}

pub fn primitive_to_conserved(s: &PrimitiveState, gamma: f64) -> Result<ConservedState> {
    check_gamma(gamma)?;
    s.validate()?;
    Ok(ConservedState {
        rho: s.rho,
        mom: s.rho * s.u,
        energy: s.total_energy(gamma),
    })
}

pub fn conserved_to_primitive(q: &ConservedState, gamma: f64) -> Result<PrimitiveState> {
    check_gamma(gamma)?;
    if !(q.rho > 0.0 && q.rho.is_finite()) {
        return Err(Error::Inadmissible(format!("density must be positive, got {}", q.rho)));
    }
    let u = q.mom / q.rho;
    let internal = q.energy - 0.5 * q.mom * u;
    if !(internal > 0.0 && internal.is_finite()) {
        return Err(Error::Inadmissible(format!(
            "internal energy must be positive, got {internal}"
        )));
    }
    Ok(PrimitiveState {
        rho: q.rho,
        u,
        p: (gamma - 1.0) * internal,
    })
}

/// Euler flux `(rho u, rho u^2 + p, u (E + p))`.
pub fn physical_flux(s: &PrimitiveState, gamma: f64) -> Result<Triple> {
    check_gamma(gamma)?;
    s.validate()?;
    Ok(flux_unchecked(s, gamma))
}

#[inline]
pub(crate) fn flux_unchecked(s: &PrimitiveState, gamma: f64) -> Triple {
    let mom = s.rho * s.u;
    [mom, mom * s.u + s.p, s.u * (s.total_energy(gamma) + s.p)]
}

/// Two constant states separated by a discontinuity at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannProblem {
    pub left: PrimitiveState,
    pub right: PrimitiveState,
    pub gamma: f64,
}

impl RiemannProblem {
    /// Validates both states and `gamma`. The no-vacuum condition is checked
    /// by [`solve_star`], not here.
    pub fn new(left: PrimitiveState, right: PrimitiveState, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        left.validate()?;
        right.validate()?;
        Ok(Self { left, right, gamma })
    }

    pub fn from_values(values: [f64; 6], gamma: f64) -> Result<Self> {
        let [rl, ul, pl, rr, ur, pr] = values;
        Self::new(PrimitiveState::new(rl, ul, pl)?, PrimitiveState::new(rr, ur, pr)?, gamma)
    }

    /// Sound speeds `(c_L, c_R)`.
    #[inline]
    pub fn sound_speeds(&self) -> (f64, f64) {
        (self.left.sound_speed(self.gamma), self.right.sound_speed(self.gamma))
    }

    /// `2/(gamma-1) (c_L + c_R) > u_R - u_L`.
    pub fn satisfies_pressure_positivity(&self) -> bool {
        let (lhs, du) = self.positivity_terms();
        lhs > du
    }

    fn positivity_terms(&self) -> (f64, f64) {
        let (cl, cr) = self.sound_speeds();
        (2.0 / (self.gamma - 1.0) * (cl + cr), self.right.u - self.left.u)
    }

    /// Swaps the sides and negates the velocities.
    pub fn mirrored(&self) -> Self {
        Self {
            left: self.right.mirrored(),
            right: self.left.mirrored(),
            gamma: self.gamma,
        }
    }
}

/// Pressure and velocity between the two outer waves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarRegion {
    pub p_star: f64,
    pub u_star: f64,
}

/// `f_K(p)` and its derivative for one side of the problem.
fn side_function(p: f64, s: &PrimitiveState, gamma: f64) -> (f64, f64) {
    let c = s.sound_speed(gamma);
    if p > s.p {
        let a = 2.0 / ((gamma + 1.0) * s.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * s.p;
        let root = (a / (p + b)).sqrt();
        let f = (p - s.p) * root;
        let df = root * (1.0 - 0.5 * (p - s.p) / (b + p));
        (f, df)
    } else {
        let ratio = p / s.p;
        let f = 2.0 * c / (gamma - 1.0) * (ratio.powf((gamma - 1.0) / (2.0 * gamma)) - 1.0);
        let df = ratio.powf(-(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c);
        (f, df)
    }
}

/// `f_L(p) + f_R(p) + (u_R - u_L)`; its root is the star pressure.
pub fn pressure_function(rp: &RiemannProblem, p: f64) -> f64 {
    pressure_function_and_slope(rp, p).0
}

fn pressure_function_and_slope(rp: &RiemannProblem, p: f64) -> (f64, f64) {
    let (fl, dfl) = side_function(p, &rp.left, rp.gamma);
    let (fr, dfr) = side_function(p, &rp.right, rp.gamma);
    (fl + fr + rp.right.u - rp.left.u, dfl + dfr)
}

/// Two-rarefaction star pressure, an upper bound for `p*`.
pub(crate) fn two_rarefaction_unchecked(rp: &RiemannProblem) -> Result<f64> {
    let g = rp.gamma;
    let (cl, cr) = rp.sound_speeds();
    let z = (g - 1.0) / (2.0 * g);
    let num = cl + cr - 0.5 * (g - 1.0) * (rp.right.u - rp.left.u);
    if num <= 0.0 {
        let (lhs, du) = rp.positivity_terms();
        return Err(Error::VacuumGenerated { lhs, du });
    }
    let den = cl / rp.left.p.powf(z) + cr / rp.right.p.powf(z);
    Ok((num / den).powf(1.0 / z))
}

/// Exact star pressure and velocity by safeguarded Newton iteration.
///
/// The iteration starts from the two-rarefaction pressure and keeps a
/// bracket `[lo, hi]` around the root; a Newton step leaving the bracket is
/// replaced by bisection. Convergence is declared when the relative
/// pressure change drops below `1e-10` and the residual is at most
/// `1e-10 max(1, p)`.
pub fn solve_star(rp: &RiemannProblem) -> Result<StarRegion> {
    check_gamma(rp.gamma)?;
    rp.left.validate()?;
    rp.right.validate()?;
    let (lhs, du) = rp.positivity_terms();
    if lhs <= du {
        return Err(Error::VacuumGenerated { lhs, du });
    }

    let floor = 1e-8 * rp.left.p.min(rp.right.p);
    let mut p = two_rarefaction_unchecked(rp)?.max(floor);

    let mut lo = 0.0_f64;
    let mut hi = p;
    while pressure_function(rp, hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoConvergence { iterations: 0 });
        }
    }

    for _ in 0..MAX_ITERATIONS {
        let (f, df) = pressure_function_and_slope(rp, p);
        if f == 0.0 {
            return Ok(star_from_pressure(rp, p));
        }
        if f < 0.0 {
            lo = lo.max(p);
        } else {
            hi = hi.min(p);
        }
        let mut next = p - f / df;
        if !(next >= lo && next <= hi && next > 0.0) {
            next = 0.5 * (lo + hi);
        }
        let change = 2.0 * (next - p).abs() / (next + p);
        p = next;
        if change < PRESSURE_TOLERANCE && pressure_function(rp, p).abs() <= RESIDUAL_TOLERANCE * p.max(1.0) {
            return Ok(star_from_pressure(rp, p));
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS })
}

fn star_from_pressure(rp: &RiemannProblem, p: f64) -> StarRegion {
    let (fl, _) = side_function(p, &rp.left, rp.gamma);
    let (fr, _) = side_function(p, &rp.right, rp.gamma);
    StarRegion {
        p_star: p,
        u_star: 0.5 * (rp.left.u + rp.right.u) + 0.5 * (fr - fl),
    }
}

/// Shock/rarefaction speed factor `q_K(p)`: 1 for a rarefaction, the
/// normalised shock Mach number for a shock.
#[inline]
pub(crate) fn wave_factor(p: f64, p_side: f64, gamma: f64) -> f64 {
    if p > p_side {
        (1.0 + (gamma + 1.0) / (2.0 * gamma) * (p / p_side - 1.0)).sqrt()
    } else {
        1.0
    }
}

/// Outermost signal speeds `(S_L, S_R)` of the exact solution: shock speeds
/// or rarefaction heads.
pub fn exact_wave_speeds(rp: &RiemannProblem) -> Result<(f64, f64)> {
    let star = solve_star(rp)?;
    Ok(wave_speeds_from_star(rp, &star))
}

pub fn wave_speeds_from_star(rp: &RiemannProblem, star: &StarRegion) -> (f64, f64) {
    let (cl, cr) = rp.sound_speeds();
    let g = rp.gamma;
    let sl = rp.left.u - cl * wave_factor(star.p_star, rp.left.p, g);
    let sr = rp.right.u + cr * wave_factor(star.p_star, rp.right.p, g);
    (sl, sr)
}

/// The seven shock-tube problems (gamma = 1.4) used for the wave-speed
/// comparison table, as `(label, problem)`.
pub fn reference_problems() -> Vec<(String, RiemannProblem)> {
    const DATA: [[f64; 6]; 7] = [
        [1.0, 0.0, 1.0, 1.0, 0.0, 0.1],
        [1.0, 0.0, 1.0, 0.125, 0.0, 0.1],
        [1.0, 0.0, 1.0, 0.001, 0.0, 0.8],
        [1.0, 0.0, 0.01, 1.0, 0.0, 1000.0],
        [6.0, 8.0, 460.0, 6.0, -6.0, 46.0],
        [600.0, 80.0, 4600.0, 6.0, -6.0, 46.0],
        [1.0, -2.0, 0.4, 1.0, 2.0, 0.4],
    ];
    DATA.iter()
        .enumerate()
        .map(|(i, v)| {
            let rp = RiemannProblem::from_values(*v, 1.4).expect("reference data is admissible");
            ((i + 1).to_string(), rp)
        })
        .collect()
}
