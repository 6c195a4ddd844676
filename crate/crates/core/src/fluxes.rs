//! Numerical fluxes: HLL, Rusanov, and the scalar fluxes for linear
//! advection `f(q) = lambda q`.
//!
//! The vector fluxes are generic over the number of equations, so the
//! Euler system uses `[f64; 3]` and scalar laws use `[f64; 1]`.

use crate::error::{Error, Result};

/// HLL flux from data states, their physical fluxes and the speed pair.
pub fn hll_flux<const N: usize>(
    q_l: &[f64; N],
    q_r: &[f64; N],
    f_l: &[f64; N],
    f_r: &[f64; N],
    s_l: f64,
    s_r: f64,
) -> Result<[f64; N]> {
    if s_l >= 0.0 {
        return Ok(*f_l);
    }
    if s_r <= 0.0 {
        return Ok(*f_r);
    }
    // here s_l < 0 < s_r, so s_r - s_l > 0 unless one is NaN
    let width = s_r - s_l;
    if !(width > 0.0) {
        return Err(Error::DegenerateSpeeds(s_l));
    }
    let mut out = [0.0; N];
    for k in 0..N {
        out[k] = (s_r * f_l[k] - s_l * f_r[k] + s_l * s_r * (q_r[k] - q_l[k])) / width;
    }
    Ok(out)
}

/// Rusanov flux `(F_L + F_R)/2 - s_hat (q_R - q_L)/2`.
pub fn rusanov_flux<const N: usize>(
    q_l: &[f64; N],
    q_r: &[f64; N],
    f_l: &[f64; N],
    f_r: &[f64; N],
    s_hat: f64,
) -> [f64; N] {
    let mut out = [0.0; N];
    for k in 0..N {
        out[k] = 0.5 * (f_l[k] + f_r[k]) - 0.5 * s_hat * (q_r[k] - q_l[k]);
    }
    out
}

/// Inputs of the scalar Rusanov flux for `f(q) = lambda q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarFluxInput {
    pub q_left: f64,
    pub q_right: f64,
    pub lambda: f64,
    pub s_hat: f64,
}

impl ScalarFluxInput {
    /// Uses the wave-speed estimate `s_hat = beta lambda`.
    pub fn with_beta(q_left: f64, q_right: f64, lambda: f64, beta: f64) -> Self {
        Self {
            q_left,
            q_right,
            lambda,
            s_hat: beta * lambda,
        }
    }

    /// Rusanov flux evaluated from `s_hat` directly.
    pub fn rusanov(&self) -> f64 {
        0.5 * self.lambda * (self.q_left + self.q_right) - 0.5 * self.s_hat * (self.q_right - self.q_left)
    }
}

/// Scalar Rusanov flux in weight form, `(1+beta)/2 f(q_L) + (1-beta)/2 f(q_R)`.
///
/// The upwind value carries the `(1 + beta)` weight for `lambda > 0`, which
/// is what reproduces the three-point coefficients `(c(1+beta)/2, 1 - beta c,
/// c(beta-1)/2)`.
pub fn scalar_rusanov_flux(q_left: f64, q_right: f64, lambda: f64, beta: f64) -> f64 {
    0.5 * (1.0 + beta) * lambda * q_left + 0.5 * (1.0 - beta) * lambda * q_right
}

/// Godunov upwind flux for `lambda >= 0`.
pub fn upwind_flux(q_left: f64, _q_right: f64, lambda: f64) -> f64 {
    lambda * q_left
}

/// `r = (1 + alpha^2 c^2) / (2 alpha c)`, which is also the equivalent
/// Rusanov `beta`.
pub fn force_alpha_weight(c: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("Courant number must be positive, got {c}")));
    }
    Ok((1.0 + alpha * alpha * c * c) / (2.0 * alpha * c))
}

/// FORCE-alpha flux for linear advection.
pub fn force_alpha_flux(q_left: f64, q_right: f64, lambda: f64, c: f64, alpha: f64) -> Result<f64> {
    let r = force_alpha_weight(c, alpha)?;
    Ok(0.5 * (1.0 + r) * lambda * q_left + 0.5 * (1.0 - r) * lambda * q_right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{physical_flux, primitive_to_conserved, PrimitiveState};
    use rand::{Rng, SeedableRng};

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn hll_branches() {
        let q_l = [1.0, 2.0];
        let q_r = [3.0, 4.0];
        let f_l = [5.0, 6.0];
        let f_r = [7.0, 8.0];
        assert_eq!(hll_flux(&q_l, &q_r, &f_l, &f_r, 0.1, 2.0).unwrap(), f_l);
        assert_eq!(hll_flux(&q_l, &q_r, &f_l, &f_r, -2.0, -0.1).unwrap(), f_r);
        let f = hll_flux(&q_l, &q_l, &f_l, &f_l, -1.0, 1.0).unwrap();
        assert_eq!(f, f_l);
    }

    #[test]
    fn hll_scalar_middle_branch() {
        // (1*1 - (-1)*0 + (-1)(1)(0 - 1)) / 2 = 1
        let f = hll_flux(&[1.0], &[0.0], &[1.0], &[0.0], -1.0, 1.0).unwrap();
        assert_eq!(f, [1.0]);
    }

    #[test]
    fn hll_rejects_nan_speeds() {
        let r = hll_flux(&[1.0], &[0.0], &[1.0], &[0.0], -1.0, f64::NAN);
        assert!(matches!(r, Err(Error::DegenerateSpeeds(_))));
    }

    #[test]
    fn rusanov_scalar_upwind_case() {
        assert_eq!(rusanov_flux(&[1.0], &[0.0], &[1.0], &[0.0], 1.0), [1.0]);
        let f = [2.0, 3.0, 4.0];
        assert_eq!(rusanov_flux(&[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0], &f, &f, 7.0), f);
    }

    #[test]
    fn rusanov_is_hll_with_symmetric_speeds() {
        let mut rng = seeded();
        for _ in 0..1000 {
            let q_l: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
            let q_r: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
            let f_l: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
            let f_r: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
            let s = rng.gen_range(1e-3..50.0);
            let a = rusanov_flux(&q_l, &q_r, &f_l, &f_r, s);
            let b = hll_flux(&q_l, &q_r, &f_l, &f_r, -s, s).unwrap();
            for k in 0..3 {
                assert!(rel_close(a[k], b[k], 1e-12), "{a:?} vs {b:?}");
            }
        }
    }

    fn seeded() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }

    #[test]
    fn euler_consistency() {
        let mut rng = seeded();
        for _ in 0..200 {
            let s = PrimitiveState::new(
                rng.gen_range(0.01..10.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(0.01..10.0),
            )
            .unwrap();
            let q = primitive_to_conserved(&s, 1.4).unwrap().as_array();
            let f = physical_flux(&s, 1.4).unwrap();
            assert_eq!(rusanov_flux(&q, &q, &f, &f, 3.0), f);
            let h = hll_flux(&q, &q, &f, &f, -2.0, 3.0).unwrap();
            for k in 0..3 {
                assert!(rel_close(h[k], f[k], 1e-14));
            }
        }
    }

    #[test]
    fn scalar_rusanov_limits() {
        let (ql, qr, lam) = (0.7, -1.3, 2.0);
        assert_eq!(scalar_rusanov_flux(ql, qr, lam, 1.0), lam * ql);
        assert_eq!(scalar_rusanov_flux(ql, qr, lam, 0.0), 0.5 * lam * (ql + qr));
        for beta in [0.0, 0.3, 1.0, 2.5] {
            assert!(rel_close(scalar_rusanov_flux(ql, ql, lam, beta), lam * ql, 1e-15));
            let input = ScalarFluxInput::with_beta(ql, qr, lam, beta);
            assert!(rel_close(input.rusanov(), scalar_rusanov_flux(ql, qr, lam, beta), 1e-14));
        }
        assert_eq!(upwind_flux(ql, qr, lam), scalar_rusanov_flux(ql, qr, lam, 1.0));
    }

    #[test]
    fn force_alpha() {
        let (ql, qr, lam) = (1.1, 0.2, 1.0);
        for c in [0.1, 0.5, 0.9] {
            let beta_fo = (1.0 + c * c) / (2.0 * c);
            let a = force_alpha_flux(ql, qr, lam, c, 1.0).unwrap();
            assert!(rel_close(a, scalar_rusanov_flux(ql, qr, lam, beta_fo), 1e-14));
            assert!(rel_close(force_alpha_flux(ql, ql, lam, c, 2.0).unwrap(), lam * ql, 1e-14));
        }
        // 0.5 * (1/(alpha c) + alpha c) = 0.5 * (1 + 1)
        assert_eq!(force_alpha_weight(0.5, 2.0).unwrap(), 1.0);
        assert!(force_alpha_flux(ql, qr, lam, 0.5, 0.0).is_err());
        assert!(force_alpha_flux(ql, qr, lam, 0.0, 1.0).is_err());
    }
}
