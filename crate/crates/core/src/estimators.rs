//! Wave-speed estimates `(S_L, S_R)` for the ideal-gas Riemann problem.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::euler::{self, RiemannProblem};

/// Minimal and maximal signal-speed estimates. Nothing forces
/// `s_left <= s_right`; Davis' first estimate can invert them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeedPair {
    pub s_left: f64,
    pub s_right: f64,
}

impl WaveSpeedPair {
    pub fn new(s_left: f64, s_right: f64) -> Self {
        Self { s_left, s_right }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorId {
    DavisA,
    DavisB,
    Einfeldt,
    Batten,
    Toro,
}

impl EstimatorId {
    /// Column order of the comparison table.
    pub const TABLE_ORDER: [EstimatorId; 5] = [
        EstimatorId::DavisA,
        EstimatorId::DavisB,
        EstimatorId::Toro,
        EstimatorId::Batten,
        EstimatorId::Einfeldt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorId::DavisA => "davis_a",
            EstimatorId::DavisB => "davis_b",
            EstimatorId::Einfeldt => "einfeldt",
            EstimatorId::Batten => "batten",
            EstimatorId::Toro => "toro",
        }
    }

    pub fn estimate(self, rp: &RiemannProblem) -> Result<WaveSpeedPair> {
        match self {
            EstimatorId::DavisA => Ok(davis_a(rp)),
            EstimatorId::DavisB => Ok(davis_b(rp)),
            EstimatorId::Einfeldt => Ok(einfeldt(rp)),
            EstimatorId::Batten => batten(rp),
            EstimatorId::Toro => toro(rp),
        }
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "davis_a" => Ok(EstimatorId::DavisA),
            "davis_b" => Ok(EstimatorId::DavisB),
            "einfeldt" => Ok(EstimatorId::Einfeldt),
            "batten" => Ok(EstimatorId::Batten),
            "toro" => Ok(EstimatorId::Toro),
            other => Err(Error::InvalidParameter(format!("unknown estimator '{other}'"))),
        }
    }
}

/// `(u_L - c_L, u_R + c_R)`.
pub fn davis_a(rp: &RiemannProblem) -> WaveSpeedPair {
    let (cl, cr) = rp.sound_speeds();
    WaveSpeedPair::new(rp.left.u - cl, rp.right.u + cr)
}

/// Extreme one-sided eigenvalues over both data states.
pub fn davis_b(rp: &RiemannProblem) -> WaveSpeedPair {
    let (cl, cr) = rp.sound_speeds();
    WaveSpeedPair::new(
        (rp.left.u - cl).min(rp.right.u - cr),
        (rp.left.u + cl).max(rp.right.u + cr),
    )
}

/// Square-root-of-density weights `(w_L, w_R)`, summing to one.
fn roe_weights(rp: &RiemannProblem) -> (f64, f64) {
    let sl = rp.left.rho.sqrt();
    let sr = rp.right.rho.sqrt();
    (sl / (sl + sr), sr / (sl + sr))
}

fn roe_velocity(rp: &RiemannProblem) -> f64 {
    let (wl, wr) = roe_weights(rp);
    wl * rp.left.u + wr * rp.right.u
}

/// `(u~ - d~, u~ + d~)` with Einfeldt's averaged speed `d~`.
pub fn einfeldt(rp: &RiemannProblem) -> WaveSpeedPair {
    let (cl, cr) = rp.sound_speeds();
    let (wl, wr) = roe_weights(rp);
    let u = roe_velocity(rp);
    let du = rp.right.u - rp.left.u;
    // w_L w_R equals sqrt(rho_L rho_R) / (sqrt(rho_L) + sqrt(rho_R))^2
    let d2 = wl * cl * cl + wr * cr * cr + 0.5 * wl * wr * du * du;
    debug_assert!(d2 >= 0.0);
    let d = d2.sqrt();
    WaveSpeedPair::new(u - d, u + d)
}

/// Roe-averaged sound speed `c~ = sqrt((gamma-1)(H~ - u~^2/2))`.
pub fn roe_sound_speed(rp: &RiemannProblem) -> Result<f64> {
    let (wl, wr) = roe_weights(rp);
    let u = roe_velocity(rp);
    let h = wl * rp.left.total_enthalpy(rp.gamma) + wr * rp.right.total_enthalpy(rp.gamma);
    let kinetic_gap = h - 0.5 * u * u;
    if kinetic_gap <= 0.0 {
        return Err(Error::ImaginarySoundSpeed(kinetic_gap));
    }
    Ok(((rp.gamma - 1.0) * kinetic_gap).sqrt())
}

pub fn batten(rp: &RiemannProblem) -> Result<WaveSpeedPair> {
    let (cl, cr) = rp.sound_speeds();
    let u = roe_velocity(rp);
    let c = roe_sound_speed(rp)?;
    Ok(WaveSpeedPair::new(
        (rp.left.u - cl).min(u - c),
        (rp.right.u + cr).max(u + c),
    ))
}

/// Two-rarefaction approximation to the star pressure; never below `p*`.
pub fn two_rarefaction_pressure(rp: &RiemannProblem) -> Result<f64> {
    euler::two_rarefaction_unchecked(rp)
}

/// Bounding estimate `(u_L - c_L q_L, u_R + c_R q_R)` driven by the
/// two-rarefaction pressure.
pub fn toro(rp: &RiemannProblem) -> Result<WaveSpeedPair> {
    let p = two_rarefaction_pressure(rp)?;
    let (cl, cr) = rp.sound_speeds();
    let ql = euler::wave_factor(p, rp.left.p, rp.gamma);
    let qr = euler::wave_factor(p, rp.right.p, rp.gamma);
    Ok(WaveSpeedPair::new(rp.left.u - cl * ql, rp.right.u + cr * qr))
}

/// Single Rusanov speed `max(|S_L|, |S_R|)`.
pub fn rusanov_speed(pair: &WaveSpeedPair) -> f64 {
    pair.s_left.abs().max(pair.s_right.abs())
}

/// Estimates within this distance below the exact speed still count as bounds.
pub const BOUND_TOLERANCE: f64 = 5e-4;

/// One problem's row of the maximal-wave-speed comparison.
#[derive(Debug, Clone)]
pub struct EstimatorRow {
    pub label: String,
    pub exact: Result<f64>,
    /// `S_R` per estimator in [`EstimatorId::TABLE_ORDER`].
    pub estimates: [Result<f64>; 5],
}

impl EstimatorRow {
    /// `Some(true)` where an estimate falls below the exact `S_R` by more
    /// than [`BOUND_TOLERANCE`]; `None` where either value is unavailable.
    pub fn bound_failures(&self) -> [Option<bool>; 5] {
        let mut out = [None; 5];
        if let Ok(exact) = self.exact {
            for (slot, est) in out.iter_mut().zip(&self.estimates) {
                if let Ok(v) = est {
                    *slot = Some(*v < exact - BOUND_TOLERANCE);
                }
            }
        }
        out
    }

    pub fn bound_fail_mask(&self) -> String {
        self.bound_failures()
            .iter()
            .map(|f| match f {
                Some(true) => '1',
                Some(false) => '0',
                None => 'x',
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct EstimatorTable {
    pub rows: Vec<EstimatorRow>,
}

pub const TABLE_HEADER: &str = "test,exact,davis_a,davis_b,toro,batten,einfeldt,bound_fail_mask";

impl EstimatorTable {
    /// CSV with four decimals per speed; failed cells print `error`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(TABLE_HEADER);
        out.push('\n');
        let cell = |v: &Result<f64>| match v {
            Ok(x) => format!("{x:.4}"),
            Err(_) => "error".to_string(),
        };
        for row in &self.rows {
            out.push_str(&row.label);
            out.push(',');
            out.push_str(&cell(&row.exact));
            for est in &row.estimates {
                out.push(',');
                out.push_str(&cell(est));
            }
            out.push(',');
            out.push_str(&row.bound_fail_mask());
            out.push('\n');
        }
        out
    }
}

/// Exact and estimated maximal speeds `S_R` for a batch of problems.
pub fn estimator_table<'a, I>(problems: I) -> EstimatorTable
where
    I: IntoIterator<Item = (&'a str, &'a RiemannProblem)>,
{
    let rows = problems
        .into_iter()
        .map(|(label, rp)| {
            let exact = euler::exact_wave_speeds(rp).map(|(_, sr)| sr);
            let estimates = EstimatorId::TABLE_ORDER.map(|id| id.estimate(rp).map(|p| p.s_right));
            EstimatorRow {
                label: label.to_string(),
                exact,
                estimates,
            }
        })
        .collect();
    EstimatorTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{reference_problems, solve_star, PrimitiveState};

    fn problem(i: usize) -> RiemannProblem {
        reference_problems()[i - 1].1
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn equal_states() -> RiemannProblem {
        let s = PrimitiveState::new(1.7, 0.3, 2.9).unwrap();
        RiemannProblem::new(s, s, 1.4).unwrap()
    }

    #[test]
    fn davis() {
        assert!(close(davis_a(&problem(1)).s_right, 0.3742, 5e-5));
        assert!(close(davis_a(&problem(5)).s_right, -2.7238, 5e-5));
        assert!(close(davis_b(&problem(1)).s_right, 1.1832, 5e-5));
        assert!(close(davis_b(&problem(6)).s_right, 83.2762, 5e-5));

        let s = PrimitiveState::new(1.0, 0.0, 1.0).unwrap();
        let rp = RiemannProblem::new(s, s, 1.4).unwrap();
        let c = 1.4f64.sqrt();
        assert_eq!(davis_a(&rp), WaveSpeedPair::new(-c, c));
        assert_eq!(davis_b(&rp), davis_a(&rp));
    }

    #[test]
    fn einfeldt_values() {
        // u~ = 0, d~^2 = 0.56 + 0.5 * 0.25 * 16 = 2.56
        assert!(close(einfeldt(&problem(7)).s_right, 1.6, 1e-12));
        assert!(close(einfeldt(&problem(3)).s_right, 5.9740, 5e-5));
    }

    #[test]
    fn batten_values() {
        assert!(close(batten(&problem(1)).unwrap().s_right, 0.8775, 5e-5));
        assert!(close(batten(&problem(6)).unwrap().s_right, 83.7136, 5e-5));
    }

    #[test]
    fn toro_values() {
        assert!(close(toro(&problem(1)).unwrap().s_right, 0.8134, 5e-5));
        assert!(close(toro(&problem(6)).unwrap().s_right, 716.2437, 1e-3));
        assert!(close(toro(&problem(3)).unwrap().s_right, 33.5742, 1e-3));
    }

    #[test]
    fn two_rarefaction_bounds_star_pressure() {
        let p7 = two_rarefaction_pressure(&problem(7)).unwrap();
        assert!(close(p7, solve_star(&problem(7)).unwrap().p_star, 1e-12));
        assert!(close(p7, 0.0019, 1e-3));
        let eq = equal_states();
        assert!(close(two_rarefaction_pressure(&eq).unwrap(), 2.9, 1e-12));
        for (_, rp) in reference_problems() {
            let prr = two_rarefaction_pressure(&rp).unwrap();
            let p = solve_star(&rp).unwrap().p_star;
            assert!(prr >= p * (1.0 - 1e-12), "{prr} < {p}");
        }
    }

    #[test]
    fn all_estimators_collapse_on_equal_states() {
        let rp = equal_states();
        let c = rp.left.sound_speed(1.4);
        for id in EstimatorId::TABLE_ORDER {
            let p = id.estimate(&rp).unwrap();
            assert!(close(p.s_left, 0.3 - c, 1e-12), "{id}");
            assert!(close(p.s_right, 0.3 + c, 1e-12), "{id}");
        }
    }

    #[test]
    fn rusanov_speeds() {
        assert_eq!(rusanov_speed(&WaveSpeedPair::new(-1.0, 2.0)), 2.0);
        assert_eq!(rusanov_speed(&WaveSpeedPair::new(-3.0, 2.0)), 3.0);
        let pair = davis_a(&problem(5));
        let sl = 8.0 - (1.4f64 * 460.0 / 6.0).sqrt();
        let sr = -6.0 + (1.4f64 * 46.0 / 6.0).sqrt();
        assert!(close(rusanov_speed(&pair), sl.abs().max(sr.abs()), 1e-12));
    }

    #[test]
    fn batten_rejects_imaginary_sound_speed() {
        // H~ - u~^2/2 >= sum w_K c_K^2 / (gamma - 1) for admissible data, so
        // only a non-physical pressure can trip the check.
        let broken = RiemannProblem {
            left: PrimitiveState { rho: 1.0, u: 0.0, p: -1.0 },
            right: PrimitiveState { rho: 1.0, u: 0.0, p: -1.0 },
            gamma: 1.4,
        };
        assert!(matches!(roe_sound_speed(&broken), Err(Error::ImaginarySoundSpeed(_))));
        assert!(matches!(batten(&broken), Err(Error::ImaginarySoundSpeed(_))));
    }

    #[test]
    fn estimator_names_round_trip() {
        for id in EstimatorId::TABLE_ORDER {
            assert_eq!(id.name().parse::<EstimatorId>().unwrap(), id);
        }
        assert!("roe".parse::<EstimatorId>().is_err());
    }

    #[test]
    fn table_for_equal_states() {
        let rp = equal_states();
        let t = estimator_table([("eq", &rp)]);
        let row = &t.rows[0];
        let exact = *row.exact.as_ref().unwrap();
        for e in &row.estimates {
            assert!(close(*e.as_ref().unwrap(), exact, 1e-12));
        }
        assert_eq!(row.bound_fail_mask(), "00000");
    }
}
