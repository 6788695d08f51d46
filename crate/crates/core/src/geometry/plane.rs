//! Phase-plane realizations of the geometric factor kinds.
//!
//! Each geometric factor carries a raw level function G(q, p) that vanishes
//! on the singular fiber: G = p q for the saddle chart, the energy for the
//! double well, and the energy measured from the separatrix for the
//! pendulum. Inner lobes of two-sided factors live at negative raw values.

use crate::model::{FactorKind, HyperbolicFactor, Lobe};
use crate::{Error, Result};

use super::roots::bracketed_root;

/// Geometric realization of a factor; synthetic profiles have none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneKind {
    Saddle { eps: f64 },
    Duffing,
    Pendulum,
}

impl PlaneKind {
    pub fn from_factor(factor: &HyperbolicFactor) -> Result<Self> {
        match factor.kind {
            FactorKind::SaddleChart { epsilon } => Ok(PlaneKind::Saddle { eps: epsilon }),
            FactorKind::DuffingDoubleWell {} => Ok(PlaneKind::Duffing),
            FactorKind::Pendulum {} => Ok(PlaneKind::Pendulum),
            FactorKind::SyntheticProfile { .. } => Err(Error::NoPhasePlane),
        }
    }

    /// Raw level function G(q, p); the singular fiber is G = 0.
    pub fn implicit(&self, q: f64, p: f64) -> f64 {
        match self {
            PlaneKind::Saddle { .. } => p * q,
            PlaneKind::Duffing => 0.5 * p * p + 0.25 * q.powi(4) - 0.5 * q * q,
            PlaneKind::Pendulum => 0.5 * p * p - q.cos() - 1.0,
        }
    }

    /// Gradient (dG/dq, dG/dp).
    pub fn grad(&self, q: f64, p: f64) -> (f64, f64) {
        match self {
            PlaneKind::Saddle { .. } => (p, q),
            PlaneKind::Duffing => (q.powi(3) - q, p),
            PlaneKind::Pendulum => (q.sin(), p),
        }
    }

    /// Raw values for which the level set is a nonempty regular curve.
    /// Outside this open interval the level is empty or degenerate.
    pub fn raw_range(&self) -> (f64, f64) {
        match self {
            PlaneKind::Saddle { eps } => (-eps * eps, eps * eps),
            PlaneKind::Duffing => (-0.25, f64::INFINITY),
            PlaneKind::Pendulum => (-2.0, f64::INFINITY),
        }
    }

    /// Raw value at which the level degenerates to equilibrium points.
    pub fn degenerate_level(&self) -> Option<f64> {
        match self {
            PlaneKind::Saddle { .. } => None,
            PlaneKind::Duffing => Some(-0.25),
            PlaneKind::Pendulum => Some(-2.0),
        }
    }
}

/// Check that a raw value selects a regular fiber of the given lobe and
/// return the plane realization.
pub fn checked_plane(factor: &HyperbolicFactor, f: f64) -> Result<PlaneKind> {
    let plane = PlaneKind::from_factor(factor)?;
    let (lo, hi) = plane.raw_range();
    if let Some(d) = plane.degenerate_level() {
        if f == d {
            return Err(Error::DegenerateLevel(f));
        }
    }
    if f <= lo || f >= hi {
        return Err(Error::LevelOutOfRange { f, lo, hi });
    }
    let expected_sign = factor.lobe_sign();
    if f == 0.0 || f.signum() != expected_sign {
        return Err(Error::WrongLobeSide { f });
    }
    Ok(plane)
}

/// Positive turning points of the selected cycle, located by bracketed
/// bisection with Newton polish. For the saddle chart these are the q
/// coordinates where the hyperbola branch meets the chart boundary.
pub fn positive_turning_qs(plane: PlaneKind, lobe: Lobe, f: f64, tol: f64) -> Result<Vec<f64>> {
    match plane {
        PlaneKind::Saddle { eps } => Ok(vec![f / eps, eps]),
        PlaneKind::Duffing => {
            // p^2(q) = 2f + q^2 - q^4/2; roots of g(q) = 2f + q^2 - q^4/2.
            let g = |q: f64| 2.0 * f + q * q - 0.5 * q.powi(4);
            let dg = |q: f64| 2.0 * q - 2.0 * q.powi(3);
            match lobe {
                Lobe::Inner => {
                    let q_min = bracketed_root(&g, &dg, 0.0, 1.0, tol)?;
                    let q_max = bracketed_root(&g, &dg, 1.0, 2f64.sqrt(), tol)?;
                    Ok(vec![q_min, q_max])
                }
                Lobe::Outer => {
                    let mut hi = 2.0;
                    while g(hi) > 0.0 {
                        hi *= 2.0;
                    }
                    let q_max = bracketed_root(&g, &dg, 2f64.sqrt(), hi, tol)?;
                    Ok(vec![q_max])
                }
            }
        }
        PlaneKind::Pendulum => match lobe {
            Lobe::Inner => {
                // cos q_t = -E with E = 1 + f.
                let e = 1.0 + f;
                let g = |q: f64| e + q.cos();
                let dg = |q: f64| -q.sin();
                let q_t = bracketed_root(&g, &dg, 0.0, std::f64::consts::PI, tol)?;
                Ok(vec![q_t])
            }
            // Rotation cycles have no turning points; the chart edge q = pi
            // bounds the fundamental domain.
            Lobe::Outer => Ok(vec![std::f64::consts::PI]),
        },
    }
}

/// Momentum on the upper branch of the selected cycle, in a form factored
/// through the turning points so the square root stays fully accurate at
/// the endpoints.
pub fn upper_momentum(plane: PlaneKind, lobe: Lobe, f: f64, turning: &[f64]) -> impl Fn(f64) -> f64 {
    match (plane, lobe) {
        (PlaneKind::Saddle { .. }, _) => {
            // Not used for the saddle chart (the branch is q |-> f/q); keep a
            // direct evaluation for completeness.
            let val = f;
            Box::new(move |q: f64| val / q) as Box<dyn Fn(f64) -> f64>
        }
        (PlaneKind::Duffing, Lobe::Inner) => {
            let (q_min, q_max) = (turning[0], turning[1]);
            Box::new(move |q: f64| {
                (0.5 * (q * q - q_min * q_min).max(0.0) * (q_max * q_max - q * q).max(0.0)).sqrt()
            })
        }
        (PlaneKind::Duffing, Lobe::Outer) => {
            let q_max = turning[0];
            // p^2 = (q^2 + r)(q_max^2 - q^2)/2 with r = q_max^2 - 2 > 0.
            let r = q_max * q_max - 2.0;
            Box::new(move |q: f64| {
                (0.5 * (q * q + r) * (q_max * q_max - q * q).max(0.0)).sqrt()
            })
        }
        (PlaneKind::Pendulum, Lobe::Inner) => {
            let q_t = turning[0];
            // p = 2 sqrt(sin((q_t+q)/2) sin((q_t-q)/2)).
            Box::new(move |q: f64| {
                2.0 * ((0.5 * (q_t + q)).sin() * (0.5 * (q_t - q)).sin()).max(0.0).sqrt()
            })
        }
        (PlaneKind::Pendulum, Lobe::Outer) => {
            // p = sqrt(2 f + 4 cos^2(q/2)), strictly positive on [-pi, pi].
            Box::new(move |q: f64| {
                let c = (0.5 * q).cos();
                (2.0 * f + 4.0 * c * c).sqrt()
            })
        }
    }
}
