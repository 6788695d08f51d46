//! Loop actions, periods, and separatrix areas for geometric factors.
//!
//! The loop action is the plain symplectic area oint p dq over the selected
//! cycle, with no 1/(2 pi) normalization: actions are only defined up to an
//! affine map, and the determinant verdicts are invariant under that choice.
//! For the saddle chart the "cycle" is the chart-relative region between
//! the hyperbola branch and the separatrix inside the chart box.
//!
//! The period integral T(f) = oint dq / |dH/dp| is the derivative of the
//! loop action with respect to the raw level value, which makes it an
//! independent quadrature route to the same asymptotics; the two are
//! cross-checked rather than derived from one another.

use crate::config::NumericConfig;
use crate::model::{HyperbolicFactor, Lobe};
use crate::Result;

use super::plane::{checked_plane, positive_turning_qs, upper_momentum, PlaneKind};
use super::tanh_sinh::{tanh_sinh, DEFAULT_MAX_LEVELS};

fn quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64, cfg: &NumericConfig) -> Result<f64> {
    tanh_sinh(f, a, b, cfg.quad_abs_floor, cfg.action_tol, DEFAULT_MAX_LEVELS).map(|q| q.value)
}

/// Symplectic area oint p dq of the cycle selected by the factor's lobe at
/// raw level `f`, by turning-point-split tanh-sinh quadrature.
pub fn loop_action_integral(factor: &HyperbolicFactor, f: f64, cfg: &NumericConfig) -> Result<f64> {
    let plane = checked_plane(factor, f)?;
    let turning = positive_turning_qs(plane, factor.lobe, f, cfg.root_tol)?;
    match plane {
        PlaneKind::Saddle { eps } => {
            // Column below the full chart height for q <= f/eps, hyperbola cap after.
            let col = quad(&|_| eps, 0.0, f / eps, cfg)?;
            let cap = quad(&move |q: f64| f / q, f / eps, eps, cfg)?;
            Ok(col + cap)
        }
        PlaneKind::Duffing => {
            let p = upper_momentum(plane, factor.lobe, f, &turning);
            match factor.lobe {
                Lobe::Inner => Ok(2.0 * quad(&p, turning[0], turning[1], cfg)?),
                Lobe::Outer => Ok(4.0 * quad(&p, 0.0, turning[0], cfg)?),
            }
        }
        PlaneKind::Pendulum => {
            let p = upper_momentum(plane, factor.lobe, f, &turning);
            match factor.lobe {
                Lobe::Inner => Ok(4.0 * quad(&p, 0.0, turning[0], cfg)?),
                Lobe::Outer => Ok(2.0 * quad(&p, 0.0, std::f64::consts::PI, cfg)?),
            }
        }
    }
}

/// Period T(f) = oint dq / |dH/dp| of the selected cycle. For the saddle
/// chart this is the transit time of the branch across the chart, which is
/// again the f-derivative of the chart-relative area.
pub fn period_integral(factor: &HyperbolicFactor, f: f64, cfg: &NumericConfig) -> Result<f64> {
    let plane = checked_plane(factor, f)?;
    let turning = positive_turning_qs(plane, factor.lobe, f, cfg.root_tol)?;
    match plane {
        PlaneKind::Saddle { eps } => quad(&|q: f64| 1.0 / q, f / eps, eps, cfg),
        PlaneKind::Duffing => {
            let p = upper_momentum(plane, factor.lobe, f, &turning);
            let inv = move |q: f64| 1.0 / p(q);
            match factor.lobe {
                Lobe::Inner => Ok(2.0 * quad(&inv, turning[0], turning[1], cfg)?),
                Lobe::Outer => Ok(4.0 * quad(&inv, 0.0, turning[0], cfg)?),
            }
        }
        PlaneKind::Pendulum => {
            let p = upper_momentum(plane, factor.lobe, f, &turning);
            let inv = move |q: f64| 1.0 / p(q);
            match factor.lobe {
                Lobe::Inner => Ok(4.0 * quad(&inv, 0.0, turning[0], cfg)?),
                Lobe::Outer => Ok(2.0 * quad(&inv, 0.0, std::f64::consts::PI, cfg)?),
            }
        }
    }
}

/// Continuous extension of the loop action at the singular level: the
/// symplectic area enclosed by the separatrix on the factor's lobe. The
/// saddle chart's relative area tends to zero because F ln F does.
pub fn separatrix_area(factor: &HyperbolicFactor) -> Result<f64> {
    let plane = PlaneKind::from_factor(factor)?;
    Ok(match (plane, factor.lobe) {
        (PlaneKind::Saddle { .. }, _) => 0.0,
        // One well lobe of the figure-eight: 2 int_0^{sqrt 2} q sqrt(1 - q^2/2) dq.
        (PlaneKind::Duffing, Lobe::Inner) => 4.0 / 3.0,
        (PlaneKind::Duffing, Lobe::Outer) => 8.0 / 3.0,
        // int_{-pi}^{pi} 4 cos(q/2) dq.
        (PlaneKind::Pendulum, Lobe::Inner) => 16.0,
        (PlaneKind::Pendulum, Lobe::Outer) => 8.0,
    })
}

/// Pendulum loop action in closed form through AGM elliptic integrals.
/// The complementary modulus is formed directly from the raw level, so the
/// oracle stays fully accurate arbitrarily close to the separatrix.
pub fn pendulum_action_agm(lobe: Lobe, f: f64) -> Result<f64> {
    use super::elliptic::elliptic_ke_from_complement;
    match lobe {
        Lobe::Inner => {
            // k^2 = (2+f)/2, k'^2 = -f/2, f in (-2, 0).
            let k = (0.5 * (2.0 + f)).sqrt();
            let kp = (-0.5 * f).sqrt();
            let (big_k, big_e) = elliptic_ke_from_complement(k, kp)?;
            Ok(16.0 * (big_e - kp * kp * big_k))
        }
        Lobe::Outer => {
            // k^2 = 2/(2+f), k'^2 = f/(2+f), f > 0.
            let k = (2.0 / (2.0 + f)).sqrt();
            let kp = (f / (2.0 + f)).sqrt();
            let (_, big_e) = elliptic_ke_from_complement(k, kp)?;
            Ok(8.0 * big_e / k)
        }
    }
}

/// Pendulum period in closed form through AGM elliptic integrals.
pub fn pendulum_period_agm(lobe: Lobe, f: f64) -> Result<f64> {
    use super::elliptic::elliptic_ke_from_complement;
    match lobe {
        Lobe::Inner => {
            let k = (0.5 * (2.0 + f)).sqrt();
            let kp = (-0.5 * f).sqrt();
            let (big_k, _) = elliptic_ke_from_complement(k, kp)?;
            Ok(4.0 * big_k)
        }
        Lobe::Outer => {
            let k = (2.0 / (2.0 + f)).sqrt();
            let kp = (f / (2.0 + f)).sqrt();
            let (big_k, _) = elliptic_ke_from_complement(k, kp)?;
            Ok(2.0 * k * big_k)
        }
    }
}

/// oint p dq for a single-well potential system H = p^2/2 + V(q) at energy
/// `e`, with turning points `ql < qr`. Exercises the same quadrature
/// machinery on arbitrary test systems.
pub fn potential_well_action(
    v: &dyn Fn(f64) -> f64,
    e: f64,
    ql: f64,
    qr: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    let p = move |q: f64| (2.0 * (e - v(q))).max(0.0).sqrt();
    Ok(2.0 * quad(&p, ql, qr, cfg)?)
}

/// Period of the same single-well cycle.
pub fn potential_well_period(
    v: &dyn Fn(f64) -> f64,
    e: f64,
    ql: f64,
    qr: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    let inv = move |q: f64| 1.0 / (2.0 * (e - v(q))).max(0.0).sqrt();
    Ok(2.0 * quad(&inv, ql, qr, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FactorKind;
    use crate::numerics::central_diff_richardson;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn saddle(eps: f64) -> HyperbolicFactor {
        HyperbolicFactor::new(FactorKind::SaddleChart { epsilon: eps }, Lobe::Outer)
    }

    fn duffing(lobe: Lobe) -> HyperbolicFactor {
        HyperbolicFactor::new(FactorKind::DuffingDoubleWell {}, lobe)
    }

    fn pendulum(lobe: Lobe) -> HyperbolicFactor {
        HyperbolicFactor::new(FactorKind::Pendulum {}, lobe)
    }

    #[test]
    fn saddle_chart_area_closed_form() {
        let factor = saddle(1.0);
        for &f in &[1e-8, 1e-6, 1e-4, 1e-2, 0.5, 0.99] {
            let a = loop_action_integral(&factor, f, &cfg()).unwrap();
            let exact = f - f * f.ln();
            assert!(
                (a - exact).abs() < 1e-10,
                "A({f}) = {a}, expected {exact}"
            );
        }
        // General half-width: A(f) = -f ln f + f (1 + 2 ln eps).
        let factor = saddle(0.5);
        let f = 0.01;
        let a = loop_action_integral(&factor, f, &cfg()).unwrap();
        let exact = -f * f.ln() + f * (1.0 + 2.0 * 0.5f64.ln());
        assert!((a - exact).abs() < 1e-12);
    }

    #[test]
    fn saddle_period_is_log() {
        let factor = saddle(1.0);
        let f = (-3.0f64).exp();
        let t = period_integral(&factor, f, &cfg()).unwrap();
        assert!((t - 3.0).abs() < 1e-11, "T = {t}");
    }

    #[test]
    fn duffing_inner_limit_is_lobe_area() {
        let factor = duffing(Lobe::Inner);
        let a = loop_action_integral(&factor, -1e-10, &cfg()).unwrap();
        assert!((a - 4.0 / 3.0).abs() < 1e-8, "A = {a}");
        assert_eq!(separatrix_area(&factor).unwrap(), 4.0 / 3.0);
    }

    #[test]
    fn duffing_outer_limit_is_figure_eight_area() {
        let factor = duffing(Lobe::Outer);
        let a = loop_action_integral(&factor, 1e-10, &cfg()).unwrap();
        assert!((a - 8.0 / 3.0).abs() < 1e-8, "A = {a}");
    }

    #[test]
    fn pendulum_quadrature_matches_agm_oracle() {
        // Rotation at E = 1.5 (raw f = 0.5) and libration at E = 0 (raw f = -1).
        for (lobe, f) in [(Lobe::Outer, 0.5), (Lobe::Inner, -1.0)] {
            let factor = pendulum(lobe);
            let a = loop_action_integral(&factor, f, &cfg()).unwrap();
            let exact = pendulum_action_agm(lobe, f).unwrap();
            assert!((a - exact).abs() < 1e-10, "A = {a}, oracle {exact}");
            let t = period_integral(&factor, f, &cfg()).unwrap();
            let exact_t = pendulum_period_agm(lobe, f).unwrap();
            assert!((t - exact_t).abs() < 1e-10, "T = {t}, oracle {exact_t}");
        }
    }

    #[test]
    fn pendulum_separatrix_areas() {
        assert_eq!(separatrix_area(&pendulum(Lobe::Inner)).unwrap(), 16.0);
        assert_eq!(separatrix_area(&pendulum(Lobe::Outer)).unwrap(), 8.0);
    }

    #[test]
    fn harmonic_well_is_isochronous() {
        // H = (p^2 + q^2)/2 at E = 1: disk of radius sqrt 2, area 2 pi.
        let v = |q: f64| 0.5 * q * q;
        let r = 2f64.sqrt();
        let a = potential_well_action(&v, 1.0, -r, r, &cfg()).unwrap();
        assert!((a - 2.0 * std::f64::consts::PI).abs() < 1e-11, "A = {a}");
        for &e in &[0.5, 1.0, 2.0] {
            let r = (2.0 * e).sqrt();
            let t = potential_well_period(&v, e, -r, r, &cfg()).unwrap();
            assert!((t - 2.0 * std::f64::consts::PI).abs() < 1e-10, "T = {t}");
        }
    }

    #[test]
    fn action_derivative_matches_period() {
        // d/df oint p dq = T(f), with d/df taken by central differences in
        // ln |f|. Checked across kinds, lobes, and a log-spaced level grid.
        let c = cfg();
        let cases: Vec<(HyperbolicFactor, Vec<f64>)> = vec![
            (saddle(1.0), vec![1e-6, 1e-4, 1e-2, 0.3]),
            (duffing(Lobe::Inner), vec![-1e-6, -1e-4, -1e-2, -0.2]),
            (duffing(Lobe::Outer), vec![1e-6, 1e-4, 1e-2, 1.0]),
            (pendulum(Lobe::Inner), vec![-1e-6, -1e-2, -1.0]),
            (pendulum(Lobe::Outer), vec![1e-6, 1e-2, 1.0]),
        ];
        for (factor, fs) in cases {
            for f in fs {
                let t = period_integral(&factor, f, &c).unwrap();
                let fk = factor.clone();
                let cf = c;
                let (da_du, _) = central_diff_richardson(
                    &move |u: f64| {
                        let fv = f.signum() * u.exp();
                        loop_action_integral(&fk, fv, &cf).unwrap()
                    },
                    f.abs().ln(),
                    1e-3,
                );
                // dA/df = (1/|f|) dA/du * sign adjustments: A is a function of
                // the raw level, so dA/df = dA/du / f.
                let da_df = da_du / f;
                assert!(
                    (da_df - t).abs() <= c.cross_tol * (1.0 + t.abs()),
                    "{}/{:?} at f = {f}: dA/df = {da_df}, T = {t}",
                    factor.kind.name(),
                    factor.lobe,
                );
            }
        }
    }

    #[test]
    fn duffing_period_grows_logarithmically() {
        // T(f)/ln(1/|f|) stabilizes for the inner lobe as f -> 0^-.
        let factor = duffing(Lobe::Inner);
        let ratios: Vec<f64> = [1e-4, 1e-5, 1e-6, 1e-7, 1e-8]
            .iter()
            .map(|&m| {
                let t = period_integral(&factor, -m, &cfg()).unwrap();
                t / (1.0 / m).ln()
            })
            .collect();
        for w in ratios.windows(2) {
            assert!((w[1] - w[0]).abs() / w[0].abs() < 0.02, "ratios {ratios:?}");
        }
    }

    #[test]
    fn wrong_lobe_rejected() {
        assert!(loop_action_integral(&duffing(Lobe::Inner), 0.1, &cfg()).is_err());
        assert!(loop_action_integral(&saddle(1.0), -0.1, &cfg()).is_err());
        assert!(loop_action_integral(&saddle(1.0), 1.5, &cfg()).is_err());
    }
}
