//! Adaptive level-curve tracing in the factor phase planes.
//!
//! Regular fibers are traced by an arc-length predictor along the
//! Hamiltonian flow direction with Newton correction back onto the level
//! set and curvature-controlled step size. Separatrices pass through saddle
//! points where the gradient vanishes, so they are emitted from explicit
//! parameterizations instead of being traced.

use crate::config::NumericConfig;
use crate::model::{HyperbolicFactor, Lobe};
use crate::{Error, Result};

use super::plane::{positive_turning_qs, PlaneKind};
use super::roots::bracketed_root;

/// One oriented polyline of a level set.
#[derive(Debug, Clone)]
pub struct Branch {
    pub vertices: Vec<(f64, f64)>,
    pub closed: bool,
}

impl Branch {
    fn leftmost(&self) -> (f64, f64) {
        self.vertices
            .iter()
            .copied()
            .fold((f64::INFINITY, f64::INFINITY), |acc, v| {
                if v.0 < acc.0 || (v.0 == acc.0 && v.1 < acc.1) {
                    v
                } else {
                    acc
                }
            })
    }
}

/// A traced level set of one factor.
#[derive(Debug, Clone)]
pub struct LevelCurve {
    pub f_value: f64,
    pub branches: Vec<Branch>,
}

/// Quadrature split points of the selected cycle: momentum turning points
/// for potential-type factors, chart boundary crossings for the saddle.
#[derive(Debug, Clone)]
pub struct TurningPointSet {
    pub points: Vec<(f64, f64)>,
}

/// Rectangular trace domain; tracing stops at its boundary.
#[derive(Debug, Clone, Copy)]
struct Domain {
    q: (f64, f64),
    p: (f64, f64),
}

impl Domain {
    fn unbounded() -> Self {
        Self {
            q: (f64::NEG_INFINITY, f64::INFINITY),
            p: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    fn contains(&self, x: (f64, f64)) -> bool {
        x.0 >= self.q.0 && x.0 <= self.q.1 && x.1 >= self.p.0 && x.1 <= self.p.1
    }
}

const MAX_VERTICES: usize = 200_000;
const MIN_STEP_FACTOR: f64 = 1e-4;
const MAX_TURN_ANGLE: f64 = 0.3;

fn unit_tangent(plane: PlaneKind, x: (f64, f64)) -> (f64, f64) {
    let (gq, gp) = plane.grad(x.0, x.1);
    let norm = (gq * gq + gp * gp).sqrt();
    (gp / norm, -gq / norm)
}

/// Newton-correct a predicted point back onto G = f along the gradient.
fn correct(plane: PlaneKind, f: f64, mut x: (f64, f64), tol: f64) -> Option<(f64, f64)> {
    for _ in 0..12 {
        let r = plane.implicit(x.0, x.1) - f;
        if r.abs() <= tol {
            return Some(x);
        }
        let (gq, gp) = plane.grad(x.0, x.1);
        let g2 = gq * gq + gp * gp;
        if g2 == 0.0 {
            return None;
        }
        x = (x.0 - r * gq / g2, x.1 - r * gp / g2);
    }
    let r = plane.implicit(x.0, x.1) - f;
    (r.abs() <= tol).then_some(x)
}

/// Land exactly on the domain edge crossed by the segment [inside, outside],
/// then solve the remaining coordinate so the vertex sits on the level set.
fn crop_to_domain(
    plane: PlaneKind,
    f: f64,
    domain: Domain,
    inside: (f64, f64),
    outside: (f64, f64),
    tol: f64,
) -> Option<(f64, f64)> {
    // Bisect for the crossing parameter.
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let point = |t: f64| {
        (
            inside.0 + t * (outside.0 - inside.0),
            inside.1 + t * (outside.1 - inside.1),
        )
    };
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if domain.contains(point(mid)) {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut x = point(a);
    // Snap the nearly-touched edge coordinate and re-solve the other one.
    let snap_q = [domain.q.0, domain.q.1]
        .into_iter()
        .filter(|e| e.is_finite())
        .min_by(|u, v| (u - x.0).abs().partial_cmp(&(v - x.0).abs()).unwrap());
    let snap_p = [domain.p.0, domain.p.1]
        .into_iter()
        .filter(|e| e.is_finite())
        .min_by(|u, v| (u - x.1).abs().partial_cmp(&(v - x.1).abs()).unwrap());
    let dq = snap_q.map(|e| (e - x.0).abs()).unwrap_or(f64::INFINITY);
    let dp = snap_p.map(|e| (e - x.1).abs()).unwrap_or(f64::INFINITY);
    if dq <= dp {
        let edge = snap_q?;
        // 1D Newton in p on the edge q = edge.
        let mut p = x.1;
        for _ in 0..40 {
            let r = plane.implicit(edge, p) - f;
            if r.abs() <= tol {
                break;
            }
            let (_, gp) = plane.grad(edge, p);
            if gp == 0.0 {
                break;
            }
            p -= r / gp;
        }
        x = (edge, p);
    } else {
        let edge = snap_p?;
        let mut q = x.0;
        for _ in 0..40 {
            let r = plane.implicit(q, edge) - f;
            if r.abs() <= tol {
                break;
            }
            let (gq, _) = plane.grad(q, edge);
            if gq == 0.0 {
                break;
            }
            q -= r / gq;
        }
        x = (q, edge);
    }
    ((plane.implicit(x.0, x.1) - f).abs() <= tol).then_some(x)
}

/// Trace from `seed` following the flow direction (`forward` flips it).
/// Returns the polyline excluding the seed itself, plus whether it closed.
fn trace_direction(
    plane: PlaneKind,
    f: f64,
    seed: (f64, f64),
    domain: Domain,
    forward: bool,
    cfg: &NumericConfig,
) -> Result<(Vec<(f64, f64)>, bool)> {
    let sign = if forward { 1.0 } else { -1.0 };
    let tau0 = {
        let t = unit_tangent(plane, seed);
        (sign * t.0, sign * t.1)
    };
    let mut vertices = Vec::new();
    let mut x = seed;
    let mut tau = tau0;
    let mut step = cfg.max_step;
    let min_step = cfg.max_step * MIN_STEP_FACTOR;
    let mut arc = 0.0;

    loop {
        if vertices.len() >= MAX_VERTICES {
            return Err(Error::InvalidModel(
                "level-curve tracing exceeded the vertex budget".into(),
            ));
        }
        let predicted = (x.0 + step * tau.0, x.1 + step * tau.1);
        if !domain.contains(predicted) {
            if let Some(edge) = crop_to_domain(plane, f, domain, x, predicted, cfg.trace_tol) {
                vertices.push(edge);
            }
            return Ok((vertices, false));
        }
        let Some(corrected) = correct(plane, f, predicted, cfg.trace_tol) else {
            if step > min_step {
                step *= 0.5;
                continue;
            }
            return Err(Error::InvalidModel(
                "level-curve correction failed at minimal step".into(),
            ));
        };
        let new_tau = {
            let t = unit_tangent(plane, corrected);
            (sign * t.0, sign * t.1)
        };
        // Curvature control: sharp turns get a finer step.
        let dot = (tau.0 * new_tau.0 + tau.1 * new_tau.1).clamp(-1.0, 1.0);
        if dot.acos() > MAX_TURN_ANGLE && step > min_step {
            step *= 0.5;
            continue;
        }

        arc += step;
        vertices.push(corrected);
        x = corrected;
        tau = new_tau;

        // Closure: back near the seed, moving the same way, after a real loop.
        let dist = ((x.0 - seed.0).powi(2) + (x.1 - seed.1).powi(2)).sqrt();
        let heading = tau.0 * tau0.0 + tau.1 * tau0.1;
        if arc > 4.0 * cfg.max_step && dist < step && heading > 0.5 {
            vertices.push(seed);
            return Ok((vertices, true));
        }

        if dot.acos() < 0.5 * MAX_TURN_ANGLE {
            step = (step * 1.3).min(cfg.max_step);
        }
    }
}

/// Trace one branch from a seed. Closed branches are traced one way around;
/// open branches are traced both ways from the seed and stitched.
fn trace_branch(
    plane: PlaneKind,
    f: f64,
    seed: (f64, f64),
    domain: Domain,
    cfg: &NumericConfig,
) -> Result<Branch> {
    let seed = correct(plane, f, seed, cfg.trace_tol).ok_or_else(|| {
        Error::InvalidModel("level-curve seed does not lie on the level set".into())
    })?;
    let (fwd, closed) = trace_direction(plane, f, seed, domain, true, cfg)?;
    if closed {
        let mut vertices = vec![seed];
        vertices.extend(fwd);
        return Ok(Branch {
            vertices,
            closed: true,
        });
    }
    let (bwd, _) = trace_direction(plane, f, seed, domain, false, cfg)?;
    let mut vertices: Vec<(f64, f64)> = bwd.into_iter().rev().collect();
    vertices.push(seed);
    vertices.extend(fwd);
    Ok(Branch {
        vertices,
        closed: false,
    })
}

fn seeds_and_domain(plane: PlaneKind, f: f64) -> (Vec<(f64, f64)>, Domain) {
    match plane {
        PlaneKind::Saddle { eps } => {
            let r = f.abs().sqrt();
            let seeds = if f > 0.0 {
                vec![(r, r), (-r, -r)]
            } else {
                vec![(r, -r), (-r, r)]
            };
            (
                seeds,
                Domain {
                    q: (-eps, eps),
                    p: (-eps, eps),
                },
            )
        }
        PlaneKind::Duffing => {
            let seeds = if f < 0.0 {
                let p0 = (2.0 * f + 0.5).sqrt();
                vec![(1.0, p0), (-1.0, p0)]
            } else {
                vec![(0.0, (2.0 * f).sqrt())]
            };
            (seeds, Domain::unbounded())
        }
        PlaneKind::Pendulum => {
            let p0 = (2.0 * (2.0 + f)).sqrt();
            let seeds = if f < 0.0 {
                vec![(0.0, p0)]
            } else {
                vec![(0.0, p0), (0.0, -p0)]
            };
            (
                seeds,
                Domain {
                    q: (-std::f64::consts::PI, std::f64::consts::PI),
                    p: (f64::NEG_INFINITY, f64::INFINITY),
                },
            )
        }
    }
}

fn sort_branches(mut branches: Vec<Branch>) -> Vec<Branch> {
    branches.sort_by(|a, b| {
        let la = a.leftmost();
        let lb = b.leftmost();
        la.partial_cmp(&lb).unwrap_or(std::cmp::Ordering::Equal)
    });
    branches
}

/// Trace the regular level set at raw value `f` (f = 0 is the separatrix
/// and must go through [`trace_separatrix`]).
pub fn trace_level_curve(
    factor: &HyperbolicFactor,
    f: f64,
    cfg: &NumericConfig,
) -> Result<LevelCurve> {
    let plane = PlaneKind::from_factor(factor)?;
    if f == 0.0 {
        return Err(Error::DegenerateLevel(0.0));
    }
    if let Some(d) = plane.degenerate_level() {
        if f == d {
            return Err(Error::DegenerateLevel(f));
        }
    }
    let (lo, hi) = plane.raw_range();
    if f <= lo || f >= hi {
        return Err(Error::LevelOutOfRange { f, lo, hi });
    }
    let (seeds, domain) = seeds_and_domain(plane, f);
    let branches = seeds
        .into_iter()
        .map(|s| trace_branch(plane, f, s, domain, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelCurve {
        f_value: f,
        branches: sort_branches(branches),
    })
}

/// The singular level set, from explicit parameterizations: the tracer's
/// Newton corrector is ill-posed at the saddle points the separatrix
/// passes through.
pub fn trace_separatrix(factor: &HyperbolicFactor, cfg: &NumericConfig) -> Result<LevelCurve> {
    let plane = PlaneKind::from_factor(factor)?;
    let step = cfg.max_step;
    let branches = match plane {
        PlaneKind::Saddle { eps } => {
            // The two axes inside the chart box.
            let n = ((2.0 * eps / step).ceil() as usize).max(2);
            let axis = |horizontal: bool| {
                let vertices = (0..=n)
                    .map(|i| {
                        let s = -eps + 2.0 * eps * i as f64 / n as f64;
                        if horizontal {
                            (s, 0.0)
                        } else {
                            (0.0, s)
                        }
                    })
                    .collect();
                Branch {
                    vertices,
                    closed: false,
                }
            };
            vec![axis(true), axis(false)]
        }
        PlaneKind::Duffing => {
            // Figure-eight lobes p = +-q sqrt(1 - q^2/2), q in [0, sqrt 2].
            let qmax = 2f64.sqrt();
            let n = ((2.0 * qmax / step).ceil() as usize).max(8);
            let lobe = |side: f64| {
                let mut vertices = Vec::with_capacity(2 * n + 1);
                for i in 0..=n {
                    let q = side * qmax * i as f64 / n as f64;
                    vertices.push((q, q * (1.0 - 0.5 * q * q).max(0.0).sqrt()));
                }
                for i in (0..n).rev() {
                    let q = side * qmax * i as f64 / n as f64;
                    vertices.push((q, -q * (1.0 - 0.5 * q * q).max(0.0).sqrt()));
                }
                // Figure-eight lobes close through the origin.
                let first = vertices[0];
                *vertices.last_mut().expect("nonempty") = first;
                Branch {
                    vertices,
                    closed: true,
                }
            };
            vec![lobe(1.0), lobe(-1.0)]
        }
        PlaneKind::Pendulum => {
            // p = +-2 cos(q/2) over one fundamental domain.
            let pi = std::f64::consts::PI;
            let n = ((2.0 * pi / step).ceil() as usize).max(8);
            let arc = |side: f64| {
                let vertices = (0..=n)
                    .map(|i| {
                        let q = -pi + 2.0 * pi * i as f64 / n as f64;
                        (q, side * 2.0 * (0.5 * q).cos())
                    })
                    .collect();
                Branch {
                    vertices,
                    closed: false,
                }
            };
            vec![arc(1.0), arc(-1.0)]
        }
    };
    Ok(LevelCurve {
        f_value: 0.0,
        branches: sort_branches(branches),
    })
}

/// Quadrature split points for the cycle selected by the factor's lobe.
pub fn turning_points(
    factor: &HyperbolicFactor,
    f: f64,
    cfg: &NumericConfig,
) -> Result<TurningPointSet> {
    let plane = super::plane::checked_plane(factor, f)?;
    let qs = positive_turning_qs(plane, factor.lobe, f, cfg.root_tol)?;
    let points = match plane {
        PlaneKind::Saddle { eps } => vec![(f / eps, eps), (eps, f / eps)],
        PlaneKind::Duffing => match factor.lobe {
            Lobe::Inner => vec![(qs[0], 0.0), (qs[1], 0.0)],
            Lobe::Outer => vec![(-qs[0], 0.0), (qs[0], 0.0)],
        },
        PlaneKind::Pendulum => match factor.lobe {
            Lobe::Inner => vec![(-qs[0], 0.0), (qs[0], 0.0)],
            // Rotation cycles never touch p = 0.
            Lobe::Outer => vec![],
        },
    };
    Ok(TurningPointSet { points })
}

/// Solve for a point (q, p(q)) on the level set, for seeding and tests.
pub fn point_on_level(plane: PlaneKind, f: f64, q: f64, p_bracket: (f64, f64)) -> Result<f64> {
    bracketed_root(
        &|p| plane.implicit(q, p) - f,
        &|p| plane.grad(q, p).1,
        p_bracket.0,
        p_bracket.1,
        1e-14,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FactorKind;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn assert_on_level(curve: &LevelCurve, plane: PlaneKind, tol: f64) {
        for branch in &curve.branches {
            assert!(branch.vertices.len() > 1);
            for &(q, p) in &branch.vertices {
                let r = (plane.implicit(q, p) - curve.f_value).abs();
                assert!(r < tol, "vertex ({q}, {p}) off level by {r}");
            }
            if branch.closed {
                assert_eq!(branch.vertices.first(), branch.vertices.last());
            }
        }
    }

    #[test]
    fn saddle_branch_is_the_hyperbola() {
        let factor = HyperbolicFactor::new(FactorKind::SaddleChart { epsilon: 1.0 }, Lobe::Outer);
        let curve = trace_level_curve(&factor, 0.25, &cfg()).unwrap();
        assert_eq!(curve.branches.len(), 2);
        assert_on_level(&curve, PlaneKind::Saddle { eps: 1.0 }, 1e-10);

        // First-quadrant branch spans q in [0.25, 1] with endpoints on the box.
        let q1 = curve
            .branches
            .iter()
            .find(|b| b.vertices.iter().all(|v| v.0 > 0.0))
            .expect("first-quadrant branch");
        assert!(!q1.closed);
        let qmin = q1.vertices.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
        let qmax = q1
            .vertices
            .iter()
            .map(|v| v.0)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((qmin - 0.25).abs() < 1e-8, "qmin = {qmin}");
        assert!((qmax - 1.0).abs() < 1e-8, "qmax = {qmax}");
        for &(q, p) in &q1.vertices {
            assert!((p - 0.25 / q).abs() < 1e-8);
        }
    }

    #[test]
    fn duffing_inner_level_has_two_closed_branches() {
        let factor = HyperbolicFactor::new(FactorKind::DuffingDoubleWell {}, Lobe::Inner);
        let curve = trace_level_curve(&factor, -0.1, &cfg()).unwrap();
        assert_eq!(curve.branches.len(), 2);
        assert_on_level(&curve, PlaneKind::Duffing, 1e-10);
        assert!(curve.branches.iter().all(|b| b.closed));
        // Canonical order puts the left-well branch first.
        assert!(curve.branches[0].leftmost().0 < curve.branches[1].leftmost().0);
    }

    #[test]
    fn duffing_outer_level_single_branch() {
        let factor = HyperbolicFactor::new(FactorKind::DuffingDoubleWell {}, Lobe::Outer);
        let curve = trace_level_curve(&factor, 0.05, &cfg()).unwrap();
        assert_eq!(curve.branches.len(), 1);
        assert!(curve.branches[0].closed);
        assert_on_level(&curve, PlaneKind::Duffing, 1e-10);
    }

    #[test]
    fn duffing_separatrix_reaches_sqrt_two() {
        let factor = HyperbolicFactor::new(FactorKind::DuffingDoubleWell {}, Lobe::Inner);
        let curve = trace_separatrix(&factor, &cfg()).unwrap();
        assert_eq!(curve.branches.len(), 2);
        assert_on_level(&curve, PlaneKind::Duffing, 1e-10);
        let right = &curve.branches[1];
        let qmax = right
            .vertices
            .iter()
            .map(|v| v.0)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((qmax - 2f64.sqrt()).abs() < 1e-12);
        assert!(right.vertices.iter().any(|&(q, p)| q == 0.0 && p == 0.0));
    }

    #[test]
    fn degenerate_and_out_of_range_levels_error() {
        let factor = HyperbolicFactor::new(FactorKind::DuffingDoubleWell {}, Lobe::Inner);
        assert!(matches!(
            trace_level_curve(&factor, -0.25, &cfg()),
            Err(Error::DegenerateLevel(_))
        ));
        assert!(matches!(
            trace_level_curve(&factor, -0.3, &cfg()),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            trace_level_curve(&factor, 0.0, &cfg()),
            Err(Error::DegenerateLevel(_))
        ));
    }

    #[test]
    fn pendulum_rotation_branches_span_the_cylinder() {
        let factor = HyperbolicFactor::new(FactorKind::Pendulum {}, Lobe::Outer);
        let curve = trace_level_curve(&factor, 1.0, &cfg()).unwrap();
        assert_eq!(curve.branches.len(), 2);
        assert_on_level(&curve, PlaneKind::Pendulum, 1e-10);
        for branch in &curve.branches {
            assert!(!branch.closed);
            let qmin = branch
                .vertices
                .iter()
                .map(|v| v.0)
                .fold(f64::INFINITY, f64::min);
            let qmax = branch
                .vertices
                .iter()
                .map(|v| v.0)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((qmin + std::f64::consts::PI).abs() < 1e-8);
            assert!((qmax - std::f64::consts::PI).abs() < 1e-8);
        }
    }

    #[test]
    fn pendulum_libration_closed() {
        let factor = HyperbolicFactor::new(FactorKind::Pendulum {}, Lobe::Inner);
        let curve = trace_level_curve(&factor, -0.5, &cfg()).unwrap();
        assert_eq!(curve.branches.len(), 1);
        assert!(curve.branches[0].closed);
        assert_on_level(&curve, PlaneKind::Pendulum, 1e-10);
    }

    #[test]
    fn turning_points_vanish_transversally() {
        let c = cfg();
        let factor = HyperbolicFactor::new(FactorKind::DuffingDoubleWell {}, Lobe::Inner);
        let tp = turning_points(&factor, -0.1, &c).unwrap();
        assert_eq!(tp.points.len(), 2);
        for &(q, p) in &tp.points {
            assert_eq!(p, 0.0);
            // dG/dp = p vanishes; the level passes through transversally.
            let g = PlaneKind::Duffing.implicit(q, p);
            assert!((g - (-0.1)).abs() < 1e-12);
        }
    }
}
