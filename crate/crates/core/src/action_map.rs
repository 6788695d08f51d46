//! The full action map I(F) and its singular decomposition.
//!
//! Actions split into an exact smooth block (I_s = F_s on the center
//! coordinates) and one singular action per hyperbolic factor, which behaves
//! like psi(F) F ln F + phi(F) with psi nonvanishing at the origin. The
//! decomposition is recovered numerically by least squares against the
//! mixed log/smooth basis, and cross-checked against a period-quadrature
//! oracle that never touches the action integrals.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::geometry::{loop_action_integral, period_integral, separatrix_area};
use crate::lsq::solve_least_squares;
use crate::model::{FactorKind, MomentumPoint, SystemModel};
use crate::poly::Poly;
use crate::{Error, Result};

/// How the singular actions of a sample were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionSource {
    /// At least one factor was integrated in its phase plane.
    Geometric,
    /// Every factor evaluated its closed-form profile.
    Synthetic,
}

/// The action vector I(F) at one momentum point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionValue {
    pub values: Vec<f64>,
    pub source: ActionSource,
}

fn source_of(model: &SystemModel) -> ActionSource {
    if model.all_synthetic() {
        ActionSource::Synthetic
    } else {
        ActionSource::Geometric
    }
}

/// Singular action of factor `i` at a regular point, as a function of the
/// full momentum vector.
pub fn singular_action(
    model: &SystemModel,
    factor_index: usize,
    f: &[f64],
    cfg: &NumericConfig,
) -> Result<f64> {
    let factor = &model.factors()[factor_index];
    let coord = model.singular_coord(factor_index);
    let fc = f[coord];
    match &factor.kind {
        FactorKind::SyntheticProfile { psi, phi } => {
            Ok(psi.eval(f) * fc * fc.ln() + phi.eval(f))
        }
        _ => loop_action_integral(factor, factor.raw_level(fc), cfg),
    }
}

/// I(F) at a regular interior point. The smooth block is copied exactly;
/// boundary points must go through [`continuity_extension`].
pub fn action_at(model: &SystemModel, point: &MomentumPoint, cfg: &NumericConfig) -> Result<ActionValue> {
    model.check_regular(point)?;
    let f = point.values();
    let mut values = Vec::with_capacity(model.n());
    values.extend_from_slice(&f[..model.center_dim()]);
    for i in 0..model.k() {
        values.push(singular_action(model, i, f, cfg)?);
    }
    Ok(ActionValue {
        values,
        source: source_of(model),
    })
}

/// Continuous extension of the action map onto the corner boundary: the
/// F ln F terms vanish in the limit, so factors sitting at F = 0 contribute
/// their separatrix value (geometric) or their smooth part (synthetic).
pub fn continuity_extension(
    model: &SystemModel,
    point: &MomentumPoint,
    cfg: &NumericConfig,
) -> Result<ActionValue> {
    if point.dim() != model.n() {
        return Err(Error::PointArity {
            got: point.dim(),
            expected: model.n(),
        });
    }
    let f = point.values();
    for i in 0..model.k() {
        let coord = model.singular_coord(i);
        if f[coord] < 0.0 {
            return Err(Error::OutsideCorner {
                coord,
                value: f[coord],
            });
        }
    }
    let mut values = Vec::with_capacity(model.n());
    values.extend_from_slice(&f[..model.center_dim()]);
    for i in 0..model.k() {
        let coord = model.singular_coord(i);
        let fc = f[coord];
        let factor = &model.factors()[i];
        if fc > 0.0 {
            values.push(singular_action(model, i, f, cfg)?);
        } else {
            match &factor.kind {
                FactorKind::SyntheticProfile { phi, .. } => values.push(phi.eval(f)),
                _ => values.push(separatrix_area(factor)?),
            }
        }
    }
    Ok(ActionValue {
        values,
        source: source_of(model),
    })
}

/// Log-spaced range for the singular coordinate of a fit grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LogRange {
    pub lo: f64,
    pub hi: f64,
    pub per_decade: usize,
}

impl LogRange {
    pub fn decades(&self) -> f64 {
        (self.hi / self.lo).log10()
    }

    pub fn values(&self) -> Vec<f64> {
        let decades = self.decades();
        let count = ((decades * self.per_decade as f64).ceil() as usize).max(2);
        let (ulo, uhi) = (self.lo.ln(), self.hi.ln());
        (0..=count)
            .map(|j| (ulo + (uhi - ulo) * j as f64 / count as f64).exp())
            .collect()
    }
}

/// Sampling plan for one non-target coordinate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoordSamples {
    Fixed { value: f64 },
    Linear { lo: f64, hi: f64, count: usize },
}

impl CoordSamples {
    fn values(&self) -> Vec<f64> {
        match *self {
            CoordSamples::Fixed { value } => vec![value],
            CoordSamples::Linear { lo, hi, count } => {
                let count = count.max(2);
                (0..count)
                    .map(|j| lo + (hi - lo) * j as f64 / (count - 1) as f64)
                    .collect()
            }
        }
    }

    fn varies(&self) -> bool {
        matches!(self, CoordSamples::Linear { .. })
    }
}

/// Tensor-product sampling plan for a singular-action fit: log-spaced in the
/// target singular coordinate, fixed values or small boxes elsewhere.
/// `others` lists the non-target coordinates in increasing coordinate order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitGrid {
    pub target: LogRange,
    pub others: Vec<CoordSamples>,
}

const MIN_FIT_DECADES: f64 = 4.0;
const MIN_POINTS_PER_DECADE: usize = 20;

impl FitGrid {
    /// Grid purely in the singular coordinate, everything else pinned.
    pub fn pinned(target: LogRange, pins: &[f64]) -> Self {
        Self {
            target,
            others: pins
                .iter()
                .map(|&value| CoordSamples::Fixed { value })
                .collect(),
        }
    }

    fn validate(&self, model: &SystemModel) -> Result<()> {
        if self.others.len() + 1 != model.n() {
            return Err(Error::PointArity {
                got: self.others.len() + 1,
                expected: model.n(),
            });
        }
        let decades = self.target.decades();
        if !(self.target.lo > 0.0)
            || decades + 1e-12 < MIN_FIT_DECADES
            || self.target.per_decade < MIN_POINTS_PER_DECADE
        {
            return Err(Error::GridTooCoarse {
                decades,
                per_decade: self.target.per_decade,
                min_decades: MIN_FIT_DECADES,
                min_per_decade: MIN_POINTS_PER_DECADE,
            });
        }
        Ok(())
    }

    /// All grid points as full momentum vectors, target coordinate `target_coord`.
    fn points(&self, target_coord: usize, n: usize) -> Vec<Vec<f64>> {
        let target_values = self.target.values();
        let other_values: Vec<Vec<f64>> = self.others.iter().map(CoordSamples::values).collect();

        // Odometer over the non-target coordinates, target innermost.
        let mut points = Vec::new();
        let mut idx = vec![0usize; other_values.len()];
        loop {
            for &ft in &target_values {
                let mut f = Vec::with_capacity(n);
                let mut oi = 0;
                for coord in 0..n {
                    if coord == target_coord {
                        f.push(ft);
                    } else {
                        f.push(other_values[oi][idx[oi]]);
                        oi += 1;
                    }
                }
                points.push(f);
            }
            // Advance the odometer.
            let mut carry = true;
            for (pos, i) in idx.iter_mut().enumerate().rev() {
                *i += 1;
                if *i < other_values[pos].len() {
                    carry = false;
                    break;
                }
                *i = 0;
            }
            if carry || other_values.is_empty() {
                break;
            }
        }
        points
    }
}

/// Graded-lexicographic monomial exponents over `m` variables up to `deg`.
fn monomials(m: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; m]];
    for d in 1..=deg {
        let mut stack: Vec<(Vec<u32>, u32)> = vec![(Vec::new(), d)];
        while let Some((prefix, rem)) = stack.pop() {
            if prefix.len() == m {
                if rem == 0 {
                    out.push(prefix);
                }
                continue;
            }
            if prefix.len() + 1 == m {
                let mut t = prefix.clone();
                t.push(rem);
                stack.push((t, 0));
            } else {
                // Push in reverse so lower leading exponents pop first.
                for e in (0..=rem).rev() {
                    let mut t = prefix.clone();
                    t.push(e);
                    stack.push((t, rem - e));
                }
            }
        }
    }
    out
}

/// Estimated singular decomposition of one factor's action.
///
/// `psi_coeffs` and `phi_coeffs` are polynomials on the fitted slice: pinned
/// coordinates enter through their pinned values, so `psi0` is the fitted
/// psi at the slice anchor (all varying coordinates at 0).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingularActionFit {
    pub factor_index: usize,
    pub psi0: f64,
    pub psi_coeffs: Poly,
    pub phi_coeffs: Poly,
    pub max_residual: f64,
    pub condition: f64,
    pub grid: FitGrid,
}

/// Least-squares fit of I_{n-k+i} against the basis
/// { F ln F * monomials(F), monomials(F) } on a log-spaced grid.
pub fn fit_singular_action(
    model: &SystemModel,
    factor_index: usize,
    grid: &FitGrid,
    cfg: &NumericConfig,
) -> Result<SingularActionFit> {
    grid.validate(model)?;
    let n = model.n();
    let target_coord = model.singular_coord(factor_index);

    // Varying coordinates: the target plus every Linear-sampled one.
    let mut varying = vec![target_coord];
    {
        let mut oi = 0;
        for coord in 0..n {
            if coord == target_coord {
                continue;
            }
            if grid.others[oi].varies() {
                varying.push(coord);
            }
            oi += 1;
        }
    }
    varying.sort_unstable();

    let monos = monomials(varying.len(), cfg.fit_degree);
    let b = monos.len();
    let points = grid.points(target_coord, n);
    let rows = points.len();

    let mono_eval = |exps: &[u32], f: &[f64]| -> f64 {
        let mut v = 1.0;
        for (j, &coord) in varying.iter().enumerate() {
            if exps[j] > 0 {
                v *= f[coord].powi(exps[j] as i32);
            }
        }
        v
    };

    let mut design = DMatrix::<f64>::zeros(rows, 2 * b);
    let mut y = DVector::<f64>::zeros(rows);
    for (r, f) in points.iter().enumerate() {
        let point = MomentumPoint::new(f.clone());
        model.check_regular(&point)?;
        let ft = f[target_coord];
        let log_part = ft * ft.ln();
        for (c, exps) in monos.iter().enumerate() {
            let m = mono_eval(exps, f);
            design[(r, c)] = log_part * m;
            design[(r, b + c)] = m;
        }
        y[r] = singular_action(model, factor_index, f, cfg)?;
    }

    let fit = solve_least_squares(&design, &y)?;
    let scale = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    if fit.max_residual > cfg.fit_tol * scale {
        return Err(Error::ResidualTooLarge {
            residual: fit.max_residual,
            tol: cfg.fit_tol * scale,
        });
    }

    // Embed the slice coefficients into full-arity exponent maps.
    let embed = |coeffs: &[f64]| -> Result<Poly> {
        Poly::from_terms(
            n,
            monos.iter().zip(coeffs.iter()).map(|(exps, &c)| {
                let mut full = vec![0u32; n];
                for (j, &coord) in varying.iter().enumerate() {
                    full[coord] = exps[j];
                }
                (full, c)
            }),
        )
    };
    let psi_coeffs = embed(&fit.coeffs[..b])?;
    let phi_coeffs = embed(&fit.coeffs[b..])?;
    let psi0 = fit.coeffs[0];
    if psi0.abs() <= cfg.tol_nonzero {
        return Err(Error::InvalidModel(format!(
            "fitted psi0 = {psi0:e} is not bounded away from zero"
        )));
    }

    Ok(SingularActionFit {
        factor_index,
        psi0,
        psi_coeffs,
        phi_coeffs,
        max_residual: fit.max_residual,
        condition: fit.condition,
        grid: grid.clone(),
    })
}

/// Independent psi(0) oracle from period quadratures: dI/dF = psi ln F +
/// (smooth) along the grid, and the period integral supplies dI/dF without
/// ever evaluating an action. Only meaningful for geometric factors.
pub fn psi0_from_periods(
    model: &SystemModel,
    factor_index: usize,
    grid: &LogRange,
    degree: u32,
    cfg: &NumericConfig,
) -> Result<f64> {
    let factor = &model.factors()[factor_index];
    let sign = factor.lobe_sign();
    let fs = grid.values();
    let rows = fs.len();
    let b = (degree + 1) as usize;

    let mut design = DMatrix::<f64>::zeros(rows, 2 * b);
    let mut y = DVector::<f64>::zeros(rows);
    for (r, &fc) in fs.iter().enumerate() {
        let period = period_integral(factor, factor.raw_level(fc), cfg)?;
        // I(F) = A(sign * F) so dI/dF = sign * T(sign * F).
        y[r] = sign * period;
        let lf = fc.ln();
        let mut pw = 1.0;
        for j in 0..b {
            design[(r, j)] = lf * pw;
            design[(r, b + j)] = pw;
            pw *= fc;
        }
    }
    let fit = solve_least_squares(&design, &y)?;
    Ok(fit.coeffs[0])
}
