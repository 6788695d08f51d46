//! Integrable model catalog.
//!
//! A [`SystemModel`] is a product of a center block (regular actions, on
//! which the Hamiltonian depends smoothly) and `k` one-degree-of-freedom
//! hyperbolic factors. The momentum coordinates are normalized so that each
//! singular coordinate vanishes exactly on its factor's singular fiber and
//! is positive on the selected family of regular fibers, i.e. the local base
//! space is the corner { F_{n-k+i} >= 0 }.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::{Error, Result};

/// Default bound on the total degree of Hamiltonian profiles.
pub const DEFAULT_DEGREE_BOUND: u32 = 8;

/// Which family of regular fibers a two-sided factor's action is computed on.
///
/// For the Duffing double well, `Inner` selects the right-well lobes inside
/// the figure-eight and `Outer` the cycles enclosing both wells. For the
/// pendulum, `Inner` selects libration and `Outer` rotation. The saddle chart
/// has a single positive-quadrant family and ignores the distinction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lobe {
    Inner,
    Outer,
}

/// Catalog of hyperbolic factor kinds together with their parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum FactorKind {
    /// Normal-form chart f = p q on the box [-epsilon, epsilon]^2.
    SaddleChart { epsilon: f64 },
    /// Double well H = p^2/2 + q^4/4 - q^2/2; momentum coordinate |E|
    /// measured from the figure-eight level E = 0.
    DuffingDoubleWell {},
    /// Pendulum H = p^2/2 - cos q; momentum coordinate |E - 1| measured from
    /// the separatrix level E = 1.
    Pendulum {},
    /// Closed-form action profile I(F) = psi(F) * F_i ln F_i + phi(F), with
    /// psi and phi polynomials in all n momentum coordinates.
    SyntheticProfile { psi: Poly, phi: Poly },
}

impl FactorKind {
    pub fn name(&self) -> &'static str {
        match self {
            FactorKind::SaddleChart { .. } => "saddle-chart",
            FactorKind::DuffingDoubleWell {} => "duffing-double-well",
            FactorKind::Pendulum {} => "pendulum",
            FactorKind::SyntheticProfile { .. } => "synthetic-profile",
        }
    }
}

/// One hyperbolic 1-DOF factor of the product decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicFactor {
    #[serde(flatten)]
    pub kind: FactorKind,
    pub lobe: Lobe,
}

impl HyperbolicFactor {
    pub fn new(kind: FactorKind, lobe: Lobe) -> Self {
        Self { kind, lobe }
    }

    /// Sign mapping the nonnegative corner coordinate F to the factor's raw
    /// level value f (energy-like, measured from the singular level). Inner
    /// lobes of two-sided factors live at negative raw values.
    pub fn lobe_sign(&self) -> f64 {
        match self.kind {
            FactorKind::SaddleChart { .. } | FactorKind::SyntheticProfile { .. } => 1.0,
            FactorKind::DuffingDoubleWell {} | FactorKind::Pendulum {} => match self.lobe {
                Lobe::Inner => -1.0,
                Lobe::Outer => 1.0,
            },
        }
    }

    /// Raw level value for a corner coordinate F >= 0.
    pub fn raw_level(&self, f_corner: f64) -> f64 {
        self.lobe_sign() * f_corner
    }

    /// Supremum of corner coordinates for which the selected family of
    /// regular fibers exists.
    pub fn corner_sup(&self) -> f64 {
        match self.kind {
            FactorKind::SaddleChart { epsilon } => epsilon * epsilon,
            FactorKind::DuffingDoubleWell {} => match self.lobe {
                Lobe::Inner => 0.25,
                Lobe::Outer => f64::INFINITY,
            },
            FactorKind::Pendulum {} => match self.lobe {
                Lobe::Inner => 2.0,
                Lobe::Outer => f64::INFINITY,
            },
            FactorKind::SyntheticProfile { .. } => f64::INFINITY,
        }
    }

    pub fn is_synthetic(&self) -> bool {
        matches!(self.kind, FactorKind::SyntheticProfile { .. })
    }
}

/// The regular block: `dim` action coordinates that coincide identically
/// with the first `dim` momentum coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterBlock {
    pub dim: usize,
}

/// A smooth Hamiltonian H(F_1, ..., F_n) represented as a polynomial so that
/// evaluation and all partial derivatives up to second order are exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HamiltonianProfile {
    poly: Poly,
}

impl HamiltonianProfile {
    pub fn new(poly: Poly) -> Self {
        Self { poly }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn eval(&self, f: &[f64]) -> f64 {
        self.poly.eval(f)
    }

    pub fn gradient(&self, f: &[f64]) -> Vec<f64> {
        self.poly.gradient(f)
    }

    pub fn second_partial(&self, i: usize, j: usize) -> Poly {
        self.poly.partial(i).partial(j)
    }
}

/// A point F = (F_1, ..., F_n) in momentum coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MomentumPoint {
    values: Vec<f64>,
}

impl MomentumPoint {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

impl From<Vec<f64>> for MomentumPoint {
    fn from(values: Vec<f64>) -> Self {
        Self::new(values)
    }
}

/// Classification of a momentum point relative to the corner domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    /// All singular coordinates strictly positive.
    Regular,
    /// Inside the corner with at least one singular coordinate exactly zero.
    Boundary,
    /// Some singular coordinate negative (or outside a domain box).
    Outside,
}

/// Wire format for a model description, matching the documented JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub label: String,
    pub center_dim: usize,
    pub factors: Vec<HyperbolicFactor>,
    pub hamiltonian: HamiltonianProfile,
}

/// A validated product model. Immutable after construction; all operations
/// on it are pure, so it can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelSpec", into = "ModelSpec")]
pub struct SystemModel {
    label: String,
    center: CenterBlock,
    factors: Vec<HyperbolicFactor>,
    hamiltonian: HamiltonianProfile,
}

impl TryFrom<ModelSpec> for SystemModel {
    type Error = Error;

    fn try_from(spec: ModelSpec) -> Result<Self> {
        build_model(spec)
    }
}

impl From<SystemModel> for ModelSpec {
    fn from(m: SystemModel) -> ModelSpec {
        ModelSpec {
            label: m.label,
            center_dim: m.center.dim,
            factors: m.factors,
            hamiltonian: m.hamiltonian,
        }
    }
}

impl SystemModel {
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Total number of degrees of freedom n.
    pub fn n(&self) -> usize {
        self.center.dim + self.factors.len()
    }

    /// Number of hyperbolic factors k (the corank).
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn center_dim(&self) -> usize {
        self.center.dim
    }

    pub fn factors(&self) -> &[HyperbolicFactor] {
        &self.factors
    }

    pub fn hamiltonian(&self) -> &HamiltonianProfile {
        &self.hamiltonian
    }

    /// Momentum-coordinate index owned by factor `i`.
    pub fn singular_coord(&self, factor_index: usize) -> usize {
        self.center.dim + factor_index
    }

    /// True if every factor has a closed-form action profile.
    pub fn all_synthetic(&self) -> bool {
        self.factors.iter().all(HyperbolicFactor::is_synthetic)
    }

    /// Classify a point relative to the corner { F_{n-k+i} >= 0 }.
    pub fn classify(&self, point: &MomentumPoint) -> PointClass {
        if point.dim() != self.n() {
            return PointClass::Outside;
        }
        let mut boundary = false;
        for i in 0..self.k() {
            let v = point.values()[self.singular_coord(i)];
            if v < 0.0 {
                return PointClass::Outside;
            }
            if v == 0.0 {
                boundary = true;
            }
        }
        if boundary {
            PointClass::Boundary
        } else {
            PointClass::Regular
        }
    }

    /// Error unless the point is regular (all singular coordinates > 0).
    pub fn check_regular(&self, point: &MomentumPoint) -> Result<()> {
        if point.dim() != self.n() {
            return Err(Error::PointArity {
                got: point.dim(),
                expected: self.n(),
            });
        }
        for i in 0..self.k() {
            let coord = self.singular_coord(i);
            let v = point.values()[coord];
            if v < 0.0 {
                return Err(Error::OutsideCorner { coord, value: v });
            }
            if v == 0.0 {
                return Err(Error::BoundaryPoint { coord });
            }
        }
        Ok(())
    }
}

/// Build and validate a [`SystemModel`] with the default degree bound.
pub fn build_model(spec: ModelSpec) -> Result<SystemModel> {
    build_model_with_bound(spec, DEFAULT_DEGREE_BOUND)
}

/// Build and validate a [`SystemModel`], bounding the Hamiltonian degree.
pub fn build_model_with_bound(spec: ModelSpec, degree_bound: u32) -> Result<SystemModel> {
    let k = spec.factors.len();
    if k == 0 {
        return Err(Error::NoFactors);
    }
    let n = spec.center_dim + k;

    let got = spec.hamiltonian.poly().total_degree();
    if got > degree_bound {
        return Err(Error::DegreeBound {
            got,
            bound: degree_bound,
        });
    }
    if spec.hamiltonian.poly().nvars() != n {
        return Err(Error::ExponentArity {
            got: spec.hamiltonian.poly().nvars(),
            expected: n,
        });
    }

    for factor in &spec.factors {
        match &factor.kind {
            FactorKind::SaddleChart { epsilon } => {
                if !(*epsilon > 0.0) || !epsilon.is_finite() {
                    return Err(Error::NonPositiveHalfWidth(*epsilon));
                }
            }
            FactorKind::SyntheticProfile { psi, phi } => {
                if psi.nvars() != n {
                    return Err(Error::ExponentArity {
                        got: psi.nvars(),
                        expected: n,
                    });
                }
                if phi.nvars() != n {
                    return Err(Error::ExponentArity {
                        got: phi.nvars(),
                        expected: n,
                    });
                }
                if psi.at_origin() == 0.0 {
                    return Err(Error::PsiVanishesAtOrigin);
                }
            }
            FactorKind::DuffingDoubleWell {} | FactorKind::Pendulum {} => {}
        }
    }

    Ok(SystemModel {
        label: spec.label,
        center: CenterBlock {
            dim: spec.center_dim,
        },
        factors: spec.factors,
        hamiltonian: spec.hamiltonian,
    })
}

/// Outcome of one scalar nondegeneracy check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub factor_index: usize,
    pub value: f64,
    pub pass: bool,
}

/// Center-block Hessian check; vacuous when the singularity has a fixed
/// point (k = n, no center block).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum CenterCheck {
    Vacuous,
    Checked { det: f64, pass: bool },
}

/// Per-condition validation report with witnesses. Failures are report
/// entries, never errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    /// dH/dF_{n-k+i}(0) != 0 for every factor: the transversal derivatives
    /// of H along the singular coordinates must not vanish at the origin.
    pub transverse: Vec<ConditionEntry>,
    /// det of the center-block Hessian of H at the origin != 0.
    pub center: CenterCheck,
    /// Momentum normalization: each singular coordinate vanishes exactly on
    /// its factor's singular fiber. True by construction for catalog kinds.
    pub normalization: bool,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.transverse.iter().all(|e| e.pass)
            && match self.center {
                CenterCheck::Vacuous => true,
                CenterCheck::Checked { pass, .. } => pass,
            }
            && self.normalization
    }
}

/// Evaluate the model hypotheses exactly on the polynomial profile.
///
/// "Nonzero" means |value| > `tol_nonzero`.
pub fn validate_conditions(model: &SystemModel, tol_nonzero: f64) -> ConditionReport {
    let n = model.n();
    let m = model.center_dim();
    let origin = vec![0.0; n];
    let grad = model.hamiltonian.gradient(&origin);

    let transverse = (0..model.k())
        .map(|i| {
            let value = grad[model.singular_coord(i)];
            ConditionEntry {
                factor_index: i,
                value,
                pass: value.abs() > tol_nonzero,
            }
        })
        .collect();

    let center = if m == 0 {
        CenterCheck::Vacuous
    } else {
        let mut hess = DMatrix::<f64>::zeros(m, m);
        for s in 0..m {
            for t in 0..m {
                hess[(s, t)] = model.hamiltonian.second_partial(s, t).eval(&origin);
            }
        }
        let det = hess.lu().determinant();
        CenterCheck::Checked {
            det,
            pass: det.abs() > tol_nonzero,
        }
    };

    ConditionReport {
        transverse,
        center,
        normalization: true,
    }
}

/// A sampler-ready description of the intersection of the corner with a box.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CornerDomain {
    pub center_dim: usize,
    /// Per-coordinate closed bounds [lo, hi]; singular coordinates have
    /// lo >= 0 and their interior is open at 0.
    pub bounds: Vec<(f64, f64)>,
}

impl CornerDomain {
    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    /// Regular-stratum membership test.
    pub fn classify(&self, point: &MomentumPoint) -> PointClass {
        if point.dim() != self.bounds.len() {
            return PointClass::Outside;
        }
        let mut boundary = false;
        for (i, (&v, &(lo, hi))) in point.values().iter().zip(self.bounds.iter()).enumerate() {
            if v < lo || v > hi {
                return PointClass::Outside;
            }
            if i >= self.center_dim && v == 0.0 {
                boundary = true;
            }
        }
        if boundary {
            PointClass::Boundary
        } else {
            PointClass::Regular
        }
    }
}

/// Intersect the corner domain with a per-coordinate box.
///
/// Singular-coordinate lower bounds are clamped to 0; upper bounds must be
/// positive and stay within the factor's admissible range.
pub fn corner_domain(model: &SystemModel, bounds: &[(f64, f64)]) -> Result<CornerDomain> {
    if bounds.len() != model.n() {
        return Err(Error::PointArity {
            got: bounds.len(),
            expected: model.n(),
        });
    }
    let mut out = Vec::with_capacity(bounds.len());
    for (coord, &(lo, hi)) in bounds.iter().enumerate() {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::EmptyBox { coord, lo, hi });
        }
        if coord >= model.center_dim() {
            if !(hi > 0.0) {
                return Err(Error::EmptyBox { coord, lo, hi });
            }
            let factor = &model.factors()[coord - model.center_dim()];
            let sup = factor.corner_sup();
            if hi >= sup {
                return Err(Error::LevelOutOfRange {
                    f: hi,
                    lo: 0.0,
                    hi: sup,
                });
            }
            out.push((lo.max(0.0), hi));
        } else {
            out.push((lo, hi));
        }
    }
    Ok(CornerDomain {
        center_dim: model.center_dim(),
        bounds: out,
    })
}

pub mod catalog {
    //! Built-in demonstration models used throughout the test and
    //! verification suites.

    use super::*;

    fn poly(nvars: usize, terms: &[(&[u32], f64)]) -> Poly {
        Poly::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), *c)),
        )
        .expect("catalog polynomials are well-formed")
    }

    fn synthetic_log_factor(n: usize, psi: Poly, phi: Poly) -> HyperbolicFactor {
        debug_assert_eq!(psi.nvars(), n);
        HyperbolicFactor::new(FactorKind::SyntheticProfile { psi, phi }, Lobe::Outer)
    }

    /// Corank-1 with a decoupled closed-form action I2 = -F2 ln F2 + F2 and
    /// H = F1^2/2 + F2. Every quantity in the determinant chain has a closed
    /// form, which makes this the primary oracle model.
    pub fn decoupled_corank1() -> SystemModel {
        let psi = poly(2, &[(&[0, 0], -1.0)]);
        let phi = poly(2, &[(&[0, 1], 1.0)]);
        build_model(ModelSpec {
            label: "decoupled-corank1".into(),
            center_dim: 1,
            factors: vec![synthetic_log_factor(2, psi, phi)],
            hamiltonian: HamiltonianProfile::new(poly(2, &[(&[2, 0], 0.5), (&[0, 1], 1.0)])),
        })
        .expect("catalog model is valid")
    }

    /// Corank-2 tensor of two decoupled log factors, H = F1^2/2 + F2 + F3.
    pub fn decoupled_corank2() -> SystemModel {
        let psi2 = poly(3, &[(&[0, 0, 0], -1.0)]);
        let phi2 = poly(3, &[(&[0, 1, 0], 1.0)]);
        let psi3 = poly(3, &[(&[0, 0, 0], -1.0)]);
        let phi3 = poly(3, &[(&[0, 0, 1], 1.0)]);
        build_model(ModelSpec {
            label: "decoupled-corank2".into(),
            center_dim: 1,
            factors: vec![
                synthetic_log_factor(3, psi2, phi2),
                synthetic_log_factor(3, psi3, phi3),
            ],
            hamiltonian: HamiltonianProfile::new(poly(
                3,
                &[(&[2, 0, 0], 0.5), (&[0, 1, 0], 1.0), (&[0, 0, 1], 1.0)],
            )),
        })
        .expect("catalog model is valid")
    }

    /// Corank-1 with a geometric saddle chart (epsilon = 1) and H coupling
    /// the center and singular coordinates through a cross term.
    pub fn coupled_saddle() -> SystemModel {
        build_model(ModelSpec {
            label: "coupled-saddle".into(),
            center_dim: 1,
            factors: vec![HyperbolicFactor::new(
                FactorKind::SaddleChart { epsilon: 1.0 },
                Lobe::Outer,
            )],
            hamiltonian: HamiltonianProfile::new(poly(
                2,
                &[(&[2, 0], 0.5), (&[0, 1], 1.0), (&[1, 1], 0.5)],
            )),
        })
        .expect("catalog model is valid")
    }

    /// Corank-1 with a geometric saddle chart (epsilon = 1), decoupled
    /// Hamiltonian H = F1^2/2 + F2.
    pub fn saddle_corank1() -> SystemModel {
        build_model(ModelSpec {
            label: "saddle-corank1".into(),
            center_dim: 1,
            factors: vec![HyperbolicFactor::new(
                FactorKind::SaddleChart { epsilon: 1.0 },
                Lobe::Outer,
            )],
            hamiltonian: HamiltonianProfile::new(poly(2, &[(&[2, 0], 0.5), (&[0, 1], 1.0)])),
        })
        .expect("catalog model is valid")
    }

    /// Corank-1 synthetic model with a coupled profile psi = -(1 + F1^2/4):
    /// the singular action depends on the center coordinate.
    pub fn synthetic_coupled_psi() -> SystemModel {
        let psi = poly(2, &[(&[0, 0], -1.0), (&[2, 0], -0.25)]);
        let phi = poly(2, &[(&[0, 1], 1.0)]);
        build_model(ModelSpec {
            label: "synthetic-coupled-psi".into(),
            center_dim: 1,
            factors: vec![synthetic_log_factor(2, psi, phi)],
            hamiltonian: HamiltonianProfile::new(poly(2, &[(&[2, 0], 0.5), (&[0, 1], 1.0)])),
        })
        .expect("catalog model is valid")
    }

    /// Fixed-point-type model (k = n = 1): a single Duffing factor on the
    /// selected lobe, H equal to the singular coordinate.
    pub fn duffing_fixed_point(lobe: Lobe) -> SystemModel {
        let label = match lobe {
            Lobe::Inner => "duffing-well",
            Lobe::Outer => "duffing-outer",
        };
        build_model(ModelSpec {
            label: label.into(),
            center_dim: 0,
            factors: vec![HyperbolicFactor::new(FactorKind::DuffingDoubleWell {}, lobe)],
            hamiltonian: HamiltonianProfile::new(poly(1, &[(&[1], 1.0)])),
        })
        .expect("catalog model is valid")
    }

    /// Fixed-point-type pendulum model (k = n = 1) on the selected lobe.
    pub fn pendulum_fixed_point(lobe: Lobe) -> SystemModel {
        let label = match lobe {
            Lobe::Inner => "pendulum-libration",
            Lobe::Outer => "pendulum-rotation",
        };
        build_model(ModelSpec {
            label: label.into(),
            center_dim: 0,
            factors: vec![HyperbolicFactor::new(FactorKind::Pendulum {}, lobe)],
            hamiltonian: HamiltonianProfile::new(poly(1, &[(&[1], 1.0)])),
        })
        .expect("catalog model is valid")
    }

    /// Control model violating the transversal-derivative condition:
    /// H = F1^2/2 + F2^2 has dH/dF2(0) = 0.
    pub fn degenerate_transverse() -> SystemModel {
        let psi = poly(2, &[(&[0, 0], -1.0)]);
        let phi = poly(2, &[(&[0, 1], 1.0)]);
        build_model(ModelSpec {
            label: "degenerate-transverse".into(),
            center_dim: 1,
            factors: vec![synthetic_log_factor(2, psi, phi)],
            hamiltonian: HamiltonianProfile::new(poly(2, &[(&[2, 0], 0.5), (&[0, 2], 1.0)])),
        })
        .expect("catalog model is valid")
    }

    /// Control model violating the center-block condition:
    /// H = F1^3/3 + F2 has d2H/dF1^2(0) = 0.
    pub fn degenerate_center() -> SystemModel {
        let psi = poly(2, &[(&[0, 0], -1.0)]);
        let phi = poly(2, &[(&[0, 1], 1.0)]);
        build_model(ModelSpec {
            label: "degenerate-center".into(),
            center_dim: 1,
            factors: vec![synthetic_log_factor(2, psi, phi)],
            hamiltonian: HamiltonianProfile::new(poly(
                2,
                &[(&[3, 0], 1.0 / 3.0), (&[0, 1], 1.0)],
            )),
        })
        .expect("catalog model is valid")
    }

    /// Names and one-line descriptions of every built-in model.
    pub const BUILTIN_NAMES: &[(&str, &str)] = &[
        (
            "decoupled-corank1",
            "center dim 1, one closed-form log factor, H = F1^2/2 + F2 (full closed-form chain)",
        ),
        (
            "decoupled-corank2",
            "center dim 1, two closed-form log factors, H = F1^2/2 + F2 + F3",
        ),
        (
            "saddle-corank1",
            "center dim 1, geometric saddle chart (eps = 1), H = F1^2/2 + F2",
        ),
        (
            "coupled-saddle",
            "center dim 1, geometric saddle chart (eps = 1), H = F1^2/2 + F2 + F1 F2/2",
        ),
        (
            "synthetic-coupled-psi",
            "center dim 1, closed-form factor with psi = -(1 + F1^2/4), H = F1^2/2 + F2",
        ),
        (
            "duffing-well",
            "fixed-point type (n = k = 1), Duffing inner lobe, H = F1",
        ),
        (
            "duffing-outer",
            "fixed-point type (n = k = 1), Duffing outer family, H = F1",
        ),
        (
            "pendulum-libration",
            "fixed-point type (n = k = 1), pendulum libration, H = F1",
        ),
        (
            "pendulum-rotation",
            "fixed-point type (n = k = 1), pendulum rotation, H = F1",
        ),
        (
            "degenerate-transverse",
            "control: dH/dF2(0) = 0, transversal-derivative hypothesis fails",
        ),
        (
            "degenerate-center",
            "control: d2H/dF1^2(0) = 0, center-block hypothesis fails",
        ),
    ];

    /// Look up a built-in model by label.
    pub fn builtin(name: &str) -> Option<SystemModel> {
        match name {
            "decoupled-corank1" => Some(decoupled_corank1()),
            "decoupled-corank2" => Some(decoupled_corank2()),
            "saddle-corank1" => Some(saddle_corank1()),
            "coupled-saddle" => Some(coupled_saddle()),
            "synthetic-coupled-psi" => Some(synthetic_coupled_psi()),
            "duffing-well" => Some(duffing_fixed_point(Lobe::Inner)),
            "duffing-outer" => Some(duffing_fixed_point(Lobe::Outer)),
            "pendulum-libration" => Some(pendulum_fixed_point(Lobe::Inner)),
            "pendulum-rotation" => Some(pendulum_fixed_point(Lobe::Outer)),
            "degenerate-transverse" => Some(degenerate_transverse()),
            "degenerate-center" => Some(degenerate_center()),
            _ => None,
        }
    }
}
