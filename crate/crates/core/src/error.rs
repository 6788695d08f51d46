//! Crate-wide error type.

use thiserror::Error;

/// Errors produced anywhere in the pipeline, from model construction to
/// path scans.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // --- model construction / validation ---
    #[error("unknown factor kind `{0}`")]
    UnknownFactorKind(String),
    #[error("saddle chart half-width must be positive, got {0}")]
    NonPositiveHalfWidth(f64),
    #[error("synthetic profile has psi(0,...,0) = 0; the leading coefficient must not vanish")]
    PsiVanishesAtOrigin,
    #[error("hamiltonian total degree {got} exceeds the configured bound {bound}")]
    DegreeBound { got: u32, bound: u32 },
    #[error("exponent tuple has {got} entries, expected {expected}")]
    ExponentArity { got: usize, expected: usize },
    #[error("model must contain at least one hyperbolic factor")]
    NoFactors,
    #[error("{0}")]
    InvalidModel(String),

    // --- corner domain / points ---
    #[error("box is empty or inverted in coordinate {coord}: [{lo}, {hi}]")]
    EmptyBox { coord: usize, lo: f64, hi: f64 },
    #[error("momentum point has {got} coordinates, model has {expected}")]
    PointArity { got: usize, expected: usize },
    #[error("point lies outside the corner domain: F_{coord} = {value} < 0")]
    OutsideCorner { coord: usize, value: f64 },
    #[error("point lies on the corner boundary (F_{coord} = 0); use the continuity extension")]
    BoundaryPoint { coord: usize },

    // --- geometry ---
    #[error("level value {f} outside the admissible range ({lo}, {hi}) for this factor")]
    LevelOutOfRange { f: f64, lo: f64, hi: f64 },
    #[error("level set at f = {0} degenerates to equilibrium points")]
    DegenerateLevel(f64),
    #[error("factor kind has no phase-plane realization")]
    NoPhasePlane,
    #[error("f = {f} is on or beyond the separatrix for the selected lobe")]
    WrongLobeSide { f: f64 },
    #[error(
        "quadrature did not converge after {levels} levels (last two estimates {prev} and {last})"
    )]
    QuadratureDivergence { levels: usize, prev: f64, last: f64 },
    #[error("elliptic integral K requires modulus k in [0, 1), got {0}")]
    EllipticModulus(f64),
    #[error("root not bracketed on [{a}, {b}]")]
    RootNotBracketed { a: f64, b: f64 },

    // --- differential calculus ---
    #[error("jacobian of the action map is singular at the requested point (det = {det})")]
    SingularJacobian { det: f64 },
    #[error("difference step exits the admissible domain in coordinate {coord} after {retries} retries")]
    StepExitsDomain { coord: usize, retries: usize },
    #[error("F_{coord} = {value} lies below the floor {floor}; log-step differencing is unreliable there")]
    BelowFloor { coord: usize, value: f64, floor: f64 },

    // --- fitting / scans ---
    #[error("fit basis is rank deficient on this grid (condition number {cond:.3e})")]
    RankDeficient { cond: f64 },
    #[error("fit residual {residual:.3e} exceeds the tolerance {tol:.3e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("grid spans {decades:.2} decades with {per_decade} points per decade; need >= {min_decades} decades and >= {min_per_decade} per decade")]
    GridTooCoarse {
        decades: f64,
        per_decade: usize,
        min_decades: f64,
        min_per_decade: usize,
    },
    #[error("singular path must have strictly decreasing positive t samples")]
    BadPath,
    #[error("{0}")]
    EmptyRecord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
