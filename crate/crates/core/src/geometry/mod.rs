//! Phase-plane geometry and quadrature for the 1-DOF hyperbolic factors:
//! level-curve tracing, turning points, loop actions and periods through
//! singular-endpoint quadrature, and AGM elliptic integrals as the
//! high-precision oracle for pendulum actions.

pub mod actions;
pub mod elliptic;
pub mod level_curve;
pub mod plane;
pub mod roots;
pub mod tanh_sinh;

pub use actions::{
    loop_action_integral, pendulum_action_agm, pendulum_period_agm, period_integral,
    potential_well_action, potential_well_period, separatrix_area,
};
pub use elliptic::{elliptic_e, elliptic_k, elliptic_ke};
pub use level_curve::{
    trace_level_curve, trace_separatrix, turning_points, Branch, LevelCurve, TurningPointSet,
};
pub use plane::PlaneKind;
pub use roots::bracketed_root;
pub use tanh_sinh::{integrate_tanh_sinh, tanh_sinh, Quadrature};
