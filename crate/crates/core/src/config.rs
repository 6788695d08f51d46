//! Numerical tolerances and step sizes shared across the pipeline.

use serde::{Deserialize, Serialize};

/// Tunable tolerances and difference steps. Every field has a default that
/// the test suite is calibrated against; batch runs may override them
/// through the run configuration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericConfig {
    /// Threshold below which an exactly-evaluated quantity counts as zero.
    pub tol_nonzero: f64,
    /// Relative tolerance for loop-action and period quadratures.
    pub action_tol: f64,
    /// Absolute floor added to quadrature convergence checks.
    pub quad_abs_floor: f64,
    /// Step in u = ln F for differencing along singular coordinates.
    pub h_log_step: f64,
    /// Relative step for differencing along smooth coordinates.
    pub h_rel_step: f64,
    /// Points with a singular coordinate below this floor are refused by the
    /// difference calculus: double precision cannot separate ln F levels there.
    pub f_floor: f64,
    /// Maximum admissible residual for singular-action fits.
    pub fit_tol: f64,
    /// Total degree of the smooth polynomial blocks in singular-action fits.
    pub fit_degree: u32,
    /// Relative tail spread below which a scaled-determinant sequence counts
    /// as stabilized.
    pub g_tol: f64,
    /// Relative bound on the antisymmetric part of the action-space Hessian.
    pub sym_tol: f64,
    /// Tolerance for the action/period quadrature consistency check.
    pub cross_tol: f64,
    /// Tolerance on level-curve vertices.
    pub trace_tol: f64,
    /// Maximum arc-length step for level-curve tracing.
    pub max_step: f64,
    /// Tolerance for turning-point location.
    pub root_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            tol_nonzero: 1e-9,
            action_tol: 1e-12,
            quad_abs_floor: 1e-15,
            h_log_step: 1e-4,
            h_rel_step: 1e-6,
            f_floor: 1e-12,
            fit_tol: 1e-6,
            fit_degree: 2,
            g_tol: 0.02,
            sym_tol: 1e-4,
            cross_tol: 1e-4,
            trace_tol: 1e-10,
            max_step: 1e-2,
            root_tol: 1e-13,
        }
    }
}

impl NumericConfig {
    /// All entries must be positive for the configuration to make sense.
    pub fn validate(&self) -> crate::Result<()> {
        let fields = [
            ("tol_nonzero", self.tol_nonzero),
            ("action_tol", self.action_tol),
            ("quad_abs_floor", self.quad_abs_floor),
            ("h_log_step", self.h_log_step),
            ("h_rel_step", self.h_rel_step),
            ("f_floor", self.f_floor),
            ("fit_tol", self.fit_tol),
            ("g_tol", self.g_tol),
            ("sym_tol", self.sym_tol),
            ("cross_tol", self.cross_tol),
            ("trace_tol", self.trace_tol),
            ("max_step", self.max_step),
            ("root_tol", self.root_tol),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(crate::Error::InvalidModel(format!(
                    "tolerance `{name}` must be a positive finite number, got {value}"
                )));
            }
        }
        Ok(())
    }
}
