//! Discretized oscillatory operator with phase ⟨x, Aξ⟩ + t|x+ξ|, its
//! norm-growth sweeps, kernel row-sum diagnostics, sublevel-set measures,
//! and mixed-Hessian fold geometry.

pub mod hessian;
pub mod kernel;
pub mod operator;
pub mod sublevel;

pub use hessian::{fold_check, grad_det_xx, mixed_hessian, FoldKind, FoldReport, MixedHessian};
pub use kernel::{circle_kernel_row_sum, extreme_kernel_row_sum, CircleKernelConfig, ExtremeConfig};
pub use operator::{
    lambda_sweep, DiscretizedOperator, OpNormParams, OpNormResult, SweepConfig, SweepPoint,
    SweepReport,
};
pub use sublevel::{sublevel_measure_grid, sublevel_measure_mc, SublevelSpec};
