//! Fixed-point machinery shared by the finite networks and their limits.

mod contraction;
mod iterate;
mod limit;
mod lln;

pub use contraction::{contraction_model_a, contraction_model_b, ContractionReport};
pub use iterate::{iterate_fp, picard, FPConfig, FPResult};
pub use limit::{solve_limit_system, LIMIT_TOL};
pub use lln::{lln_diagnostic, zeta, zeta_limit, LlnRow, Multiplier};
