//! Seeded Monte-Carlo paths of the finite banking network.
//!
//! Path `i` of a run with master seed `s` uses `s.child(i)` for everything it
//! draws, so a report depends only on `(config, s, n_paths)`.

mod estimate;
mod path;

pub use estimate::{correlation_defaults_vs_shocks, estimate, half_width, MCReport, MeasureEstimate, Z_95};
pub use path::{run_path, GraphKind, GroupStats, PathConfig, PathStats};
