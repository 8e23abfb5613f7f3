//! Two-group banking network: balance sheets, shocks, clearing and limits.
//!
//! Group 1 banks lend `yc` to group 2 and borrow only inside their group and
//! from the big bank; group 2 banks borrow from both groups. The limit
//! aggregates `x1, x2` are the claims a typical bank receives from its own
//! group, and `x1 + mu1 x2` is the total a group 1 bank receives.

mod clearing;
mod closed_form;
mod limit;
mod measures;
mod params;
pub mod presets;
mod regime;

pub use clearing::{
    finite_clearing_map, node_investments, sample_shocks, ClearingMap, ShockDraw, ShockModel,
};
pub use closed_form::{closed_form_g1, closed_form_g2, g1_closed_form, g2_closed_form, CaseTag, GroupSolution};
pub use limit::{coupling, limit_aggregates_numeric, limit_residual, LimitEquation};
pub use measures::{measures, solve_limit, theory_single_group, LimitSolution, Measures};
pub use params::{portfolio, FinanceParams, ShockReturns, Taxes};
pub use regime::{classify_regime, RegimeReport, Sign};
