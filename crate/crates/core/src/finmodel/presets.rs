//! Parameter sets of the reference experiments.

use super::params::{FinanceParams, Taxes};

/// Single-group Monte-Carlo baseline: `Omega2 = 12.5`, `ybar2 = 35`, `v2 = 7`.
/// Group 1 mirrors group 2 and plays no role.
pub fn mc_baseline() -> FinanceParams {
    let y2 = 35.0 / 1.12;
    FinanceParams {
        k0: 12.5 - y2 * 0.001,
        y1: y2,
        y2,
        yc: 0.0,
        r1: 0.1,
        r2: 0.12,
        u: 0.2,
        d: -0.6,
        w: 0.2,
        dc: 0.0,
        taxes: Taxes::Proportional { kappa: 0.56 },
        p_sb1: 0.001,
        p_sb2: 0.001,
        gamma: 0.5,
        kb: 0.0,
    }
}

fn sweep_base(u: f64, d: f64, kappa: f64) -> FinanceParams {
    let dc = 0.1;
    FinanceParams {
        k0: 40.0 / (1.0 + u - dc),
        y1: 50.0 / 1.1,
        y2: 50.0 / 1.12,
        yc: 0.0,
        r1: 0.1,
        r2: 0.12,
        u,
        d,
        w: 0.1,
        dc,
        taxes: Taxes::Proportional { kappa },
        p_sb1: 0.01,
        p_sb2: 0.2,
        gamma: 0.5,
        kb: 0.0,
    }
}

/// Small-shock inter-lending sweeps, panels `'a'..='d'`.
pub fn small_shock(panel: char) -> Option<FinanceParams> {
    Some(match panel {
        'a' => sweep_base(0.5, -0.35, 0.175),
        'b' => sweep_base(0.5, -0.15, 0.245),
        'c' => sweep_base(0.5, -0.2, 0.35),
        'd' => sweep_base(0.5, -0.01, 0.77),
        _ => return None,
    })
}

/// Large-shock inter-lending sweeps, panels `'a'..='d'`.
pub fn large_shock(panel: char) -> Option<FinanceParams> {
    Some(match panel {
        'a' => sweep_base(0.7, -0.7, 0.32),
        'b' => sweep_base(0.6, -0.7, 0.3),
        'c' => sweep_base(0.6, -0.7, 0.375),
        'd' => sweep_base(0.4, -0.7, 0.65),
        _ => return None,
    })
}
