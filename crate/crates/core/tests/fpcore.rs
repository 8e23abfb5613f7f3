mod common;

use clearnet::fpcore::*;
use clearnet::netgraph::{EtaMode, Group, ModelParams, WeightModel};
use clearnet::{Error, Seed};
use proptest::prelude::*;

fn tight() -> FPConfig {
    FPConfig { tol_delta: 1e-13, ..Default::default() }
}

#[test]
fn tiny_networks_match_picard() {
    for s in 0..20 {
        let net = common::tiny_net(s);
        let oracle = net.picard(1e-13);
        let r = iterate_fp(net.dense_map(), &net.ybar, &tight()).unwrap();
        assert!(r.converged);
        for (a, b) in r.solution.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "seed {s}: {a} vs {b}");
        }
    }
}

#[test]
fn library_picard_matches_oracle() {
    let net = common::tiny_net(3);
    let r = picard(net.dense_map(), &net.ybar, 1e-13, 1_000_000);
    assert!(r.converged);
    let oracle = net.picard(1e-13);
    assert!(r.solution.iter().zip(&oracle).all(|(a, b)| (a - b).abs() < 1e-10));
}

#[test]
fn picard_from_top_is_monotone() {
    let net = common::tiny_net(11);
    let f = net.dense_map();
    let mut x = net.ybar.clone();
    let mut fx = vec![0.0; 6];
    for _ in 0..200 {
        f(&x, &mut fx);
        assert!(fx.iter().zip(&x).all(|(a, b)| *a <= *b + 1e-15));
        x.copy_from_slice(&fx);
    }
}

#[test]
fn box_violation_is_an_error() {
    let r = iterate_fp(|_, out: &mut [f64]| out.fill(3.0), &[1.0, 1.0], &FPConfig::default());
    assert!(matches!(r, Err(Error::BoxViolation { index: 0, .. })));
}

#[test]
fn iteration_cap_reports_non_convergence() {
    let cfg = FPConfig { step_eps: 0.01, tol_delta: 1e-14, window_k: 5, max_iters: 50 };
    let r = iterate_fp(|x, out: &mut [f64]| out[0] = 0.5 * x[0], &[1.0], &cfg).unwrap();
    assert!(!r.converged);
    assert_eq!(r.iterations, 50);
}

#[test]
fn bad_config_rejected() {
    for cfg in [
        FPConfig { step_eps: 0.0, ..Default::default() },
        FPConfig { step_eps: 1.5, ..Default::default() },
        FPConfig { tol_delta: 0.0, ..Default::default() },
        FPConfig { window_k: 0, ..Default::default() },
    ] {
        assert!(matches!(cfg.validate(), Err(Error::InvalidParams(_))));
    }
}

#[test]
fn limit_solver_reproduces_single_group_aggregate() {
    let (kd, ku, v, ybar, w, q) = (5.0, 15.0, 7.0, 35.0, 0.2, 0.999);
    let map = |x: &[f64]| {
        let pay = |k: f64| (k + x[0] - v).clamp(0.0, ybar);
        vec![q * (w * pay(kd) + (1.0 - w) * pay(ku))]
    };
    let x = solve_limit_system(map, &[q * ybar], LIMIT_TOL).unwrap();
    assert!((x[0] - 34.45688577855536).abs() < 1e-10);
}

#[test]
fn limit_solver_handles_unit_slope_plateaus() {
    // f(x) = min(x, 1) has every point of [0, 1] fixed; the greatest is returned
    let x = solve_limit_system(|x| vec![x[0].min(1.0), 0.5 * x[1] + 0.25], &[1.0, 1.0], 1e-12).unwrap();
    assert_eq!(x[0], 1.0);
    assert!((x[1] - 0.5).abs() < 1e-11);
}

#[test]
fn limit_solver_rejects_dimensions() {
    assert!(solve_limit_system(|x| x.to_vec(), &[1.0; 4], 1e-12).is_err());
    assert!(solve_limit_system(|x| x.to_vec(), &[], 1e-12).is_err());
}

#[test]
fn single_group_rho_is_one_for_any_pd() {
    for s in [0.0, 0.001, 0.3, 1.0] {
        let r = contraction_model_a(&ModelParams::single_group(0.05, s), 1.0, 0.0, 0.0).unwrap();
        assert!((r.rho - 1.0).abs() < 1e-12);
    }
}

#[test]
fn model_b_full_lambda_stays_below_one_for_equal_groups() {
    let p = ModelParams { p_sb1: 0.2, p_sb2: 0.2, weight_model: WeightModel::GroupSplit, ..Default::default() };
    let r = contraction_model_b(&p, 1.0, 0.0, 0.0).unwrap();
    assert!((r.rho - 1.0).abs() < 1e-12 && r.satisfied_b4);
}

#[test]
fn lln_uniform_multiplier_mean() {
    assert_eq!(Multiplier::Uniform { lo: 0.0, hi: 1.0 }.mean(), 0.5);
    assert_eq!(Multiplier::Bernoulli(0.3).mean(), 0.3);
    assert!(Multiplier::Uniform { lo: 1.0, hi: 0.0 }.validate().is_err());
}

#[test]
fn lln_limit_matches_formula() {
    let p = ModelParams { gamma: 0.3, p1: 0.2, p2: 0.1, pc1: 0.05, pc2: 0.1, p_sb1: 0.1, p_sb2: 0.2, ..Default::default() };
    let gp1 = 0.3 * 0.2 + 0.7 * 0.05;
    assert!((zeta_limit(&p, Group::G1, 0.5) - 0.5 * 0.3 * 0.9 / gp1).abs() < 1e-15);
}

#[test]
fn lln_deviation_shrinks_in_most_families() {
    let p = ModelParams { eta_mode: EtaMode::Bernoulli, p_sb1: 0.1, p_sb2: 0.1, ..Default::default() };
    let m = Multiplier::Uniform { lo: 0.0, hi: 1.0 };
    let mut wins = 0;
    for f in 0..6 {
        let rows = lln_diagnostic(&p, &[500, 2000], 16, m, Seed(500 + f)).unwrap();
        let dev = |n: usize| rows.iter().filter(|r| r.n == n).map(|r| r.deviation).sum::<f64>();
        wins += usize::from(dev(2000) < dev(500));
    }
    assert!(wins >= 5, "{wins} of 6");
}

fn monotone_map(a: f64, b: f64, c: f64) -> impl Fn(&[f64], &mut [f64]) {
    move |x: &[f64], out: &mut [f64]| {
        out[0] = (a + 0.3 * x[1] + 0.2 * x[0]).clamp(0.0, 4.0);
        out[1] = (b + 0.5 * x[0] - c).clamp(0.0, 3.0);
        out[2] = (0.4 * x[0] + 0.4 * x[1] - c).clamp(0.0, 2.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn undamped_iteration_agrees_with_picard(a in 0.0f64..5.0, b in 0.0f64..5.0, c in 0.0f64..3.0) {
        let upper = [4.0, 3.0, 2.0];
        let cfg = FPConfig { step_eps: 1.0, tol_delta: 1e-13, ..Default::default() };
        let r = iterate_fp(monotone_map(a, b, c), &upper, &cfg).unwrap();
        let p = picard(monotone_map(a, b, c), &upper, 1e-13, 1_000_000);
        prop_assert!(r.converged && p.converged);
        for (x, y) in r.solution.iter().zip(&p.solution) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn symmetric_model_a_rho_is_one(p in 0.01f64..1.0, s in 0.0f64..1.0) {
        let params = ModelParams { gamma: 0.5, p1: p, p2: p, pc1: p, pc2: p, p_sb1: s, p_sb2: s, ..Default::default() };
        let r = contraction_model_a(&params, 1.0, 0.0, 0.0).unwrap();
        prop_assert!((r.rho - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_model_b_rho_is_one(l in 0.0f64..1.0, s in 0.0f64..1.0, pc in 0.01f64..1.0) {
        let params = ModelParams {
            gamma: 0.5, pc1: pc, pc2: pc, p_sb1: s, p_sb2: s, lambda1: l, lambda2: l,
            weight_model: WeightModel::GroupSplit, ..Default::default()
        };
        let r = contraction_model_b(&params, 1.0, 0.0, 0.0).unwrap();
        prop_assert!((r.rho - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_lambda_model_b_formula(g in 0.05f64..0.95, s1 in 0.0f64..1.0, s2 in 0.0f64..1.0) {
        let params = ModelParams { gamma: g, p_sb1: s1, p_sb2: s2, weight_model: WeightModel::GroupSplit, ..Default::default() };
        let r = contraction_model_b(&params, 1.0, 0.0, 0.0).unwrap();
        let want = (1.0 - s1).max(1.0 - s2) + g * s1 + (1.0 - g) * s2;
        prop_assert!((r.rho - want).abs() < 1e-12);
        prop_assert!(r.rho >= 0.0);
    }
}
