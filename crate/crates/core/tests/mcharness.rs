use clearnet::finmodel::presets::{mc_baseline, small_shock};
use clearnet::finmodel::{FinanceParams, ShockModel};
use clearnet::fpcore::FPConfig;
use clearnet::mcharness::*;
use clearnet::netgraph::{DegreeWindow, EtaMode};
use clearnet::{Error, Seed};

const X_TH: f64 = 34.45688577855536;

fn baseline(n: usize, graph: GraphKind) -> PathConfig {
    let finance = mc_baseline();
    PathConfig {
        model: finance.single_network(0.05, EtaMode::Bernoulli),
        finance,
        n,
        graph,
        shock_model: ShockModel::default(),
        fp: FPConfig::default(),
    }
}

fn stats(pd: f64, shock: f64) -> PathStats {
    PathStats {
        x_hat: 0.0,
        pd_hat: pd,
        es_hat: 0.0,
        sau_hat: 0.0,
        shock_frac: shock,
        iterations: 1,
        converged: true,
        g1: None,
    }
}

#[test]
fn shock_free_network_pays_in_full() {
    let mut cfg = baseline(300, GraphKind::Er);
    cfg.finance.w = 0.0;
    let p = run_path(&cfg, Seed(1)).unwrap();
    assert_eq!(p.pd_hat, 0.0);
    assert_eq!(p.shock_frac, 0.0);
    let full = 35.0 * (1.0 - 0.001);
    // every creditor receives (1 - eta_j) ybar from each obligor, shared over its creditors
    assert!((p.x_hat - full).abs() < 0.5, "{}", p.x_hat);
    assert!(p.converged);
}

#[test]
fn one_path_matches_theory() {
    let p = run_path(&baseline(1000, GraphKind::Er), Seed(1)).unwrap();
    assert!((p.x_hat - X_TH).abs() / X_TH < 0.01);
    assert!(p.converged);
    assert!((0.0..=1.0).contains(&p.pd_hat) && p.es_hat >= 0.0);
}

#[test]
fn paths_are_deterministic() {
    let cfg = baseline(400, GraphKind::Er);
    assert_eq!(run_path(&cfg, Seed(17)).unwrap(), run_path(&cfg, Seed(17)).unwrap());
    assert_ne!(run_path(&cfg, Seed(17)).unwrap(), run_path(&cfg, Seed(18)).unwrap());
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let cfg = baseline(300, GraphKind::Er);
    let a = estimate(&cfg, Seed(3), 12, 1).unwrap();
    let b = estimate(&cfg, Seed(3), 12, 8).unwrap();
    assert_eq!(a, b);
}

#[test]
fn half_width_matches_two_pass_variance() {
    let v = [1.0, 2.0, 4.0, 7.0];
    let mean = 3.5;
    let var = v.iter().map(|x: &f64| (x - mean).powi(2)).sum::<f64>() / 3.0;
    assert!((half_width(&v).unwrap() - 1.96 * (var / 4.0).sqrt()).abs() < 1e-15);
    assert_eq!(half_width(&[1.0]), None);
    assert_eq!(half_width(&[2.0, 2.0]), Some(0.0));
}

#[test]
fn report_contents() {
    let cfg = baseline(300, GraphKind::Er);
    let r = estimate(&cfg, Seed(9), 6, 0).unwrap();
    assert_eq!((r.requested_paths, r.failed_paths, r.paths.len()), (6, 0, 6));
    let x = r.measure("x_hat").unwrap();
    assert_eq!(x.theory, Some(X_TH));
    let err = (x.theory.unwrap() - x.mean).abs() / x.theory.unwrap() * 100.0;
    assert!((x.error_pct.unwrap() - err).abs() < 1e-12);
    assert_eq!(r.measure("shock_frac").unwrap().theory, Some(0.2));
    assert!(r.measure("x1_hat").is_none());
    assert!(matches!(estimate(&cfg, Seed(9), 0, 1), Err(Error::InvalidParams(_))));
}

#[test]
fn two_group_reports_carry_group1() {
    let finance = FinanceParams { yc: 2.0, ..small_shock('a').unwrap() };
    let cfg = PathConfig {
        model: finance.network(0.1, 0.1, 0.1, EtaMode::Bernoulli),
        finance,
        n: 400,
        graph: GraphKind::Er,
        shock_model: ShockModel::default(),
        fp: FPConfig::default(),
    };
    let r = estimate(&cfg, Seed(2), 4, 0).unwrap();
    for name in ["x1_hat", "pd1_hat", "es1_hat"] {
        assert!(r.measure(name).is_some(), "{name}");
    }
    // the limit is resilient; finite balance sheets still vary from bank to bank
    assert!(r.measure("pd_hat").unwrap().mean < cfg.finance.w);
}

#[test]
fn unconverged_paths_are_excluded() {
    let mut cfg = baseline(200, GraphKind::Er);
    cfg.fp = FPConfig { tol_delta: 1e-15, window_k: 10, max_iters: 20, ..Default::default() };
    assert!(matches!(estimate(&cfg, Seed(1), 3, 1), Err(Error::AllPathsFailed(3))));
}

#[test]
fn correlation_examples() {
    let up: Vec<_> = [(0.1, 0.2), (0.2, 0.3), (0.3, 0.4)].iter().map(|&(a, b)| stats(a, b)).collect();
    assert!((correlation_defaults_vs_shocks(&up).unwrap() - 1.0).abs() < 1e-12);
    let down: Vec<_> = [(0.3, 0.2), (0.2, 0.3), (0.1, 0.4)].iter().map(|&(a, b)| stats(a, b)).collect();
    assert!((correlation_defaults_vs_shocks(&down).unwrap() + 1.0).abs() < 1e-12);
    let flat = vec![stats(0.2, 0.1), stats(0.2, 0.3)];
    assert_eq!(correlation_defaults_vs_shocks(&flat), Err(Error::ZeroVariance("default or shock fractions")));
    assert!(correlation_defaults_vs_shocks(&flat[..1]).is_err());
}

#[test]
fn regular_graphs_track_shocks_more_closely() {
    let er = estimate(&baseline(500, GraphKind::Er), Seed(40), 40, 0).unwrap();
    let window = DegreeWindow::around(25, 2);
    let reg = estimate(&baseline(500, GraphKind::Regular { lender: Some(window), borrower: None }), Seed(40), 40, 0).unwrap();
    let (ce, cr) = (
        correlation_defaults_vs_shocks(&er.paths).unwrap(),
        correlation_defaults_vs_shocks(&reg.paths).unwrap(),
    );
    assert!(cr > ce, "regular {cr} er {ce}");
    assert!(cr > 0.5);
}

#[test]
fn error_shrinks_with_n() {
    let dev = |n: usize| {
        let r = estimate(&baseline(n, GraphKind::Er), Seed(n as u64), 24, 0).unwrap();
        r.paths.iter().map(|p| (p.x_hat - X_TH).abs()).sum::<f64>() / r.paths.len() as f64
    };
    let (small, large) = (dev(300), dev(1200));
    assert!(large < small, "{large} >= {small}");
}

#[test]
fn config_round_trips_through_json() {
    let cfg = baseline(500, GraphKind::Regular { lender: Some(DegreeWindow::around(25, 2)), borrower: None });
    let json = serde_json::to_string(&cfg).unwrap();
    let back: PathConfig = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cfg);
}
