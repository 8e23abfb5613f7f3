#![allow(dead_code)]

use clearnet::finmodel::{classify_regime, g1_closed_form, g2_closed_form, CaseTag, FinanceParams, LimitEquation, Taxes};
use clearnet::netgraph::{sample_graph, EtaMode, GraphSample, ModelParams};
use clearnet::Seed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Scalar limit map written out from scratch.
pub fn scalar_map(e: &LimitEquation, x: f64) -> f64 {
    let pay = |k: f64| (k + x + e.beta - e.v).clamp(0.0, e.ybar);
    (1.0 - e.p_sb) * e.lambda * (e.w * pay(e.kd) + (1.0 - e.w) * pay(e.ku))
}

/// Picard from the top of the box; the map is a contraction when `p_sb > 0`.
pub fn scalar_picard(e: &LimitEquation) -> f64 {
    let mut x = (1.0 - e.p_sb) * e.lambda * e.ybar;
    for _ in 0..1_000_000 {
        let next = scalar_map(e, x);
        if (next - x).abs() < 1e-14 * (1.0 + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Random group 2 equation: small shocks when `small`, large shocks otherwise.
pub fn random_g2(rng: &mut ChaCha8Rng, small: bool) -> LimitEquation {
    loop {
        let omega = uniform(rng, 1.0, 30.0);
        let down = uniform(rng, 0.05, 1.0);
        let up = uniform(rng, 1.0, 2.0);
        let (kd, ku) = (omega * down, omega * up);
        let v = if small { uniform(rng, 0.0, kd) } else { uniform(rng, kd, ku * 1.2) };
        let w = uniform(rng, 0.0, 1.0);
        let ybar = uniform(rng, 0.2, 3.0) * omega;
        let e = LimitEquation {
            kd,
            ku,
            v,
            ybar,
            w,
            p_sb: uniform(rng, 0.01, 0.5),
            lambda: if rng.random_bool(0.3) { 1.0 } else { uniform(rng, 0.3, 1.0) },
            beta: 0.0,
        };
        if small || ybar > w * (ku - kd) {
            return e;
        }
    }
}

/// Random group 1 equation that satisfies `kd - v + beta >= 0`.
pub fn random_g1(rng: &mut ChaCha8Rng) -> LimitEquation {
    let omega = uniform(rng, 1.0, 30.0);
    let kd = omega * uniform(rng, 0.05, 1.0);
    let ku = omega * uniform(rng, 1.0, 2.0);
    let v = uniform(rng, 0.0, ku);
    let ybar = uniform(rng, 0.2, 3.0) * omega;
    let beta = (v - kd).max(0.0) + uniform(rng, 0.0, 1.5 * ybar);
    LimitEquation {
        kd,
        ku,
        v,
        ybar,
        w: uniform(rng, 0.0, 1.0),
        p_sb: uniform(rng, 0.01, 0.5),
        lambda: 1.0,
        beta,
    }
}

pub struct BranchDraw {
    pub eq: LimitEquation,
    pub case: CaseTag,
    pub x: f64,
}

/// Draws until every closed-form branch has been hit `per_tag` times.
pub fn branch_draws(seed: u64, per_tag: usize) -> (Vec<BranchDraw>, Vec<(CaseTag, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tags: Vec<CaseTag> = CaseTag::G2_SMALL.iter().chain(&CaseTag::G2_LARGE).chain(&CaseTag::G1).copied().collect();
    let mut counts = vec![0usize; tags.len()];
    let mut out = Vec::new();
    for attempt in 0..2_000_000usize {
        if counts.iter().all(|&c| c >= per_tag) {
            break;
        }
        let eq = match attempt % 3 {
            0 => random_g2(&mut rng, true),
            1 => random_g2(&mut rng, false),
            _ => random_g1(&mut rng),
        };
        let sol = if attempt % 3 == 2 { g1_closed_form(&eq) } else { g2_closed_form(&eq) };
        let Ok(sol) = sol else { continue };
        let Some(i) = tags.iter().position(|t| *t == sol.case) else { continue };
        if counts[i] < per_tag {
            counts[i] += 1;
            out.push(BranchDraw { eq, case: sol.case, x: sol.x });
        }
    }
    (out, tags.into_iter().zip(counts).collect())
}

/// A six-node two-group network with constant `eta`, plus random balance sheet
/// data `(K, v, ybar)`.
pub struct TinyNet {
    pub sample: GraphSample,
    pub k: Vec<f64>,
    pub v: Vec<f64>,
    pub ybar: Vec<f64>,
}

pub fn tiny_net(seed: u64) -> TinyNet {
    let params = ModelParams {
        gamma: 0.5,
        p1: 0.6,
        p2: 0.6,
        pc1: 0.5,
        pc2: 0.5,
        p_sb1: 0.05,
        p_sb2: 0.05,
        eta_mode: EtaMode::Constant,
        ..Default::default()
    };
    let sample = sample_graph(&params, 6, Seed(seed)).expect("tiny graph");
    let mut rng = Seed(seed).named("balance").rng();
    let k = (0..6).map(|_| rng.random_range(0.0..10.0)).collect();
    let v = (0..6).map(|_| rng.random_range(0.0..4.0)).collect();
    let ybar = (0..6).map(|_| rng.random_range(1.0..12.0)).collect();
    TinyNet { sample, k, v, ybar }
}

impl TinyNet {
    /// Clearing map through the dense weight matrix.
    pub fn dense_map(&self) -> impl Fn(&[f64], &mut [f64]) + '_ {
        let w = self.sample.dense_weights().expect("dense");
        move |x: &[f64], out: &mut [f64]| {
            for i in 0..6 {
                let claims: f64 = (0..6).map(|j| x[j] * w[j][i]).sum();
                out[i] = (self.k[i] + claims - self.v[i]).max(0.0).min(self.ybar[i]);
            }
        }
    }

    pub fn picard(&self, tol: f64) -> Vec<f64> {
        let f = self.dense_map();
        let mut x = self.ybar.clone();
        let mut fx = vec![0.0; 6];
        for _ in 0..10_000_000 {
            f(&x, &mut fx);
            let gap = x.iter().zip(&fx).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            std::mem::swap(&mut x, &mut fx);
            if gap < tol {
                break;
            }
        }
        x
    }
}

/// Least-squares line through `(x, y)`; returns `(slope, max |residual|)`.
pub fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let k = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / k, y.iter().sum::<f64>() / k);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let worst = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - (my + slope * (a - mx))).abs())
        .fold(0.0, f64::max);
    (slope, worst)
}

/// `lo, lo + step, ...` up to and including `hi`.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let k = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=k).map(|i| lo + i as f64 * step).collect()
}

/// Random finance parameters with resilient group 2 and `y1 p_sb1 < y2 p_sb2`.
pub fn random_resilient(rng: &mut ChaCha8Rng) -> Option<FinanceParams> {
    let r1 = rng.random_range(0.01..0.15);
    let r2 = r1 + rng.random_range(0.005..0.1);
    let u = r2 + rng.random_range(0.01..0.8);
    let d = r1 - rng.random_range(0.01..0.9);
    let p_sb2 = rng.random_range(0.01..0.5);
    let y2 = rng.random_range(10.0..60.0);
    let y1 = rng.random_range(10.0..60.0);
    let p_sb1 = rng.random_range(0.0..f64::min(y2 * p_sb2 / y1, 1.0));
    let p = FinanceParams {
        k0: rng.random_range(5.0..60.0),
        y1,
        y2,
        yc: if rng.random_bool(0.5) { rng.random_range(0.0..10.0) } else { 0.0 },
        r1,
        r2,
        u,
        d,
        w: rng.random_range(0.0..1.0),
        dc: rng.random_range(0.0..0.3),
        taxes: Taxes::Proportional { kappa: rng.random_range(0.0..0.6) },
        p_sb1,
        p_sb2,
        gamma: rng.random_range(0.2..0.8),
        kb: 0.0,
    };
    let r = classify_regime(&p).ok()?;
    (r.resilient_g2 && r.g1_robust_applicable).then_some(p)
}
