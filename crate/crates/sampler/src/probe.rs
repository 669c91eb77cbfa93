//! Empirical check of the sandwich property `A ≤ B ⇒ A' ≤ B'`.

use crate::dynamics::{heat_bath_step, Dynamics, TurnWeights};
use crate::state::HeightState;
use fivevertex::model::enumerate_configurations;
use fivevertex::{LatticeSpec, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub lower: Vec<Vec<u32>>,
    pub upper: Vec<Vec<u32>>,
    pub site: (usize, usize),
    pub u: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub x: f64,
    pub dynamics: Dynamics,
    pub trials: u64,
    pub violations: u64,
    /// The first few violating cases.
    pub examples: Vec<Violation>,
}

const KEPT: usize = 8;

/// A random plane partition: running maxima (or minima) of uniform heights.
pub fn random_state(spec: &LatticeSpec, rng: &mut impl Rng) -> HeightState {
    let mut s = HeightState::minimal(spec);
    let (a, b, c) = s.dims();
    let from_below = rng.gen::<bool>();
    for i in (0..a).rev() {
        for j in (0..b).rev() {
            let v = rng.gen_range(0..=c);
            let below = if i + 1 < a { s.get(i + 1, j) } else { 0 };
            let right = if j + 1 < b { s.get(i, j + 1) } else { 0 };
            let floor = below.max(right);
            let v = if from_below { v.max(floor) } else { floor + rng.gen_range(0..=(c - floor).min(v)) };
            s.set(i, j, v);
        }
    }
    s
}

fn check(lo: &HeightState, hi: &HeightState, site: (usize, usize), u: f64, w: &TurnWeights, d: Dynamics) -> Option<Violation> {
    let (mut a, mut b) = (lo.clone(), hi.clone());
    heat_bath_step(&mut a, site.0, site.1, u, w, d);
    heat_bath_step(&mut b, site.0, site.1, u, w, d);
    (!a.le(&b)).then(|| Violation {
        lower: lo.to_plane_partition().heights,
        upper: hi.to_plane_partition().heights,
        site,
        u,
    })
}

fn record(report: &mut ProbeReport, v: Option<Violation>) {
    report.trials += 1;
    if let Some(v) = v {
        report.violations += 1;
        if report.examples.len() < KEPT {
            report.examples.push(v);
        }
    }
}

/// `trials` random `(A ≤ B, site, u)` triples with `A = S1 ∧ S2`, `B = S1 ∨ S2`.
pub fn monotonicity_probe(spec: &LatticeSpec, x: f64, dynamics: Dynamics, trials: u64, seed: u64) -> Result<ProbeReport> {
    let w = TurnWeights::new(x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport { x, dynamics, trials: 0, violations: 0, examples: Vec::new() };
    let (a, b, _) = HeightState::minimal(spec).dims();
    if a * b == 0 {
        return Ok(report);
    }
    for _ in 0..trials {
        let (s1, s2) = (random_state(spec, &mut rng), random_state(spec, &mut rng));
        let site = (rng.gen_range(0..a), rng.gen_range(0..b));
        let u = rng.gen::<f64>();
        record(&mut report, check(&s1.meet(&s2), &s1.join(&s2), site, u, &w, dynamics));
    }
    Ok(report)
}

/// Every comparable pair of states, every site, `u` on a grid of `grid` points.
pub fn exhaustive_probe(spec: &LatticeSpec, x: f64, dynamics: Dynamics, grid: usize, cap: u64) -> Result<ProbeReport> {
    let w = TurnWeights::new(x)?;
    let states = enumerate_configurations(spec, cap)?
        .iter()
        .map(|c| HeightState::from_configuration(c, spec))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ProbeReport { x, dynamics, trials: 0, violations: 0, examples: Vec::new() };
    for lo in &states {
        for hi in states.iter().filter(|hi| lo.le(hi)) {
            let (a, b, _) = lo.dims();
            for i in 0..a {
                for j in 0..b {
                    for k in 0..grid {
                        let u = (k as f64 + 0.5) / grid as f64;
                        record(&mut report, check(lo, hi, (i, j), u, &w, dynamics));
                    }
                }
            }
        }
    }
    Ok(report)
}
