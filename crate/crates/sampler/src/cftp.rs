use crate::dynamics::{sweep, Dynamics, TurnWeights};
use crate::state::HeightState;
use fivevertex::model::Configuration;
use fivevertex::{Error, LatticeSpec, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CftpOptions {
    pub dynamics: Dynamics,
    /// First epoch length in sweeps.
    pub initial_sweeps: u64,
    /// Give up once the epoch length would exceed this.
    pub max_sweeps: u64,
}

impl Default for CftpOptions {
    fn default() -> Self {
        CftpOptions { dynamics: Dynamics::HeatBath, initial_sweeps: 2, max_sweeps: 1 << 20 }
    }
}

/// The uniforms of the sweep at time `-k`; fixed by `(seed, k)` alone.
pub fn sweep_uniforms(seed: u64, k: u64, sites: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    (0..sites).map(|_| rng.gen::<f64>()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CftpSample {
    pub state: HeightState,
    pub config: Configuration,
    /// Epoch length at which the extremal chains met.
    pub coalescence_t: u64,
    /// Epoch lengths tried, ending with `coalescence_t`.
    pub epochs: Vec<u64>,
}

/// Run the extremal chains from time `-t` to `0` with the fixed past randomness.
fn run_epoch(spec: &LatticeSpec, seed: u64, t: u64, w: &TurnWeights, dynamics: Dynamics) -> (HeightState, HeightState) {
    let mut lo = HeightState::minimal(spec);
    let mut hi = HeightState::maximal(spec);
    for k in (1..=t).rev() {
        let u = sweep_uniforms(seed, k, lo.sites());
        sweep(&mut lo, &u, w, dynamics);
        sweep(&mut hi, &u, w, dynamics);
    }
    (lo, hi)
}

pub fn cftp_sample(spec: &LatticeSpec, x: f64, seed: u64, opts: &CftpOptions) -> Result<CftpSample> {
    let w = TurnWeights::new(x)?;
    if opts.initial_sweeps == 0 {
        return Err(Error::Domain("the first epoch needs at least one sweep".into()));
    }
    let mut t = opts.initial_sweeps;
    let mut epochs = Vec::new();
    loop {
        if t > opts.max_sweeps {
            return Err(Error::Resource(format!(
                "no coalescence for {spec} at x = {x}, seed {seed}: epochs {epochs:?} exhausted the cap of {} sweeps",
                opts.max_sweeps
            )));
        }
        epochs.push(t);
        let (lo, hi) = run_epoch(spec, seed, t, &w, opts.dynamics);
        if lo == hi {
            let config = lo.to_configuration(spec)?;
            return Ok(CftpSample { state: lo, config, coalescence_t: t, epochs });
        }
        t = t.saturating_mul(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_is_identical() {
        let spec = LatticeSpec::new(3, 6, 7).unwrap();
        let o = CftpOptions::default();
        let a = cftp_sample(&spec, 0.7, 11, &o).unwrap();
        let b = cftp_sample(&spec, 0.7, 11, &o).unwrap();
        assert_eq!(a, b);
        assert_eq!(*a.epochs.last().unwrap(), a.coalescence_t);
    }

    #[test]
    fn streams_differ_by_time() {
        assert_ne!(sweep_uniforms(1, 1, 4), sweep_uniforms(1, 2, 4));
        assert_eq!(sweep_uniforms(1, 3, 4), sweep_uniforms(1, 3, 4));
        assert!(sweep_uniforms(9, 1, 100).iter().all(|u| (0.0..1.0).contains(u)));
    }

    #[test]
    fn cap_is_reported() {
        let spec = LatticeSpec::new(4, 8, 8).unwrap();
        let o = CftpOptions { max_sweeps: 1, ..CftpOptions::default() };
        match cftp_sample(&spec, 1.0, 3, &o) {
            Err(Error::Resource(msg)) => assert!(msg.contains("cap")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_box() {
        let spec = LatticeSpec::new(2, 2, 2).unwrap();
        let s = cftp_sample(&spec, 3.0, 0, &CftpOptions::default()).unwrap();
        assert_eq!(s.coalescence_t, 2);
    }
}
