use crate::state::HeightState;
use fivevertex::{Error, Result};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Single-site update rule targeting `π ∝ x^{-l5}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dynamics {
    /// Resample the site from its conditional law by inverse CDF.
    #[default]
    HeatBath,
    /// Propose `±1` with probability ½ each, accept with `w'/(w + w')`.
    PlusMinusOne,
}

impl FromStr for Dynamics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heat-bath" => Ok(Dynamics::HeatBath),
            "plus-minus-one" => Ok(Dynamics::PlusMinusOne),
            _ => Err(Error::Domain(format!("unknown dynamics {s:?}"))),
        }
    }
}

/// Weights `t^k`, `t = 1/x`, for `k` local turns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurnWeights([f64; 3]);

impl TurnWeights {
    pub fn new(x: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Domain(format!("x = {x} must be positive and finite")));
        }
        let t = 1.0 / x;
        Ok(TurnWeights([1.0, t, t * t]))
    }

    fn at(&self, k: u32) -> f64 {
        self.0[k as usize]
    }
}

/// Update site `(i, j)` in place with the uniform `u ∈ [0, 1)`.
pub fn heat_bath_step(state: &mut HeightState, i: usize, j: usize, u: f64, w: &TurnWeights, dynamics: Dynamics) {
    let (lo, hi) = state.allowed(i, j);
    if lo == hi {
        state.set(i, j, lo);
        return;
    }
    let weight = |v: u32| w.at(state.local_turns(i, j, v));
    let next = match dynamics {
        Dynamics::HeatBath => {
            let total: f64 = (lo..=hi).map(weight).sum();
            let target = u * total;
            let mut acc = 0.0;
            let mut pick = hi;
            for v in lo..=hi {
                acc += weight(v);
                if acc > target {
                    pick = v;
                    break;
                }
            }
            pick
        }
        Dynamics::PlusMinusOne => {
            let v = state.get(i, j);
            let (cand, r) = if u < 0.5 { (v.checked_sub(1), 2.0 * u) } else { (Some(v + 1), 2.0 * u - 1.0) };
            match cand.filter(|&c| (lo..=hi).contains(&c)) {
                Some(c) if r < weight(c) / (weight(c) + weight(v)) => c,
                _ => v,
            }
        }
    };
    state.set(i, j, next);
}

/// One sweep in row-major order, consuming one uniform per site.
pub fn sweep(state: &mut HeightState, uniforms: &[f64], w: &TurnWeights, dynamics: Dynamics) {
    let (a, b, _) = state.dims();
    for i in 0..a {
        for j in 0..b {
            heat_bath_step(state, i, j, uniforms[i * b + j], w, dynamics);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fivevertex::LatticeSpec;

    #[test]
    fn blocked_site_never_moves() {
        let spec = LatticeSpec::new(1, 2, 3).unwrap();
        let mut s = HeightState::maximal(&spec);
        let w = TurnWeights::new(2.0).unwrap();
        for d in [Dynamics::HeatBath, Dynamics::PlusMinusOne] {
            for k in 0..20 {
                let mut t = s.clone();
                heat_bath_step(&mut t, 0, 0, k as f64 / 20.0, &w, d);
                assert_eq!(t, s);
            }
        }
        s.set(0, 0, 1);
        s.set(1, 0, 0);
        let mut t = s.clone();
        heat_bath_step(&mut t, 0, 0, 0.99, &w, Dynamics::HeatBath);
        assert_eq!(t.get(0, 0), 1);
    }

    #[test]
    fn rejects_bad_x() {
        assert!(TurnWeights::new(0.0).is_err());
        assert!(TurnWeights::new(f64::NAN).is_err());
        assert!("metropolis".parse::<Dynamics>().is_err());
        assert_eq!("plus-minus-one".parse::<Dynamics>().unwrap(), Dynamics::PlusMinusOne);
    }
}
