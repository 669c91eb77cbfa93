use fivevertex::model::{config_to_plane_partition, plane_partition_to_config, Configuration, PlanePartition};
use fivevertex::{Error, LatticeSpec, Result};
use std::cmp::Ordering;

/// Plane-partition heights of a configuration: `a = L-N` rows, `b = N`
/// columns, values in `0..=c` with `c = M-N`, weakly decreasing down and right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightState {
    a: usize,
    b: usize,
    c: u32,
    h: Vec<u32>,
}

impl HeightState {
    fn filled(spec: &LatticeSpec, v: u32) -> Self {
        let (a, b, c) = spec.box_dims();
        let v = v.min(c);
        HeightState { a: a as usize, b: b as usize, c, h: vec![v; (a * b) as usize] }
    }

    pub fn minimal(spec: &LatticeSpec) -> Self {
        Self::filled(spec, 0)
    }

    pub fn maximal(spec: &LatticeSpec) -> Self {
        Self::filled(spec, u32::MAX)
    }

    pub fn from_plane_partition(pp: &PlanePartition) -> Result<Self> {
        if !pp.is_valid() {
            return Err(Error::Structural("heights are not a plane partition".into()));
        }
        Ok(HeightState {
            a: pp.a as usize,
            b: pp.b as usize,
            c: pp.c,
            h: pp.heights.iter().flatten().copied().collect(),
        })
    }

    pub fn to_plane_partition(&self) -> PlanePartition {
        PlanePartition {
            a: self.a as u32,
            b: self.b as u32,
            c: self.c,
            heights: (0..self.a).map(|i| self.h[i * self.b..(i + 1) * self.b].to_vec()).collect(),
        }
    }

    pub fn from_configuration(config: &Configuration, spec: &LatticeSpec) -> Result<Self> {
        Self::from_plane_partition(&config_to_plane_partition(config, spec)?)
    }

    pub fn to_configuration(&self, spec: &LatticeSpec) -> Result<Configuration> {
        plane_partition_to_config(&self.to_plane_partition(), spec)
    }

    pub fn dims(&self) -> (usize, usize, u32) {
        (self.a, self.b, self.c)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.h[i * self.b + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: u32) {
        self.h[i * self.b + j] = v;
    }

    /// Number of turn pairs: per column, one plus the number of height changes.
    pub fn l5(&self) -> u64 {
        if self.a == 0 {
            return 0;
        }
        (0..self.b)
            .map(|j| 1 + (1..self.a).filter(|&i| self.get(i, j) != self.get(i - 1, j)).count() as u64)
            .sum()
    }

    /// Heights allowed at `(i, j)` given the rest of the state.
    pub fn allowed(&self, i: usize, j: usize) -> (u32, u32) {
        let mut lo = 0;
        let mut hi = self.c;
        if i + 1 < self.a {
            lo = lo.max(self.get(i + 1, j));
        }
        if j + 1 < self.b {
            lo = lo.max(self.get(i, j + 1));
        }
        if i > 0 {
            hi = hi.min(self.get(i - 1, j));
        }
        if j > 0 {
            hi = hi.min(self.get(i, j - 1));
        }
        (lo, hi)
    }

    /// Contribution of site `(i, j)` at height `v` to `l5`: changes against the
    /// column neighbours above and below.
    pub fn local_turns(&self, i: usize, j: usize, v: u32) -> u32 {
        let up = i > 0 && self.get(i - 1, j) != v;
        let down = i + 1 < self.a && self.get(i + 1, j) != v;
        up as u32 + down as u32
    }

    /// Pointwise comparison; `None` when the states are incomparable.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        let le = self.h.iter().zip(&other.h).all(|(x, y)| x <= y);
        let ge = self.h.iter().zip(&other.h).all(|(x, y)| x >= y);
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            _ => None,
        }
    }

    pub fn le(&self, other: &Self) -> bool {
        matches!(self.compare(other), Some(Ordering::Less | Ordering::Equal))
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.h.iter_mut().zip(&other.h).for_each(|(x, &y)| *x = (*x).min(y));
        s
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.h.iter_mut().zip(&other.h).for_each(|(x, &y)| *x = (*x).max(y));
        s
    }

    pub fn sites(&self) -> usize {
        self.h.len()
    }

    /// Number of sites where the two states differ.
    pub fn distance(&self, other: &Self) -> usize {
        self.h.iter().zip(&other.h).filter(|(x, y)| x != y).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fivevertex::model::enumerate_configurations;

    #[test]
    fn l5_matches_turn_pairs() {
        for spec in LatticeSpec::sweep(5) {
            for cfg in enumerate_configurations(&spec, 100_000).unwrap() {
                let s = HeightState::from_configuration(&cfg, &spec).unwrap();
                assert_eq!(s.l5(), cfg.turn_pairs(), "{spec}");
                assert_eq!(s.to_configuration(&spec).unwrap(), cfg);
            }
        }
    }

    #[test]
    fn extremes() {
        let spec = LatticeSpec::new(2, 4, 5).unwrap();
        let (lo, hi) = (HeightState::minimal(&spec), HeightState::maximal(&spec));
        assert_eq!(lo.dims(), (3, 2, 2));
        assert!(lo.le(&hi) && !hi.le(&lo));
        assert_eq!(hi.get(2, 1), 2);
        assert!(lo.to_configuration(&spec).is_ok() && hi.to_configuration(&spec).is_ok());
        assert_eq!(lo.meet(&hi), lo);
        assert_eq!(lo.join(&hi), hi);
    }
}
