use fivevertex::model::{vertex_grid, Configuration, VertexType};
use fivevertex::{Error, LatticeSpec, Result};
use serde::Serialize;

/// Per-cell counts of the five vertex types over a set of samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexDensities {
    pub m: usize,
    pub l: usize,
    pub samples: u64,
    /// `counts[r][c][VertexType::index()]`, row `r` from the bottom.
    pub counts: Vec<Vec<[u64; 5]>>,
}

impl VertexDensities {
    pub fn frequencies(&self, r: usize, c: usize) -> [f64; 5] {
        let n = self.samples as f64;
        self.counts[r][c].map(|k| k as f64 / n)
    }

    pub fn frequency(&self, r: usize, c: usize, t: VertexType) -> f64 {
        self.frequencies(r, c)[t.index()]
    }

    /// Shannon entropy (nats) of the cell's type distribution.
    pub fn entropy(&self, r: usize, c: usize) -> f64 {
        -self.frequencies(r, c).iter().filter(|&&p| p > 0.0).map(|p| p * p.ln()).sum::<f64>()
    }

    pub fn entropy_map(&self) -> Vec<Vec<f64>> {
        (0..self.m).map(|r| (0..self.l).map(|c| self.entropy(r, c)).collect()).collect()
    }
}

pub fn measure_vertex_densities(samples: &[Configuration], spec: &LatticeSpec) -> Result<VertexDensities> {
    if samples.is_empty() {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let (m, l) = (spec.m as usize, spec.l as usize);
    let mut counts = vec![vec![[0u64; 5]; l]; m];
    for (k, cfg) in samples.iter().enumerate() {
        let grid = vertex_grid(cfg, spec)
            .map_err(|e| Error::Structural(format!("sample {k} does not belong to {spec}: {e}")))?;
        for (row, types) in counts.iter_mut().zip(&grid) {
            for (cell, t) in row.iter_mut().zip(types) {
                cell[t.index()] += 1;
            }
        }
    }
    Ok(VertexDensities { m, l, samples: samples.len() as u64, counts })
}

/// Entropy (nats) above which a cell counts as disordered.
pub const DISORDER_THRESHOLD: f64 = 0.6;
/// Smallest cluster counted as a disordered region.
pub const MIN_REGION: usize = 20;

/// Disordered regions at the default threshold: two or more means the
/// disordered phase has split, one means it is connected.
pub fn disordered_regions(d: &VertexDensities) -> Vec<usize> {
    disordered_components(d, DISORDER_THRESHOLD, MIN_REGION)
}

/// Sizes of the 4-connected clusters of cells with entropy at least
/// `threshold`, keeping clusters of at least `min_size` cells, largest first.
pub fn disordered_components(d: &VertexDensities, threshold: f64, min_size: usize) -> Vec<usize> {
    let hot: Vec<Vec<bool>> = d.entropy_map().iter().map(|r| r.iter().map(|&e| e >= threshold).collect()).collect();
    let mut seen = vec![vec![false; d.l]; d.m];
    let mut sizes = Vec::new();
    for r0 in 0..d.m {
        for c0 in 0..d.l {
            if !hot[r0][c0] || seen[r0][c0] {
                continue;
            }
            seen[r0][c0] = true;
            let mut stack = vec![(r0, c0)];
            let mut size = 0;
            while let Some((r, c)) = stack.pop() {
                size += 1;
                let nbrs = [(r.wrapping_sub(1), c), (r + 1, c), (r, c.wrapping_sub(1)), (r, c + 1)];
                for (nr, nc) in nbrs {
                    if nr < d.m && nc < d.l && hot[nr][nc] && !seen[nr][nc] {
                        seen[nr][nc] = true;
                        stack.push((nr, nc));
                    }
                }
            }
            if size >= min_size {
                sizes.push(size);
            }
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}
