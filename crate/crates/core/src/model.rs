//! Lattice model: specs, configurations, vertex types, weights, the
//! brute-force partition function and the plane-partition bijection.
//!
//! A configuration is stored as the column slices `S_0, ..., S_M`: `S_t`
//! lists, in increasing order, the columns where the `N` lines cross from
//! row `t` to row `t + 1` (rows counted from the bottom). Within row `t + 1`
//! line `i` runs horizontally from `c_i(t)` to `c_i(t + 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, int, powi, Poly, Rational};

/// Default refusal threshold of the enumeration oracle.
pub const DEFAULT_MAX_CONFIGS: u64 = 10_000_000;

/// Enumeration cap, overridable through `FIVEVERTEX_MAX_CONFIGS`.
pub fn max_configs_from_env() -> u64 {
    std::env::var("FIVEVERTEX_MAX_CONFIGS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CONFIGS)
}

/// `N` lines on a lattice of `M` rows and `L` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    pub n: u32,
    pub m: u32,
    pub l: u32,
}

impl LatticeSpec {
    pub fn new(n: u32, m: u32, l: u32) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(Error::InvalidSpec(format!("M = {m} and L = {l} must be positive")));
        }
        if n > m || n > l {
            return Err(Error::InvalidSpec(format!("N = {n} exceeds M = {m} or L = {l}")));
        }
        Ok(LatticeSpec { n, m, l })
    }

    /// `P ≡ 1` by convention: no lines, or lines filling every column.
    pub fn is_trivial(&self) -> bool {
        self.n == 0 || self.l == self.n
    }

    /// Box `(L-N) × N × (M-N)` of the associated plane partitions.
    pub fn box_dims(&self) -> (u32, u32, u32) {
        (self.l - self.n, self.n, self.m - self.n)
    }

    /// `deg P = N min(M-N, L-N-1)`, or 0 for trivial specs.
    pub fn degree(&self) -> usize {
        if self.is_trivial() {
            return 0;
        }
        (self.n * (self.m - self.n).min(self.l - self.n - 1)) as usize
    }

    /// The spec with the same polynomial: `(N, L-1, M+1)`.
    pub fn mirror(&self) -> Option<LatticeSpec> {
        (self.l >= 2).then(|| LatticeSpec { n: self.n, m: self.l - 1, l: self.m + 1 })
            .filter(|s| s.n <= s.m)
    }

    pub fn binom_mn(&self) -> BigInt {
        binomial(self.m as u64, self.n as u64)
    }

    /// All valid specs with `M, L ≤ max`.
    pub fn sweep(max: u32) -> Vec<LatticeSpec> {
        let mut v = Vec::new();
        for m in 1..=max {
            for l in 1..=max {
                for n in 0..=m.min(l) {
                    v.push(LatticeSpec { n, m, l });
                }
            }
        }
        v
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, M={}, L={})", self.n, self.m, self.l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub slices: Vec<Vec<u32>>,
}

impl Configuration {
    pub fn validate(&self, spec: &LatticeSpec) -> Result<()> {
        let (n, m, l) = (spec.n as usize, spec.m as usize, spec.l);
        let bad = |msg: String| Err(Error::Structural(msg));
        if self.slices.len() != m + 1 {
            return bad(format!("expected {} slices, got {}", m + 1, self.slices.len()));
        }
        for (t, s) in self.slices.iter().enumerate() {
            if s.len() != n {
                return bad(format!("slice {t} has {} entries, expected {n}", s.len()));
            }
            if s.iter().any(|&c| c < 1 || c > l) || s.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("slice {t} is not increasing within 1..={l}"));
            }
        }
        let first: Vec<u32> = (1..=spec.n).collect();
        let last: Vec<u32> = (spec.l - spec.n + 1..=spec.l).collect();
        if self.slices[0] != first || self.slices[m] != last {
            return bad("boundary slices do not match the boundary condition".into());
        }
        for t in 0..m {
            let (a, b) = (&self.slices[t], &self.slices[t + 1]);
            for i in 0..n {
                let upper = if i + 1 < n { a[i + 1] } else { l + 1 };
                if b[i] < a[i] || b[i] >= upper {
                    return bad(format!("slices {t} and {} do not interlace", t + 1));
                }
            }
        }
        Ok(())
    }

    /// Number of type-5 vertices, one per row in which a line turns.
    pub fn turn_pairs(&self) -> u64 {
        self.slices
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).filter(|(a, b)| b > a).count() as u64)
            .sum()
    }
}

/// Vertex types of the five-vertex model; the line-crossing type 2 is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexType {
    /// No line.
    Empty = 1,
    /// Line passes vertically.
    Vertical = 3,
    /// Line passes horizontally.
    Horizontal = 4,
    /// Enters from the left, exits up.
    TurnUp = 5,
    /// Enters from below, exits right.
    TurnRight = 6,
}

impl VertexType {
    pub const ALL: [VertexType; 5] = [
        VertexType::Empty,
        VertexType::Vertical,
        VertexType::Horizontal,
        VertexType::TurnUp,
        VertexType::TurnRight,
    ];

    pub fn index(self) -> usize {
        match self {
            VertexType::Empty => 0,
            VertexType::Vertical => 1,
            VertexType::Horizontal => 2,
            VertexType::TurnUp => 3,
            VertexType::TurnRight => 4,
        }
    }
}

/// `grid[r][c]` is the vertex in row `r + 1` (from the bottom), column `c + 1`.
pub fn vertex_grid(config: &Configuration, spec: &LatticeSpec) -> Result<Vec<Vec<VertexType>>> {
    config.validate(spec)?;
    let (m, l) = (spec.m as usize, spec.l as usize);
    let mut grid = vec![vec![VertexType::Empty; l]; m];
    for (r, row) in grid.iter_mut().enumerate() {
        let (below, above) = (&config.slices[r], &config.slices[r + 1]);
        for (&c0, &c1) in below.iter().zip(above) {
            let (c0, c1) = (c0 as usize - 1, c1 as usize - 1);
            if c0 == c1 {
                row[c0] = VertexType::Vertical;
            } else {
                row[c0] = VertexType::TurnRight;
                for cell in &mut row[c0 + 1..c1] {
                    *cell = VertexType::Horizontal;
                }
                row[c1] = VertexType::TurnUp;
            }
        }
    }
    Ok(grid)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VertexCounts {
    pub l1: u64,
    pub l3: u64,
    pub l4: u64,
    pub l5: u64,
    pub l6: u64,
}

pub fn vertex_counts(config: &Configuration, spec: &LatticeSpec) -> Result<VertexCounts> {
    let mut k = VertexCounts::default();
    for row in vertex_grid(config, spec)? {
        for v in row {
            match v {
                VertexType::Empty => k.l1 += 1,
                VertexType::Vertical => k.l3 += 1,
                VertexType::Horizontal => k.l4 += 1,
                VertexType::TurnUp => k.l5 += 1,
                VertexType::TurnRight => k.l6 += 1,
            }
        }
    }
    Ok(k)
}

pub fn turn_pairs(config: &Configuration) -> u64 {
    config.turn_pairs()
}

/// Calls `visit` on every admissible configuration; fails once more than
/// `cap` configurations have been produced.
pub fn for_each_configuration(
    spec: &LatticeSpec,
    cap: u64,
    mut visit: impl FnMut(&Configuration),
) -> Result<u64> {
    let (n, m, l) = (spec.n as usize, spec.m as usize, spec.l);
    let target: Vec<u32> = (l - spec.n + 1..=l).collect();
    let mut slices = vec![Vec::new(); m + 1];
    slices[0] = (1..=spec.n).collect();
    slices[m] = target.clone();
    let mut count = 0u64;

    fn fill_slice(
        t: usize,
        i: usize,
        slices: &mut Vec<Vec<u32>>,
        ctx: &mut Ctx,
        visit: &mut dyn FnMut(&Configuration),
    ) -> Result<()> {
        let (n, m) = (ctx.n, ctx.m);
        if t == m {
            let prev = &slices[m - 1];
            let ok = (0..n).all(|j| {
                let upper = if j + 1 < n { prev[j + 1] } else { ctx.l + 1 };
                ctx.target[j] >= prev[j] && ctx.target[j] < upper
            });
            if ok {
                *ctx.count += 1;
                if *ctx.count > ctx.cap {
                    return Err(Error::Resource(format!(
                        "more than {} configurations",
                        ctx.cap
                    )));
                }
                visit(&Configuration { slices: slices.clone() });
            }
            return Ok(());
        }
        if i == n {
            return fill_slice(t + 1, 0, slices, ctx, visit);
        }
        let prev = &slices[t - 1];
        let lo = prev[i];
        let mut hi = if i + 1 < n { prev[i + 1] - 1 } else { ctx.l };
        hi = hi.min(ctx.target[i]);
        // line i+1 (1-based) must sit at its target from row M-i onwards
        let forced = t + i >= m;
        let range = if forced { ctx.target[i]..=ctx.target[i] } else { lo..=hi };
        for c in range {
            if c < lo || c > hi {
                continue;
            }
            slices[t][i] = c;
            fill_slice(t, i + 1, slices, ctx, visit)?;
        }
        Ok(())
    }

    struct Ctx<'a> {
        n: usize,
        m: usize,
        l: u32,
        cap: u64,
        target: Vec<u32>,
        count: &'a mut u64,
    }

    for s in slices.iter_mut().take(m).skip(1) {
        *s = vec![0; n];
    }
    let mut ctx = Ctx { n, m, l, cap, target, count: &mut count };
    fill_slice(1, 0, &mut slices, &mut ctx, &mut visit)?;
    Ok(count)
}

pub fn enumerate_configurations(spec: &LatticeSpec, cap: u64) -> Result<Vec<Configuration>> {
    let mut out = Vec::new();
    for_each_configuration(spec, cap, |c| out.push(c.clone()))?;
    Ok(out)
}

/// `Σ_C u^{l5(C) - l5_min}` with `l5_min = N` unless the spec is trivial.
pub fn brute_force_tilde_z(spec: &LatticeSpec, cap: u64) -> Result<Poly> {
    let shift = if spec.is_trivial() { 0 } else { spec.n as u64 };
    let mut counts: Vec<u64> = Vec::new();
    for_each_configuration(spec, cap, |c| {
        let k = (c.turn_pairs() - shift) as usize;
        if counts.len() <= k {
            counts.resize(k + 1, 0);
        }
        counts[k] += 1;
    })?;
    Ok(Poly::new(counts.into_iter().map(|v| int(v as i64)).collect()))
}

/// `P` from the enumeration oracle, normalised to `P(0) = 1`.
pub fn p_from_enumeration(spec: &LatticeSpec, cap: u64) -> Result<Poly> {
    let z = brute_force_tilde_z(spec, cap)?;
    let c0 = z.coeff(0);
    Ok(z.scale(&c0.recip()))
}

/// Number `a + b √x` of the quadratic extension `Q(√x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub x: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl Surd {
    pub fn rational(x: &Rational, a: Rational) -> Self {
        Surd { x: x.clone(), a, b: Rational::zero() }
    }

    /// `(√x)^k`
    pub fn sqrt_pow(x: &Rational, k: i64) -> Self {
        let half = k.div_euclid(2);
        if k.rem_euclid(2) == 0 {
            Surd::rational(x, powi(x, half))
        } else {
            Surd { x: x.clone(), a: Rational::zero(), b: powi(x, half) }
        }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        debug_assert_eq!(self.x, o.x);
        Surd {
            x: self.x.clone(),
            a: &self.a * &o.a + &self.b * &o.b * &self.x,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn add(&self, o: &Surd) -> Surd {
        Surd { x: self.x.clone(), a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn pow(&self, e: u64) -> Surd {
        let mut acc = Surd::rational(&self.x, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        crate::exact::to_f64(&self.a) + crate::exact::to_f64(&self.b) * crate::exact::to_f64(&self.x).sqrt()
    }
}

/// Boltzmann weights of the five vertex types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weights {
    /// `w1 = (α/√x)(x-1)/Δ`, `w3 = √x/α`, `w4 = α√x`, `w5 = w6 = 1`.
    Parametrized { x: Rational, delta: Rational, alpha: Rational },
    /// `w1 = w3 = w4 = 1`, `w5 = w6 = 1/√x`.
    Simulation { x: Rational },
    /// All weights equal to one.
    FreeFermion,
}

impl Weights {
    pub fn parametrized(x: Rational, delta: Rational, alpha: Rational) -> Result<Self> {
        if !x.is_positive() || !alpha.is_positive() {
            return Err(Error::Domain("x and α must be positive".into()));
        }
        if delta.is_zero() {
            return Err(Error::Domain("Δ = 0 requires the free-fermion weights".into()));
        }
        if !((&x - Rational::one()) / &delta).is_positive() {
            return Err(Error::Domain("(x-1)/Δ must be positive".into()));
        }
        Ok(Weights::Parametrized { x, delta, alpha })
    }

    pub fn simulation(x: Rational) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::Domain("x must be positive".into()));
        }
        Ok(Weights::Simulation { x })
    }

    fn x(&self) -> Rational {
        match self {
            Weights::Parametrized { x, .. } | Weights::Simulation { x } => x.clone(),
            Weights::FreeFermion => Rational::one(),
        }
    }

    /// `[w1, w3, w4, w5, w6]`
    pub fn values(&self) -> [Surd; 5] {
        let x = self.x();
        let one = Surd::rational(&x, Rational::one());
        match self {
            Weights::Parametrized { x, delta, alpha } => {
                let inv_sqrt = Surd::sqrt_pow(x, -1);
                let w1 = inv_sqrt.mul(&Surd::rational(x, alpha * (x - Rational::one()) / delta));
                let w3 = Surd::sqrt_pow(x, 1).mul(&Surd::rational(x, alpha.recip()));
                let w4 = Surd::sqrt_pow(x, 1).mul(&Surd::rational(x, alpha.clone()));
                [w1, w3, w4, one.clone(), one]
            }
            Weights::Simulation { x } => {
                let t = Surd::sqrt_pow(x, -1);
                [one.clone(), one.clone(), one, t.clone(), t]
            }
            Weights::FreeFermion => [one.clone(), one.clone(), one.clone(), one.clone(), one],
        }
    }
}

pub fn config_weight(config: &Configuration, weights: &Weights, spec: &LatticeSpec) -> Result<Surd> {
    let k = vertex_counts(config, spec)?;
    let [w1, w3, w4, w5, w6] = weights.values();
    Ok(w1
        .pow(k.l1)
        .mul(&w3.pow(k.l3))
        .mul(&w4.pow(k.l4))
        .mul(&w5.pow(k.l5))
        .mul(&w6.pow(k.l6)))
}

/// Weight `((x-1)/Δ)^{(L-N)(M-N)} (α/√x)^{M(L-2N)} x^{N(L-N-1)}`, evaluated
/// literally for every spec.
pub fn empty_weight_e(spec: &LatticeSpec, weights: &Weights) -> Result<Surd> {
    let Weights::Parametrized { x, delta, alpha } = weights else {
        return Err(Error::Domain("E is defined for the parametrized weights".into()));
    };
    if x == &Rational::one() {
        return Err(Error::Domain("E is singular at x = 1".into()));
    }
    let (n, m, l) = (spec.n as i64, spec.m as i64, spec.l as i64);
    let e1 = (l - n) * (m - n);
    let e2 = m * (l - 2 * n);
    let e3 = n * (l - n - 1);
    let f1 = powi(&((x - Rational::one()) / delta), e1);
    let f2 = powi(alpha, e2);
    Ok(Surd::rational(x, f1 * f2 * powi(x, e3)).mul(&Surd::sqrt_pow(x, -e2)))
}

/// Weakly decreasing `a × b` array of heights in `0..=c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePartition {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub heights: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn empty(a: u32, b: u32, c: u32) -> Self {
        PlanePartition { a, b, c, heights: vec![vec![0; b as usize]; a as usize] }
    }

    pub fn is_valid(&self) -> bool {
        let h = &self.heights;
        h.len() == self.a as usize
            && h.iter().all(|r| r.len() == self.b as usize)
            && h.iter().flatten().all(|&v| v <= self.c)
            && (0..h.len()).all(|i| {
                (0..h[i].len()).all(|j| {
                    (i + 1 >= h.len() || h[i + 1][j] <= h[i][j])
                        && (j + 1 >= h[i].len() || h[i][j + 1] <= h[i][j])
                })
            })
    }

    pub fn volume(&self) -> u64 {
        self.heights.iter().flatten().map(|&v| v as u64).sum()
    }
}

/// Height `h[a][b]` counts how far the `(L-N-a)`-th horizontal step of line
/// `b + 1` lags behind the ferroelectric state, in which line `i` makes all
/// its horizontal steps in row `N - i + 1`.
pub fn config_to_plane_partition(config: &Configuration, spec: &LatticeSpec) -> Result<PlanePartition> {
    config.validate(spec)?;
    let (a, b, c) = spec.box_dims();
    let mut pp = PlanePartition::empty(a, b, c);
    for bi in 0..b as usize {
        let line = bi + 1;
        for ai in 0..a as usize {
            let k = a as usize - ai;
            let col = (line + k) as u32;
            let row = config
                .slices
                .iter()
                .position(|s| s[bi] >= col)
                .ok_or_else(|| Error::Structural("line never reaches its column".into()))?;
            pp.heights[ai][bi] = (row + line) as u32 - spec.n - 1;
        }
    }
    Ok(pp)
}

pub fn plane_partition_to_config(pp: &PlanePartition, spec: &LatticeSpec) -> Result<Configuration> {
    if (pp.a, pp.b, pp.c) != spec.box_dims() || !pp.is_valid() {
        return Err(Error::Structural("plane partition does not fit the spec box".into()));
    }
    let (n, m) = (spec.n as usize, spec.m as usize);
    let a = pp.a as usize;
    let mut slices = vec![vec![0u32; n]; m + 1];
    for bi in 0..n {
        let line = bi + 1;
        let rows: Vec<usize> = (1..=a)
            .map(|k| pp.heights[a - k][bi] as usize + n + 1 - line)
            .collect();
        for (t, s) in slices.iter_mut().enumerate() {
            s[bi] = (line + rows.iter().filter(|&&r| r <= t).count()) as u32;
        }
    }
    let cfg = Configuration { slices };
    cfg.validate(spec)?;
    Ok(cfg)
}

/// MacMahon's count of plane partitions in an `a × b × c` box.
pub fn macmahon_pl(a: u32, b: u32, c: u32) -> BigInt {
    let (a, b, c) = (a as u64, b as u64, c as u64);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..a {
        num *= factorial(b + c + j) * factorial(j);
        den *= factorial(b + j) * factorial(c + j);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn spec(n: u32, m: u32, l: u32) -> LatticeSpec {
        LatticeSpec::new(n, m, l).unwrap()
    }

    #[test]
    fn tiny_enumerations() {
        assert_eq!(enumerate_configurations(&spec(1, 1, 2), 100).unwrap().len(), 1);
        assert_eq!(enumerate_configurations(&spec(0, 3, 3), 100).unwrap().len(), 1);
        let cs = enumerate_configurations(&spec(1, 2, 3), 100).unwrap();
        let mut mids: Vec<u32> = cs.iter().map(|c| c.slices[1][0]).collect();
        mids.sort();
        assert_eq!(mids, vec![1, 2, 3]);
    }

    #[test]
    fn counts_of_single_turn() {
        let s = spec(1, 1, 2);
        let c = &enumerate_configurations(&s, 10).unwrap()[0];
        let k = vertex_counts(c, &s).unwrap();
        assert_eq!((k.l1, k.l3, k.l4, k.l5, k.l6), (0, 0, 0, 1, 1));
        let s = spec(1, 2, 3);
        for c in enumerate_configurations(&s, 10).unwrap() {
            let expect = if c.slices[1][0] == 2 { 2 } else { 1 };
            assert_eq!(vertex_counts(&c, &s).unwrap().l5, expect);
            assert_eq!(c.turn_pairs(), expect);
        }
    }

    #[test]
    fn tilde_z_small() {
        assert_eq!(brute_force_tilde_z(&spec(1, 2, 3), 10).unwrap(), Poly::from_ints(&[2, 1]));
        assert_eq!(brute_force_tilde_z(&spec(1, 1, 2), 10).unwrap(), Poly::one());
        assert_eq!(
            p_from_enumeration(&spec(1, 2, 3), 10).unwrap(),
            Poly::new(vec![int(1), rat(1, 2)])
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            brute_force_tilde_z(&spec(2, 5, 5), 3),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn macmahon_values() {
        assert_eq!(macmahon_pl(1, 1, 1), BigInt::from(2));
        assert_eq!(macmahon_pl(2, 1, 1), BigInt::from(3));
        assert_eq!(macmahon_pl(3, 2, 2), BigInt::from(50));
        assert_eq!(macmahon_pl(4, 5, 0), BigInt::from(1));
        assert_eq!(macmahon_pl(2, 3, 4), macmahon_pl(4, 2, 3));
    }

    #[test]
    fn ferroelectric_is_empty_partition() {
        let s = spec(2, 4, 5);
        let cs = enumerate_configurations(&s, 1000).unwrap();
        let empty = PlanePartition::empty(3, 2, 2);
        let base = plane_partition_to_config(&empty, &s).unwrap();
        assert!(cs.contains(&base));
        assert_eq!(base.turn_pairs(), 2);
        assert_eq!(config_to_plane_partition(&base, &s).unwrap(), empty);
    }

    #[test]
    fn e_factor_example() {
        let s = spec(1, 2, 3);
        let w = Weights::parametrized(int(2), int(1), int(1)).unwrap();
        let e = empty_weight_e(&s, &w).unwrap();
        assert_eq!((e.a, e.b), (int(1), int(0)));
        let w = Weights::parametrized(rat(1, 3), int(-2), int(1)).unwrap();
        assert!(empty_weight_e(&s, &w).unwrap().to_f64() > 0.0);
        assert!(Weights::parametrized(int(2), int(-1), int(1)).is_err());
        assert!(Weights::parametrized(int(2), int(0), int(1)).is_err());
    }

    #[test]
    fn rejects_bad_slices() {
        let s = spec(1, 2, 3);
        let c = Configuration { slices: vec![vec![1], vec![3], vec![2]] };
        assert!(matches!(vertex_counts(&c, &s), Err(Error::Structural(_))));
        let c = Configuration { slices: vec![vec![1], vec![3]] };
        assert!(c.validate(&s).is_err());
    }
}
