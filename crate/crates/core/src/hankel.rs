//! Hankel-determinant representations of `P_{N,M,L}(1/x)`.
//!
//! Three formulas are implemented: an `N × N` determinant of moments of a
//! terminating Gauss sum in `1/x` ([`p_via_pnew`]), an `(L-N) × (L-N)`
//! determinant in `x` ([`p_via_zhom1`]) and an `N × N` determinant of a
//! rational function with a pole at `x = 1` ([`p_via_zhom2`]). The operator
//! `θ = x d/dx` is always applied symbolically.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    int_pow, binomial, det_poly, det_rational, factorial, hypergeometric_2f1, int, pochhammer, powi,
    series_mul, Poly, Rational,
};
use crate::model::{macmahon_pl, LatticeSpec};

/// Largest determinant size accepted by default.
pub const DEFAULT_MAX_DET: u32 = 32;

fn fact(n: i64) -> Rational {
    assert!(n >= 0, "factorial of a negative integer");
    Rational::from_integer(factorial(n as u64))
}

fn check_size(size: u32, max_det: u32) -> Result<()> {
    if size > max_det {
        return Err(Error::Resource(format!(
            "determinant of size {size} exceeds the cap {max_det}"
        )));
    }
    Ok(())
}

/// `μ(m) = (2-L)_m (1-M)_m / ((m+1)! m!)`
pub fn moment(spec: &LatticeSpec, m: u64) -> Rational {
    let a = int(2 - spec.l as i64);
    let b = int(1 - spec.m as i64);
    pochhammer(&a, m) * pochhammer(&b, m) / (fact(m as i64 + 1) * fact(m as i64))
}

/// Largest index with a possibly non-zero moment, `min(L-2, M-1)`.
pub fn moment_support(spec: &LatticeSpec) -> Option<u64> {
    let (m, l) = (spec.m as i64, spec.l as i64);
    let top = (l - 2).min(m - 1);
    (top >= 0).then_some(top as u64)
}

pub fn moments(spec: &LatticeSpec) -> Vec<Rational> {
    match moment_support(spec) {
        Some(top) => (0..=top).map(|m| moment(spec, m)).collect(),
        None => vec![Rational::one()],
    }
}

/// Entries `H_ij = Σ_m μ(m) m^{i+j} z^m`, `0 ≤ i, j < n`, with `0^0 = 1`.
pub fn hankel_matrix(mu: &[Rational], n: usize, z: &Rational) -> Vec<Vec<Rational>> {
    let zpow: Vec<Rational> = (0..mu.len()).map(|m| powi(z, m as i64)).collect();
    let diag: Vec<Rational> = (0..2 * n.max(1) - 1)
        .map(|k| {
            mu.iter()
                .enumerate()
                .map(|(m, v)| v * &zpow[m] * int_pow(m as u64, k as u32))
                .sum()
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| diag[i + j].clone()).collect()).collect()
}

pub fn hankel_determinant_exact(h: &[Vec<Rational>]) -> Rational {
    det_rational(h)
}

/// `N! Π_j (L-N-1+j)! (M-N+j)! / ((L-2)! (M-1)!)`
pub fn pnew_prefactor(spec: &LatticeSpec) -> Rational {
    let (n, m, l) = (spec.n as i64, spec.m as i64, spec.l as i64);
    let mut acc = fact(n);
    for j in 0..n {
        acc *= fact(l - n - 1 + j) * fact(m - n + j) / (fact(l - 2) * fact(m - 1));
    }
    acc
}

pub fn p_via_pnew(spec: &LatticeSpec, x: &Rational) -> Result<Rational> {
    p_via_pnew_capped(spec, x, DEFAULT_MAX_DET)
}

pub fn p_via_pnew_capped(spec: &LatticeSpec, x: &Rational, max_det: u32) -> Result<Rational> {
    if x.is_zero() {
        return Err(Error::Domain("x = 0 is a pole of P(1/x)".into()));
    }
    if spec.is_trivial() {
        return Ok(Rational::one());
    }
    check_size(spec.n, max_det)?;
    let n = spec.n as i64;
    let h = hankel_matrix(&moments(spec), spec.n as usize, &x.recip());
    Ok(pnew_prefactor(spec) * powi(x, n * (n - 1) / 2) * det_rational(&h))
}

fn check_x(x: &Rational) -> Result<()> {
    if x.is_zero() || x.is_one() {
        return Err(Error::Domain(
            "x must avoid 0 and 1 here; use P_at_one at x = 1".into(),
        ));
    }
    Ok(())
}

pub fn p_via_zhom1(spec: &LatticeSpec, x: &Rational) -> Result<Rational> {
    Ok(tilde_z_via_zhom1(spec, x)? / Rational::from_integer(spec.binom_mn()))
}

pub fn p_via_zhom2(spec: &LatticeSpec, x: &Rational) -> Result<Rational> {
    Ok(tilde_z_via_zhom2(spec, x)? / Rational::from_integer(spec.binom_mn()))
}

/// `binom(M,N) P(1/x)` from the `(L-N) × (L-N)` determinant in `x`.
pub fn tilde_z_via_zhom1(spec: &LatticeSpec, x: &Rational) -> Result<Rational> {
    check_x(x)?;
    if spec.is_trivial() {
        return Ok(Rational::from_integer(spec.binom_mn()));
    }
    let (n, m, l) = (spec.n as i64, spec.m as i64, spec.l as i64);
    let k = l - n;
    check_size(k as u32, DEFAULT_MAX_DET)?;
    let gauss = hypergeometric_2f1(&int(-n), &int(l - n - 1), &int(-m))?;
    let f = &Poly::linear_root(Rational::one()).pow((m + l - 2 * n - 1) as u32) * &gauss;
    let diag: Vec<Rational> = (0..2 * k - 1).map(|d| f.theta_pow(d as u32).eval(x)).collect();
    let h: Vec<Vec<Rational>> = (0..k as usize)
        .map(|i| (0..k as usize).map(|j| diag[i + j].clone()).collect())
        .collect();
    let mut pref = if (k * (k - 1) / 2) % 2 == 0 { Rational::one() } else { -Rational::one() };
    for j in 0..k {
        pref *= fact(m) * fact(m + j) / (fact(m - n) * fact(m + l - n - 1) * fact(n + j));
    }
    let xm1 = x - Rational::one();
    pref /= powi(&xm1, (l - n) * (m - n)) * powi(x, (l + n) * (l - n - 1) / 2);
    Ok(pref * det_rational(&h))
}

/// `q(1 - x)` as a polynomial in `x`.
fn reflect(q: &Poly) -> Poly {
    let one_minus_x = Poly::from_ints(&[1, -1]);
    q.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, v| &(&acc * &one_minus_x) + &Poly::constant(v.clone()))
}

/// `binom(M,N) P(1/x)` from the `N × N` determinant with a pole at `x = 1`.
pub fn tilde_z_via_zhom2(spec: &LatticeSpec, x: &Rational) -> Result<Rational> {
    check_x(x)?;
    if spec.is_trivial() {
        return Ok(Rational::from_integer(spec.binom_mn()));
    }
    let (n, m, l) = (spec.n as i64, spec.m as i64, spec.l as i64);
    check_size(spec.n, DEFAULT_MAX_DET)?;
    let gauss = hypergeometric_2f1(&int(-l + n + 1), &int(-l + n), &int(-l - m + 2 * n))?;
    // θ^d [R (x-1)^{-K}] = R_d (x-1)^{-K-d}
    let pole = m + l - 2 * n + 1;
    let xpoly = Poly::from_ints(&[0, 1]);
    let xxm1 = Poly::from_ints(&[0, -1, 1]);
    let mut r = reflect(&gauss);
    let xm1 = x - Rational::one();
    let mut diag = Vec::new();
    for d in 0..2 * n - 1 {
        diag.push(r.eval(x) / powi(&xm1, pole + d));
        r = &(&xxm1 * &r.derivative()) - &(&xpoly * &r).scale(&int(pole + d));
    }
    let h: Vec<Vec<Rational>> = (0..n as usize)
        .map(|i| (0..n as usize).map(|j| diag[i + j].clone()).collect())
        .collect();
    let mut pref = Rational::one();
    for j in 0..n {
        pref *= fact(l + m - 2 * n) / (fact(l - n + j) * fact(m - n + j));
    }
    pref *= powi(&xm1, n * (m + l - n)) / powi(x, n * (l - 1) - n * (n + 1) / 2);
    Ok(pref * det_rational(&h))
}

/// Full polynomial `P(u)`, `u = 1/x`, from the moment determinant over `Q[u]`.
pub fn p_exact_polynomial(spec: &LatticeSpec) -> Result<Poly> {
    p_exact_polynomial_capped(spec, DEFAULT_MAX_DET)
}

pub fn p_exact_polynomial_capped(spec: &LatticeSpec, max_det: u32) -> Result<Poly> {
    if spec.is_trivial() {
        return Ok(Poly::one());
    }
    check_size(spec.n, max_det)?;
    let n = spec.n as usize;
    let mu = moments(spec);
    let diag: Vec<Poly> = (0..2 * n - 1)
        .map(|k| {
            Poly::new(
                mu.iter()
                    .enumerate()
                    .map(|(m, v)| v * int_pow(m as u64, k as u32))
                    .collect(),
            )
        })
        .collect();
    let h: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| diag[i + j].clone()).collect()).collect();
    let d = det_poly(h).shift_down(n * (n - 1) / 2)?;
    Ok(d.scale(&pnew_prefactor(spec)))
}

/// `P(1) = binom(M,N)^{-1} PL(N, L-N, M-N)`.
pub fn p_at_one(spec: &LatticeSpec) -> Rational {
    if spec.is_trivial() {
        return Rational::one();
    }
    Rational::new(macmahon_pl(spec.n, spec.l - spec.n, spec.m - spec.n), spec.binom_mn())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Zero,
    One,
}

impl Point {
    pub fn name(self) -> &'static str {
        match self {
            Point::Infinity => "infinity",
            Point::Zero => "zero",
            Point::One => "one",
        }
    }
}

/// `P(1/x) ≈ t^exponent Σ_k coeffs[k] t^k` with `t = 1/x`, `x` or `x - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    pub point: Point,
    pub exponent: i64,
    pub coeffs: Vec<Rational>,
}

pub fn p_series_at(p: &Poly, point: Point, k: usize) -> LocalSeries {
    let d = p.degree().unwrap_or(0);
    let q = p.reversed();
    match point {
        Point::Infinity => LocalSeries { point, exponent: 0, coeffs: p.truncated(k) },
        Point::Zero => LocalSeries { point, exponent: -(d as i64), coeffs: q.truncated(k) },
        Point::One => {
            let shifted = q.taylor_shift(&Rational::one()).truncated(k);
            // (1 + t)^{-d}
            let inv: Vec<Rational> = (0..k as u64)
                .map(|j| {
                    let b = match (d as u64, j) {
                        (0, 0) => Rational::one(),
                        (0, _) => Rational::zero(),
                        (d, j) => Rational::from_integer(binomial(d + j - 1, j)),
                    };
                    if j % 2 == 0 { b } else { -b }
                })
                .collect();
            LocalSeries { point, exponent: 0, coeffs: series_mul(&shifted, &inv, k) }
        }
    }
}
