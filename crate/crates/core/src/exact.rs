//! Exact arithmetic: rationals, dense polynomials over `Q`, truncated power
//! series, terminating hypergeometric sums and a fraction-free determinant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `base^e` without fixed-width overflow, with `0^0 = 1`.
pub fn int_pow(base: u64, e: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(base), e as usize))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `z (z+1) ... (z+m-1)`.
pub fn pochhammer(z: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = z.clone();
    for _ in 0..m {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

/// Integer power with a signed exponent.
pub fn powi(x: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.0625"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational, accurate to a few ulps even
/// when numerator and denominator overflow `f64`.
pub fn ln_rational(r: &Rational) -> f64 {
    assert!(r.is_positive(), "logarithm of a non-positive rational");
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    if r.is_zero() {
        return 0.0;
    }
    let s = if r.is_negative() { -1.0 } else { 1.0 };
    s * ln_rational(&r.abs()).exp()
}

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    c: Vec<Rational>,
}

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(v: Rational) -> Self {
        Self::new(vec![v])
    }

    pub fn monomial(coef: Rational, k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = coef;
        Self::new(c)
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest power with a non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.c.iter().map(|v| v * s).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); k];
        c.extend(self.c.iter().cloned());
        Self::new(c)
    }

    /// Divides by `x^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.c.iter().take(k).any(|v| !v.is_zero()) {
            return Err(Error::Domain(format!("polynomial not divisible by x^{k}")));
        }
        Ok(Self::new(self.c.iter().skip(k).cloned().collect()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| v * int(k as i64))
                .collect(),
        )
    }

    /// Applies `(x d/dx)^k`, i.e. multiplies the `x^j` coefficient by `j^k`.
    pub fn theta_pow(&self, k: u32) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(j, v)| v * int_pow(j as u64, k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, v| acc * x + v)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, v| acc * x + to_f64(v))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x + a)`
    pub fn taylor_shift(&self, a: &Rational) -> Self {
        let step = Self::new(vec![a.clone(), Rational::one()]);
        self.c
            .iter()
            .rev()
            .fold(Self::zero(), |acc, v| &(&acc * &step) + &Self::constant(v.clone()))
    }

    /// `x^d p(1/x)` with `d` the degree.
    pub fn reversed(&self) -> Self {
        Self::new(self.c.iter().rev().cloned().collect())
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.c.len() - 1;
        let lead = d.leading();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lead;
            if !f.is_zero() {
                for (j, dv) in d.c.iter().enumerate() {
                    r[k + j] -= &f * dv;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Truncated power series of `self` to `n` terms.
    pub fn truncated(&self, n: usize) -> Vec<Rational> {
        (0..n).map(|k| self.coeff(k)).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{v}")?,
                1 => write!(f, "{v}*u")?,
                _ => write!(f, "{v}*u^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|v| -v).collect())
    }
}

/// Truncated power-series product.
pub fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// Truncated power-series quotient; `b[0]` must be non-zero.
pub fn series_div(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    assert!(!b[0].is_zero(), "series division by a non-unit");
    let mut q = vec![Rational::zero(); n];
    for k in 0..n {
        let mut t = a.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            t -= &b[j] * &q[k - j];
        }
        q[k] = t / &b[0];
    }
    q
}

pub fn series_derivative(a: &[Rational]) -> Vec<Rational> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| v * int(k as i64))
        .collect()
}

/// Terminating Gauss sum `Σ (a)_m (b)_m / ((c)_m m!) z^m` as a polynomial in `z`.
pub fn hypergeometric_2f1(a: &Rational, b: &Rational, c: &Rational) -> Result<Poly> {
    let stop = |v: &Rational| {
        (v.is_integer() && !v.is_positive()).then(|| v.to_integer().abs().to_u64().unwrap())
    };
    let len = match (stop(a), stop(b)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => {
            return Err(Error::Domain("non-terminating 2F1".into()));
        }
    };
    let mut terms = Vec::with_capacity(len as usize + 1);
    let mut t = Rational::one();
    terms.push(t.clone());
    for m in 0..len {
        let cm = c + int(m as i64);
        if cm.is_zero() {
            return Err(Error::Domain(format!(
                "2F1 denominator vanishes at term {} before termination",
                m + 1
            )));
        }
        let mi = int(m as i64);
        t = t * (a + &mi) * (b + &mi) / (cm * int(m as i64 + 1));
        terms.push(t.clone());
    }
    Ok(Poly::new(terms))
}

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r), "inexact division in Bareiss");
        q
    }
}

impl ExactRing for Poly {
    fn r_zero() -> Self {
        Poly::zero()
    }
    fn r_one() -> Self {
        Poly::one()
    }
    fn r_is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(r.is_zero(), "inexact division in Bareiss");
        q
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss<T: ExactRing>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::r_one();
    }
    let mut sign = false;
    let mut prev = T::r_one();
    for k in 0..n - 1 {
        if a[k][k].r_is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].r_is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return T::r_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].r_mul(&a[k][k]).r_sub(&a[i][k].r_mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.r_neg()
    } else {
        d
    }
}

/// Exact determinant of a rational matrix: rows are cleared to integers and
/// the integer matrix is eliminated fraction-free.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            row.iter()
                .map(|v| v.numer() * (&l / v.denom()))
                .collect()
        })
        .collect();
    Rational::new(bareiss(rows), scale)
}

pub fn det_poly(m: Vec<Vec<Poly>>) -> Poly {
    bareiss(m)
}
