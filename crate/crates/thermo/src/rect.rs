//! Rectangular domains: Regime I above `xc`, Regime II below, with the
//! quartic branch `y(x)` parametrising Regime II.

use crate::barnes::{LOG_SQRT_2PI, ZETA_PRIME_MINUS_ONE};
use crate::geometry::Regime;
use fivevertex::{Error, Result};

pub fn critical_x(p: f64, q: f64) -> f64 {
    (((p + 1.0) * (q + 1.0)).sqrt() + (p * q).sqrt()).powi(2)
}

pub fn critical_y(p: f64, q: f64) -> f64 {
    ((p * (q + 1.0)).sqrt() + (q * (p + 1.0)).sqrt()).powi(2)
}

/// `s(x)`, vanishing at `xc`.
pub fn s_of_x(p: f64, q: f64, x: f64) -> f64 {
    x * x - 2.0 * (2.0 * p * q + p + q + 1.0) * x + (p + q + 1.0).powi(2)
}

/// The quartic map `x(y)`.
pub fn x_of_y(p: f64, q: f64, y: f64) -> f64 {
    let d = p - q;
    let num = (y + 1.0).powi(2) * (y - d) * (y + d);
    let den = ((2.0 * p + 1.0) * y + d) * ((2.0 * q + 1.0) * y - d);
    num / den
}

fn bisect(p: f64, q: f64, x: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if x_of_y(p, q, mid) < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lower end of the branch: `|p-q|`, or the point with `x = 1/xc` when `p = q`.
fn branch_start(p: f64, q: f64) -> (f64, f64) {
    let d = (p - q).abs();
    if d == 0.0 {
        (0.0, 1.0 / (2.0 * p + 1.0).powi(2))
    } else {
        (d, 0.0)
    }
}

/// `y ∈ [|p-q|, yc]` with `x(y) = x`, for `0 ≤ x ≤ xc`.
pub fn solve_quartic_branch(p: f64, q: f64, x: f64) -> Result<f64> {
    let xc = critical_x(p, q);
    let (y0, x0) = branch_start(p, q);
    if !(x >= x0 && x <= xc) {
        return Err(Error::Domain(format!("x = {x} lies outside [{x0}, {xc}]")));
    }
    if x == x0 {
        return Ok(y0);
    }
    Ok(bisect(p, q, x, y0, critical_y(p, q)))
}

/// The same branch continued past `xc`, where `x(y)` stays increasing.
pub fn solve_quartic_extended(p: f64, q: f64, x: f64) -> Result<f64> {
    if x <= critical_x(p, q) {
        return solve_quartic_branch(p, q, x);
    }
    let lo = critical_y(p, q);
    let mut hi = 2.0 * lo + 1.0;
    while x_of_y(p, q, hi) < x {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain(format!("x = {x} is out of range")));
        }
    }
    Ok(bisect(p, q, x, lo, hi))
}

fn xlogx(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t.ln()
    }
}

pub fn f2_regime_i(p: f64, q: f64, x: f64) -> f64 {
    p * q * (x / (x - 1.0)).ln()
}

pub fn f2_regime_ii(p: f64, q: f64, y: f64) -> f64 {
    let d = p - q;
    let c2 = -0.5
        * ((p + 1.0) * xlogx(2.0 * (p + 1.0))
            + (q + 1.0) * xlogx(2.0 * (q + 1.0))
            + p * xlogx(2.0 * p)
            + q * xlogx(2.0 * q))
        / 2.0;
    // at p = q the log y terms cancel and y = 0 is on the branch
    let vanishing = if d == 0.0 {
        p * (p + 1.0) * (2.0 * p + 1.0).ln() + q * (q + 1.0) * (2.0 * q + 1.0).ln()
    } else {
        -(p + q).powi(2) / 2.0 * y.ln() - p * (y + d).ln() - q * (y - d).ln()
            + p * (p + 1.0) * ((2.0 * p + 1.0) * y + d).ln()
            + q * (q + 1.0) * ((2.0 * q + 1.0) * y - d).ln()
    };
    vanishing - (d * d + 2.0 * p + 2.0 * q + 1.0) / 2.0 * (y + 1.0).ln()
        + (p + q + 1.0) * (y + p + q + 2.0).ln()
        + c2
}

pub fn f1_regime_i(p: f64, q: f64, x: f64) -> f64 {
    let rs = s_of_x(p, q, x).max(0.0).sqrt();
    let rx = (x * (x - 1.0)).sqrt();
    let t = p + q + 1.0;
    (2.0 * p + 1.0) / 2.0 * (((2.0 * p + 1.0) * x - t + rs) / (2.0 * (p + 1.0) * rx)).ln()
        + (2.0 * q + 1.0) / 2.0 * (((2.0 * q + 1.0) * x - t + rs) / (2.0 * (q + 1.0) * rx)).ln()
        - 0.5 * ((x - 2.0 * p * q - t + rs) / (2.0 * x)).ln()
}

pub fn f1_regime_ii(p: f64, q: f64, x: f64) -> f64 {
    0.5 * x.ln()
        - 0.5 * (xlogx(p + 1.0) + xlogx(q + 1.0) - xlogx(p) - xlogx(q))
}

pub fn f0_regime_i(p: f64, q: f64, x: f64) -> f64 {
    0.25 * (x * (x - 1.0) / s_of_x(p, q, x)).ln()
}

/// The quadratic and cubic factors are negative on parts of the branch; their moduli are used.
pub fn f0_regime_ii(p: f64, q: f64, y: f64) -> f64 {
    let d = p - q;
    let quad = y * y - 2.0 * (2.0 * p * q + p + q) * y + d * d;
    let cubic = (2.0 * p + 1.0) * (2.0 * q + 1.0) * y.powi(3)
        - d * d * (3.0 * y * y + 3.0 * y - (p + q + 1.0).powi(2) + 1.0);
    (y.ln() + (y + 1.0).ln()
        - 2.0 * ((2.0 * p + 1.0) * y + d).ln()
        - 2.0 * ((2.0 * q + 1.0) * y - d).ln()
        + 3.0 * quad.abs().ln()
        - cubic.abs().ln() / 3.0)
        / 8.0
        - (16.0 * p * (p + 1.0) * q * (q + 1.0)).ln() / 24.0
        + ZETA_PRIME_MINUS_ONE
        + LOG_SQRT_2PI
}

pub fn log_n_coeff(regime: Regime) -> f64 {
    match regime {
        Regime::II => 5.0 / 12.0,
        _ => 0.0,
    }
}

/// `σ/N²` to leading order; `y` is ignored in Regime I.
pub fn sigma2(p: f64, q: f64, regime: Regime, x: f64, y: f64) -> f64 {
    let (v, u) = (p + 0.5, q + 0.5);
    match regime {
        Regime::II => {
            v * u / 2.0 - (v * v + u * u) / (16.0 * v * u) - 0.25 - y / 2.0
                + (4.0 * v * v - 1.0) * (u * u - v * v) / (16.0 * v * (2.0 * v * y + v - u))
                + (4.0 * u * u - 1.0) * (v * v - u * u) / (16.0 * u * (2.0 * u * y + u - v))
        }
        _ => -x / 4.0 - u * v / 2.0 + 0.125,
    }
}

/// `df2/dx` recovered from `σ2`.
pub fn f2_prime_from_sigma(p: f64, q: f64, x: f64, sigma2: f64) -> f64 {
    let (v, u) = (p + 0.5, q + 0.5);
    let b2 = (v * u - u - v) / 2.0 + 0.375;
    (sigma2 + x / 4.0 - b2) / (x * (x - 1.0))
}

/// `(f2^II - f2^I)'` in terms of the branch coordinate.
pub fn rho_prime(p: f64, q: f64, x: f64, y: f64) -> f64 {
    let (v, u) = (p + 0.5, q + 0.5);
    let k = y * y + (1.0 - 4.0 * v * u) * y + (v - u).powi(2);
    k * k / (4.0 * x * y * y * (y + v + u + 1.0) * (y - v - u + 1.0))
}

/// `f2(1)` from the plane-partition count.
pub fn f2_at_one(p: f64, q: f64) -> f64 {
    0.5 * (p * xlogx(p) + q * xlogx(q) + (p + q + 1.0) * xlogx(p + q + 1.0)
        - (p + 1.0) * xlogx(p + 1.0)
        - (q + 1.0) * xlogx(q + 1.0)
        - (p + q) * xlogx(p + q))
}

/// `lim_{x→0} [min(p,q) log x + f2(x)]`.
pub fn f2_limit_at_zero(p: f64, q: f64) -> f64 {
    let d = (p - q).abs();
    let sgn = (p - q).signum();
    d * xlogx(d) / 2.0 - (d + 1.0) * xlogx(d + 1.0) / 2.0
        + sgn / 2.0
            * ((p + 1.0) * xlogx(p + 1.0) - p * xlogx(p) - (q + 1.0) * xlogx(q + 1.0)
                + q * xlogx(q))
}
