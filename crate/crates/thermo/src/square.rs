//! Square domains: `xc = (2r+1)²`, three regimes.

use crate::barnes::{log_barnes_g, LOG_SQRT_2PI, ZETA_PRIME_MINUS_ONE};
use crate::geometry::Regime;

fn xc(r: f64) -> f64 {
    (2.0 * r + 1.0).powi(2)
}

pub fn f2(r: f64, regime: Regime, x: f64) -> f64 {
    let s = 2.0 * r + 1.0;
    let xc = s * s;
    match regime {
        Regime::I => r * r * (x / (x - 1.0)).ln(),
        Regime::II => {
            s * ((1.0 + x.sqrt()) / (1.0 + s)).ln() - (r + 0.25) * (x / xc).ln()
                + r * r * (xc / (xc - 1.0)).ln()
        }
        Regime::III => -r * r * (1.0 - x).ln() - r * x.ln(),
    }
}

/// `df2/dx`.
pub fn f2_prime(r: f64, regime: Regime, x: f64) -> f64 {
    let s = 2.0 * r + 1.0;
    match regime {
        Regime::I => -r * r / (x * (x - 1.0)),
        Regime::II => s / (2.0 * x.sqrt() * (1.0 + x.sqrt())) - (r + 0.25) / x,
        Regime::III => r * r / (1.0 - x) - r / x,
    }
}

pub fn f1(r: f64, eps: i64, regime: Regime, x: f64) -> f64 {
    let s = 2.0 * r + 1.0;
    let xc = s * s;
    let sx = x.sqrt();
    let tail = (2.0 * sx / (s + 1.0)).ln() + r * ((s - 1.0) / (s + 1.0)).ln();
    match regime {
        Regime::I => {
            let root = (x - xc).sqrt();
            s * (((xc * (x - 1.0)).sqrt() + root) / ((1.0 + s) * sx)).ln()
                - (((x - 1.0).sqrt() + root) / (2.0 * sx)).ln()
        }
        Regime::II => tail,
        Regime::III => {
            let e = eps.unsigned_abs() as f64;
            let a = (1.0 - x).sqrt();
            let b = (1.0 - xc * x).sqrt();
            let d = (xc - 1.0).sqrt();
            e * s * ((s * a + b) / d).ln() - e * ((a + b) / (d * sx)).ln() + tail
        }
    }
}

pub fn f0(r: f64, eps: i64, regime: Regime, x: f64) -> f64 {
    let s = 2.0 * r + 1.0;
    let xc = s * s;
    let sx = x.sqrt();
    let e2 = (eps * eps) as f64;
    match regime {
        Regime::I => 0.25 * (x / (x - xc)).ln() - e2 / 4.0 * (x / (x - 1.0)).ln(),
        Regime::II => {
            ((s - sx).powi(3) * sx / (s * sx - 1.0)).ln() / 8.0 - (s * (xc - 1.0)).ln() / 12.0
                + e2 / 2.0 * ((s * sx - 1.0) / ((xc - 1.0).sqrt() * sx)).ln()
                + ZETA_PRIME_MINUS_ONE
                + LOG_SQRT_2PI
        }
        Regime::III => {
            let e = eps.unsigned_abs();
            0.25 * (1.0 - x).ln() - e2 / 4.0 * (1.0 - xc * x).ln()
                + (1.0 - e as f64) * LOG_SQRT_2PI
                + log_barnes_g(1 + e).expect("G(1 + |ε|) is finite")
        }
    }
}

pub fn log_n_coeff(eps: i64, regime: Regime) -> f64 {
    match regime {
        Regime::I => 0.0,
        Regime::II => 5.0 / 12.0,
        Regime::III => (1.0 - (eps * eps) as f64) / 2.0,
    }
}

/// Leading `σ/N²` with `w = r + 1/2`.
pub fn sigma2(r: f64, regime: Regime, x: f64) -> f64 {
    let w = r + 0.5;
    match regime {
        Regime::I => -x / 4.0 - w * w / 2.0 + 0.125,
        Regime::II => -w * x.sqrt() + w * w / 2.0 + 0.125,
        Regime::III => -w * w * x + w * w / 2.0 - 0.125,
    }
}

/// `f2(1)` from the plane-partition count at `x = 1`.
pub fn f2_at_one(r: f64) -> f64 {
    (2.0 * r + 1.0).powi(2) / 2.0 * (2.0 * r + 1.0).ln()
        - (r + 1.0).powi(2) * (r + 1.0).ln()
        - r * r * (4.0 * r).ln()
}

/// `f2^I - f2^II`, vanishing with its first two derivatives at `xc`.
pub fn rho_plus(r: f64, x: f64) -> f64 {
    f2(r, Regime::II, x) - f2(r, Regime::I, x)
}

pub fn rho_plus_prime(r: f64, x: f64) -> f64 {
    let w = r + 0.5;
    (x.sqrt() - 2.0 * w).powi(2) / (4.0 * x * (x - 1.0))
}

pub fn critical_x(r: f64) -> f64 {
    xc(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuity_at_both_boundaries() {
        for r in [0.3, 1.0, 2.5] {
            let c = xc(r);
            assert!((f2(r, Regime::I, c) - f2(r, Regime::II, c)).abs() < 1e-12);
            assert!((f2(r, Regime::II, 1.0 / c) - f2(r, Regime::III, 1.0 / c)).abs() < 1e-12);
            assert!((f2_prime(r, Regime::I, c) - f2_prime(r, Regime::II, c)).abs() < 1e-12);
            assert!(
                (f2_prime(r, Regime::II, 1.0 / c) - f2_prime(r, Regime::III, 1.0 / c)).abs() < 1e-10
            );
            assert!((sigma2(r, Regime::I, c) - sigma2(r, Regime::II, c)).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_value_at_xc() {
        assert!((f2(1.0, Regime::I, 9.0) - (9.0f64 / 8.0).ln()).abs() < 1e-14);
        assert!((f2(1.0, Regime::II, 9.0) - (9.0f64 / 8.0).ln()).abs() < 1e-14);
        assert!((sigma2(1.0, Regime::II, 9.0) + 13.0 / 4.0).abs() < 1e-14);
    }

    #[test]
    fn endpoints() {
        let want = 4.5 * 3f64.ln() - 6.0 * 2f64.ln();
        assert!((f2(1.0, Regime::II, 1.0) - want).abs() < 1e-14);
        assert!((f2_at_one(1.0) - want).abs() < 1e-14);
        for r in [0.5, 1.0, 3.0] {
            assert!((f2(r, Regime::II, 1.0) - f2_at_one(r)).abs() < 1e-12);
            assert!((r * 1e-12f64.ln() + f2(r, Regime::III, 1e-12)).abs() < 1e-9);
        }
        assert!(f2(1.0, Regime::I, 1e9).abs() < 1e-8);
        assert!(f1(1.0, 1, Regime::I, 1e12).abs() < 1e-5);
        assert!(f0(1.0, 0, Regime::I, 1e12).abs() < 1e-10);
    }

    #[test]
    fn derivative_matches_differences() {
        let h = 1e-5;
        for (regime, x) in [(Regime::I, 20.0), (Regime::II, 2.0), (Regime::III, 0.05)] {
            let fd = (f2(1.0, regime, x + h) - f2(1.0, regime, x - h)) / (2.0 * h);
            let exact = f2_prime(1.0, regime, x);
            assert!((fd - exact).abs() < 1e-7 * exact.abs().max(1.0), "{regime:?}");
        }
        let rp = (rho_plus(1.0, 20.0 + h) - rho_plus(1.0, 20.0 - h)) / (2.0 * h);
        assert!((rp - rho_plus_prime(1.0, 20.0)).abs() < 1e-9);
    }

    #[test]
    fn sigma2_integrates_to_f2() {
        let (r, h) = (1.0, 1e-5);
        let w: f64 = r + 0.5;
        let b2 = w * w / 2.0 - w + 0.375;
        for (regime, x) in [(Regime::I, 20.0), (Regime::II, 3.0), (Regime::III, 0.05)] {
            let fd = (f2(r, regime, x + h) - f2(r, regime, x - h)) / (2.0 * h);
            let from_sigma = (sigma2(r, regime, x) + x / 4.0 - b2) / (x * (x - 1.0));
            assert!((fd - from_sigma).abs() < 1e-7 * fd.abs().max(1.0), "{regime:?}");
        }
    }
}
