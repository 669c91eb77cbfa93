//! Finite differences of `f2` across regime boundaries.

use crate::expansion::f2_in;
use crate::geometry::{Geometry, Regime};
use crate::rect;
use fivevertex::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Boundary {
    /// `xc`, between Regimes I and II.
    Upper,
    /// `1/xc`, between Regimes II and III (square only).
    Lower,
}

/// Central differences at `x` of one closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Differences {
    pub regime: Regime,
    pub f: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransitionReport {
    pub boundary: Boundary,
    pub x: f64,
    pub h: f64,
    /// The regime above the boundary.
    pub above: Differences,
    pub below: Differences,
    pub mismatch0: f64,
    pub mismatch1: f64,
    pub mismatch2: f64,
    /// `f2''' (above) - f2''' (below)`.
    pub jump3: f64,
    pub analytic_jump3: Option<f64>,
}

impl TransitionReport {
    /// Value and first two differences match to `tol`, the third jumps by more than `factor·tol`.
    pub fn is_third_order(&self, tol: f64, factor: f64) -> bool {
        let worst = self.mismatch0.max(self.mismatch1).max(self.mismatch2);
        worst < tol && self.jump3.abs() > factor * worst.max(f64::MIN_POSITIVE)
    }
}

pub fn differences(geometry: &Geometry, regime: Regime, x: f64, h: f64) -> Result<Differences> {
    let f = |t: f64| f2_in(geometry, regime, t);
    let (m2, m1, c, p1, p2) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
    Ok(Differences {
        regime,
        f: c,
        d1: (p1 - m1) / (2.0 * h),
        d2: (p1 - 2.0 * c + m1) / (h * h),
        d3: (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h),
    })
}

/// `f2'''` jump at `xc` from the derivative of `f2^II - f2^I`.
fn analytic_upper_jump(geometry: &Geometry) -> f64 {
    let xc = geometry.critical_x();
    match *geometry {
        Geometry::Square { .. } => -1.0 / (8.0 * xc * xc * (xc - 1.0)),
        Geometry::Rect { p, q } => {
            let (v, u) = (p + 0.5, q + 0.5);
            let y = rect::critical_y(p, q);
            let dk_dy = 2.0 * y + 1.0 - 4.0 * v * u;
            let hy = 1e-6 * y.max(1.0);
            let dx_dy = (rect::x_of_y(p, q, y + hy) - rect::x_of_y(p, q, y - hy)) / (2.0 * hy);
            let dk_dx = dk_dy / dx_dy;
            -2.0 * dk_dx * dk_dx / (4.0 * xc * y * y * (y + v + u + 1.0) * (y - v - u + 1.0))
        }
    }
}

pub fn third_order_scan(geometry: &Geometry, boundary: Boundary, h: f64) -> Result<TransitionReport> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step h = {h} must be positive")));
    }
    let xc = geometry.critical_x();
    let (x, hi, lo) = match (boundary, geometry) {
        (Boundary::Upper, _) => (xc, Regime::I, Regime::II),
        (Boundary::Lower, Geometry::Square { .. }) => (1.0 / xc, Regime::II, Regime::III),
        (Boundary::Lower, Geometry::Rect { .. }) => {
            return Err(Error::Domain("rectangular domains have a single transition".into()))
        }
    };
    if 2.0 * h >= x {
        return Err(Error::Domain(format!("step h = {h} is too large near x = {x}")));
    }
    let above = differences(geometry, hi, x, h)?;
    let below = differences(geometry, lo, x, h)?;
    Ok(TransitionReport {
        boundary,
        x,
        h,
        above,
        below,
        mismatch0: (above.f - below.f).abs(),
        mismatch1: (above.d1 - below.d1).abs(),
        mismatch2: (above.d2 - below.d2).abs(),
        jump3: above.d3 - below.d3,
        analytic_jump3: (boundary == Boundary::Upper).then(|| analytic_upper_jump(geometry)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseRow {
    pub x: f64,
    pub regime: Regime,
    pub f2: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// `f2` and its differences on `n` equally spaced points of `[from, to]`,
/// each evaluated with the closed form of its own regime.
pub fn phase_scan(geometry: &Geometry, from: f64, to: f64, n: usize, h: f64) -> Result<Vec<PhaseRow>> {
    if !(from > 2.0 * h && to > from && n >= 2) {
        return Err(Error::Domain("need 2h < from < to and at least two points".into()));
    }
    (0..n)
        .map(|i| {
            let x = from + (to - from) * i as f64 / (n - 1) as f64;
            let d = differences(geometry, geometry.classify(x)?, x, h)?;
            Ok(PhaseRow { x, regime: d.regime, f2: d.f, d1: d.d1, d2: d.d2, d3: d.d3 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_upper() {
        let g = Geometry::square(1.0, 0).unwrap();
        let r = third_order_scan(&g, Boundary::Upper, 1e-3).unwrap();
        assert!(r.is_third_order(1e-5, 10.0), "{r:?}");
        let exact = r.analytic_jump3.unwrap();
        assert!((exact + 1.0 / 5184.0).abs() < 1e-15);
        assert!((r.jump3 - exact).abs() < 1e-2 * exact.abs(), "{} {exact}", r.jump3);
    }

    #[test]
    fn square_lower() {
        let g = Geometry::square(1.0, 0).unwrap();
        let r = third_order_scan(&g, Boundary::Lower, 1e-4).unwrap();
        assert!(r.mismatch1 < 1e-6 && r.mismatch2 < 1e-3, "{r:?}");
        assert!(r.jump3.abs() > 1.0);
    }

    #[test]
    fn rect_upper() {
        let g = Geometry::rect(1.0, 2.0).unwrap();
        let r = third_order_scan(&g, Boundary::Upper, 1e-3).unwrap();
        assert!(r.is_third_order(1e-5, 10.0), "{r:?}");
        let coarse = third_order_scan(&g, Boundary::Upper, 1e-2).unwrap();
        let exact = coarse.analytic_jump3.unwrap();
        assert!((coarse.jump3 - exact).abs() < 1e-3 * exact.abs(), "{} {exact}", coarse.jump3);
        assert!(third_order_scan(&g, Boundary::Lower, 1e-3).is_err());
    }

    #[test]
    fn phase_rows() {
        let g = Geometry::square(1.0, 1).unwrap();
        let rows = phase_scan(&g, 0.05, 20.0, 40, 1e-3).unwrap();
        assert_eq!(rows.len(), 40);
        assert_eq!(rows[0].regime, Regime::III);
        assert_eq!(rows[39].regime, Regime::I);
        assert!(rows.windows(2).all(|w| w[1].f2 < w[0].f2));
    }
}
