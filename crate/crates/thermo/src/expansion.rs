use crate::barnes::LOG_SQRT_2PI;
use crate::geometry::{Geometry, Regime};
use crate::{rect, square};
use fivevertex::{Error, Result};
use serde::Serialize;

/// `log P ≈ N² f2 + N f1 + logn_coeff·log N + f0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticExpansion {
    pub regime: Regime,
    pub x: f64,
    pub f2: f64,
    pub f1: f64,
    pub f0: f64,
    pub logn_coeff: f64,
    /// `f0` sits on a logarithmic singularity.
    pub divergent: bool,
}

impl AsymptoticExpansion {
    pub fn log_p(&self, n: f64) -> f64 {
        n * n * self.f2 + n * self.f1 + self.logn_coeff * n.ln() + self.f0
    }
}

/// `log Z̃ ≈ N² F2 + N F1 + κ log N + F0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WtZExpansion {
    pub regime: Regime,
    pub big_f2: f64,
    pub big_f1: f64,
    pub big_f0: f64,
    pub kappa: f64,
}

impl WtZExpansion {
    pub fn value(&self, n: f64) -> f64 {
        n * n * self.big_f2 + n * self.big_f1 + self.kappa * n.ln() + self.big_f0
    }
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} must be finite and non-negative")))
    }
}

/// Expansion in a given regime; the formulas are evaluated as written, so a
/// regime may be pushed past its own interval (used by the boundary scans).
pub fn f_terms_in(geometry: &Geometry, regime: Regime, x: f64) -> Result<AsymptoticExpansion> {
    check_x(x)?;
    let xc = geometry.critical_x();
    let on_critical = regime == Regime::I && x == xc;
    let (f2, f1, f0, logn_coeff) = match *geometry {
        Geometry::Square { r, eps } => (
            square::f2(r, regime, x),
            square::f1(r, eps, regime, x),
            square::f0(r, eps, regime, x),
            square::log_n_coeff(eps, regime),
        ),
        Geometry::Rect { p, q } => match regime {
            Regime::I => (
                rect::f2_regime_i(p, q, x),
                rect::f1_regime_i(p, q, x),
                rect::f0_regime_i(p, q, x),
                0.0,
            ),
            Regime::II => {
                let y = rect::solve_quartic_extended(p, q, x)?;
                (
                    rect::f2_regime_ii(p, q, y),
                    rect::f1_regime_ii(p, q, x),
                    rect::f0_regime_ii(p, q, y),
                    rect::log_n_coeff(Regime::II),
                )
            }
            Regime::III => {
                return Err(Error::Domain("rectangular domains have no Regime III".into()))
            }
        },
    };
    let f0 = if on_critical { f64::INFINITY } else { f0 };
    let divergent = !f0.is_finite();
    Ok(AsymptoticExpansion { regime, x, f2, f1, f0, logn_coeff, divergent })
}

/// Expansion in the regime containing `x`.
pub fn f_terms(geometry: &Geometry, x: f64) -> Result<AsymptoticExpansion> {
    f_terms_in(geometry, geometry.classify(x)?, x)
}

/// Expansions from every regime whose closed interval contains `x`.
pub fn f_terms_all(geometry: &Geometry, x: f64) -> Result<Vec<AsymptoticExpansion>> {
    geometry.regimes_at(x)?.into_iter().map(|r| f_terms_in(geometry, r, x)).collect()
}

pub fn f2_in(geometry: &Geometry, regime: Regime, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(match *geometry {
        Geometry::Square { r, .. } => square::f2(r, regime, x),
        Geometry::Rect { p, q } => match regime {
            Regime::I => rect::f2_regime_i(p, q, x),
            _ => rect::f2_regime_ii(p, q, rect::solve_quartic_extended(p, q, x)?),
        },
    })
}

/// Leading `σ/N²`.
pub fn sigma2_leading(geometry: &Geometry, x: f64) -> Result<f64> {
    check_x(x)?;
    let regime = geometry.classify(x)?;
    Ok(match *geometry {
        Geometry::Square { r, .. } => square::sigma2(r, regime, x),
        Geometry::Rect { p, q } => {
            let y = match regime {
                Regime::I => 0.0,
                _ => rect::solve_quartic_branch(p, q, x)?,
            };
            rect::sigma2(p, q, regime, x, y)
        }
    })
}

/// The `log Z̃` expansion obtained by removing the gauge and binomial factors.
pub fn wtz_expansion(geometry: &Geometry, x: f64) -> Result<WtZExpansion> {
    let e = f_terms(geometry, x)?;
    let (big_f1, big_f0) = match *geometry {
        Geometry::Square { r, eps } => (
            e.f1 + (r + 1.0) * (r + 1.0).ln() - r * r.ln(),
            e.f0 - LOG_SQRT_2PI - eps as f64 / 2.0 * (r / (r + 1.0)).ln(),
        ),
        Geometry::Rect { p, .. } => {
            (e.f1 + (p + 1.0) * (p + 1.0).ln() - p * p.ln(), e.f0 - LOG_SQRT_2PI)
        }
    };
    Ok(WtZExpansion {
        regime: e.regime,
        big_f2: e.f2,
        big_f1,
        big_f0,
        kappa: e.logn_coeff - 0.5,
    })
}

/// Free energy per site in the symmetric gauge.
pub fn free_energy(p: f64, q: f64, x: f64, delta: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("α = {alpha} must be positive")));
    }
    let ratio = (x - 1.0) / delta;
    if !(ratio > 0.0) {
        return Err(Error::Domain(format!("(x-1)/Δ = {ratio} must be positive")));
    }
    let geometry = if p == q { Geometry::square(p, 0)? } else { Geometry::rect(p, q)? };
    let f2 = f_terms(&geometry, x)?.f2;
    let area = (p + 1.0) * (q + 1.0);
    Ok(-f2 / area - p * q * ratio.ln() / area + (0.5 - 1.0 / area) * x.ln()
        - (q - 1.0) / (q + 1.0) * alpha.ln())
}
