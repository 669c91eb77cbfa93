//! Finite-size residuals of the expansions against exact values.

use crate::expansion::f_terms;
use crate::geometry::{spec_p_q, spec_r_eps, Geometry, Regime};
use crate::square;
use fivevertex::exact::{format_rational, ln_rational, powi, to_f64, Rational};
use fivevertex::hankel::{p_at_one, p_via_pnew};
use fivevertex::{Error, LatticeSpec, Result};
use num_traits::{One, Signed};
use serde::Serialize;

/// Which large-N shape a family follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Square,
    Rect,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "L")]
    pub l: u32,
    pub x_num: String,
    pub x_den: String,
    #[serde(rename = "logP_exact")]
    pub log_p_exact: f64,
    pub prediction: f64,
    pub residual: f64,
    #[serde(rename = "residual_times_N")]
    pub residual_times_n: f64,
}

/// `log P(1/x)` from the exact rational value.
pub fn exact_log_p(spec: &LatticeSpec, x: &Rational) -> Result<f64> {
    let p = if x.is_one() { p_at_one(spec) } else { p_via_pnew(spec, x)? };
    if !p.is_positive() {
        return Err(Error::Domain(format!("P = {} has no logarithm", format_rational(&p))));
    }
    Ok(ln_rational(&p))
}

/// Geometry with parameters read off the spec exactly.
pub fn spec_geometry(spec: &LatticeSpec, shape: Shape) -> Result<Geometry> {
    match shape {
        Shape::Square => Geometry::square_from_spec(spec),
        Shape::Rect => Geometry::rect_from_spec(spec),
    }
}

pub fn convergence_row(spec: &LatticeSpec, shape: Shape, x: &Rational) -> Result<ConvergenceRow> {
    let geometry = spec_geometry(spec, shape)?;
    let e = f_terms(&geometry, to_f64(x))?;
    if e.divergent {
        return Err(Error::Domain("x sits on the critical point, where f0 diverges".into()));
    }
    let exact = exact_log_p(spec, x)?;
    let prediction = e.log_p(spec.n as f64);
    let residual = exact - prediction;
    Ok(ConvergenceRow {
        n: spec.n,
        m: spec.m,
        l: spec.l,
        x_num: x.numer().to_string(),
        x_den: x.denom().to_string(),
        log_p_exact: exact,
        prediction,
        residual,
        residual_times_n: residual * spec.n as f64,
    })
}

pub fn square_family(n: u32) -> Result<LatticeSpec> {
    LatticeSpec::new(n, 2 * n, 2 * n)
}

pub fn rect_family(n: u32) -> Result<LatticeSpec> {
    LatticeSpec::new(n, 3 * n, 5 * n)
}

/// `M = L - 1`, `L = 2N`.
pub fn e0_family(n: u32) -> Result<LatticeSpec> {
    LatticeSpec::new(n, 2 * n - 1, 2 * n)
}

/// `|Δ|` strictly decreasing and `N|Δ|` growing by at most `ratio` per step.
pub fn residuals_decay(rows: &[ConvergenceRow], ratio: f64) -> bool {
    rows.windows(2).all(|w| {
        w[1].residual.abs() < w[0].residual.abs()
            && w[1].residual_times_n.abs() <= ratio * w[0].residual_times_n.abs()
    })
}

fn e0_check(spec: &LatticeSpec, x: f64) -> Result<f64> {
    let (r, eps) = spec_r_eps(spec)?;
    if eps != 0 {
        return Err(Error::Domain(format!("ε = {eps}, expected 0")));
    }
    let r = to_f64(&r);
    let g = Geometry::square(r, 0)?;
    if g.classify(x)? != Regime::III || x >= 1.0 / g.critical_x() {
        return Err(Error::Domain(format!("x = {x} is not inside Regime III")));
    }
    Ok(r)
}

/// `N² f2^III + N log√x + ¼ log(1-x)`, the prediction for `log Z̃`.
pub fn e0_regime_iii_prediction(spec: &LatticeSpec, x: f64) -> Result<f64> {
    let r = e0_check(spec, x)?;
    let n = spec.n as f64;
    Ok(n * n * square::f2(r, Regime::III, x) + 0.5 * n * x.ln() + 0.25 * (1.0 - x).ln())
}

/// `-ac log x - c(c+1) log(1-x)` with `a = N`, `c = M - N`.
pub fn e0_gauge_prediction(spec: &LatticeSpec, x: f64) -> Result<f64> {
    e0_check(spec, x)?;
    let (a, c) = (spec.n as f64, (spec.m - spec.n) as f64);
    Ok(-a * c * x.ln() - c * (c + 1.0) * (1.0 - x).ln())
}

/// `log Z̃ - prediction`, formed exactly as `ln(1 + (R - 1))` with
/// `R = binom(M,N) P(1/x) x^{ac} (1-x)^{c(c+1)}`.
pub fn e0_residual_exact(spec: &LatticeSpec, x: &Rational) -> Result<f64> {
    e0_check(spec, to_f64(x))?;
    let (a, c) = (spec.n as i64, (spec.m - spec.n) as i64);
    let p = p_via_pnew(spec, x)?;
    let r = Rational::from_integer(spec.binom_mn())
        * p
        * powi(x, a * c)
        * powi(&(Rational::one() - x), c * (c + 1));
    Ok(to_f64(&(r - Rational::one())).ln_1p())
}

/// Exact `(p, q)` and `xc` of the rectangular family at `N`.
pub fn rect_family_critical_x(n: u32) -> Result<f64> {
    let (p, q) = spec_p_q(&rect_family(n)?)?;
    Ok(Geometry::rect(to_f64(&p), to_f64(&q))?.critical_x())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fivevertex::exact::rat;

    #[test]
    fn e0_forms_agree() {
        for n in [3u32, 6, 10] {
            let s = e0_family(n).unwrap();
            let a = e0_regime_iii_prediction(&s, 0.01).unwrap();
            let b = e0_gauge_prediction(&s, 0.01).unwrap();
            assert!((a - b).abs() < 1e-9 * a.abs(), "{a} {b}");
        }
        assert!(e0_regime_iii_prediction(&e0_family(4).unwrap(), 0.5).is_err());
        assert!(e0_regime_iii_prediction(&square_family(4).unwrap(), 0.01).is_err());
    }

    #[test]
    fn tiny_e0_residual_is_small() {
        let s = e0_family(3).unwrap();
        let d = e0_residual_exact(&s, &rat(1, 100)).unwrap();
        let direct = ln_rational(&(Rational::from_integer(s.binom_mn())
            * p_via_pnew(&s, &rat(1, 100)).unwrap()))
            - e0_gauge_prediction(&s, 0.01).unwrap();
        assert!(d.abs() < 1e-3);
        assert!((d - direct).abs() < 1e-10);
    }

    #[test]
    fn row_fields() {
        let s = square_family(2).unwrap();
        let row = convergence_row(&s, Shape::Square, &rat(16, 1)).unwrap();
        assert_eq!((row.x_num.as_str(), row.x_den.as_str()), ("16", "1"));
        assert_eq!(row.residual_times_n, 2.0 * row.residual);
        let at_one = convergence_row(&s, Shape::Square, &Rational::one()).unwrap();
        assert!(at_one.log_p_exact.is_finite());
    }

    #[test]
    fn rect_critical_point_moves_with_n() {
        let x6 = rect_family_critical_x(6).unwrap();
        assert!(x6 > 45.0 && x6 < 46.909);
        assert!(Geometry::rect(2.0, 4.0).unwrap().critical_x() + 2.0 - 46.909 < 1e-3);
    }
}
