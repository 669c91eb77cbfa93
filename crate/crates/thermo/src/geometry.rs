use fivevertex::exact::{int, rat, to_f64, Rational};
use fivevertex::{Error, LatticeSpec, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    I,
    II,
    III,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::I => "I",
            Regime::II => "II",
            Regime::III => "III",
        }
    }
}

/// Asymptotic shape of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Geometry {
    /// `rN = (M+L)/2 - N`, `ε = M - L + 1`.
    Square { r: f64, eps: i64 },
    /// `pN = M - N + 1/2`, `qN = L - N - 1/2`.
    Rect { p: f64, q: f64 },
}

/// Exact `(r, ε)` of a spec.
pub fn spec_r_eps(spec: &LatticeSpec) -> Result<(Rational, i64)> {
    if spec.n == 0 {
        return Err(Error::Domain("r is undefined for N = 0".into()));
    }
    let n = spec.n as i64;
    let r = (rat(spec.m as i64 + spec.l as i64, 2) - int(n)) / int(n);
    Ok((r, spec.m as i64 - spec.l as i64 + 1))
}

/// Exact `(p, q)` of a spec.
pub fn spec_p_q(spec: &LatticeSpec) -> Result<(Rational, Rational)> {
    if spec.n == 0 {
        return Err(Error::Domain("p, q are undefined for N = 0".into()));
    }
    let n = int(spec.n as i64);
    let p = (int(spec.m as i64) - &n + rat(1, 2)) / &n;
    let q = (int(spec.l as i64) - &n - rat(1, 2)) / &n;
    Ok((p, q))
}

impl Geometry {
    pub fn square(r: f64, eps: i64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!("r = {r} must be positive")));
        }
        Ok(Geometry::Square { r, eps })
    }

    pub fn rect(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && q > 0.0 && p.is_finite() && q.is_finite()) {
            return Err(Error::Domain(format!("p = {p}, q = {q} must be positive")));
        }
        Ok(Geometry::Rect { p, q })
    }

    pub fn square_from_spec(spec: &LatticeSpec) -> Result<Self> {
        let (r, eps) = spec_r_eps(spec)?;
        Geometry::square(to_f64(&r), eps)
    }

    pub fn rect_from_spec(spec: &LatticeSpec) -> Result<Self> {
        let (p, q) = spec_p_q(spec)?;
        Geometry::rect(to_f64(&p), to_f64(&q))
    }

    pub fn critical_x(&self) -> f64 {
        match *self {
            Geometry::Square { r, .. } => (2.0 * r + 1.0).powi(2),
            Geometry::Rect { p, q } => (((p + 1.0) * (q + 1.0)).sqrt() + (p * q).sqrt()).powi(2),
        }
    }

    /// All regimes whose closed interval contains `x`; two at a boundary.
    pub fn regimes_at(&self, x: f64) -> Result<Vec<Regime>> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("x = {x} must be non-negative")));
        }
        let xc = self.critical_x();
        let mut v = Vec::new();
        if x >= xc {
            v.push(Regime::I);
        }
        match self {
            Geometry::Square { .. } => {
                if x <= xc && x >= 1.0 / xc {
                    v.push(Regime::II);
                }
                if x <= 1.0 / xc {
                    v.push(Regime::III);
                }
            }
            Geometry::Rect { .. } => {
                if x <= xc {
                    v.push(Regime::II);
                }
            }
        }
        Ok(v)
    }

    /// The regime of `x`; at a boundary the one of larger `x`.
    pub fn classify(&self, x: f64) -> Result<Regime> {
        Ok(self.regimes_at(x)?[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_points() {
        assert_eq!(Geometry::square(1.0, 0).unwrap().critical_x(), 9.0);
        assert!((Geometry::rect(1.0, 1.0).unwrap().critical_x() - 9.0).abs() < 1e-12);
        let xc = Geometry::rect(1.0, 2.0).unwrap().critical_x();
        assert!((xc - (8.0 + 4.0 * 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn regimes() {
        let g = Geometry::square(1.0, 0).unwrap();
        assert_eq!(g.classify(10.0).unwrap(), Regime::I);
        assert_eq!(g.classify(1.0).unwrap(), Regime::II);
        assert_eq!(g.classify(0.01).unwrap(), Regime::III);
        assert_eq!(g.regimes_at(9.0).unwrap(), vec![Regime::I, Regime::II]);
        assert_eq!(g.regimes_at(1.0 / 9.0).unwrap(), vec![Regime::II, Regime::III]);
        let h = Geometry::rect(1.0, 2.0).unwrap();
        assert_eq!(h.classify(0.01).unwrap(), Regime::II);
        assert!(g.classify(-1.0).is_err());
    }

    #[test]
    fn exact_parameters() {
        let s = LatticeSpec::new(6, 12, 12).unwrap();
        assert_eq!(spec_r_eps(&s).unwrap(), (int(1), 1));
        let t = LatticeSpec::new(6, 18, 30).unwrap();
        assert_eq!(spec_p_q(&t).unwrap(), (rat(25, 12), rat(47, 12)));
    }
}
