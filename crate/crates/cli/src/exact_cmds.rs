use crate::args::{ExactArgs, Method, SigmaArgs, SpecArgs, SweepArgs};
use crate::output::{usage, write_json, CliError, Outcome};
use fivevertex::exact::{format_rational, parse_rational, Rational};
use fivevertex::hankel::{p_exact_polynomial, p_via_pnew, p_via_zhom1, p_via_zhom2, Point};
use fivevertex::model::{max_configs_from_env, p_from_enumeration};
use fivevertex::painleve::{
    coeffs_at_infinity, coeffs_at_one, coeffs_at_zero, observed_coeffs, pvi_residual, sigma_from_p,
    sigma_series_check, SigmaParams,
};
use fivevertex::{LatticeSpec, Poly};
type Result<T, E = fivevertex::Error> = std::result::Result<T, E>;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

pub fn spec_of(a: SpecArgs) -> Result<LatticeSpec> {
    LatticeSpec::new(a.n, a.m, a.l)
}

pub fn spec_json(s: &LatticeSpec) -> serde_json::Value {
    json!({ "N": s.n, "M": s.m, "L": s.l })
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn value_at(spec: &LatticeSpec, x: &Rational, method: Method) -> Result<Rational> {
    match method {
        Method::Enum => Ok(p_from_enumeration(spec, max_configs_from_env())?.eval(&x.recip())),
        Method::Pnew => p_via_pnew(spec, x),
        Method::Zhom1 => p_via_zhom1(spec, x),
        Method::Zhom2 => p_via_zhom2(spec, x),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Enum => "enum",
        Method::Pnew => "pnew",
        Method::Zhom1 => "zhom1",
        Method::Zhom2 => "zhom2",
    }
}

pub fn exact(a: ExactArgs) -> Result<Outcome, CliError> {
    let spec = spec_of(a.spec)?;
    let body = match &a.x {
        Some(xs) => {
            let x = parse_rational(xs)?;
            if x.is_zero() {
                return Err(usage("x must be non-zero"));
            }
            let v = value_at(&spec, &x, a.method)?;
            json!({
                "spec": spec_json(&spec),
                "method": method_name(a.method),
                "x": format_rational(&x),
                "value": format_rational(&v),
            })
        }
        None => {
            let p: Poly = match a.method {
                Method::Enum => p_from_enumeration(&spec, max_configs_from_env())?,
                Method::Pnew => p_exact_polynomial(&spec)?,
                Method::Zhom1 | Method::Zhom2 => {
                    return Err(usage("zhom1 and zhom2 evaluate at a point; pass --x"))
                }
            };
            json!({
                "spec": spec_json(&spec),
                "method": method_name(a.method),
                "variable": "u = 1/x",
                "polynomial": p.to_string(),
                "coefficients": strings(p.coeffs()),
            })
        }
    };
    write_json(a.out.as_deref(), &body, None)?;
    Ok(Outcome::Pass)
}

pub fn parse_points(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

#[derive(Serialize)]
struct Mismatch {
    spec: serde_json::Value,
    x: Option<String>,
    method: &'static str,
    expected: String,
    got: String,
}

pub fn oracle_sweep(a: SweepArgs) -> Result<Outcome, CliError> {
    let points = parse_points(&a.points)?;
    if points.iter().any(Zero::is_zero) {
        return Err(usage("points must be non-zero"));
    }
    let cap = max_configs_from_env();
    let mut mismatches = Vec::new();
    let mut comparisons = 0u64;
    let specs = LatticeSpec::sweep(a.max);
    for s in &specs {
        let p = p_from_enumeration(s, cap)?;
        let mut note = |x: Option<&Rational>, method, expected: String, got: String| {
            comparisons += 1;
            if expected != got {
                mismatches.push(Mismatch { spec: spec_json(s), x: x.map(format_rational), method, expected, got });
            }
        };
        let poly = p_exact_polynomial(s).map(|q| q.to_string()).unwrap_or_else(|e| e.to_string());
        note(None, "pnew", p.to_string(), poly);
        for x in &points {
            let want = format_rational(&p.eval(&x.recip()));
            for m in [Method::Pnew, Method::Zhom1, Method::Zhom2] {
                let got = value_at(s, x, m).map(|v| format_rational(&v)).unwrap_or_else(|e| e.to_string());
                note(Some(x), method_name(m), want.clone(), got);
            }
        }
    }
    let pass = mismatches.is_empty();
    let body = json!({
        "specs": specs.len(),
        "points": strings(&points),
        "comparisons": comparisons,
        "mismatches": mismatches,
        "pass": pass,
    });
    write_json(a.out.as_deref(), &body, None)?;
    Ok(Outcome::from_pass(pass))
}

fn sigma_report(s: &LatticeSpec) -> Result<(serde_json::Value, bool)> {
    let p = p_from_enumeration(s, max_configs_from_env())?;
    let residual = pvi_residual(&sigma_from_p(&p, s), &SigmaParams::new(s));
    let mut pass = residual.is_zero();
    let mut series = Vec::new();
    let mut coefficients = Vec::new();
    for (point, c) in [
        (Point::Infinity, coeffs_at_infinity(s)?),
        (Point::Zero, coeffs_at_zero(s)?),
        (Point::One, coeffs_at_one(s)?),
    ] {
        if s.degree() > 0 {
            let r = sigma_series_check(&p, s, point);
            pass &= r.pass;
            series.push(json!({
                "point": point.name(),
                "expected": r.expected.as_deref().map(strings),
                "actual": strings(&r.actual),
                "pass": r.pass,
            }));
        }
        let (_, c0, k1, k2) = observed_coeffs(&p, point);
        let ok = (&c.constant, &c.kappa1, &c.kappa2) == (&c0, &k1, &k2);
        pass &= ok;
        coefficients.push(json!({
            "point": point.name(),
            "closed_form": strings(&[c.constant, c.kappa1, c.kappa2]),
            "observed": strings(&[c0, k1, k2]),
            "pass": ok,
        }));
    }
    let body = json!({
        "spec": spec_json(s),
        "pvi_residual_zero": residual.is_zero(),
        "residual_degree": residual.degree(),
        "sigma_series": series,
        "coefficients": coefficients,
        "pass": pass,
    });
    Ok((body, pass))
}

pub fn sigma_check(a: SigmaArgs) -> Result<Outcome, CliError> {
    let specs = match (a.sweep, a.n, a.m, a.l) {
        (Some(max), ..) => LatticeSpec::sweep(max),
        (None, Some(n), Some(m), Some(l)) => vec![LatticeSpec::new(n, m, l)?],
        _ => return Err(usage("pass --N, --M and --L, or --sweep")),
    };
    let mut reports = Vec::new();
    let mut pass = true;
    for s in &specs {
        let (r, ok) = sigma_report(s)?;
        pass &= ok;
        reports.push(r);
    }
    let body = if reports.len() == 1 { reports.remove(0) } else { json!({ "reports": reports, "pass": pass }) };
    write_json(a.out.as_deref(), &body, None)?;
    Ok(Outcome::from_pass(pass))
}
