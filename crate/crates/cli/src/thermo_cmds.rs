use crate::args::{BoundaryArg, ConvergeArgs, Family, GeometryArgs, GeometryKind, PhaseArgs, ThermoArgs};
use crate::exact_cmds::parse_points;
use crate::output::{round_sig, usage, write_csv, write_json, CliError, Outcome};
use fivevertex::exact::{format_rational, ln_rational, parse_rational, to_f64};
use fivevertex::hankel::p_via_pnew;
use fivevertex::{LatticeSpec, Rational};
use fivevertex_thermo::converge::{
    convergence_row, e0_family, e0_gauge_prediction, e0_residual_exact, rect_family, residuals_decay,
    square_family, ConvergenceRow, Shape,
};
use fivevertex_thermo::expansion::{f_terms_all, sigma2_leading, wtz_expansion};
use fivevertex_thermo::scan::{phase_scan, third_order_scan, Boundary};
use fivevertex_thermo::Geometry;
use serde_json::json;

fn geometry_of(a: &GeometryArgs) -> Result<Geometry, CliError> {
    if let (Some(n), Some(m), Some(l)) = (a.n, a.m, a.l) {
        let spec = LatticeSpec::new(n, m, l)?;
        return Ok(match a.geometry {
            GeometryKind::Square => Geometry::square_from_spec(&spec)?,
            GeometryKind::Rect => Geometry::rect_from_spec(&spec)?,
        });
    }
    match (a.geometry, a.r, a.p, a.q) {
        (GeometryKind::Square, Some(r), None, None) => Ok(Geometry::square(r, a.eps.unwrap_or(0))?),
        (GeometryKind::Rect, None, Some(p), Some(q)) if a.eps.is_none() => Ok(Geometry::rect(p, q)?),
        (GeometryKind::Square, ..) => Err(usage("square geometry takes --r [--eps] or --N --M --L")),
        (GeometryKind::Rect, ..) => Err(usage("rect geometry takes --p --q or --N --M --L")),
    }
}

/// Decimal or rational `x`, as a float.
fn real(s: &str) -> Result<f64, CliError> {
    let x = to_f64(&parse_rational(s)?);
    if !(x > 0.0 && x.is_finite()) {
        return Err(usage(format!("x = {s} must be positive")));
    }
    Ok(x)
}

pub fn thermo(a: ThermoArgs) -> Result<Outcome, CliError> {
    let g = geometry_of(&a.geometry)?;
    let x = real(&a.x)?;
    let expansions = f_terms_all(&g, x)?;
    let body = json!({
        "geometry": g,
        "x": x,
        "critical_x": g.critical_x(),
        "boundary": expansions.len() > 1,
        "expansions": expansions,
        "sigma2": sigma2_leading(&g, x)?,
        "log_wtz": wtz_expansion(&g, x)?,
    });
    write_json(a.out.as_deref(), &body, Some(a.precision))?;
    Ok(Outcome::Pass)
}

fn e0_row(spec: &LatticeSpec, x: &Rational) -> Result<ConvergenceRow, CliError> {
    let xf = to_f64(x);
    let prediction = e0_gauge_prediction(spec, xf)?;
    let exact = ln_rational(&(Rational::from_integer(spec.binom_mn()) * p_via_pnew(spec, x)?));
    let residual = e0_residual_exact(spec, x)?;
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

pub fn converge(a: ConvergeArgs) -> Result<Outcome, CliError> {
    let ns: Vec<u32> = a
        .ns
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| usage(format!("bad size {s:?}"))))
        .collect::<Result<_, _>>()?;
    if ns.is_empty() || ns.contains(&0) || ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("sizes must be positive and increasing"));
    }
    let points = parse_points(&a.x)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for x in &points {
        let mut block = Vec::new();
        for &n in &ns {
            let row = match a.family {
                Family::Square => convergence_row(&square_family(n)?, Shape::Square, x)?,
                Family::Rect => convergence_row(&rect_family(n)?, Shape::Rect, x)?,
                Family::E0 => e0_row(&e0_family(n)?, x)?,
            };
            block.push(row);
        }
        let ok = match a.family {
            Family::E0 => block.windows(2).all(|w| {
                let s = |r: &ConvergenceRow| r.residual.abs() * (r.n as f64).powi(2);
                s(&w[1]) < s(&w[0])
            }),
            _ => residuals_decay(&block, a.ratio),
        };
        eprintln!("x = {}: {}", format_rational(x), if ok { "decay ok" } else { "decay check failed" });
        pass &= ok;
        rows.extend(block);
    }
    for r in &mut rows {
        for v in [&mut r.log_p_exact, &mut r.prediction, &mut r.residual, &mut r.residual_times_n] {
            *v = round_sig(*v, a.precision);
        }
    }
    write_csv(a.out.as_deref(), &rows)?;
    Ok(Outcome::from_pass(pass))
}

pub fn phase(a: PhaseArgs) -> Result<Outcome, CliError> {
    let g = geometry_of(&a.geometry)?;
    if let Some(b) = a.boundary {
        let b = match b {
            BoundaryArg::Upper => Boundary::Upper,
            BoundaryArg::Lower => Boundary::Lower,
        };
        let r = third_order_scan(&g, b, a.h)?;
        let pass = r.is_third_order(1e-5, 10.0);
        let body = json!({ "report": r, "third_order": pass });
        write_json(a.out.as_deref(), &body, Some(a.precision))?;
        return Ok(Outcome::from_pass(pass));
    }
    let mut rows = phase_scan(&g, a.from, a.to, a.points, a.h)?;
    for r in &mut rows {
        for v in [&mut r.x, &mut r.f2, &mut r.d1, &mut r.d2, &mut r.d3] {
            *v = round_sig(*v, a.precision);
        }
    }
    write_csv(a.out.as_deref(), &rows)?;
    Ok(Outcome::Pass)
}
