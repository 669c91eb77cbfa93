use fivevertex::exact::{ln_rational, rat, to_f64, Rational};
use fivevertex::hankel::p_via_pnew;
use fivevertex::painleve::SigmaParams;
use fivevertex::LatticeSpec;
use fivevertex_thermo::converge::{exact_log_p, square_family};
use fivevertex_thermo::expansion::{sigma2_leading, wtz_expansion};
use fivevertex_thermo::Geometry;

/// `σ(x)` from exact values of `log P` on a five-point stencil.
fn sigma_numeric(spec: &LatticeSpec, x: &Rational) -> f64 {
    let d = x * rat(1, 2000);
    let g = |k: i64| exact_log_p(spec, &(x + &d * rat(k, 1))).unwrap();
    let dg = (g(-2) - 8.0 * g(-1) + 8.0 * g(1) - g(2)) / (12.0 * to_f64(&d));
    let xf = to_f64(x);
    let params = SigmaParams::new(spec);
    xf * (xf - 1.0) * dg - to_f64(&params.a_tilde) * xf + to_f64(&params.b_tilde)
}

#[test]
fn sigma_approaches_its_leading_term() {
    for x in [rat(16, 1), rat(2, 1), rat(1, 16)] {
        let mut errs = Vec::new();
        for n in [4u32, 8, 16] {
            let spec = square_family(n).unwrap();
            let g = Geometry::square_from_spec(&spec).unwrap();
            let lead = sigma2_leading(&g, to_f64(&x)).unwrap();
            let s = sigma_numeric(&spec, &x) / (n * n) as f64;
            errs.push((s - lead).abs());
        }
        assert!(errs[1] < errs[0] && errs[2] < errs[1], "x = {x}: {errs:?}");
        assert!(errs[2] * 16.0 < 2.0 * errs[1] * 8.0, "x = {x}: {errs:?}");
    }
}

#[test]
fn wtz_expansion_converges() {
    for x in [rat(16, 1), rat(1, 1), rat(1, 16)] {
        let mut res = Vec::new();
        for n in [6u32, 12, 24] {
            let spec = square_family(n).unwrap();
            let g = Geometry::square_from_spec(&spec).unwrap();
            let exact = if x == rat(1, 1) {
                exact_log_p(&spec, &x).unwrap()
            } else {
                ln_rational(&p_via_pnew(&spec, &x).unwrap())
            } + ln_rational(&Rational::from_integer(spec.binom_mn()));
            let pred = wtz_expansion(&g, to_f64(&x)).unwrap().value(n as f64);
            res.push((exact - pred).abs());
        }
        assert!(res[1] < res[0] && res[2] < res[1], "x = {x}: {res:?}");
    }
}
