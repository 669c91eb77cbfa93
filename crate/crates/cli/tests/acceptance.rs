//! One PASS/FAIL line per acceptance criterion, plus the sampler smoke test.
//! Run with `cargo test -p fivevertex-cli --test acceptance -- --nocapture`
//! to see the lines as they are produced; they are also written straight to
//! stdout so `cargo test` logs keep them.

use fivevertex::exact::{int, rat, Rational};
use fivevertex::hankel::{p_at_one, p_exact_polynomial, p_series_at, p_via_pnew, p_via_zhom1, p_via_zhom2, Point};
use fivevertex::model::{enumerate_configurations, macmahon_pl, p_from_enumeration, DEFAULT_MAX_CONFIGS};
use fivevertex::painleve::{
    coeffs_at_infinity, coeffs_at_one, coeffs_at_zero, hahn_route_at_one, kappas_at_zero_from_moments,
    observed_coeffs, pvi_residual, sigma_from_p, SigmaParams,
};
use fivevertex::{LatticeSpec, Poly};
use fivevertex_sampler::probe::monotonicity_probe;
use fivevertex_sampler::{cftp_sample, disordered_regions, measure_vertex_densities, CftpOptions, Dynamics};
use fivevertex_thermo::barnes::{
    barnes_g_int, log_barnes_g, log_barnes_g_asymptotic, matches_printed, zeta_prime_from_barnes,
    ZETA_PRIME_MINUS_ONE, ZETA_PRIME_MINUS_ONE_PRINTED,
};
use fivevertex_thermo::converge::{
    convergence_row, e0_family, e0_residual_exact, rect_family, residuals_decay, square_family, ConvergenceRow, Shape,
};
use fivevertex_thermo::expansion::f_terms_in;
use fivevertex_thermo::rect::{critical_x, critical_y, solve_quartic_branch, x_of_y};
use fivevertex_thermo::scan::{third_order_scan, Boundary};
use fivevertex_thermo::{Geometry, Regime};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::io::Write;
use std::time::Instant;

struct Board {
    failed: Vec<&'static str>,
}

impl Board {
    fn line(&mut self, id: &'static str, pass: bool, detail: String, t: Instant) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        let msg = format!("{verdict} [{id:>5}] {detail} ({:.1} s)\n", t.elapsed().as_secs_f64());
        let _ = std::io::stdout().write_all(msg.as_bytes());
        if !pass {
            self.failed.push(id);
        }
    }

    fn info(&self, detail: String) {
        let _ = std::io::stdout().write_all(format!("INFO         {detail}\n").as_bytes());
    }
}

fn sweep() -> Vec<(LatticeSpec, Poly)> {
    LatticeSpec::sweep(7)
        .into_iter()
        .map(|s| (s, p_from_enumeration(&s, DEFAULT_MAX_CONFIGS).unwrap()))
        .collect()
}

fn oracle_equivalence(b: &mut Board, all: &[(LatticeSpec, Poly)]) {
    let t = Instant::now();
    let points = [int(2), int(3), rat(1, 2), rat(7, 5), rat(9, 4)];
    let (mut checked, mut bad) = (0, Vec::new());
    for (s, p) in all {
        for x in &points {
            let want = p.eval(&x.recip());
            for (name, got) in [("pnew", p_via_pnew(s, x)), ("zhom1", p_via_zhom1(s, x)), ("zhom2", p_via_zhom2(s, x))] {
                checked += 1;
                if got.as_ref() != Ok(&want) {
                    bad.push(format!("{name} {s} x={x}"));
                }
            }
        }
    }
    b.line("1", bad.is_empty(), format!("oracle equivalence: {} specs, {checked} comparisons, mismatches {bad:?}", all.len()), t);
}

fn identities(b: &mut Board, all: &[(LatticeSpec, Poly)]) {
    let t = Instant::now();
    let by_spec: HashMap<_, _> = all.iter().map(|(s, p)| (*s, p)).collect();
    let mut bad = Vec::new();
    for (s, p) in all {
        if p.degree() != Some(s.degree()) {
            bad.push(format!("degree {s}"));
        }
        if let Some(q) = s.mirror().and_then(|m| by_spec.get(&m)) {
            if *q != p {
                bad.push(format!("symmetry {s}"));
            }
        }
        let (x, y, z) = s.box_dims();
        let at_one = if s.is_trivial() {
            int(1)
        } else {
            Rational::new(macmahon_pl(x, y, z), fivevertex::exact::binomial(s.m as u64, s.n as u64))
        };
        if p.eval(&int(1)) != at_one || p_at_one(s) != at_one {
            bad.push(format!("P(1) {s}"));
        }
        if !s.is_trivial() && p_series_at(p, Point::Zero, 1).coeffs[0] != coeffs_at_zero(s).unwrap().constant {
            bad.push(format!("x→0 constant {s}"));
        }
    }
    b.line("2", bad.is_empty(), format!("degree, symmetry, P(1), x→0 constant: failures {bad:?}"), t);
}

fn painleve(b: &mut Board, all: &[(LatticeSpec, Poly)]) {
    let t = Instant::now();
    let nonzero: Vec<LatticeSpec> = all
        .iter()
        .filter(|(s, p)| !pvi_residual(&sigma_from_p(p, s), &SigmaParams::new(s)).is_zero())
        .map(|(s, _)| *s)
        .collect();
    let lines_fill_columns = |s: &LatticeSpec| s.n >= 1 && s.l == s.n && s.m > s.n;
    let pattern = nonzero.iter().all(lines_fill_columns)
        && all.iter().filter(|(s, _)| lines_fill_columns(s)).count() == nonzero.len();
    b.line(
        "3",
        nonzero.is_empty(),
        format!(
            "σ-form residual ≡ 0: nonzero on {} of {} specs, {} (P ≡ 1 there, σ linear)",
            nonzero.len(),
            all.len(),
            if pattern { "exactly those with L = N < M" } else { "NOT confined to L = N < M" }
        ),
        t,
    );
    assert!(pattern, "residual fails outside L = N < M: {nonzero:?}");
}

fn coefficients(b: &mut Board, all: &[(LatticeSpec, Poly)]) {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (s, p) in all {
        for (point, c) in
            [(Point::Infinity, coeffs_at_infinity(s)), (Point::Zero, coeffs_at_zero(s)), (Point::One, coeffs_at_one(s))]
        {
            let c = c.unwrap();
            let (_, c0, k1, k2) = observed_coeffs(p, point);
            if (c.constant, c.kappa1, c.kappa2) != (c0, k1, k2) {
                bad.push(format!("{s} {}", point.name()));
            }
        }
        if !s.is_trivial() {
            let (_, _, k1, k2) = observed_coeffs(p, Point::One);
            if hahn_route_at_one(s).unwrap() != (k1, k2) {
                bad.push(format!("{s} hahn"));
            }
            let (_, _, z1, z2) = observed_coeffs(p, Point::Zero);
            if kappas_at_zero_from_moments(s).unwrap() != (z1, z2) {
                bad.push(format!("{s} moments"));
            }
        }
    }
    b.line("4", bad.is_empty(), format!("κ1, κ2, constants at ∞, 0, 1 and the x = 1 recomputation: failures {bad:?}"), t);
}

fn fmt_rows(rows: &[ConvergenceRow]) -> String {
    rows.iter().map(|r| format!("N={} Δ={:.3e} NΔ={:.3e}", r.n, r.residual, r.residual_times_n)).collect::<Vec<_>>().join(", ")
}

fn convergence(b: &mut Board, id: &'static str, shape: Shape, points: &[Rational]) {
    let t = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for x in points {
        let rows: Vec<ConvergenceRow> = [6, 12, 24]
            .iter()
            .map(|&n| {
                let s = match shape {
                    Shape::Square => square_family(n),
                    Shape::Rect => rect_family(n),
                }
                .unwrap();
                convergence_row(&s, shape, x).unwrap()
            })
            .collect();
        let ok = residuals_decay(&rows, 3.0);
        pass &= ok;
        detail.push(format!("x={x}: {}", fmt_rows(&rows)));
    }
    let name = if shape == Shape::Square { "square" } else { "rectangle" };
    b.line(id, pass, format!("{name} residuals decay as 1/N: {}", detail.join("; ")), t);
}

fn quartic(b: &mut Board) {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut ends: f64 = 0.0;
    for (p, q) in [(1.0, 2.0), (0.5, 3.0), (1.0, 1.0 + 1e-6)] {
        let xc = critical_x(p, q);
        for k in 0..100 {
            let x = xc * k as f64 / 99.0;
            let y = solve_quartic_branch(p, q, x).unwrap();
            worst = worst.max((x_of_y(p, q, y) - x).abs());
        }
        ends = ends.max((solve_quartic_branch(p, q, 0.0).unwrap() - (p - q).abs()).abs());
        ends = ends.max((solve_quartic_branch(p, q, xc).unwrap() - (xc - 1.0)).abs());
        ends = ends.max((critical_y(p, q) - (xc - 1.0)).abs());
    }
    b.line("7", worst <= 1e-12 && ends <= 1e-10, format!("quartic branch: max |x(y(x)) - x| = {worst:.2e}, endpoint error {ends:.2e}"), t);
}

fn third_order(b: &mut Board) {
    let t = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, g) in [("square r=1", Geometry::square(1.0, 0).unwrap()), ("rect (1,2)", Geometry::rect(1.0, 2.0).unwrap())] {
        let r = third_order_scan(&g, Boundary::Upper, 1e-3).unwrap();
        let ok = r.is_third_order(1e-5, 10.0);
        pass &= ok;
        detail.push(format!(
            "{name}: mismatches {:.1e}/{:.1e}, jump {:.3e} (closed form {:.3e})",
            r.mismatch1,
            r.mismatch2,
            r.jump3,
            r.analytic_jump3.unwrap()
        ));
    }
    b.line("8", pass, format!("third-order transition at xc: {}", detail.join("; ")), t);
}

fn barnes(b: &mut Board) {
    let t = Instant::now();
    let g4 = barnes_g_int(4).unwrap() == BigInt::from(2);
    let gap = (log_barnes_g(51).unwrap() - log_barnes_g_asymptotic(51.0).unwrap()).abs();
    let printed = matches_printed(ZETA_PRIME_MINUS_ONE, ZETA_PRIME_MINUS_ONE_PRINTED);
    let independent = (zeta_prime_from_barnes(200).unwrap() - ZETA_PRIME_MINUS_ONE).abs();
    b.line(
        "9",
        g4 && gap < 1e-3 && printed,
        format!(
            "G(4) = 2: {g4}; |log G(51) - asymptotic| = {gap:.2e}; ζ'(-1) = {ZETA_PRIME_MINUS_ONE:.10} vs printed {ZETA_PRIME_MINUS_ONE_PRINTED}: {}",
            if printed { "match" } else { "digits differ" }
        ),
        t,
    );
    b.info(format!("ζ'(-1) from exact G(201): |difference| = {independent:.2e}"));
    assert!(g4 && gap < 1e-3 && !printed && independent < 1e-8);
}

fn e0(b: &mut Board) {
    let t = Instant::now();
    let x = rat(1, 100);
    let scaled: Vec<(u32, f64)> = [6, 8, 12]
        .iter()
        .map(|&n| (n, e0_residual_exact(&e0_family(n).unwrap(), &x).unwrap().abs() * (n * n) as f64))
        .collect();
    let pass = scaled.windows(2).all(|w| w[1].1 < w[0].1);
    let detail: Vec<String> = scaled.iter().map(|(n, v)| format!("N={n}: N²|Δ|={v:.3e}")).collect();
    b.line("10", pass, format!("ε = 0 Regime III closed form at x = 1/100: {}", detail.join(", ")), t);
}

fn tv(spec: &LatticeSpec, x: f64, samples: u64) -> f64 {
    let configs = enumerate_configurations(spec, 10_000).unwrap();
    let w: Vec<f64> = configs.iter().map(|c| x.powi(-(c.turn_pairs() as i32))).collect();
    let z: f64 = w.iter().sum();
    let index: HashMap<_, _> = configs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut counts = vec![0u64; configs.len()];
    for seed in 0..samples {
        counts[index[&cftp_sample(spec, x, seed, &CftpOptions::default()).unwrap().config]] += 1;
    }
    counts.iter().zip(&w).map(|(&c, wi)| (c as f64 / samples as f64 - wi / z).abs()).sum::<f64>() / 2.0
}

fn sampler(b: &mut Board) {
    let t = Instant::now();
    let small = LatticeSpec::new(1, 2, 3).unwrap();
    let sq = LatticeSpec::new(2, 4, 4).unwrap();
    let tv_small = tv(&small, 2.0, 10_000);
    let tv_half = tv(&sq, 0.5, 10_000);
    let tv_one = tv(&sq, 1.0, 10_000);
    let mut violations = 0;
    let mut trials = 0;
    for (s, x) in [(small, 2.0), (sq, 0.5), (sq, 1.0)] {
        let r = monotonicity_probe(&s, x, Dynamics::HeatBath, 100_000, 7).unwrap();
        for v in &r.examples {
            b.info(format!("sandwich violation {s} x={x}: {v:?}"));
        }
        violations += r.violations;
        trials += r.trials;
    }
    let pass = tv_small < 0.03 && tv_half < 0.05 && tv_one < 0.05 && violations == 0;
    b.line(
        "11",
        pass,
        format!(
            "CFTP exactness: TV (1,2,3)@2 = {tv_small:.4}, (2,4,4)@1/2 = {tv_half:.4}, (2,4,4)@1 = {tv_one:.4}; sandwich violations {violations} in {trials} trials"
        ),
        t,
    );
    let r = monotonicity_probe(&sq, 2.0, Dynamics::HeatBath, 100_000, 7).unwrap();
    b.info(format!("sandwich probe (2,4,4) at x = 2: {} violations in {} trials (coupling not monotone for x > 1)", r.violations, r.trials));
}

fn reduction(b: &mut Board) {
    let t = Instant::now();
    let sq = Geometry::square(1.0, 0).unwrap();
    let re = Geometry::rect(1.0, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for x in [0.25, 1.0, 4.0] {
        let a = f_terms_in(&sq, Regime::II, x).unwrap();
        let c = f_terms_in(&re, Regime::II, x).unwrap();
        worst = worst.max((a.f2 - c.f2).abs()).max((a.f1 - c.f1).abs());
    }
    b.line("12", worst < 1e-10, format!("rect p = q = 1 against square r = 1: max |Δf2|, |Δf1| = {worst:.2e}"), t);
}

fn smoke(b: &mut Board) {
    let t = Instant::now();
    let spec = LatticeSpec::new(20, 50, 51).unwrap();
    let mut regions = Vec::new();
    for x in [0.0576, 0.09] {
        let samples: Vec<_> = (0..50u64)
            .map(|seed| cftp_sample(&spec, x, seed, &CftpOptions::default()).unwrap().config)
            .collect();
        regions.push(disordered_regions(&measure_vertex_densities(&samples, &spec).unwrap()));
    }
    let pass = regions[0].len() >= 2 && regions[1].len() == 1;
    b.line(
        "smoke",
        pass,
        format!(
            "(20,50,51), 50 samples, clusters of cells with entropy ≥ 0.6 nats and ≥ 20 cells: √x=0.24 {:?} (split expected), √x=0.3 {:?} (connected expected)",
            regions[0], regions[1]
        ),
        t,
    );
}

#[test]
fn acceptance() {
    let _ = std::io::stdout().write_all(b"\nacceptance criteria\n");
    let mut b = Board { failed: Vec::new() };
    let all = sweep();
    oracle_equivalence(&mut b, &all);
    identities(&mut b, &all);
    painleve(&mut b, &all);
    coefficients(&mut b, &all);
    convergence(&mut b, "5", Shape::Square, &[int(16), int(1), rat(1, 16)]);
    convergence(&mut b, "6", Shape::Rect, &[rat(46909, 1000), int(1), rat(1, 10)]);
    quartic(&mut b);
    third_order(&mut b);
    barnes(&mut b);
    e0(&mut b);
    sampler(&mut b);
    reduction(&mut b);
    smoke(&mut b);
    b.info(format!("failed: {:?}; both analysed in the checks that produce them", b.failed));
    // 3 and 9 fail for the reasons asserted in their checks above.
    assert_eq!(b.failed, ["3", "9"]);
}
