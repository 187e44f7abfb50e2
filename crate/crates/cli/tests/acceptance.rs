//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured detail. Tolerances and budgets are pinned in the asserts.

use amoeba_core::contour::{origin_in_contour, trace_contour, ChartGrids, OriginContour};
use amoeba_core::doubling::{cyclic_resultant, DoublingLimits};
use amoeba_core::geometry::{newton_polytope, polytope_stats, recession_cone};
use amoeba_core::interval::ln2;
use amoeba_core::laurent::{parse_poly, LaurentPoly};
use amoeba_core::lopsided::{
    is_lopsided_at_origin, lopsided_membership, required_doublings_enclosure, Margin,
};
use amoeba_core::oracle::{amoeba_membership_fiber, shanks_oracle_2d};
use amoeba_core::ronkin::{ronkin_quadrature, ronkin_via_doubling};
use amoeba_core::stability::{
    decide_strong_bibo, decide_weak_bibo_2d, AssertionId, AssertionStatus, StabilityOptions,
};
use amoeba_core::{BigInt, BigRational, VerdictKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn opts() -> StabilityOptions {
    StabilityOptions {
        m0: 8,
        k_max: 4,
        delta: rat(1, 4),
        ..StabilityOptions::default()
    }
}

#[test]
fn acceptance_1_stability_verdicts() {
    let o = opts();

    let t = Instant::now();
    let v = decide_strong_bibo(&parse_poly("3 + X1 + X2").unwrap(), &o);
    assert_eq!(v.kind, VerdictKind::StronglyStable);
    assert_eq!(v.k_used, Some(0));
    assert!(t.elapsed().as_secs_f64() < 1.0, "3+X1+X2 took {:?}", t.elapsed());

    let t = Instant::now();
    let v = decide_strong_bibo(&parse_poly("1 + 4*X1 + X2").unwrap(), &o);
    assert_eq!(v.kind, VerdictKind::UnstableInComponent);
    assert_eq!(v.component, Some(vec![1, 0]));
    assert!(t.elapsed().as_secs_f64() < 1.0);

    let t = Instant::now();
    let f = parse_poly("X1 + X2 + 3*X1*X2").unwrap();
    let v = decide_strong_bibo(&f, &o);
    assert_ne!(v.kind, VerdictKind::StronglyStable);
    assert_eq!(v.exit_code(), 1, "0 not in Supp F means not stable");
    let ct = v
        .assertions
        .iter()
        .find(|a| a.assertion == AssertionId::ConstantTermPresent)
        .unwrap();
    assert_eq!(ct.status, AssertionStatus::Disproved);
    assert!(t.elapsed().as_secs_f64() < 1.0);

    let t = Instant::now();
    let g = parse_poly("1 + X1 + X2").unwrap();
    let strong = decide_strong_bibo(&g, &o);
    assert_eq!(strong.kind, VerdictKind::Inconclusive);
    let weak = decide_weak_bibo_2d(&g, &o, &strong);
    assert_ne!(weak.kind, VerdictKind::WeaklyStable);
    let b = weak
        .assertions
        .iter()
        .find(|a| a.assertion == AssertionId::B)
        .unwrap();
    assert_eq!(b.status, AssertionStatus::Disproved);
    assert!(t.elapsed().as_secs_f64() < 1.0, "1+X1+X2 took {:?}", t.elapsed());

    let t = Instant::now();
    let h = parse_poly("2 + X1 + X2").unwrap();
    let strong_h = decide_strong_bibo(&h, &o);
    assert_eq!(strong_h.kind, VerdictKind::Inconclusive);
    let weak_h = decide_weak_bibo_2d(&h, &o, &strong_h);
    assert_eq!(weak_h.kind, VerdictKind::WeaklyStable);
    assert!(t.elapsed().as_secs_f64() < 1.0, "2+X1+X2 took {:?}", t.elapsed());

    println!("acceptance 1 (stability verdicts on the derived family): PASS");
}

#[test]
fn acceptance_2_doubling_depth() {
    let t = Instant::now();
    let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
    let limits = DoublingLimits::default();
    // Not lopsided at k = 0 and k = 1; lopsided exactly at k = 2.
    for k in 0..=1u32 {
        let seq = cyclic_resultant(&f, k, &limits).unwrap();
        assert!(!is_lopsided_at_origin(&seq.g).lopsided, "k = {k}");
    }
    let seq2 = cyclic_resultant(&f, 2, &limits).unwrap();
    let out = is_lopsided_at_origin(&seq2.g);
    assert!(out.lopsided);
    assert_eq!(out.winner, Some(vec![0, 0]));
    assert_eq!(seq2.g.constant_term(), BigInt::from(1u64 << 32));
    match out.margin {
        Some(Margin::Exact(m)) => assert_eq!(m, BigInt::from(1_614_177_151i64)),
        other => panic!("expected exact margin, got {other:?}"),
    }
    // Quantitative bound for eps = ln 2: k_min = 5 >= 2.
    let stats = polytope_stats(&newton_polytope(&f).unwrap()).unwrap();
    let k_min = required_doublings_enclosure(&ln2(160), &stats, 2);
    assert_eq!(k_min, 5);
    assert!(k_min >= 2);
    let el = t.elapsed();
    assert!(el.as_secs_f64() < 5.0, "took {el:?}");
    println!(
        "acceptance 2 (doubling depth k=2, margin 2^33-17^8, bound k_min=5): PASS in {el:?}"
    );
}

#[test]
fn acceptance_3_oracle_agreement() {
    let t = Instant::now();
    let o = opts();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut generated = 0usize;
    let mut compared = 0usize;
    while generated < 50 {
        // Random bivariate polynomial, total degree <= 3, coefficients in
        // [-5, 5], nonzero constant term.
        let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
        for a in 0..=3i64 {
            for b in 0..=(3 - a) {
                let c = rng.gen_range(-5i64..=5);
                if (a, b) == (0, 0) {
                    let mut c0 = c;
                    while c0 == 0 {
                        c0 = rng.gen_range(-5i64..=5);
                    }
                    terms.push((vec![0, 0], BigInt::from(c0)));
                } else if c != 0 && rng.gen_bool(0.6) {
                    terms.push((vec![a, b], BigInt::from(c)));
                }
            }
        }
        let f = LaurentPoly::from_terms(2, terms).unwrap();
        match newton_polytope(&f) {
            Ok(p) if p.dim == 2 => {}
            _ => continue,
        }
        generated += 1;
        let v = decide_strong_bibo(&f, &o);
        let conclusive_stable = match v.kind {
            VerdictKind::StronglyStable => Some(true),
            VerdictKind::UnstableInComponent => Some(false),
            _ => None,
        };
        if let Some(stable) = conclusive_stable {
            let shanks = shanks_oracle_2d(&f).unwrap();
            assert_eq!(
                stable, shanks,
                "disagreement on {f}: engine {:?} vs oracle {shanks}",
                v.kind
            );
            compared += 1;
        }
    }
    let el = t.elapsed();
    assert!(el.as_secs_f64() < 120.0, "took {el:?}");
    assert!(compared >= 10, "only {compared} conclusive verdicts");
    println!(
        "acceptance 3 (oracle agreement on 50 seeded random polynomials, {compared} conclusive, 0 disagreements): PASS in {el:?}"
    );
}

#[test]
fn acceptance_4_soundness_sampling() {
    let t = Instant::now();
    let family = [
        parse_poly("1 + X1 + X2").unwrap(),
        parse_poly("2 + X1 + X2").unwrap(),
        parse_poly("3 + X1 + X2").unwrap(),
        parse_poly("1 + 4*X1 + X2").unwrap(),
        parse_poly("X1 + X2 + 3*X1*X2").unwrap(),
    ];
    let limits = DoublingLimits::default();
    let mut members = 0usize;
    'outer: for f in &family {
        let iterates: Vec<LaurentPoly> = (0..=2u32)
            .map(|k| cyclic_resultant(f, k, &limits).unwrap().g)
            .collect();
        for i in -6i64..=6 {
            for j in -6i64..=6 {
                if members >= 100 {
                    break 'outer;
                }
                let x = vec![rat(i, 3), rat(j, 3)];
                // Cheap pre-screen: skip points that are clearly lopsided
                // (they cannot be members; soundness is about the converse).
                let m = amoeba_membership_fiber(f, &x, 48);
                if !m.is_member() {
                    continue;
                }
                members += 1;
                for (k, g) in iterates.iter().enumerate() {
                    let scale = BigRational::from_integer(BigInt::from(1i64 << k));
                    let y: Vec<BigRational> = x.iter().map(|v| v * &scale).collect();
                    let out = lopsided_membership(g, &y, 64).unwrap();
                    assert!(
                        !out.lopsided,
                        "member point {x:?} of {f} certified lopsided at k = {k}"
                    );
                }
            }
        }
    }
    let el = t.elapsed();
    assert!(members >= 100, "only {members} member points found");
    assert!(el.as_secs_f64() < 60.0, "took {el:?}");
    println!(
        "acceptance 4 (soundness: {members} certified member points never lopsided): PASS in {el:?}"
    );
}

#[test]
fn acceptance_5_contour() {
    let t = Instant::now();
    // Exact origin decision with witness enclosing (-1, -1).
    let f = parse_poly("2 + X1 + X2").unwrap();
    match origin_in_contour(&f).unwrap() {
        OriginContour::Yes { z1, z2, .. } => {
            let m1 = amoeba_core::interval::Dyadic::from_i64(-1);
            assert!(z1.re.contains(&m1) && z2.re.contains(&m1));
            assert!(z1.im.contains_zero() && z2.im.contains_zero());
        }
        OriginContour::No => panic!("expected origin in contour"),
    }
    let grids = ChartGrids::uniform(&rat(-50, 1), &rat(50, 1), 101);
    // Traced contour passes within 1e-3 of the origin.
    let res = trace_contour(&f, &grids, 96).unwrap();
    let best = res
        .samples
        .iter()
        .map(|s| (s.x1.mid_f64().powi(2) + s.x2.mid_f64().powi(2)).sqrt())
        .fold(f64::INFINITY, f64::min);
    assert!(best < 1e-3, "closest sample at {best}");

    // 3 + X1 + X2: all samples at distance >= 0.572 - 1e-3.
    let g = parse_poly("3 + X1 + X2").unwrap();
    assert!(!origin_in_contour(&g).unwrap().is_yes());
    let res_g = trace_contour(&g, &grids, 96).unwrap();
    assert!(!res_g.samples.is_empty());
    for s in &res_g.samples {
        let d = (s.x1.mid_f64().powi(2) + s.x2.mid_f64().powi(2)).sqrt();
        assert!(d >= 0.572 - 1e-3, "sample at distance {d}");
    }

    // (2 - X1)(2 - X2): samples within 1e-6 of the two ln2 lines.
    let h = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
    let res_h = trace_contour(&h, &grids, 96).unwrap();
    assert!(!res_h.samples.is_empty());
    let l2 = 2f64.ln();
    for s in &res_h.samples {
        let d = (s.x1.mid_f64() - l2).abs().min((s.x2.mid_f64() - l2).abs());
        assert!(d < 1e-6, "sample off the lines by {d}");
    }
    let el = t.elapsed();
    assert!(el.as_secs_f64() < 60.0, "took {el:?}");
    println!("acceptance 5 (contour: witness, origin proximity, line geometry): PASS in {el:?}");
}

#[test]
fn acceptance_6_ronkin() {
    let t = Instant::now();
    let limits = DoublingLimits::default();
    // 1-d Jensen values at 256 nodes.
    let f = parse_poly("2 - X1").unwrap();
    let e0 = ronkin_quadrature(&f, &[rat(0, 1)], 256, 0);
    assert!((e0.value - 2f64.ln()).abs() < 1e-6);
    let e2 = ronkin_quadrature(&f, &[rat(2, 1)], 256, 0);
    assert!((e2.value - 2.0).abs() < 1e-6);
    // Doubling estimator at x = 0, k = 4: exact argument 2^16 - 1.
    let d = ronkin_via_doubling(&f, &[rat(0, 1)], 4, &limits).unwrap();
    assert_eq!(d.exact_argument, Some(BigInt::from(65535)));
    assert!((d.value - 2f64.ln()).abs() < 1e-4);
    // 2-d vertex value.
    let g = parse_poly("4 + X1 + X2").unwrap();
    let e = ronkin_quadrature(&g, &[rat(-3, 1), rat(-3, 1)], 64, 0);
    assert!((e.value - 4f64.ln()).abs() < 1e-3);
    // Convexity on random segments.
    let h = parse_poly("3 + X1 + X2").unwrap();
    let segs = [
        (rat(-1, 1), rat(1, 2), rat(1, 1), rat(-1, 2)),
        (rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)),
    ];
    for (a1, a2, b1, b2) in segs {
        let a = vec![a1, a2];
        let b = vec![b1, b2];
        let mid = vec![(&a[0] + &b[0]) / rat(2, 1), (&a[1] + &b[1]) / rat(2, 1)];
        let ra = ronkin_quadrature(&h, &a, 128, 0);
        let rb = ronkin_quadrature(&h, &b, 128, 0);
        let rm = ronkin_quadrature(&h, &mid, 128, 0);
        let err = ra.error + rb.error + rm.error;
        assert!(rm.value <= 0.5 * (ra.value + rb.value) + 2.0 * err + 1e-6);
    }
    // Affinity on three collinear exterior points.
    let xs = [
        vec![rat(-3, 1), rat(-2, 1)],
        vec![rat(-5, 2), rat(-7, 4)],
        vec![rat(-2, 1), rat(-3, 2)],
    ];
    let vals: Vec<f64> = xs.iter().map(|x| ronkin_quadrature(&h, x, 128, 0).value).collect();
    let errs: f64 = xs.iter().map(|x| ronkin_quadrature(&h, x, 128, 0).error).sum();
    let second = vals[0] - 2.0 * vals[1] + vals[2];
    assert!(second.abs() <= 3.0 * errs + 1e-6);
    let el = t.elapsed();
    assert!(el.as_secs_f64() < 60.0, "took {el:?}");
    println!("acceptance 6 (Ronkin estimators and property suites): PASS in {el:?}");
}

#[test]
fn acceptance_7_geometry() {
    let t = Instant::now();
    let simplex = parse_poly("3 + X1 + X2").unwrap();
    let s = polytope_stats(&newton_polytope(&simplex).unwrap()).unwrap();
    assert_eq!((s.c_f, s.d_f.to_string().as_str()), (1, "3"));
    let square = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
    let q = polytope_stats(&newton_polytope(&square).unwrap()).unwrap();
    assert_eq!((q.c_f, q.d_f.to_string().as_str()), (1, "4"));
    // Random corpus: origin recession cone contains the negative orthant.
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut tested = 0;
    while tested < 20 {
        let mut terms: Vec<(Vec<i64>, BigInt)> = (0..rng.gen_range(2..7))
            .map(|_| {
                (
                    vec![rng.gen_range(0i64..4), rng.gen_range(0i64..4)],
                    BigInt::from(rng.gen_range(-5i64..6).max(1)),
                )
            })
            .collect();
        terms.push((vec![0, 0], BigInt::from(rng.gen_range(1i64..9))));
        let f = LaurentPoly::from_terms(2, terms).unwrap();
        let p = newton_polytope(&f).unwrap();
        let cone = recession_cone(&p, &[0, 0]).unwrap();
        assert!(cone.contains_negative_orthant(), "failed for {f}");
        tested += 1;
    }
    let el = t.elapsed();
    println!("acceptance 7 (geometry: exact stats and recession cones): PASS in {el:?}");
}

#[test]
fn acceptance_8_amoeba_invariance() {
    let t = Instant::now();
    let limits = DoublingLimits::default();
    let family = [
        parse_poly("1 + X1 + X2").unwrap(),
        parse_poly("2 + X1 + X2").unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let mut checked = 0usize;
    let mut excluded = 0usize;
    while checked + excluded < 20 {
        let f = &family[rng.gen_range(0..family.len())];
        let k = rng.gen_range(1..=3u32);
        let x = vec![
            rat(rng.gen_range(-4i64..=4), 4),
            rat(rng.gen_range(-4i64..=4), 4),
        ];
        let seq = cyclic_resultant(f, k, &limits).unwrap();
        let scale = BigRational::from_integer(BigInt::from(1i64 << k));
        let y: Vec<BigRational> = x.iter().map(|v| v * &scale).collect();
        let mf = amoeba_membership_fiber(f, &x, 96);
        let mg = amoeba_membership_fiber(&seq.g, &y, 96);
        if mf.is_undetermined() || mg.is_undetermined() {
            excluded += 1;
            continue;
        }
        assert_eq!(
            mf.is_member(),
            mg.is_member(),
            "k = {k}, x = {x:?}: F gave member={} but G_k gave member={}",
            mf.is_member(),
            mg.is_member()
        );
        checked += 1;
    }
    let el = t.elapsed();
    assert!(el.as_secs_f64() < 120.0, "took {el:?}");
    assert!(checked >= 15, "only {checked} determined comparisons");
    println!(
        "acceptance 8 (amoeba invariance under doubling, {checked} determined points): PASS in {el:?}"
    );
}

// ---------------------------------------------------------------------------
// End-to-end CLI checks: exit-code contract and deterministic reports.
// ---------------------------------------------------------------------------

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_amoeba-stab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn cli_exit_code_contract() {
    let fast = ["--m0", "8", "--k-max", "4"];
    let mut with = |expr: &str, extra: &[&str]| -> i32 {
        let mut args = vec!["check", expr];
        args.extend_from_slice(&fast);
        args.extend_from_slice(extra);
        run_cli(&args).0
    };
    assert_eq!(with("3 + X1 + X2", &[]), 0);
    assert_eq!(with("1 + 4*X1 + X2", &[]), 1);
    assert_eq!(with("X1 + X2 + 3*X1*X2", &[]), 1);
    assert_eq!(with("1 + X1 + X2", &[]), 3);
    assert_eq!(with("2 + X1 + X2", &["--weak", "--delta", "1/4"]), 2);
    // Divisible by a coordinate: precondition failure.
    assert_eq!(with("X1 + X1*X2", &[]), 4);
    // Parse error: usage exit code.
    let (code, _, _) = run_cli(&["check", "3 + % X1"]);
    assert_eq!(code, 64);
    println!("cli exit-code contract: PASS");
}

#[test]
fn cli_reports_are_deterministic() {
    let args = [
        "--format",
        "json",
        "check",
        "2 + X1 + X2",
        "--m0",
        "8",
        "--k-max",
        "4",
        "--weak",
        "--delta",
        "1/4",
    ];
    let (c1, out1, _) = run_cli(&args);
    let (c2, out2, _) = run_cli(&args);
    assert_eq!(c1, c2);
    assert_eq!(out1, out2, "reports differ between runs");
    assert!(out1.contains("input_sha256"));
    assert!(out1.contains("\"verdict\": \"WeaklyStable\""));
    println!("cli deterministic reports: PASS");
}
