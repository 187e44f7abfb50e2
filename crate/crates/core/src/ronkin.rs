//! Ronkin function estimation: torus quadrature, the doubling single-point
//! estimator, affine certificates, the tropical max-plus proxy and Laplacian
//! rasters.
//!
//! The quadrature estimator is a uniform trapezoid rule on the torus, which
//! converges spectrally off the amoeba; the doubling estimator evaluates
//! `log|G_k| / 2^{kn}` at one point with certified interval arithmetic (for
//! the all-zero point the argument is an exact integer).

use crate::doubling::{cyclic_resultant, DoublingError, DoublingLimits};
use crate::interval::DyInterval;
use crate::laurent::{dot_rational, LaurentPoly};
use crate::lopsided::{classify_component, lopsided_membership, ComponentId};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RonkinError {
    #[error("value enclosure contains zero at precision cap (point appears to lie on the amoeba)")]
    PrecisionCap,
    #[error("point not certified inside component {0:?} (winner {1:?})")]
    NotCertified(Vec<i64>, Option<Vec<i64>>),
    #[error(transparent)]
    Doubling(#[from] DoublingError),
    #[error(transparent)]
    Lopsided(#[from] crate::lopsided::LopsidedError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RonkinMethod {
    Quadrature { grid_per_dim: u32 },
    Doubling { k: u32 },
}

/// One Ronkin function estimate.
#[derive(Clone, Debug)]
pub struct RonkinEstimate {
    pub value: f64,
    /// Estimated error (quadrature: Richardson comparison with the half
    /// grid; doubling: certified enclosure width).
    pub error: f64,
    /// Certified enclosure, present on the doubling path.
    pub certified: Option<DyInterval>,
    /// Exact integer |G_k(1, ..., 1)| when the point is the origin.
    pub exact_argument: Option<BigInt>,
    pub method: RonkinMethod,
    /// Quadrature nodes jittered away from zeros of |F|.
    pub jittered_nodes: usize,
}

/// Uniform-grid torus average of `log |F|` over the fiber above `x`.
pub fn ronkin_quadrature(
    f: &LaurentPoly,
    x: &[BigRational],
    grid_per_dim: u32,
    seed: u64,
) -> RonkinEstimate {
    assert!(!f.is_zero(), "zero polynomial");
    assert!(grid_per_dim >= 4, "grid must be at least 4");
    let m = grid_per_dim as usize;
    let (full, jit_full) = quadrature_mean(f, x, m, seed);
    let (half, _) = quadrature_mean(f, x, (m / 2).max(2), seed);
    let error = (full - half).abs() + 1e-12;
    RonkinEstimate {
        value: full,
        error,
        certified: None,
        exact_argument: None,
        method: RonkinMethod::Quadrature { grid_per_dim },
        jittered_nodes: jit_full,
    }
}

fn quadrature_mean(f: &LaurentPoly, x: &[BigRational], m: usize, seed: u64) -> (f64, usize) {
    let n = f.nvars();
    let radii: Vec<f64> = x.iter().map(|xi| xi.to_f64().unwrap_or(0.0).exp()).collect();
    let tau = std::f64::consts::TAU;
    let jitter_phase = ((seed % 1024) as f64 + 0.5) * 1e-7;
    // Term data for fast evaluation.
    let terms: Vec<(Vec<i64>, f64)> = f
        .terms()
        .map(|(e, c)| (e.clone(), c.to_f64().unwrap_or(0.0)))
        .collect();
    let total_nodes: usize = m.pow(n as u32);
    let floor = 1e-280f64;
    let values: Vec<(f64, bool)> = (0..total_nodes)
        .into_par_iter()
        .map(|flat| {
            let mut idx = flat;
            let mut z = Vec::with_capacity(n);
            for rj in radii.iter() {
                let i = idx % m;
                idx /= m;
                z.push(Complex64::from_polar(*rj, tau * i as f64 / m as f64));
            }
            let mut v = eval_terms(&terms, &z);
            let mut jittered = false;
            if v.norm() < floor {
                jittered = true;
                let mut zj = Vec::with_capacity(n);
                let mut idx2 = flat;
                for rj in radii.iter() {
                    let i = idx2 % m;
                    idx2 /= m;
                    zj.push(Complex64::from_polar(
                        *rj,
                        tau * i as f64 / m as f64 + jitter_phase,
                    ));
                }
                v = eval_terms(&terms, &zj);
            }
            (v.norm().max(floor).ln(), jittered)
        })
        .collect();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut jit = 0usize;
    for (v, j) in &values {
        // Kahan summation keeps the reduction deterministic and accurate.
        let y = *v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if *j {
            jit += 1;
        }
    }
    (sum / total_nodes as f64, jit)
}

fn eval_terms(terms: &[(Vec<i64>, f64)], z: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (e, c) in terms {
        let mut t = Complex64::new(*c, 0.0);
        for (j, k) in e.iter().enumerate() {
            if *k != 0 {
                t *= z[j].powi(*k as i32);
            }
        }
        acc += t;
    }
    acc
}

/// Single-point doubling estimator: `log|G_k(e^{2^k x})| / 2^{kn}`, computed
/// with certified interval arithmetic.
pub fn ronkin_via_doubling(
    f: &LaurentPoly,
    x: &[BigRational],
    k: u32,
    limits: &DoublingLimits,
) -> Result<RonkinEstimate, RonkinError> {
    let n = f.nvars();
    let seq = cyclic_resultant(f, k, limits)?;
    let scale = BigRational::from_integer(BigInt::from(2).pow(k));
    let y: Vec<BigRational> = x.iter().map(|xi| xi * &scale).collect();
    let kn = (k as i64) * (n as i64);

    if x.iter().all(|xi| xi.is_zero()) {
        // Exact integer argument.
        let mut arg = BigInt::zero();
        for (_, c) in seq.g.terms() {
            arg += c;
        }
        if arg.is_zero() {
            return Err(RonkinError::PrecisionCap);
        }
        let prec = 128u32;
        let val = DyInterval::from_bigint(&arg.abs()).ln(prec).scale_pow2(-kn);
        return Ok(RonkinEstimate {
            value: val.mid_f64(),
            error: width_f64(&val),
            certified: Some(val),
            exact_argument: Some(arg.abs()),
            method: RonkinMethod::Doubling { k },
            jittered_nodes: 0,
        });
    }
    let mut prec = 96u32;
    loop {
        let mut acc = DyInterval::zero();
        for (e, c) in seq.g.terms() {
            let q = dot_rational(e, &y);
            let term = DyInterval::from_rational(&q, prec)
                .exp(prec)
                .mul(&DyInterval::from_bigint(c), prec);
            acc = acc.add(&term, prec);
        }
        if acc.contains_zero() {
            if prec >= 4096 {
                return Err(RonkinError::PrecisionCap);
            }
            prec *= 2;
            continue;
        }
        let val = acc.abs().ln(prec).scale_pow2(-kn);
        return Ok(RonkinEstimate {
            value: val.mid_f64(),
            error: width_f64(&val),
            certified: Some(val),
            exact_argument: None,
            method: RonkinMethod::Doubling { k },
            jittered_nodes: 0,
        });
    }
}

fn width_f64(v: &DyInterval) -> f64 {
    v.width().to_f64().abs() + 1e-15
}

/// An affine certificate `rho_alpha` with the context it was produced in.
#[derive(Clone, Debug)]
pub struct AffineCertificate {
    pub alpha: Vec<i64>,
    pub rho: f64,
    pub error: f64,
    /// `ln |c_alpha|` when alpha is a vertex of the Newton polytope (the
    /// exact value of rho there), for cross-checking.
    pub vertex_log_coeff: Option<f64>,
}

/// Estimate `rho_alpha = R_F(x) - <alpha, x>` after certifying that `x`
/// lies in the component of order `alpha` (lopsidedness of some iterate
/// classifying to `alpha`).
pub fn affine_certificate(
    f: &LaurentPoly,
    alpha: &ComponentId,
    x: &[BigRational],
    grid_per_dim: u32,
    k_max: u32,
    limits: &DoublingLimits,
) -> Result<AffineCertificate, RonkinError> {
    let n = f.nvars();
    let delta = crate::geometry::newton_polytope(f)
        .map_err(|_| RonkinError::NotCertified(alpha.alpha.clone(), None))?;
    let mut certified = false;
    let mut seq = crate::doubling::DoublingSequence::initial(f)?;
    let mut last_winner: Option<Vec<i64>> = None;
    for k in 0..=k_max {
        if k > 0 {
            seq = match seq.step(limits) {
                Ok(s) => s,
                Err(_) => break,
            };
        }
        let scale = BigRational::from_integer(BigInt::from(2).pow(k));
        let y: Vec<BigRational> = x.iter().map(|xi| xi * &scale).collect();
        match lopsided_membership(&seq.g, &y, 64) {
            Ok(out) if out.lopsided => {
                last_winner = out.winner.clone();
                if let Some(w) = out.winner {
                    if let Some(c) = classify_component(&w, k, n, &delta) {
                        if c.alpha == alpha.alpha {
                            certified = true;
                        }
                        break;
                    }
                }
            }
            Ok(_) => {}
            Err(_) => {}
        }
    }
    if !certified {
        return Err(RonkinError::NotCertified(alpha.alpha.clone(), last_winner));
    }
    let est = ronkin_quadrature(f, x, grid_per_dim, 0);
    let shift = dot_rational(&alpha.alpha, x).to_f64().unwrap_or(0.0);
    let rho = est.value - shift;
    let vertex_log_coeff = if delta.is_vertex(&alpha.alpha) {
        let c = f.coefficient(&alpha.alpha);
        Some(c.abs().to_f64().unwrap_or(f64::INFINITY).ln())
    } else {
        None
    };
    Ok(AffineCertificate { alpha: alpha.alpha.clone(), rho, error: est.error, vertex_log_coeff })
}

/// The max-plus envelope built from affine certificates.
#[derive(Clone, Debug)]
pub struct TropicalProxy {
    pub pieces: Vec<(Vec<i64>, f64)>,
}

impl TropicalProxy {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.pieces
            .iter()
            .map(|(alpha, rho)| {
                rho + alpha
                    .iter()
                    .zip(x.iter())
                    .map(|(a, xi)| *a as f64 * xi)
                    .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Assemble the evaluator from certificates.
pub fn tropical_proxy(certs: &[AffineCertificate]) -> TropicalProxy {
    assert!(!certs.is_empty(), "at least one certificate required");
    TropicalProxy {
        pieces: certs.iter().map(|c| (c.alpha.clone(), c.rho)).collect(),
    }
}

/// A 2-d scalar field on a rectangle, row-major.
#[derive(Clone, Debug)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub x1_range: (f64, f64),
    pub x2_range: (f64, f64),
    pub values: Vec<f64>,
}

impl Raster {
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }
}

/// Discrete 5-point Laplacian of the quadrature Ronkin field on a raster
/// over `bbox = (x1min, x1max, x2min, x2max)`. Border cells are zero.
pub fn laplacian_raster(
    f: &LaurentPoly,
    bbox: (f64, f64, f64, f64),
    resolution: usize,
    grid_per_dim: u32,
    seed: u64,
) -> Raster {
    assert_eq!(f.nvars(), 2, "rasters are two-dimensional");
    assert!(resolution >= 3);
    let (x1min, x1max, x2min, x2max) = bbox;
    let h1 = (x1max - x1min) / (resolution - 1) as f64;
    let h2 = (x2max - x2min) / (resolution - 1) as f64;
    let field: Vec<f64> = (0..resolution * resolution)
        .into_par_iter()
        .map(|flat| {
            let row = flat / resolution;
            let col = flat % resolution;
            let x1 = x1min + col as f64 * h1;
            let x2 = x2min + row as f64 * h2;
            let xr = vec![rational_from_f64(x1), rational_from_f64(x2)];
            ronkin_quadrature(f, &xr, grid_per_dim, seed).value
        })
        .collect();
    let mut values = vec![0.0; resolution * resolution];
    for row in 1..resolution - 1 {
        for col in 1..resolution - 1 {
            let c = field[row * resolution + col];
            let up = field[(row - 1) * resolution + col];
            let dn = field[(row + 1) * resolution + col];
            let le = field[row * resolution + col - 1];
            let ri = field[row * resolution + col + 1];
            values[row * resolution + col] =
                (up + dn - 2.0 * c) / (h2 * h2) + (le + ri - 2.0 * c) / (h1 * h1);
        }
    }
    Raster {
        width: resolution,
        height: resolution,
        x1_range: (x1min, x1max),
        x2_range: (x2min, x2max),
        values,
    }
}

/// Exact rational from an f64 (dyadic).
pub fn rational_from_f64(x: f64) -> BigRational {
    crate::interval::dyadic_from_f64(x).to_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn jensen_one_d() {
        // R(x) = max(ln 2, x) for F = 2 - X.
        let f = parse_poly("2 - X1").unwrap();
        let e0 = ronkin_quadrature(&f, &[BigRational::zero()], 256, 0);
        assert!((e0.value - 2f64.ln()).abs() < 1e-6, "value {}", e0.value);
        let e2 = ronkin_quadrature(&f, &[rat(2, 1)], 256, 0);
        assert!((e2.value - 2.0).abs() < 1e-6, "value {}", e2.value);
    }

    #[test]
    fn two_d_vertex_value() {
        let f = parse_poly("4 + X1 + X2").unwrap();
        let e = ronkin_quadrature(&f, &[rat(-3, 1), rat(-3, 1)], 64, 0);
        assert!((e.value - 4f64.ln()).abs() < 1e-3, "value {}", e.value);
    }

    #[test]
    fn doubling_exact_origin() {
        // F = 2 - X at x = 0, k = 4: argument 2^16 - 1 exactly.
        let f = parse_poly("2 - X1").unwrap();
        let e = ronkin_via_doubling(&f, &[BigRational::zero()], 4, &DoublingLimits::default())
            .unwrap();
        assert_eq!(e.exact_argument, Some(BigInt::from(65535)));
        assert!((e.value - 2f64.ln()).abs() < 1e-4);
        let cert = e.certified.unwrap();
        assert!(cert.width_below_pow2(-40));
    }

    #[test]
    fn doubling_at_two() {
        // F = 2 - X at x = 2, k = 2: (1/4) ln(e^8 - 16).
        let f = parse_poly("2 - X1").unwrap();
        let e = ronkin_via_doubling(&f, &[rat(2, 1)], 2, &DoublingLimits::default()).unwrap();
        let expected = ((8f64).exp() - 16.0).ln() / 4.0;
        assert!((e.value - expected).abs() < 1e-9, "value {} expected {expected}", e.value);
    }

    #[test]
    fn estimators_agree_and_improve() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let x = vec![BigRational::zero(), BigRational::zero()];
        let q = ronkin_quadrature(&f, &x, 256, 0);
        let exact = 3f64.ln(); // rho_0 = ln 3 on the component of the origin
        assert!((q.value - exact).abs() < 1e-6);
        let mut prev = f64::INFINITY;
        for k in 1..=3 {
            let d = ronkin_via_doubling(&f, &x, k, &DoublingLimits::default()).unwrap();
            let err = (d.value - q.value).abs();
            assert!(err <= prev + 1e-12, "k = {k}: {err} vs {prev}");
            prev = err;
        }
        let d3 = ronkin_via_doubling(&f, &x, 3, &DoublingLimits::default()).unwrap();
        assert!((d3.value - q.value).abs() < 5e-3);
    }

    #[test]
    fn affine_certificates() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let x = vec![rat(-2, 1), rat(-2, 1)];
        let c = affine_certificate(
            &f,
            &ComponentId { alpha: vec![0, 0] },
            &x,
            128,
            6,
            &DoublingLimits::default(),
        )
        .unwrap();
        assert!((c.rho - 3f64.ln()).abs() < 1e-3, "rho {}", c.rho);
        assert!((c.vertex_log_coeff.unwrap() - 3f64.ln()).abs() < 1e-12);

        // 1 + 4 X1 + X2 probed at (2, 0): winner (1, 0), rho = ln 4.
        let g = parse_poly("1 + 4*X1 + X2").unwrap();
        let c2 = affine_certificate(
            &g,
            &ComponentId { alpha: vec![1, 0] },
            &[rat(2, 1), BigRational::zero()],
            128,
            6,
            &DoublingLimits::default(),
        )
        .unwrap();
        assert!((c2.rho - 4f64.ln()).abs() < 1e-3, "rho {}", c2.rho);

        // Wrong component must be rejected.
        let bad = affine_certificate(
            &g,
            &ComponentId { alpha: vec![0, 0] },
            &[rat(2, 1), BigRational::zero()],
            64,
            4,
            &DoublingLimits::default(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn proxy_evaluation() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let mk = |alpha: Vec<i64>, x: Vec<BigRational>| {
            affine_certificate(
                &f,
                &ComponentId { alpha },
                &x,
                128,
                6,
                &DoublingLimits::default(),
            )
            .unwrap()
        };
        let c0 = mk(vec![0, 0], vec![rat(-2, 1), rat(-2, 1)]);
        let c1 = mk(vec![1, 0], vec![rat(3, 1), rat(-1, 1)]);
        let c2 = mk(vec![0, 1], vec![rat(-1, 1), rat(3, 1)]);
        let proxy = tropical_proxy(&[c0, c1, c2]);
        let p1 = proxy.eval(&[-5.0, -5.0]);
        assert!((p1 - 3f64.ln()).abs() < 5e-3, "p(-5,-5) = {p1}");
        let p2 = proxy.eval(&[5.0, 0.0]);
        assert!((p2 - 5.0).abs() < 5e-3, "p(5,0) = {p2}");
        let single = tropical_proxy(&[mk(vec![0, 0], vec![rat(-2, 1), rat(-2, 1)])]);
        let p3 = single.eval(&[7.0, 9.0]);
        assert!((p3 - 3f64.ln()).abs() < 5e-3);
    }

    #[test]
    fn raster_two_lines_concentrates() {
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let r = laplacian_raster(&f, (-1.0, 2.0, -1.0, 2.0), 64, 32, 0);
        let ln2 = 2f64.ln();
        let h = 3.0 / 63.0;
        let mut mags: Vec<(f64, usize, usize)> = Vec::new();
        for row in 1..63 {
            for col in 1..63 {
                mags.push((r.at(row, col).abs(), row, col));
            }
        }
        mags.sort_by(|a, b| b.0.total_cmp(&a.0));
        let top = &mags[..mags.len() / 10];
        for (_, row, col) in top {
            let x1 = -1.0 + *col as f64 * h;
            let x2 = -1.0 + *row as f64 * h;
            let d = (x1 - ln2).abs().min((x2 - ln2).abs());
            assert!(d <= 2.0 * h + 1e-9, "top-decile cell at ({x1}, {x2})");
        }
    }

    #[test]
    fn raster_quiet_near_origin() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let r = laplacian_raster(&f, (-1.0, 2.0, -1.0, 2.0), 64, 32, 0);
        let mut all: Vec<f64> = Vec::new();
        for row in 1..63 {
            for col in 1..63 {
                all.push(r.at(row, col).abs());
            }
        }
        let mut sorted = all.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[sorted.len() / 2];
        let h = 3.0 / 63.0;
        for row in 1..63 {
            for col in 1..63 {
                let x1 = -1.0 + col as f64 * h;
                let x2 = -1.0 + row as f64 * h;
                if (x1 * x1 + x2 * x2).sqrt() < 0.4 {
                    assert!(
                        r.at(row, col).abs() <= median,
                        "cell ({x1}, {x2}) above median"
                    );
                }
            }
        }
    }

    #[test]
    fn raster_constant_is_flat() {
        let f = crate::laurent::parse_poly_nvars("5", 2).unwrap();
        let r = laplacian_raster(&f, (-1.0, 1.0, -1.0, 1.0), 16, 16, 0);
        for v in &r.values {
            assert!(v.abs() < 1e-6);
        }
    }

    #[test]
    fn convexity_property() {
        // R(midpoint) <= average of endpoints + 2 * error.
        let f = parse_poly("3 + X1 + X2").unwrap();
        let pts = [
            (rat(-1, 1), rat(1, 2), rat(1, 1), rat(-1, 2)),
            (rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)),
            (rat(-2, 1), rat(1, 1), rat(2, 1), rat(-1, 1)),
        ];
        for (a1, a2, b1, b2) in pts {
            let a = vec![a1.clone(), a2.clone()];
            let b = vec![b1.clone(), b2.clone()];
            let mid = vec![
                (&a[0] + &b[0]) / rat(2, 1),
                (&a[1] + &b[1]) / rat(2, 1),
            ];
            let ra = ronkin_quadrature(&f, &a, 128, 0);
            let rb = ronkin_quadrature(&f, &b, 128, 0);
            let rm = ronkin_quadrature(&f, &mid, 128, 0);
            let err = ra.error + rb.error + rm.error;
            assert!(
                rm.value <= 0.5 * (ra.value + rb.value) + 2.0 * err + 1e-6,
                "convexity violated"
            );
        }
    }

    #[test]
    fn affinity_on_component() {
        // Second difference of collinear certified-exterior points ~ 0.
        let f = parse_poly("3 + X1 + X2").unwrap();
        let xs = [
            vec![rat(-3, 1), rat(-2, 1)],
            vec![rat(-5, 2), rat(-7, 4)],
            vec![rat(-2, 1), rat(-3, 2)],
        ];
        let vals: Vec<RonkinEstimate> =
            xs.iter().map(|x| ronkin_quadrature(&f, x, 128, 0)).collect();
        let second = vals[0].value - 2.0 * vals[1].value + vals[2].value;
        let err: f64 = vals.iter().map(|v| v.error).sum();
        assert!(second.abs() <= 3.0 * err + 1e-6, "second difference {second}");
    }
}
