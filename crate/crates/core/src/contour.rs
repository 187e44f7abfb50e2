//! Contour computation for bivariate polynomials: the derivative pencil, its
//! Sylvester resultants, the u-sweep tracer, the exact origin-in-contour
//! decision, and logarithmic Gauss map evaluation.
//!
//! The origin decision eliminates the projective parameter symbolically: a
//! regular point has a real Gauss ratio exactly when the cross polynomial
//! `N = u1 * rev(w) - rev(u1) * w` (with `u1 = X1 dF/dX1`, `w = X2 dF/dX2`,
//! `rev` the exponent reversal that realizes conjugation on the unit torus)
//! vanishes, and singular points satisfy it trivially. Unit-torus solutions
//! of `F = N = 0` are located through circle roots of the two eliminants and
//! certified by an interval Newton (Krawczyk) test on the square system.

use crate::geometry::newton_polytope;
use crate::interval::{ComplexBox, DyInterval};
use crate::laurent::LaurentPoly;
use crate::resultant::{laurent_to_univariate, sylvester_resultant};
use crate::roots::{isolate_roots, RootBox};
use crate::univariate::{
    conjugate_reciprocal, roots_on_unit_circle, CircleRoot, GaussianRational,
    UnivariatePoly,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ContourError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pencil is identically zero (both scaled partials vanish)")]
    DegeneratePencil,
    #[error("degenerate resultant: {0}")]
    DegenerateResultant(String),
    #[error("unresolved candidate pair at precision cap: {0}")]
    Unresolved(String),
    #[error(transparent)]
    Roots(#[from] crate::roots::RootError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// Affine chart of the projective pencil parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// `Q = u1 + u * w` (parameter on the second partial).
    One,
    /// `Q = v * u1 + w` (parameter on the first partial; covers u = infinity).
    Two,
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Chart::One => write!(f, "1"),
            Chart::Two => write!(f, "2"),
        }
    }
}

/// Symbolic resultant pair of the pencil, parameter as the first variable.
#[derive(Clone, Debug)]
pub struct ResultantPair {
    /// `Res_{X2}(P, Q)` in the variables (u, X1).
    pub r_x2: LaurentPoly,
    /// `Res_{X1}(P, Q)` in the variables (u, X2).
    pub r_x1: LaurentPoly,
    pub chart: Chart,
    pub scaled: bool,
}

/// One traced contour point.
#[derive(Clone, Debug)]
pub struct ContourSample {
    pub chart: Chart,
    pub u: BigRational,
    pub z1: ComplexBox,
    pub z2: ComplexBox,
    pub x1: DyInterval,
    pub x2: DyInterval,
}

/// Certification state of the realness of a Gauss value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Realness {
    Real,
    NotReal,
    Undetermined,
}

/// Projective value of the logarithmic Gauss map.
#[derive(Clone, Debug)]
pub struct GaussValue {
    /// Enclosure of `z1 dF/dz1`.
    pub numer: ComplexBox,
    /// Enclosure of `z2 dF/dz2`.
    pub denom: ComplexBox,
    pub real: Realness,
}

impl GaussValue {
    /// The affine ratio `numer / denom` when the denominator excludes zero.
    pub fn ratio(&self, prec: u32) -> Option<ComplexBox> {
        if self.denom.contains_zero() {
            None
        } else {
            Some(self.numer.div(&self.denom, prec))
        }
    }
}

/// The monomial-scaled Gauss numerators `(X1 dF/dX1, X2 dF/dX2)`.
pub fn gauss_numerators(f: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let n = f.nvars();
    let mut s1 = vec![0i64; n];
    s1[0] = 1;
    let mut s2 = vec![0i64; n];
    s2[1] = 1;
    (
        f.derivative(0).shift_exponents(&s1),
        f.derivative(1).shift_exponents(&s2),
    )
}

fn check_bivariate(f: &LaurentPoly) -> Result<LaurentPoly, ContourError> {
    if f.nvars() != 2 {
        return Err(ContourError::Precondition(format!(
            "expected 2 variables, got {}",
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(ContourError::Precondition("zero polynomial".into()));
    }
    let (g, _) = f.normalize_laurent();
    Ok(g)
}

/// The pencil `(P, Q)` at a rational parameter value; `Q` is cleared to
/// integer coefficients (scaling does not move its zero set).
pub fn build_pencil(
    f: &LaurentPoly,
    param: &BigRational,
    chart: Chart,
    scaled: bool,
) -> Result<(LaurentPoly, LaurentPoly), ContourError> {
    let g = check_bivariate(f)?;
    let (a, b) = if scaled {
        gauss_numerators(&g)
    } else {
        (g.derivative(0), g.derivative(1))
    };
    let num = param.numer();
    let den = param.denom();
    let q = match chart {
        Chart::One => a.scale(den).add(&b.scale(num)).expect("arity"),
        Chart::Two => a.scale(num).add(&b.scale(den)).expect("arity"),
    };
    if q.is_zero() {
        return Err(ContourError::DegeneratePencil);
    }
    Ok((g, q))
}

/// Symbolic pencil in three variables `(u, X1, X2)`.
pub fn pencil_symbolic(
    f: &LaurentPoly,
    chart: Chart,
    scaled: bool,
) -> Result<(LaurentPoly, LaurentPoly), ContourError> {
    let g = check_bivariate(f)?;
    let (a, b) = if scaled {
        gauss_numerators(&g)
    } else {
        (g.derivative(0), g.derivative(1))
    };
    let embed = |p: &LaurentPoly, u_pow: i64| -> LaurentPoly {
        let terms: Vec<(Vec<i64>, BigInt)> = p
            .terms()
            .map(|(e, c)| (vec![u_pow, e[0], e[1]], c.clone()))
            .collect();
        LaurentPoly::from_terms(3, terms).expect("arity")
    };
    let p3 = embed(&g, 0);
    let q3 = match chart {
        Chart::One => embed(&a, 0).add(&embed(&b, 1)).expect("arity"),
        Chart::Two => embed(&a, 1).add(&embed(&b, 0)).expect("arity"),
    };
    if q3.is_zero() {
        return Err(ContourError::DegeneratePencil);
    }
    Ok((p3, q3))
}

/// Exact Sylvester resultants of the symbolic pencil, eliminating X2 and X1.
pub fn contour_resultants(
    f: &LaurentPoly,
    chart: Chart,
    scaled: bool,
) -> Result<ResultantPair, ContourError> {
    let (p3, q3) = pencil_symbolic(f, chart, scaled)?;
    let r_x2 = sylvester_resultant(&p3, &q3, 2);
    let r_x1 = sylvester_resultant(&p3, &q3, 1);
    if r_x2.is_zero() || r_x1.is_zero() {
        return Err(ContourError::DegenerateResultant(
            "symbolic resultant vanished (shared factor in the pencil)".into(),
        ));
    }
    Ok(ResultantPair { r_x2, r_x1, chart, scaled })
}

/// Grids of parameter values for the two charts.
#[derive(Clone, Debug)]
pub struct ChartGrids {
    pub chart1: Vec<BigRational>,
    pub chart2: Vec<BigRational>,
}

impl ChartGrids {
    /// Uniform inclusive grid on [lo, hi] with `samples` points, same for
    /// both charts.
    pub fn uniform(lo: &BigRational, hi: &BigRational, samples: usize) -> Self {
        let mut grid = Vec::with_capacity(samples);
        if samples <= 1 {
            grid.push(lo.clone());
        } else {
            let step = (hi - lo) / BigRational::from_integer(BigInt::from(samples as i64 - 1));
            for i in 0..samples {
                grid.push(lo + &step * BigRational::from_integer(BigInt::from(i as i64)));
            }
        }
        ChartGrids { chart1: grid.clone(), chart2: grid }
    }
}

/// Result of a contour trace: samples plus warnings for skipped parameters.
#[derive(Clone, Debug)]
pub struct TraceResult {
    pub samples: Vec<ContourSample>,
    pub warnings: Vec<String>,
}

/// Sweep the pencil parameter over both charts; for each value isolate the
/// roots of both specialized resultants, keep candidate pairs where both
/// pencil polynomials enclose zero, and emit log-modulus images.
pub fn trace_contour(
    f: &LaurentPoly,
    grids: &ChartGrids,
    precision_bits: u32,
) -> Result<TraceResult, ContourError> {
    let g = check_bivariate(f)?;
    let prec = precision_bits.clamp(48, 512);
    let mut samples = Vec::new();
    let mut warnings = Vec::new();
    for (chart, grid) in [(Chart::One, &grids.chart1), (Chart::Two, &grids.chart2)] {
        for u in grid {
            match trace_at(&g, u, chart, prec) {
                Ok(mut s) => samples.append(&mut s),
                Err(w) => warnings.push(format!("chart {chart}, u = {u}: {w}")),
            }
        }
    }
    Ok(TraceResult { samples, warnings })
}

fn trace_at(
    g: &LaurentPoly,
    u: &BigRational,
    chart: Chart,
    prec: u32,
) -> Result<Vec<ContourSample>, String> {
    let (p, q) = build_pencil(g, u, chart, true).map_err(|e| e.to_string())?;
    let r1 = sylvester_resultant(&p, &q, 1);
    let r2 = sylvester_resultant(&p, &q, 0);
    if r1.is_zero() || r2.is_zero() {
        return Err("resultant vanished (common factor at this parameter)".into());
    }
    let u1 = laurent_to_univariate(&r1);
    let u2 = laurent_to_univariate(&r2);
    if u1.degree().unwrap_or(0) == 0 || u2.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let roots1 = isolate_roots(&u1, prec).map_err(|e| e.to_string())?;
    let roots2 = isolate_roots(&u2, prec).map_err(|e| e.to_string())?;
    let torus_roots = |roots: Vec<RootBox>| -> Vec<RootBox> {
        roots
            .into_iter()
            .filter(|r| !r.to_box().contains_zero())
            .collect()
    };
    let roots1 = torus_roots(roots1);
    let roots2 = torus_roots(roots2);
    let mut out = Vec::new();
    for b1 in &roots1 {
        for b2 in &roots2 {
            let z = [b1.to_box(), b2.to_box()];
            let pv = p.eval_complex_box(&z, prec);
            if !pv.contains_zero() {
                continue;
            }
            let qv = q.eval_complex_box(&z, prec);
            if !qv.contains_zero() {
                continue;
            }
            let x1 = z[0].modulus(prec).ln(prec);
            let x2 = z[1].modulus(prec).ln(prec);
            out.push(ContourSample {
                chart,
                u: u.clone(),
                z1: z[0].clone(),
                z2: z[1].clone(),
                x1,
                x2,
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Exact origin-in-contour decision
// ---------------------------------------------------------------------------

/// Outcome of the origin decision.
#[derive(Clone, Debug)]
pub enum OriginContour {
    Yes { z1: ComplexBox, z2: ComplexBox, gauss: GaussValue },
    No,
}

impl OriginContour {
    pub fn is_yes(&self) -> bool {
        matches!(self, OriginContour::Yes { .. })
    }
}

/// Exponent reversal inside the degree box `d`: realizes `g(1/z) * z^d`.
fn reverse_in_box(g: &LaurentPoly, d: &[i64]) -> LaurentPoly {
    conjugate_reciprocal(g, d).expect("degree box covers actual degrees")
}

/// The cross polynomial whose unit-torus zeros are exactly the points where
/// the scaled Gauss ratio is real (or both numerators vanish).
pub fn gauss_cross_poly(f: &LaurentPoly) -> Result<LaurentPoly, ContourError> {
    let g = check_bivariate(f)?;
    let (u1, w) = gauss_numerators(&g);
    if u1.is_zero() && w.is_zero() {
        return Err(ContourError::DegeneratePencil);
    }
    let d: Vec<i64> = (0..2)
        .map(|j| u1.degree(j).unwrap_or(0).max(w.degree(j).unwrap_or(0)))
        .collect();
    let n = u1
        .multiply(&reverse_in_box(&w, &d))
        .expect("arity")
        .sub(&reverse_in_box(&u1, &d).multiply(&w).expect("arity"))
        .expect("arity");
    Ok(n)
}

/// Exact decision whether the origin lies in the contour of the amoeba.
pub fn origin_in_contour(f: &LaurentPoly) -> Result<OriginContour, ContourError> {
    let g = check_bivariate(f)?;
    let delta = newton_polytope(&g)?;
    if delta.dim != 2 {
        return Err(ContourError::Precondition(format!(
            "Newton polytope has dimension {} < 2",
            delta.dim
        )));
    }
    let cross = gauss_cross_poly(&g)?;
    if cross.is_zero() {
        return Err(ContourError::DegenerateResultant(
            "Gauss-real condition vanishes identically (non-reduced input?)".into(),
        ));
    }
    let (cross, _) = cross.normalize_laurent();
    let rho1 = sylvester_resultant(&g, &cross, 1);
    let rho2 = sylvester_resultant(&g, &cross, 0);
    if rho1.is_zero() || rho2.is_zero() {
        return Err(ContourError::DegenerateResultant(
            "F shares a factor with the Gauss-real polynomial (non-reduced input?)".into(),
        ));
    }
    let e1 = laurent_to_univariate(&rho1);
    let e2 = laurent_to_univariate(&rho2);
    let prec = 96u32;
    let circ1 = circle_roots_nonzero(&e1, prec);
    let circ2 = circle_roots_nonzero(&e2, prec);
    if circ1.is_empty() || circ2.is_empty() {
        return Ok(OriginContour::No);
    }
    // Exact rational candidates first: z_j in {1, -1, i, -i}.
    let units = [
        GaussianRational::from_int(1),
        GaussianRational::from_int(-1),
        GaussianRational::i(),
        GaussianRational::i().neg(),
    ];
    for u in &units {
        if !e1.eval(u).is_zero() {
            continue;
        }
        let fs = slice_gr(&g, 0, u);
        let ns = slice_gr(&cross, 0, u);
        let common = if fs.is_zero() {
            ns
        } else if ns.is_zero() {
            fs
        } else {
            fs.gcd(&ns)
        };
        if common.degree().unwrap_or(0) == 0 {
            continue;
        }
        let circle = roots_on_unit_circle(&common, prec);
        if let Some(r) = circle.first() {
            let z1 = u.to_box(prec);
            let z2 = ComplexBox::new(r.re.clone(), r.im.clone());
            let gauss = gauss_at_witness(&g, &z1, &z2, prec);
            return Ok(OriginContour::Yes { z1, z2, gauss });
        }
    }
    for u in &units {
        if !e2.eval(u).is_zero() {
            continue;
        }
        let fs = slice_gr(&g, 1, u);
        let ns = slice_gr(&cross, 1, u);
        let common = if fs.is_zero() {
            ns
        } else if ns.is_zero() {
            fs
        } else {
            fs.gcd(&ns)
        };
        if common.degree().unwrap_or(0) == 0 {
            continue;
        }
        let circle = roots_on_unit_circle(&common, prec);
        if let Some(r) = circle.first() {
            let z2 = u.to_box(prec);
            let z1 = ComplexBox::new(r.re.clone(), r.im.clone());
            let gauss = gauss_at_witness(&g, &z1, &z2, prec);
            return Ok(OriginContour::Yes { z1, z2, gauss });
        }
    }
    // General pairs: isolate eliminant roots so each circle box isolates
    // among all of them, then certify the square system F = N = 0.
    let iso1 = isolating_circle_boxes(&e1, &circ1, prec)?;
    let iso2 = isolating_circle_boxes(&e2, &circ2, prec)?;
    let mut unresolved = Vec::new();
    for b1 in &iso1 {
        for b2 in &iso2 {
            match certify_pair(&g, &cross, b1, b2, prec) {
                PairStatus::Certified => {
                    let gauss = gauss_at_witness(&g, b1, b2, prec);
                    return Ok(OriginContour::Yes {
                        z1: b1.clone(),
                        z2: b2.clone(),
                        gauss,
                    });
                }
                PairStatus::Excluded => {}
                PairStatus::Unknown => unresolved.push((
                    b1.re.mid_f64(),
                    b1.im.mid_f64(),
                    b2.re.mid_f64(),
                    b2.im.mid_f64(),
                )),
            }
        }
    }
    if unresolved.is_empty() {
        Ok(OriginContour::No)
    } else {
        Err(ContourError::Unresolved(format!(
            "{} candidate pair(s) near {:?}",
            unresolved.len(),
            unresolved.first()
        )))
    }
}

fn circle_roots_nonzero(p: &UnivariatePoly, prec: u32) -> Vec<CircleRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    roots_on_unit_circle(p, prec)
}

/// Intersect circle-root boxes with isolating boxes of all roots, so each
/// returned box contains exactly one root of the eliminant, on the circle.
fn isolating_circle_boxes(
    p: &UnivariatePoly,
    circle: &[CircleRoot],
    prec: u32,
) -> Result<Vec<ComplexBox>, ContourError> {
    let all = isolate_roots(p, prec)?;
    let mut out = Vec::new();
    for c in circle {
        let cb = c.to_box();
        let mut matched = None;
        for r in &all {
            if let Some(ix) = r.to_box().intersect(&cb) {
                if matched.is_some() {
                    return Err(ContourError::Unresolved(
                        "circle box overlaps two isolating boxes".into(),
                    ));
                }
                matched = Some(ix);
            }
        }
        match matched {
            Some(b) => out.push(b),
            None => {
                return Err(ContourError::Unresolved(
                    "circle root not matched to an isolating box".into(),
                ))
            }
        }
    }
    Ok(out)
}

fn slice_gr(g: &LaurentPoly, pin: usize, u: &GaussianRational) -> UnivariatePoly {
    let free = 1 - pin;
    let deg = g.degree(free).unwrap_or(0).max(0) as usize;
    let mut coeffs = vec![GaussianRational::zero(); deg + 1];
    for (e, c) in g.terms() {
        let mut t = GaussianRational::from_bigint(c);
        for _ in 0..e[pin] {
            t = t.mul(u);
        }
        coeffs[e[free] as usize] = coeffs[e[free] as usize].add(&t);
    }
    UnivariatePoly::new(coeffs)
}

enum PairStatus {
    Certified,
    Excluded,
    Unknown,
}

/// Krawczyk test for the square system (F, N) on a product box.
fn certify_pair(
    f: &LaurentPoly,
    n: &LaurentPoly,
    b1: &ComplexBox,
    b2: &ComplexBox,
    prec: u32,
) -> PairStatus {
    let z = [b1.clone(), b2.clone()];
    let fv = f.eval_complex_box(&z, prec);
    if !fv.contains_zero() {
        return PairStatus::Excluded;
    }
    let nv = n.eval_complex_box(&z, prec);
    if !nv.contains_zero() {
        return PairStatus::Excluded;
    }
    // Midpoint and residual.
    let m = [
        point_box(&z[0]),
        point_box(&z[1]),
    ];
    let fm = [f.eval_complex_box(&m, prec), n.eval_complex_box(&m, prec)];
    // Interval Jacobian.
    let j = [
        [
            f.derivative(0).eval_complex_box(&z, prec),
            f.derivative(1).eval_complex_box(&z, prec),
        ],
        [
            n.derivative(0).eval_complex_box(&z, prec),
            n.derivative(1).eval_complex_box(&z, prec),
        ],
    ];
    // Approximate inverse of the midpoint Jacobian.
    let jm = [
        [point_box(&j[0][0]), point_box(&j[0][1])],
        [point_box(&j[1][0]), point_box(&j[1][1])],
    ];
    let det = jm[0][0]
        .mul(&jm[1][1], prec)
        .sub(&jm[0][1].mul(&jm[1][0], prec), prec);
    if det.contains_zero() {
        return PairStatus::Unknown;
    }
    let y = [
        [jm[1][1].div(&det, prec), jm[0][1].neg().div(&det, prec)],
        [jm[1][0].neg().div(&det, prec), jm[0][0].div(&det, prec)],
    ];
    // K = m - Y f(m) + (I - Y J)(Z - m)
    let dz = [z[0].sub(&m[0], prec), z[1].sub(&m[1], prec)];
    let one = ComplexBox::one();
    let zero = ComplexBox::zero();
    let imyj = [
        [
            one.sub(&mat_entry(&y, &j, 0, 0, prec), prec),
            zero.sub(&mat_entry(&y, &j, 0, 1, prec), prec),
        ],
        [
            zero.sub(&mat_entry(&y, &j, 1, 0, prec), prec),
            one.sub(&mat_entry(&y, &j, 1, 1, prec), prec),
        ],
    ];
    let yf = [
        y[0][0].mul(&fm[0], prec).add(&y[0][1].mul(&fm[1], prec), prec),
        y[1][0].mul(&fm[0], prec).add(&y[1][1].mul(&fm[1], prec), prec),
    ];
    let k = [
        m[0].sub(&yf[0], prec).add(
            &imyj[0][0]
                .mul(&dz[0], prec)
                .add(&imyj[0][1].mul(&dz[1], prec), prec),
            prec,
        ),
        m[1].sub(&yf[1], prec).add(
            &imyj[1][0]
                .mul(&dz[0], prec)
                .add(&imyj[1][1].mul(&dz[1], prec), prec),
            prec,
        ),
    ];
    if z[0].contains_interior(&k[0]) && z[1].contains_interior(&k[1]) {
        return PairStatus::Certified;
    }
    if k[0].intersect(&z[0]).is_none() || k[1].intersect(&z[1]).is_none() {
        return PairStatus::Excluded;
    }
    PairStatus::Unknown
}

fn point_box(z: &ComplexBox) -> ComplexBox {
    let (r, i) = z.mid();
    ComplexBox::new(DyInterval::point(r), DyInterval::point(i))
}

fn mat_entry(
    y: &[[ComplexBox; 2]; 2],
    j: &[[ComplexBox; 2]; 2],
    r: usize,
    c: usize,
    prec: u32,
) -> ComplexBox {
    y[r][0].mul(&j[0][c], prec).add(&y[r][1].mul(&j[1][c], prec), prec)
}

fn gauss_at_witness(
    f: &LaurentPoly,
    z1: &ComplexBox,
    z2: &ComplexBox,
    prec: u32,
) -> GaussValue {
    let (u1, w) = gauss_numerators(f);
    let z = [z1.clone(), z2.clone()];
    let numer = u1.eval_complex_box(&z, prec);
    let denom = w.eval_complex_box(&z, prec);
    // The witness satisfies the Gauss-real condition by construction.
    GaussValue { numer, denom, real: Realness::Real }
}

/// Enclosure of the logarithmic Gauss map at a point. Realness is certified
/// when the cross-product imaginary part excludes zero (NotReal) or is
/// exactly zero (Real); otherwise it stays Undetermined.
pub fn gauss_map(
    f: &LaurentPoly,
    z1: &ComplexBox,
    z2: &ComplexBox,
    prec: u32,
) -> Result<GaussValue, ContourError> {
    let g = check_bivariate(f)?;
    let (u1, w) = gauss_numerators(&g);
    let z = [z1.clone(), z2.clone()];
    let numer = u1.eval_complex_box(&z, prec);
    let denom = w.eval_complex_box(&z, prec);
    if numer.contains_zero() && denom.contains_zero() {
        return Err(ContourError::Precondition(
            "both scaled partials enclose zero (singular-point candidate)".into(),
        ));
    }
    let cross = numer.mul(&denom.conj(), prec);
    let real = if !cross.im.contains_zero() {
        Realness::NotReal
    } else if cross.im.width().is_zero() {
        Realness::Real
    } else {
        Realness::Undetermined
    };
    Ok(GaussValue { numer, denom, real })
}

/// Exact Gauss evaluation at a Gaussian-rational point.
pub fn gauss_map_exact(
    f: &LaurentPoly,
    z1: &GaussianRational,
    z2: &GaussianRational,
    prec: u32,
) -> Result<GaussValue, ContourError> {
    let g = check_bivariate(f)?;
    let (u1, w) = gauss_numerators(&g);
    let ev = |p: &LaurentPoly| -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in p.terms() {
            let mut t = GaussianRational::from_bigint(c);
            for _ in 0..e[0].max(0) {
                t = t.mul(z1);
            }
            for _ in 0..e[1].max(0) {
                t = t.mul(z2);
            }
            acc = acc.add(&t);
        }
        acc
    };
    let nv = ev(&u1);
    let dv = ev(&w);
    if nv.is_zero() && dv.is_zero() {
        return Err(ContourError::Precondition(
            "both scaled partials vanish (singular point)".into(),
        ));
    }
    let cross = nv.mul(&dv.conj());
    let real = if cross.im.is_zero() {
        Realness::Real
    } else {
        Realness::NotReal
    };
    Ok(GaussValue { numer: nv.to_box(prec), denom: dv.to_box(prec), real })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pencil_examples() {
        // F = 4 - 2X1 - 2X2 + X1X2, scaled chart 1 at u = 1:
        // Q = X1(X2 - 2) + u X2(X1 - 2)
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let (_, q) = build_pencil(&f, &rat(1, 1), Chart::One, true).unwrap();
        let expected = parse_poly("-2*X1 + X1*X2 - 2*X2 + X1*X2").unwrap();
        assert_eq!(q, expected);
        // paper-literal pencil for 2 + X1 + X2: Q = 1 + u (degenerate at u = -1)
        let g = parse_poly("2 + X1 + X2").unwrap();
        let (_, q2) = build_pencil(&g, &rat(3, 1), Chart::One, false).unwrap();
        assert_eq!(q2, crate::laurent::parse_poly_nvars("4", 2).unwrap());
        assert!(matches!(
            build_pencil(&g, &rat(-1, 1), Chart::One, false),
            Err(ContourError::DegeneratePencil)
        ));
        // 1 + X1 + X2^2, paper-literal: Q = 1 + 2 u X2
        let h = parse_poly("1 + X1 + X2^2").unwrap();
        let (_, q3) = build_pencil(&h, &rat(1, 1), Chart::One, false).unwrap();
        assert_eq!(q3, crate::laurent::parse_poly_nvars("1 + 2*X2", 2).unwrap());
    }

    #[test]
    fn symbolic_resultants_product_of_lines() {
        // R_{X2}(u, X1) = 2u (X1 - 2)^2 for F = (2 - X1)(2 - X2).
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let pair = contour_resultants(&f, Chart::One, true).unwrap();
        // in variables (u, X1): 2u(X1^2 - 4X1 + 4)
        let expected = crate::laurent::parse_poly("8*X1 - 8*X1*X2 + 2*X1*X2^2").unwrap();
        assert_eq!(pair.r_x2, expected);
        // R_{X1}(u, X2) is u-free and proportional to (X2 - 2)^2.
        let rx1 = &pair.r_x1;
        assert_eq!(rx1, &crate::laurent::parse_poly_nvars("8 - 8*X2 + 2*X2^2", 2).unwrap());
    }

    #[test]
    fn symbolic_resultant_cross_checked_by_specialization() {
        let f = parse_poly("3 + 2*X1 - X2 + X1*X2 + X2^2").unwrap();
        let pair = contour_resultants(&f, Chart::One, true).unwrap();
        for uv in [-2i64, 0, 1, 3] {
            let (p, q) = build_pencil(&f, &rat(uv, 1), Chart::One, true).unwrap();
            let direct = sylvester_resultant(&p, &q, 1);
            let specialized = pair.r_x2.substitute_value(0, &BigInt::from(uv));
            assert_eq!(direct, specialized, "u = {uv}");
        }
    }

    #[test]
    fn origin_in_contour_yes_for_two_plus() {
        let f = parse_poly("2 + X1 + X2").unwrap();
        match origin_in_contour(&f).unwrap() {
            OriginContour::Yes { z1, z2, gauss } => {
                assert!((z1.re.mid_f64() + 1.0).abs() < 1e-9);
                assert!(z1.im.contains_zero());
                assert!((z2.re.mid_f64() + 1.0).abs() < 1e-9);
                assert_eq!(gauss.real, Realness::Real);
                let ratio = gauss.ratio(64).unwrap();
                assert!((ratio.re.mid_f64() - 1.0).abs() < 1e-9);
                assert!(ratio.im.contains_zero());
            }
            OriginContour::No => panic!("expected yes"),
        }
    }

    #[test]
    fn origin_in_contour_no_cases() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        assert!(!origin_in_contour(&f).unwrap().is_yes());
        let g = parse_poly("1 + X1 + X2").unwrap();
        assert!(!origin_in_contour(&g).unwrap().is_yes());
        let h = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        assert!(!origin_in_contour(&h).unwrap().is_yes());
    }

    #[test]
    fn trace_product_of_lines() {
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let grids = ChartGrids::uniform(&rat(-50, 1), &rat(50, 1), 101);
        let res = trace_contour(&f, &grids, 96).unwrap();
        assert!(!res.samples.is_empty());
        let ln2 = 2f64.ln();
        let mut hit_corner = false;
        for s in &res.samples {
            let d1 = (s.x1.mid_f64() - ln2).abs();
            let d2 = (s.x2.mid_f64() - ln2).abs();
            assert!(d1.min(d2) < 1e-6, "sample off the ln2 lines: ({}, {})", s.x1.mid_f64(), s.x2.mid_f64());
            if d1 < 1e-6 && d2 < 1e-6 {
                hit_corner = true;
            }
        }
        assert!(hit_corner, "singular image (ln2, ln2) missing");
    }

    #[test]
    fn trace_two_plus_hits_origin() {
        let f = parse_poly("2 + X1 + X2").unwrap();
        let grids = ChartGrids::uniform(&rat(-50, 1), &rat(50, 1), 101);
        let res = trace_contour(&f, &grids, 96).unwrap();
        let best = res
            .samples
            .iter()
            .map(|s| (s.x1.mid_f64().powi(2) + s.x2.mid_f64().powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        assert!(best < 1e-3, "closest sample at distance {best}");
    }

    #[test]
    fn trace_three_plus_keeps_distance() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let grids = ChartGrids::uniform(&rat(-50, 1), &rat(50, 1), 101);
        let res = trace_contour(&f, &grids, 96).unwrap();
        assert!(!res.samples.is_empty());
        let threshold = 2f64.sqrt() * 1.5f64.ln() - 1e-3;
        for s in &res.samples {
            let d = (s.x1.mid_f64().powi(2) + s.x2.mid_f64().powi(2)).sqrt();
            assert!(d >= threshold, "sample at distance {d}");
        }
    }

    #[test]
    fn gauss_map_cases() {
        let prec = 96;
        // 2 + X1 + X2 at (-1, -1): [-1 : -1], real.
        let f = parse_poly("2 + X1 + X2").unwrap();
        let m1 = GaussianRational::from_int(-1);
        let gv = gauss_map_exact(&f, &m1, &m1, prec).unwrap();
        assert_eq!(gv.real, Realness::Real);
        // 1 + X1 + X2 at the primitive sixth-root pair: not real.
        let g = parse_poly("1 + X1 + X2").unwrap();
        let sqrt3 = DyInterval::from_i64(3).sqrt(prec);
        let half = DyInterval::from_rational(&rat(1, 2), prec);
        let omega = ComplexBox::new(
            DyInterval::from_rational(&rat(-1, 2), prec),
            sqrt3.mul(&half, prec),
        );
        let gv2 = gauss_map(&g, &omega, &omega.conj(), prec).unwrap();
        assert_eq!(gv2.real, Realness::NotReal);
        // (2 - X1)(2 - X2) at (2, i-ish): denominator exactly zero -> [1:0].
        let h = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let two = GaussianRational::from_int(2);
        let i = GaussianRational::i();
        let gv3 = gauss_map_exact(&h, &two, &i, prec).unwrap();
        assert_eq!(gv3.real, Realness::Real);
        assert!(gv3.denom.contains_zero());
        assert!(!gv3.numer.contains_zero());
    }

    #[test]
    fn samples_satisfy_eliminants() {
        // Elimination soundness: each sample's coordinates zero the
        // specialized resultants.
        let f = parse_poly("2 + X1 + X2").unwrap();
        let grids = ChartGrids::uniform(&rat(-3, 1), &rat(3, 1), 7);
        let res = trace_contour(&f, &grids, 96).unwrap();
        assert!(!res.samples.is_empty());
        for s in &res.samples {
            let (p, q) = build_pencil(&f, &s.u, s.chart, true).unwrap();
            let r1 = sylvester_resultant(&p, &q, 1);
            let r2 = sylvester_resultant(&p, &q, 0);
            let u1 = laurent_to_univariate(&r1);
            let u2 = laurent_to_univariate(&r2);
            assert!(u1.eval_box(&s.z1, 96).contains_zero());
            assert!(u2.eval_box(&s.z2, 96).contains_zero());
        }
    }
}
