//! Certified complex root isolation: numeric approximation (Durand-Kerner)
//! followed by Krawczyk interval certification, with a subdivision fallback.
//!
//! Multiplicities come from exact squarefree decomposition, so every
//! certified box contains exactly one root of a squarefree factor.

use crate::interval::{ComplexBox, DyInterval, Dyadic};
use crate::univariate::UnivariatePoly;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootError {
    #[error("root isolation failed: {0}")]
    IsolationFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// A certified box containing exactly `multiplicity` roots (counted with
/// multiplicity).
#[derive(Clone, Debug)]
pub struct RootBox {
    pub re: DyInterval,
    pub im: DyInterval,
    pub multiplicity: usize,
}

impl RootBox {
    pub fn to_box(&self) -> ComplexBox {
        ComplexBox::new(self.re.clone(), self.im.clone())
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    pub fn modulus(&self, prec: u32) -> DyInterval {
        self.to_box().modulus(prec)
    }
}

/// A univariate polynomial with complex-interval coefficients (lowest first).
/// Used both for exact polynomials (tight boxes) and for polynomials whose
/// coefficients are only known as enclosures.
#[derive(Clone, Debug)]
pub struct BoxPoly {
    pub coeffs: Vec<ComplexBox>,
}

impl BoxPoly {
    pub fn from_univariate(p: &UnivariatePoly, prec: u32) -> Self {
        BoxPoly { coeffs: p.coeffs.iter().map(|c| c.to_box(prec)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: &ComplexBox, prec: u32) -> ComplexBox {
        let mut acc = ComplexBox::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(c, prec);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return BoxPoly { coeffs: vec![ComplexBox::zero()] };
        }
        BoxPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&ComplexBox::real(DyInterval::from_i64(k as i64)), 64))
                .collect(),
        }
    }

    /// Leading coefficient excludes zero?
    pub fn lc_nonzero(&self) -> bool {
        self.coeffs.last().is_some_and(|c| !c.contains_zero())
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(c.re.mid_f64(), c.im.mid_f64()))
            .collect()
    }
}

pub enum Krawczyk {
    /// Unique zero certified inside the returned (contracted) box.
    Certified(ComplexBox),
    /// No zero in the box.
    Excluded,
    Unknown,
}

/// One Krawczyk step for a univariate complex polynomial over a box.
pub fn krawczyk_step(p: &BoxPoly, dp: &BoxPoly, z: &ComplexBox, prec: u32) -> Krawczyk {
    // Quick exclusion.
    let over = p.eval(z, prec);
    if !over.re.contains_zero() || !over.im.contains_zero() {
        return Krawczyk::Excluded;
    }
    let (mr, mi) = z.mid();
    let m = ComplexBox::new(DyInterval::point(mr), DyInterval::point(mi));
    let fm = p.eval(&m, prec);
    let dm = dp.eval(&m, prec);
    let (dr, di) = (dm.re.mid(), dm.im.mid());
    // Y = 1 / derivative midpoint (any fixed complex number keeps soundness).
    let norm = dr.mul_exact(&dr).add_exact(&di.mul_exact(&di));
    if norm.is_zero() {
        return Krawczyk::Unknown;
    }
    let y = ComplexBox::new(
        DyInterval::point(dr).div(&DyInterval::point(norm.clone()), prec),
        DyInterval::point(di.neg()).div(&DyInterval::point(norm), prec),
    );
    let dz = p_derivative_over(dp, z, prec);
    let one = ComplexBox::one();
    let k = m
        .sub(&y.mul(&fm, prec), prec)
        .add(
            &one.sub(&y.mul(&dz, prec), prec).mul(&z.sub(&m, prec), prec),
            prec,
        );
    if z.contains_interior(&k) {
        let refined = k.intersect(z).unwrap_or(k);
        return Krawczyk::Certified(refined);
    }
    if k.intersect(z).is_none() {
        return Krawczyk::Excluded;
    }
    Krawczyk::Unknown
}

fn p_derivative_over(dp: &BoxPoly, z: &ComplexBox, prec: u32) -> ComplexBox {
    dp.eval(z, prec)
}

/// Contract a certified box until below the width target (best effort).
pub fn refine_certified(
    p: &BoxPoly,
    dp: &BoxPoly,
    mut z: ComplexBox,
    log2width: i64,
    prec: u32,
) -> ComplexBox {
    for _ in 0..256 {
        if z.width_below_pow2(log2width) {
            break;
        }
        match krawczyk_step(p, dp, &z, prec) {
            Krawczyk::Certified(k) => {
                if k.re.width() >= z.re.width() && k.im.width() >= z.im.width() {
                    break;
                }
                z = k;
            }
            _ => break,
        }
    }
    z
}

/// Durand-Kerner iteration on f64 complex coefficients (lowest first).
/// Coefficients should be pre-scaled to avoid overflow; returns raw
/// approximations.
pub fn durand_kerner(coeffs: &[Complex64], iters: usize) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy-style radius.
    let mut radius: f64 = 0.0;
    for c in &monic[..d] {
        radius = radius.max(c.norm());
    }
    let radius = (1.0 + radius).min(1e100);
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let mut zs: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.4;
            Complex64::from_polar(radius * (0.5 + 0.5 * ((k % 3) as f64 + 1.0) / 3.0), angle)
        })
        .collect();
    for _ in 0..iters {
        let mut max_delta: f64 = 0.0;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() < 1e-290 {
                // perturb coincident iterates
                zs[i] += Complex64::new(1e-8 * radius, 1e-8 * radius);
                continue;
            }
            let delta = eval(zs[i]) / denom;
            zs[i] -= delta;
            max_delta = max_delta.max(delta.norm());
        }
        if max_delta < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    zs
}

fn scaled_c64(p: &UnivariatePoly) -> Vec<Complex64> {
    // Divide by the largest coefficient magnitude exactly, then convert.
    let mut max_mag = BigRational::zero();
    for c in &p.coeffs {
        let m = c.norm_sq();
        if m > max_mag {
            max_mag = m;
        }
    }
    if max_mag.is_zero() {
        return vec![Complex64::new(0.0, 0.0)];
    }
    // scale = 2^(floor(log2 sqrt(max))) via bit lengths
    let bits = (max_mag.numer().bits() as i64 - max_mag.denom().bits() as i64) / 2;
    let scale = BigRational::from_integer(num_bigint::BigInt::from(1) << bits.unsigned_abs() as usize);
    let scale = if bits >= 0 { scale } else { scale.recip() };
    p.coeffs
        .iter()
        .map(|c| {
            let re = (&c.re / &scale).to_f64().unwrap_or(0.0);
            let im = (&c.im / &scale).to_f64().unwrap_or(0.0);
            Complex64::new(re, im)
        })
        .collect()
}

/// Isolate all roots of an exact squarefree polynomial into certified,
/// pairwise disjoint boxes of width at most `2^-precision_bits`.
fn isolate_squarefree(
    q: &UnivariatePoly,
    precision_bits: u32,
) -> Result<Vec<ComplexBox>, RootError> {
    let d = q.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    let log2w = -(precision_bits as i64);
    if d == 1 {
        let root = q.coeffs[0].neg().div(&q.coeffs[1]);
        return Ok(vec![root.to_box(precision_bits + 8)]);
    }
    let prec = (precision_bits + 64).max(128);
    let p_box = BoxPoly::from_univariate(q, prec);
    let dp_box = p_box.derivative();
    let approx = {
        let c64 = scaled_c64(q);
        let mut zs = durand_kerner(&c64, 400);
        // Newton polish
        let dc: Vec<Complex64> = c64
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        let eval = |cs: &[Complex64], z: Complex64| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in cs.iter().rev() {
                acc = acc * z + c;
            }
            acc
        };
        for z in zs.iter_mut() {
            for _ in 0..6 {
                let dv = eval(&dc, *z);
                if dv.norm() < 1e-280 {
                    break;
                }
                *z -= eval(&c64, *z) / dv;
            }
        }
        zs
    };
    let scale_log2: i64 = approx
        .iter()
        .map(|z| z.norm().max(1.0).log2().ceil() as i64)
        .max()
        .unwrap_or(0);
    let mut certified: Vec<ComplexBox> = Vec::new();
    for z in &approx {
        if !z.is_finite() {
            continue;
        }
        let mut got = None;
        for log2eps in [-44i64, -36, -28, -20, -14, -8].map(|e| e + scale_log2) {
            let cand = ComplexBox::from_f64(z.re, z.im, log2eps);
            match krawczyk_step(&p_box, &dp_box, &cand, prec) {
                Krawczyk::Certified(k) => {
                    got = Some(refine_certified(&p_box, &dp_box, k, log2w, prec));
                    break;
                }
                Krawczyk::Excluded => break,
                Krawczyk::Unknown => continue,
            }
        }
        if let Some(b) = got {
            // Skip duplicates of already-certified roots.
            if certified.iter().all(|c| c.intersect(&b).is_none()) {
                certified.push(b);
            }
        }
    }
    if certified.len() == d {
        certified.sort_by(|a, b| {
            a.re.lo().cmp(b.re.lo()).then(a.im.lo().cmp(b.im.lo()))
        });
        return Ok(certified);
    }
    // Subdivision fallback over a Cauchy disk bounding square.
    subdivision_isolate(q, &p_box, &dp_box, certified, precision_bits, prec)
}

fn subdivision_isolate(
    q: &UnivariatePoly,
    p_box: &BoxPoly,
    dp_box: &BoxPoly,
    mut certified: Vec<ComplexBox>,
    precision_bits: u32,
    prec: u32,
) -> Result<Vec<ComplexBox>, RootError> {
    let d = q.degree().unwrap();
    let log2w = -(precision_bits as i64);
    // Cauchy bound on |roots|.
    let lc_norm = q.lc().norm_sq();
    let mut max_ratio = BigRational::zero();
    for c in &q.coeffs[..d] {
        let r = c.norm_sq() / &lc_norm;
        if r > max_ratio {
            max_ratio = r;
        }
    }
    let bound_log2 = ((max_ratio.numer().bits() as i64 - max_ratio.denom().bits() as i64) / 2 + 2)
        .max(2);
    let b = Dyadic::new(num_bigint::BigInt::from(1), bound_log2);
    let init = ComplexBox::new(
        DyInterval::new(b.neg(), b.clone()),
        DyInterval::new(b.neg(), b),
    );
    let mut stack = vec![(init, 0usize)];
    let max_depth = 80usize;
    while let Some((cell, depth)) = stack.pop() {
        if certified.len() == d {
            break;
        }
        if certified.iter().any(|c| c.contains_interior(&cell)) {
            continue;
        }
        let val = p_box.eval(&cell, prec);
        if !val.re.contains_zero() || !val.im.contains_zero() {
            continue;
        }
        match krawczyk_step(p_box, dp_box, &cell, prec) {
            Krawczyk::Certified(k) => {
                let b = refine_certified(p_box, dp_box, k, log2w, prec);
                if certified.iter().all(|c| c.intersect(&b).is_none()) {
                    certified.push(b);
                }
                continue;
            }
            Krawczyk::Excluded => continue,
            Krawczyk::Unknown => {}
        }
        if depth >= max_depth {
            return Err(RootError::IsolationFailed(format!(
                "subdivision depth cap at cell around ({}, {})",
                cell.re.mid_f64(),
                cell.im.mid_f64()
            )));
        }
        // Split into four quadrants.
        let (mr, mi) = cell.mid();
        let re_parts = [
            DyInterval::new(cell.re.lo().clone(), mr.clone()),
            DyInterval::new(mr, cell.re.hi().clone()),
        ];
        let im_parts = [
            DyInterval::new(cell.im.lo().clone(), mi.clone()),
            DyInterval::new(mi, cell.im.hi().clone()),
        ];
        for rp in &re_parts {
            for ip in &im_parts {
                stack.push((
                    ComplexBox::new(rp.clone(), ip.clone()).inflate_pow2(
                        log2w - 8,
                    ),
                    depth + 1,
                ));
            }
        }
    }
    if certified.len() == d {
        certified.sort_by(|a, b| {
            a.re.lo().cmp(b.re.lo()).then(a.im.lo().cmp(b.im.lo()))
        });
        Ok(certified)
    } else {
        Err(RootError::IsolationFailed(format!(
            "certified {} of {} roots",
            certified.len(),
            d
        )))
    }
}

/// Isolate all complex roots of `p` into disjoint certified boxes with
/// multiplicities from the squarefree decomposition.
pub fn isolate_roots(
    p: &UnivariatePoly,
    precision_bits: u32,
) -> Result<Vec<RootBox>, RootError> {
    if p.is_zero() {
        return Err(RootError::InvalidInput("zero polynomial".into()));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let (q, m0) = p.strip_zero_roots();
    let mut out: Vec<RootBox> = Vec::new();
    if m0 > 0 {
        out.push(RootBox {
            re: DyInterval::zero(),
            im: DyInterval::zero(),
            multiplicity: m0,
        });
    }
    for (part, mult) in q.squarefree_decomposition() {
        for b in isolate_squarefree(&part, precision_bits)? {
            out.push(RootBox { re: b.re, im: b.im, multiplicity: mult });
        }
    }
    out.sort_by(|a, b| a.re.lo().cmp(b.re.lo()).then(a.im.lo().cmp(b.im.lo())));
    Ok(out)
}
