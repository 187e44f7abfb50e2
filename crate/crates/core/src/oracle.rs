//! Independent verification oracles: fiber-sampling amoeba membership, the
//! exact one-dimensional amoeba, the exact resultant-based stability oracle
//! for n = 2, and a (non-certified) polydisk sampling check.
//!
//! The fiber oracle parametrizes circle phases rationally through the Cayley
//! map `s -> (1+is)/(1-is)`, so every sample point is an exact rational
//! times `e^{x_j}`. Member verdicts come from a certified change in the
//! number of slice roots inside the target circle (or an exact hit at a
//! rational fiber point); NonMember verdicts come from adaptive interval
//! subdivision of the whole fiber torus.

use crate::interval::{ComplexBox, DyInterval};
use crate::laurent::LaurentPoly;
use crate::resultant::{laurent_to_univariate, sylvester_resultant};
use crate::roots::{isolate_roots, krawczyk_step, refine_certified, BoxPoly, Krawczyk, RootBox};
use crate::univariate::{
    cayley_image_box, conjugate_reciprocal, has_circle_roots, roots_on_unit_circle,
    schur_cohn_stable_disk, GaussianRational, UnivariatePoly,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is divisible by X{0}")]
    DivisibleByCoordinate(usize),
    #[error("expected {expected} variables, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("support contains negative exponents")]
    NotPolynomial,
    #[error("root isolation failed: {0}")]
    Roots(#[from] crate::roots::RootError),
}

/// A certified fiber point witnessing amoeba membership.
#[derive(Clone, Debug)]
pub struct MembershipWitness {
    pub z: Vec<ComplexBox>,
    /// Enclosure of |F| over the witness boxes; contains zero.
    pub residual: DyInterval,
}

/// Result of a fiber membership query.
#[derive(Clone, Debug)]
pub enum FiberMembership {
    Member(MembershipWitness),
    /// Certified positive lower bound for |F| over the whole fiber.
    NonMember { lower_bound: f64 },
    Undetermined,
}

impl FiberMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, FiberMembership::Member(_))
    }
    pub fn is_non_member(&self) -> bool {
        matches!(self, FiberMembership::NonMember { .. })
    }
    pub fn is_undetermined(&self) -> bool {
        matches!(self, FiberMembership::Undetermined)
    }
}

const FIBER_PREC: u32 = 64;

/// Does `x` belong to the amoeba of `f`? Certified both ways for n <= 2; for
/// n >= 3 the NonMember side is certified (interval subdivision) and Member
/// queries come back Undetermined.
pub fn amoeba_membership_fiber(
    f: &LaurentPoly,
    x: &[BigRational],
    resolution: u32,
) -> FiberMembership {
    assert_eq!(f.nvars(), x.len());
    if f.is_zero() {
        return FiberMembership::Member(MembershipWitness {
            z: vec![ComplexBox::one(); x.len()],
            residual: DyInterval::zero(),
        });
    }
    let (g, _) = f.normalize_laurent();
    if g.num_terms() == 1 {
        let mags = g.eval_term_magnitudes(x, 32);
        return FiberMembership::NonMember { lower_bound: mags[0].1.lo_f64() };
    }
    match g.nvars() {
        1 => membership_1d(&g, &x[0], resolution),
        2 => membership_2d(&g, x, resolution),
        _ => match nonmember_subdivision(&g, x, resolution) {
            Some(bound) => FiberMembership::NonMember { lower_bound: bound },
            None => FiberMembership::Undetermined,
        },
    }
}

// ---------------------------------------------------------------------------
// n = 1
// ---------------------------------------------------------------------------

fn membership_1d(g: &LaurentPoly, x: &BigRational, resolution: u32) -> FiberMembership {
    if x.is_zero() {
        if let Ok(p) = UnivariatePoly::from_laurent(g) {
            if has_circle_roots(&p) {
                let roots = roots_on_unit_circle(&p, FIBER_PREC);
                let r = &roots[0];
                let z = ComplexBox::new(r.re.clone(), r.im.clone());
                let residual = p.eval_box(&z, FIBER_PREC).modulus(FIBER_PREC);
                return FiberMembership::Member(MembershipWitness { z: vec![z], residual });
            }
        }
    }
    match nonmember_subdivision(g, std::slice::from_ref(x), resolution) {
        Some(bound) => FiberMembership::NonMember { lower_bound: bound },
        None => FiberMembership::Undetermined,
    }
}

// ---------------------------------------------------------------------------
// Certified NonMember for any n: adaptive interval subdivision of the fiber
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct FiberCell {
    s: Vec<(BigRational, BigRational)>,
    signs: Vec<i8>,
}

/// Certified lower bound of |F| over the fiber torus above `x`, or `None`
/// when zero cannot be excluded at the requested resolution.
fn nonmember_subdivision(g: &LaurentPoly, x: &[BigRational], resolution: u32) -> Option<f64> {
    let n = g.nvars();
    let prec = FIBER_PREC;
    let radii: Vec<DyInterval> = x
        .iter()
        .map(|xi| DyInterval::from_rational(xi, prec).exp(prec))
        .collect();
    let full = (
        BigRational::from_integer(BigInt::from(-1)),
        BigRational::from_integer(BigInt::from(1)),
    );
    let mut stack: Vec<FiberCell> = Vec::new();
    for mask in 0..(1usize << n) {
        let signs: Vec<i8> = (0..n)
            .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
            .collect();
        stack.push(FiberCell { s: vec![full.clone(); n], signs });
    }
    let min_width = BigRational::new(BigInt::from(2), BigInt::from(resolution.max(4)));
    let mut min_lo: Option<f64> = None;
    let mut work = 0usize;
    while let Some(cell) = stack.pop() {
        work += 1;
        if work > 300_000 {
            return None;
        }
        let z: Vec<ComplexBox> = (0..n)
            .map(|j| {
                let img = cayley_image_box(&cell.s[j].0, &cell.s[j].1, prec);
                let img = if cell.signs[j] < 0 { img.neg() } else { img };
                img.mul_real(&radii[j], prec)
            })
            .collect();
        let val = g.eval_complex_box(&z, prec).modulus_sq(prec);
        if val.is_positive() {
            let lo = val.lo_f64().max(0.0).sqrt();
            min_lo = Some(match min_lo {
                None => lo,
                Some(m) => m.min(lo),
            });
            continue;
        }
        let (widest, width) = cell
            .s
            .iter()
            .enumerate()
            .map(|(j, (a, b))| (j, b - a))
            .max_by(|a, b| a.1.cmp(&b.1))
            .unwrap();
        if width <= min_width {
            return None;
        }
        let mid = (&cell.s[widest].0 + &cell.s[widest].1)
            / BigRational::from_integer(BigInt::from(2));
        let mut left = cell.clone();
        left.s[widest].1 = mid.clone();
        let mut right = cell;
        right.s[widest].0 = mid;
        stack.push(left);
        stack.push(right);
    }
    min_lo
}

// ---------------------------------------------------------------------------
// n = 2: exact hits and the counting sweep
// ---------------------------------------------------------------------------

fn membership_2d(g: &LaurentPoly, x: &[BigRational], resolution: u32) -> FiberMembership {
    if let Some(w) = exact_hit_2d(g, x) {
        return FiberMembership::Member(w);
    }
    if let Some(w) = counting_sweep_member(g, x, resolution) {
        return FiberMembership::Member(w);
    }
    match nonmember_subdivision(g, x, resolution) {
        Some(bound) => FiberMembership::NonMember { lower_bound: bound },
        None => FiberMembership::Undetermined,
    }
}

/// Exact hits: when both coordinates of x are zero, pin one variable at a
/// rational fourth root of unity and test the slice exactly for circle
/// roots.
fn exact_hit_2d(g: &LaurentPoly, x: &[BigRational]) -> Option<MembershipWitness> {
    if !x[0].is_zero() || !x[1].is_zero() {
        return None;
    }
    let units = [
        GaussianRational::from_int(1),
        GaussianRational::from_int(-1),
        GaussianRational::i(),
        GaussianRational::i().neg(),
    ];
    for pin in [0usize, 1usize] {
        let free = 1 - pin;
        for u in &units {
            let slice = slice_poly(g, pin, u);
            if slice.is_zero() {
                let mut z = vec![ComplexBox::one(), ComplexBox::one()];
                z[pin] = u.to_box(FIBER_PREC);
                let residual = g.eval_complex_box(&z, FIBER_PREC).modulus(FIBER_PREC);
                return Some(MembershipWitness { z, residual });
            }
            if slice.degree().unwrap_or(0) == 0 {
                continue;
            }
            if has_circle_roots(&slice) {
                let roots = roots_on_unit_circle(&slice, FIBER_PREC);
                let r = &roots[0];
                let mut z = vec![ComplexBox::one(), ComplexBox::one()];
                z[pin] = u.to_box(FIBER_PREC);
                z[free] = ComplexBox::new(r.re.clone(), r.im.clone());
                let residual = g.eval_complex_box(&z, FIBER_PREC).modulus(FIBER_PREC);
                return Some(MembershipWitness { z, residual });
            }
        }
    }
    None
}

/// The univariate slice with variable `pin` set to an exact value.
fn slice_poly(g: &LaurentPoly, pin: usize, u: &GaussianRational) -> UnivariatePoly {
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

struct SweepSample {
    sign: i8,
    s: BigRational,
    count: usize,
}

/// Member detection: sweep z1 over its circle; a certified change in the
/// number of slice roots strictly inside radius e^{x2} forces a root to
/// cross the circle (continuity of the root multiset), i.e. a fiber zero.
fn counting_sweep_member(
    g: &LaurentPoly,
    x: &[BigRational],
    resolution: u32,
) -> Option<MembershipWitness> {
    let prec = FIBER_PREC;
    let m = (resolution.clamp(16, 512) / 4).max(8) as i64;
    let two_x2 = &x[1] + &x[1];
    let r2_sq = DyInterval::from_rational(&two_x2, prec).exp(prec);
    let mut samples: Vec<SweepSample> = Vec::new();
    for sign in [1i8, -1] {
        for i in 0..m {
            let s = BigRational::new(BigInt::from(2 * i + 1 - m), BigInt::from(m));
            if let Some(count) = resolve_count(g, x, sign, &s, &r2_sq, prec) {
                samples.push(SweepSample { sign, s, count });
            }
        }
    }
    if samples.len() < 2 {
        return None;
    }
    let k = samples.len();
    for i in 0..k {
        let a = &samples[i];
        let b = &samples[(i + 1) % k];
        if a.count != b.count {
            return Some(bracket_witness(g, x, a, b, &r2_sq, prec));
        }
    }
    None
}

/// Certified count of slice roots strictly inside radius e^{x2} at one sweep
/// position; `None` when a root modulus cannot be separated from the circle.
fn resolve_count(
    g: &LaurentPoly,
    x: &[BigRational],
    sign: i8,
    s: &BigRational,
    r2_sq: &DyInterval,
    prec: u32,
) -> Option<usize> {
    let roots = certified_slice_roots(g, x, sign, s, prec)?;
    let mut count = 0;
    for r in &roots {
        let msq = r.modulus_sq(prec);
        match msq.cmp_certain(r2_sq) {
            Some(std::cmp::Ordering::Less) => count += 1,
            Some(_) => {}
            None => return None,
        }
    }
    Some(count)
}

/// All roots of the slice `z2 -> F(z1(s), z2)`, certified against the
/// interval coefficients. Returns `None` when the leading coefficient
/// cannot be separated from zero or certification is incomplete.
fn certified_slice_roots(
    g: &LaurentPoly,
    x: &[BigRational],
    sign: i8,
    s: &BigRational,
    prec: u32,
) -> Option<Vec<ComplexBox>> {
    let r1 = DyInterval::from_rational(&x[0], prec).exp(prec);
    let img = cayley_image_box(s, s, prec);
    let img = if sign < 0 { img.neg() } else { img };
    let z1 = img.mul_real(&r1, prec);
    let d1 = g.degree(0).unwrap_or(0);
    let d2 = g.degree(1).unwrap_or(0) as usize;
    if d2 == 0 {
        return Some(Vec::new());
    }
    // Interval coefficients of the slice.
    let mut pows = Vec::with_capacity(d1 as usize + 1);
    pows.push(ComplexBox::one());
    for k in 1..=d1 {
        pows.push(pows[(k - 1) as usize].mul(&z1, prec));
    }
    let mut coeffs = vec![ComplexBox::zero(); d2 + 1];
    for (e, c) in g.terms() {
        let t = pows[e[0] as usize]
            .mul_real(&DyInterval::from_bigint(c), prec);
        coeffs[e[1] as usize] = coeffs[e[1] as usize].add(&t, prec);
    }
    let poly = BoxPoly { coeffs };
    if !poly.lc_nonzero() {
        return None;
    }
    let dpoly = poly.derivative();
    // Numeric seeds.
    let approx = crate::roots::durand_kerner(&poly.to_c64(), 300);
    let mut certified: Vec<ComplexBox> = Vec::new();
    for z in &approx {
        if !z.is_finite() {
            continue;
        }
        let scale = z.norm().max(1.0).log2().ceil() as i64;
        for log2eps in [-40i64, -32, -24, -16, -10] {
            let cand = ComplexBox::from_f64(z.re, z.im, log2eps + scale);
            match krawczyk_step(&poly, &dpoly, &cand, prec) {
                Krawczyk::Certified(k) => {
                    let b = refine_certified(&poly, &dpoly, k, -(prec as i64 / 2), prec);
                    if certified.iter().all(|c| c.intersect(&b).is_none()) {
                        certified.push(b);
                    }
                    break;
                }
                Krawczyk::Excluded => break,
                Krawczyk::Unknown => continue,
            }
        }
    }
    if certified.len() == d2 {
        Some(certified)
    } else {
        None
    }
}

/// Bisect the bracketing arc, then assemble a witness box whose residual
/// encloses zero. The Member decision itself rests on the certified count
/// change; the witness is the evidence payload.
fn bracket_witness(
    g: &LaurentPoly,
    x: &[BigRational],
    a: &SweepSample,
    b: &SweepSample,
    r2_sq: &DyInterval,
    prec: u32,
) -> MembershipWitness {
    let mut lo = (a.sign, a.s.clone(), a.count);
    let mut hi = (b.sign, b.s.clone(), b.count);
    // Bisect only within a common branch.
    if lo.0 == hi.0 {
        for _ in 0..48 {
            let mid = (&lo.1 + &hi.1) / BigRational::from_integer(BigInt::from(2));
            match resolve_count(g, x, lo.0, &mid, r2_sq, prec) {
                Some(c) => {
                    if c != lo.2 {
                        hi = (lo.0, mid, c);
                    } else {
                        lo = (lo.0, mid, c);
                    }
                }
                None => break,
            }
            if (&hi.1 - &lo.1).abs()
                < BigRational::new(BigInt::from(1), BigInt::from(1i64 << 40))
            {
                break;
            }
        }
    }
    // Hull of the arc between the bracket parameters (per branch piece).
    let r1 = DyInterval::from_rational(&x[0], prec).exp(prec);
    let arc = |sign: i8, s0: &BigRational, s1: &BigRational| {
        let (a, b) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        let img = cayley_image_box(a, b, prec);
        let img = if sign < 0 { img.neg() } else { img };
        img.mul_real(&r1, prec)
    };
    let z1 = if lo.0 == hi.0 {
        arc(lo.0, &lo.1, &hi.1)
    } else {
        arc(lo.0, &lo.1, &BigRational::from_integer(BigInt::from(1)))
            .hull(&arc(hi.0, &hi.1, &BigRational::from_integer(BigInt::from(1))))
    };
    // z2 region: annulus-ish box around the target circle, hulled from the
    // near-circle roots at the bracket endpoints when available.
    let mut z2 = near_circle_root(g, x, lo.0, &lo.1, r2_sq, prec);
    if let Some(other) = near_circle_root_opt(g, x, hi.0, &hi.1, r2_sq, prec) {
        z2 = z2.hull(&other);
    }
    let mut z2 = z2;
    let mut residual = g
        .eval_complex_box(&[z1.clone(), z2.clone()], prec)
        .modulus(prec);
    for _ in 0..10 {
        if residual.contains_zero() || residual.lo().is_negative() {
            break;
        }
        z2 = z2.inflate_pow2(z2_inflate_log2(&z2));
        residual = g
            .eval_complex_box(&[z1.clone(), z2.clone()], prec)
            .modulus(prec);
    }
    MembershipWitness { z: vec![z1, z2], residual }
}

fn z2_inflate_log2(z: &ComplexBox) -> i64 {
    let w = z.re.width();
    if w.is_zero() {
        -20
    } else {
        w.msb_exp()
    }
}

fn near_circle_root(
    g: &LaurentPoly,
    x: &[BigRational],
    sign: i8,
    s: &BigRational,
    r2_sq: &DyInterval,
    prec: u32,
) -> ComplexBox {
    near_circle_root_opt(g, x, sign, s, r2_sq, prec).unwrap_or_else(|| {
        let r2 = r2_sq.sqrt(prec);
        let hi = r2.hi().clone();
        ComplexBox::new(
            DyInterval::new(hi.neg(), hi.clone()),
            DyInterval::new(hi.neg(), hi),
        )
    })
}

fn near_circle_root_opt(
    g: &LaurentPoly,
    x: &[BigRational],
    sign: i8,
    s: &BigRational,
    r2_sq: &DyInterval,
    prec: u32,
) -> Option<ComplexBox> {
    let roots = certified_slice_roots(g, x, sign, s, prec)?;
    let target = r2_sq.mid_f64();
    roots
        .into_iter()
        .min_by(|p, q| {
            let dp = (p.modulus_sq(prec).mid_f64() - target).abs();
            let dq = (q.modulus_sq(prec).mid_f64() - target).abs();
            dp.total_cmp(&dq)
        })
        .map(|b| b.inflate_pow2(-16))
}

// ---------------------------------------------------------------------------
// Exact 1-d amoeba
// ---------------------------------------------------------------------------

/// One point of a one-dimensional amoeba.
#[derive(Clone, Debug)]
pub struct LogModulusPoint {
    pub value: DyInterval,
    /// True when the root lies exactly on the unit circle (log-modulus 0).
    pub exactly_zero: bool,
    pub multiplicity: usize,
}

/// Sorted log-moduli of the roots of a one-variable polynomial, with
/// multiplicities; unit-circle roots are recognized exactly.
pub fn amoeba_1d(f: &LaurentPoly) -> Result<Vec<LogModulusPoint>, OracleError> {
    if f.nvars() != 1 {
        return Err(OracleError::WrongArity { expected: 1, got: f.nvars() });
    }
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let (g, _) = f.normalize_laurent();
    let p = laurent_to_univariate(&g);
    let (p, _zero_mult) = p.strip_zero_roots();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let prec = 96u32;
    let roots = isolate_roots(&p, prec).map_err(OracleError::Roots)?;
    let circle = roots_on_unit_circle(&p, prec);
    let mut entries: Vec<LogModulusPoint> = Vec::new();
    let mut used = vec![false; roots.len()];
    // Exact unit-circle roots first.
    for c in &circle {
        let cb = c.to_box();
        for (i, r) in roots.iter().enumerate() {
            if used[i] {
                continue;
            }
            if r.to_box().intersect(&cb).is_some() {
                used[i] = true;
                entries.push(LogModulusPoint {
                    value: DyInterval::zero(),
                    exactly_zero: true,
                    multiplicity: r.multiplicity,
                });
                break;
            }
        }
    }
    // Conjugate pairing: conjugate roots share the modulus exactly.
    let conj_of = |b: &RootBox| ComplexBox::new(b.re.clone(), b.im.neg());
    let mut i = 0;
    while i < roots.len() {
        if used[i] {
            i += 1;
            continue;
        }
        let r = &roots[i];
        let mut mult = r.multiplicity;
        if !r.im.contains_zero() {
            let mirror = conj_of(r);
            for (j, q) in roots.iter().enumerate() {
                if j != i && !used[j] && q.to_box().intersect(&mirror).is_some() {
                    used[j] = true;
                    mult += q.multiplicity;
                    break;
                }
            }
        }
        used[i] = true;
        let value = r.modulus(prec).ln(prec);
        entries.push(LogModulusPoint { value, exactly_zero: false, multiplicity: mult });
        i += 1;
    }
    entries.sort_by(|a, b| a.value.lo().cmp(b.value.lo()));
    // Merge entries whose enclosures overlap.
    let mut merged: Vec<LogModulusPoint> = Vec::new();
    for e in entries {
        match merged.last_mut() {
            Some(last) if last.value.intersect(&e.value).is_some() => {
                last.value = last.value.hull(&e.value);
                last.multiplicity += e.multiplicity;
                last.exactly_zero = last.exactly_zero && e.exactly_zero;
            }
            _ => merged.push(e),
        }
    }
    Ok(merged)
}

// ---------------------------------------------------------------------------
// Exact 2-d stability oracle (resultant criterion)
// ---------------------------------------------------------------------------

/// Exact decision of "F has no zero on the closed unit bidisk" through
/// one-dimensional disk tests and the resultant of F with its
/// conjugate-reciprocal:
///   (i)  F(z1, 0) != 0 on the closed disk,
///   (ii) F(1, z2)  != 0 on the closed disk,
///   (iii) Res_{X2}(F, F*) has no root on the unit circle.
pub fn shanks_oracle_2d(f: &LaurentPoly) -> Result<bool, OracleError> {
    if f.nvars() != 2 {
        return Err(OracleError::WrongArity { expected: 2, got: f.nvars() });
    }
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    for j in 0..2 {
        let (lo, _) = f.exponent_range(j).unwrap();
        if lo < 0 {
            return Err(OracleError::NotPolynomial);
        }
        if lo > 0 {
            return Err(OracleError::DivisibleByCoordinate(j + 1));
        }
    }
    let d1 = f.degree(0).unwrap();
    let d2 = f.degree(1).unwrap();
    // Degenerate degrees reduce to univariate disk tests.
    if d2 == 0 {
        let p = laurent_to_univariate(&strip_var(f, 1));
        return Ok(schur_cohn_stable_disk(&p));
    }
    if d1 == 0 {
        let p = laurent_to_univariate(&strip_var(f, 0));
        return Ok(schur_cohn_stable_disk(&p));
    }
    // (i) bottom slice
    let p1 = slice_poly(f, 1, &GaussianRational::from_int(0));
    if p1.is_zero() || !schur_cohn_stable_disk(&p1) {
        return Ok(false);
    }
    // (ii) slice at X1 = 1
    let p2 = slice_poly(f, 0, &GaussianRational::from_int(1));
    if p2.is_zero() || !schur_cohn_stable_disk(&p2) {
        return Ok(false);
    }
    // (iii) resultant with the conjugate-reciprocal
    let fstar = conjugate_reciprocal(f, &[d1, d2]).expect("degrees are actual");
    let res = sylvester_resultant(f, &fstar, 1);
    if res.is_zero() {
        // A shared factor is impossible for a bidisk-nonvanishing F.
        return Ok(false);
    }
    let res_univ = laurent_to_univariate(&res);
    if res_univ.degree().unwrap_or(0) == 0 {
        return Ok(true);
    }
    Ok(!has_circle_roots(&res_univ))
}

/// Remove a variable that the polynomial does not use.
fn strip_var(f: &LaurentPoly, var: usize) -> LaurentPoly {
    let terms: Vec<(Vec<i64>, BigInt)> = f
        .terms()
        .map(|(e, c)| {
            let mut e2 = e.clone();
            e2.remove(var);
            (e2, c.clone())
        })
        .collect();
    LaurentPoly::from_terms(f.nvars() - 1, terms).expect("arity")
}

// ---------------------------------------------------------------------------
// Polydisk sampling (heuristic)
// ---------------------------------------------------------------------------

/// Outcome of the non-certified polydisk sampling check.
#[derive(Clone, Debug)]
pub enum PolydiskSample {
    /// No zero found; smallest |F| over the sampled skeleton meshes.
    NoZeroFound { min_modulus: f64 },
    /// A numerically refined zero inside the closed polydisk.
    ZeroFound { witness: Vec<(f64, f64)>, residual: f64 },
}

/// Sample |F| over skeleton meshes of the closed unit polydisk (radius
/// combinations in {0, 1/2, 1}); descend from the best point. This is a
/// heuristic screen, not a proof.
pub fn polydisk_nonvanishing_sample(
    f: &LaurentPoly,
    grid: u32,
    seed: u64,
) -> PolydiskSample {
    assert!(!f.is_zero(), "zero polynomial");
    let n = f.nvars();
    let grid = grid.max(4) as usize;
    let radii_options = [0.0f64, 0.5, 1.0];
    let jitter = (seed as f64 % 97.0) / 97.0 * (std::f64::consts::TAU / grid as f64);
    let mut best = (f64::INFINITY, vec![Complex64::new(0.0, 0.0); n]);
    let mut radii_idx = vec![0usize; n];
    loop {
        let radii: Vec<f64> = radii_idx.iter().map(|&i| radii_options[i]).collect();
        let active: Vec<usize> = (0..n).filter(|&j| radii[j] > 0.0).collect();
        let mut phase_idx = vec![0usize; active.len()];
        loop {
            let mut z = vec![Complex64::new(0.0, 0.0); n];
            for (pos, &j) in active.iter().enumerate() {
                let theta =
                    std::f64::consts::TAU * phase_idx[pos] as f64 / grid as f64 + jitter;
                z[j] = Complex64::from_polar(radii[j], theta);
            }
            let v = f.eval_complex_f64(&z).norm();
            if v < best.0 {
                best = (v, z.clone());
            }
            // advance phase indices
            let mut carry = true;
            for p in phase_idx.iter_mut() {
                if carry {
                    *p += 1;
                    if *p == grid {
                        *p = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry || active.is_empty() {
                break;
            }
        }
        // advance radii indices
        let mut carry = true;
        for r in radii_idx.iter_mut() {
            if carry {
                *r += 1;
                if *r == radii_options.len() {
                    *r = 0;
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            break;
        }
    }
    // Phase descent from the best sample (radii fixed).
    let scale: f64 = f
        .terms()
        .map(|(_, c)| c.to_f64().unwrap_or(0.0).abs())
        .sum::<f64>()
        .max(1.0);
    let mut z = best.1.clone();
    let mut val = best.0;
    for _ in 0..200 {
        if val < 1e-12 * scale {
            break;
        }
        // Gradient of |F|^2 in the phases.
        let fv = f.eval_complex_f64(&z);
        let mut grad = vec![0.0f64; n];
        for j in 0..n {
            if z[j].norm() == 0.0 {
                continue;
            }
            let dj = f.derivative(j).eval_complex_f64(&z);
            let dtheta = Complex64::new(0.0, 1.0) * z[j] * dj;
            grad[j] = 2.0 * (fv.conj() * dtheta).re;
        }
        let gnorm: f64 = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < 1e-18 * scale {
            break;
        }
        let mut step = 0.5 * val / gnorm.max(1e-300);
        let mut improved = false;
        for _ in 0..30 {
            let zt: Vec<Complex64> = z
                .iter()
                .enumerate()
                .map(|(j, zj)| {
                    if zj.norm() == 0.0 {
                        *zj
                    } else {
                        let rot = Complex64::from_polar(1.0, -step * grad[j] / zj.norm().max(1e-300));
                        zj * rot
                    }
                })
                .collect();
            let vt = f.eval_complex_f64(&zt).norm();
            if vt < val {
                z = zt;
                val = vt;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    if val < 1e-10 * scale {
        PolydiskSample::ZeroFound {
            witness: z.iter().map(|c| (c.re, c.im)).collect(),
            residual: val,
        }
    } else {
        PolydiskSample::NoZeroFound { min_modulus: best.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn origin() -> Vec<BigRational> {
        vec![BigRational::zero(), BigRational::zero()]
    }

    #[test]
    fn member_at_origin_tangential() {
        // 2 + X1 + X2 vanishes at (-1, -1): exact-hit path.
        let f = parse_poly("2 + X1 + X2").unwrap();
        let m = amoeba_membership_fiber(&f, &origin(), 128);
        match m {
            FiberMembership::Member(w) => {
                assert!(w.residual.contains_zero() || w.residual.lo_f64() <= 1e-12);
                assert!((w.z[0].re.mid_f64() + 1.0).abs() < 1e-6);
                assert!((w.z[1].re.mid_f64() + 1.0).abs() < 1e-6);
            }
            other => panic!("expected member, got {other:?}"),
        }
    }

    #[test]
    fn nonmember_at_origin() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let m = amoeba_membership_fiber(&f, &origin(), 128);
        match m {
            FiberMembership::NonMember { lower_bound } => {
                assert!(lower_bound > 0.5, "bound {lower_bound}");
            }
            other => panic!("expected non-member, got {other:?}"),
        }
    }

    #[test]
    fn member_inside_amoeba_via_counting() {
        // 3 + X1 + X2 at (ln 2-ish point): the triangle inequality becomes
        // feasible at x = (ln 2, ln 2); use a rational interior point of the
        // amoeba: x = (1, 1): e + e > 3, e < 3 + e: member.
        let f = parse_poly("3 + X1 + X2").unwrap();
        let x = vec![rat(1, 1), rat(1, 1)];
        let m = amoeba_membership_fiber(&f, &x, 128);
        assert!(m.is_member(), "expected member, got {m:?}");
        // 1 + X1 + X2 at the origin: zeros at the primitive sixth roots.
        let g = parse_poly("1 + X1 + X2").unwrap();
        let m2 = amoeba_membership_fiber(&g, &origin(), 128);
        assert!(m2.is_member(), "expected member, got {m2:?}");
    }

    #[test]
    fn nonmember_deep_in_component() {
        let f = parse_poly("1 + X1 + X2").unwrap();
        let x = vec![rat(-3, 1), rat(-3, 1)];
        let m = amoeba_membership_fiber(&f, &x, 128);
        assert!(m.is_non_member(), "expected non-member, got {m:?}");
    }

    #[test]
    fn amoeba_1d_examples() {
        // 2 - X: single point ln 2
        let f = parse_poly("2 - X1").unwrap();
        let pts = amoeba_1d(&f).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].value.mid_f64() - 2f64.ln()).abs() < 1e-9);

        // X^2 - 5X + 4: {0, ln 4}, the 0 exactly
        let g = parse_poly("4 - 5*X1 + X1^2").unwrap();
        let pts = amoeba_1d(&g).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts[0].exactly_zero);
        assert!((pts[1].value.mid_f64() - 4f64.ln()).abs() < 1e-9);

        // (X - 1)^2: {0} with multiplicity 2
        let h = parse_poly("1 - 2*X1 + X1^2").unwrap();
        let pts = amoeba_1d(&h).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].exactly_zero);
        assert_eq!(pts[0].multiplicity, 2);
    }

    #[test]
    fn shanks_examples() {
        let f = parse_poly("4 + X1 + X2").unwrap();
        assert!(shanks_oracle_2d(&f).unwrap());
        let g = parse_poly("1 + X1 + X2").unwrap();
        assert!(!shanks_oracle_2d(&g).unwrap());
        let h = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        assert!(shanks_oracle_2d(&h).unwrap());
        // divisible by X1
        let bad = parse_poly("X1 + X1*X2").unwrap();
        assert!(matches!(
            shanks_oracle_2d(&bad),
            Err(OracleError::DivisibleByCoordinate(1))
        ));
    }

    #[test]
    fn shanks_degenerate_degrees() {
        // univariate in X1 only
        let f = parse_poly("2 + X1").unwrap();
        let f2 = crate::laurent::parse_poly_nvars("2 + X1", 2).unwrap();
        assert!(shanks_oracle_2d(&f2).unwrap());
        let _ = f;
        let g2 = crate::laurent::parse_poly_nvars("1 + 2*X1", 2).unwrap();
        assert!(!shanks_oracle_2d(&g2).unwrap());
    }

    #[test]
    fn polydisk_examples() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        match polydisk_nonvanishing_sample(&f, 32, 0) {
            PolydiskSample::NoZeroFound { min_modulus } => {
                assert!(min_modulus > 0.9, "min {min_modulus}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let g = parse_poly("1 + X1 + X2").unwrap();
        match polydisk_nonvanishing_sample(&g, 32, 0) {
            PolydiskSample::ZeroFound { residual, .. } => {
                assert!(residual < 1e-9);
            }
            other => panic!("expected zero, got {other:?}"),
        }
        let c = parse_poly("1").unwrap();
        match polydisk_nonvanishing_sample(&c, 8, 0) {
            PolydiskSample::NoZeroFound { min_modulus } => {
                assert!((min_modulus - 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn one_d_consistency_with_fiber() {
        // For n = 1: membership at x agrees with the root log-moduli.
        let f = parse_poly("4 - 5*X1 + X1^2").unwrap(); // roots 1, 4
        let member0 = amoeba_membership_fiber(&f, &[BigRational::zero()], 64);
        assert!(member0.is_member());
        let off = amoeba_membership_fiber(&f, &[rat(1, 2)], 64);
        assert!(off.is_non_member());
        let off2 = amoeba_membership_fiber(&f, &[rat(3, 1)], 64);
        assert!(off2.is_non_member());
    }
}
