//! Exact univariate machinery over the Gaussian rationals: arithmetic, gcds,
//! squarefree decomposition, conjugate-reciprocal polynomials, exact
//! unit-circle root detection and an exact closed-unit-disk test.
//!
//! Circle roots are found through the Cayley transform `z = (1+it)/(1-it)`,
//! which turns them into common real roots of two rational polynomials, so
//! Sturm chains decide everything exactly. Roots strictly inside the disk are
//! counted by mapping the disk to the upper half plane and evaluating the
//! Cauchy index of the transformed polynomial, again a Sturm computation.

use crate::interval::{ComplexBox, DyInterval};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::sturm::{self, RealPoly, RealRootLoc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Exact complex rational `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        GaussianRational {
            re: BigRational::from_integer(n.clone()),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        GaussianRational { re: q, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn neg(&self) -> Self {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    /// `|z|^2`, exact.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        GaussianRational { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    pub fn to_box(&self, prec: u32) -> ComplexBox {
        ComplexBox::new(
            DyInterval::from_rational(&self.re, prec),
            DyInterval::from_rational(&self.im, prec),
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

/// Dense univariate polynomial over the Gaussian rationals, lowest degree
/// first, leading coefficient nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    pub coeffs: Vec<GaussianRational>,
}

impl UnivariatePoly {
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        let mut c = coeffs;
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UnivariatePoly { coeffs: c }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UnivariatePoly { coeffs: vec![GaussianRational::one()] }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UnivariatePoly::new(coeffs.iter().map(|c| GaussianRational::from_int(*c)).collect())
    }

    pub fn from_bigint_coeffs(coeffs: &[BigInt]) -> Self {
        UnivariatePoly::new(coeffs.iter().map(GaussianRational::from_bigint).collect())
    }

    /// From a one-variable Laurent polynomial with nonnegative exponents.
    pub fn from_laurent(f: &LaurentPoly) -> Result<Self, LaurentError> {
        if f.nvars() != 1 {
            return Err(LaurentError::ArityMismatch(f.nvars(), 1));
        }
        if f.is_zero() {
            return Ok(UnivariatePoly::zero());
        }
        let (lo, hi) = f.exponent_range(0).unwrap();
        if lo < 0 {
            return Err(LaurentError::InvalidData(
                "negative exponent in univariate conversion".into(),
            ));
        }
        let mut coeffs = vec![GaussianRational::zero(); (hi + 1) as usize];
        for (e, c) in f.terms() {
            coeffs[e[0] as usize] = GaussianRational::from_bigint(c);
        }
        Ok(UnivariatePoly::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> GaussianRational {
        self.coeffs.last().cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant(&self) -> GaussianRational {
        self.coeffs.first().cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_box(&self, z: &ComplexBox, prec: u32) -> ComplexBox {
        let mut acc = ComplexBox::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(&c.to_box(prec), prec);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UnivariatePoly::zero();
        }
        UnivariatePoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&GaussianRational::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero);
            out.push(a.add(&b));
        }
        UnivariatePoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UnivariatePoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UnivariatePoly::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        UnivariatePoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let db = rhs.degree().unwrap();
        let lb = rhs.lc().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (UnivariatePoly::zero(), self.clone());
        }
        let mut q = vec![GaussianRational::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            if r.last().unwrap().is_zero() {
                r.pop();
                continue;
            }
            let dr = r.len() - 1;
            let f = r.last().unwrap().mul(&lb);
            let shift = dr - db;
            q[shift] = f.clone();
            for (k, c) in rhs.coeffs.iter().enumerate() {
                r[k + shift] = r[k + shift].sub(&f.mul(c));
            }
            r.pop();
        }
        (UnivariatePoly::new(q), UnivariatePoly::new(r))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Coefficient-wise conjugation.
    pub fn conj_coeffs(&self) -> Self {
        UnivariatePoly { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// `p*(z) = z^d conj(p)(1/z)`: reversed conjugated coefficients.
    pub fn conjugate_reciprocal(&self) -> Self {
        let mut c: Vec<GaussianRational> =
            self.coeffs.iter().rev().map(|x| x.conj()).collect();
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UnivariatePoly { coeffs: c }
    }

    /// Strip a `z^m` factor; returns (p / z^m, m).
    pub fn strip_zero_roots(&self) -> (Self, usize) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if m == 0 || self.is_zero() {
            (self.clone(), 0)
        } else {
            (UnivariatePoly { coeffs: self.coeffs[m..].to_vec() }, m)
        }
    }

    /// Yun-style squarefree decomposition: returns [(q_1, 1), (q_2, 2), ...]
    /// with p = lc * prod q_j^j, each q_j monic squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(UnivariatePoly, usize)> {
        let p = self.monic();
        let d = p.degree().unwrap_or(0);
        if d == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let mut a = p.gcd(&dp);
        let mut b = p.divrem(&a).0;
        let mut c = dp.divrem(&a).0;
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let d_poly = c.sub(&b.derivative());
            if b.degree() == Some(0) {
                break;
            }
            let q = b.gcd(&d_poly);
            let qn = q.monic();
            if qn.degree().unwrap_or(0) > 0 {
                out.push((qn.clone(), i));
            }
            b = b.divrem(&qn).0;
            c = d_poly.divrem(&qn).0;
            i += 1;
            let _ = &a;
            a = UnivariatePoly::one();
            if i > d + 1 {
                break;
            }
        }
        out
    }

    /// Real and imaginary coefficient parts, as real polynomials in the same
    /// variable (meaningful when the variable ranges over the reals).
    pub fn real_imag_parts(&self) -> (RealPoly, RealPoly) {
        let re = sturm::normalize(self.coeffs.iter().map(|c| c.re.clone()).collect());
        let im = sturm::normalize(self.coeffs.iter().map(|c| c.im.clone()).collect());
        (re, im)
    }
}

// ---------------------------------------------------------------------------
// Circle roots through the Cayley transform
// ---------------------------------------------------------------------------

/// The polynomial `C(t) = (1-it)^d p((1+it)/(1-it))`: its real solutions `t`
/// correspond to unit-circle roots `z != -1` of `p`.
pub fn cayley_circle_poly(p: &UnivariatePoly) -> UnivariatePoly {
    let d = p.degree().expect("nonzero polynomial");
    let up = UnivariatePoly::new(vec![GaussianRational::one(), GaussianRational::i()]);
    let dn = UnivariatePoly::new(vec![GaussianRational::one(), GaussianRational::i().neg()]);
    // powers of (1+it) and (1-it)
    let mut pow_up = vec![UnivariatePoly::one()];
    let mut pow_dn = vec![UnivariatePoly::one()];
    for k in 1..=d {
        pow_up.push(pow_up[k - 1].mul(&up));
        pow_dn.push(pow_dn[k - 1].mul(&dn));
    }
    let mut acc = UnivariatePoly::zero();
    for (j, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = pow_up[j].mul(&pow_dn[d - j]).scale(c);
        acc = acc.add(&term);
    }
    acc
}

/// Number of distinct unit-circle roots of a squarefree `p`.
pub fn circle_root_count_squarefree(p: &UnivariatePoly) -> usize {
    let minus_one = GaussianRational::from_int(-1);
    let at_minus_one = usize::from(p.eval(&minus_one).is_zero());
    let c = cayley_circle_poly(p);
    if c.is_zero() {
        // Cannot happen for nonzero p: (1-it)^d never vanishes for real t.
        unreachable!("Cayley transform of a nonzero polynomial vanished");
    }
    let (a, b) = c.real_imag_parts();
    let g = real_gcd_nonconstant(&a, &b);
    match g {
        None => at_minus_one,
        Some(g) => sturm::count_real_roots(&g) + at_minus_one,
    }
}

/// Total number of distinct unit-circle roots of `p` (any multiplicities).
pub fn has_circle_roots(p: &UnivariatePoly) -> bool {
    let (q, _) = p.strip_zero_roots();
    if q.degree().unwrap_or(0) == 0 {
        return false;
    }
    q.squarefree_decomposition()
        .iter()
        .any(|(part, _)| circle_root_count_squarefree(part) > 0)
}

fn real_gcd_nonconstant(a: &RealPoly, b: &RealPoly) -> Option<RealPoly> {
    let g = if a.is_empty() {
        b.clone()
    } else if b.is_empty() {
        a.clone()
    } else {
        sturm::gcd(a, b)
    };
    if sturm::degree(&g).unwrap_or(0) == 0 {
        None
    } else {
        Some(g)
    }
}

// ---------------------------------------------------------------------------
// Exact count of roots inside the open unit disk
// ---------------------------------------------------------------------------

/// `P(w) = (w+i)^d r((w-i)/(w+i))`: maps the open unit disk in `z` to the
/// upper half plane in `w`. Requires `r(1) != 0` so that no root escapes to
/// infinity (guaranteed when `r` has no circle roots).
fn cayley_to_upper_half(r: &UnivariatePoly) -> UnivariatePoly {
    let d = r.degree().expect("nonzero polynomial");
    let wm = UnivariatePoly::new(vec![GaussianRational::i().neg(), GaussianRational::one()]);
    let wp = UnivariatePoly::new(vec![GaussianRational::i(), GaussianRational::one()]);
    let mut pow_m = vec![UnivariatePoly::one()];
    let mut pow_p = vec![UnivariatePoly::one()];
    for k in 1..=d {
        pow_m.push(pow_m[k - 1].mul(&wm));
        pow_p.push(pow_p[k - 1].mul(&wp));
    }
    let mut acc = UnivariatePoly::zero();
    for (j, c) in r.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&pow_m[j].mul(&pow_p[d - j]).scale(c));
    }
    acc
}

/// Number of roots of `p` in the open upper half plane, assuming no real
/// roots. Via the Cauchy index of the Sturm-style chain on (Re p, Im p):
/// `#upper = (deg - (V(-inf) - V(+inf))) / 2`.
fn upper_half_count(p: &UnivariatePoly) -> usize {
    let d = p.degree().expect("nonzero polynomial");
    if d == 0 {
        return 0;
    }
    let (a, b) = p.real_imag_parts();
    if a.is_empty() {
        // p = i*B: roots of a real polynomial without real roots, conjugate pairs.
        return sturm::degree(&b).unwrap() / 2;
    }
    if b.is_empty() {
        return sturm::degree(&a).unwrap() / 2;
    }
    let chain = sturm::pair_chain(&a, &b);
    let i =
        sturm::variations_at_infinity(&chain, false) as i64 - sturm::variations_at_infinity(&chain, true) as i64;
    let upper = d as i64 - i;
    debug_assert!(upper % 2 == 0 && upper >= 0, "inconsistent Cauchy index");
    (upper / 2) as usize
}

/// Number of roots of squarefree `q` (with `q(0) != 0`) strictly inside the
/// unit disk.
fn count_inside_squarefree(q: &UnivariatePoly) -> usize {
    let d = q.degree().unwrap_or(0);
    if d == 0 {
        return 0;
    }
    let qs = q.conjugate_reciprocal();
    let h = q.gcd(&qs);
    let dh = h.degree().unwrap_or(0);
    let mut total = 0;
    let r = if dh > 0 {
        // Roots of h = circle roots of q plus pairs (z, 1/conj z); the pairs
        // contribute exactly one inside root each.
        let nc = circle_root_count_squarefree(&h);
        debug_assert!((dh - nc) % 2 == 0);
        total += (dh - nc) / 2;
        q.divrem(&h).0
    } else {
        q.clone()
    };
    if r.degree().unwrap_or(0) > 0 {
        total += upper_half_count(&cayley_to_upper_half(&r));
    }
    total
}

/// Exact number of roots of `p` in the open unit disk, with multiplicity.
pub fn count_roots_in_open_disk(p: &UnivariatePoly) -> usize {
    assert!(!p.is_zero(), "zero polynomial");
    let (q, m) = p.strip_zero_roots();
    let mut total = m;
    for (part, mult) in q.squarefree_decomposition() {
        total += mult * count_inside_squarefree(&part);
    }
    total
}

/// Exact test: does `p` have no root in the closed unit disk (all roots
/// strictly outside)? This is the Schur-Cohn style disk decision, made total
/// by exact circle-root detection.
pub fn schur_cohn_stable_disk(p: &UnivariatePoly) -> bool {
    assert!(!p.is_zero(), "zero polynomial");
    if p.degree() == Some(0) {
        return true;
    }
    !has_circle_roots(p) && count_roots_in_open_disk(p) == 0
}

// ---------------------------------------------------------------------------
// Unit-circle roots as certified boxes
// ---------------------------------------------------------------------------

/// A unit-circle root location: exact Cayley parameter range plus box.
#[derive(Clone, Debug)]
pub struct CircleRoot {
    /// Isolating location of t = tan(theta/2); `None` marks z = -1.
    pub t: Option<RealRootLoc>,
    pub re: DyInterval,
    pub im: DyInterval,
    pub multiplicity: usize,
}

impl CircleRoot {
    pub fn to_box(&self) -> ComplexBox {
        ComplexBox::new(self.re.clone(), self.im.clone())
    }
}

/// Image of a Cayley parameter interval under `t -> (1+it)/(1-it)`, with
/// exact rational min/max analysis of both coordinates.
pub fn cayley_image_box(lo: &BigRational, hi: &BigRational, prec: u32) -> ComplexBox {
    let re_f = |t: &BigRational| {
        let t2 = t * t;
        (BigRational::one() - &t2) / (BigRational::one() + &t2)
    };
    let im_f = |t: &BigRational| {
        let t2 = t * t;
        (BigRational::from_integer(BigInt::from(2)) * t) / (BigRational::one() + t2)
    };
    let mut re_vals = vec![re_f(lo), re_f(hi)];
    let mut im_vals = vec![im_f(lo), im_f(hi)];
    let zero = BigRational::zero();
    let one = BigRational::one();
    let neg_one = -BigRational::one();
    if *lo < zero && zero < *hi {
        re_vals.push(re_f(&zero));
    }
    if *lo < one && one < *hi {
        im_vals.push(im_f(&one));
    }
    if *lo < neg_one && neg_one < *hi {
        im_vals.push(im_f(&neg_one));
    }
    let re_min = re_vals.iter().min().unwrap().clone();
    let re_max = re_vals.iter().max().unwrap().clone();
    let im_min = im_vals.iter().min().unwrap().clone();
    let im_max = im_vals.iter().max().unwrap().clone();
    let lo_d = crate::interval::Dyadic::from_rational(&re_min, prec, crate::interval::Dir::Down);
    let hi_d = crate::interval::Dyadic::from_rational(&re_max, prec, crate::interval::Dir::Up);
    let lo_i = crate::interval::Dyadic::from_rational(&im_min, prec, crate::interval::Dir::Down);
    let hi_i = crate::interval::Dyadic::from_rational(&im_max, prec, crate::interval::Dir::Up);
    ComplexBox::new(DyInterval::new(lo_d, hi_d), DyInterval::new(lo_i, hi_i))
}

/// Boxes for exactly the unit-circle roots of `p`, refined so each box has
/// width at most `2^-precision_bits`.
pub fn roots_on_unit_circle(p: &UnivariatePoly, precision_bits: u32) -> Vec<CircleRoot> {
    assert!(!p.is_zero(), "zero polynomial");
    let (q, _) = p.strip_zero_roots();
    let mut out: Vec<CircleRoot> = Vec::new();
    if q.degree().unwrap_or(0) == 0 {
        return out;
    }
    let width = BigRational::new(
        BigInt::from(1),
        BigInt::from(2).pow(precision_bits + 2),
    );
    for (part, mult) in q.squarefree_decomposition() {
        let minus_one = GaussianRational::from_int(-1);
        if part.eval(&minus_one).is_zero() {
            out.push(CircleRoot {
                t: None,
                re: DyInterval::from_i64(-1),
                im: DyInterval::zero(),
                multiplicity: mult,
            });
        }
        let c = cayley_circle_poly(&part);
        let (a, b) = c.real_imag_parts();
        if let Some(g) = real_gcd_nonconstant(&a, &b) {
            let g = sturm::squarefree_part(&g);
            for loc in sturm::isolate_real_roots(&g) {
                let refined = sturm::refine_root(&g, &loc, &width);
                let (lo, hi) = (refined.lo(), refined.hi());
                let boxed = cayley_image_box(&lo, &hi, precision_bits + 8);
                out.push(CircleRoot {
                    t: Some(refined),
                    re: boxed.re,
                    im: boxed.im,
                    multiplicity: mult,
                });
            }
        }
    }
    out.sort_by(|x, y| {
        x.im.lo().cmp(y.im.lo()).then(x.re.lo().cmp(y.re.lo()))
    });
    out
}

// ---------------------------------------------------------------------------
// Conjugate-reciprocal of small multivariate polynomials
// ---------------------------------------------------------------------------

/// `F*(z) = z^degrees * F(1/z)` for real integer coefficients: exponent
/// reversal. Errors if any stated degree is below the actual one.
pub fn conjugate_reciprocal(
    f: &LaurentPoly,
    degrees: &[i64],
) -> Result<LaurentPoly, LaurentError> {
    if degrees.len() != f.nvars() {
        return Err(LaurentError::ArityMismatch(degrees.len(), f.nvars()));
    }
    for j in 0..f.nvars() {
        let dj = f.degree(j).unwrap_or(0);
        if degrees[j] < dj {
            return Err(LaurentError::InvalidData(format!(
                "stated degree {} below actual degree {} in variable {}",
                degrees[j],
                dj,
                j + 1
            )));
        }
    }
    let terms: Vec<(Vec<i64>, BigInt)> = f
        .terms()
        .map(|(e, c)| {
            let e2: Vec<i64> = e.iter().zip(degrees.iter()).map(|(a, d)| d - a).collect();
            (e2, c.clone())
        })
        .collect();
    LaurentPoly::from_terms(f.nvars(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn int_poly(coeffs: &[i64]) -> UnivariatePoly {
        UnivariatePoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn schur_cohn_examples() {
        // z - 2: root 2, outside
        assert!(schur_cohn_stable_disk(&int_poly(&[-2, 1])));
        // 2z - 1: root 1/2, inside
        assert!(!schur_cohn_stable_disk(&int_poly(&[-1, 2])));
        // 2z^2 - 5z + 2 = (2z - 1)(z - 2): roots 1/2 and 2
        assert!(!schur_cohn_stable_disk(&int_poly(&[2, -5, 2])));
        // z^2 + 1: roots on the circle
        assert!(!schur_cohn_stable_disk(&int_poly(&[1, 0, 1])));
        // constant
        assert!(schur_cohn_stable_disk(&int_poly(&[7])));
    }

    #[test]
    fn disk_count_examples() {
        assert_eq!(count_roots_in_open_disk(&int_poly(&[-1, 2])), 1);
        assert_eq!(count_roots_in_open_disk(&int_poly(&[2, -5, 2])), 1);
        assert_eq!(count_roots_in_open_disk(&int_poly(&[-2, 1])), 0);
        // z^3: triple root at 0
        assert_eq!(count_roots_in_open_disk(&int_poly(&[0, 0, 0, 1])), 3);
        // (z - 1/2)^2 scaled: 4z^2 - 4z + 1
        assert_eq!(count_roots_in_open_disk(&int_poly(&[1, -4, 4])), 2);
        // z^2 + 1: circle roots only
        assert_eq!(count_roots_in_open_disk(&int_poly(&[1, 0, 1])), 0);
        // mixed: (z^2+1)(2z-1)(z-3)
        let p = int_poly(&[1, 0, 1]).mul(&int_poly(&[-1, 2])).mul(&int_poly(&[-3, 1]));
        assert_eq!(count_roots_in_open_disk(&p), 1);
        assert!(has_circle_roots(&p));
    }

    #[test]
    fn gaussian_coefficients_disk_count() {
        // (z - 2i)(z + i/2): gamma-degenerate for naive recursions.
        let i = GaussianRational::i();
        let z_minus_2i = UnivariatePoly::new(vec![
            i.mul(&GaussianRational::from_int(-2)),
            GaussianRational::one(),
        ]);
        let z_plus_half_i = UnivariatePoly::new(vec![
            GaussianRational::new(BigRational::zero(), BigRational::new(BigInt::from(1), BigInt::from(2))),
            GaussianRational::one(),
        ]);
        let p = z_minus_2i.mul(&z_plus_half_i);
        assert_eq!(count_roots_in_open_disk(&p), 1);
        assert!(!has_circle_roots(&p));
    }

    #[test]
    fn circle_roots_examples() {
        // z^2 + 1 -> i and -i
        let roots = roots_on_unit_circle(&int_poly(&[1, 0, 1]), 40);
        assert_eq!(roots.len(), 2);
        let mut ims: Vec<f64> = roots.iter().map(|r| r.im.mid_f64()).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-9);
        assert!((ims[1] - 1.0).abs() < 1e-9);
        for r in &roots {
            assert!(r.re.mid_f64().abs() < 1e-9);
        }
        // z - 2 -> none
        assert!(roots_on_unit_circle(&int_poly(&[-2, 1]), 40).is_empty());
        // z^2 + 4z + 1: roots -2 +- sqrt 3, moduli off the circle
        assert!(roots_on_unit_circle(&int_poly(&[1, 4, 1]), 40).is_empty());
        // (z+1)^2: z = -1 with multiplicity... squarefree part has mult 1 each
        let p = int_poly(&[1, 2, 1]);
        let roots = roots_on_unit_circle(&p, 40);
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[0].re.mid_f64() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_root_multiplicity_via_parts() {
        // (z^2+1)^2 (z-2): circle roots i, -i each with multiplicity 2
        let p = int_poly(&[1, 0, 1]).mul(&int_poly(&[1, 0, 1])).mul(&int_poly(&[-2, 1]));
        let roots = roots_on_unit_circle(&p, 30);
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn squarefree_decomposition_basic() {
        // (z-1)^2 (z+2)
        let p = int_poly(&[-1, 1]).mul(&int_poly(&[-1, 1])).mul(&int_poly(&[2, 1]));
        let parts = p.squarefree_decomposition();
        let mut mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
        for (q, m) in &parts {
            if *m == 1 {
                assert!(q.eval(&GaussianRational::from_int(-2)).is_zero());
            } else {
                assert!(q.eval(&GaussianRational::from_int(1)).is_zero());
            }
        }
    }

    #[test]
    fn conjugate_reciprocal_examples() {
        let f = parse_poly("4 + X1 + X2").unwrap();
        let fstar = conjugate_reciprocal(&f, &[1, 1]).unwrap();
        assert_eq!(fstar, parse_poly("X1 + X2 + 4*X1*X2").unwrap());
        let g = parse_poly("2 + X1").unwrap();
        let gstar = conjugate_reciprocal(&g, &[1]).unwrap();
        assert_eq!(gstar, parse_poly("1 + 2*X1").unwrap());
        let h = parse_poly("1 + X1").unwrap();
        assert_eq!(conjugate_reciprocal(&h, &[1]).unwrap(), h);
        assert!(conjugate_reciprocal(&f, &[0, 1]).is_err());
    }

    #[test]
    fn upper_half_count_calibration() {
        // w - i: root i (upper)
        let i = GaussianRational::i();
        let p = UnivariatePoly::new(vec![i.neg(), GaussianRational::one()]);
        assert_eq!(upper_half_count(&p), 1);
        // w + i: root -i (lower)
        let q = UnivariatePoly::new(vec![i.clone(), GaussianRational::one()]);
        assert_eq!(upper_half_count(&q), 0);
        // (w - i)(w + 2i) = w^2 + iw + 2
        let r = UnivariatePoly::new(vec![
            GaussianRational::from_int(2),
            i.clone(),
            GaussianRational::one(),
        ]);
        assert_eq!(upper_half_count(&r), 1);
    }
}
