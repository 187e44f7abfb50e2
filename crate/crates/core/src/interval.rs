//! Dyadic floating-point numbers and outward-rounded interval arithmetic.
//!
//! All certified real computations in this crate go through [`DyInterval`]:
//! a closed interval with dyadic endpoints `mant * 2^exp`. Every operation
//! takes a working precision in bits and rounds the lower endpoint down and
//! the upper endpoint up, so an interval always encloses the exact result.
//! Elementary functions (`exp`, `ln`, `sqrt`, `sin_pi`, `cos_pi`) carry
//! rigorous truncation bounds.

use num_bigint::BigInt;
use num_integer::Integer;
#[allow(unused_imports)]
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Rounding direction for dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    /// Toward -infinity.
    Down,
    /// Toward +infinity.
    Up,
}

/// An arbitrary-precision dyadic rational `mant * 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            Dyadic { mant, exp: 0 }
        } else {
            Dyadic { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::from(1), exp: 0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Bit length of the mantissa magnitude.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the most significant bit: `2^(msb-1) <= |x| < 2^msb`.
    pub fn msb_exp(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.bits() as i64
    }

    /// Round to at most `prec` mantissa bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Dir) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        let divisor = BigInt::from(1) << shift;
        let q = match dir {
            Dir::Down => self.mant.div_floor(&divisor),
            Dir::Up => self.mant.div_ceil(&divisor),
        };
        Dyadic::new(q, self.exp + shift as i64)
    }

    /// Exact negation.
    pub fn neg(&self) -> Dyadic {
        Dyadic::new(-self.mant.clone(), self.exp)
    }

    /// Exact sum. Exponent gaps are aligned in full; callers with huge gaps
    /// should use `add_round`.
    pub fn add_exact(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &rhs.mant << (rhs.exp - exp) as usize;
        Dyadic::new(a + b, exp)
    }

    /// Rounded sum with protection against pathological exponent gaps.
    pub fn add_round(&self, rhs: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        if self.is_zero() {
            return rhs.round(prec, dir);
        }
        if rhs.is_zero() {
            return self.round(prec, dir);
        }
        let gap_guard = prec as i64 + 64;
        let (big, small) = if self.msb_exp() >= rhs.msb_exp() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if big.msb_exp() - small.msb_exp() > gap_guard {
            // The small operand is far below one ulp of the rounded result;
            // absorb it into a one-ulp outward nudge.
            let r = big.round(prec, dir);
            let ulp_exp = r.exp.min(big.exp) - 1;
            let nudge = match dir {
                Dir::Down => Dyadic::new(BigInt::from(-1), ulp_exp),
                Dir::Up => Dyadic::new(BigInt::from(1), ulp_exp),
            };
            return r.add_exact(&nudge).round(prec + 1, dir);
        }
        self.add_exact(rhs).round(prec, dir)
    }

    /// Exact product.
    pub fn mul_exact(&self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }

    pub fn mul_round(&self, rhs: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        self.mul_exact(rhs).round(prec, dir)
    }

    /// Directed division to `prec` result bits.
    pub fn div_round(&self, rhs: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        assert!(!rhs.is_zero(), "division by dyadic zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient has ~prec+2 bits.
        let shift =
            (rhs.bits() as i64 + prec as i64 + 2 - self.bits() as i64).max(0) as usize;
        let num = &self.mant << shift;
        let q = match dir {
            Dir::Down => num.div_floor(&rhs.mant),
            Dir::Up => num.div_ceil(&rhs.mant),
        };
        Dyadic::new(q, self.exp - rhs.exp - shift as i64).round(prec, dir)
    }

    /// Directed square root (`self >= 0`).
    pub fn sqrt_round(&self, prec: u32, dir: Dir) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale to an even exponent with at least 2*prec+4 mantissa bits.
        let mut mant = self.mant.clone();
        let mut exp = self.exp;
        let want = 2 * prec as u64 + 4;
        if mant.bits() < want {
            let mut shift = (want - mant.bits()) as i64;
            if (exp - shift) % 2 != 0 {
                shift += 1;
            }
            mant <<= shift as usize;
            exp -= shift;
        } else if exp % 2 != 0 {
            mant <<= 1usize;
            exp -= 1;
        }
        let root = mant.sqrt();
        let exact = (&root * &root) == mant;
        let r = match dir {
            Dir::Down => root,
            Dir::Up => {
                if exact {
                    root
                } else {
                    root + 1
                }
            }
        };
        Dyadic::new(r, exp / 2).round(prec, dir)
    }

    /// Multiply by `2^k` exactly.
    pub fn scale_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic::new(self.mant.clone(), self.exp + k)
        }
    }

    pub fn from_rational(q: &BigRational, prec: u32, dir: Dir) -> Dyadic {
        let num = Dyadic::from_bigint(q.numer());
        let den = Dyadic::from_bigint(q.denom());
        num.div_round(&den, prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Keep at most 64 mantissa bits to stay in f64 range arithmetic.
        let r = self.round(64, Dir::Down);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(r.exp.clamp(-2000, 2000) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as usize)
        }
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        if sa != sb {
            return if self.mant < other.mant { Ordering::Less } else { Ordering::Greater };
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare msb windows first to avoid huge shifts.
        let ma = self.msb_exp();
        let mb = other.msb_exp();
        if ma != mb {
            let mag = if ma > mb { Ordering::Greater } else { Ordering::Less };
            return if self.is_positive() { mag } else { mag.reverse() };
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &other.mant << (other.exp - exp) as usize;
        a.cmp(&b)
    }
}

/// A closed interval with dyadic endpoints; the basic certified real.
#[derive(Clone, Debug)]
pub struct DyInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        DyInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        DyInterval { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        DyInterval::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        DyInterval::point(Dyadic::one())
    }

    pub fn from_i64(n: i64) -> Self {
        DyInterval::point(Dyadic::from_i64(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        DyInterval::point(Dyadic::from_bigint(n))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        DyInterval {
            lo: Dyadic::from_rational(q, prec, Dir::Down),
            hi: Dyadic::from_rational(q, prec, Dir::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        DyInterval {
            lo: self.lo.add_round(&rhs.lo, prec, Dir::Down),
            hi: self.hi.add_round(&rhs.hi, prec, Dir::Up),
        }
    }

    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        DyInterval {
            lo: self.lo.add_round(&rhs.hi.neg(), prec, Dir::Down),
            hi: self.hi.add_round(&rhs.lo.neg(), prec, Dir::Up),
        }
    }

    pub fn neg(&self) -> Self {
        DyInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        let cands = [
            self.lo.mul_exact(&rhs.lo),
            self.lo.mul_exact(&rhs.hi),
            self.hi.mul_exact(&rhs.lo),
            self.hi.mul_exact(&rhs.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        DyInterval { lo: lo.round(prec, Dir::Down), hi: hi.round(prec, Dir::Up) }
    }

    pub fn square(&self, prec: u32) -> Self {
        if !self.lo.is_negative() {
            DyInterval {
                lo: self.lo.mul_exact(&self.lo).round(prec, Dir::Down),
                hi: self.hi.mul_exact(&self.hi).round(prec, Dir::Up),
            }
        } else if !self.hi.is_positive() {
            DyInterval {
                lo: self.hi.mul_exact(&self.hi).round(prec, Dir::Down),
                hi: self.lo.mul_exact(&self.lo).round(prec, Dir::Up),
            }
        } else {
            let a = self.lo.mul_exact(&self.lo);
            let b = self.hi.mul_exact(&self.hi);
            let hi = if a > b { a } else { b };
            DyInterval { lo: Dyadic::zero(), hi: hi.round(prec, Dir::Up) }
        }
    }

    /// Division; `rhs` must not contain zero.
    pub fn div(&self, rhs: &Self, prec: u32) -> Self {
        assert!(!rhs.contains_zero(), "interval division by zero-straddling interval");
        let ends = [(&self.lo, &rhs.lo), (&self.lo, &rhs.hi), (&self.hi, &rhs.lo), (&self.hi, &rhs.hi)];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in ends {
            let d = a.div_round(b, prec + 4, Dir::Down);
            let u = a.div_round(b, prec + 4, Dir::Up);
            lo = Some(match lo {
                None => d.clone(),
                Some(x) => {
                    if d < x {
                        d.clone()
                    } else {
                        x
                    }
                }
            });
            hi = Some(match hi {
                None => u.clone(),
                Some(x) => {
                    if u > x {
                        u.clone()
                    } else {
                        x
                    }
                }
            });
        }
        DyInterval {
            lo: lo.unwrap().round(prec, Dir::Down),
            hi: hi.unwrap().round(prec, Dir::Up),
        }
    }

    pub fn recip(&self, prec: u32) -> Self {
        DyInterval::one().div(self, prec)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let a = self.lo.neg();
            let hi = if a > self.hi { a } else { self.hi.clone() };
            DyInterval { lo: Dyadic::zero(), hi }
        }
    }

    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of an interval with negative part");
        DyInterval {
            lo: self.lo.sqrt_round(prec, Dir::Down),
            hi: self.hi.sqrt_round(prec, Dir::Up),
        }
    }

    pub fn scale_pow2(&self, k: i64) -> Self {
        DyInterval { lo: self.lo.scale_pow2(k), hi: self.hi.scale_pow2(k) }
    }

    pub fn mul_bigint(&self, n: &BigInt, prec: u32) -> Self {
        self.mul(&DyInterval::from_bigint(n), prec)
    }

    pub fn hull(&self, rhs: &Self) -> Self {
        DyInterval {
            lo: if self.lo < rhs.lo { self.lo.clone() } else { rhs.lo.clone() },
            hi: if self.hi > rhs.hi { self.hi.clone() } else { rhs.hi.clone() },
        }
    }

    pub fn intersect(&self, rhs: &Self) -> Option<Self> {
        let lo = if self.lo > rhs.lo { self.lo.clone() } else { rhs.lo.clone() };
        let hi = if self.hi < rhs.hi { self.hi.clone() } else { rhs.hi.clone() };
        if lo <= hi {
            Some(DyInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        self.lo <= *d && *d <= self.hi
    }

    pub fn contains_interval(&self, rhs: &Self) -> bool {
        self.lo <= rhs.lo && rhs.hi <= self.hi
    }

    /// Strict containment in the interior (for Krawczyk-type tests).
    pub fn contains_interior(&self, rhs: &Self) -> bool {
        self.lo < rhs.lo && rhs.hi < self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `Some(ordering)` when the comparison is certain (intervals disjoint
    /// or both are the same point).
    pub fn cmp_certain(&self, rhs: &Self) -> Option<Ordering> {
        if self.hi < rhs.lo {
            return Some(Ordering::Less);
        }
        if self.lo > rhs.hi {
            return Some(Ordering::Greater);
        }
        if self.lo == self.hi && rhs.lo == rhs.hi && self.lo == rhs.lo {
            return Some(Ordering::Equal);
        }
        None
    }

    pub fn width(&self) -> Dyadic {
        self.hi.add_exact(&self.lo.neg())
    }

    /// Width below `2^log2w`?
    pub fn width_below_pow2(&self, log2w: i64) -> bool {
        let w = self.width();
        w.is_zero() || w.msb_exp() <= log2w
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).scale_pow2(-1)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn inflate_pow2(&self, log2eps: i64) -> Self {
        let eps = Dyadic::new(BigInt::from(1), log2eps);
        DyInterval { lo: self.lo.add_exact(&eps.neg()), hi: self.hi.add_exact(&eps) }
    }

    /// exp of the interval, by monotonicity on the endpoints.
    pub fn exp(&self, prec: u32) -> Self {
        let lo = exp_point(&self.lo, prec);
        let hi = exp_point(&self.hi, prec);
        DyInterval { lo: lo.lo, hi: hi.hi }
    }

    /// Natural log; requires a strictly positive interval.
    pub fn ln(&self, prec: u32) -> Self {
        assert!(self.lo.is_positive(), "ln of a non-positive interval");
        let lo = ln_point(&self.lo, prec);
        let hi = ln_point(&self.hi, prec);
        DyInterval { lo: lo.lo, hi: hi.hi }
    }
}

/// Sum a slice of intervals at precision `prec`.
pub fn sum_intervals(vals: &[DyInterval], prec: u32) -> DyInterval {
    let mut acc = DyInterval::zero();
    for v in vals {
        acc = acc.add(v, prec);
    }
    acc
}

/// Certified enclosure of `exp(d)`.
pub fn exp_point(d: &Dyadic, prec: u32) -> DyInterval {
    if d.is_zero() {
        return DyInterval::one();
    }
    // Argument reduction: r = d / 2^s with |r| <= 1/2.
    let s = (d.msb_exp() + 1).max(0) as u32;
    let w = prec + s + 24;
    let r = DyInterval::point(d.scale_pow2(-(s as i64)));
    // Taylor series with rigorous tail: for |r| <= 1/2 the remainder after
    // the K-th term is bounded by 2*|term_{K+1}|.
    let mut sum = DyInterval::one();
    let mut term = DyInterval::one();
    let mut j: u32 = 1;
    loop {
        term = term.mul(&r, w).div(&DyInterval::from_i64(j as i64), w);
        sum = sum.add(&term, w);
        let tmag = term.abs();
        if tmag.hi.is_zero() || tmag.hi.msb_exp() < -(w as i64) {
            // tail bound: 2 * |next term| <= 2 * |term| / 2 = |term|
            let tail = Dyadic::new(BigInt::from(1), -(w as i64) + 1);
            sum = DyInterval {
                lo: sum.lo.add_exact(&tail.neg()),
                hi: sum.hi.add_exact(&tail),
            };
            break;
        }
        j += 1;
        assert!(j < 10_000, "exp series failed to converge");
    }
    // Square s times.
    let mut out = sum;
    for _ in 0..s {
        out = out.square(w);
    }
    DyInterval { lo: out.lo.round(prec, Dir::Down), hi: out.hi.round(prec, Dir::Up) }
}

/// Certified enclosure of `ln(d)` for `d > 0`.
pub fn ln_point(d: &Dyadic, prec: u32) -> DyInterval {
    assert!(d.is_positive(), "ln of non-positive dyadic");
    let w = prec + 32;
    // Normalize d = m * 2^e with m in [1, 2).
    let e = d.msb_exp() - 1;
    let m = DyInterval::point(d.scale_pow2(-e));
    let lnm = ln_via_atanh(&m, w);
    let ln2 = ln2(w);
    let r = lnm.add(&ln2.mul(&DyInterval::from_i64(e), w), w);
    DyInterval { lo: r.lo.round(prec, Dir::Down), hi: r.hi.round(prec, Dir::Up) }
}

/// ln on [1,2) via 2*atanh((m-1)/(m+1)); |t| <= 1/3 so the series tail after
/// the term in t^(2K+1) is below |t|^(2K+3) * (9/8) / (2K+3) < |t_term| / 8.
fn ln_via_atanh(m: &DyInterval, w: u32) -> DyInterval {
    let one = DyInterval::one();
    let t = m.sub(&one, w).div(&m.add(&one, w), w);
    let t2 = t.square(w);
    let mut sum = t.clone();
    let mut pow = t.clone();
    let mut j: u32 = 1;
    loop {
        pow = pow.mul(&t2, w);
        let term = pow.div(&DyInterval::from_i64((2 * j + 1) as i64), w);
        sum = sum.add(&term, w);
        let tmag = term.abs();
        if tmag.hi.is_zero() || tmag.hi.msb_exp() < -(w as i64) {
            let tail = Dyadic::new(BigInt::from(1), -(w as i64) + 1);
            sum = DyInterval {
                lo: sum.lo.add_exact(&tail.neg()),
                hi: sum.hi.add_exact(&tail),
            };
            break;
        }
        j += 1;
        assert!(j < 100_000, "ln series failed to converge");
    }
    sum.scale_pow2(1)
}

/// Certified enclosure of ln 2.
pub fn ln2(prec: u32) -> DyInterval {
    let w = prec + 16;
    let two = DyInterval::point(Dyadic::new(BigInt::from(2), 0));
    let r = ln_via_atanh(&two, w);
    DyInterval { lo: r.lo.round(prec, Dir::Down), hi: r.hi.round(prec, Dir::Up) }
}

/// atan(1/x) for integer x >= 2, by the alternating Leibniz-style series.
fn atan_inv(x: i64, w: u32) -> DyInterval {
    let xi = DyInterval::from_i64(x);
    let x2 = xi.square(w);
    let mut pow = xi.recip(w);
    let mut sum = pow.clone();
    let mut j: u32 = 1;
    loop {
        pow = pow.div(&x2, w);
        let term = pow.div(&DyInterval::from_i64((2 * j + 1) as i64), w);
        if j % 2 == 1 {
            sum = sum.sub(&term, w);
        } else {
            sum = sum.add(&term, w);
        }
        // Alternating series: error below the first omitted term.
        let tmag = term.abs();
        if tmag.hi.is_zero() || tmag.hi.msb_exp() < -(w as i64) {
            let tail = Dyadic::new(BigInt::from(1), -(w as i64) + 1);
            sum = DyInterval {
                lo: sum.lo.add_exact(&tail.neg()),
                hi: sum.hi.add_exact(&tail),
            };
            break;
        }
        j += 1;
        assert!(j < 100_000, "atan series failed to converge");
    }
    sum
}

/// Certified enclosure of pi (Machin's formula).
pub fn pi(prec: u32) -> DyInterval {
    let w = prec + 24;
    let a = atan_inv(5, w).mul(&DyInterval::from_i64(16), w);
    let b = atan_inv(239, w).mul(&DyInterval::from_i64(4), w);
    let r = a.sub(&b, w);
    DyInterval { lo: r.lo.round(prec, Dir::Down), hi: r.hi.round(prec, Dir::Up) }
}

/// sin(pi * q) for rational q, certified.
pub fn sin_pi(q: &BigRational, prec: u32) -> DyInterval {
    trig_pi(q, prec, false)
}

/// cos(pi * q) for rational q, certified.
pub fn cos_pi(q: &BigRational, prec: u32) -> DyInterval {
    trig_pi(q, prec, true)
}

fn trig_pi(q: &BigRational, prec: u32, cosine: bool) -> DyInterval {
    let w = prec + 24;
    // Reduce q mod 2 to [0, 2).
    let two = BigRational::from_integer(BigInt::from(2));
    let mut r = q - (q / &two).floor() * &two;
    let one = BigRational::from_integer(BigInt::from(1));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    let mut want_cos = cosine;
    let mut negate = false;
    // sin(pi r) with r in [0,2): fold to [0,1].
    if !want_cos {
        if r > one {
            r -= &one;
            negate = !negate;
        }
        // sin(pi r), r in [0,1]: fold to [0,1/2].
        if r > half {
            r = &one - &r;
        }
        // r in [0,1/2]: if r > 1/4 use cos(pi(1/2 - r)).
        if r > quarter {
            r = &half - &r;
            want_cos = true;
        }
    } else {
        // cos(pi r) = sin(pi (1/2 - r)) shifted: just map to sine.
        let mut s = &half - &r; // cos(pi r) = sin(pi (r + 1/2))... use identity cos x = sin(x + pi/2)
        // Normalize s into [-1, 1): sin(pi s) with s = 1/2 - r gives cos(pi r).
        while s < -&one {
            s += &two;
        }
        while s > one {
            s -= &two;
        }
        if s < BigRational::zero() {
            s = -s;
            negate = !negate;
        }
        // Now sin(pi s), s in [0,1]: same folding as above.
        if s > half {
            s = &one - &s;
        }
        want_cos = false;
        if s > quarter {
            s = &half - &s;
            want_cos = true;
        }
        r = s;
    }
    // Now evaluate sin(pi r) or cos(pi r) with r in [0, 1/4].
    let x = pi(w).mul(&DyInterval::from_rational(&r, w), w);
    let val = if want_cos { cos_series(&x, w) } else { sin_series(&x, w) };
    let res = if negate { val.neg() } else { val };
    DyInterval { lo: res.lo.round(prec, Dir::Down), hi: res.hi.round(prec, Dir::Up) }
}

/// Taylor sine with rigorous remainder, |x| <= 1.
fn sin_series(x: &DyInterval, w: u32) -> DyInterval {
    let x2 = x.square(w);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut j: i64 = 1;
    loop {
        term = term
            .mul(&x2, w)
            .div(&DyInterval::from_i64((2 * j) * (2 * j + 1)), w)
            .neg();
        sum = sum.add(&term, w);
        let tmag = term.abs();
        if tmag.hi.is_zero() || tmag.hi.msb_exp() < -(w as i64) {
            let tail = Dyadic::new(BigInt::from(1), -(w as i64) + 1);
            sum = DyInterval {
                lo: sum.lo.add_exact(&tail.neg()),
                hi: sum.hi.add_exact(&tail),
            };
            break;
        }
        j += 1;
        assert!(j < 10_000, "sin series failed to converge");
    }
    sum
}

/// Taylor cosine with rigorous remainder, |x| <= 1.
fn cos_series(x: &DyInterval, w: u32) -> DyInterval {
    let x2 = x.square(w);
    let mut term = DyInterval::one();
    let mut sum = DyInterval::one();
    let mut j: i64 = 1;
    loop {
        term = term
            .mul(&x2, w)
            .div(&DyInterval::from_i64((2 * j - 1) * (2 * j)), w)
            .neg();
        sum = sum.add(&term, w);
        let tmag = term.abs();
        if tmag.hi.is_zero() || tmag.hi.msb_exp() < -(w as i64) {
            let tail = Dyadic::new(BigInt::from(1), -(w as i64) + 1);
            sum = DyInterval {
                lo: sum.lo.add_exact(&tail.neg()),
                hi: sum.hi.add_exact(&tail),
            };
            break;
        }
        j += 1;
        assert!(j < 10_000, "cos series failed to converge");
    }
    sum
}

/// A rectangular complex interval.
#[derive(Clone, Debug)]
pub struct ComplexBox {
    pub re: DyInterval,
    pub im: DyInterval,
}

impl ComplexBox {
    pub fn new(re: DyInterval, im: DyInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn zero() -> Self {
        ComplexBox { re: DyInterval::zero(), im: DyInterval::zero() }
    }

    pub fn one() -> Self {
        ComplexBox { re: DyInterval::one(), im: DyInterval::zero() }
    }

    pub fn real(re: DyInterval) -> Self {
        ComplexBox { re, im: DyInterval::zero() }
    }

    pub fn from_f64(re: f64, im: f64, log2eps: i64) -> Self {
        let r = dyadic_from_f64(re);
        let i = dyadic_from_f64(im);
        ComplexBox {
            re: DyInterval::point(r).inflate_pow2(log2eps),
            im: DyInterval::point(i).inflate_pow2(log2eps),
        }
    }

    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        ComplexBox { re: self.re.add(&rhs.re, prec), im: self.im.add(&rhs.im, prec) }
    }

    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        ComplexBox { re: self.re.sub(&rhs.re, prec), im: self.im.sub(&rhs.im, prec) }
    }

    pub fn neg(&self) -> Self {
        ComplexBox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        ComplexBox { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        let ac = self.re.mul(&rhs.re, prec);
        let bd = self.im.mul(&rhs.im, prec);
        let ad = self.re.mul(&rhs.im, prec);
        let bc = self.im.mul(&rhs.re, prec);
        ComplexBox { re: ac.sub(&bd, prec), im: ad.add(&bc, prec) }
    }

    pub fn mul_real(&self, rhs: &DyInterval, prec: u32) -> Self {
        ComplexBox { re: self.re.mul(rhs, prec), im: self.im.mul(rhs, prec) }
    }

    pub fn modulus_sq(&self, prec: u32) -> DyInterval {
        self.re.square(prec).add(&self.im.square(prec), prec)
    }

    pub fn modulus(&self, prec: u32) -> DyInterval {
        self.modulus_sq(prec).sqrt(prec)
    }

    /// Reciprocal; the box must exclude zero.
    pub fn recip(&self, prec: u32) -> Self {
        let m = self.modulus_sq(prec);
        assert!(m.is_positive(), "complex reciprocal of zero-straddling box");
        ComplexBox { re: self.re.div(&m, prec), im: self.im.neg().div(&m, prec) }
    }

    pub fn div(&self, rhs: &Self, prec: u32) -> Self {
        self.mul(&rhs.recip(prec), prec)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_interior(&self, rhs: &Self) -> bool {
        self.re.contains_interior(&rhs.re) && self.im.contains_interior(&rhs.im)
    }

    pub fn intersect(&self, rhs: &Self) -> Option<Self> {
        Some(ComplexBox {
            re: self.re.intersect(&rhs.re)?,
            im: self.im.intersect(&rhs.im)?,
        })
    }

    pub fn hull(&self, rhs: &Self) -> Self {
        ComplexBox { re: self.re.hull(&rhs.re), im: self.im.hull(&rhs.im) }
    }

    pub fn mid(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }

    pub fn powi(&self, n: i64, prec: u32) -> Self {
        if n == 0 {
            return ComplexBox::one();
        }
        let base = if n < 0 { self.recip(prec) } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = ComplexBox::one();
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&sq, prec);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq, prec);
        }
        acc
    }

    pub fn width_below_pow2(&self, log2w: i64) -> bool {
        self.re.width_below_pow2(log2w) && self.im.width_below_pow2(log2w)
    }

    pub fn inflate_pow2(&self, log2eps: i64) -> Self {
        ComplexBox {
            re: self.re.inflate_pow2(log2eps),
            im: self.im.inflate_pow2(log2eps),
        }
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

/// Exact dyadic from a finite f64.
pub fn dyadic_from_f64(x: f64) -> Dyadic {
    assert!(x.is_finite(), "non-finite f64 in dyadic conversion");
    if x == 0.0 {
        return Dyadic::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp_raw = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if exp_raw == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_raw - 1075)
    };
    Dyadic::new(BigInt::from(sign * mant as i64), exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dyadic_rounding_directions() {
        let x = Dyadic::new(BigInt::from(0b101011), 0); // 43
        let down = x.round(3, Dir::Down);
        let up = x.round(3, Dir::Up);
        assert!(down <= x && x <= up);
        assert!(down < up);
    }

    #[test]
    fn interval_basic_ops_enclose() {
        let a = DyInterval::from_rational(&rat(1, 3), 64);
        let b = DyInterval::from_rational(&rat(2, 7), 64);
        let s = a.add(&b, 64);
        let exact = rat(1, 3) + rat(2, 7);
        let e = Dyadic::from_rational(&exact, 200, Dir::Down);
        assert!(s.contains(&e));
        let p = a.mul(&b, 64);
        let exactp = rat(1, 3) * rat(2, 7);
        assert!(p.contains(&Dyadic::from_rational(&exactp, 200, Dir::Down)));
    }

    #[test]
    fn exp_and_ln_match_f64() {
        let e1 = exp_point(&Dyadic::one(), 80);
        let v = e1.mid_f64();
        assert!((v - std::f64::consts::E).abs() < 1e-12);
        assert!(e1.width_below_pow2(-70));

        let l2 = ln2(80);
        assert!((l2.mid_f64() - std::f64::consts::LN_2).abs() < 1e-12);

        let x = Dyadic::from_i64(10);
        let lx = ln_point(&x, 80);
        assert!((lx.mid_f64() - 10f64.ln()).abs() < 1e-12);

        // round trip: ln(exp(3)) ~ 3
        let e3 = exp_point(&Dyadic::from_i64(3), 100);
        let back = e3.ln(80);
        assert!((back.mid_f64() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn exp_of_negative() {
        let em3 = exp_point(&Dyadic::from_i64(-3), 80);
        assert!((em3.mid_f64() - (-3f64).exp()).abs() < 1e-14);
        assert!(em3.lo().is_positive());
    }

    #[test]
    fn pi_and_trig() {
        let p = pi(100);
        assert!((p.mid_f64() - std::f64::consts::PI).abs() < 1e-14);
        // sin(pi * 1/2) = 1, cos(pi * 1/2) = 0, sin(pi * 1/6) = 1/2
        let s = sin_pi(&rat(1, 2), 80);
        assert!((s.mid_f64() - 1.0).abs() < 1e-14);
        let c = cos_pi(&rat(1, 2), 80);
        assert!(c.contains_zero());
        let s6 = sin_pi(&rat(1, 6), 80);
        assert!((s6.mid_f64() - 0.5).abs() < 1e-14);
        let c3 = cos_pi(&rat(2, 3), 80);
        assert!((c3.mid_f64() + 0.5).abs() < 1e-14);
        // period: sin(pi * 13/6) = sin(pi/6)
        let s13 = sin_pi(&rat(13, 6), 80);
        assert!((s13.mid_f64() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn sqrt_directed() {
        let two = DyInterval::from_i64(2);
        let r = two.sqrt(100);
        assert!((r.mid_f64() - std::f64::consts::SQRT_2).abs() < 1e-14);
        let sq = r.square(100);
        assert!(sq.contains(&Dyadic::from_i64(2)));
    }

    #[test]
    fn complex_mul_and_modulus() {
        let z = ComplexBox::new(DyInterval::from_i64(3), DyInterval::from_i64(4));
        let m = z.modulus(80);
        assert!((m.mid_f64() - 5.0).abs() < 1e-12);
        let w = z.mul(&z.conj(), 80);
        assert!((w.re.mid_f64() - 25.0).abs() < 1e-12);
        assert!(w.im.contains_zero());
        let inv = z.recip(80);
        let prod = z.mul(&inv, 80);
        assert!(prod.re.contains(&Dyadic::one()));
        assert!(prod.im.contains_zero());
    }

    #[test]
    fn f64_roundtrip() {
        let d = dyadic_from_f64(0.1);
        assert!((d.to_f64() - 0.1).abs() < 1e-18);
        let d2 = dyadic_from_f64(-1234.5678);
        assert!((d2.to_f64() + 1234.5678).abs() < 1e-10);
    }

    #[test]
    fn interval_division() {
        let a = DyInterval::from_i64(1);
        let b = DyInterval::from_rational(&rat(3, 1), 64);
        let q = a.div(&b, 64);
        assert!(q.contains(&Dyadic::from_rational(&rat(1, 3), 120, Dir::Down)));
        let one = BigRational::one();
        assert!(q.mul(&b, 64).contains(&Dyadic::from_rational(&one, 64, Dir::Down)));
    }
}
