//! Lopsidedness tests: exact integer comparisons at the origin, certified
//! interval comparisons elsewhere, the doubling-depth bound, and winner
//! classification back to complement components.

use crate::geometry::{NewtonPolytope, PolytopeStats};
use crate::interval::{ln2, DyInterval};
use crate::laurent::{dot_rational, LaurentPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LopsidedError {
    #[error("undetermined at precision cap {0} bits (point extremely close to the lopsided-amoeba boundary)")]
    Undetermined(u32),
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// Margin of the winning term over the sum of all others.
#[derive(Clone, Debug)]
pub enum Margin {
    Exact(BigInt),
    Certified(DyInterval),
}

impl Margin {
    pub fn to_f64(&self) -> f64 {
        match self {
            Margin::Exact(v) => {
                use num_traits::ToPrimitive;
                v.to_f64().unwrap_or(f64::INFINITY)
            }
            Margin::Certified(i) => i.mid_f64(),
        }
    }
}

/// Outcome of a lopsidedness test at one point.
#[derive(Clone, Debug)]
pub struct LopsidednessOutcome {
    pub lopsided: bool,
    pub winner: Option<Vec<i64>>,
    pub margin: Option<Margin>,
}

impl LopsidednessOutcome {
    fn not_lopsided() -> Self {
        LopsidednessOutcome { lopsided: false, winner: None, margin: None }
    }
}

/// Identifier of a complement component: its order vector in the Newton
/// polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentId {
    pub alpha: Vec<i64>,
}

/// Exact lopsidedness of the coefficient set at the origin: is there a term
/// whose |coefficient| strictly exceeds the sum of all the others? Ties are
/// not lopsided.
pub fn is_lopsided_at_origin(g: &LaurentPoly) -> LopsidednessOutcome {
    assert!(!g.is_zero(), "zero polynomial");
    let mut best: Option<(&Vec<i64>, BigInt)> = None;
    let mut unique = true;
    let mut total = BigInt::zero();
    for (e, c) in g.terms() {
        let mag = c.abs();
        total += &mag;
        match &best {
            None => best = Some((e, mag)),
            Some((_, bm)) => {
                if mag > *bm {
                    best = Some((e, mag));
                    unique = true;
                } else if mag == *bm {
                    unique = false;
                }
            }
        }
    }
    let (we, wm) = best.expect("nonzero polynomial has terms");
    if !unique {
        return LopsidednessOutcome::not_lopsided();
    }
    let others = &total - &wm;
    let margin = &wm - &others;
    if margin.is_positive() {
        LopsidednessOutcome {
            lopsided: true,
            winner: Some(we.clone()),
            margin: Some(Margin::Exact(margin)),
        }
    } else {
        LopsidednessOutcome::not_lopsided()
    }
}

/// Is the margin of term `t` exactly zero? The term magnitudes are
/// `|c_a| e^{q_a}` with rational `q_a`; by linear independence of
/// exponentials with distinct rational arguments, `2 m_t = sum m_a` holds
/// exactly iff the grouped rational coefficients all vanish.
fn margin_exactly_zero(groups: &BTreeMap<BigRational, BigInt>, t_q: &BigRational, t_mag: &BigInt) -> bool {
    for (q, coeff_sum) in groups {
        let adjusted = if q == t_q {
            BigInt::from(2) * t_mag - coeff_sum
        } else {
            -coeff_sum.clone()
        };
        if !adjusted.is_zero() {
            return false;
        }
    }
    true
}

/// Certified lopsidedness of `{|c_a| e^<a,x>}` at a rational point.
/// Escalates precision until the strict inequality or its negation is
/// certified; exact ties are recognized algebraically.
pub fn lopsided_membership(
    g: &LaurentPoly,
    x: &[BigRational],
    precision_bits: u32,
) -> Result<LopsidednessOutcome, LopsidedError> {
    if g.is_zero() {
        return Err(LopsidedError::ZeroPolynomial);
    }
    if g.num_terms() == 1 {
        let (e, _) = g.terms().next().unwrap();
        return Ok(LopsidednessOutcome {
            lopsided: true,
            winner: Some(e.clone()),
            margin: Some(Margin::Certified(
                g.eval_term_magnitudes(x, precision_bits.max(16))
                    .pop()
                    .unwrap()
                    .1,
            )),
        });
    }
    // Exact group structure for tie detection.
    let mut groups: BTreeMap<BigRational, BigInt> = BTreeMap::new();
    let mut term_info: Vec<(Vec<i64>, BigInt, BigRational)> = Vec::new();
    for (e, c) in g.terms() {
        let q = dot_rational(e, x);
        let mag = c.abs();
        *groups.entry(q.clone()).or_insert_with(BigInt::zero) += &mag;
        term_info.push((e.clone(), mag, q));
    }
    let exact_zero: Vec<bool> = term_info
        .iter()
        .map(|(_, mag, q)| margin_exactly_zero(&groups, q, mag))
        .collect();

    let cap = (precision_bits.max(64)) * 16;
    let mut prec = precision_bits.max(32);
    loop {
        let mags = g.eval_term_magnitudes(x, prec);
        let mut total = DyInterval::zero();
        for (_, m) in &mags {
            total = total.add(m, prec);
        }
        let two = DyInterval::from_i64(2);
        let mut all_below = true;
        for (idx, (e, m)) in mags.iter().enumerate() {
            let margin = m.mul(&two, prec).sub(&total, prec);
            if margin.is_positive() {
                return Ok(LopsidednessOutcome {
                    lopsided: true,
                    winner: Some(e.clone()),
                    margin: Some(Margin::Certified(margin)),
                });
            }
            if !(margin.is_negative() || exact_zero[idx]) {
                all_below = false;
            }
        }
        if all_below {
            return Ok(LopsidednessOutcome::not_lopsided());
        }
        if prec >= cap {
            return Err(LopsidedError::Undetermined(cap));
        }
        prec *= 2;
    }
}

/// Lopsidedness outcome with the margin kept as an enclosure, at a point
/// given only by enclosures (e.g. irrational probes).
pub fn lopsided_membership_enclosure(
    g: &LaurentPoly,
    x: &[DyInterval],
    precision_bits: u32,
) -> Result<LopsidednessOutcome, LopsidedError> {
    if g.is_zero() {
        return Err(LopsidedError::ZeroPolynomial);
    }
    let cap = (precision_bits.max(64)) * 16;
    let mut prec = precision_bits.max(32);
    loop {
        let mags = g.eval_term_magnitudes_enclosure(x, prec);
        let mut total = DyInterval::zero();
        for (_, m) in &mags {
            total = total.add(m, prec);
        }
        let two = DyInterval::from_i64(2);
        let mut all_below = true;
        for (e, m) in mags.iter() {
            let margin = m.mul(&two, prec).sub(&total, prec);
            if margin.is_positive() {
                return Ok(LopsidednessOutcome {
                    lopsided: true,
                    winner: Some(e.clone()),
                    margin: Some(Margin::Certified(margin)),
                });
            }
            if !margin.is_negative() {
                all_below = false;
            }
        }
        if all_below {
            return Ok(LopsidednessOutcome::not_lopsided());
        }
        if prec >= cap {
            return Err(LopsidedError::Undetermined(cap));
        }
        prec *= 2;
    }
}

/// Smallest k with N = 2^k satisfying
/// `N >= (1/eps) ((n^2 - 1) ln N + ln(16 c_F d_F / 3))`.
/// Conservative with respect to the enclosure of eps: uses its lower
/// endpoint, so the returned depth is always sufficient.
pub fn required_doublings_enclosure(
    eps: &DyInterval,
    stats: &PolytopeStats,
    n: usize,
) -> u32 {
    assert!(eps.lo().is_positive(), "epsilon must be positive");
    let factor = BigRational::new(BigInt::from(16 * stats.c_f as i64), BigInt::from(3))
        * &stats.d_f;
    let n2m1 = (n * n - 1) as i64;
    let mut k: u32 = 0;
    loop {
        // Condition: 2^k * eps >= (n^2-1) * k * ln2 + ln(factor)
        let mut prec = 96u32;
        let decided = loop {
            let l2 = ln2(prec);
            let lnf = DyInterval::from_rational(&factor, prec).ln(prec);
            let rhs = l2
                .mul(&DyInterval::from_i64(n2m1 * k as i64), prec)
                .add(&lnf, prec);
            let lhs = eps.scale_pow2(k as i64);
            if lhs.lo() >= rhs.hi() {
                break Some(true);
            }
            if lhs.hi() < rhs.lo() {
                break Some(false);
            }
            if prec > 4096 {
                break None;
            }
            prec *= 2;
        };
        match decided {
            Some(true) => return k,
            // Undecidable at cap: treat as failing, which only increases k.
            Some(false) | None => {}
        }
        k += 1;
        assert!(k < 400, "doubling depth bound failed to terminate");
    }
}

/// Rational-epsilon form of the depth bound.
pub fn required_doublings(
    eps: &BigRational,
    stats: &PolytopeStats,
    n: usize,
) -> u32 {
    required_doublings_enclosure(&DyInterval::from_rational(eps, 160), stats, n)
}

/// Map a winner exponent of `G_k` back to a component order: with N = 2^k
/// the uncollapsed winner is `N * winner`, and the component is
/// `alpha = winner / N^(n-1)` when the division is exact and the result is a
/// lattice point of the Newton polytope.
pub fn classify_component(
    winner: &[i64],
    k: u32,
    n: usize,
    delta: &NewtonPolytope,
) -> Option<ComponentId> {
    let shift = k as u64 * (n as u64 - 1);
    let mut alpha = Vec::with_capacity(winner.len());
    for w in winner {
        if shift >= 63 {
            if *w != 0 {
                return None;
            }
            alpha.push(0);
            continue;
        }
        let div = 1i64 << shift;
        if w % div != 0 {
            return None;
        }
        alpha.push(w / div);
    }
    if delta.contains_lattice_point(&alpha) {
        Some(ComponentId { alpha })
    } else {
        None
    }
}
