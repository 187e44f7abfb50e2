//! Iterated cyclic resultants by sign-substitution doubling.
//!
//! The k-th iterate is kept in collapsed coordinates: `G_k(X^(2^k)) =
//! prod_{w in mu_{2^k}^n} F(w_1 X_1, ..., w_n X_n)`. One doubling step is a
//! product over all sign patterns, computed per variable through the
//! even/odd split `H * H(-X_j) = He^2 - Ho^2`, which keeps every
//! intermediate even in the processed variables.

use crate::laurent::LaurentPoly;
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DoublingError {
    #[error("resource cap exceeded at k = {k_reached}: {reason} ({detail})")]
    ResourceExceeded {
        k_reached: u32,
        reason: ResourceKind,
        detail: String,
    },
    #[error("zero polynomial cannot be doubled")]
    ZeroPolynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResourceKind {
    Terms,
    CoefficientBits,
    Work,
}

impl std::fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResourceKind::Terms => write!(f, "term budget"),
            ResourceKind::CoefficientBits => write!(f, "coefficient bit budget"),
            ResourceKind::Work => write!(f, "work budget"),
        }
    }
}

/// Resource caps for the doubling iteration. Term and coefficient budgets
/// bound the stored object; the work budget bounds the estimated cost of the
/// next step so the procedure degrades to a structured "inconclusive"
/// instead of stalling.
#[derive(Clone, Debug)]
pub struct DoublingLimits {
    pub max_terms: usize,
    pub max_coeff_bits: u64,
    pub max_work: u128,
}

impl Default for DoublingLimits {
    fn default() -> Self {
        DoublingLimits {
            max_terms: 10_000_000,
            max_coeff_bits: 1_000_000,
            max_work: 200_000_000,
        }
    }
}

/// The doubling iterate `G_k` with bookkeeping.
#[derive(Clone, Debug)]
pub struct DoublingSequence {
    pub base: LaurentPoly,
    pub k: u32,
    pub g: LaurentPoly,
    pub coeff_bits: u64,
}

/// One doubling step: returns `H` with `H(X_1^2, ..., X_n^2) =
/// prod_{signs} G(s_1 X_1, ..., s_n X_n)`, exponents already halved.
pub fn double_once(g: &LaurentPoly) -> LaurentPoly {
    let n = g.nvars();
    let mut h = g.clone();
    for var in 0..n {
        let mut even_terms = Vec::new();
        let mut odd_terms = Vec::new();
        for (e, c) in h.terms() {
            if e[var].rem_euclid(2) == 0 {
                even_terms.push((e.clone(), c.clone()));
            } else {
                odd_terms.push((e.clone(), c.clone()));
            }
        }
        let he = LaurentPoly::from_terms(n, even_terms).expect("arity");
        let ho = LaurentPoly::from_terms(n, odd_terms).expect("arity");
        let he2 = he.multiply(&he).expect("arity");
        let ho2 = ho.multiply(&ho).expect("arity");
        h = he2.sub(&ho2).expect("arity");
    }
    // Every exponent is now even; collapse.
    let halved: Vec<(Vec<i64>, BigInt)> = h
        .terms()
        .map(|(e, c)| {
            let e2: Vec<i64> = e
                .iter()
                .map(|x| {
                    assert!(
                        x.rem_euclid(2) == 0,
                        "odd exponent survived sign-substitution doubling"
                    );
                    x / 2
                })
                .collect();
            (e2, c.clone())
        })
        .collect();
    LaurentPoly::from_terms(g.nvars(), halved).expect("arity")
}

/// Estimated cost (coefficient-limb multiplications) of one doubling step.
fn step_work_estimate(g: &LaurentPoly) -> u128 {
    let t = g.num_terms() as u128;
    let limbs = (g.coeff_bits() / 64 + 1) as u128;
    (g.nvars() as u128) * t * t * limbs * limbs
}

fn check_limits(
    g: &LaurentPoly,
    k_reached: u32,
    limits: &DoublingLimits,
) -> Result<(), DoublingError> {
    if g.num_terms() > limits.max_terms {
        return Err(DoublingError::ResourceExceeded {
            k_reached,
            reason: ResourceKind::Terms,
            detail: format!("{} terms", g.num_terms()),
        });
    }
    let bits = g.coeff_bits();
    if bits > limits.max_coeff_bits {
        return Err(DoublingError::ResourceExceeded {
            k_reached,
            reason: ResourceKind::CoefficientBits,
            detail: format!("{bits} coefficient bits"),
        });
    }
    let work = step_work_estimate(g);
    if work > limits.max_work {
        return Err(DoublingError::ResourceExceeded {
            k_reached,
            reason: ResourceKind::Work,
            detail: format!("estimated {work} work units for the next step"),
        });
    }
    Ok(())
}

impl DoublingSequence {
    pub fn initial(f: &LaurentPoly) -> Result<Self, DoublingError> {
        if f.is_zero() {
            return Err(DoublingError::ZeroPolynomial);
        }
        Ok(DoublingSequence {
            base: f.clone(),
            k: 0,
            g: f.clone(),
            coeff_bits: f.coeff_bits(),
        })
    }

    /// Advance to `G_{k+1}`, enforcing resource caps before the step.
    pub fn step(&self, limits: &DoublingLimits) -> Result<Self, DoublingError> {
        check_limits(&self.g, self.k, limits)?;
        let g = double_once(&self.g);
        let coeff_bits = g.coeff_bits();
        if g.num_terms() > limits.max_terms {
            return Err(DoublingError::ResourceExceeded {
                k_reached: self.k,
                reason: ResourceKind::Terms,
                detail: format!("{} terms after step", g.num_terms()),
            });
        }
        if coeff_bits > limits.max_coeff_bits {
            return Err(DoublingError::ResourceExceeded {
                k_reached: self.k,
                reason: ResourceKind::CoefficientBits,
                detail: format!("{coeff_bits} coefficient bits after step"),
            });
        }
        Ok(DoublingSequence {
            base: self.base.clone(),
            k: self.k + 1,
            g,
            coeff_bits,
        })
    }
}

/// Compute `G_k` by `k` doubling steps.
pub fn cyclic_resultant(
    f: &LaurentPoly,
    k: u32,
    limits: &DoublingLimits,
) -> Result<DoublingSequence, DoublingError> {
    let mut seq = DoublingSequence::initial(f)?;
    for _ in 0..k {
        seq = seq.step(limits)?;
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse_poly, parse_poly_nvars};
    use crate::interval::{ComplexBox, DyInterval, cos_pi, sin_pi};
    use num_rational::BigRational;

    #[test]
    fn double_once_triangle() {
        let g = parse_poly("2 + X1 + X2").unwrap();
        let h = double_once(&g);
        let expected = parse_poly("16 - 8*X1 + X1^2 - 8*X2 - 2*X1*X2 + X2^2").unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn double_once_univariate() {
        let g = parse_poly("2 - X1").unwrap();
        assert_eq!(double_once(&g), parse_poly("4 - X1").unwrap());
    }

    #[test]
    fn double_once_constant() {
        let g = parse_poly_nvars("3", 2).unwrap();
        assert_eq!(double_once(&g), parse_poly_nvars("81", 2).unwrap());
    }

    #[test]
    fn cyclic_resultant_product_form() {
        // F = (2 - X1)(2 - X2), k = 1: G_1 = (4 - Y1)^2 (4 - Y2)^2
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let seq = cyclic_resultant(&f, 1, &DoublingLimits::default()).unwrap();
        let a = parse_poly_nvars("4 - X1", 2).unwrap();
        let b = parse_poly_nvars("4 - X2", 2).unwrap();
        let expected = a
            .multiply(&a)
            .unwrap()
            .multiply(&b.multiply(&b).unwrap())
            .unwrap();
        assert_eq!(seq.g, expected);
        assert_eq!(seq.g.constant_term(), BigInt::from(256));
    }

    #[test]
    fn k_zero_is_identity() {
        let f = parse_poly("1 + 4*X1 + X2").unwrap();
        let seq = cyclic_resultant(&f, 0, &DoublingLimits::default()).unwrap();
        assert_eq!(seq.g, f);
    }

    #[test]
    fn univariate_depth_two() {
        let f = parse_poly("2 - X1").unwrap();
        let seq = cyclic_resultant(&f, 2, &DoublingLimits::default()).unwrap();
        assert_eq!(seq.g, parse_poly("16 - X1").unwrap());
    }

    #[test]
    fn newton_polytope_scaling() {
        // vertices(G_k) = 2^{k(n-1)} vertices(F) for n = 2.
        let f = parse_poly("3 + X1 + X2").unwrap();
        let seq = cyclic_resultant(&f, 3, &DoublingLimits::default()).unwrap();
        let pf = crate::geometry::newton_polytope(&f).unwrap();
        let pg = crate::geometry::newton_polytope(&seq.g).unwrap();
        let mut scaled: Vec<Vec<i64>> = pf
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * 8).collect())
            .collect();
        scaled.sort();
        let mut got = pg.vertices.clone();
        got.sort();
        assert_eq!(got, scaled);
    }

    #[test]
    fn vertex_coefficient_law() {
        // |coefficient of G_k at 2^{k(n-1)} alpha| = |c_alpha|^{2^{kn}} for
        // vertices alpha.
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let k = 2u32;
        let seq = cyclic_resultant(&f, k, &DoublingLimits::default()).unwrap();
        let scale = 1i64 << k; // 2^{k(n-1)}, n = 2
        let power = 1u32 << (2 * k); // 2^{kn}
        for (alpha, c) in f.terms() {
            let target: Vec<i64> = alpha.iter().map(|a| a * scale).collect();
            let pf = crate::geometry::newton_polytope(&f).unwrap();
            if pf.is_vertex(alpha) {
                let got = seq.g.coefficient(&target);
                use num_traits::Signed;
                assert_eq!(got.abs(), c.abs().pow(power), "vertex {alpha:?}");
            }
        }
    }

    #[test]
    fn numeric_product_identity() {
        // |G_k(z^{2^k})| equals prod over 2^k-th roots-of-unity pairs of
        // |F(w z)| at a sample torus point, within enclosures.
        let f = parse_poly("2 + X1 + 3*X2").unwrap();
        let k = 2u32;
        let n = 1u32 << k;
        let seq = cyclic_resultant(&f, k, &DoublingLimits::default()).unwrap();
        let prec = 128u32;
        // z = (exp(0.3 + i*0.2pi-ish), exp(-0.1 + i*0.61pi-ish)) rationalized
        let zr1 = DyInterval::from_rational(&BigRational::new(3.into(), 10.into()), prec).exp(prec);
        let zr2 = DyInterval::from_rational(&BigRational::new((-1).into(), 10.into()), prec).exp(prec);
        let phase = |num: i64, den: i64| {
            let q = BigRational::new(num.into(), den.into());
            ComplexBox::new(cos_pi(&q, prec), sin_pi(&q, prec))
        };
        let z1 = phase(2, 5).mul_real(&zr1, prec);
        let z2 = phase(3, 7).mul_real(&zr2, prec);
        // Left: |G_k(z1^N, z2^N)|
        let left = seq
            .g
            .eval_complex_box(&[z1.powi(n as i64, prec), z2.powi(n as i64, prec)], prec)
            .modulus(prec);
        // Right: product over all pairs of 2^k-th roots of unity.
        let mut right = DyInterval::one();
        for a in 0..n {
            for b in 0..n {
                let w1 = phase(2 * a as i64, n as i64);
                let w2 = phase(2 * b as i64, n as i64);
                let v = f
                    .eval_complex_box(&[w1.mul(&z1, prec), w2.mul(&z2, prec)], prec)
                    .modulus(prec);
                right = right.mul(&v, prec);
            }
        }
        assert!(
            left.intersect(&right).is_some(),
            "left [{}, {}] right [{}, {}]",
            left.lo_f64(),
            left.hi_f64(),
            right.lo_f64(),
            right.hi_f64()
        );
    }

    #[test]
    fn resource_caps_reported() {
        let f = parse_poly("1 + X1 + X2").unwrap();
        let tight = DoublingLimits { max_terms: 10, max_coeff_bits: 1 << 20, max_work: 1 << 40 };
        let err = cyclic_resultant(&f, 6, &tight).unwrap_err();
        match err {
            DoublingError::ResourceExceeded { reason, .. } => {
                assert_eq!(reason, ResourceKind::Terms);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
