//! Exact Sylvester resultants of multivariate integer polynomials, by
//! fraction-free (Bareiss) determinant evaluation over the polynomial ring.

use crate::laurent::LaurentPoly;
use crate::univariate::{GaussianRational, UnivariatePoly};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Exact division in the multivariate polynomial ring (nonnegative
/// exponents); returns `None` when `b` does not divide `a`.
pub fn div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert_eq!(a.nvars(), b.nvars());
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return Some(LaurentPoly::zero(a.nvars()));
    }
    let (lead_exp, lead_coeff) = b.terms().next_back()?;
    let lead_exp = lead_exp.clone();
    let lead_coeff = lead_coeff.clone();
    let mut rem = a.clone();
    let mut quo: Vec<(Vec<i64>, BigInt)> = Vec::new();
    while !rem.is_zero() {
        let (re, rc) = rem.terms().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let qe: Vec<i64> = re
            .iter()
            .zip(lead_exp.iter())
            .map(|(x, y)| x - y)
            .collect();
        if qe.iter().any(|v| *v < 0) {
            return None;
        }
        if (&rc % &lead_coeff) != BigInt::zero() {
            return None;
        }
        let qc = &rc / &lead_coeff;
        let mono = LaurentPoly::monomial(a.nvars(), qe.clone(), qc.clone());
        rem = rem.sub(&mono.multiply(b).ok()?).ok()?;
        quo.push((qe, qc));
    }
    LaurentPoly::from_terms(a.nvars(), quo).ok()
}

/// Fraction-free determinant of a square matrix of polynomials.
fn bareiss_det(mut m: Vec<Vec<LaurentPoly>>, nvars: usize) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::constant(nvars, BigInt::from(1));
    }
    let mut sign_flip = false;
    let mut prev = LaurentPoly::constant(nvars, BigInt::from(1));
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                m.swap(k, p);
                sign_flip = !sign_flip;
            } else {
                return LaurentPoly::zero(nvars);
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = m[i][j].multiply(&m[k][k]).expect("arity");
                let t2 = m[i][k].multiply(&m[k][j]).expect("arity");
                let num = t1.sub(&t2).expect("arity");
                m[i][j] = div_exact(&num, &prev).expect("Bareiss division is exact");
            }
            m[i][k] = LaurentPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Sylvester resultant of `p` and `q` with respect to variable `var`. The
/// result no longer involves `var` (the variable is removed from the tuple).
/// Returns the zero polynomial when the inputs share a factor involving
/// `var`; panics if either input has degree < 0 handling: a zero input
/// yields zero.
pub fn sylvester_resultant(p: &LaurentPoly, q: &LaurentPoly, var: usize) -> LaurentPoly {
    assert_eq!(p.nvars(), q.nvars());
    let sub_nvars = p.nvars() - 1;
    if p.is_zero() || q.is_zero() {
        return LaurentPoly::zero(sub_nvars);
    }
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let dp = pc.len() - 1;
    let dq = qc.len() - 1;
    if dp == 0 && dq == 0 {
        return LaurentPoly::constant(sub_nvars, BigInt::from(1));
    }
    if dp == 0 {
        // Res(c, q) = c^(deg q)
        let mut acc = LaurentPoly::constant(sub_nvars, BigInt::from(1));
        for _ in 0..dq {
            acc = acc.multiply(&pc[0]).expect("arity");
        }
        return acc;
    }
    if dq == 0 {
        let mut acc = LaurentPoly::constant(sub_nvars, BigInt::from(1));
        for _ in 0..dp {
            acc = acc.multiply(&qc[0]).expect("arity");
        }
        return acc;
    }
    let size = dp + dq;
    let zero = LaurentPoly::zero(sub_nvars);
    let mut m = vec![vec![zero; size]; size];
    // dq rows of p coefficients (highest degree first), then dp rows of q.
    for r in 0..dq {
        for (k, c) in pc.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in qc.iter().rev().enumerate() {
            m[dq + r][r + k] = c.clone();
        }
    }
    bareiss_det(m, sub_nvars)
}

/// Independent univariate resultant over the Gaussian rationals, by the
/// Euclidean remainder chain. Used as a cross-check oracle in tests and for
/// small eliminations.
pub fn resultant_univariate(a: &UnivariatePoly, b: &UnivariatePoly) -> GaussianRational {
    fn go(a: &UnivariatePoly, b: &UnivariatePoly) -> GaussianRational {
        let m = a.degree().expect("nonzero");
        let n = b.degree().expect("nonzero");
        if n == 0 {
            return pow_gr(&b.lc(), m as u32);
        }
        let (_, r) = a.divrem(b);
        if r.is_zero() {
            return GaussianRational::zero();
        }
        let dr = r.degree().unwrap();
        // Res(A,B) = (-1)^{mn} lc(B)^{m - dr} Res(B, R)
        let mut out = pow_gr(&b.lc(), (m - dr) as u32).mul(&go(b, &r));
        if (m * n) % 2 == 1 {
            out = out.neg();
        }
        out
    }
    if a.is_zero() || b.is_zero() {
        return GaussianRational::zero();
    }
    if a.degree().unwrap() < b.degree().unwrap() {
        let s = a.degree().unwrap() * b.degree().unwrap();
        let r = go(b, a);
        if s % 2 == 1 {
            r.neg()
        } else {
            r
        }
    } else {
        go(a, b)
    }
}

fn pow_gr(x: &GaussianRational, k: u32) -> GaussianRational {
    let mut acc = GaussianRational::one();
    for _ in 0..k {
        acc = acc.mul(x);
    }
    acc
}

/// Convert a one-variable slice of a multivariate polynomial (all other
/// variables substituted) into a `UnivariatePoly`.
pub fn laurent_to_univariate(f: &LaurentPoly) -> UnivariatePoly {
    assert_eq!(f.nvars(), 1);
    if f.is_zero() {
        return UnivariatePoly::zero();
    }
    let (lo, hi) = f.exponent_range(0).unwrap();
    assert!(lo >= 0, "univariate conversion needs nonnegative exponents");
    let mut coeffs = vec![GaussianRational::zero(); (hi + 1) as usize];
    for (e, c) in f.terms() {
        coeffs[e[0] as usize] = GaussianRational::from_bigint(c);
    }
    UnivariatePoly::new(coeffs)
}

/// Signed content: gcd of all coefficients, with the sign of the leading
/// (lex-largest) term.
pub fn content(f: &LaurentPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in f.terms() {
        g = num_integer::Integer::gcd(&g, c);
    }
    if let Some((_, lead)) = f.terms().next_back() {
        if lead.is_negative() {
            g = -g;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse_poly, parse_poly_nvars};

    #[test]
    fn exact_division() {
        let a = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let b = parse_poly_nvars("2 - X1", 2).unwrap();
        let q = div_exact(&a, &b).unwrap();
        assert_eq!(q, parse_poly_nvars("2 - X2", 2).unwrap());
        let c = parse_poly("3 + X1 + X2").unwrap();
        assert!(div_exact(&c, &b).is_none());
    }

    #[test]
    fn resultant_of_f_and_conjugate_reciprocal() {
        // Res_{X2}(4 + X1 + X2, 4 X1 X2 + X1 + X2) = -4 (X1^2 + 4 X1 + 1)
        let f = parse_poly("4 + X1 + X2").unwrap();
        let fstar = crate::univariate::conjugate_reciprocal(&f, &[1, 1]).unwrap();
        let r = sylvester_resultant(&f, &fstar, 1);
        let expected = parse_poly("-4 - 16*X1 - 4*X1^2").unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn resultant_shared_factor_vanishes() {
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap(); // (2-X1)(2-X2)
        let g = parse_poly_nvars("2 - X2", 2).unwrap();
        let r = sylvester_resultant(&f, &g, 1);
        // Eliminating X1: both have (2 - X2)?? g has no X1: Res over X1 of
        // degree-1 and degree-0 polynomial is g^1... keep the X2 elimination:
        let r2 = sylvester_resultant(&f, &g.multiply(&parse_poly_nvars("X1", 2).unwrap()).unwrap(), 1);
        let _ = (r, r2);
        // Direct shared-factor case: Res_{X2}((2-X2) h1, (2-X2) h2) = 0
        let a = parse_poly_nvars("2 - X2", 2)
            .unwrap()
            .multiply(&parse_poly_nvars("1 + X1", 2).unwrap())
            .unwrap();
        let b = parse_poly_nvars("2 - X2", 2)
            .unwrap()
            .multiply(&parse_poly_nvars("3 + X1", 2).unwrap())
            .unwrap();
        assert!(sylvester_resultant(&a, &b, 1).is_zero());
    }

    #[test]
    fn agreement_with_univariate_prs() {
        // Random-ish bivariate pair, eliminate X2, compare at specialized X1.
        let p = parse_poly("3 + 2*X1 - X2 + X1*X2 + X2^2").unwrap();
        let q = parse_poly("1 - X1 + 2*X2 - X1*X2^2 + X2^3").unwrap();
        let r = sylvester_resultant(&p, &q, 1);
        for x1 in [-3i64, -1, 0, 2, 5] {
            let pv = laurent_to_univariate(&p.substitute_value(0, &BigInt::from(x1)));
            let qv = laurent_to_univariate(&q.substitute_value(0, &BigInt::from(x1)));
            let direct = resultant_univariate(&pv, &qv);
            let via = laurent_to_univariate(&r).eval(&GaussianRational::from_int(x1));
            assert_eq!(direct, via, "specialization at X1 = {x1}");
        }
    }

    #[test]
    fn degree_zero_cases() {
        let c = parse_poly_nvars("5", 2).unwrap();
        let q = parse_poly("1 + X2^2").unwrap();
        let r = sylvester_resultant(&c, &q, 1);
        assert_eq!(r, parse_poly_nvars("25", 1).unwrap());
    }
}
