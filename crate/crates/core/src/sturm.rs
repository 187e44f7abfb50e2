//! Real univariate polynomials over the rationals: Sturm chains, exact real
//! root counting, isolation and bisection refinement.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense real polynomial, lowest degree first, no trailing zeros.
pub type RealPoly = Vec<BigRational>;

pub fn normalize(mut p: RealPoly) -> RealPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &RealPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn eval(p: &RealPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &RealPoly) -> RealPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect()
}

pub fn rem(a: &RealPoly, b: &RealPoly) -> RealPoly {
    assert!(!b.is_empty(), "remainder by zero polynomial");
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lb;
        let shift = dr - db;
        for (k, c) in b.iter().enumerate() {
            let d = c * &f;
            r[k + shift] = &r[k + shift] - d;
        }
        r = normalize(r);
        if r.len() <= db {
            break;
        }
    }
    normalize(r)
}

pub fn divide_exact(a: &RealPoly, b: &RealPoly) -> Option<RealPoly> {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); a.len() - b.len() + 1];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lb;
        let shift = dr - db;
        q[shift] = f.clone();
        for (k, c) in b.iter().enumerate() {
            let d = c * &f;
            r[k + shift] = &r[k + shift] - d;
        }
        r = normalize(r);
    }
    if r.is_empty() {
        Some(normalize(q))
    } else {
        None
    }
}

pub fn gcd(a: &RealPoly, b: &RealPoly) -> RealPoly {
    let mut x = normalize(a.clone());
    let mut y = normalize(b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    // Monic normalization.
    if let Some(lc) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &lc;
        }
    }
    x
}

/// Squarefree part `p / gcd(p, p')`.
pub fn squarefree_part(p: &RealPoly) -> RealPoly {
    let d = derivative(p);
    if d.is_empty() {
        return p.clone();
    }
    let g = gcd(p, &d);
    if g.len() <= 1 {
        p.clone()
    } else {
        divide_exact(p, &g).expect("gcd divides")
    }
}

/// Sturm chain of `p` (ending at the gcd of p and p').
pub fn sturm_chain(p: &RealPoly) -> Vec<RealPoly> {
    let mut chain = Vec::new();
    let p0 = normalize(p.clone());
    if p0.is_empty() {
        return chain;
    }
    chain.push(p0.clone());
    let p1 = derivative(&p0);
    if p1.is_empty() {
        return chain;
    }
    chain.push(p1);
    loop {
        let k = chain.len();
        let r = rem(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: &[i8]) -> usize {
    let mut count = 0;
    let mut prev: Option<i8> = None;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if let Some(p) = prev {
            if p != s {
                count += 1;
            }
        }
        prev = Some(s);
    }
    count
}

pub fn variations_at(chain: &[RealPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign(&eval(p, x))).collect();
    variations(&signs)
}

fn sign_at_infinity(p: &RealPoly, positive: bool) -> i8 {
    match p.last() {
        None => 0,
        Some(lc) => {
            let s = sign(lc);
            if positive || (p.len() - 1) % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

pub fn variations_at_infinity(chain: &[RealPoly], positive: bool) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign_at_infinity(p, positive)).collect();
    variations(&signs)
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &RealPoly) -> usize {
    let sf = squarefree_part(p);
    if degree(&sf).unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(&sf);
    variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true)
}

/// Number of distinct real roots in the open interval `(a, b)` (endpoints
/// must not be roots).
pub fn count_real_roots_between(p: &RealPoly, a: &BigRational, b: &BigRational) -> usize {
    let sf = squarefree_part(p);
    if degree(&sf).unwrap_or(0) == 0 {
        return 0;
    }
    debug_assert!(!eval(&sf, a).is_zero() && !eval(&sf, b).is_zero());
    let chain = sturm_chain(&sf);
    variations_at(&chain, a) - variations_at(&chain, b)
}

/// Generalized Sturm-chain Cauchy index machinery: the chain starting from
/// an arbitrary pair (f0, f1) with negative remainders.
pub fn pair_chain(f0: &RealPoly, f1: &RealPoly) -> Vec<RealPoly> {
    let mut chain = Vec::new();
    let a = normalize(f0.clone());
    let b = normalize(f1.clone());
    if a.is_empty() {
        return vec![b];
    }
    chain.push(a);
    if b.is_empty() {
        return chain;
    }
    chain.push(b);
    loop {
        let k = chain.len();
        let r = rem(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

/// An exact location of a real root.
#[derive(Clone, Debug)]
pub enum RealRootLoc {
    Point(BigRational),
    /// Open interval containing exactly one simple root; the polynomial has
    /// opposite signs at the endpoints.
    Interval(BigRational, BigRational),
}

impl RealRootLoc {
    pub fn lo(&self) -> BigRational {
        match self {
            RealRootLoc::Point(x) => x.clone(),
            RealRootLoc::Interval(a, _) => a.clone(),
        }
    }
    pub fn hi(&self) -> BigRational {
        match self {
            RealRootLoc::Point(x) => x.clone(),
            RealRootLoc::Interval(_, b) => b.clone(),
        }
    }
    pub fn mid(&self) -> BigRational {
        (self.lo() + self.hi()) / BigRational::from_integer(BigInt::from(2))
    }
}

/// Cauchy root bound: all real roots lie in (-B, B).
pub fn root_bound(p: &RealPoly) -> BigRational {
    let lc = p.last().expect("nonzero polynomial").abs();
    let mut m = BigRational::zero();
    for c in &p[..p.len() - 1] {
        let r = c.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    m + BigRational::from_integer(BigInt::from(2))
}

/// Isolate all distinct real roots of `p` (any multiplicities; isolation is
/// done on the squarefree part).
pub fn isolate_real_roots(p: &RealPoly) -> Vec<RealRootLoc> {
    let mut sf = squarefree_part(p);
    let mut out: Vec<RealRootLoc> = Vec::new();
    // Split off exact rational roots discovered at bisection midpoints by
    // dividing them out; restart as needed.
    'restart: loop {
        if degree(&sf).unwrap_or(0) == 0 {
            break;
        }
        let chain = sturm_chain(&sf);
        let bound = root_bound(&sf);
        let total = variations_at(&chain, &-bound.clone()) - variations_at(&chain, &bound);
        if total == 0 {
            break;
        }
        let mut stack = vec![(-bound.clone(), bound.clone(), total)];
        let mut found: Vec<RealRootLoc> = Vec::new();
        while let Some((a, b, count)) = stack.pop() {
            if count == 0 {
                continue;
            }
            if count == 1 {
                found.push(RealRootLoc::Interval(a, b));
                continue;
            }
            let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
            if eval(&sf, &mid).is_zero() {
                out.push(RealRootLoc::Point(mid.clone()));
                // Divide out (x - mid) and restart cleanly.
                let lin = vec![-mid, BigRational::one()];
                sf = divide_exact(&sf, &lin).expect("root divides");
                continue 'restart;
            }
            let left = variations_at(&chain, &a) - variations_at(&chain, &mid);
            stack.push((a, mid.clone(), left));
            stack.push((mid, b, count - left));
        }
        out.extend(found);
        break;
    }
    out.sort_by(|x, y| x.lo().cmp(&y.lo()));
    out
}

/// Shrink an isolating interval until its width is at most `width`.
pub fn refine_root(p: &RealPoly, loc: &RealRootLoc, width: &BigRational) -> RealRootLoc {
    match loc {
        RealRootLoc::Point(x) => RealRootLoc::Point(x.clone()),
        RealRootLoc::Interval(a, b) => {
            let sf = squarefree_part(p);
            let mut a = a.clone();
            let mut b = b.clone();
            let two = BigRational::from_integer(BigInt::from(2));
            let mut sa = sign(&eval(&sf, &a));
            debug_assert!(sa != 0 && sign(&eval(&sf, &b)) != 0);
            while &b - &a > *width {
                let mid = (&a + &b) / &two;
                let sm = sign(&eval(&sf, &mid));
                if sm == 0 {
                    return RealRootLoc::Point(mid);
                }
                if sm == sa {
                    a = mid;
                } else {
                    b = mid;
                }
                sa = sign(&eval(&sf, &a));
            }
            RealRootLoc::Interval(a, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn poly(coeffs: &[i64]) -> RealPoly {
        normalize(coeffs.iter().map(|c| r(*c)).collect())
    }

    #[test]
    fn count_roots_quadratics() {
        // x^2 - 5x + 4: roots 1 and 4
        assert_eq!(count_real_roots(&poly(&[4, -5, 1])), 2);
        // x^2 + 1: none
        assert_eq!(count_real_roots(&poly(&[1, 0, 1])), 0);
        // (x-1)^2: one distinct
        assert_eq!(count_real_roots(&poly(&[1, -2, 1])), 1);
    }

    #[test]
    fn isolate_and_refine() {
        let p = poly(&[4, -5, 1]); // roots 1, 4
        let locs = isolate_real_roots(&p);
        assert_eq!(locs.len(), 2);
        let w = BigRational::new(BigInt::from(1), BigInt::from(1 << 20));
        let refined: Vec<RealRootLoc> = locs.iter().map(|l| refine_root(&p, l, &w)).collect();
        let vals: Vec<f64> = refined
            .iter()
            .map(|l| {
                let m = l.mid();
                m.numer().to_string().parse::<f64>().unwrap()
                    / m.denom().to_string().parse::<f64>().unwrap()
            })
            .collect();
        assert!((vals[0] - 1.0).abs() < 1e-4);
        assert!((vals[1] - 4.0).abs() < 1e-4);
    }

    #[test]
    fn exact_rational_root_found_as_point() {
        // (x - 1/2)(x^2 + 1) scaled: 2x^3 - x^2 + 2x - 1
        let p = poly(&[-1, 2, -1, 2]);
        let locs = isolate_real_roots(&p);
        assert_eq!(locs.len(), 1);
    }

    #[test]
    fn counting_between() {
        let p = poly(&[0, -1, 0, 1]); // x^3 - x: roots -1, 0, 1
        assert_eq!(count_real_roots(&p), 3);
        assert_eq!(
            count_real_roots_between(&p, &BigRational::new(BigInt::from(-1), BigInt::from(2)), &r(2)),
            2
        );
    }

    #[test]
    fn gcd_and_squarefree() {
        // p = (x-1)^2 (x+2)
        let p = poly(&[2, -3, 0, 1]);
        let sf = squarefree_part(&p);
        assert_eq!(degree(&sf), Some(2));
        assert!(eval(&sf, &r(1)).is_zero());
        assert!(eval(&sf, &r(-2)).is_zero());
    }
}
