//! Sparse multivariate Laurent polynomials with exact integer coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent tuple in lexicographic
//! order, so printing, JSON output and iteration are deterministic. Values
//! are immutable after construction; all operations are pure.

use crate::interval::DyInterval;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LaurentError {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("invalid polynomial data: {0}")]
    InvalidData(String),
}

/// Sparse Laurent polynomial: exponent tuples (possibly negative) mapped to
/// nonzero arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        LaurentPoly { nvars, terms }
    }

    /// Build from raw terms; repeated exponents are accumulated and zero
    /// coefficients dropped.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>,
    ) -> Result<Self, LaurentError> {
        let mut map: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(LaurentError::ArityMismatch(e.len(), nvars));
            }
            let entry = map.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars, terms: map })
    }

    pub fn monomial(nvars: usize, exp: Vec<i64>, c: BigInt) -> Self {
        Self::from_terms(nvars, [(exp, c)]).expect("monomial arity")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    /// Lex-largest term (exponent, coefficient).
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    /// Max bit length over coefficient magnitudes.
    pub fn coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Sum of |coefficients|.
    pub fn coeff_abs_sum(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Per-variable minimum and maximum exponent; `None` for the zero poly.
    pub fn exponent_range(&self, var: usize) -> Option<(i64, i64)> {
        self.terms
            .keys()
            .map(|e| e[var])
            .fold(None, |acc, x| match acc {
                None => Some((x, x)),
                Some((lo, hi)) => Some((lo.min(x), hi.max(x))),
            })
    }

    /// Degree in `var` (max exponent); zero poly yields `None`.
    pub fn degree(&self, var: usize) -> Option<i64> {
        self.exponent_range(var).map(|(_, hi)| hi)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LaurentError> {
        if self.nvars != rhs.nvars {
            return Err(LaurentError::ArityMismatch(self.nvars, rhs.nvars));
        }
        let mut map = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = map.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars: self.nvars, terms: map })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LaurentError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Exact product; support lies in the Minkowski sum of the supports.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, LaurentError> {
        if self.nvars != rhs.nvars {
            return Err(LaurentError::ArityMismatch(self.nvars, rhs.nvars));
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let large_terms: Vec<(&Vec<i64>, &BigInt)> = large.terms.iter().collect();
        let work = small.terms.len() * large_terms.len();
        let mut map: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        if work < (1 << 15) {
            for (ea, ca) in &small.terms {
                for (eb, cb) in &large_terms {
                    let mut e = ea.clone();
                    for (x, y) in e.iter_mut().zip(eb.iter()) {
                        *x += *y;
                    }
                    let entry = map.entry(e).or_insert_with(BigInt::zero);
                    *entry += ca * *cb;
                }
            }
        } else {
            use rayon::prelude::*;
            let small_terms: Vec<(&Vec<i64>, &BigInt)> = small.terms.iter().collect();
            let partial: Vec<BTreeMap<Vec<i64>, BigInt>> = small_terms
                .par_chunks(8.max(small_terms.len() / 64))
                .map(|chunk| {
                    let mut m: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
                    for (ea, ca) in chunk {
                        for (eb, cb) in &large_terms {
                            let mut e = (*ea).clone();
                            for (x, y) in e.iter_mut().zip(eb.iter()) {
                                *x += *y;
                            }
                            let entry = m.entry(e).or_insert_with(BigInt::zero);
                            *entry += *ca * *cb;
                        }
                    }
                    m
                })
                .collect();
            for m in partial {
                for (e, c) in m {
                    let entry = map.entry(e).or_insert_with(BigInt::zero);
                    *entry += c;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars: self.nvars, terms: map })
    }

    /// Substitute `X_j -> s_j * X_j` for signs `s_j` in {-1, +1}.
    pub fn substitute_signs(&self, signs: &[i8]) -> Self {
        assert_eq!(signs.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut flip = false;
                for (exp, s) in e.iter().zip(signs.iter()) {
                    if *s < 0 && exp.rem_euclid(2) == 1 {
                        flip = !flip;
                    }
                }
                (e.clone(), if flip { -c } else { c.clone() })
            })
            .collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] != 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c * BigInt::from(e[var]))
            })
            .collect::<Vec<_>>();
        LaurentPoly::from_terms(self.nvars, terms).expect("derivative arity")
    }

    /// Multiply by the monomial `X^shift` (exponent shift).
    pub fn shift_exponents(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e2: Vec<i64> =
                        e.iter().zip(shift.iter()).map(|(a, b)| a + b).collect();
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Shift exponents so every variable has minimum exponent 0. Returns the
    /// normalized polynomial and the shift applied. Harmless for torus zero
    /// sets and amoebas.
    pub fn normalize_laurent(&self) -> (Self, Vec<i64>) {
        if self.is_zero() {
            return (self.clone(), vec![0; self.nvars]);
        }
        let shift: Vec<i64> = (0..self.nvars)
            .map(|j| -self.exponent_range(j).unwrap().0)
            .collect();
        if shift.iter().all(|s| *s == 0) {
            (self.clone(), shift)
        } else {
            (self.shift_exponents(&shift), shift)
        }
    }

    /// Substitute an integer constant for variable `var`, dropping it.
    pub fn substitute_value(&self, var: usize, value: &BigInt) -> Self {
        let mut out: Vec<(Vec<i64>, BigInt)> = Vec::new();
        for (e, c) in &self.terms {
            let k = e[var];
            assert!(k >= 0, "substitution requires nonnegative exponents");
            let factor = value.pow(k as u32);
            let mut e2 = e.clone();
            e2.remove(var);
            out.push((e2, c * factor));
        }
        LaurentPoly::from_terms(self.nvars - 1, out).expect("substitution arity")
    }

    /// View this polynomial as univariate in `var` with coefficients in the
    /// remaining variables, lowest degree first. Requires nonnegative
    /// exponents in `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<LaurentPoly> {
        let deg = self.degree(var).unwrap_or(0).max(0);
        let (lo, _) = self.exponent_range(var).unwrap_or((0, 0));
        assert!(lo >= 0, "coefficients_in requires a polynomial in this variable");
        let mut coeffs = vec![Vec::new(); (deg + 1) as usize];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2.remove(var);
            coeffs[k].push((e2, c.clone()));
        }
        coeffs
            .into_iter()
            .map(|ts| LaurentPoly::from_terms(self.nvars - 1, ts).expect("arity"))
            .collect()
    }

    /// Inverse of `coefficients_in`: rebuild inserting `var` at position `var`.
    pub fn from_coefficients_in(var: usize, coeffs: &[LaurentPoly]) -> Self {
        assert!(!coeffs.is_empty());
        let sub_nvars = coeffs[0].nvars;
        let nvars = sub_nvars + 1;
        let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2.insert(var, k as i64);
                terms.push((e2, v.clone()));
            }
        }
        LaurentPoly::from_terms(nvars, terms).expect("arity")
    }

    /// Exact evaluation at a rational point (all coordinates nonzero if any
    /// negative exponents appear).
    pub fn eval_rational(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (xi, k) in x.iter().zip(e.iter()) {
                t *= pow_rational(xi, *k);
            }
            acc += t;
        }
        acc
    }

    /// Interval evaluation at complex boxes.
    pub fn eval_complex_box(
        &self,
        z: &[crate::interval::ComplexBox],
        prec: u32,
    ) -> crate::interval::ComplexBox {
        use crate::interval::ComplexBox;
        assert_eq!(z.len(), self.nvars);
        let mut acc = ComplexBox::zero();
        // Cache powers per variable per exponent.
        let mut pows: Vec<std::collections::HashMap<i64, ComplexBox>> =
            vec![std::collections::HashMap::new(); self.nvars];
        for (e, c) in &self.terms {
            let mut t = ComplexBox::real(DyInterval::from_bigint(c));
            for (j, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let p = pows[j]
                    .entry(*k)
                    .or_insert_with(|| z[j].powi(*k, prec))
                    .clone();
                t = t.mul(&p, prec);
            }
            acc = acc.add(&t, prec);
        }
        acc
    }

    /// Fast f64 evaluation at complex points (non-certified paths).
    pub fn eval_complex_f64(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0);
            for (j, k) in e.iter().enumerate() {
                if *k != 0 {
                    t *= z[j].powi(*k as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Certified enclosures of the term magnitudes `|c_a| * e^<a, x>` at a
    /// rational point, with relative width at most `2^-precision_bits`.
    pub fn eval_term_magnitudes(
        &self,
        x: &[BigRational],
        precision_bits: u32,
    ) -> Vec<(Vec<i64>, DyInterval)> {
        assert_eq!(x.len(), self.nvars);
        assert!(precision_bits >= 8, "precision must be at least 8 bits");
        let prec = precision_bits + 16;
        self.terms
            .iter()
            .map(|(e, c)| {
                let dot = dot_rational(e, x);
                let mag = magnitude_interval(c, &dot, prec);
                (e.clone(), mag)
            })
            .collect()
    }

    /// Enclosure variant of `eval_term_magnitudes` for non-rational points
    /// given as intervals.
    pub fn eval_term_magnitudes_enclosure(
        &self,
        x: &[DyInterval],
        precision_bits: u32,
    ) -> Vec<(Vec<i64>, DyInterval)> {
        assert_eq!(x.len(), self.nvars);
        let prec = precision_bits + 16;
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut dot = DyInterval::zero();
                for (k, xi) in e.iter().zip(x.iter()) {
                    dot = dot.add(&xi.mul(&DyInterval::from_i64(*k), prec), prec);
                }
                let expv = dot.exp(prec);
                let mag = expv.mul(&DyInterval::from_bigint(&c.abs()), prec);
                (e.clone(), mag)
            })
            .collect()
    }
}

/// `|c| * exp(q)` as a certified interval.
pub fn magnitude_interval(c: &BigInt, q: &BigRational, prec: u32) -> DyInterval {
    let qi = DyInterval::from_rational(q, prec);
    qi.exp(prec).mul(&DyInterval::from_bigint(&c.abs()), prec)
}

/// Exact `<e, x>` for integer exponents and rational coordinates.
pub fn dot_rational(e: &[i64], x: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (k, xi) in e.iter().zip(x.iter()) {
        acc += xi * BigRational::from_integer(BigInt::from(*k));
    }
    acc
}

fn pow_rational(x: &BigRational, k: i64) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let p = x.pow(k.unsigned_abs().try_into().expect("exponent too large"));
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

// ---------------------------------------------------------------------------
// Text grammar
//
//   integer ::= ["-"] digits
//   var     ::= "X" index
//   factor  ::= var ["^" integer]
//   term    ::= [integer "*"] factor {"*" factor} | integer
//   poly    ::= ["+"|"-"] term {("+"|"-") term}
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_uint(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn parse_int(&mut self) -> Result<BigInt, LaurentError> {
        if self.peek() == Some(b'-') {
            self.bump();
            Ok(-self.parse_uint()?)
        } else {
            self.parse_uint()
        }
    }

    /// factor ::= var ["^" integer]; returns (var index 1-based, exponent)
    fn parse_factor(&mut self) -> Result<(usize, i64), LaurentError> {
        match self.peek() {
            Some(b'X') => {
                self.bump();
                let idx = self.parse_uint()?;
                let idx = idx
                    .to_usize()
                    .filter(|i| *i >= 1)
                    .ok_or(LaurentError::Parse {
                        pos: self.pos,
                        msg: "variable index must be a positive integer".into(),
                    })?;
                let exp = if self.peek() == Some(b'^') {
                    self.bump();
                    let e = self.parse_int()?;
                    e.to_i64().ok_or(LaurentError::Parse {
                        pos: self.pos,
                        msg: "exponent out of range".into(),
                    })?
                } else {
                    1
                };
                Ok((idx, exp))
            }
            _ => self.err("expected variable"),
        }
    }

    /// term ::= [integer "*"] factor {"*" factor} | integer
    fn parse_term(&mut self) -> Result<(BigInt, Vec<(usize, i64)>), LaurentError> {
        let mut coeff = BigInt::one();
        let mut factors = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.parse_uint()?;
                if self.peek() == Some(b'*') {
                    self.bump();
                    factors.push(self.parse_factor()?);
                } else {
                    return Ok((coeff, factors));
                }
            }
            Some(b'X') => {
                factors.push(self.parse_factor()?);
            }
            _ => return self.err("expected term"),
        }
        while self.peek() == Some(b'*') {
            self.bump();
            factors.push(self.parse_factor()?);
        }
        Ok((coeff, factors))
    }
}

/// Parse the text grammar, inferring the variable count from the largest
/// index used. The zero polynomial (e.g. `"0"`) is allowed.
pub fn parse_poly(text: &str) -> Result<LaurentPoly, LaurentError> {
    parse_poly_impl(text, None)
}

/// Parse with an explicit variable count (must be at least the largest index
/// appearing in the text).
pub fn parse_poly_nvars(text: &str, nvars: usize) -> Result<LaurentPoly, LaurentError> {
    parse_poly_impl(text, Some(nvars))
}

fn parse_poly_impl(text: &str, nvars: Option<usize>) -> Result<LaurentPoly, LaurentError> {
    let mut p = Parser::new(text);
    let mut raw: Vec<(BigInt, Vec<(usize, i64)>)> = Vec::new();
    let mut sign = BigInt::one();
    match p.peek() {
        Some(b'+') => {
            p.bump();
        }
        Some(b'-') => {
            p.bump();
            sign = -sign;
        }
        _ => {}
    }
    loop {
        let (c, f) = p.parse_term()?;
        raw.push((&sign * c, f));
        match p.peek() {
            Some(b'+') => {
                p.bump();
                sign = BigInt::one();
            }
            Some(b'-') => {
                p.bump();
                sign = -BigInt::one();
            }
            None => break,
            Some(_) => return p.err("expected '+', '-' or end of input"),
        }
    }
    let max_idx = raw
        .iter()
        .flat_map(|(_, fs)| fs.iter().map(|(i, _)| *i))
        .max()
        .unwrap_or(0);
    let n = match nvars {
        Some(n) => {
            if n < max_idx {
                return Err(LaurentError::InvalidData(format!(
                    "nvars {n} smaller than largest variable index {max_idx}"
                )));
            }
            n
        }
        None => max_idx.max(1),
    };
    let terms = raw.into_iter().map(|(c, fs)| {
        let mut e = vec![0i64; n];
        for (idx, k) in fs {
            e[idx - 1] += k;
        }
        (e, c)
    });
    LaurentPoly::from_terms(n, terms)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k != 0)
                .map(|(j, k)| {
                    if *k == 1 {
                        format!("X{}", j + 1)
                    } else {
                        format!("X{}^{}", j + 1, k)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON form: {"nvars": n, "terms": [{"coeff": "<decimal>", "exp": [..]}]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    exp: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    nvars: usize,
    terms: Vec<JsonTerm>,
}

impl LaurentPoly {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(e, c)| JsonTerm { coeff: c.to_string(), exp: e.clone() })
            .collect();
        serde_json::to_value(JsonPoly { nvars: self.nvars, terms }).unwrap()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, LaurentError> {
        let jp: JsonPoly = serde_json::from_value(v.clone())
            .map_err(|e| LaurentError::InvalidData(e.to_string()))?;
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::new();
        for t in jp.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| LaurentError::InvalidData(format!("bad coefficient {}", t.coeff)))?;
            if c.is_zero() {
                return Err(LaurentError::InvalidData("zero coefficient stored".into()));
            }
            if !seen.insert(t.exp.clone()) {
                return Err(LaurentError::InvalidData("duplicate exponent tuple".into()));
            }
            terms.push((t.exp, c));
        }
        LaurentPoly::from_terms(jp.nvars, terms)
    }

    pub fn from_json_str(s: &str) -> Result<Self, LaurentError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| LaurentError::InvalidData(e.to_string()))?;
        Self::from_json(&v)
    }
}
