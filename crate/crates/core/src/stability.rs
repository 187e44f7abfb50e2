//! The stability decision procedure: preconditions on the denominator,
//! strong BIBO decision via iterated origin lopsidedness, and the weak BIBO
//! decision (n = 2) via the exact contour test plus an evidence-based probe.

use crate::contour::{origin_in_contour, OriginContour};
use crate::doubling::{DoublingError, DoublingLimits, DoublingSequence};
use crate::geometry::{newton_polytope, polytope_stats};
use crate::laurent::LaurentPoly;
use crate::lopsided::{
    classify_component, is_lopsided_at_origin, lopsided_membership, required_doublings,
    Margin,
};
use crate::oracle::amoeba_membership_fiber;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// Kinds of final verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    StronglyStable,
    UnstableInComponent,
    WeaklyStable,
    MemberOfAmoeba,
    Inconclusive,
    PreconditionFailed,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            VerdictKind::StronglyStable => "StronglyStable",
            VerdictKind::UnstableInComponent => "UnstableInComponent",
            VerdictKind::WeaklyStable => "WeaklyStable",
            VerdictKind::MemberOfAmoeba => "MemberOfAmoeba",
            VerdictKind::Inconclusive => "Inconclusive",
            VerdictKind::PreconditionFailed => "PreconditionFailed",
        };
        write!(f, "{s}")
    }
}

/// Assertions of the decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AssertionId {
    /// Support lies in the nonnegative orthant.
    SupportNonnegative,
    /// Not divisible by any coordinate variable.
    CoprimeWithCoordinates,
    /// Newton polytope is full-dimensional.
    FullDimensional,
    /// The constant term is present (0 in Supp F).
    ConstantTermPresent,
    /// "dist(0, A_F) >= 2^-M0" validated through lopsidedness of an iterate.
    AThreshold,
    /// "the origin lies in the stability component E_0".
    AZero,
    /// "the origin lies in the contour of the amoeba".
    B,
    /// "the origin is a boundary point of E_0" (weak stability).
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AssertionStatus {
    Validated,
    Disproved,
    Undetermined,
}

/// One assertion with its status and human-readable detail.
#[derive(Clone, Debug, Serialize)]
pub struct AssertionReport {
    pub assertion: AssertionId,
    pub status: AssertionStatus,
    pub detail: String,
}

impl AssertionReport {
    fn new(assertion: AssertionId, status: AssertionStatus, detail: impl Into<String>) -> Self {
        AssertionReport { assertion, status, detail: detail.into() }
    }
}

/// Structured evidence attached to a verdict.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Evidence {
    /// Exact margin (decimal) of the winning lopsidedness inequality.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<String>,
    /// Winner exponent in the collapsed iterate coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner: Option<Vec<i64>>,
    /// Depth bound actually used: min(k_max, required doublings).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_bound: Option<u32>,
    /// Depth demanded by the quantitative bound for eps = 2^-M0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required_k: Option<u32>,
    /// Contour witness (midpoints of z1 and z2).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contour_witness: Option<[[f64; 2]; 2]>,
    /// Gauss ratio at the witness, midpoint, when the denominator is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauss_ratio: Option<[f64; 2]>,
    /// Weak-probe point (rationals, decimal strings).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_margin: Option<f64>,
    /// Certified lower bound from a NonMember oracle answer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_bound: Option<f64>,
    /// True when the fiber oracle certified origin membership.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_member: Option<bool>,
    /// Resource-cap reason for an inconclusive verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resources_reason: Option<String>,
    /// Set when stability is impossible because the constant term is absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_criterion: Option<String>,
}

/// Resource accounting of the doubling iteration.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ResourceReport {
    pub max_k_reached: u32,
    pub terms: usize,
    pub coeff_bits: u64,
}

/// The final decision document.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityVerdict {
    pub kind: VerdictKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_used: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<Vec<i64>>,
    pub assertions: Vec<AssertionReport>,
    pub evidence: Evidence,
    pub resources: ResourceReport,
}

impl StabilityVerdict {
    fn new(kind: VerdictKind) -> Self {
        StabilityVerdict {
            kind,
            k_used: None,
            component: None,
            assertions: Vec::new(),
            evidence: Evidence::default(),
            resources: ResourceReport::default(),
        }
    }

    /// Process exit code: 0 stable, 1 unstable, 2 weakly stable,
    /// 3 inconclusive, 4 precondition failure.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            VerdictKind::StronglyStable => 0,
            VerdictKind::UnstableInComponent | VerdictKind::MemberOfAmoeba => 1,
            VerdictKind::WeaklyStable => 2,
            VerdictKind::Inconclusive => 3,
            VerdictKind::PreconditionFailed => 4,
        }
    }
}

/// Options for the decision procedure.
#[derive(Clone, Debug)]
pub struct StabilityOptions {
    /// Threshold exponent: the procedure certifies down to distance 2^-m0.
    pub m0: u32,
    /// Hard cap on the doubling depth.
    pub k_max: u32,
    /// Weak-stability probe offset along the diagonal.
    pub delta: BigRational,
    /// Working precision for certified comparisons.
    pub precision_bits: u32,
    /// Fiber-oracle resolution.
    pub oracle_resolution: u32,
    pub limits: DoublingLimits,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions {
            m0: 16,
            k_max: 12,
            delta: BigRational::new(BigInt::from(1), BigInt::from(16)),
            precision_bits: 128,
            oracle_resolution: 128,
            limits: DoublingLimits::default(),
        }
    }
}

/// Check the transfer-function preconditions on the denominator:
/// (a) polynomial support, (b) not divisible by any coordinate,
/// (c) full-dimensional Newton polytope, (d) record whether the constant
/// term is present.
pub fn check_preconditions(f: &LaurentPoly) -> Vec<AssertionReport> {
    let mut out = Vec::new();
    if f.is_zero() {
        out.push(AssertionReport::new(
            AssertionId::SupportNonnegative,
            AssertionStatus::Disproved,
            "zero polynomial",
        ));
        return out;
    }
    let n = f.nvars();
    let nonneg = (0..n).all(|j| f.exponent_range(j).unwrap().0 >= 0);
    out.push(AssertionReport::new(
        AssertionId::SupportNonnegative,
        if nonneg { AssertionStatus::Validated } else { AssertionStatus::Disproved },
        if nonneg { "Supp F in the nonnegative orthant".to_string() } else { "negative exponents present".to_string() },
    ));
    let mut coprime = true;
    let mut bad = Vec::new();
    for j in 0..n {
        let (lo, _) = f.exponent_range(j).unwrap();
        if lo > 0 {
            coprime = false;
            bad.push(j + 1);
        }
    }
    out.push(AssertionReport::new(
        AssertionId::CoprimeWithCoordinates,
        if coprime { AssertionStatus::Validated } else { AssertionStatus::Disproved },
        if coprime {
            "no coordinate divides F".to_string()
        } else {
            format!("F divisible by X{bad:?}")
        },
    ));
    let full_dim = match newton_polytope(f) {
        Ok(p) => p.dim == n,
        Err(_) => false,
    };
    out.push(AssertionReport::new(
        AssertionId::FullDimensional,
        if full_dim { AssertionStatus::Validated } else { AssertionStatus::Disproved },
        if full_dim {
            "Newton polytope is full-dimensional".to_string()
        } else {
            "Newton polytope is degenerate".to_string()
        },
    ));
    let has_constant = !f.constant_term().is_zero();
    out.push(AssertionReport::new(
        AssertionId::ConstantTermPresent,
        if has_constant { AssertionStatus::Validated } else { AssertionStatus::Disproved },
        if has_constant {
            "constant term present".to_string()
        } else {
            "constant term absent (stability impossible)".to_string()
        },
    ));
    out
}

fn preconditions_pass(reports: &[AssertionReport]) -> bool {
    reports.iter().all(|r| {
        r.assertion == AssertionId::ConstantTermPresent
            || r.status == AssertionStatus::Validated
    })
}

fn margin_string(m: &Option<Margin>) -> Option<String> {
    match m {
        Some(Margin::Exact(v)) => Some(v.to_string()),
        Some(Margin::Certified(i)) => Some(format!("[{}, {}]", i.lo_f64(), i.hi_f64())),
        None => None,
    }
}

/// Strong BIBO decision by iterated origin lopsidedness.
pub fn decide_strong_bibo(f: &LaurentPoly, opts: &StabilityOptions) -> StabilityVerdict {
    let pre = check_preconditions(f);
    if !preconditions_pass(&pre) {
        let mut v = StabilityVerdict::new(VerdictKind::PreconditionFailed);
        v.assertions = pre;
        return v;
    }
    let n = f.nvars();
    let delta = newton_polytope(f).expect("nonzero after preconditions");
    let has_constant = !f.constant_term().is_zero();

    let stats = polytope_stats(&delta).expect("full-dimensional after preconditions");
    let eps = BigRational::new(BigInt::from(1), BigInt::from(2).pow(opts.m0));
    let required_k = required_doublings(&eps, &stats, n);
    let k_bound = opts.k_max.min(required_k);

    let mut assertions = pre;
    let mut evidence = Evidence {
        k_bound: Some(k_bound),
        required_k: Some(required_k),
        ..Evidence::default()
    };
    if !has_constant {
        evidence.support_criterion = Some(
            "constant term absent: not BIBO stable regardless of the iteration".into(),
        );
    }
    let mut resources = ResourceReport::default();

    let mut seq = match DoublingSequence::initial(f) {
        Ok(s) => s,
        Err(_) => {
            let mut v = StabilityVerdict::new(VerdictKind::PreconditionFailed);
            v.assertions = assertions;
            return v;
        }
    };
    let mut capped: Option<DoublingError> = None;
    for k in 0..=k_bound {
        if k > 0 {
            match seq.step(&opts.limits) {
                Ok(s) => seq = s,
                Err(e) => {
                    capped = Some(e);
                    break;
                }
            }
        }
        resources.max_k_reached = k;
        resources.terms = seq.g.num_terms();
        resources.coeff_bits = seq.coeff_bits;
        let out = is_lopsided_at_origin(&seq.g);
        if out.lopsided {
            let winner = out.winner.clone().expect("lopsided outcome has winner");
            if let Some(c) = classify_component(&winner, k, n, &delta) {
                assertions.push(AssertionReport::new(
                    AssertionId::AThreshold,
                    AssertionStatus::Validated,
                    format!("iterate {k} is origin-lopsided with classifiable winner"),
                ));
                evidence.margin = margin_string(&out.margin);
                evidence.winner = Some(winner);
                let zero = vec![0i64; n];
                if c.alpha == zero {
                    assertions.push(AssertionReport::new(
                        AssertionId::AZero,
                        AssertionStatus::Validated,
                        "winner classifies to the constant-term component",
                    ));
                    let mut v = StabilityVerdict::new(VerdictKind::StronglyStable);
                    v.k_used = Some(k);
                    v.component = Some(zero);
                    v.assertions = assertions;
                    v.evidence = evidence;
                    v.resources = resources;
                    return v;
                } else {
                    assertions.push(AssertionReport::new(
                        AssertionId::AZero,
                        AssertionStatus::Disproved,
                        format!("winner classifies to component {:?}", c.alpha),
                    ));
                    let mut v = StabilityVerdict::new(VerdictKind::UnstableInComponent);
                    v.k_used = Some(k);
                    v.component = Some(c.alpha);
                    v.assertions = assertions;
                    v.evidence = evidence;
                    v.resources = resources;
                    return v;
                }
            }
            // Lopsided but not yet classifiable: keep doubling.
        }
    }
    // Iteration exhausted.
    if let Some(e) = capped {
        assertions.push(AssertionReport::new(
            AssertionId::AThreshold,
            AssertionStatus::Undetermined,
            format!("resource cap: {e}"),
        ));
        evidence.resources_reason = Some(e.to_string());
    } else {
        assertions.push(AssertionReport::new(
            AssertionId::AThreshold,
            AssertionStatus::Undetermined,
            format!(
                "no origin-lopsided iterate up to k = {k_bound}: the origin lies in the amoeba or within 2^-{} of it",
                opts.m0
            ),
        ));
    }
    let kind = if has_constant {
        VerdictKind::Inconclusive
    } else {
        // Stability is impossible without the constant term; the component
        // could not be identified at this depth.
        VerdictKind::UnstableInComponent
    };
    let mut v = StabilityVerdict::new(kind);
    v.assertions = assertions;
    v.evidence = evidence;
    v.resources = resources;
    v
}

/// Weak BIBO decision for n = 2, after an inconclusive strong decision:
/// exact origin-in-contour test, then a diagonal probe certifying that the
/// component on the negative side of the origin is the stability component.
pub fn decide_weak_bibo_2d(
    f: &LaurentPoly,
    opts: &StabilityOptions,
    strong: &StabilityVerdict,
) -> StabilityVerdict {
    if f.nvars() != 2 {
        let mut v = StabilityVerdict::new(VerdictKind::PreconditionFailed);
        v.assertions.push(AssertionReport::new(
            AssertionId::FullDimensional,
            AssertionStatus::Disproved,
            "weak decision is only available for n = 2",
        ));
        return v;
    }
    if strong.kind != VerdictKind::Inconclusive {
        return strong.clone();
    }
    let mut assertions = strong.assertions.clone();
    let mut evidence = strong.evidence.clone();
    let resources = strong.resources.clone();

    match origin_in_contour(f) {
        Err(e) => {
            assertions.push(AssertionReport::new(
                AssertionId::B,
                AssertionStatus::Undetermined,
                format!("contour test failed: {e}"),
            ));
            let mut v = StabilityVerdict::new(VerdictKind::Inconclusive);
            v.assertions = assertions;
            v.evidence = evidence;
            v.resources = resources;
            v
        }
        Ok(OriginContour::No) => {
            assertions.push(AssertionReport::new(
                AssertionId::B,
                AssertionStatus::Disproved,
                "origin is not in the contour",
            ));
            assertions.push(AssertionReport::new(
                AssertionId::C,
                AssertionStatus::Disproved,
                "disproving the contour assertion disproves weak stability",
            ));
            // The origin is either interior to the amoeba or was simply not
            // resolved; ask the fiber oracle.
            let zero = vec![BigRational::zero(), BigRational::zero()];
            let member = amoeba_membership_fiber(f, &zero, opts.oracle_resolution);
            match member {
                crate::oracle::FiberMembership::Member(w) => {
                    evidence.oracle_member = Some(true);
                    evidence.contour_witness = None;
                    let mids: Vec<(f64, f64)> = w.z.iter().map(|z| z.mid_f64()).collect();
                    evidence.probe_point = Some(
                        mids.iter().map(|(a, b)| format!("({a}, {b})")).collect(),
                    );
                    let mut v = StabilityVerdict::new(VerdictKind::MemberOfAmoeba);
                    v.assertions = assertions;
                    v.evidence = evidence;
                    v.resources = resources;
                    v
                }
                other => {
                    if let crate::oracle::FiberMembership::NonMember { lower_bound } = other {
                        evidence.oracle_bound = Some(lower_bound);
                        evidence.oracle_member = Some(false);
                    }
                    let mut v = StabilityVerdict::new(VerdictKind::Inconclusive);
                    v.assertions = assertions;
                    v.evidence = evidence;
                    v.resources = resources;
                    v
                }
            }
        }
        Ok(OriginContour::Yes { z1, z2, gauss }) => {
            assertions.push(AssertionReport::new(
                AssertionId::B,
                AssertionStatus::Validated,
                "origin lies in the contour (certified witness on the unit torus)",
            ));
            evidence.contour_witness = Some([
                [z1.re.mid_f64(), z1.im.mid_f64()],
                [z2.re.mid_f64(), z2.im.mid_f64()],
            ]);
            if let Some(r) = gauss.ratio(64) {
                evidence.gauss_ratio = Some([r.re.mid_f64(), r.im.mid_f64()]);
            }
            // Probe along the diagonal into the negative orthant.
            let probe: Vec<BigRational> = vec![-opts.delta.clone(), -opts.delta.clone()];
            evidence.probe_point = Some(probe.iter().map(|q| q.to_string()).collect());
            let delta_poly = newton_polytope(f).expect("checked nonzero");
            let mut seq = DoublingSequence::initial(f).expect("nonzero");
            let mut success = false;
            for k in 0..=opts.k_max {
                if k > 0 {
                    match seq.step(&opts.limits) {
                        Ok(s) => seq = s,
                        Err(e) => {
                            evidence.resources_reason = Some(e.to_string());
                            break;
                        }
                    }
                }
                let scale = BigRational::from_integer(BigInt::from(2).pow(k));
                let y: Vec<BigRational> = probe.iter().map(|q| q * &scale).collect();
                match lopsided_membership(&seq.g, &y, opts.precision_bits) {
                    Ok(out) if out.lopsided => {
                        let winner = out.winner.clone().expect("winner");
                        if let Some(c) = classify_component(&winner, k, 2, &delta_poly) {
                            if c.alpha == vec![0, 0] {
                                evidence.probe_k = Some(k);
                                evidence.probe_margin =
                                    out.margin.as_ref().map(|m| m.to_f64());
                                success = true;
                            }
                            break;
                        }
                    }
                    Ok(_) => {}
                    Err(_) => {}
                }
            }
            if !success {
                assertions.push(AssertionReport::new(
                    AssertionId::C,
                    AssertionStatus::Undetermined,
                    "diagonal probe did not certify the stability component",
                ));
                let mut v = StabilityVerdict::new(VerdictKind::Inconclusive);
                v.assertions = assertions;
                v.evidence = evidence;
                v.resources = resources;
                return v;
            }
            // Oracle confirmation of origin membership.
            let zero = vec![BigRational::zero(), BigRational::zero()];
            let member = amoeba_membership_fiber(f, &zero, opts.oracle_resolution);
            match member {
                crate::oracle::FiberMembership::Member(_) => {
                    evidence.oracle_member = Some(true);
                    assertions.push(AssertionReport::new(
                        AssertionId::C,
                        AssertionStatus::Validated,
                        "contour witness, negative-diagonal probe in E_0 and oracle membership of the origin",
                    ));
                    let mut v = StabilityVerdict::new(VerdictKind::WeaklyStable);
                    v.component = Some(vec![0, 0]);
                    v.assertions = assertions;
                    v.evidence = evidence;
                    v.resources = resources;
                    v
                }
                other => {
                    if let crate::oracle::FiberMembership::NonMember { lower_bound } = other {
                        evidence.oracle_bound = Some(lower_bound);
                        evidence.oracle_member = Some(false);
                    }
                    assertions.push(AssertionReport::new(
                        AssertionId::C,
                        AssertionStatus::Undetermined,
                        "fiber oracle did not certify origin membership",
                    ));
                    let mut v = StabilityVerdict::new(VerdictKind::Inconclusive);
                    v.assertions = assertions;
                    v.evidence = evidence;
                    v.resources = resources;
                    v
                }
            }
        }
    }
}
