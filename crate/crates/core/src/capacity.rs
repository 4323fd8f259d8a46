//! Capacity region bounds in exact rationals.
//!
//! Three families bound the message rate `lambda0` as a function of the SR
//! rate `lambdaB`: the cut-set line, the unlimited-assistance line and (in
//! Case 3, inner bound only) the `R_1` line. Inner and outer curves coincide
//! in Cases 1 and 2 and outside the open interval of Case 3.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::codes::{rational_to_string, ratio, Params, Rational};
use crate::error::{Error, Result};

pub type RegionParams = Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    Case1,
    Case2,
    Case3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatePoint {
    pub lambda0: Rational,
    pub lambda_b: Rational,
}

impl RatePoint {
    pub fn new(lambda0: Rational, lambda_b: Rational) -> Self {
        RatePoint { lambda0, lambda_b }
    }
}

/// Position of `lambda0` against the two curves at the queried `lambdaB`.
///
/// Points strictly above the inner curve but not above the outer one are
/// `OpenGap`, including those on the outer curve: whether they are
/// achievable is unknown. Whether the point sits on the outer curve is
/// reported separately in [`MembershipVerdict::on_outer_boundary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    InsideInner,
    OnInnerBoundary,
    OpenGap,
    OutsideOuter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub status: Status,
    pub on_outer_boundary: bool,
    pub inner_cap: Rational,
    pub outer_cap: Rational,
}

impl MembershipVerdict {
    /// Achievable by the inner bound.
    pub fn achievable(&self) -> bool {
        matches!(self.status, Status::InsideInner | Status::OnInnerBoundary)
    }
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

fn pos(x: i64) -> Rational {
    Rational::from_integer(x.max(0))
}

/// `N_B = 0` counts as Case 1, `N = K = 0` as Case 2.
pub fn case_of(p: Params) -> Case {
    if 2 * p.kb <= p.nb {
        Case::Case1
    } else if 2 * p.k >= p.n {
        Case::Case2
    } else {
        Case::Case3
    }
}

/// `max(2K - N, 0) + lambdaB * max(2K_B - N_B, 0)`.
pub fn cut_bound(p: Params, lambda_b: Rational) -> Rational {
    pos(2 * p.k as i64 - p.n as i64) + lambda_b * pos(2 * p.kb as i64 - p.nb as i64)
}

/// `min(N, 2K) - min(N - K, K) * N_B / K_B`; may be negative.
pub fn inf_bound(p: Params) -> Result<Rational> {
    if p.kb == 0 {
        return Err(Error::UndefinedForZeroKB);
    }
    Ok(int(p.n.min(2 * p.k)) - int((p.n - p.k).min(p.k)) * ratio(p.nb as i64, p.kb as i64))
}

/// `K(2K_B - N_B) ((N - 2K) + N_B lambdaB) / ((N - 2K) 2K_B + K N_B)`.
pub fn r1_bound(p: Params, lambda_b: Rational) -> Result<Rational> {
    if case_of(p) != Case::Case3 {
        return Err(Error::CaseMismatch(format!("R_1 applies to Case 3 only, {p} is not")));
    }
    let (n, k, nb, kb) = (p.n as i64, p.k as i64, p.nb as i64, p.kb as i64);
    let num = Rational::from_integer(k * (2 * kb - nb))
        * (Rational::from_integer(n - 2 * k) + Rational::from_integer(nb) * lambda_b);
    Ok(num / Rational::from_integer((n - 2 * k) * 2 * kb + k * nb))
}

fn clamp(x: Rational) -> Rational {
    if x < Rational::zero() {
        Rational::zero()
    } else {
        x
    }
}

pub fn outer_capacity(p: Params, lambda_b: Rational) -> Rational {
    let cut = cut_bound(p, lambda_b);
    match case_of(p) {
        Case::Case1 => clamp(cut),
        _ => clamp(cut.min(inf_bound(p).expect("K_B > 0 outside Case 1"))),
    }
}

pub fn inner_capacity(p: Params, lambda_b: Rational) -> Rational {
    let outer = outer_capacity(p, lambda_b);
    match case_of(p) {
        Case::Case3 => clamp(outer.min(r1_bound(p, lambda_b).expect("Case 3"))),
        _ => outer,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremePoint {
    pub point: RatePoint,
    pub label: String,
}

/// Corner points of the achievable region, `(lambda0, lambdaB)`.
pub fn extreme_points(p: Params) -> Vec<ExtremePoint> {
    let (n, k, nb, kb) = (p.n as i64, p.k as i64, p.nb as i64, p.kb as i64);
    let pt = |l0: Rational, lb: Rational, label: &str| ExtremePoint {
        point: RatePoint::new(l0, lb),
        label: label.to_string(),
    };
    let origin = pt(pos(2 * k - n), ratio(0, 1), "no assistance");
    match case_of(p) {
        Case::Case1 => vec![origin],
        Case::Case2 => vec![
            origin,
            pt(ratio(n * kb - (n - k) * nb, kb), ratio(n - k, kb), "capacity corner"),
        ],
        Case::Case3 => vec![
            origin,
            pt(ratio(k * (2 * kb - nb), 2 * kb), ratio(k, 2 * kb), "conjectured-optimal segment start"),
            pt(
                ratio(2 * k * (2 * kb - nb), 2 * kb),
                ratio(n - 2 * k, nb) + ratio(k, kb),
                "conjectured-optimal segment end",
            ),
        ],
    }
}

pub fn membership(p: Params, point: RatePoint) -> MembershipVerdict {
    let inner = inner_capacity(p, point.lambda_b);
    let outer = outer_capacity(p, point.lambda_b);
    let l0 = point.lambda0;
    let status = if l0 < inner {
        Status::InsideInner
    } else if l0 == inner {
        Status::OnInnerBoundary
    } else if l0 <= outer {
        Status::OpenGap
    } else {
        Status::OutsideOuter
    };
    MembershipVerdict {
        status,
        on_outer_boundary: l0 == outer,
        inner_cap: inner,
        outer_cap: outer,
    }
}

/// One sample of both curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundarySample {
    pub lambda_b: Rational,
    pub inner: Rational,
    pub outer: Rational,
}

/// `lambdaB` values where some bound changes slope.
pub fn breakpoints(p: Params) -> Vec<Rational> {
    let (n, k, nb, kb) = (p.n as i64, p.k as i64, p.nb as i64, p.kb as i64);
    let mut pts = BTreeSet::new();
    pts.insert(Rational::zero());
    if kb > 0 && case_of(p) != Case::Case1 {
        pts.insert(ratio(n - k, kb));
        if case_of(p) == Case::Case3 {
            pts.insert(ratio(k, 2 * kb));
            pts.insert(ratio(n - 2 * k, nb) + ratio(k, kb));
        }
        // cut meets the unlimited-assistance line
        let slope = 2 * kb - nb;
        let inf = inf_bound(p).expect("K_B > 0");
        let x = (inf - pos(2 * k - n)) / Rational::from_integer(slope);
        if x >= Rational::zero() {
            pts.insert(x);
        }
    }
    pts.into_iter().collect()
}

/// Exact corners plus `n_points` evenly spaced samples on
/// `[0, 1.25 * last corner]` (or `[0, 1]` without corners).
pub fn boundary_samples(p: Params, n_points: usize) -> Result<Vec<BoundarySample>> {
    if n_points < 2 {
        return Err(Error::InvalidParams("need at least 2 sample points".into()));
    }
    let corners = breakpoints(p);
    let last = *corners.last().expect("zero is always present");
    let top = if last.is_zero() { ratio(1, 1) } else { last * ratio(5, 4) };
    let mut xs: BTreeSet<Rational> = corners.into_iter().collect();
    for i in 0..n_points {
        xs.insert(top * ratio(i as i64, n_points as i64 - 1));
    }
    Ok(xs
        .into_iter()
        .map(|lb| BoundarySample {
            lambda_b: lb,
            inner: inner_capacity(p, lb),
            outer: outer_capacity(p, lb),
        })
        .collect())
}

pub fn samples_to_csv(samples: &[BoundarySample]) -> String {
    let mut out = String::from("lambdaB,inner_lambda0,outer_lambda0\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{}\n",
            rational_to_string(&s.lambda_b),
            rational_to_string(&s.inner),
            rational_to_string(&s.outer)
        ));
    }
    out
}

fn decimal(r: &Rational) -> String {
    format!("{:.6}", r.numer().to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0))
}

pub fn samples_to_json(p: Params, samples: &[BoundarySample]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = samples
        .iter()
        .map(|s| {
            serde_json::json!({
                "lambdaB": rational_to_string(&s.lambda_b),
                "inner_lambda0": rational_to_string(&s.inner),
                "outer_lambda0": rational_to_string(&s.outer),
                "lambdaB_decimal": decimal(&s.lambda_b),
                "inner_lambda0_decimal": decimal(&s.inner),
                "outer_lambda0_decimal": decimal(&s.outer),
            })
        })
        .collect();
    let extremes: Vec<serde_json::Value> = extreme_points(p)
        .iter()
        .map(|e| {
            serde_json::json!({
                "lambda0": rational_to_string(&e.point.lambda0),
                "lambdaB": rational_to_string(&e.point.lambda_b),
                "label": e.label,
            })
        })
        .collect();
    serde_json::json!({
        "format_version": crate::codes::FORMAT_VERSION,
        "params": {"N": p.n, "K": p.k, "N_B": p.nb, "K_B": p.kb},
        "case": case_of(p),
        "extreme_points": extremes,
        "samples": rows,
    })
}
