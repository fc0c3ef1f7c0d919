//! Algebra of distance distribution functions.
//!
//! A distribution function here is non-decreasing, left-continuous, `0` at
//! `-inf` and `1` at `+inf` (both by the extended-real evaluation contract,
//! independent of the limits as `t` tends to either end). The toolkit keeps
//! them in a closed tagged union so that evaluation, left limits, pointwise
//! minima and pointwise order all have closed forms:
//!
//! * [`DistributionFn::StepAt`] — the unit step `e_a`: `0` for `t <= a`,
//!   `1` for `t > a`.
//! * [`DistributionFn::StandardRatio`] — `t/(t+a)` above zero.
//! * [`DistributionFn::ScaledRatio`] — `c*t/(t+a)` above zero, the shape of
//!   radius rules whose limit is `c < 1`.
//! * [`DistributionFn::PiecewiseConstant`] — left-continuous staircase.
//! * [`DistributionFn::MinOf`] — pointwise minimum of incomparable parts.
//!
//! Constructors canonicalize boundary parameters: `ratio(0)` becomes
//! `StepAt(0)`, `ratio(inf)` becomes `StepAt(inf)` (identically zero on the
//! finite line), `scaled(1, a)` becomes `ratio(a)` and so on. Pointwise
//! minima are flattened and simplified whenever the operands are comparable
//! in closed form; staircase operands are merged exactly.
//!
//! Order queries use the closed-form comparison where one exists and are
//! otherwise certified on a grid (the caller's grid joined with the
//! canonical grid of both operands: their breakpoints, midpoints between
//! them, and sentinels on both ends). Closed-form numeric comparisons use
//! [`CLOSED_FORM_TOL`], grid certification uses [`SAMPLED_TOL`].

use crate::{Error, Result};

/// Tolerance for closed-form probability and parameter comparisons.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

/// Tolerance for grid-certified (sampled) probability comparisons.
pub const SAMPLED_TOL: f64 = 1e-9;

/// Distance distribution function in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionFn {
    /// Unit step at `a`: `0` for `t <= a`, `1` for `t > a`. `a` may be
    /// `-inf` (the maximal function, `1` on the finite line) or `+inf`
    /// (identically `0` on the finite line).
    StepAt(f64),
    /// `t/(t+a)` for `t > 0`, else `0`. Canonical with `0 < a < inf`.
    StandardRatio(f64),
    /// `scale*t/(t+area)` for `t > 0`, else `0`. Canonical with
    /// `0 < scale < 1` and `0 < area < inf`.
    ScaledRatio { scale: f64, area: f64 },
    /// Left-continuous staircase: value `v_i` on `(t_i, t_{i+1}]`, `0` at or
    /// below the first breakpoint. Canonical: finite strictly increasing
    /// `t_i`, strictly increasing `v_i` in `(0, 1]`, never empty and never
    /// the single-step `(t, 1)` shape (those normalize to `StepAt`).
    PiecewiseConstant(Vec<(f64, f64)>),
    /// Pointwise minimum of parts none of which dominates another in closed
    /// form. Never nested, never shorter than two parts.
    MinOf(Vec<DistributionFn>),
}

use DistributionFn::*;

/// Unit step at `a`. Accepts the infinities; rejects NaN.
pub fn step_at(a: f64) -> DistributionFn {
    assert!(!a.is_nan(), "step position must not be NaN");
    StepAt(a)
}

/// `e_a` from the classical notation; the canonical certainty-at-`a`
/// distribution. Intended for finite `a`.
pub fn epsilon(a: f64) -> DistributionFn {
    debug_assert!(a.is_finite(), "epsilon expects a finite position");
    step_at(a)
}

/// The ratio family member `t/(t+a)`. Requires `a >= 0`; `a = 0` collapses
/// to `StepAt(0)` and `a = +inf` to `StepAt(+inf)`.
pub fn standard_ratio(a: f64) -> DistributionFn {
    assert!(!a.is_nan() && a >= 0.0, "ratio area must be nonnegative");
    if a == 0.0 {
        StepAt(0.0)
    } else if a.is_infinite() {
        StepAt(f64::INFINITY)
    } else {
        StandardRatio(a)
    }
}

/// The capped ratio `scale*t/(t+area)`. `scale` must lie in `[0, 1]`,
/// `area` in `[0, +inf]`. Boundary parameters canonicalize into the other
/// variants.
pub fn scaled_ratio(scale: f64, area: f64) -> Result<DistributionFn> {
    if !(0.0..=1.0).contains(&scale) || scale.is_nan() {
        return Err(Error::OutOfRange {
            name: "scale",
            requirement: "within [0, 1]",
            value: scale,
        });
    }
    if a_is_invalid(area) {
        return Err(Error::OutOfRange {
            name: "area",
            requirement: "nonnegative",
            value: area,
        });
    }
    Ok(if scale == 0.0 || area.is_infinite() {
        StepAt(f64::INFINITY)
    } else if scale == 1.0 {
        standard_ratio(area)
    } else if area == 0.0 {
        PiecewiseConstant(vec![(0.0, scale)])
    } else {
        ScaledRatio { scale, area }
    })
}

fn a_is_invalid(a: f64) -> bool {
    a.is_nan() || a < 0.0
}

/// Left-continuous staircase from `(breakpoint, value)` pairs. Breakpoints
/// must be finite and strictly increasing, values within `[0, 1]` and
/// non-decreasing. The result is canonicalized (zero-valued steps dropped,
/// equal consecutive values merged, degenerate shapes collapsed).
pub fn piecewise_constant(breakpoints: Vec<(f64, f64)>) -> Result<DistributionFn> {
    for &(t, v) in &breakpoints {
        if !t.is_finite() {
            return Err(Error::InvalidBreakpoints("breakpoints must be finite"));
        }
        if !(0.0..=1.0).contains(&v) || v.is_nan() {
            return Err(Error::InvalidBreakpoints("values must lie in [0, 1]"));
        }
    }
    for window in breakpoints.windows(2) {
        if window[0].0 >= window[1].0 {
            return Err(Error::InvalidBreakpoints(
                "breakpoints must be strictly increasing",
            ));
        }
        if window[0].1 > window[1].1 {
            return Err(Error::InvalidBreakpoints("values must be non-decreasing"));
        }
    }
    Ok(canonical_pwc(breakpoints))
}

/// Canonicalizes a validated staircase: drops zero steps, merges repeats,
/// and collapses the empty and single-full-step shapes.
fn canonical_pwc(breakpoints: Vec<(f64, f64)>) -> DistributionFn {
    let mut canon: Vec<(f64, f64)> = Vec::with_capacity(breakpoints.len());
    for (t, v) in breakpoints {
        if v == 0.0 {
            continue;
        }
        match canon.last() {
            Some(&(_, last_v)) if last_v == v => continue,
            _ => canon.push((t, v)),
        }
    }
    if canon.is_empty() {
        StepAt(f64::INFINITY)
    } else if canon.len() == 1 && canon[0].1 == 1.0 {
        StepAt(canon[0].0)
    } else {
        PiecewiseConstant(canon)
    }
}

impl DistributionFn {
    /// Evaluates the function at an extended-real argument. The value at
    /// `-inf` is `0` and the value at `+inf` is `1` for every member of the
    /// union; those are the distribution-function boundary values, not the
    /// limits (see [`DistributionFn::limit_at_infinity`]).
    pub fn eval(&self, t: f64) -> f64 {
        if t.is_nan() {
            debug_assert!(false, "eval argument must not be NaN");
            return 0.0;
        }
        if t == f64::NEG_INFINITY {
            return 0.0;
        }
        if t == f64::INFINITY {
            return 1.0;
        }
        match self {
            StepAt(a) => {
                if t <= *a {
                    0.0
                } else {
                    1.0
                }
            }
            StandardRatio(a) => {
                if t <= 0.0 {
                    0.0
                } else {
                    t / (t + a)
                }
            }
            ScaledRatio { scale, area } => {
                if t <= 0.0 {
                    0.0
                } else {
                    scale * t / (t + area)
                }
            }
            PiecewiseConstant(bps) => {
                // Region (t_i, t_{i+1}] carries v_i, so the applicable step
                // is the last breakpoint strictly below t.
                let idx = bps.partition_point(|&(ti, _)| ti < t);
                if idx == 0 {
                    0.0
                } else {
                    bps[idx - 1].1
                }
            }
            MinOf(parts) => parts.iter().map(|p| p.eval(t)).fold(1.0, f64::min),
        }
    }

    /// Left limit at `t`. Undefined at `-inf`; at `+inf` this is the limit
    /// as `t` grows without bound.
    pub fn left_limit(&self, t: f64) -> Result<f64> {
        if t.is_nan() {
            debug_assert!(false, "left_limit argument must not be NaN");
            return Ok(0.0);
        }
        if t == f64::NEG_INFINITY {
            return Err(Error::LeftLimitAtNegInfinity);
        }
        if t == f64::INFINITY {
            return Ok(self.limit_at_infinity());
        }
        Ok(match self {
            StepAt(a) => {
                if t <= *a {
                    0.0
                } else {
                    1.0
                }
            }
            // The ratio shapes and staircases are left-continuous at every
            // finite point, so the left limit is the value.
            StandardRatio(_) | ScaledRatio { .. } | PiecewiseConstant(_) => self.eval(t),
            MinOf(parts) => parts
                .iter()
                .map(|p| p.left_limit(t))
                .try_fold(1.0f64, |acc, v| v.map(|v| acc.min(v)))?,
        })
    }

    /// Limit as `t` tends to `+inf` (over the finite line).
    pub fn limit_at_infinity(&self) -> f64 {
        match self {
            StepAt(a) => {
                if a.is_finite() || *a == f64::NEG_INFINITY {
                    1.0
                } else {
                    0.0
                }
            }
            StandardRatio(_) => 1.0,
            ScaledRatio { scale, .. } => *scale,
            PiecewiseConstant(bps) => bps.last().map_or(0.0, |&(_, v)| v),
            MinOf(parts) => parts
                .iter()
                .map(|p| p.limit_at_infinity())
                .fold(1.0, f64::min),
        }
    }

    /// Limit as `t` tends to `-inf` (over the finite line).
    pub fn limit_at_neg_infinity(&self) -> f64 {
        match self {
            StepAt(a) => {
                if *a == f64::NEG_INFINITY {
                    1.0
                } else {
                    0.0
                }
            }
            StandardRatio(_) | ScaledRatio { .. } | PiecewiseConstant(_) => 0.0,
            MinOf(parts) => parts
                .iter()
                .map(|p| p.limit_at_neg_infinity())
                .fold(1.0, f64::min),
        }
    }

    /// Pointwise minimum, flattened and simplified.
    pub fn pointwise_min(&self, other: &DistributionFn) -> DistributionFn {
        let mut parts = Vec::new();
        self.collect_parts(&mut parts);
        other.collect_parts(&mut parts);
        simplify_min(parts)
    }

    fn collect_parts(&self, out: &mut Vec<DistributionFn>) {
        match self {
            MinOf(parts) => parts.iter().for_each(|p| p.collect_parts(out)),
            other => out.push(other.clone()),
        }
    }

    /// Reparameterizes the argument axis: the result evaluates at `t` to
    /// `self.eval(t / k)`, for `k > 0`. This is the distribution of a
    /// `k`-scaled vector under the scaling axiom.
    pub fn scale_argument(&self, k: f64) -> Result<DistributionFn> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::OutOfRange {
                name: "argument scale",
                requirement: "finite and positive",
                value: k,
            });
        }
        Ok(match self {
            StepAt(a) => step_at(a * k),
            StandardRatio(a) => standard_ratio(a * k),
            ScaledRatio { scale, area } => scaled_ratio(*scale, area * k)?,
            PiecewiseConstant(bps) => {
                let scaled: Vec<(f64, f64)> = bps.iter().map(|&(t, v)| (t * k, v)).collect();
                piecewise_constant(scaled)?
            }
            MinOf(parts) => {
                let scaled: Result<Vec<_>> = parts.iter().map(|p| p.scale_argument(k)).collect();
                simplify_min(scaled?)
            }
        })
    }

    /// Finite abscissas that shape the function; used to build evaluation
    /// grids.
    pub fn knots(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_knots(&mut out);
        out
    }

    fn collect_knots(&self, out: &mut Vec<f64>) {
        match self {
            StepAt(a) => {
                if a.is_finite() {
                    out.push(*a);
                }
            }
            StandardRatio(a) => out.extend([0.0, *a]),
            ScaledRatio { area, .. } => out.extend([0.0, *area]),
            PiecewiseConstant(bps) => out.extend(bps.iter().map(|&(t, _)| t)),
            MinOf(parts) => parts.iter().for_each(|p| p.collect_knots(out)),
        }
    }

    /// True when the function vanishes on the whole finite line (canonical
    /// form `StepAt(+inf)`).
    pub fn is_zero_on_finite(&self) -> bool {
        matches!(self, StepAt(a) if *a == f64::INFINITY)
    }
}

/// Pointwise minimum of any number of parts.
pub fn min_of<I>(parts: I) -> DistributionFn
where
    I: IntoIterator<Item = DistributionFn>,
{
    let mut flat = Vec::new();
    for p in parts {
        p.collect_parts(&mut flat);
    }
    simplify_min(flat)
}

/// Simplifies a flat list of parts into canonical form. Exact comparisons
/// only: staircases merge exactly, ratio-family parts drop exactly dominated
/// members, cross-family domination uses the exact closed-form conditions.
fn simplify_min(parts: Vec<DistributionFn>) -> DistributionFn {
    assert!(!parts.is_empty(), "minimum of an empty family");
    // An identically-zero part absorbs the minimum.
    if parts.iter().any(DistributionFn::is_zero_on_finite) {
        return StepAt(f64::INFINITY);
    }
    // The maximal function is the identity for min.
    let mut live: Vec<DistributionFn> = parts
        .into_iter()
        .filter(|p| !matches!(p, StepAt(a) if *a == f64::NEG_INFINITY))
        .collect();
    if live.is_empty() {
        return StepAt(f64::NEG_INFINITY);
    }

    // Merge every staircase-representable part into one exact staircase.
    let mut staircase: Option<Vec<(f64, f64)>> = None;
    let mut rest: Vec<DistributionFn> = Vec::with_capacity(live.len());
    for part in live.drain(..) {
        match pwc_form(&part) {
            Some(bps) => {
                staircase = Some(match staircase {
                    None => bps,
                    Some(acc) => pwc_min_merge(&acc, &bps),
                });
            }
            None => rest.push(part),
        }
    }
    if let Some(bps) = staircase {
        match canonical_pwc(bps) {
            s if s.is_zero_on_finite() => return s,
            s => rest.push(s),
        }
    }

    // Drop any part exactly dominated by another (p <= q pointwise makes q
    // redundant inside a minimum).
    let mut keep: Vec<DistributionFn> = Vec::with_capacity(rest.len());
    'outer: for (i, cand) in rest.iter().enumerate() {
        for (j, other) in rest.iter().enumerate() {
            if i == j {
                continue;
            }
            let dominated = matches!(try_leq_exact(other, cand), Some(true));
            // On mutual domination (pointwise equality) keep the earliest.
            let tie_break = matches!(try_leq_exact(cand, other), Some(true)) && j < i;
            if dominated && (!matches!(try_leq_exact(cand, other), Some(true)) || tie_break) {
                continue 'outer;
            }
        }
        keep.push(cand.clone());
    }

    keep.sort_by(cmp_canonical);
    if keep.len() == 1 {
        keep.pop().unwrap()
    } else {
        MinOf(keep)
    }
}

/// Staircase representation for the step-like variants.
fn pwc_form(df: &DistributionFn) -> Option<Vec<(f64, f64)>> {
    match df {
        StepAt(a) if a.is_finite() => Some(vec![(*a, 1.0)]),
        PiecewiseConstant(bps) => Some(bps.clone()),
        _ => None,
    }
}

/// Value of a staircase on the region just above `t`.
fn pwc_value_above(bps: &[(f64, f64)], t: f64) -> f64 {
    let idx = bps.partition_point(|&(ti, _)| ti <= t);
    if idx == 0 {
        0.0
    } else {
        bps[idx - 1].1
    }
}

/// Exact pointwise minimum of two staircases.
fn pwc_min_merge(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut ts: Vec<f64> = a.iter().chain(b.iter()).map(|&(t, _)| t).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts.into_iter()
        .map(|t| (t, pwc_value_above(a, t).min(pwc_value_above(b, t))))
        .collect()
}

/// Canonical ordering used to keep `MinOf` part lists deterministic.
fn cmp_canonical(a: &DistributionFn, b: &DistributionFn) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    fn rank(df: &DistributionFn) -> u8 {
        match df {
            StepAt(_) => 0,
            StandardRatio(_) => 1,
            ScaledRatio { .. } => 2,
            PiecewiseConstant(_) => 3,
            MinOf(_) => 4,
        }
    }
    rank(a).cmp(&rank(b)).then_with(|| match (a, b) {
        (StepAt(x), StepAt(y)) => x.total_cmp(y),
        (StandardRatio(x), StandardRatio(y)) => x.total_cmp(y),
        (
            ScaledRatio { scale: c1, area: a1 },
            ScaledRatio { scale: c2, area: a2 },
        ) => c1.total_cmp(c2).then(a1.total_cmp(a2)),
        (PiecewiseConstant(xs), PiecewiseConstant(ys)) => {
            for (&(t1, v1), &(t2, v2)) in xs.iter().zip(ys.iter()) {
                let ord = t1.total_cmp(&t2).then(v1.total_cmp(&v2));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            xs.len().cmp(&ys.len())
        }
        _ => Ordering::Equal,
    })
}

/// Ratio-family view `(scale, area)`; `StandardRatio` is scale 1.
fn ratio_params(df: &DistributionFn) -> Option<(f64, f64)> {
    match df {
        StandardRatio(a) => Some((1.0, *a)),
        ScaledRatio { scale, area } => Some((*scale, *area)),
        _ => None,
    }
}

/// Closed-form pointwise order with zero tolerance, used during
/// simplification where only exact domination may discard a part.
fn try_leq_exact(f: &DistributionFn, g: &DistributionFn) -> Option<bool> {
    try_leq_with_tol(f, g, 0.0)
}

/// Closed-form pointwise order with the standard closed-form tolerance.
pub(crate) fn try_leq(f: &DistributionFn, g: &DistributionFn) -> Option<bool> {
    try_leq_with_tol(f, g, CLOSED_FORM_TOL)
}

fn ge_tol(x: f64, y: f64, tol: f64) -> bool {
    x >= y - tol * x.abs().max(y.abs()).max(1.0)
}

fn le_tol(x: f64, y: f64, tol: f64) -> bool {
    x <= y + tol * x.abs().max(y.abs()).max(1.0)
}

/// Decides `f <= g` pointwise when both shapes admit a closed form.
/// `None` means the order must be certified on a grid.
fn try_leq_with_tol(f: &DistributionFn, g: &DistributionFn, tol: f64) -> Option<bool> {
    if f == g {
        return Some(true);
    }
    if f.is_zero_on_finite() {
        return Some(true);
    }
    if g.is_zero_on_finite() {
        // Canonical nonzero shapes exceed zero somewhere; a canonical MinOf
        // has no identically-zero part and its zero set is bounded above.
        return Some(false);
    }
    if matches!(g, StepAt(a) if *a == f64::NEG_INFINITY) {
        return Some(true);
    }
    if matches!(f, StepAt(a) if *a == f64::NEG_INFINITY) {
        // f is maximal; only the maximal function dominates it, and
        // structural equality was already handled.
        return Some(false);
    }

    // Minimum decompositions first.
    if let MinOf(parts) = g {
        let mut verdict = Some(true);
        for part in parts {
            match try_leq_with_tol(f, part, tol) {
                Some(true) => {}
                Some(false) => return Some(false),
                None => verdict = None,
            }
        }
        return verdict;
    }
    if let MinOf(parts) = f {
        // min(parts) <= g holds if any single part does; otherwise the
        // closed forms cannot decide.
        for part in parts {
            if matches!(try_leq_with_tol(part, g, tol), Some(true)) {
                return Some(true);
            }
        }
        return None;
    }

    match (f, g) {
        (StepAt(a), StepAt(b)) => Some(ge_tol(*a, *b, tol)),
        (StepAt(_), StandardRatio(_) | ScaledRatio { .. }) => {
            // A finite step reaches 1 while the ratio shapes stay below it.
            Some(false)
        }
        (StandardRatio(_) | ScaledRatio { .. }, StepAt(b)) => Some(*b <= 0.0),
        (PiecewiseConstant(_) | StepAt(_), PiecewiseConstant(_) | StepAt(_)) => {
            let fb = pwc_form(f).expect("step-like");
            let gb = pwc_form(g).expect("step-like");
            let mut ts: Vec<f64> = fb.iter().chain(gb.iter()).map(|&(t, _)| t).collect();
            ts.sort_by(f64::total_cmp);
            ts.dedup();
            Some(ts.into_iter().all(|t| {
                le_tol(pwc_value_above(&fb, t), pwc_value_above(&gb, t), tol)
            }))
        }
        (lhs, rhs) => match (ratio_params(lhs), ratio_params(rhs)) {
            (Some((c1, a1)), Some((c2, a2))) => {
                // c1*t/(t+a1) <= c2*t/(t+a2) for all t > 0 iff c1 <= c2 and
                // c1*a2 <= c2*a1.
                Some(le_tol(c1, c2, tol) && le_tol(c1 * a2, c2 * a1, tol))
            }
            (Some((c, a)), None) => {
                // Ratio below a staircase: the supremum of the ratio over
                // each region must stay below the region value.
                let gb = pwc_form(rhs)?;
                let ratio = |t: f64| if t <= 0.0 { 0.0 } else { c * t / (t + a) };
                let mut ok = gb.first().is_some_and(|&(t1, _)| t1 <= 0.0);
                for w in gb.windows(2) {
                    ok &= le_tol(ratio(w[1].0), w[0].1, tol);
                }
                if let Some(&(_, v_last)) = gb.last() {
                    ok &= le_tol(c, v_last, tol);
                }
                Some(ok)
            }
            (None, Some((c, a))) => {
                // Staircase below a ratio: each region value must stay below
                // the infimum of the ratio over the region, reached at its
                // left end.
                let fb = pwc_form(lhs)?;
                let ratio = |t: f64| if t <= 0.0 { 0.0 } else { c * t / (t + a) };
                Some(fb.iter().all(|&(t, v)| le_tol(v, ratio(t), tol)))
            }
            (None, None) => None,
        },
    }
}

/// Structured evaluation grid covering every feature of both operands:
/// their knots, midpoints between consecutive knots, the origin and unit
/// probes, and sentinels below and far above the knot range.
pub fn canonical_grid(f: &DistributionFn, g: &DistributionFn) -> Vec<f64> {
    let mut pts = f.knots();
    pts.extend(g.knots());
    pts.extend([0.0, 1.0]);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut grid = pts.clone();
    for w in pts.windows(2) {
        grid.push(0.5 * (w[0] + w[1]));
    }
    let lo = pts.first().copied().unwrap_or(0.0);
    let hi = pts.last().copied().unwrap_or(0.0);
    grid.extend([lo - 1.0, -1024.0, hi + 1.0, 1024.0, 1_048_576.0]);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Certified pointwise order `f <= g`. The closed-form comparison decides
/// whenever both shapes admit one; otherwise the order is checked on the
/// caller's grid joined with the canonical grid of the operands, within
/// [`SAMPLED_TOL`].
pub fn leq(f: &DistributionFn, g: &DistributionFn, grid: &[f64]) -> bool {
    if let Some(verdict) = try_leq(f, g) {
        return verdict;
    }
    let mut pts = canonical_grid(f, g);
    pts.extend(grid.iter().copied().filter(|t| !t.is_nan()));
    pts.iter()
        .all(|&t| f.eval(t) <= g.eval(t) + SAMPLED_TOL)
}

/// Certified pointwise equality on the joined grids.
pub fn pointwise_eq(f: &DistributionFn, g: &DistributionFn, grid: &[f64]) -> bool {
    leq(f, g, grid) && leq(g, f, grid)
}

/// Membership flags for the classical distribution-function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DfClass {
    /// Valid distribution function (0 at -inf, 1 at +inf, monotone,
    /// left-continuous). True for every canonical value by construction.
    pub in_delta: bool,
    /// Vanishes at the origin.
    pub in_delta_plus: bool,
    /// Proper: limits 0 and 1 at the two ends.
    pub in_d: bool,
    /// Proper and vanishing at the origin.
    pub in_d_plus: bool,
}

/// Classifies a distribution function into Delta / Delta+ / D / D+.
pub fn classify_df(f: &DistributionFn) -> DfClass {
    let at_zero = f.eval(0.0);
    let lim_lo = f.limit_at_neg_infinity();
    let lim_hi = f.limit_at_infinity();
    let in_delta_plus = at_zero == 0.0;
    let in_d = lim_lo == 0.0 && lim_hi == 1.0;
    DfClass {
        in_delta: true,
        in_delta_plus,
        in_d,
        in_d_plus: in_delta_plus && lim_hi == 1.0,
    }
}

impl std::fmt::Display for DistributionFn {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StepAt(a) => write!(out, "step({a:?})"),
            StandardRatio(a) => write!(out, "ratio({a:?})"),
            ScaledRatio { scale, area } => write!(out, "scaled_ratio({scale:?},{area:?})"),
            PiecewiseConstant(bps) => {
                write!(out, "pwc[")?;
                for (i, (t, v)) in bps.iter().enumerate() {
                    if i > 0 {
                        write!(out, ",")?;
                    }
                    write!(out, "({t:?},{v:?})")?;
                }
                write!(out, "]")
            }
            MinOf(parts) => {
                write!(out, "min[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(out, ",")?;
                    }
                    write!(out, "{p}")?;
                }
                write!(out, "]")
            }
        }
    }
}
