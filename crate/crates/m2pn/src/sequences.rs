//! Finite-horizon convergence and convex-series analysis.
//!
//! Limits are not decidable from finitely many terms, so every analyzer
//! here returns an explicit verdict: either a certified index `n0` such
//! that the probe succeeds for every later index within the horizon, or an
//! exhaustion report. A certificate is a statement about the inspected
//! prefix, nothing more; the closed-form sequence family makes the
//! certified `n0` exact for the ratio family because the success test is
//! evaluated in cross-multiplied form rather than through a rounded
//! quotient.
//!
//! The convex-series half implements weighted partial sums, head and tail
//! masses (closed-form for the geometric family `2^-n`), tail
//! renormalization, the blockwise min-chain inequality, series convergence
//! with a limit estimate, and the closed-set membership probe for
//! polytopes.

use crate::dfalgebra::SAMPLED_TOL;
use crate::geometry::{two_norm, Point};
use crate::space::Prob2Norm;
use crate::{Error, Result};

/// Outcome of a finite-horizon certification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every probed index strictly beyond this one succeeded, up to the
    /// horizon. The reported index is at least 1.
    CertifiedAt(usize),
    /// The probe still failed at (or too close to) the horizon; nothing is
    /// certified.
    Exhausted { horizon: usize },
}

impl Verdict {
    pub fn certified_index(&self) -> Option<usize> {
        match self {
            Verdict::CertifiedAt(n) => Some(*n),
            Verdict::Exhausted { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::CertifiedAt(_))
    }

    /// Same outcome kind, ignoring the index.
    pub fn same_kind(&self, other: &Verdict) -> bool {
        self.is_certified() == other.is_certified()
    }
}

/// Closed-form or explicit sequence of points with a fixed horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceRule {
    form: SeqForm,
    horizon: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum SeqForm {
    /// `x_n = limit + (1/n) * dir`.
    AffineInvN { limit: Point, dir: Point },
    /// 1-based explicit list covering the horizon.
    Explicit(Vec<Point>),
}

impl SequenceRule {
    /// The family `x_n = limit + (1/n) * dir`.
    pub fn affine_inv_n(limit: Point, dir: Point, horizon: usize) -> Result<Self> {
        if limit.dim() != dir.dim() {
            return Err(Error::DimensionMismatch {
                expected: limit.dim(),
                got: dir.dim(),
            });
        }
        if horizon == 0 {
            return Err(Error::PreconditionViolated("horizon must be at least 1"));
        }
        Ok(SequenceRule {
            form: SeqForm::AffineInvN { limit, dir },
            horizon,
        })
    }

    /// Explicit terms; the horizon is the list length.
    pub fn explicit(points: Vec<Point>) -> Result<Self> {
        let horizon = points.len();
        if horizon == 0 {
            return Err(Error::EmptyInput("sequence points"));
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: points.iter().map(Point::dim).find(|&d| d != dim).unwrap_or(dim),
            });
        }
        Ok(SequenceRule {
            form: SeqForm::Explicit(points),
            horizon,
        })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn dim(&self) -> usize {
        match &self.form {
            SeqForm::AffineInvN { limit, .. } => limit.dim(),
            SeqForm::Explicit(points) => points[0].dim(),
        }
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n < 1 || n > self.horizon {
            return Err(Error::IndexOutOfBounds {
                index: n,
                horizon: self.horizon,
            });
        }
        Ok(())
    }

    /// The term `x_n`, 1-based.
    pub fn point_at(&self, n: usize) -> Result<Point> {
        self.check_index(n)?;
        match &self.form {
            SeqForm::AffineInvN { limit, dir } => {
                limit.try_add(&dir.scale(1.0 / n as f64))
            }
            SeqForm::Explicit(points) => Ok(points[n - 1].clone()),
        }
    }

    /// `x_n - x`. When `x` coincides with the closed-form limit this skips
    /// the add-then-subtract round trip, so the offset magnitude `1/n` is
    /// exact to one rounding; the certified indices of the ratio family
    /// depend on that.
    pub fn offset_from(&self, x: &Point, n: usize) -> Result<Point> {
        self.check_index(n)?;
        match &self.form {
            SeqForm::AffineInvN { limit, dir } if limit == x => {
                Ok(dir.scale(1.0 / n as f64))
            }
            _ => self.point_at(n)?.try_sub(x),
        }
    }

    /// `x_m - x_n`, closed-form for the affine family.
    pub fn offset_between(&self, n: usize, m: usize) -> Result<Point> {
        self.check_index(n)?;
        self.check_index(m)?;
        match &self.form {
            SeqForm::AffineInvN { dir, .. } => {
                Ok(dir.scale(1.0 / m as f64 - 1.0 / n as f64))
            }
            SeqForm::Explicit(points) => points[m - 1].try_sub(&points[n - 1]),
        }
    }
}

fn validate_probe(t: f64, alpha: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::OutOfRange {
            name: "t",
            requirement: "finite and positive",
            value: t,
        });
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::OutOfRange {
            name: "alpha",
            requirement: "strictly inside (0, 1)",
            value: alpha,
        });
    }
    Ok(())
}

/// Success test `nu[diff, z](t) > 1 - alpha`, in closed form where the
/// family allows it. The ratio family is decided by the cross-multiplied
/// inequality `t*(1-level) > level*area` with `level = 1 - alpha`, which
/// avoids the rounded quotient. The level is materialized first because
/// boundary terms sit exactly at the level: for decimal alphas the level
/// rounds upward, so an exact tie such as area `1/9` against alpha `0.1`
/// at `t = 1` counts as a violation, matching the rational reading of the
/// parameters. The step family reduces to `t > area`.
fn meets_level(
    space: &Prob2Norm,
    diff: &Point,
    z: &Point,
    t: f64,
    alpha: f64,
) -> Result<bool> {
    match space {
        Prob2Norm::Standard { .. } => {
            let area = two_norm(diff, z)?;
            if area == 0.0 {
                // Dependent offset: the distribution is the full jump at
                // zero and meets every level below one.
                return Ok(true);
            }
            let level = 1.0 - alpha;
            Ok(t * (1.0 - level) > level * area)
        }
        Prob2Norm::Indicator { .. } => Ok(t > two_norm(diff, z)?),
        Prob2Norm::Custom { .. } => Ok(space.nu(diff, z)?.eval(t) > 1.0 - alpha),
    }
}

/// Convergence certification: the least `n0` such that for every
/// `n` in `(n0, horizon]` and every witness `z`,
/// `nu[x_n - x, z](t) > 1 - alpha`. A violation at the horizon itself
/// exhausts the sweep.
pub fn converges_to(
    space: &Prob2Norm,
    seq: &SequenceRule,
    x: &Point,
    witnesses: &[Point],
    t: f64,
    alpha: f64,
) -> Result<Verdict> {
    if witnesses.is_empty() {
        return Err(Error::EmptyInput("witnesses"));
    }
    validate_probe(t, alpha)?;
    let mut last_violation = 0usize;
    for n in 1..=seq.horizon {
        let offset = seq.offset_from(x, n)?;
        for z in witnesses {
            if !meets_level(space, &offset, z, t, alpha)? {
                last_violation = n;
                break;
            }
        }
    }
    Ok(finish_verdict(last_violation, seq.horizon, seq.horizon))
}

/// Cauchy certification: the least `n0` such that every pair
/// `m > n > n0` within the horizon meets the level for all witnesses.
/// Violations at index `horizon - 1` or later leave no certifiable pair.
pub fn is_cauchy(
    space: &Prob2Norm,
    seq: &SequenceRule,
    witnesses: &[Point],
    t: f64,
    alpha: f64,
) -> Result<Verdict> {
    if witnesses.is_empty() {
        return Err(Error::EmptyInput("witnesses"));
    }
    validate_probe(t, alpha)?;
    let horizon = seq.horizon;
    let mut last_violation = 0usize;
    for n in 1..horizon {
        'pairs: for m in (n + 1)..=horizon {
            let offset = seq.offset_between(n, m)?;
            for z in witnesses {
                if !meets_level(space, &offset, z, t, alpha)? {
                    last_violation = last_violation.max(n);
                    break 'pairs;
                }
            }
        }
    }
    // A violating pair (n, m) only rules out thresholds below n, so the
    // exhaustion boundary sits one index before the horizon.
    Ok(finish_verdict(last_violation, horizon.saturating_sub(1), horizon))
}

fn finish_verdict(last_violation: usize, exhaust_from: usize, horizon: usize) -> Verdict {
    if last_violation == 0 {
        Verdict::CertifiedAt(1)
    } else if last_violation >= exhaust_from {
        Verdict::Exhausted { horizon }
    } else {
        Verdict::CertifiedAt(last_violation)
    }
}

/// Paired verdicts of the two convergence criteria for the same sequence:
/// the plain 2-norm route (areas under a derived threshold) and the ratio
/// family route. The two must agree in kind; at an exact level boundary
/// the certified indices may differ by one rounding step, so only the kind
/// is contractual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub norm_verdict: Verdict,
    pub pnorm_verdict: Verdict,
    pub agree: bool,
}

/// Runs both convergence criteria over the sequence: (a) the 2-norm route,
/// `area(x_n - x, z) < t*alpha/(1-alpha)` for every witness, and (b) the
/// ratio-family route via [`converges_to`] on a standard space of the same
/// dimension.
pub fn lemma21_equivalence(
    seq: &SequenceRule,
    x: &Point,
    witnesses: &[Point],
    alpha: f64,
    t: f64,
) -> Result<EquivalenceReport> {
    if witnesses.is_empty() {
        return Err(Error::EmptyInput("witnesses"));
    }
    validate_probe(t, alpha)?;
    let threshold = t * alpha / (1.0 - alpha);
    let mut last_violation = 0usize;
    for n in 1..=seq.horizon {
        let offset = seq.offset_from(x, n)?;
        for z in witnesses {
            if two_norm(&offset, z)? >= threshold {
                last_violation = n;
                break;
            }
        }
    }
    let norm_verdict = finish_verdict(last_violation, seq.horizon, seq.horizon);

    let space = Prob2Norm::standard(seq.dim())?;
    let pnorm_verdict = converges_to(&space, seq, x, witnesses, t, alpha)?;
    Ok(EquivalenceReport {
        agree: norm_verdict.same_kind(&pnorm_verdict),
        norm_verdict,
        pnorm_verdict,
    })
}

/// Weight rule of a convex series.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule {
    /// `lambda_n = 2^-n`; total mass 1 in closed form.
    Geometric,
    /// Finite renormalized list; total mass 1 by construction.
    Explicit(Vec<f64>),
}

/// Point rule of a convex series.
#[derive(Debug, Clone, PartialEq)]
pub enum PointRule {
    /// Cycles through the list; a singleton list is a constant rule.
    Cycle(Vec<Point>),
    /// 1-based explicit list; must cover the horizon.
    Explicit(Vec<Point>),
}

impl PointRule {
    fn validate(&self, horizon: usize) -> Result<usize> {
        let points = match self {
            PointRule::Cycle(v) | PointRule::Explicit(v) => v,
        };
        if points.is_empty() {
            return Err(Error::EmptyInput("series points"));
        }
        if matches!(self, PointRule::Explicit(v) if v.len() < horizon) {
            return Err(Error::IndexOutOfBounds {
                index: horizon,
                horizon: points.len(),
            });
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: points
                    .iter()
                    .map(Point::dim)
                    .find(|&d| d != dim)
                    .unwrap_or(dim),
            });
        }
        Ok(dim)
    }

    fn at(&self, n: usize) -> &Point {
        match self {
            PointRule::Cycle(v) => &v[(n - 1) % v.len()],
            PointRule::Explicit(v) => &v[n - 1],
        }
    }

    fn shifted(&self, from: usize) -> PointRule {
        match self {
            PointRule::Cycle(v) => {
                let k = (from - 1) % v.len();
                let mut rotated = v[k..].to_vec();
                rotated.extend_from_slice(&v[..k]);
                PointRule::Cycle(rotated)
            }
            PointRule::Explicit(v) => PointRule::Explicit(v[from - 1..].to_vec()),
        }
    }

    fn distinct_points(&self, horizon: usize) -> Vec<&Point> {
        let points = match self {
            PointRule::Cycle(v) => &v[..v.len().min(horizon)],
            PointRule::Explicit(v) => &v[..horizon],
        };
        let mut out: Vec<&Point> = Vec::new();
        for p in points {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

/// A convex series: weights summing to one against a rule of points,
/// analyzed up to a horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSeries {
    weights: WeightRule,
    points: PointRule,
    horizon: usize,
    dim: usize,
}

impl ConvexSeries {
    /// Geometric weights `2^-n` up to the horizon.
    pub fn geometric(points: PointRule, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::PreconditionViolated("horizon must be at least 1"));
        }
        let dim = points.validate(horizon)?;
        Ok(ConvexSeries {
            weights: WeightRule::Geometric,
            points,
            horizon,
            dim,
        })
    }

    /// Explicit weights, renormalized to total mass one. The horizon is
    /// the weight count.
    pub fn explicit_weights(weights: Vec<f64>, points: PointRule) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyInput("weights"));
        }
        for &w in &weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::OutOfRange {
                    name: "weight",
                    requirement: "finite and non-negative",
                    value: w,
                });
            }
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroTailMass { from: 1 });
        }
        let horizon = weights.len();
        let dim = points.validate(horizon)?;
        Ok(ConvexSeries {
            weights: WeightRule::Explicit(weights.iter().map(|w| w / total).collect()),
            points,
            horizon,
            dim,
        })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point_at(&self, n: usize) -> Result<&Point> {
        self.check_index(n)?;
        Ok(self.points.at(n))
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n < 1 || n > self.horizon {
            return Err(Error::IndexOutOfBounds {
                index: n,
                horizon: self.horizon,
            });
        }
        Ok(())
    }

    /// `lambda_n`.
    pub fn weight(&self, n: usize) -> Result<f64> {
        self.check_index(n)?;
        Ok(match &self.weights {
            WeightRule::Geometric => 2f64.powi(-(n as i32)),
            WeightRule::Explicit(w) => w[n - 1],
        })
    }

    /// Head mass `alpha_n = sum of lambda_i for i <= n`; `1 - 2^-n` in
    /// closed form for the geometric family, exactly representable.
    pub fn head_weight(&self, n: usize) -> Result<f64> {
        self.check_index(n)?;
        Ok(match &self.weights {
            WeightRule::Geometric => 1.0 - 2f64.powi(-(n as i32)),
            WeightRule::Explicit(w) => w[..n].iter().sum(),
        })
    }

    /// Block mass `gamma_{n,m} = sum of lambda_i for n <= i <= m`, where
    /// `m = None` means the full tail. Geometric closed forms:
    /// `2^(-n+1) - 2^-m` and `2^(-n+1)`.
    pub fn tail_weight(&self, n: usize, m: Option<usize>) -> Result<f64> {
        self.check_index(n)?;
        if let Some(m) = m {
            if m < n {
                return Err(Error::PreconditionViolated("block needs n <= m"));
            }
            self.check_index(m)?;
        }
        Ok(match (&self.weights, m) {
            (WeightRule::Geometric, Some(m)) => {
                2f64.powi(-(n as i32) + 1) - 2f64.powi(-(m as i32))
            }
            (WeightRule::Geometric, None) => 2f64.powi(-(n as i32) + 1),
            (WeightRule::Explicit(w), Some(m)) => w[n - 1..m].iter().sum(),
            (WeightRule::Explicit(w), None) => w[n - 1..].iter().sum(),
        })
    }

    /// Mass not covered by the horizon; `2^-N` for the geometric family,
    /// zero for explicit weights.
    pub fn uncovered_mass(&self) -> f64 {
        match &self.weights {
            WeightRule::Geometric => 2f64.powi(-(self.horizon as i32)),
            WeightRule::Explicit(_) => 0.0,
        }
    }

    /// Weighted partial sum `y_n = sum of lambda_i * x_i for i <= n`.
    pub fn partial_sum(&self, n: usize) -> Result<Point> {
        self.check_index(n)?;
        let mut coords = vec![0.0; self.dim];
        for i in 1..=n {
            let w = self.weight(i)?;
            let p = self.points.at(i);
            for (acc, c) in coords.iter_mut().zip(p.coords()) {
                *acc += w * c;
            }
        }
        Point::new(coords)
    }

    /// The tail from `n` on, renormalized to total mass one. The geometric
    /// family renormalizes to itself over shifted points.
    pub fn renormalized_tail(&self, from: usize) -> Result<ConvexSeries> {
        self.check_index(from)?;
        match &self.weights {
            WeightRule::Geometric => Ok(ConvexSeries {
                weights: WeightRule::Geometric,
                points: self.points.shifted(from),
                horizon: self.horizon - from + 1,
                dim: self.dim,
            }),
            WeightRule::Explicit(w) => {
                let tail: Vec<f64> = w[from - 1..].to_vec();
                if tail.iter().sum::<f64>() <= 0.0 {
                    return Err(Error::ZeroTailMass { from });
                }
                ConvexSeries::explicit_weights(tail, self.points.shifted(from))
            }
        }
    }
}

/// Blockwise min-chain inequality: the distribution of the weighted block
/// sum at `t` dominates the worst member distribution at `t` over the
/// block mass. A `false` on an axiom-valid space would be a
/// counterexample.
pub fn chain_inequality_check(
    space: &Prob2Norm,
    series: &ConvexSeries,
    n: usize,
    m: usize,
    t: f64,
    z: &Point,
) -> Result<bool> {
    if m < n {
        return Err(Error::PreconditionViolated("block needs n <= m"));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::OutOfRange {
            name: "t",
            requirement: "finite and positive",
            value: t,
        });
    }
    let gamma = series.tail_weight(n, Some(m))?;
    if gamma <= 0.0 {
        return Err(Error::DegenerateBlockWeight { n, m });
    }
    let mut coords = vec![0.0; series.dim()];
    for i in n..=m {
        let w = series.weight(i)?;
        for (acc, c) in coords.iter_mut().zip(series.point_at(i)?.coords()) {
            *acc += w * c;
        }
    }
    let block = Point::new(coords)?;
    let lhs = space.nu(&block, z)?.eval(t);
    let arg = t / gamma;
    let mut bound = 1f64;
    for i in n..=m {
        bound = bound.min(space.nu(series.point_at(i)?, z)?.eval(arg));
    }
    Ok(lhs >= bound - SAMPLED_TOL)
}

/// Convex-series convergence: Cauchy certification of the partial-sum
/// sequence, plus the final partial sum as limit estimate and one
/// certificate value per witness (the worst tail-to-final distribution
/// value at `t` past the certified index).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOutcome {
    pub verdict: Verdict,
    pub limit_estimate: Option<Point>,
    pub certificates: Vec<f64>,
}

pub fn convex_series_converges(
    space: &Prob2Norm,
    series: &ConvexSeries,
    witnesses: &[Point],
    t: f64,
    alpha: f64,
) -> Result<SeriesOutcome> {
    if witnesses.is_empty() {
        return Err(Error::EmptyInput("witnesses"));
    }
    validate_probe(t, alpha)?;
    let horizon = series.horizon();
    let sums: Result<Vec<Point>> = (1..=horizon).map(|n| series.partial_sum(n)).collect();
    let sums = sums?;
    let seq = SequenceRule::explicit(sums.clone())?;
    let verdict = is_cauchy(space, &seq, witnesses, t, alpha)?;

    let Some(n0) = verdict.certified_index() else {
        return Ok(SeriesOutcome {
            verdict,
            limit_estimate: None,
            certificates: Vec::new(),
        });
    };
    let last = &sums[horizon - 1];
    let mut certificates = Vec::with_capacity(witnesses.len());
    for z in witnesses {
        let mut worst = 1f64;
        for sum_n in sums.iter().take(horizon - 1).skip(n0) {
            let diff = last.try_sub(sum_n)?;
            worst = worst.min(space.nu(&diff, z)?.eval(t));
        }
        certificates.push(worst);
    }
    Ok(SeriesOutcome {
        verdict,
        limit_estimate: Some(last.clone()),
        certificates,
    })
}

/// Distance from `y` to the convex hull of `vertices`. Exact for
/// singletons and segments in any dimension and for planar vertex lists;
/// higher-dimensional polytopes with three or more vertices are not
/// supported.
pub fn dist_to_polytope(y: &Point, vertices: &[Point]) -> Result<f64> {
    if vertices.is_empty() {
        return Err(Error::EmptyInput("vertices"));
    }
    let dim = vertices[0].dim();
    if y.dim() != dim || vertices.iter().any(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: y.dim(),
        });
    }
    // Collapse exact duplicates so degenerate lists reuse the simple cases.
    let mut distinct: Vec<&Point> = Vec::new();
    for v in vertices {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    match distinct.len() {
        1 => Ok(y.try_sub(distinct[0])?.euclid_norm()),
        2 => Ok(dist_to_segment(y, distinct[0], distinct[1])),
        _ if dim == 2 => Ok(dist_to_convex_polygon(y, &distinct)),
        _ => Err(Error::UnsupportedDescriptor(
            "polytope membership beyond segments needs a planar carrier",
        )),
    }
}

fn dist_to_segment(y: &Point, a: &Point, b: &Point) -> f64 {
    let ab: Vec<f64> = b
        .coords()
        .iter()
        .zip(a.coords())
        .map(|(bc, ac)| bc - ac)
        .collect();
    let ay: Vec<f64> = y
        .coords()
        .iter()
        .zip(a.coords())
        .map(|(yc, ac)| yc - ac)
        .collect();
    let len2: f64 = ab.iter().map(|c| c * c).sum();
    let s = if len2 == 0.0 {
        0.0
    } else {
        (ab.iter().zip(&ay).map(|(u, v)| u * v).sum::<f64>() / len2).clamp(0.0, 1.0)
    };
    ay.iter()
        .zip(&ab)
        .map(|(v, u)| (v - s * u) * (v - s * u))
        .sum::<f64>()
        .sqrt()
}

/// Monotone-chain convex hull, counter-clockwise, collinear points
/// dropped. Fully collinear input degenerates to its two endpoints.
fn convex_hull_2d(points: &[&Point]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let chain = |iter: &mut dyn Iterator<Item = (f64, f64)>| {
        let mut half: Vec<(f64, f64)> = Vec::new();
        for p in iter {
            while half.len() >= 2 && cross(half[half.len() - 2], half[half.len() - 1], p) <= 0.0 {
                half.pop();
            }
            half.push(p);
        }
        half.pop();
        half
    };
    let mut hull = chain(&mut pts.iter().copied());
    hull.extend(chain(&mut pts.iter().rev().copied()));
    hull
}

fn dist_to_convex_polygon(y: &Point, vertices: &[&Point]) -> f64 {
    let hull = convex_hull_2d(vertices);
    let p = (y[0], y[1]);
    if hull.len() == 1 {
        return ((p.0 - hull[0].0).powi(2) + (p.1 - hull[0].1).powi(2)).sqrt();
    }
    if hull.len() > 2 {
        let inside = hull.iter().enumerate().all(|(i, &a)| {
            let b = hull[(i + 1) % hull.len()];
            (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0
        });
        if inside {
            return 0.0;
        }
    }
    let seg = |a: (f64, f64), b: (f64, f64)| {
        let pa = Point::new(vec![a.0, a.1]).expect("planar vertex");
        let pb = Point::new(vec![b.0, b.1]).expect("planar vertex");
        dist_to_segment(y, &pa, &pb)
    };
    (0..hull.len())
        .map(|i| seg(hull[i], hull[(i + 1) % hull.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Outcome of the convex-series closed-set probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedProbeReport {
    pub verdict: Verdict,
    pub limit_estimate: Option<Point>,
    /// Distance from the limit estimate to the polytope, when certified.
    pub distance: Option<f64>,
    /// Membership allowance: sampling tolerance plus the mass the horizon
    /// leaves uncovered, scaled by the polytope size.
    pub tolerance: f64,
}

impl ClosedProbeReport {
    /// Non-convergence is reported distinctly and does not fail the probe;
    /// a certified limit outside the polytope does.
    pub fn passes(&self) -> bool {
        match self.distance {
            Some(d) => d <= self.tolerance,
            None => true,
        }
    }
}

/// Closed-set probe: when the series converges, its limit estimate must
/// lie in the polytope spanned by `vertices` (the series points must be
/// drawn from that polytope; this is validated first).
pub fn convex_series_closed_probe(
    space: &Prob2Norm,
    vertices: &[Point],
    series: &ConvexSeries,
    witnesses: &[Point],
    t: f64,
    alpha: f64,
) -> Result<ClosedProbeReport> {
    if vertices.is_empty() {
        return Err(Error::EmptyInput("vertices"));
    }
    let scale = vertices
        .iter()
        .map(Point::euclid_norm)
        .fold(0f64, f64::max);
    let member_tol = SAMPLED_TOL * scale.max(1.0);
    for p in series.points.distinct_points(series.horizon()) {
        if dist_to_polytope(p, vertices)? > member_tol {
            return Err(Error::PreconditionViolated(
                "series points must lie in the polytope",
            ));
        }
    }
    let outcome = convex_series_converges(space, series, witnesses, t, alpha)?;
    let tolerance = member_tol + series.uncovered_mass() * scale;
    let distance = match &outcome.limit_estimate {
        Some(y) => Some(dist_to_polytope(y, vertices)?),
        None => None,
    };
    Ok(ClosedProbeReport {
        verdict: outcome.verdict,
        limit_estimate: outcome.limit_estimate,
        distance,
        tolerance,
    })
}
