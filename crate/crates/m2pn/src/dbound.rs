//! Probabilistic radius and D-boundedness classification.
//!
//! A set is summarized by its radius: the left-continuous regularization
//! of the pairwise infimum `phi(t) = inf nu[x, y](t)`. Every distribution
//! in this crate is represented left-continuously, so the regularization
//! is the identity on the computed form and the radius is an ordinary
//! [`DistributionFn`]. Classification then reads two features off the
//! radius: whether the value 1 is attained at a finite point, and the
//! limit at infinity.
//!
//! Sets come in two flavors. Finite point lists are handled by exact
//! brute force over ordered pairs. Everything infinite enters as an
//! analytic descriptor: a caller-certified supremum of pairwise areas
//! together with the distribution family, or a custom radius rule given
//! directly as a distribution. This keeps all radius computations in
//! closed form while still reaching all four classes.

use crate::dfalgebra::{
    self, classify_df, min_of, DistributionFn, SAMPLED_TOL,
};
use crate::geometry::Point;
use crate::space::{validate_grid, Prob2Norm};
use crate::{Error, Result};

/// Shape of an analytic set's radius.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFamily {
    /// Ratio form `t / (t + area_sup)`.
    Standard,
    /// Unit jump just above `area_sup`.
    Indicator,
    /// The radius itself, supplied by the caller.
    CustomRadiusRule(DistributionFn),
}

/// A set of points, either listed or described.
#[derive(Debug, Clone, PartialEq)]
pub enum SetDescriptor {
    /// Non-empty list; all radius quantities are exact pair sweeps.
    FiniteSet(Vec<Point>),
    /// Caller-certified supremum of pairwise areas plus the family shape.
    /// Inside a [`PairSet`] the supremum is read as the certified
    /// cross-pair supremum instead.
    AnalyticSet { area_sup: f64, family: AnalyticFamily },
}

impl SetDescriptor {
    pub fn finite(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("set points"));
        }
        let dim = points[0].dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        Ok(SetDescriptor::FiniteSet(points))
    }

    /// `area_sup` may be `+inf` for unbounded descriptions.
    pub fn analytic(area_sup: f64, family: AnalyticFamily) -> Result<Self> {
        if area_sup.is_nan() || area_sup < 0.0 {
            return Err(Error::OutOfRange {
                name: "area_sup",
                requirement: "non-negative, possibly +inf",
                value: area_sup,
            });
        }
        Ok(SetDescriptor::AnalyticSet { area_sup, family })
    }

    /// Carrier dimension for listed sets; descriptors have none.
    pub fn dim(&self) -> Option<usize> {
        match self {
            SetDescriptor::FiniteSet(points) => Some(points[0].dim()),
            SetDescriptor::AnalyticSet { .. } => None,
        }
    }
}

fn family_radius(family: &AnalyticFamily, area_sup: f64) -> DistributionFn {
    match family {
        AnalyticFamily::Standard => dfalgebra::standard_ratio(area_sup),
        AnalyticFamily::Indicator => dfalgebra::step_at(area_sup),
        AnalyticFamily::CustomRadiusRule(r) => r.clone(),
    }
}

/// Pairwise infimum `inf nu[x, y](t)` over the set, at one argument.
/// Finite sets are swept exactly over all ordered pairs; the diagonal
/// pairs contribute the unit jump at zero. Extended-real arguments follow
/// the evaluation contract of [`DistributionFn`].
pub fn phi(a: &SetDescriptor, space: &Prob2Norm, t: f64) -> Result<f64> {
    match a {
        SetDescriptor::FiniteSet(points) => {
            // Diagonal pairs are dependent, so the sweep starts from the
            // unit jump's value.
            let mut inf: f64 = if t > 0.0 { 1.0 } else { 0.0 };
            for (i, x) in points.iter().enumerate() {
                for (j, y) in points.iter().enumerate() {
                    if i != j {
                        inf = inf.min(space.nu(x, y)?.eval(t));
                    }
                }
            }
            Ok(inf)
        }
        SetDescriptor::AnalyticSet { area_sup, family } => {
            Ok(family_radius(family, *area_sup).eval(t))
        }
    }
}

/// The probabilistic radius as a distribution. The representation is
/// left-continuous by construction, so no further regularization is
/// applied; `eval(+inf)` is 1 per the evaluation contract.
pub fn radius(a: &SetDescriptor, space: &Prob2Norm) -> Result<DistributionFn> {
    match a {
        SetDescriptor::FiniteSet(points) => {
            // The unit jump stands in for the diagonal pairs; it is the
            // maximal element, so it only matters for singletons.
            let mut parts = vec![dfalgebra::epsilon(0.0)];
            for (i, x) in points.iter().enumerate() {
                for (j, y) in points.iter().enumerate() {
                    if i != j {
                        parts.push(space.nu(x, y)?);
                    }
                }
            }
            Ok(min_of(parts))
        }
        SetDescriptor::AnalyticSet { area_sup, family } => {
            Ok(family_radius(family, *area_sup))
        }
    }
}

/// The four boundedness classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundClass {
    CertainlyBounded,
    PerhapsBounded,
    PerhapsUnbounded,
    CertainlyUnbounded,
}

impl BoundClass {
    pub fn is_d_bounded(self) -> bool {
        matches!(self, BoundClass::CertainlyBounded | BoundClass::PerhapsBounded)
    }

    /// Stable snake_case name, used verbatim in report output.
    pub fn label(self) -> &'static str {
        match self {
            BoundClass::CertainlyBounded => "certainly_bounded",
            BoundClass::PerhapsBounded => "perhaps_bounded",
            BoundClass::PerhapsUnbounded => "perhaps_unbounded",
            BoundClass::CertainlyUnbounded => "certainly_unbounded",
        }
    }
}

/// Classification outcome with its witnesses: the point where the radius
/// attains 1 (certainly bounded) or is first seen positive (perhaps
/// unbounded), and the limit of the radius at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: BoundClass,
    pub witness: Option<f64>,
    pub limit: f64,
}

impl Classification {
    pub fn is_d_bounded(&self) -> bool {
        self.class.is_d_bounded()
    }
}

/// Largest exponent of the geometric witness-search grid.
pub const WITNESS_GRID_MAX_EXP: i32 = 20;

/// Finite positive probe points: every knot of the radius, each knot
/// shifted by one, and the geometric grid up to `2^20`. All implemented
/// radius shapes attain 1, if ever, just above a knot, so the search is
/// exhaustive for them.
fn search_candidates(r: &DistributionFn) -> Vec<f64> {
    let mut out: Vec<f64> = r
        .knots()
        .into_iter()
        .flat_map(|a| [a, a + 1.0])
        .collect();
    out.extend((-10..=WITNESS_GRID_MAX_EXP).map(|k| 2f64.powi(k)));
    out.retain(|x| x.is_finite() && *x > 0.0);
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Four-way classification of a radius. Exactly one class is reachable:
/// attainment of 1 forces limit 1, and the remaining cases split by the
/// limit alone.
pub fn classify_radius(r: &DistributionFn) -> Classification {
    let limit = r.limit_at_infinity();
    let candidates = search_candidates(r);
    if let Some(&x0) = candidates.iter().find(|&&x| r.eval(x) == 1.0) {
        return Classification {
            class: BoundClass::CertainlyBounded,
            witness: Some(x0),
            limit,
        };
    }
    if limit == 1.0 {
        Classification {
            class: BoundClass::PerhapsBounded,
            witness: None,
            limit,
        }
    } else if limit == 0.0 {
        Classification {
            class: BoundClass::CertainlyUnbounded,
            witness: None,
            limit,
        }
    } else {
        let witness = candidates.iter().copied().find(|&x| r.eval(x) > 0.0);
        Classification {
            class: BoundClass::PerhapsUnbounded,
            witness,
            limit,
        }
    }
}

pub fn classify(a: &SetDescriptor, space: &Prob2Norm) -> Result<Classification> {
    Ok(classify_radius(&radius(a, space)?))
}

/// The four class predicates evaluated independently over the search
/// candidates, in class order. On every radius this crate can produce,
/// exactly one entry is true; the partition property is asserted in
/// tests rather than assumed.
pub fn class_predicates(r: &DistributionFn) -> [bool; 4] {
    let limit = r.limit_at_infinity();
    let candidates = search_candidates(r);
    let attains = candidates.iter().any(|&x| r.eval(x) == 1.0);
    let positive = candidates.iter().any(|&x| r.eval(x) > 0.0);
    [
        attains,
        !attains && limit == 1.0,
        positive && limit > 0.0 && limit < 1.0,
        limit == 0.0,
    ]
}

/// Witness certification: true iff `nu[x, y] >= g` for every ordered pair
/// of the set, grid-certified with closed forms where available. `g` must
/// lie in the D-plus class. Together with [`classify`], this states the
/// boundedness duality: some such witness exists exactly when the set is
/// D-bounded, and `radius(a)` itself is the canonical choice.
pub fn witness_g_check(
    a: &SetDescriptor,
    space: &Prob2Norm,
    g: &DistributionFn,
    grid: &[f64],
) -> Result<bool> {
    if !classify_df(g).in_d_plus {
        return Err(Error::WitnessNotInDPlus);
    }
    match a {
        SetDescriptor::FiniteSet(points) => {
            // Diagonal pairs give the unit jump, which dominates every
            // distribution vanishing at 0, so only mixed pairs matter.
            for (i, x) in points.iter().enumerate() {
                for (j, y) in points.iter().enumerate() {
                    if i != j && !dfalgebra::leq(g, &space.nu(x, y)?, grid) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        SetDescriptor::AnalyticSet { area_sup, family } => {
            Ok(dfalgebra::leq(g, &family_radius(family, *area_sup), grid))
        }
    }
}

/// An ordered pair of sets whose radius ranges over cross pairs only.
/// Analytic components certify their `area_sup` as the cross-pair
/// supremum here; when both components are analytic the families must
/// match and the larger supremum governs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSet {
    a: SetDescriptor,
    b: SetDescriptor,
}

impl PairSet {
    pub fn new(a: SetDescriptor, b: SetDescriptor) -> Result<Self> {
        if let (Some(da), Some(db)) = (a.dim(), b.dim()) {
            if da != db {
                return Err(Error::DimensionMismatch {
                    expected: da,
                    got: db,
                });
            }
        }
        Ok(PairSet { a, b })
    }

    pub fn first(&self) -> &SetDescriptor {
        &self.a
    }

    pub fn second(&self) -> &SetDescriptor {
        &self.b
    }
}

/// Radius of a pair set: the infimum sweeps `x` from the first component
/// and `y` from the second, never pairs within one component.
pub fn pair_radius(p: &PairSet, space: &Prob2Norm) -> Result<DistributionFn> {
    use SetDescriptor::*;
    match (&p.a, &p.b) {
        (FiniteSet(xs), FiniteSet(ys)) => {
            let mut parts = Vec::with_capacity(xs.len() * ys.len());
            for x in xs {
                for y in ys {
                    parts.push(space.nu(x, y)?);
                }
            }
            Ok(min_of(parts))
        }
        (AnalyticSet { area_sup, family }, FiniteSet(_))
        | (FiniteSet(_), AnalyticSet { area_sup, family }) => {
            Ok(family_radius(family, *area_sup))
        }
        (
            AnalyticSet { area_sup: s1, family: f1 },
            AnalyticSet { area_sup: s2, family: f2 },
        ) => match (f1, f2) {
            (AnalyticFamily::Standard, AnalyticFamily::Standard) => {
                Ok(dfalgebra::standard_ratio(s1.max(*s2)))
            }
            (AnalyticFamily::Indicator, AnalyticFamily::Indicator) => {
                Ok(dfalgebra::step_at(s1.max(*s2)))
            }
            (AnalyticFamily::CustomRadiusRule(r1), AnalyticFamily::CustomRadiusRule(r2)) => {
                Ok(r1.pointwise_min(r2))
            }
            _ => Err(Error::MixedAnalyticFamilies),
        },
    }
}

pub fn classify_pair(p: &PairSet, space: &Prob2Norm) -> Result<Classification> {
    Ok(classify_radius(&pair_radius(p, space)?))
}

/// Scales the first component by `alpha`: listed points directly, the
/// certified supremum by `|alpha|`, and a custom radius rule through the
/// argument-rescaling law.
pub fn scale_pair(alpha: f64, p: &PairSet) -> Result<PairSet> {
    if alpha == 0.0 {
        return Err(Error::ZeroScalar);
    }
    if !alpha.is_finite() {
        return Err(Error::OutOfRange {
            name: "alpha",
            requirement: "finite and nonzero",
            value: alpha,
        });
    }
    let scaled = match &p.a {
        SetDescriptor::FiniteSet(points) => {
            SetDescriptor::FiniteSet(points.iter().map(|q| q.scale(alpha)).collect())
        }
        SetDescriptor::AnalyticSet { area_sup, family } => SetDescriptor::AnalyticSet {
            area_sup: area_sup * alpha.abs(),
            family: match family {
                AnalyticFamily::CustomRadiusRule(r) => {
                    AnalyticFamily::CustomRadiusRule(r.scale_argument(alpha.abs())?)
                }
                other => other.clone(),
            },
        },
    };
    PairSet::new(scaled, p.b.clone())
}

/// Scaling closure: a D-bounded pair set stays D-bounded under scaling of
/// its first component by any nonzero scalar. Returns the scaled class's
/// D-bounded flag; `false` on a valid instance would be a counterexample.
pub fn scaling_closure_check(alpha: f64, p: &PairSet, space: &Prob2Norm) -> Result<bool> {
    if !classify_pair(p, space)?.is_d_bounded() {
        return Err(Error::PreconditionViolated("pair set must be D-bounded"));
    }
    Ok(classify_pair(&scale_pair(alpha, p)?, space)?.is_d_bounded())
}

/// Exact Minkowski sum of two listed sets, duplicates collapsed.
pub fn minkowski_sum(a: &SetDescriptor, c: &SetDescriptor) -> Result<SetDescriptor> {
    let (SetDescriptor::FiniteSet(xs), SetDescriptor::FiniteSet(ys)) = (a, c) else {
        return Err(Error::UnsupportedDescriptor(
            "Minkowski sums need listed sets",
        ));
    };
    let mut points = Vec::with_capacity(xs.len() * ys.len());
    for x in xs {
        for y in ys {
            let s = x.try_add(y)?;
            if !points.contains(&s) {
                points.push(s);
            }
        }
    }
    SetDescriptor::finite(points)
}

/// Split min-bound over the grid product:
/// `r_sum(s + t) >= min(r1(s), r2(t))` within the sampling tolerance for
/// every pair of grid points. This is the form the sum-decomposition
/// argument actually yields; the same bound with a shared argument on
/// both sides is false already for singleton ratio instances.
pub fn split_min_bound_holds(
    r_sum: &DistributionFn,
    r1: &DistributionFn,
    r2: &DistributionFn,
    grid: &[f64],
) -> bool {
    for &s in grid {
        let v1 = r1.eval(s);
        for &t in grid {
            let bound = v1.min(r2.eval(t));
            if r_sum.eval(s + t) < bound - SAMPLED_TOL {
                return false;
            }
        }
    }
    true
}

/// Sum closure: with `a x b` and `c x b` D-bounded, the pair set
/// `(a + c) x b` must be D-bounded, and its radius must satisfy the split
/// min-bound against the two summand radii over the grid product.
pub fn sum_closure_check(
    a: &SetDescriptor,
    c: &SetDescriptor,
    b: &SetDescriptor,
    space: &Prob2Norm,
    grid: &[f64],
) -> Result<bool> {
    validate_grid(grid, "closure grid")?;
    let r_ab = pair_radius(&PairSet::new(a.clone(), b.clone())?, space)?;
    let r_cb = pair_radius(&PairSet::new(c.clone(), b.clone())?, space)?;
    if !classify_radius(&r_ab).is_d_bounded() || !classify_radius(&r_cb).is_d_bounded() {
        return Err(Error::PreconditionViolated(
            "summand pair sets must be D-bounded",
        ));
    }
    let sum = minkowski_sum(a, c)?;
    let r_sum = pair_radius(&PairSet::new(sum, b.clone())?, space)?;
    if !classify_radius(&r_sum).is_d_bounded() {
        return Ok(false);
    }
    Ok(split_min_bound_holds(&r_sum, &r_ab, &r_cb, grid))
}

/// Pair-sum closure: the elementwise sum of two pair sets is the pair set
/// of the two Minkowski sums. With all four cross combinations D-bounded,
/// the summed pair set must be D-bounded and its radius must satisfy the
/// split min-bound against the radii of `a x (b + d)` and `c x (b + d)`.
pub fn pair_sum_closure_check(
    p1: &PairSet,
    p2: &PairSet,
    space: &Prob2Norm,
    grid: &[f64],
) -> Result<bool> {
    validate_grid(grid, "closure grid")?;
    let (a, b) = (&p1.a, &p1.b);
    let (c, d) = (&p2.a, &p2.b);
    for (s, t) in [(a, b), (a, d), (c, b), (c, d)] {
        if !classify_pair(&PairSet::new(s.clone(), t.clone())?, space)?.is_d_bounded() {
            return Err(Error::PreconditionViolated(
                "all four cross pair sets must be D-bounded",
            ));
        }
    }
    let bd = minkowski_sum(b, d)?;
    let ac = minkowski_sum(a, c)?;
    let r_sum = pair_radius(&PairSet::new(ac, bd.clone())?, space)?;
    let r1 = pair_radius(&PairSet::new(a.clone(), bd.clone())?, space)?;
    let r2 = pair_radius(&PairSet::new(c.clone(), bd)?, space)?;
    if !classify_radius(&r_sum).is_d_bounded() {
        return Ok(false);
    }
    Ok(split_min_bound_holds(&r_sum, &r1, &r2, grid))
}
