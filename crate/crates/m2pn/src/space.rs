//! Menger 2-probabilistic normed spaces under the min t-norm.
//!
//! A space assigns to every pair of vectors a distance distribution
//! function `nu[x,y]`. Two closed-form families are built in:
//!
//! * standard: `nu[x,y](t) = t / (t + area(x,y))` above zero, the ratio
//!   family over the parallelogram area;
//! * indicator: `nu[x,y](t)` jumps from 0 to 1 just past `area(x,y)`.
//!
//! Custom spaces carry an arbitrary pair rule and no guarantee; they exist
//! so that axiom violators can be constructed and detected, and they are
//! what product spaces return.
//!
//! The axiom battery checks, per sampled tuple: the zero-at-origin law
//! (A1), the dependence law in both directions (A2), symmetry (A3), the
//! argument-rescaling law (A4), and the two-slot shifted superadditivity
//! law (A5) on a positive grid product. Arguments at or below zero make
//! both sides of A5 vanish, so positive grids lose nothing.

use std::sync::Arc;

use rand::Rng;

use crate::dfalgebra::{self, standard_ratio, step_at, DistributionFn};
use crate::geometry::{two_norm, Point};
use crate::report::AxiomReport;
use crate::{Error, Result};

/// Pair rule of a custom space.
pub type PairRule = Arc<dyn Fn(&Point, &Point) -> DistributionFn + Send + Sync>;

/// A 2-probabilistic norm over `R^d`.
#[derive(Clone)]
pub enum Prob2Norm {
    /// Ratio family over the parallelogram area.
    Standard { dim: usize },
    /// Step family over the parallelogram area.
    Indicator { dim: usize },
    /// Arbitrary pair rule; carries no axiom guarantee until checked.
    Custom { dim: usize, rule: PairRule },
}

impl std::fmt::Debug for Prob2Norm {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Prob2Norm::Standard { dim } => write!(out, "Standard {{ dim: {dim} }}"),
            Prob2Norm::Indicator { dim } => write!(out, "Indicator {{ dim: {dim} }}"),
            Prob2Norm::Custom { dim, .. } => write!(out, "Custom {{ dim: {dim} }}"),
        }
    }
}

fn check_dim(dim: usize) -> Result<usize> {
    if dim < 2 {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(dim)
    }
}

impl Prob2Norm {
    pub fn standard(dim: usize) -> Result<Self> {
        Ok(Prob2Norm::Standard { dim: check_dim(dim)? })
    }

    pub fn indicator(dim: usize) -> Result<Self> {
        Ok(Prob2Norm::Indicator { dim: check_dim(dim)? })
    }

    pub fn custom<F>(dim: usize, rule: F) -> Result<Self>
    where
        F: Fn(&Point, &Point) -> DistributionFn + Send + Sync + 'static,
    {
        Ok(Prob2Norm::Custom {
            dim: check_dim(dim)?,
            rule: Arc::new(rule),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Prob2Norm::Standard { dim }
            | Prob2Norm::Indicator { dim }
            | Prob2Norm::Custom { dim, .. } => *dim,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Prob2Norm::Standard { .. } => "standard",
            Prob2Norm::Indicator { .. } => "indicator",
            Prob2Norm::Custom { .. } => "custom",
        }
    }

    /// True for the closed-form families whose axioms hold by construction.
    pub fn is_closed_form(&self) -> bool {
        !matches!(self, Prob2Norm::Custom { .. })
    }

    /// The distribution function assigned to the pair `(x, y)`.
    pub fn nu(&self, x: &Point, y: &Point) -> Result<DistributionFn> {
        if x.dim() != self.dim() || y.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: if x.dim() != self.dim() { x.dim() } else { y.dim() },
            });
        }
        Ok(match self {
            Prob2Norm::Standard { .. } => standard_ratio(two_norm(x, y)?),
            Prob2Norm::Indicator { .. } => step_at(two_norm(x, y)?),
            Prob2Norm::Custom { rule, .. } => rule(x, y),
        })
    }
}

/// Geometric grid `2^k` for `k` in `[lo_exp, hi_exp]`.
pub fn geometric_grid(lo_exp: i32, hi_exp: i32) -> Vec<f64> {
    (lo_exp..=hi_exp).map(|k| 2f64.powi(k)).collect()
}

/// Default probe grid spanning the transition region of desk-scale areas.
pub fn default_t_grid() -> Vec<f64> {
    geometric_grid(-10, 20)
}

pub(crate) fn validate_grid(grid: &[f64], name: &'static str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyInput(name));
    }
    for &t in grid {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::OutOfRange {
                name,
                requirement: "finite and positive",
                value: t,
            });
        }
    }
    Ok(())
}

const EXACT_ALPHAS: [f64; 10] = [
    0.25, 0.5, 1.0, 2.0, 4.0, -0.25, -0.5, -1.0, -2.0, -4.0,
];
const EXACT_LAMBDAS: [f64; 6] = [1.0, 2.0, 0.5, -1.0, -2.0, -0.5];

fn sample_int_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Point {
    let coords: Vec<f64> = (0..dim)
        .map(|_| rng.random_range(-9..=9i64) as f64)
        .collect();
    Point::new(coords).expect("small integer samples are valid points")
}

/// Exact independence certificate for integer-coordinate points.
fn int_independent(x: &Point, y: &Point) -> bool {
    let d = x.dim();
    for i in 0..d {
        for j in (i + 1)..d {
            if x[i] * y[j] - x[j] * y[i] != 0.0 {
                return true;
            }
        }
    }
    false
}

fn sample_independent_pair<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Option<(Point, Point)> {
    for _ in 0..64 {
        let u = sample_int_point(dim, rng);
        let v = sample_int_point(dim, rng);
        if int_independent(&u, &v) {
            return Some((u, v));
        }
    }
    None
}

fn ce(parts: &[(&str, String)]) -> String {
    parts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Randomized battery for the five space axioms over integer samples.
///
/// Returns reports labeled `A1` through `A5`. `t_grid` and `s_grid` must be
/// positive; the superadditivity sweep runs over their product with the
/// first-slot sum `x + y` against witness `z`. Probability comparisons use
/// `tol`.
pub fn check_2pn_axioms<R: Rng + ?Sized>(
    space: &Prob2Norm,
    t_grid: &[f64],
    s_grid: &[f64],
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Vec<AxiomReport>> {
    check_axioms_inner(space, t_grid, s_grid, trials, tol, rng, false)
}

/// Battery for the generalized pair-set axioms on the concrete one-carrier
/// instance: the five space axioms plus the second-slot superadditivity
/// sweep (report `A5b`), which the symmetric instance must also satisfy.
pub fn check_mg2pn_axioms<R: Rng + ?Sized>(
    space: &Prob2Norm,
    t_grid: &[f64],
    s_grid: &[f64],
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Vec<AxiomReport>> {
    check_axioms_inner(space, t_grid, s_grid, trials, tol, rng, true)
}

#[allow(clippy::too_many_arguments)]
fn check_axioms_inner<R: Rng + ?Sized>(
    space: &Prob2Norm,
    t_grid: &[f64],
    s_grid: &[f64],
    trials: usize,
    tol: f64,
    rng: &mut R,
    second_slot: bool,
) -> Result<Vec<AxiomReport>> {
    validate_grid(t_grid, "t_grid")?;
    validate_grid(s_grid, "s_grid")?;
    if trials == 0 {
        return Err(Error::PreconditionViolated("trials must be at least 1"));
    }
    let dim = space.dim();
    let mut a1 = AxiomReport::new("A1");
    let mut a2 = AxiomReport::new("A2");
    let mut a3 = AxiomReport::new("A3");
    let mut a4 = AxiomReport::new("A4");
    let mut a5 = AxiomReport::new("A5");
    let mut a5b = AxiomReport::new("A5b");

    for _ in 0..trials {
        let x = sample_int_point(dim, rng);
        let y = sample_int_point(dim, rng);
        let z = sample_int_point(dim, rng);
        let f_xy = space.nu(&x, &y)?;

        // A1: nothing is certain at argument zero.
        a1.record_trial();
        let at_zero = f_xy.eval(0.0);
        if at_zero > tol {
            a1.record_failure(ce(&[
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("nu(0)", at_zero.to_string()),
            ]));
        }

        // A2 forward: a dependent pair is certain at every positive t.
        a2.record_trial();
        let lambda = EXACT_LAMBDAS[rng.random_range(0..EXACT_LAMBDAS.len())];
        let dep = space.nu(&x, &x.scale(lambda))?;
        if let Some(&t_bad) = t_grid.iter().find(|&&t| dep.eval(t) < 1.0 - tol) {
            a2.record_failure(ce(&[
                ("x", x.to_string()),
                ("lambda", format!("{lambda:?}")),
                ("t", t_bad.to_string()),
                ("nu", dep.eval(t_bad).to_string()),
            ]));
        }
        // A2 reverse: an independent pair must miss certainty somewhere.
        if let Some((u, v)) = sample_independent_pair(dim, rng) {
            let f_uv = space.nu(&u, &v)?;
            if t_grid.iter().all(|&t| f_uv.eval(t) >= 1.0 - tol) {
                a2.record_failure(ce(&[
                    ("u", u.to_string()),
                    ("v", v.to_string()),
                    ("nu", "1 on the whole grid".to_string()),
                ]));
            }
        }

        // A3: the pair order is immaterial.
        a3.record_trial();
        let f_yx = space.nu(&y, &x)?;
        if !dfalgebra::pointwise_eq(&f_xy, &f_yx, t_grid) {
            a3.record_failure(ce(&[("x", x.to_string()), ("y", y.to_string())]));
        }

        // A4: scaling the vector rescales the argument axis. Exact
        // power-of-two factors keep step thresholds comparable without
        // rounding; the ratio family also gets a continuous factor.
        a4.record_trial();
        let mut alphas = vec![EXACT_ALPHAS[rng.random_range(0..EXACT_ALPHAS.len())]];
        if matches!(space, Prob2Norm::Standard { .. }) {
            let cont: f64 = rng.random_range(0.1..4.0);
            alphas.push(if rng.random_range(0..2) == 0 { cont } else { -cont });
        }
        for alpha in alphas {
            let f_scaled = space.nu(&x.scale(alpha), &y)?;
            for &t in t_grid {
                let lhs = f_scaled.eval(t);
                let rhs = f_xy.eval(t / alpha.abs());
                if (lhs - rhs).abs() > tol {
                    a4.record_failure(ce(&[
                        ("x", x.to_string()),
                        ("y", y.to_string()),
                        ("alpha", format!("{alpha:?}")),
                        ("t", t.to_string()),
                        ("lhs", lhs.to_string()),
                        ("rhs", rhs.to_string()),
                    ]));
                    break;
                }
            }
        }

        // A5, first slot: nu[x+y,z](s+t) >= min(nu[x,z](s), nu[y,z](t)).
        a5.record_trial();
        let f_sum = space.nu(&(&x + &y), &z)?;
        let f_xz = space.nu(&x, &z)?;
        let f_yz = space.nu(&y, &z)?;
        if let Some(msg) = split_violation(&f_sum, &f_xz, &f_yz, s_grid, t_grid, tol) {
            a5.record_failure(format!(
                "{} {}",
                ce(&[("x", x.to_string()), ("y", y.to_string()), ("z", z.to_string())]),
                msg
            ));
        }

        if second_slot {
            // A5, second slot: nu[z,x+y](s+t) >= min(nu[z,x](s), nu[z,y](t)).
            a5b.record_trial();
            let g_sum = space.nu(&z, &(&x + &y))?;
            let g_zx = space.nu(&z, &x)?;
            let g_zy = space.nu(&z, &y)?;
            if let Some(msg) = split_violation(&g_sum, &g_zx, &g_zy, s_grid, t_grid, tol) {
                a5b.record_failure(format!(
                    "{} {}",
                    ce(&[("x", x.to_string()), ("y", y.to_string()), ("z", z.to_string())]),
                    msg
                ));
            }
        }
    }

    let mut reports = vec![a1, a2, a3, a4, a5];
    if second_slot {
        reports.push(a5b);
    }
    Ok(reports)
}

/// First grid violation of `sum(s+t) >= min(left(s), right(t)) - tol`, if
/// any, rendered as a counterexample fragment.
fn split_violation(
    sum: &DistributionFn,
    left: &DistributionFn,
    right: &DistributionFn,
    s_grid: &[f64],
    t_grid: &[f64],
    tol: f64,
) -> Option<String> {
    let left_vals: Vec<f64> = s_grid.iter().map(|&s| left.eval(s)).collect();
    let right_vals: Vec<f64> = t_grid.iter().map(|&t| right.eval(t)).collect();
    for (si, &s) in s_grid.iter().enumerate() {
        for (ti, &t) in t_grid.iter().enumerate() {
            let bound = left_vals[si].min(right_vals[ti]);
            let got = sum.eval(s + t);
            if got < bound - tol {
                return Some(ce(&[
                    ("s", s.to_string()),
                    ("t", t.to_string()),
                    ("lhs", got.to_string()),
                    ("min", bound.to_string()),
                ]));
            }
        }
    }
    None
}

/// A locally ball query: center, direction vector, confidence level and
/// radius argument.
#[derive(Debug, Clone)]
pub struct BallQuery {
    pub center: Point,
    pub direction: Point,
    pub level: f64,
    pub radius: f64,
}

impl BallQuery {
    pub fn new(center: Point, direction: Point, level: f64, radius: f64) -> Result<Self> {
        if center.dim() != direction.dim() {
            return Err(Error::DimensionMismatch {
                expected: center.dim(),
                got: direction.dim(),
            });
        }
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::OutOfRange {
                name: "level",
                requirement: "strictly inside (0, 1)",
                value: level,
            });
        }
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::OutOfRange {
                name: "radius",
                requirement: "finite and positive",
                value: radius,
            });
        }
        Ok(BallQuery { center, direction, level, radius })
    }
}

/// Ball membership: `nu[center - y, direction](radius) >= level`.
pub fn ball_contains(space: &Prob2Norm, q: &BallQuery, y: &Point) -> Result<bool> {
    let diff = q.center.try_sub(y)?;
    let f = space.nu(&diff, &q.direction)?;
    Ok(f.eval(q.radius) >= q.level)
}

/// Convexity probe: given two ball members, every sampled point of the
/// segment between them must stay inside. A `false` on an axiom-valid
/// space would be a counterexample to ball convexity.
pub fn convexity_probe_ball(
    space: &Prob2Norm,
    q: &BallQuery,
    y1: &Point,
    y2: &Point,
    lambda_grid: &[f64],
) -> Result<bool> {
    if !(ball_contains(space, q, y1)? && ball_contains(space, q, y2)?) {
        return Err(Error::PreconditionViolated(
            "probe endpoints must lie in the ball",
        ));
    }
    for &lambda in lambda_grid {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange {
                name: "lambda",
                requirement: "within [0, 1]",
                value: lambda,
            });
        }
        let mix = y1.scale(lambda).try_add(&y2.scale(1.0 - lambda))?;
        if !ball_contains(space, q, &mix)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scalar monotonicity: a larger scaling of `x` yields a pointwise smaller
/// distribution. Requires `|alpha| <= |beta|`, both nonzero; the
/// comparison is the certified distribution order, closed-form whenever
/// both sides admit one.
pub fn scalar_monotonicity_check(
    space: &Prob2Norm,
    x: &Point,
    y: &Point,
    alpha: f64,
    beta: f64,
    t_grid: &[f64],
) -> Result<bool> {
    if alpha == 0.0 || beta == 0.0 {
        return Err(Error::ZeroScalar);
    }
    if alpha.abs() > beta.abs() {
        return Err(Error::PreconditionViolated(
            "|alpha| must not exceed |beta|",
        ));
    }
    let f_beta = space.nu(&x.scale(beta), y)?;
    let f_alpha = space.nu(&x.scale(alpha), y)?;
    Ok(dfalgebra::leq(&f_beta, &f_alpha, t_grid))
}

/// Certified boundedness threshold for one confidence gap `r`: every
/// `t > threshold` satisfies `min over pairs of nu[x,y](t) > 1 - r`. The
/// threshold itself is the infimum and need not certify.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundThreshold {
    pub r: f64,
    pub threshold: Option<f64>,
}

fn max_cross_area(set: &[Point], witnesses: &[Point]) -> Result<f64> {
    let mut m = 0f64;
    for x in set {
        for y in witnesses {
            m = m.max(two_norm(x, y)?);
        }
    }
    Ok(m)
}

fn validate_r_grid(r_grid: &[f64]) -> Result<()> {
    if r_grid.is_empty() {
        return Err(Error::EmptyInput("r_grid"));
    }
    for &r in r_grid {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::OutOfRange {
                name: "r",
                requirement: "strictly inside (0, 1)",
                value: r,
            });
        }
    }
    Ok(())
}

/// Boundedness thresholds for each `r`, in closed form for the built-in
/// families (ratio: `M(1-r)/r`; step: `M`; `M` the largest cross area) and
/// by geometric grid search for custom spaces.
pub fn is_bounded(
    space: &Prob2Norm,
    set: &[Point],
    witnesses: &[Point],
    r_grid: &[f64],
) -> Result<Vec<BoundThreshold>> {
    if set.is_empty() {
        return Err(Error::EmptyInput("set"));
    }
    if witnesses.is_empty() {
        return Err(Error::EmptyInput("witnesses"));
    }
    validate_r_grid(r_grid)?;
    match space {
        Prob2Norm::Standard { .. } => {
            let m = max_cross_area(set, witnesses)?;
            Ok(r_grid
                .iter()
                .map(|&r| BoundThreshold {
                    r,
                    threshold: Some(m * (1.0 - r) / r),
                })
                .collect())
        }
        Prob2Norm::Indicator { .. } => {
            let m = max_cross_area(set, witnesses)?;
            Ok(r_grid
                .iter()
                .map(|&r| BoundThreshold { r, threshold: Some(m) })
                .collect())
        }
        Prob2Norm::Custom { .. } => is_bounded_grid(space, set, witnesses, r_grid),
    }
}

/// Grid-search variant of [`is_bounded`]: the least geometric grid point
/// `t` with `min over pairs of nu[x,y](t) > 1 - r`, or `None` when the
/// search bound `2^20` is exhausted. Cross-checks the closed forms.
pub fn is_bounded_grid(
    space: &Prob2Norm,
    set: &[Point],
    witnesses: &[Point],
    r_grid: &[f64],
) -> Result<Vec<BoundThreshold>> {
    if set.is_empty() {
        return Err(Error::EmptyInput("set"));
    }
    if witnesses.is_empty() {
        return Err(Error::EmptyInput("witnesses"));
    }
    validate_r_grid(r_grid)?;
    let mut dfs = Vec::with_capacity(set.len() * witnesses.len());
    for x in set {
        for y in witnesses {
            dfs.push(space.nu(x, y)?);
        }
    }
    let grid = default_t_grid();
    Ok(r_grid
        .iter()
        .map(|&r| {
            let hit = grid.iter().copied().find(|&t| {
                dfs.iter()
                    .map(|f| f.eval(t))
                    .fold(1.0, f64::min)
                    > 1.0 - r
            });
            BoundThreshold { r, threshold: hit }
        })
        .collect())
}

/// The paired threshold constants: forward `t0 = M(1-r)/r` and the exact
/// algebraic inverse `M_back = t0*r/(1-r)`.
pub fn bound_constants(m: f64, r: f64) -> Result<(f64, f64)> {
    if !m.is_finite() || m <= 0.0 {
        return Err(Error::OutOfRange {
            name: "M",
            requirement: "finite and positive",
            value: m,
        });
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::OutOfRange {
            name: "r",
            requirement: "strictly inside (0, 1)",
            value: r,
        });
    }
    let t0 = m * (1.0 - r) / r;
    let m_back = t0 * r / (1.0 - r);
    Ok((t0, m_back))
}

/// Product of two spaces on concatenated coordinates: the pair
/// distribution is the pointwise minimum of the component distributions at
/// the same argument.
pub fn product_space(space_x: &Prob2Norm, space_y: &Prob2Norm) -> Prob2Norm {
    let dx = space_x.dim();
    let dim = dx + space_y.dim();
    let sx = space_x.clone();
    let sy = space_y.clone();
    Prob2Norm::Custom {
        dim,
        rule: Arc::new(move |u: &Point, v: &Point| {
            let split = |p: &Point| {
                let (a, b) = p.coords().split_at(dx);
                (
                    Point::new(a.to_vec()).expect("component dimensions are valid"),
                    Point::new(b.to_vec()).expect("component dimensions are valid"),
                )
            };
            let (ux, uy) = split(u);
            let (vx, vy) = split(v);
            let fa = sx.nu(&ux, &vx).expect("component dims match by construction");
            let fb = sy.nu(&uy, &vy).expect("component dims match by construction");
            fa.pointwise_min(&fb)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfalgebra::epsilon;
    use crate::report::all_pass;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn standard_family_on_unit_pair() {
        let space = Prob2Norm::standard(2).unwrap();
        let f = space.nu(&p(&[1.0, 0.0]), &p(&[0.0, 1.0])).unwrap();
        assert_eq!(f, standard_ratio(1.0));
        assert_eq!(f.eval(1.0), 0.5);
    }

    #[test]
    fn indicator_family_steps_at_the_area() {
        let space = Prob2Norm::indicator(2).unwrap();
        let f = space.nu(&p(&[1.0, 2.0]), &p(&[3.0, 4.0])).unwrap();
        assert_eq!(f, step_at(2.0));
    }

    #[test]
    fn dependent_pair_is_certain_everywhere_positive() {
        let space = Prob2Norm::standard(2).unwrap();
        let f = space.nu(&p(&[1.0, 0.0]), &p(&[2.0, 0.0])).unwrap();
        assert_eq!(f, epsilon(0.0));
        for t in [1e-6, 1.0, 1e6] {
            assert_eq!(f.eval(t), 1.0);
        }
    }

    #[test]
    fn axiom_battery_passes_for_builtin_families() {
        let t_grid = default_t_grid();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in [2, 3] {
            for space in [
                Prob2Norm::standard(dim).unwrap(),
                Prob2Norm::indicator(dim).unwrap(),
            ] {
                let reports =
                    check_2pn_axioms(&space, &t_grid, &t_grid, 300, 1e-9, &mut rng).unwrap();
                assert_eq!(reports.len(), 5);
                assert!(
                    all_pass(&reports),
                    "{} d={dim}: {:?}",
                    space.family_name(),
                    reports
                        .iter()
                        .filter(|r| !r.pass())
                        .map(|r| (&r.axiom, &r.counterexamples))
                        .collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn mg2pn_battery_adds_second_slot_sweep() {
        let t_grid = default_t_grid();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let space = Prob2Norm::standard(2).unwrap();
        let reports = check_mg2pn_axioms(&space, &t_grid, &t_grid, 100, 1e-9, &mut rng).unwrap();
        assert_eq!(reports.len(), 6);
        assert_eq!(reports[5].axiom, "A5b");
        assert!(all_pass(&reports));
    }

    #[test]
    fn zero_at_origin_violator_is_detected() {
        let space = Prob2Norm::custom(2, |_, _| step_at(-1.0)).unwrap();
        let grid = default_t_grid();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let reports = check_2pn_axioms(&space, &grid, &grid, 10, 1e-9, &mut rng).unwrap();
        let a1 = &reports[0];
        assert_eq!(a1.axiom, "A1");
        assert!(!a1.pass());
        assert!(!a1.counterexamples.is_empty());
    }

    #[test]
    fn ball_membership_follows_the_level() {
        let space = Prob2Norm::standard(2).unwrap();
        let center = p(&[0.0, 0.0]);
        let e = p(&[0.0, 1.0]);
        let y = p(&[1.0, 0.0]);
        let inside = BallQuery::new(center.clone(), e.clone(), 0.5, 1.0).unwrap();
        assert!(ball_contains(&space, &inside, &y).unwrap());
        let tighter = BallQuery::new(center.clone(), e.clone(), 0.6, 1.0).unwrap();
        assert!(!ball_contains(&space, &tighter, &y).unwrap());
        // The center always belongs: the difference is the origin, which is
        // dependent with every direction.
        assert!(ball_contains(&space, &tighter, &center).unwrap());
    }

    #[test]
    fn ball_query_validation() {
        let c = p(&[0.0, 0.0]);
        let e = p(&[0.0, 1.0]);
        assert!(BallQuery::new(c.clone(), e.clone(), 0.0, 1.0).is_err());
        assert!(BallQuery::new(c.clone(), e.clone(), 1.0, 1.0).is_err());
        assert!(BallQuery::new(c.clone(), e.clone(), 0.5, 0.0).is_err());
        assert!(BallQuery::new(c, p(&[0.0, 1.0, 2.0]), 0.5, 1.0).is_err());
    }

    #[test]
    fn segment_between_members_stays_inside() {
        let space = Prob2Norm::standard(2).unwrap();
        let q = BallQuery::new(p(&[0.0, 0.0]), p(&[0.0, 1.0]), 0.4, 1.0).unwrap();
        let y1 = p(&[1.0, 0.0]);
        let y2 = p(&[-1.0, 0.5]);
        assert!(ball_contains(&space, &q, &y1).unwrap());
        assert!(ball_contains(&space, &q, &y2).unwrap());
        let ok = convexity_probe_ball(&space, &q, &y1, &y2, &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(ok.unwrap());
        // Degenerate segment.
        assert!(convexity_probe_ball(&space, &q, &y1, &y1, &[0.5]).unwrap());
    }

    #[test]
    fn convexity_probe_rejects_outside_endpoints() {
        let space = Prob2Norm::standard(2).unwrap();
        let q = BallQuery::new(p(&[0.0, 0.0]), p(&[0.0, 1.0]), 0.9, 1.0).unwrap();
        let outside = p(&[5.0, 0.0]);
        assert_eq!(
            convexity_probe_ball(&space, &q, &outside, &outside, &[0.5]),
            Err(Error::PreconditionViolated(
                "probe endpoints must lie in the ball"
            ))
        );
    }

    #[test]
    fn larger_scaling_gives_smaller_distribution() {
        let grid = default_t_grid();
        let x = p(&[1.0, 0.0]);
        let y = p(&[0.0, 1.0]);
        for space in [Prob2Norm::standard(2).unwrap(), Prob2Norm::indicator(2).unwrap()] {
            assert!(scalar_monotonicity_check(&space, &x, &y, 1.0, 2.0, &grid).unwrap());
            assert!(scalar_monotonicity_check(&space, &x, &y, -1.0, 3.0, &grid).unwrap());
            assert!(scalar_monotonicity_check(&space, &x, &y, 2.0, 2.0, &grid).unwrap());
        }
        assert_eq!(
            scalar_monotonicity_check(
                &Prob2Norm::standard(2).unwrap(),
                &x,
                &y,
                3.0,
                1.0,
                &grid
            ),
            Err(Error::PreconditionViolated("|alpha| must not exceed |beta|"))
        );
    }

    #[test]
    fn threshold_formula_on_the_three_point_fixture() {
        let space = Prob2Norm::standard(2).unwrap();
        let set = [p(&[1.0, 0.0]), p(&[0.0, 1.0]), p(&[2.0, 0.0])];
        let wit = [p(&[0.0, 1.0])];
        let out = is_bounded(&space, &set, &wit, &[0.5]).unwrap();
        assert_eq!(out[0].threshold, Some(2.0));
        // Strictly above the threshold the certificate holds.
        let f_worst = space.nu(&set[2], &wit[0]).unwrap();
        assert!(f_worst.eval(2.0 + 1e-9) > 0.5);
        assert!(f_worst.eval(2.0) <= 0.5);
        // Grid search lands within one geometric step.
        let grid_out = is_bounded_grid(&space, &set, &wit, &[0.5]).unwrap();
        assert_eq!(grid_out[0].threshold, Some(4.0));
    }

    #[test]
    fn dependent_set_certifies_at_the_grid_floor() {
        let space = Prob2Norm::standard(2).unwrap();
        let set = [p(&[1.0, 0.0]), p(&[2.0, 0.0])];
        let wit = [p(&[3.0, 0.0])];
        let out = is_bounded(&space, &set, &wit, &[0.25]).unwrap();
        assert_eq!(out[0].threshold, Some(0.0));
        let grid_out = is_bounded_grid(&space, &set, &wit, &[0.25]).unwrap();
        assert_eq!(grid_out[0].threshold, Some(2f64.powi(-10)));
    }

    #[test]
    fn small_r_pushes_the_threshold_out() {
        let (t0, m_back) = bound_constants(2.0, 0.01).unwrap();
        assert!((t0 - 198.0).abs() < 1e-9);
        assert!((m_back - 2.0).abs() < 1e-12 * 2.0);
    }

    #[test]
    fn constants_round_trip() {
        let (t0, m_back) = bound_constants(2.0, 0.5).unwrap();
        assert_eq!(t0, 2.0);
        assert_eq!(m_back, 2.0);
        let (t0, _) = bound_constants(1.0, 0.9).unwrap();
        assert!((t0 - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn product_space_takes_componentwise_minimum() {
        let sx = Prob2Norm::standard(2).unwrap();
        let sy = Prob2Norm::standard(2).unwrap();
        let prod = product_space(&sx, &sy);
        assert_eq!(prod.dim(), 4);
        // Component areas 1 and 2: the min is the larger-parameter ratio.
        let u = p(&[1.0, 0.0, 1.0, 0.0]);
        let v = p(&[0.0, 1.0, 0.0, 2.0]);
        let f = prod.nu(&u, &v).unwrap();
        assert_eq!(f, standard_ratio(2.0));
        // A dependent component is the min-identity.
        let w = p(&[2.0, 0.0, 0.0, 2.0]);
        let g = prod.nu(&u, &w).unwrap();
        assert_eq!(g, standard_ratio(2.0));
        // Product with itself on the diagonal pair collapses to one copy.
        let diag_v = p(&[0.0, 1.0, 0.0, 1.0]);
        assert_eq!(prod.nu(&u, &diag_v).unwrap(), standard_ratio(1.0));
    }
}
