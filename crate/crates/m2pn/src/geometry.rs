//! 2-norm engine over `R^d`: parallelogram areas via Gram determinants and
//! a randomized verifier for the 2-norm axioms.
//!
//! The 2-norm of a pair of vectors is the area of the parallelogram they
//! span. In the plane that is the absolute cross determinant; in higher
//! dimension it is the square root of the 2x2 Gram determinant. The area
//! vanishes exactly when the pair is linearly dependent, which is the N1
//! axiom and also the reason probabilistic norms built on top of this
//! module degenerate to the unit step at zero on dependent pairs.
//!
//! The randomized verifier draws small-integer coordinates so that dot
//! products and determinants are exact in double precision; dependent test
//! pairs are built by scaling (exact), independent ones are certified by a
//! nonzero integer minor before being used as N1 witnesses. A separate
//! d = 2 verifier works over arbitrary-precision rationals and asserts the
//! axiom equalities exactly, with no tolerance at all.

use num::BigRational;
use num::traits::Signed;
use rand::Rng;

use crate::report::AxiomReport;
use crate::{Error, Result};

/// Vector in `R^d`, `d >= 2`, with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Validates dimension and finiteness.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        Ok(Point { coords })
    }

    /// The origin of `R^d`.
    pub fn zero(dim: usize) -> Result<Self> {
        Point::new(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn try_add(&self, other: &Point) -> Result<Point> {
        check_same_dim(self, other)?;
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn try_sub(&self, other: &Point) -> Result<Point> {
        check_same_dim(self, other)?;
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Scales every coordinate. `k` must be finite to preserve the
    /// finiteness invariant.
    pub fn scale(&self, k: f64) -> Point {
        assert!(k.is_finite(), "scale factor must be finite");
        Point {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// Euclidean length, used for scale-aware dependence cutoffs.
    pub fn euclid_norm(&self) -> f64 {
        dot(self, self).sqrt()
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl std::ops::Add for &Point {
    type Output = Point;
    fn add(self, other: &Point) -> Point {
        self.try_add(other).expect("dimension mismatch in +")
    }
}

impl std::ops::Sub for &Point {
    type Output = Point;
    fn sub(self, other: &Point) -> Point {
        self.try_sub(other).expect("dimension mismatch in -")
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(out, ",")?;
            }
            write!(out, "{c:?}")?;
        }
        write!(out, ")")
    }
}

fn check_same_dim(x: &Point, y: &Point) -> Result<usize> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(x.dim())
}

fn dot(x: &Point, y: &Point) -> f64 {
    x.coords
        .iter()
        .zip(&y.coords)
        .map(|(a, b)| a * b)
        .sum()
}

/// Area of the parallelogram spanned by `x` and `y`.
///
/// In the plane this is the absolute determinant `|x0*y1 - x1*y0|`; above
/// it, the square root of the Gram determinant
/// `<x,x><y,y> - <x,y>^2`, clamped at zero against rounding.
pub fn two_norm(x: &Point, y: &Point) -> Result<f64> {
    let d = check_same_dim(x, y)?;
    if d == 2 {
        Ok((x[0] * y[1] - x[1] * y[0]).abs())
    } else {
        let gram = dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y);
        Ok(gram.max(0.0).sqrt())
    }
}

/// Scale-aware dependence test: declares `x`, `y` linearly dependent when
/// the spanned area is at most `tol * max(1, |x|*|y|)`.
pub fn is_dependent(x: &Point, y: &Point, tol: f64) -> Result<bool> {
    let area = two_norm(x, y)?;
    Ok(area <= tol * f64::max(1.0, x.euclid_norm() * y.euclid_norm()))
}

/// Exact dependence test for integer-coordinate points: all 2x2 minors
/// vanish. Coordinate products must be exactly representable, which holds
/// for the small-integer samples used by the verifier.
fn int_minors_all_zero(x: &Point, y: &Point) -> bool {
    let d = x.dim();
    for i in 0..d {
        for j in (i + 1)..d {
            if x[i] * y[j] - x[j] * y[i] != 0.0 {
                return false;
            }
        }
    }
    true
}

fn sample_int_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Point {
    let coords = (0..dim)
        .map(|_| rng.random_range(-9..=9i64) as f64)
        .collect();
    Point { coords }
}

/// Nonzero scaling factors that are exact in binary floating point.
const EXACT_LAMBDAS: [f64; 6] = [1.0, 2.0, 0.5, -1.0, -2.0, -0.5];

fn fmt_ce(parts: &[(&str, String)]) -> String {
    parts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Randomized verifier for the 2-norm axioms over integer samples in
/// `[-9, 9]^d`.
///
/// Emits five reports: `N1` (zero exactly on dependent pairs, both
/// directions), `N2` (symmetry), `N3` (absolute homogeneity), `N4`
/// (triangle inequality in the first slot) and `shear` (adding a multiple
/// of `x` to `y` leaves the area unchanged). Numeric comparisons use
/// `tol` scaled by the magnitude of the quantities involved.
pub fn check_2norm_axioms<R: Rng + ?Sized>(
    dim: usize,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Vec<AxiomReport>> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    if trials == 0 {
        return Err(Error::PreconditionViolated("trials must be at least 1"));
    }
    let mut n1 = AxiomReport::new("N1");
    let mut n2 = AxiomReport::new("N2");
    let mut n3 = AxiomReport::new("N3");
    let mut n4 = AxiomReport::new("N4");
    let mut shear = AxiomReport::new("shear");

    for _ in 0..trials {
        let x = sample_int_point(dim, rng);
        let y = sample_int_point(dim, rng);
        let z = sample_int_point(dim, rng);

        // N1 forward: constructed dependent pair must measure zero.
        n1.record_trial();
        let lambda = EXACT_LAMBDAS[rng.random_range(0..EXACT_LAMBDAS.len())];
        let dep = x.scale(lambda);
        if !is_dependent(&x, &dep, tol)? {
            n1.record_failure(fmt_ce(&[
                ("x", x.to_string()),
                ("lambda", format!("{lambda:?}")),
                ("area", two_norm(&x, &dep)?.to_string()),
            ]));
        }
        // N1 reverse: a pair certified independent by an exact integer
        // minor must measure strictly positive.
        let mut indep = None;
        for _ in 0..64 {
            let u = sample_int_point(dim, rng);
            let v = sample_int_point(dim, rng);
            if !int_minors_all_zero(&u, &v) {
                indep = Some((u, v));
                break;
            }
        }
        if let Some((u, v)) = indep {
            if is_dependent(&u, &v, tol)? {
                n1.record_failure(fmt_ce(&[
                    ("u", u.to_string()),
                    ("v", v.to_string()),
                    ("area", two_norm(&u, &v)?.to_string()),
                ]));
            }
        }

        // N2 symmetry.
        n2.record_trial();
        let fwd = two_norm(&x, &y)?;
        let rev = two_norm(&y, &x)?;
        if (fwd - rev).abs() > tol * fwd.abs().max(1.0) {
            n2.record_failure(fmt_ce(&[
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("xy", fwd.to_string()),
                ("yx", rev.to_string()),
            ]));
        }

        // N3 homogeneity, over exact scalings and a continuous draw. The
        // comparison is made on squared areas: both sides are eps-level
        // accurate relative to the natural scale there, whereas the areas
        // themselves carry square-root-amplified rounding noise near
        // dependent pairs that no eps-level tolerance admits.
        n3.record_trial();
        let alpha_cont: f64 = rng.random_range(-5.0..5.0);
        let norm_product = x.euclid_norm() * y.euclid_norm();
        for alpha in [lambda, alpha_cont] {
            if alpha == 0.0 {
                continue;
            }
            let lhs = two_norm(&x.scale(alpha), &y)?;
            let rhs = alpha.abs() * fwd;
            let scale_sq = (alpha * norm_product).powi(2);
            if (lhs * lhs - rhs * rhs).abs() > tol * scale_sq.max(1.0) {
                n3.record_failure(fmt_ce(&[
                    ("x", x.to_string()),
                    ("y", y.to_string()),
                    ("alpha", format!("{alpha:?}")),
                    ("lhs", lhs.to_string()),
                    ("rhs", rhs.to_string()),
                ]));
            }
        }

        // N4 triangle inequality in the first slot.
        n4.record_trial();
        let sum_norm = two_norm(&(&x + &y), &z)?;
        let bound = two_norm(&x, &z)? + two_norm(&y, &z)?;
        if sum_norm > bound + tol * bound.max(1.0) {
            n4.record_failure(fmt_ce(&[
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("z", z.to_string()),
                ("lhs", sum_norm.to_string()),
                ("rhs", bound.to_string()),
            ]));
        }

        // Shear invariance: area is unchanged by adding a multiple of x
        // to y.
        shear.record_trial();
        let sheared = two_norm(&x, &(&y + &x.scale(lambda)))?;
        if (sheared - fwd).abs() > tol * fwd.abs().max(1.0) {
            shear.record_failure(fmt_ce(&[
                ("x", x.to_string()),
                ("y", y.to_string()),
                ("alpha", format!("{lambda:?}")),
                ("sheared", sheared.to_string()),
                ("base", fwd.to_string()),
            ]));
        }
    }
    Ok(vec![n1, n2, n3, n4, shear])
}

/// Planar point with arbitrary-precision rational coordinates, for the
/// exact verifier.
pub type RatPoint2 = (BigRational, BigRational);

/// Exact planar parallelogram area: `|x0*y1 - x1*y0|` over rationals.
pub fn two_norm_exact(x: &RatPoint2, y: &RatPoint2) -> BigRational {
    (&x.0 * &y.1 - &x.1 * &y.0).abs()
}

fn sample_rat<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num = rng.random_range(-9..=9i64);
    let den = rng.random_range(1..=4i64);
    BigRational::new(num.into(), den.into())
}

fn sample_rat_point<R: Rng + ?Sized>(rng: &mut R) -> RatPoint2 {
    (sample_rat(rng), sample_rat(rng))
}

fn fmt_rat_point(p: &RatPoint2) -> String {
    format!("({},{})", p.0, p.1)
}

/// Exact d = 2 verifier over rational coordinates: every axiom equality is
/// asserted with rational arithmetic and no tolerance. The triangle
/// inequality follows from bilinearity of the determinant, so it too is
/// exact here.
pub fn check_2norm_axioms_exact<R: Rng + ?Sized>(
    trials: usize,
    rng: &mut R,
) -> Result<Vec<AxiomReport>> {
    if trials == 0 {
        return Err(Error::PreconditionViolated("trials must be at least 1"));
    }
    let zero = BigRational::from_integer(0.into());
    let mut n1 = AxiomReport::new("N1");
    let mut n2 = AxiomReport::new("N2");
    let mut n3 = AxiomReport::new("N3");
    let mut n4 = AxiomReport::new("N4");
    let mut shear = AxiomReport::new("shear");

    for _ in 0..trials {
        let x = sample_rat_point(rng);
        let y = sample_rat_point(rng);
        let z = sample_rat_point(rng);
        let alpha = sample_rat(rng);

        // N1 forward: scaled pair has area exactly zero.
        n1.record_trial();
        let dep = (&x.0 * &alpha, &x.1 * &alpha);
        if two_norm_exact(&x, &dep) != zero {
            n1.record_failure(fmt_ce(&[
                ("x", fmt_rat_point(&x)),
                ("alpha", alpha.to_string()),
            ]));
        }
        // N1 reverse: nonzero determinant certifies independence; the norm
        // is that same determinant, so it is nonzero by definition. Checked
        // on the sampled pair when it happens to be independent.
        if two_norm_exact(&x, &y) != zero && int_rat_dependent(&x, &y) {
            n1.record_failure(fmt_ce(&[
                ("x", fmt_rat_point(&x)),
                ("y", fmt_rat_point(&y)),
            ]));
        }

        // N2 exact symmetry.
        n2.record_trial();
        if two_norm_exact(&x, &y) != two_norm_exact(&y, &x) {
            n2.record_failure(fmt_ce(&[
                ("x", fmt_rat_point(&x)),
                ("y", fmt_rat_point(&y)),
            ]));
        }

        // N3 exact homogeneity.
        n3.record_trial();
        let scaled = (&x.0 * &alpha, &x.1 * &alpha);
        if two_norm_exact(&scaled, &y) != alpha.abs() * two_norm_exact(&x, &y) {
            n3.record_failure(fmt_ce(&[
                ("x", fmt_rat_point(&x)),
                ("y", fmt_rat_point(&y)),
                ("alpha", alpha.to_string()),
            ]));
        }

        // N4 exact triangle inequality.
        n4.record_trial();
        let sum = (&x.0 + &y.0, &x.1 + &y.1);
        if two_norm_exact(&sum, &z) > two_norm_exact(&x, &z) + two_norm_exact(&y, &z) {
            n4.record_failure(fmt_ce(&[
                ("x", fmt_rat_point(&x)),
                ("y", fmt_rat_point(&y)),
                ("z", fmt_rat_point(&z)),
            ]));
        }

        // Exact shear invariance.
        shear.record_trial();
        let sheared = (&y.0 + &x.0 * &alpha, &y.1 + &x.1 * &alpha);
        if two_norm_exact(&x, &sheared) != two_norm_exact(&x, &y) {
            shear.record_failure(fmt_ce(&[
                ("x", fmt_rat_point(&x)),
                ("y", fmt_rat_point(&y)),
                ("alpha", alpha.to_string()),
            ]));
        }
    }
    Ok(vec![n1, n2, n3, n4, shear])
}

/// Rational dependence: zero cross determinant.
fn int_rat_dependent(x: &RatPoint2, y: &RatPoint2) -> bool {
    &x.0 * &y.1 - &x.1 * &y.0 == BigRational::from_integer(0.into())
}
