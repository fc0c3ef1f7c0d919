//! Typed document model: one space, named sets / sequences / series, and
//! an ordered list of checks. Validation resolves every reference and
//! materializes each block through the library constructors so that any
//! inconsistency is reported before a single check runs.

use m2pn::dbound::{AnalyticFamily, PairSet, SetDescriptor};
use m2pn::dfalgebra::{self, DistributionFn};
use m2pn::geometry::{two_norm, Point};
use m2pn::sequences::{ConvexSeries, PointRule, SequenceRule};
use m2pn::space::Prob2Norm;

/// Default RNG seed for randomized checks when neither the document nor
/// the command line supplies one.
pub const DEFAULT_SEED: u64 = 2026;

/// Default trial count for axiom sweeps.
pub const DEFAULT_TRIALS: usize = 1000;

/// Default probability tolerance for axiom sweeps.
pub const DEFAULT_AXIOM_TOL: f64 = 1e-9;

/// Default geometric grid exponents for axiom sweeps.
pub const DEFAULT_AXIOM_GRID: (i32, i32) = (-10, 20);

/// Default geometric grid exponents for closure checks.
pub const DEFAULT_CLOSURE_GRID: (i32, i32) = (-4, 8);

/// Default tolerance for radius checks.
pub const DEFAULT_RADIUS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SpecDocument {
    pub space: SpaceBlock,
    pub sets: Vec<(String, SetBlock)>,
    pub sequences: Vec<(String, SequenceBlock)>,
    pub series: Vec<(String, SeriesBlock)>,
    pub checks: Vec<CheckBlock>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceBlock {
    pub family: FamilySpec,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Standard,
    Indicator,
    /// Area-indexed table: the first row whose bound covers the pair's
    /// spanned area supplies the distribution shape.
    Custom(Vec<CustomRow>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CustomRow {
    /// Inclusive upper bound on the spanned area; the last row must be
    /// `inf` so the table is total.
    pub upper: f64,
    pub shape: ShapeSpec,
}

/// Distribution shape template. `Param::Area` substitutes the pair's
/// spanned area at evaluation time.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSpec {
    Step(Param),
    Ratio(Param),
    Scaled(f64, Param),
    Stairs(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Value(f64),
    Area,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SetBlock {
    Finite(Vec<Vec<f64>>),
    Analytic { area_sup: f64, family: AnalyticSpec },
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticSpec {
    Standard,
    Indicator,
    /// Fixed radius shape; `area` substitution is not meaningful here.
    CustomRule(ShapeSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceBlock {
    Affine {
        limit: Vec<f64>,
        dir: Vec<f64>,
        horizon: usize,
    },
    Explicit(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesBlock {
    pub weights: WeightsSpec,
    pub points: PointsSpec,
    pub horizon: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightsSpec {
    Geometric,
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointsSpec {
    Cycle(Vec<Vec<f64>>),
    List(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckBlock {
    pub id: String,
    pub kind: CheckKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxiomVariant {
    Standard,
    Generalized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvergeMode {
    Pnorm,
    Cauchy,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Set(String),
    Pair(String, String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckKind {
    Axioms {
        variant: AxiomVariant,
        trials: usize,
        tol: f64,
        grid: (i32, i32),
        seed: u64,
    },
    Classify {
        target: Target,
        expect: Option<String>,
    },
    Radius {
        set: String,
        tol: f64,
    },
    Converge {
        sequence: String,
        to: Option<Vec<f64>>,
        witnesses: Vec<Vec<f64>>,
        t: f64,
        alpha: f64,
        mode: ConvergeMode,
    },
    Series {
        series: String,
        witnesses: Vec<Vec<f64>>,
        t: f64,
        alpha: f64,
        vertices: Vec<Vec<f64>>,
    },
    Closure(ClosureSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClosureSpec {
    Scale {
        pair: (String, String),
        alpha: f64,
    },
    Sum {
        a: String,
        c: String,
        b: String,
        grid: (i32, i32),
    },
    PairSum {
        p1: (String, String),
        p2: (String, String),
        grid: (i32, i32),
    },
}

/// A validation failure, tagged with the id of the offending block.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationError {
    pub block: String,
    pub message: String,
}

impl std::fmt::Display for ValidationError {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "block `{}`: {}", self.block, self.message)
    }
}

impl std::error::Error for ValidationError {}

fn err(block: &str, message: impl Into<String>) -> ValidationError {
    ValidationError {
        block: block.to_string(),
        message: message.into(),
    }
}

/// Instantiates a shape template for one spanned area. Total for every
/// validated template: degenerate areas fall back to the unit jump, which
/// is the continuous limit of both parametric families.
fn instantiate_shape(shape: &ShapeSpec, area: f64) -> DistributionFn {
    let resolve = |p: &Param| match p {
        Param::Value(v) => *v,
        Param::Area => area,
    };
    match shape {
        ShapeSpec::Step(p) => dfalgebra::step_at(resolve(p)),
        ShapeSpec::Ratio(p) => {
            let a = resolve(p);
            if a <= 0.0 {
                dfalgebra::epsilon(0.0)
            } else {
                dfalgebra::standard_ratio(a)
            }
        }
        ShapeSpec::Scaled(scale, p) => {
            let a = resolve(p);
            if a <= 0.0 {
                dfalgebra::epsilon(0.0)
            } else {
                dfalgebra::scaled_ratio(*scale, a)
                    .expect("scale validated at document build time")
            }
        }
        ShapeSpec::Stairs(breakpoints) => dfalgebra::piecewise_constant(breakpoints.clone())
            .expect("breakpoints validated at document build time"),
    }
}

/// Checks a shape template without an area at hand. `allow_area` gates the
/// `area` parameter token (allowed in space tables, meaningless in set
/// rules).
fn validate_shape(block: &str, shape: &ShapeSpec, allow_area: bool) -> Result<(), ValidationError> {
    let check_param = |p: &Param| -> Result<(), ValidationError> {
        match p {
            Param::Area if !allow_area => Err(err(
                block,
                "`area` parameter is only valid inside a space table",
            )),
            _ => Ok(()),
        }
    };
    match shape {
        ShapeSpec::Step(p) | ShapeSpec::Ratio(p) => check_param(p),
        ShapeSpec::Scaled(scale, p) => {
            check_param(p)?;
            if !(*scale > 0.0 && *scale <= 1.0) {
                return Err(err(block, "scaled shape needs a scale in (0, 1]"));
            }
            // Probe with a positive area so literal parameters are vetted
            // by the library constructor as well.
            let probe = match p {
                Param::Value(v) => *v,
                Param::Area => 1.0,
            };
            if probe > 0.0 {
                dfalgebra::scaled_ratio(*scale, probe)
                    .map_err(|e| err(block, format!("invalid scaled shape: {e}")))?;
            }
            Ok(())
        }
        ShapeSpec::Stairs(bps) => {
            dfalgebra::piecewise_constant(bps.clone())
                .map_err(|e| err(block, format!("invalid stairs shape: {e}")))?;
            Ok(())
        }
    }
}

impl SpaceBlock {
    /// Materializes the probabilistic 2-norm family.
    pub fn build(&self) -> Result<Prob2Norm, ValidationError> {
        let block = "space";
        if self.dimension < 2 {
            return Err(err(block, "dimension must be at least 2"));
        }
        match &self.family {
            FamilySpec::Standard => Prob2Norm::standard(self.dimension)
                .map_err(|e| err(block, e.to_string())),
            FamilySpec::Indicator => Prob2Norm::indicator(self.dimension)
                .map_err(|e| err(block, e.to_string())),
            FamilySpec::Custom(rows) => {
                if rows.is_empty() {
                    return Err(err(block, "custom table needs at least one rule row"));
                }
                let mut prev = f64::NEG_INFINITY;
                for row in rows {
                    if row.upper.is_nan() || row.upper < 0.0 {
                        return Err(err(block, "rule bounds must be non-negative"));
                    }
                    if row.upper <= prev {
                        return Err(err(block, "rule bounds must be strictly increasing"));
                    }
                    prev = row.upper;
                    validate_shape(block, &row.shape, true)?;
                }
                if rows.last().unwrap().upper != f64::INFINITY {
                    return Err(err(block, "the last rule bound must be inf"));
                }
                let table = rows.clone();
                Prob2Norm::custom(self.dimension, move |x: &Point, y: &Point| {
                    let area = two_norm(x, y).expect("dimensions checked by the space");
                    let row = table
                        .iter()
                        .find(|r| area <= r.upper)
                        .expect("table is total: last bound is inf");
                    instantiate_shape(&row.shape, area)
                })
                .map_err(|e| err(block, e.to_string()))
            }
        }
    }
}

fn build_point(block: &str, coords: &[f64], dim: usize) -> Result<Point, ValidationError> {
    if coords.len() != dim {
        return Err(err(
            block,
            format!(
                "point has {} coordinates, the space has dimension {dim}",
                coords.len()
            ),
        ));
    }
    Point::new(coords.to_vec()).map_err(|e| err(block, e.to_string()))
}

fn build_points(block: &str, lists: &[Vec<f64>], dim: usize) -> Result<Vec<Point>, ValidationError> {
    lists.iter().map(|cs| build_point(block, cs, dim)).collect()
}

impl SetBlock {
    pub fn build(&self, id: &str, dim: usize) -> Result<SetDescriptor, ValidationError> {
        match self {
            SetBlock::Finite(lists) => {
                if lists.is_empty() {
                    return Err(err(id, "finite set needs at least one point"));
                }
                SetDescriptor::finite(build_points(id, lists, dim)?)
                    .map_err(|e| err(id, e.to_string()))
            }
            SetBlock::Analytic { area_sup, family } => {
                let fam = match family {
                    AnalyticSpec::Standard => AnalyticFamily::Standard,
                    AnalyticSpec::Indicator => AnalyticFamily::Indicator,
                    AnalyticSpec::CustomRule(shape) => {
                        validate_shape(id, shape, false)?;
                        AnalyticFamily::CustomRadiusRule(instantiate_shape(shape, 0.0))
                    }
                };
                SetDescriptor::analytic(*area_sup, fam).map_err(|e| err(id, e.to_string()))
            }
        }
    }
}

impl SequenceBlock {
    pub fn build(&self, id: &str, dim: usize) -> Result<SequenceRule, ValidationError> {
        match self {
            SequenceBlock::Affine {
                limit,
                dir,
                horizon,
            } => SequenceRule::affine_inv_n(
                build_point(id, limit, dim)?,
                build_point(id, dir, dim)?,
                *horizon,
            )
            .map_err(|e| err(id, e.to_string())),
            SequenceBlock::Explicit(lists) => {
                SequenceRule::explicit(build_points(id, lists, dim)?)
                    .map_err(|e| err(id, e.to_string()))
            }
        }
    }
}

impl SeriesBlock {
    pub fn build(&self, id: &str, dim: usize) -> Result<ConvexSeries, ValidationError> {
        let points = match &self.points {
            PointsSpec::Cycle(lists) => PointRule::Cycle(build_points(id, lists, dim)?),
            PointsSpec::List(lists) => PointRule::Explicit(build_points(id, lists, dim)?),
        };
        let series = match &self.weights {
            WeightsSpec::Geometric => ConvexSeries::geometric(points, self.horizon),
            WeightsSpec::Explicit(ws) => {
                if ws.len() != self.horizon {
                    return Err(err(
                        id,
                        format!(
                            "{} weights for horizon {}",
                            ws.len(),
                            self.horizon
                        ),
                    ));
                }
                ConvexSeries::explicit_weights(ws.clone(), points)
            }
        }
        .map_err(|e| err(id, e.to_string()))?;
        // Covered mass plus the uncovered tail must reconstruct the whole
        // unit of weight.
        let mut mass = series.uncovered_mass();
        for n in 1..=series.horizon() {
            mass += series.weight(n).map_err(|e| err(id, e.to_string()))?;
        }
        if (mass - 1.0).abs() > 1e-12 {
            return Err(err(
                id,
                format!("weights sum to {mass:?} after renormalization, expected 1"),
            ));
        }
        Ok(series)
    }
}

impl SpecDocument {
    fn find<'a, T>(items: &'a [(String, T)], id: &str) -> Option<&'a T> {
        items.iter().find(|(name, _)| name == id).map(|(_, v)| v)
    }

    pub fn set(&self, id: &str) -> Option<&SetBlock> {
        Self::find(&self.sets, id)
    }

    pub fn sequence(&self, id: &str) -> Option<&SequenceBlock> {
        Self::find(&self.sequences, id)
    }

    pub fn series_block(&self, id: &str) -> Option<&SeriesBlock> {
        Self::find(&self.series, id)
    }

    fn built_set(&self, check: &str, id: &str) -> Result<SetDescriptor, ValidationError> {
        let block = self
            .set(id)
            .ok_or_else(|| err(check, format!("unknown set `{id}`")))?;
        block.build(id, self.space.dimension)
    }

    fn built_pair(
        &self,
        check: &str,
        a: &str,
        b: &str,
    ) -> Result<PairSet, ValidationError> {
        PairSet::new(self.built_set(check, a)?, self.built_set(check, b)?)
            .map_err(|e| err(check, e.to_string()))
    }

    /// Full static validation: the space builds, every named block builds,
    /// ids are unique, and every check's references resolve with the right
    /// shapes. Returns the materialized space for reuse.
    pub fn validate(&self) -> Result<Prob2Norm, ValidationError> {
        let space = self.space.build()?;
        let dim = self.space.dimension;

        for (group, ids) in [
            ("set", self.sets.iter().map(|(n, _)| n).collect::<Vec<_>>()),
            ("sequence", self.sequences.iter().map(|(n, _)| n).collect()),
            ("series", self.series.iter().map(|(n, _)| n).collect()),
            ("check", self.checks.iter().map(|c| &c.id).collect()),
        ] {
            for (i, name) in ids.iter().enumerate() {
                if ids[..i].contains(name) {
                    return Err(err(name, format!("duplicate {group} id")));
                }
            }
        }

        for (id, block) in &self.sets {
            block.build(id, dim)?;
        }
        for (id, block) in &self.sequences {
            block.build(id, dim)?;
        }
        for (id, block) in &self.series {
            block.build(id, dim)?;
        }

        for check in &self.checks {
            let id = check.id.as_str();
            match &check.kind {
                CheckKind::Axioms { trials, tol, grid, .. } => {
                    if *trials == 0 {
                        return Err(err(id, "trials must be positive"));
                    }
                    let tol_ok = tol.is_finite() && *tol > 0.0;
                    if !tol_ok {
                        return Err(err(id, "tol must be finite and positive"));
                    }
                    if grid.0 > grid.1 {
                        return Err(err(id, "grid exponents must be ordered"));
                    }
                }
                CheckKind::Classify { target, expect } => {
                    match target {
                        Target::Set(s) => {
                            self.built_set(id, s)?;
                        }
                        Target::Pair(a, b) => {
                            self.built_pair(id, a, b)?;
                        }
                    }
                    if let Some(label) = expect {
                        let known = [
                            "certainly_bounded",
                            "perhaps_bounded",
                            "perhaps_unbounded",
                            "certainly_unbounded",
                        ];
                        if !known.contains(&label.as_str()) {
                            return Err(err(id, format!("unknown class label `{label}`")));
                        }
                    }
                }
                CheckKind::Radius { set, tol } => {
                    self.built_set(id, set)?;
                    let tol_ok = tol.is_finite() && *tol > 0.0;
                    if !tol_ok {
                        return Err(err(id, "tol must be finite and positive"));
                    }
                }
                CheckKind::Converge {
                    sequence,
                    to,
                    witnesses,
                    t,
                    alpha,
                    mode,
                } => {
                    let block = self
                        .sequence(sequence)
                        .ok_or_else(|| err(id, format!("unknown sequence `{sequence}`")))?;
                    block.build(sequence, dim)?;
                    if witnesses.is_empty() {
                        return Err(err(id, "at least one witness is required"));
                    }
                    build_points(id, witnesses, dim)?;
                    if let Some(coords) = to {
                        build_point(id, coords, dim)?;
                    } else if matches!(mode, ConvergeMode::Pnorm | ConvergeMode::Both)
                        && matches!(block, SequenceBlock::Explicit(_))
                    {
                        return Err(err(
                            id,
                            "explicit sequences need a `to` limit for this mode",
                        ));
                    }
                    if !(t.is_finite() && *t > 0.0) {
                        return Err(err(id, "t must be finite and positive"));
                    }
                    if !(*alpha > 0.0 && *alpha < 1.0) {
                        return Err(err(id, "alpha must lie strictly inside (0, 1)"));
                    }
                }
                CheckKind::Series {
                    series,
                    witnesses,
                    t,
                    alpha,
                    vertices,
                } => {
                    let block = self
                        .series_block(series)
                        .ok_or_else(|| err(id, format!("unknown series `{series}`")))?;
                    block.build(series, dim)?;
                    if witnesses.is_empty() {
                        return Err(err(id, "at least one witness is required"));
                    }
                    build_points(id, witnesses, dim)?;
                    build_points(id, vertices, dim)?;
                    if !(t.is_finite() && *t > 0.0) {
                        return Err(err(id, "t must be finite and positive"));
                    }
                    if !(*alpha > 0.0 && *alpha < 1.0) {
                        return Err(err(id, "alpha must lie strictly inside (0, 1)"));
                    }
                }
                CheckKind::Closure(spec) => match spec {
                    ClosureSpec::Scale { pair, alpha } => {
                        self.built_pair(id, &pair.0, &pair.1)?;
                        if *alpha == 0.0 || !alpha.is_finite() {
                            return Err(err(id, "alpha must be finite and nonzero"));
                        }
                    }
                    ClosureSpec::Sum { a, c, b, grid } => {
                        self.built_set(id, a)?;
                        self.built_set(id, c)?;
                        self.built_set(id, b)?;
                        if grid.0 > grid.1 {
                            return Err(err(id, "grid exponents must be ordered"));
                        }
                    }
                    ClosureSpec::PairSum { p1, p2, grid } => {
                        self.built_pair(id, &p1.0, &p1.1)?;
                        self.built_pair(id, &p2.0, &p2.1)?;
                        if grid.0 > grid.1 {
                            return Err(err(id, "grid exponents must be ordered"));
                        }
                    }
                },
            }
        }
        Ok(space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> SpecDocument {
        SpecDocument {
            space: SpaceBlock {
                family: FamilySpec::Standard,
                dimension: 2,
            },
            sets: vec![(
                "pts".to_string(),
                SetBlock::Finite(vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
            )],
            sequences: Vec::new(),
            series: Vec::new(),
            checks: Vec::new(),
        }
    }

    #[test]
    fn minimal_document_validates() {
        assert!(minimal().validate().is_ok());
    }

    #[test]
    fn unknown_reference_is_flagged_with_the_check_id() {
        let mut doc = minimal();
        doc.checks.push(CheckBlock {
            id: "classify-1".to_string(),
            kind: CheckKind::Classify {
                target: Target::Set("nope".to_string()),
                expect: None,
            },
        });
        let e = doc.validate().unwrap_err();
        assert_eq!(e.block, "classify-1");
        assert!(e.message.contains("nope"));
    }

    #[test]
    fn dimension_mismatch_is_flagged_with_the_set_id() {
        let mut doc = minimal();
        doc.sets.push((
            "bad".to_string(),
            SetBlock::Finite(vec![vec![1.0, 2.0, 3.0]]),
        ));
        let e = doc.validate().unwrap_err();
        assert_eq!(e.block, "bad");
        assert!(e.message.contains("dimension"));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let mut doc = minimal();
        doc.sets.push((
            "pts".to_string(),
            SetBlock::Finite(vec![vec![1.0, 1.0]]),
        ));
        let e = doc.validate().unwrap_err();
        assert!(e.message.contains("duplicate"));
    }

    #[test]
    fn custom_table_must_be_total() {
        let doc = SpecDocument {
            space: SpaceBlock {
                family: FamilySpec::Custom(vec![CustomRow {
                    upper: 4.0,
                    shape: ShapeSpec::Ratio(Param::Area),
                }]),
                dimension: 2,
            },
            sets: Vec::new(),
            sequences: Vec::new(),
            series: Vec::new(),
            checks: Vec::new(),
        };
        let e = doc.validate().unwrap_err();
        assert!(e.message.contains("inf"));
    }

    #[test]
    fn custom_table_evaluates_rows_in_order() {
        let doc = SpecDocument {
            space: SpaceBlock {
                family: FamilySpec::Custom(vec![
                    CustomRow {
                        upper: 0.0,
                        shape: ShapeSpec::Step(Param::Value(0.0)),
                    },
                    CustomRow {
                        upper: f64::INFINITY,
                        shape: ShapeSpec::Scaled(0.5, Param::Area),
                    },
                ]),
                dimension: 2,
            },
            sets: Vec::new(),
            sequences: Vec::new(),
            series: Vec::new(),
            checks: Vec::new(),
        };
        let space = doc.validate().unwrap();
        let x = Point::new(vec![1.0, 0.0]).unwrap();
        let y = Point::new(vec![0.0, 1.0]).unwrap();
        let f = space.nu(&x, &y).unwrap();
        assert_eq!(f, dfalgebra::scaled_ratio(0.5, 1.0).unwrap());
        let dep = space.nu(&x, &x).unwrap();
        assert_eq!(dep, dfalgebra::epsilon(0.0));
    }

    #[test]
    fn explicit_weights_must_cover_the_horizon() {
        let block = SeriesBlock {
            weights: WeightsSpec::Explicit(vec![0.5, 0.5]),
            points: PointsSpec::Cycle(vec![vec![1.0, 0.0]]),
            horizon: 3,
        };
        let e = block.build("s", 2).unwrap_err();
        assert!(e.message.contains("weights"));
    }
}
