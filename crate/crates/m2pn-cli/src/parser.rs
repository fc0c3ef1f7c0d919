//! Line-oriented document parser.
//!
//! A document is a sequence of blocks. A block starts with a flush-left
//! header line `<kind> <id>` (kinds: `space`, `set`, `sequence`, `series`,
//! `check`) and continues with indented `key value...` field lines. `#`
//! starts a comment anywhere; blank lines are ignored. Numbers accept
//! decimal or rational `p/q` forms, and `inf` where an infinite bound is
//! meaningful. All errors carry a 1-based line and column.

use crate::document::{
    AnalyticSpec, AxiomVariant, CheckBlock, CheckKind, ClosureSpec, ConvergeMode, CustomRow,
    FamilySpec, Param, PointsSpec, SequenceBlock, SeriesBlock, SetBlock, ShapeSpec, SpaceBlock,
    SpecDocument, Target, WeightsSpec, DEFAULT_AXIOM_GRID, DEFAULT_AXIOM_TOL,
    DEFAULT_CLOSURE_GRID, DEFAULT_RADIUS_TOL, DEFAULT_SEED, DEFAULT_TRIALS,
};
use crate::scalar::{parse_finite, parse_i32, parse_scalar, parse_u64, parse_usize};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

/// One token and its 1-based column.
#[derive(Debug, Clone)]
struct Tok {
    col: usize,
    text: String,
}

fn tokenize(line: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok {
                    col: s + 1,
                    text: line[s..i].to_string(),
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            col: s + 1,
            text: line[s..].to_string(),
        });
    }
    out
}

#[derive(Debug, Clone)]
struct RawField {
    key: Tok,
    values: Vec<Tok>,
    line: usize,
}

#[derive(Debug, Clone)]
struct RawBlock {
    kind: String,
    id: String,
    line: usize,
    fields: Vec<RawField>,
}

const BLOCK_KINDS: [&str; 5] = ["space", "set", "sequence", "series", "check"];

fn scan(text: &str) -> Result<Vec<RawBlock>, ParseError> {
    let mut blocks: Vec<RawBlock> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let flush_left = !content.starts_with(char::is_whitespace);
        let toks = tokenize(content);
        if flush_left {
            if toks.len() != 2 {
                return fail(
                    line_no,
                    1,
                    "block header must be `<kind> <id>` (fields are indented)",
                );
            }
            let kind = &toks[0].text;
            if !BLOCK_KINDS.contains(&kind.as_str()) {
                return fail(
                    line_no,
                    toks[0].col,
                    format!("unknown block kind `{kind}`"),
                );
            }
            let id = &toks[1].text;
            if !id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
                || id.is_empty()
            {
                return fail(
                    line_no,
                    toks[1].col,
                    "block id may contain only letters, digits, `-`, `_`",
                );
            }
            blocks.push(RawBlock {
                kind: kind.clone(),
                id: id.clone(),
                line: line_no,
                fields: Vec::new(),
            });
        } else {
            let Some(block) = blocks.last_mut() else {
                return fail(line_no, toks[0].col, "field line before any block header");
            };
            let mut toks = toks;
            let key = toks.remove(0);
            block.fields.push(RawField {
                key,
                values: toks,
                line: line_no,
            });
        }
    }
    Ok(blocks)
}

/// Field accessor that enforces per-key arity rules during lowering.
struct Fields<'a> {
    block: &'a RawBlock,
    used: Vec<bool>,
}

impl<'a> Fields<'a> {
    fn new(block: &'a RawBlock) -> Self {
        Fields {
            block,
            used: vec![false; block.fields.len()],
        }
    }

    /// All fields with the given key, marking them consumed.
    fn all(&mut self, key: &str) -> Vec<&'a RawField> {
        let mut out = Vec::new();
        for (i, f) in self.block.fields.iter().enumerate() {
            if f.key.text == key {
                self.used[i] = true;
                out.push(f);
            }
        }
        out
    }

    /// A key that may appear at most once.
    fn at_most_one(&mut self, key: &str) -> Result<Option<&'a RawField>, ParseError> {
        let found = self.all(key);
        match found.len() {
            0 => Ok(None),
            1 => Ok(Some(found[0])),
            _ => fail(
                found[1].line,
                found[1].key.col,
                format!("field `{key}` given more than once"),
            ),
        }
    }

    /// A key that must appear exactly once.
    fn exactly_one(&mut self, key: &str) -> Result<&'a RawField, ParseError> {
        match self.at_most_one(key)? {
            Some(f) => Ok(f),
            None => fail(
                self.block.line,
                1,
                format!(
                    "{} block `{}` is missing field `{key}`",
                    self.block.kind, self.block.id
                ),
            ),
        }
    }

    /// Rejects any field key that was never consumed.
    fn finish(self) -> Result<(), ParseError> {
        for (i, f) in self.block.fields.iter().enumerate() {
            if !self.used[i] {
                return fail(
                    f.line,
                    f.key.col,
                    format!(
                        "unknown field `{}` in {} block `{}`",
                        f.key.text, self.block.kind, self.block.id
                    ),
                );
            }
        }
        Ok(())
    }
}

fn values_exactly(f: &RawField, n: usize) -> Result<&[Tok], ParseError> {
    if f.values.len() != n {
        return fail(
            f.line,
            f.key.col,
            format!(
                "field `{}` expects {n} value{}, got {}",
                f.key.text,
                if n == 1 { "" } else { "s" },
                f.values.len()
            ),
        );
    }
    Ok(&f.values)
}

fn scalar_at(f: &RawField, i: usize, parse: fn(&str) -> Result<f64, String>) -> Result<f64, ParseError> {
    let tok = &f.values[i];
    parse(&tok.text).or_else(|msg| fail(f.line, tok.col, msg))
}

fn one_scalar(f: &RawField) -> Result<f64, ParseError> {
    values_exactly(f, 1)?;
    scalar_at(f, 0, parse_scalar)
}

fn one_finite(f: &RawField) -> Result<f64, ParseError> {
    values_exactly(f, 1)?;
    scalar_at(f, 0, parse_finite)
}

fn one_usize(f: &RawField) -> Result<usize, ParseError> {
    values_exactly(f, 1)?;
    let tok = &f.values[0];
    parse_usize(&tok.text).or_else(|msg| fail(f.line, tok.col, msg))
}

fn one_u64(f: &RawField) -> Result<u64, ParseError> {
    values_exactly(f, 1)?;
    let tok = &f.values[0];
    parse_u64(&tok.text).or_else(|msg| fail(f.line, tok.col, msg))
}

fn one_word(f: &RawField) -> Result<&str, ParseError> {
    values_exactly(f, 1)?;
    Ok(&f.values[0].text)
}

fn two_exponents(f: &RawField) -> Result<(i32, i32), ParseError> {
    values_exactly(f, 2)?;
    let lo = parse_i32(&f.values[0].text)
        .or_else(|msg| fail(f.line, f.values[0].col, msg))?;
    let hi = parse_i32(&f.values[1].text)
        .or_else(|msg| fail(f.line, f.values[1].col, msg))?;
    Ok((lo, hi))
}

fn coords(f: &RawField) -> Result<Vec<f64>, ParseError> {
    if f.values.is_empty() {
        return fail(f.line, f.key.col, "expected coordinates");
    }
    f.values
        .iter()
        .map(|tok| parse_finite(&tok.text).or_else(|msg| fail(f.line, tok.col, msg)))
        .collect()
}

fn id_values<const N: usize>(f: &RawField) -> Result<[String; N], ParseError> {
    values_exactly(f, N)?;
    let mut out: [String; N] = std::array::from_fn(|_| String::new());
    for (slot, tok) in out.iter_mut().zip(&f.values) {
        *slot = tok.text.clone();
    }
    Ok(out)
}

/// Parses a shape template starting at `values[from]`.
fn shape_from(f: &RawField, from: usize) -> Result<ShapeSpec, ParseError> {
    let Some(kw) = f.values.get(from) else {
        return fail(f.line, f.key.col, "expected a shape (step | ratio | scaled | stairs)");
    };
    let params = &f.values[from + 1..];
    let param = |tok: &Tok| -> Result<Param, ParseError> {
        if tok.text == "area" {
            Ok(Param::Area)
        } else {
            parse_scalar(&tok.text)
                .map(Param::Value)
                .or_else(|msg| fail(f.line, tok.col, msg))
        }
    };
    match kw.text.as_str() {
        "step" | "ratio" => {
            if params.len() != 1 {
                return fail(f.line, kw.col, format!("`{}` takes one parameter", kw.text));
            }
            let p = param(&params[0])?;
            Ok(if kw.text == "step" {
                ShapeSpec::Step(p)
            } else {
                ShapeSpec::Ratio(p)
            })
        }
        "scaled" => {
            if params.len() != 2 {
                return fail(f.line, kw.col, "`scaled` takes scale and area parameters");
            }
            let scale = parse_finite(&params[0].text)
                .or_else(|msg| fail(f.line, params[0].col, msg))?;
            Ok(ShapeSpec::Scaled(scale, param(&params[1])?))
        }
        "stairs" => {
            if params.is_empty() || !params.len().is_multiple_of(2) {
                return fail(
                    f.line,
                    kw.col,
                    "`stairs` takes threshold/value pairs",
                );
            }
            let mut bps = Vec::with_capacity(params.len() / 2);
            for pair in params.chunks(2) {
                let t = parse_finite(&pair[0].text)
                    .or_else(|msg| fail(f.line, pair[0].col, msg))?;
                let v = parse_finite(&pair[1].text)
                    .or_else(|msg| fail(f.line, pair[1].col, msg))?;
                bps.push((t, v));
            }
            Ok(ShapeSpec::Stairs(bps))
        }
        other => fail(f.line, kw.col, format!("unknown shape `{other}`")),
    }
}

fn lower_space(block: &RawBlock) -> Result<SpaceBlock, ParseError> {
    let mut fields = Fields::new(block);
    let family_field = fields.exactly_one("family")?;
    let dimension = one_usize(fields.exactly_one("dimension")?)?;
    let rules = fields.all("rule");
    let family = match one_word(family_field)? {
        "standard" => FamilySpec::Standard,
        "indicator" => FamilySpec::Indicator,
        "custom" => {
            let mut rows = Vec::with_capacity(rules.len());
            for f in &rules {
                if f.values.is_empty() {
                    return fail(f.line, f.key.col, "rule needs `<bound> <shape...>`");
                }
                let upper = scalar_at(f, 0, parse_scalar)?;
                rows.push(CustomRow {
                    upper,
                    shape: shape_from(f, 1)?,
                });
            }
            FamilySpec::Custom(rows)
        }
        other => {
            return fail(
                family_field.line,
                family_field.values[0].col,
                format!("unknown family `{other}` (standard | indicator | custom)"),
            )
        }
    };
    if !matches!(family, FamilySpec::Custom(_)) {
        if let Some(f) = rules.first() {
            return fail(
                f.line,
                f.key.col,
                "rule rows are only valid with `family custom`",
            );
        }
    }
    fields.finish()?;
    Ok(SpaceBlock { family, dimension })
}

fn lower_set(block: &RawBlock) -> Result<SetBlock, ParseError> {
    let mut fields = Fields::new(block);
    let kind_field = fields.exactly_one("kind")?;
    let out = match one_word(kind_field)? {
        "finite" => {
            let pts = fields
                .all("point")
                .into_iter()
                .map(coords)
                .collect::<Result<Vec<_>, _>>()?;
            SetBlock::Finite(pts)
        }
        "analytic" => {
            let area_sup = one_scalar(fields.exactly_one("area_sup")?)?;
            let family_field = fields.exactly_one("family")?;
            let family = match one_word(family_field)? {
                "standard" => AnalyticSpec::Standard,
                "indicator" => AnalyticSpec::Indicator,
                "custom" => {
                    let rule = fields.exactly_one("rule")?;
                    AnalyticSpec::CustomRule(shape_from(rule, 0)?)
                }
                other => {
                    return fail(
                        family_field.line,
                        family_field.values[0].col,
                        format!("unknown analytic family `{other}`"),
                    )
                }
            };
            SetBlock::Analytic { area_sup, family }
        }
        other => {
            return fail(
                kind_field.line,
                kind_field.values[0].col,
                format!("unknown set kind `{other}` (finite | analytic)"),
            )
        }
    };
    fields.finish()?;
    Ok(out)
}

fn lower_sequence(block: &RawBlock) -> Result<SequenceBlock, ParseError> {
    let mut fields = Fields::new(block);
    let kind_field = fields.exactly_one("kind")?;
    let out = match one_word(kind_field)? {
        "affine" => SequenceBlock::Affine {
            limit: coords(fields.exactly_one("limit")?)?,
            dir: coords(fields.exactly_one("dir")?)?,
            horizon: one_usize(fields.exactly_one("horizon")?)?,
        },
        "explicit" => {
            let pts = fields
                .all("point")
                .into_iter()
                .map(coords)
                .collect::<Result<Vec<_>, _>>()?;
            SequenceBlock::Explicit(pts)
        }
        other => {
            return fail(
                kind_field.line,
                kind_field.values[0].col,
                format!("unknown sequence kind `{other}` (affine | explicit)"),
            )
        }
    };
    fields.finish()?;
    Ok(out)
}

fn lower_series(block: &RawBlock) -> Result<SeriesBlock, ParseError> {
    let mut fields = Fields::new(block);
    let weights_field = fields.exactly_one("weights")?;
    if weights_field.values.is_empty() {
        return fail(
            weights_field.line,
            weights_field.key.col,
            "weights need `geometric` or `explicit <w...>`",
        );
    }
    let weights = match weights_field.values[0].text.as_str() {
        "geometric" => {
            values_exactly(weights_field, 1)?;
            WeightsSpec::Geometric
        }
        "explicit" => {
            if weights_field.values.len() < 2 {
                return fail(
                    weights_field.line,
                    weights_field.values[0].col,
                    "explicit weights need at least one value",
                );
            }
            let ws = weights_field.values[1..]
                .iter()
                .map(|tok| {
                    parse_finite(&tok.text)
                        .or_else(|msg| fail(weights_field.line, tok.col, msg))
                })
                .collect::<Result<Vec<_>, _>>()?;
            WeightsSpec::Explicit(ws)
        }
        other => {
            return fail(
                weights_field.line,
                weights_field.values[0].col,
                format!("unknown weight rule `{other}` (geometric | explicit)"),
            )
        }
    };
    let points_field = fields.exactly_one("points")?;
    let pts = fields
        .all("point")
        .into_iter()
        .map(coords)
        .collect::<Result<Vec<_>, _>>()?;
    let points = match one_word(points_field)? {
        "cycle" => PointsSpec::Cycle(pts),
        "list" => PointsSpec::List(pts),
        other => {
            return fail(
                points_field.line,
                points_field.values[0].col,
                format!("unknown point rule `{other}` (cycle | list)"),
            )
        }
    };
    let horizon = one_usize(fields.exactly_one("horizon")?)?;
    fields.finish()?;
    Ok(SeriesBlock {
        weights,
        points,
        horizon,
    })
}

fn lower_check(block: &RawBlock) -> Result<CheckBlock, ParseError> {
    let mut fields = Fields::new(block);
    let type_field = fields.exactly_one("type")?;
    let kind = match one_word(type_field)? {
        "axioms" => {
            let variant = match fields.at_most_one("variant")? {
                None => AxiomVariant::Standard,
                Some(f) => match one_word(f)? {
                    "standard" => AxiomVariant::Standard,
                    "generalized" => AxiomVariant::Generalized,
                    other => {
                        return fail(
                            f.line,
                            f.values[0].col,
                            format!("unknown variant `{other}` (standard | generalized)"),
                        )
                    }
                },
            };
            let trials = match fields.at_most_one("trials")? {
                Some(f) => one_usize(f)?,
                None => DEFAULT_TRIALS,
            };
            let tol = match fields.at_most_one("tol")? {
                Some(f) => one_finite(f)?,
                None => DEFAULT_AXIOM_TOL,
            };
            let grid = match fields.at_most_one("grid")? {
                Some(f) => two_exponents(f)?,
                None => DEFAULT_AXIOM_GRID,
            };
            let seed = match fields.at_most_one("seed")? {
                Some(f) => one_u64(f)?,
                None => DEFAULT_SEED,
            };
            CheckKind::Axioms {
                variant,
                trials,
                tol,
                grid,
                seed,
            }
        }
        "classify" => {
            let set = fields.at_most_one("set")?;
            let pair = fields.at_most_one("pair")?;
            let target = match (set, pair) {
                (Some(f), None) => Target::Set(one_word(f)?.to_string()),
                (None, Some(f)) => {
                    let [a, b] = id_values::<2>(f)?;
                    Target::Pair(a, b)
                }
                (None, None) => {
                    return fail(
                        block.line,
                        1,
                        format!("check `{}` needs a `set` or `pair` field", block.id),
                    )
                }
                (Some(_), Some(p)) => {
                    return fail(
                        p.line,
                        p.key.col,
                        "give either `set` or `pair`, not both",
                    )
                }
            };
            let expect = match fields.at_most_one("expect")? {
                Some(f) => Some(one_word(f)?.to_string()),
                None => None,
            };
            CheckKind::Classify { target, expect }
        }
        "radius" => {
            let set = one_word(fields.exactly_one("set")?)?.to_string();
            let tol = match fields.at_most_one("tol")? {
                Some(f) => one_finite(f)?,
                None => DEFAULT_RADIUS_TOL,
            };
            CheckKind::Radius { set, tol }
        }
        "converge" => {
            let sequence = one_word(fields.exactly_one("sequence")?)?.to_string();
            let to = match fields.at_most_one("to")? {
                Some(f) => Some(coords(f)?),
                None => None,
            };
            let witnesses = fields
                .all("witness")
                .into_iter()
                .map(coords)
                .collect::<Result<Vec<_>, _>>()?;
            let t = one_finite(fields.exactly_one("t")?)?;
            let alpha = one_finite(fields.exactly_one("alpha")?)?;
            let mode = match fields.at_most_one("mode")? {
                None => ConvergeMode::Pnorm,
                Some(f) => match one_word(f)? {
                    "pnorm" => ConvergeMode::Pnorm,
                    "cauchy" => ConvergeMode::Cauchy,
                    "both" => ConvergeMode::Both,
                    other => {
                        return fail(
                            f.line,
                            f.values[0].col,
                            format!("unknown mode `{other}` (pnorm | cauchy | both)"),
                        )
                    }
                },
            };
            CheckKind::Converge {
                sequence,
                to,
                witnesses,
                t,
                alpha,
                mode,
            }
        }
        "series" => CheckKind::Series {
            series: one_word(fields.exactly_one("series")?)?.to_string(),
            witnesses: fields
                .all("witness")
                .into_iter()
                .map(coords)
                .collect::<Result<Vec<_>, _>>()?,
            t: one_finite(fields.exactly_one("t")?)?,
            alpha: one_finite(fields.exactly_one("alpha")?)?,
            vertices: fields
                .all("vertex")
                .into_iter()
                .map(coords)
                .collect::<Result<Vec<_>, _>>()?,
        },
        "closure" => {
            let variant_field = fields.exactly_one("variant")?;
            let spec = match one_word(variant_field)? {
                "scale" => {
                    let [a, b] = id_values::<2>(fields.exactly_one("pair")?)?;
                    let alpha = one_finite(fields.exactly_one("alpha")?)?;
                    ClosureSpec::Scale {
                        pair: (a, b),
                        alpha,
                    }
                }
                "sum" => {
                    let [a, c, b] = id_values::<3>(fields.exactly_one("sets")?)?;
                    let grid = match fields.at_most_one("grid")? {
                        Some(f) => two_exponents(f)?,
                        None => DEFAULT_CLOSURE_GRID,
                    };
                    ClosureSpec::Sum { a, c, b, grid }
                }
                "pairsum" => {
                    let [a, b, c, d] = id_values::<4>(fields.exactly_one("pairs")?)?;
                    let grid = match fields.at_most_one("grid")? {
                        Some(f) => two_exponents(f)?,
                        None => DEFAULT_CLOSURE_GRID,
                    };
                    ClosureSpec::PairSum {
                        p1: (a, b),
                        p2: (c, d),
                        grid,
                    }
                }
                other => {
                    return fail(
                        variant_field.line,
                        variant_field.values[0].col,
                        format!("unknown closure variant `{other}` (scale | sum | pairsum)"),
                    )
                }
            };
            CheckKind::Closure(spec)
        }
        other => {
            return fail(
                type_field.line,
                type_field.values[0].col,
                format!(
                    "unknown check type `{other}` \
                     (axioms | classify | radius | converge | series | closure)"
                ),
            )
        }
    };
    fields.finish()?;
    Ok(CheckBlock {
        id: block.id.clone(),
        kind,
    })
}

/// Parses a whole document. Reference resolution and numeric-domain
/// checking live in [`SpecDocument::validate`]; this stage is purely
/// syntactic plus local field typing.
pub fn parse_document(text: &str) -> Result<SpecDocument, ParseError> {
    let blocks = scan(text)?;
    let mut space: Option<SpaceBlock> = None;
    let mut sets = Vec::new();
    let mut sequences = Vec::new();
    let mut series = Vec::new();
    let mut checks = Vec::new();
    for block in &blocks {
        match block.kind.as_str() {
            "space" => {
                if space.is_some() {
                    return fail(block.line, 1, "a document has exactly one space block");
                }
                space = Some(lower_space(block)?);
            }
            "set" => sets.push((block.id.clone(), lower_set(block)?)),
            "sequence" => sequences.push((block.id.clone(), lower_sequence(block)?)),
            "series" => series.push((block.id.clone(), lower_series(block)?)),
            "check" => checks.push(lower_check(block)?),
            _ => unreachable!("scan admits only known block kinds"),
        }
    }
    let Some(space) = space else {
        return fail(1, 1, "document needs a space block");
    };
    Ok(SpecDocument {
        space,
        sets,
        sequences,
        series,
        checks,
    })
}
