//! Check execution and report assembly.
//!
//! Output is line-oriented and fully deterministic for a fixed
//! `(document, seed)` pair: one `RESULT <check-id> PASS|FAIL|EXHAUSTED
//! key=value...` line per check block, in document order, each followed by
//! `CE <tuple>` lines when the check collected counterexamples. Floats are
//! rendered with Rust's shortest round-trip formatting, so identical inputs
//! produce byte-identical reports.

use std::io::{self, Write};

use m2pn::dbound::{
    classify_pair, pair_sum_closure_check, phi, radius, scaling_closure_check, sum_closure_check,
};
use m2pn::dfalgebra::canonical_grid;
use m2pn::geometry::Point;
use m2pn::sequences::{
    converges_to, convex_series_closed_probe, convex_series_converges, is_cauchy,
    lemma21_equivalence, Verdict,
};
use m2pn::space::{check_2pn_axioms, check_mg2pn_axioms, geometric_grid, Prob2Norm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::{
    AxiomVariant, CheckKind, ClosureSpec, ConvergeMode, SequenceBlock, SpecDocument, Target,
};

/// Command-line overrides applied on top of document fields.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// Multiplies every geometric grid point (axiom and closure sweeps).
    pub grid_scale: Option<f64>,
    /// Replaces the trial count of every axioms check.
    pub trials: Option<usize>,
    /// Replaces the seed of every randomized check.
    pub seed: Option<u64>,
}

/// Outcome of one check, ready for printing.
struct Line {
    status: &'static str,
    details: Vec<(String, String)>,
    counterexamples: Vec<String>,
}

impl Line {
    fn new(status: &'static str) -> Self {
        Line {
            status,
            details: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn key(mut self, key: &str, value: impl Into<String>) -> Self {
        self.details.push((key.to_string(), value.into()));
        self
    }

    fn float(self, key: &str, value: f64) -> Self {
        self.key(key, format!("{value:?}"))
    }
}

fn pass() -> Line {
    Line::new("PASS")
}

fn fail() -> Line {
    Line::new("FAIL")
}

fn exhausted(horizon: usize) -> Line {
    Line::new("EXHAUSTED").key("horizon", horizon.to_string())
}

fn run_error(e: &m2pn::Error) -> Line {
    fail().key("error", format!("\"{e}\""))
}

fn verdict_word(v: &Verdict) -> String {
    match v {
        Verdict::CertifiedAt(n) => format!("certified_at_{n}"),
        Verdict::Exhausted { horizon } => format!("exhausted_{horizon}"),
    }
}

fn scaled_grid(exps: (i32, i32), ov: &Overrides) -> Vec<f64> {
    let mut grid = geometric_grid(exps.0, exps.1);
    if let Some(s) = ov.grid_scale {
        for t in &mut grid {
            *t *= s;
        }
    }
    grid
}

fn fmt_point(p: &Point) -> String {
    p.to_string()
}

fn build_points(lists: &[Vec<f64>]) -> Vec<Point> {
    lists
        .iter()
        .map(|cs| Point::new(cs.clone()).expect("document validated"))
        .collect()
}

fn run_check(
    doc: &SpecDocument,
    space: &Prob2Norm,
    kind: &CheckKind,
    ov: &Overrides,
) -> Line {
    let dim = doc.space.dimension;
    let built_set = |id: &str| {
        doc.set(id)
            .expect("document validated")
            .build(id, dim)
            .expect("document validated")
    };
    match kind {
        CheckKind::Axioms {
            variant,
            trials,
            tol,
            grid,
            seed,
        } => {
            let grid = scaled_grid(*grid, ov);
            let trials = ov.trials.unwrap_or(*trials);
            let seed = ov.seed.unwrap_or(*seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let reports = match variant {
                AxiomVariant::Standard => {
                    check_2pn_axioms(space, &grid, &grid, trials, *tol, &mut rng)
                }
                AxiomVariant::Generalized => {
                    check_mg2pn_axioms(space, &grid, &grid, trials, *tol, &mut rng)
                }
            };
            let reports = match reports {
                Ok(r) => r,
                Err(e) => return run_error(&e),
            };
            match reports.iter().find(|r| !r.pass()) {
                None => pass()
                    .key("axioms", reports.len().to_string())
                    .key("trials", trials.to_string()),
                Some(report) => {
                    let mut line = fail().key("axiom", report.axiom.clone());
                    line.counterexamples = report.counterexamples.clone();
                    line
                }
            }
        }
        CheckKind::Classify { target, expect } => {
            let classification = match target {
                Target::Set(id) => m2pn::dbound::classify(&built_set(id), space),
                Target::Pair(a, b) => {
                    match m2pn::dbound::PairSet::new(built_set(a), built_set(b)) {
                        Ok(p) => classify_pair(&p, space),
                        Err(e) => return run_error(&e),
                    }
                }
            };
            let classification = match classification {
                Ok(c) => c,
                Err(e) => return run_error(&e),
            };
            let label = classification.class.label();
            if let Some(expected) = expect {
                if expected != label {
                    return fail()
                        .key("expected", expected.clone())
                        .key("class", label)
                        .float("limit", classification.limit);
                }
            }
            let mut line = pass()
                .key("class", label)
                .float("limit", classification.limit);
            if let Some(w) = classification.witness {
                line = line.float("witness", w);
            }
            line
        }
        CheckKind::Radius { set, tol } => {
            let descriptor = built_set(set);
            let r = match radius(&descriptor, space) {
                Ok(r) => r,
                Err(e) => return run_error(&e),
            };
            let grid = canonical_grid(&r, &r);
            let mut max_dev = 0f64;
            for &t in &grid {
                match phi(&descriptor, space, t) {
                    Ok(direct) => max_dev = max_dev.max((direct - r.eval(t)).abs()),
                    Err(e) => return run_error(&e),
                }
            }
            let line = if max_dev <= *tol { pass() } else { fail() };
            line.key("form", r.to_string()).float("max_dev", max_dev)
        }
        CheckKind::Converge {
            sequence,
            to,
            witnesses,
            t,
            alpha,
            mode,
        } => {
            let block = doc.sequence(sequence).expect("document validated");
            let rule = block.build(sequence, dim).expect("document validated");
            let witnesses = build_points(witnesses);
            let x = match (to, block) {
                (Some(coords), _) => Point::new(coords.clone()).expect("document validated"),
                (None, SequenceBlock::Affine { limit, .. }) => {
                    Point::new(limit.clone()).expect("document validated")
                }
                (None, SequenceBlock::Explicit(_)) => {
                    // Validation admits this only for cauchy mode, which
                    // ignores the limit; any in-range point works.
                    Point::zero(dim).expect("dimension validated")
                }
            };
            match mode {
                ConvergeMode::Pnorm => {
                    match converges_to(space, &rule, &x, &witnesses, *t, *alpha) {
                        Ok(Verdict::CertifiedAt(n)) => pass().key("n0", n.to_string()),
                        Ok(Verdict::Exhausted { horizon }) => exhausted(horizon),
                        Err(e) => run_error(&e),
                    }
                }
                ConvergeMode::Cauchy => {
                    match is_cauchy(space, &rule, &witnesses, *t, *alpha) {
                        Ok(Verdict::CertifiedAt(n)) => pass().key("n0", n.to_string()),
                        Ok(Verdict::Exhausted { horizon }) => exhausted(horizon),
                        Err(e) => run_error(&e),
                    }
                }
                ConvergeMode::Both => {
                    // The two-route comparison is defined against the
                    // standard family regardless of the document's space.
                    let report = match lemma21_equivalence(&rule, &x, &witnesses, *alpha, *t) {
                        Ok(r) => r,
                        Err(e) => return run_error(&e),
                    };
                    if !report.agree {
                        return fail()
                            .key("norm", verdict_word(&report.norm_verdict))
                            .key("pnorm", verdict_word(&report.pnorm_verdict));
                    }
                    match (&report.norm_verdict, &report.pnorm_verdict) {
                        (Verdict::CertifiedAt(a), Verdict::CertifiedAt(b)) => pass()
                            .key("norm_n0", a.to_string())
                            .key("pnorm_n0", b.to_string()),
                        (_, Verdict::Exhausted { horizon }) => exhausted(*horizon),
                        (Verdict::Exhausted { horizon }, _) => exhausted(*horizon),
                    }
                }
            }
        }
        CheckKind::Series {
            series,
            witnesses,
            t,
            alpha,
            vertices,
        } => {
            let block = doc.series_block(series).expect("document validated");
            let built = block.build(series, dim).expect("document validated");
            let witnesses = build_points(witnesses);
            if vertices.is_empty() {
                let outcome =
                    match convex_series_converges(space, &built, &witnesses, *t, *alpha) {
                        Ok(o) => o,
                        Err(e) => return run_error(&e),
                    };
                match outcome.verdict {
                    Verdict::CertifiedAt(n) => {
                        let certificate = outcome
                            .certificates
                            .iter()
                            .copied()
                            .fold(1.0, f64::min);
                        let limit = outcome.limit_estimate.expect("certified outcomes carry a limit");
                        pass()
                            .key("n0", n.to_string())
                            .key("limit", fmt_point(&limit))
                            .float("certificate", certificate)
                    }
                    Verdict::Exhausted { horizon } => exhausted(horizon),
                }
            } else {
                let vertices = build_points(vertices);
                let report = match convex_series_closed_probe(
                    space, &vertices, &built, &witnesses, *t, *alpha,
                ) {
                    Ok(r) => r,
                    Err(e) => return run_error(&e),
                };
                match report.verdict {
                    Verdict::Exhausted { horizon } => exhausted(horizon),
                    Verdict::CertifiedAt(n) => {
                        let line = if report.passes() { pass() } else { fail() };
                        let mut line = line.key("n0", n.to_string());
                        if let Some(limit) = &report.limit_estimate {
                            line = line.key("limit", fmt_point(limit));
                        }
                        if let Some(d) = report.distance {
                            line = line.float("distance", d);
                        }
                        line.float("tolerance", report.tolerance)
                    }
                }
            }
        }
        CheckKind::Closure(spec) => match spec {
            ClosureSpec::Scale { pair, alpha } => {
                let p = match m2pn::dbound::PairSet::new(built_set(&pair.0), built_set(&pair.1))
                {
                    Ok(p) => p,
                    Err(e) => return run_error(&e),
                };
                match scaling_closure_check(*alpha, &p, space) {
                    Ok(true) => pass().key("variant", "scale").float("alpha", *alpha),
                    Ok(false) => fail().key("variant", "scale").float("alpha", *alpha),
                    Err(e) => run_error(&e),
                }
            }
            ClosureSpec::Sum { a, c, b, grid } => {
                let grid = scaled_grid(*grid, ov);
                match sum_closure_check(
                    &built_set(a),
                    &built_set(c),
                    &built_set(b),
                    space,
                    &grid,
                ) {
                    Ok(true) => pass().key("variant", "sum"),
                    Ok(false) => fail().key("variant", "sum"),
                    Err(e) => run_error(&e),
                }
            }
            ClosureSpec::PairSum { p1, p2, grid } => {
                let grid = scaled_grid(*grid, ov);
                let pair = |ids: &(String, String)| {
                    m2pn::dbound::PairSet::new(built_set(&ids.0), built_set(&ids.1))
                };
                let (q1, q2) = match (pair(p1), pair(p2)) {
                    (Ok(q1), Ok(q2)) => (q1, q2),
                    (Err(e), _) | (_, Err(e)) => return run_error(&e),
                };
                match pair_sum_closure_check(&q1, &q2, space, &grid) {
                    Ok(true) => pass().key("variant", "pairsum"),
                    Ok(false) => fail().key("variant", "pairsum"),
                    Err(e) => run_error(&e),
                }
            }
        },
    }
}

/// Runs every check in document order, writing the report to `out`.
/// Returns `true` when no check failed (exhausted checks do not fail).
pub fn run_document(
    doc: &SpecDocument,
    ov: &Overrides,
    out: &mut dyn Write,
) -> io::Result<bool> {
    let space = doc.validate().expect("caller validates before running");
    let mut all_ok = true;
    for check in &doc.checks {
        let line = run_check(doc, &space, &check.kind, ov);
        if line.status == "FAIL" {
            all_ok = false;
        }
        write!(out, "RESULT {} {}", check.id, line.status)?;
        for (key, value) in &line.details {
            write!(out, " {key}={value}")?;
        }
        writeln!(out)?;
        for ce in &line.counterexamples {
            writeln!(out, "CE {ce}")?;
        }
    }
    Ok(all_ok)
}

/// Convenience wrapper returning the report as a string.
pub fn run_to_string(doc: &SpecDocument, ov: &Overrides) -> (String, bool) {
    let mut buf = Vec::new();
    let ok = run_document(doc, ov, &mut buf).expect("writing to a buffer cannot fail");
    (String::from_utf8(buf).expect("report is utf-8"), ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_document;

    fn run_text(text: &str) -> (String, bool) {
        let doc = parse_document(text).expect("test document parses");
        doc.validate().expect("test document validates");
        run_to_string(&doc, &Overrides::default())
    }

    const CLASSIFY_DOC: &str = "\
space main
  family standard
  dimension 2

set pts
  kind finite
  point 1 0
  point 0 1
  point 2 0

check classify-1
  type classify
  set pts
";

    #[test]
    fn classify_reports_the_worst_pair_class() {
        let (report, ok) = run_text(CLASSIFY_DOC);
        assert!(ok);
        assert_eq!(
            report,
            "RESULT classify-1 PASS class=perhaps_bounded limit=1.0\n"
        );
    }

    #[test]
    fn violating_custom_table_fails_the_first_axiom() {
        let text = "\
space main
  family custom
  dimension 2
  rule inf step -1

check axioms-1
  type axioms
  trials 10
";
        let (report, ok) = run_text(text);
        assert!(!ok);
        let mut lines = report.lines();
        assert_eq!(lines.next(), Some("RESULT axioms-1 FAIL axiom=A1"));
        let ce = lines.next().expect("counterexample line");
        assert!(ce.starts_with("CE "), "unexpected line {ce}");
    }

    #[test]
    fn empty_check_list_is_an_empty_report() {
        let (report, ok) = run_text("space main\n  family standard\n  dimension 2\n");
        assert!(ok);
        assert!(report.is_empty());
    }

    #[test]
    fn converge_certifies_the_boundary_index() {
        let text = "\
space main
  family standard
  dimension 2

sequence walk
  kind affine
  limit 0 0
  dir 1 0
  horizon 64

check conv-1
  type converge
  sequence walk
  witness 0 1
  t 1
  alpha 1/10

check conv-2
  type converge
  sequence walk
  witness 0 1
  t 1
  alpha 1/10
  mode both
";
        let (report, ok) = run_text(text);
        assert!(ok);
        let lines: Vec<&str> = report.lines().collect();
        assert_eq!(lines[0], "RESULT conv-1 PASS n0=9");
        assert_eq!(lines[1], "RESULT conv-2 PASS norm_n0=8 pnorm_n0=9");
    }

    #[test]
    fn exhausted_is_reported_distinctly_and_does_not_fail() {
        let text = "\
space main
  family standard
  dimension 2

sequence slow
  kind affine
  limit 0 0
  dir 5 0
  horizon 4

check conv-1
  type converge
  sequence slow
  witness 0 5
  t 1
  alpha 1/50
";
        let (report, ok) = run_text(text);
        assert!(ok, "EXHAUSTED must not fail the run");
        assert_eq!(report, "RESULT conv-1 EXHAUSTED horizon=4\n");
    }

    #[test]
    fn expectation_mismatch_fails() {
        let text = CLASSIFY_DOC.replace(
            "  set pts\n",
            "  set pts\n  expect certainly_bounded\n",
        );
        let (report, ok) = run_text(&text);
        assert!(!ok);
        assert!(report.starts_with(
            "RESULT classify-1 FAIL expected=certainly_bounded class=perhaps_bounded"
        ));
    }

    #[test]
    fn radius_check_passes_on_builtin_families() {
        let text = "\
space main
  family indicator
  dimension 2

set pts
  kind finite
  point 1 0
  point 0 1

check radius-1
  type radius
  set pts
";
        let (report, ok) = run_text(text);
        assert!(ok);
        assert_eq!(report, "RESULT radius-1 PASS form=step(1.0) max_dev=0.0\n");
    }

    #[test]
    fn closure_checks_pass_on_bounded_fixtures() {
        let text = "\
space main
  family standard
  dimension 2

set a
  kind finite
  point 1 0
  point 0 1

set b
  kind finite
  point 2 0

check close-1
  type closure
  variant scale
  pair a b
  alpha -2

check close-2
  type closure
  variant sum
  sets a a b

check close-3
  type closure
  variant pairsum
  pairs a b a b
";
        let (report, ok) = run_text(text);
        assert!(ok, "{report}");
        let lines: Vec<&str> = report.lines().collect();
        assert_eq!(lines[0], "RESULT close-1 PASS variant=scale alpha=-2.0");
        assert_eq!(lines[1], "RESULT close-2 PASS variant=sum");
        assert_eq!(lines[2], "RESULT close-3 PASS variant=pairsum");
    }

    #[test]
    fn series_check_reports_limit_and_certificate() {
        let text = "\
space main
  family standard
  dimension 2

series mix
  weights geometric
  points cycle
  point 2 0
  point 0 2
  horizon 30

check series-1
  type series
  series mix
  witness 0 1
  t 2
  alpha 1/4

check series-2
  type series
  series mix
  witness 0 1
  t 2
  alpha 1/4
  vertex 0 0
  vertex 2 0
  vertex 2 2
  vertex 0 2
";
        let (report, ok) = run_text(text);
        assert!(ok, "{report}");
        let lines: Vec<&str> = report.lines().collect();
        assert!(lines[0].starts_with("RESULT series-1 PASS n0="), "{}", lines[0]);
        assert!(lines[0].contains(" limit=("), "{}", lines[0]);
        assert!(lines[1].starts_with("RESULT series-2 PASS n0="), "{}", lines[1]);
        assert!(lines[1].contains(" distance="), "{}", lines[1]);
    }

    #[test]
    fn identical_runs_are_byte_identical() {
        let text = "\
space main
  family standard
  dimension 2

check axioms-1
  type axioms
  trials 50
  seed 7
";
        let (a, ok_a) = run_text(text);
        let (b, ok_b) = run_text(text);
        assert!(ok_a && ok_b);
        assert_eq!(a, b);
        assert!(a.starts_with("RESULT axioms-1 PASS axioms=5 trials=50"));
    }
}
