//! Command implementations behind the `equiareal` binary.
//!
//! Each command writes to caller-supplied sinks and returns an [`ExitStatus`],
//! so everything except argument parsing is testable in-process.

use std::io::{self, BufRead, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{classify, classify_approx, ClassTag, ParallelogramStructure, SimplexClass};
use crate::metric::{cayley_menger_288v2, face_areas, heron_16s2, heron_16s2_factored, SquaredEdges, Vertex};
use crate::oracle::{self, compare_face, oracle_completions, Enumerator, FuzzConfig, DEFAULT_GRID};
use crate::sampling;
use crate::scalar::{Scalar, ScalarError};
use crate::solve::{enumerate_completions, solution8_witness, SolutionRow};
use crate::witness::{projection_witness, realize, Embedding, ProjectionWitness, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    RecordError,
    Usage,
    PropertyFailure,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::RecordError => 1,
            ExitStatus::Usage => 2,
            ExitStatus::PropertyFailure => 3,
        }
    }
}

/// Flags shared by all subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub json: bool,
    /// Inputs are squared lengths rather than lengths.
    pub squared: bool,
    /// Allow the floating path for coordinates that are not plain decimals.
    pub approx: bool,
    pub trials: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub grid: usize,
    /// Run the projection witness after `realize`.
    pub witness: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            squared: false,
            approx: false,
            trials: 100,
            seed: 42,
            tolerances: Tolerances::default(),
            grid: DEFAULT_GRID,
            witness: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecordError {
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("{0}")]
    Number(#[from] ScalarError),
    #[error("{0}")]
    Invalid(String),
}

/// Geometry carried by one input record.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    /// Six decimals in label order `a, b, c, x, y, z`.
    Edges([String; 6]),
    /// Points `A, B, C, D`.
    Coords([[String; 3]; 4]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TetRecord {
    pub id: String,
    pub geometry: Geometry,
}

#[derive(Deserialize)]
struct RawRecord {
    id: Option<Value>,
    edges: Option<Vec<Value>>,
    coords: Option<Vec<Vec<Value>>>,
}

fn number_text(v: &Value) -> Result<String, RecordError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(RecordError::Malformed(format!("expected a number, got {other}"))),
    }
}

fn id_text(v: &Option<Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// Best-effort id of a line that failed to parse, for error reports.
fn salvage_id(line: &str) -> String {
    serde_json::from_str::<Value>(line)
        .ok()
        .and_then(|v| v.get("id").cloned())
        .map(|v| id_text(&Some(v)))
        .unwrap_or_default()
}

impl TetRecord {
    pub fn parse(line: &str) -> Result<TetRecord, RecordError> {
        let raw: RawRecord =
            serde_json::from_str(line).map_err(|e| RecordError::Malformed(e.to_string()))?;
        let id = id_text(&raw.id);
        let geometry = match (raw.edges, raw.coords) {
            (Some(edges), None) => {
                let texts: Vec<String> = edges.iter().map(number_text).collect::<Result<_, _>>()?;
                let arr: [String; 6] = texts.try_into().map_err(|v: Vec<String>| {
                    RecordError::Malformed(format!("edges must have 6 entries, got {}", v.len()))
                })?;
                Geometry::Edges(arr)
            }
            (None, Some(coords)) => {
                if coords.len() != 4 {
                    return Err(RecordError::Malformed(format!(
                        "coords must have 4 points, got {}",
                        coords.len()
                    )));
                }
                let mut pts: [[String; 3]; 4] = Default::default();
                for (i, p) in coords.iter().enumerate() {
                    if p.len() != 3 {
                        return Err(RecordError::Malformed(format!(
                            "point {i} must have 3 coordinates, got {}",
                            p.len()
                        )));
                    }
                    for (j, v) in p.iter().enumerate() {
                        pts[i][j] = number_text(v)?;
                    }
                }
                Geometry::Coords(pts)
            }
            (Some(_), Some(_)) => {
                return Err(RecordError::Malformed("record has both edges and coords".into()))
            }
            (None, None) => return Err(RecordError::Malformed("record has neither edges nor coords".into())),
        };
        Ok(TetRecord { id, geometry })
    }
}

/// Six decimals to squared edges, squaring unless `squared` is set.
pub fn edges_from_decimals(values: &[String], squared: bool) -> Result<SquaredEdges, RecordError> {
    if values.len() != 6 {
        return Err(RecordError::Invalid(format!("expected 6 edge values, got {}", values.len())));
    }
    let mut parsed: Vec<Scalar> = Vec::with_capacity(6);
    for v in values {
        parsed.push(Scalar::parse_decimal(v)?);
    }
    let arr: [Scalar; 6] = parsed.try_into().expect("six values");
    let result = if squared {
        SquaredEdges::from_array(arr)
    } else {
        SquaredEdges::from_lengths(arr)
    };
    result.map_err(|e| RecordError::Invalid(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParallelogramReport {
    pub diagonals: String,
    pub sides2: Vec<String>,
    pub diagonals2: Vec<String>,
}

impl From<&ParallelogramStructure> for ParallelogramReport {
    fn from(p: &ParallelogramStructure) -> Self {
        let (d1, d2) = p.diagonal_pair.edges();
        ParallelogramReport {
            diagonals: format!("{d1},{d2}"),
            sides2: p.sides2.iter().map(Scalar::to_string).collect(),
            diagonals2: p.diagonals2.iter().map(Scalar::to_string).collect(),
        }
    }
}

/// One line of `classify` output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub id: String,
    pub class: ClassTag,
    pub edges2: Vec<String>,
    pub areas16: Vec<String>,
    pub cm288: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallelogram: Option<ParallelogramReport>,
    pub diagnostics: Vec<String>,
    pub approx: bool,
}

/// Exact classification report.
pub fn class_report(id: &str, e: &SquaredEdges) -> Result<ClassReport, RecordError> {
    let class = classify(e).map_err(|err| RecordError::Invalid(err.to_string()))?;
    let mut diagnostics = Vec::new();
    let parallelogram = match &class {
        SimplexClass::Type2(p) => Some(ParallelogramReport::from(p)),
        SimplexClass::NotRealizable(defect) => {
            diagnostics.push(defect.to_string());
            None
        }
        _ => None,
    };
    Ok(ClassReport {
        id: id.to_owned(),
        class: class.tag(),
        edges2: e.as_array().iter().map(Scalar::to_string).collect(),
        areas16: face_areas(e).0.iter().map(Scalar::to_string).collect(),
        cm288: cayley_menger_288v2(e).to_string(),
        parallelogram,
        diagnostics,
        approx: false,
    })
}

fn approx_report(id: &str, points: [[f64; 3]; 4], tol: f64) -> ClassReport {
    let emb = Embedding::new(points);
    let sq = emb.squared_distances();
    let heron = |p: f64, q: f64, r: f64| 2.0 * (p * q + p * r + q * r) - p * p - q * q - r * r;
    let [a2, b2, c2, x2, y2, z2] = sq;
    let areas = [heron(a2, b2, c2), heron(a2, y2, z2), heron(b2, x2, z2), heron(c2, x2, y2)];
    let six_v = emb.six_volume();
    ClassReport {
        id: id.to_owned(),
        class: classify_approx(sq, tol),
        edges2: sq.iter().map(|v| format!("{v:e}")).collect(),
        areas16: areas.iter().map(|v| format!("{v:e}")).collect(),
        cm288: format!("{:e}", 8.0 * six_v * six_v),
        parallelogram: None,
        diagnostics: vec![format!(
            "floating-point classification at relative tolerance {tol:e}; values are approximate"
        )],
        approx: true,
    }
}

fn classify_record(rec: &TetRecord, opts: &Options) -> Result<ClassReport, RecordError> {
    match &rec.geometry {
        Geometry::Edges(values) => class_report(&rec.id, &edges_from_decimals(values, opts.squared)?),
        Geometry::Coords(pts) => {
            let exact: Result<Vec<Scalar>, ScalarError> =
                pts.iter().flatten().map(|s| Scalar::parse_decimal(s)).collect();
            match exact {
                Ok(values) => {
                    let mut it = values.into_iter();
                    let points: [[Scalar; 3]; 4] =
                        std::array::from_fn(|_| std::array::from_fn(|_| it.next().expect("12 values")));
                    let e = SquaredEdges::from_points(&points)
                        .map_err(|_| RecordError::Invalid("two points coincide".into()))?;
                    class_report(&rec.id, &e)
                }
                Err(err) if opts.approx => {
                    let mut floats = [[0.0; 3]; 4];
                    for (i, p) in pts.iter().enumerate() {
                        for (j, s) in p.iter().enumerate() {
                            floats[i][j] = s
                                .parse::<f64>()
                                .ok()
                                .filter(|v| v.is_finite())
                                .ok_or_else(|| RecordError::Number(err.clone()))?;
                        }
                    }
                    Ok(approx_report(&rec.id, floats, opts.tolerances.witness))
                }
                Err(err) => Err(RecordError::Invalid(format!(
                    "{err}; coordinates are not exact decimals (use --approx for floating classification)"
                ))),
            }
        }
    }
}

fn write_class_report(out: &mut dyn Write, r: &ClassReport, json: bool) -> io::Result<()> {
    if json {
        return writeln!(out, "{}", serde_json::to_string(r).expect("serializable"));
    }
    write!(
        out,
        "{}: {}  16S² = [{}]  288V² = {}",
        r.id,
        r.class,
        r.areas16.join(", "),
        r.cm288
    )?;
    if let Some(p) = &r.parallelogram {
        write!(
            out,
            "  parallelogram: diagonals ({}) = [{}], sides² = [{}]",
            p.diagonals,
            p.diagonals2.join(", "),
            p.sides2.join(", ")
        )?;
    }
    for d in &r.diagnostics {
        write!(out, "  [{d}]")?;
    }
    if r.approx {
        write!(out, "  (approx)")?;
    }
    writeln!(out)
}

fn write_record_error(out: &mut dyn Write, id: &str, line: usize, err: &RecordError, json: bool) -> io::Result<()> {
    if json {
        let v = json!({"id": id, "line": line, "error": err.to_string()});
        writeln!(out, "{v}")
    } else {
        writeln!(out, "{id} (line {line}): error: {err}")
    }
}

/// Classifies one record per input line, in input order. Blank lines are
/// skipped; bad records produce an error entry and processing continues.
pub fn cmd_classify(input: &mut dyn BufRead, out: &mut dyn Write, opts: &Options) -> io::Result<ExitStatus> {
    let mut status = ExitStatus::Success;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let result = TetRecord::parse(&line).and_then(|rec| classify_record(&rec, opts));
        match result {
            Ok(report) => write_class_report(out, &report, opts.json)?,
            Err(err) => {
                status = ExitStatus::RecordError;
                write_record_error(out, &salvage_id(&line), i + 1, &err, opts.json)?;
            }
        }
    }
    Ok(status)
}

/// `√v` as text: exact when `v` is a perfect square.
pub fn pretty_root(v: &Scalar) -> String {
    match v.perfect_square_root() {
        Ok(Some(r)) => r.to_string(),
        Ok(None) if v.denom() == &num_bigint::BigInt::from(1) => format!("√{v}"),
        Ok(None) => format!("√({v})"),
        Err(_) => format!("√({v}) (imaginary)"),
    }
}

fn row_json(r: &SolutionRow) -> Value {
    let parallelogram = match r.class() {
        Some(SimplexClass::Type2(p)) => serde_json::to_value(ParallelogramReport::from(p)).expect("serializable"),
        _ => Value::Null,
    };
    json!({
        "row": r.row_id,
        "x2": r.x2.to_string(),
        "y2": r.y2.to_string(),
        "z2": r.z2.to_string(),
        "x": pretty_root(&r.x2),
        "y": pretty_root(&r.y2),
        "z": pretty_root(&r.z2),
        "feasible": r.is_feasible(),
        "class": r.class().map(|c| c.tag().to_string()),
        "reason": r.reason(),
        "duplicate_of": r.duplicate_of,
        "coincident_rows": r.coincident_rows,
        "parallelogram": parallelogram,
    })
}

/// Prints the eight-row completion table for the face `(a, b, c)`.
pub fn cmd_complete(face: &[String], out: &mut dyn Write, err: &mut dyn Write, opts: &Options) -> io::Result<ExitStatus> {
    let parsed: Result<Vec<Scalar>, ScalarError> = face.iter().map(|s| Scalar::parse_decimal(s)).collect();
    let parsed = match parsed {
        Ok(v) if v.len() == 3 => v,
        Ok(v) => {
            writeln!(err, "error: expected 3 face values, got {}", v.len())?;
            return Ok(ExitStatus::Usage);
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(ExitStatus::Usage);
        }
    };
    let squares: Vec<Scalar> = if opts.squared {
        parsed
    } else {
        if let Some(bad) = parsed.iter().find(|v| !v.is_positive()) {
            writeln!(err, "error: side length {bad} must be positive")?;
            return Ok(ExitStatus::RecordError);
        }
        parsed.iter().map(Scalar::square).collect()
    };
    let rows = match enumerate_completions(&squares[0], &squares[1], &squares[2]) {
        Ok(rows) => rows,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(ExitStatus::RecordError);
        }
    };
    if opts.json {
        let v = json!({
            "face2": squares.iter().map(Scalar::to_string).collect::<Vec<_>>(),
            "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
        });
        writeln!(out, "{v}")?;
        return Ok(ExitStatus::Success);
    }
    writeln!(
        out,
        "face (a², b², c²) = ({}, {}, {})",
        squares[0], squares[1], squares[2]
    )?;
    writeln!(
        out,
        "{:<4} {:<14} {:<14} {:<14} {:<9} {:<7} reason",
        "row", "x", "y", "z", "feasible", "class"
    )?;
    for r in &rows {
        let mut reason = r.reason();
        if let Some(first) = r.duplicate_of {
            reason.push_str(&format!(" (same as row {first})"));
        }
        writeln!(
            out,
            "{:<4} {:<14} {:<14} {:<14} {:<9} {:<7} {}",
            r.row_id,
            pretty_root(&r.x2),
            pretty_root(&r.y2),
            pretty_root(&r.z2),
            if r.is_feasible() { "yes" } else { "no" },
            r.class().map(|c| c.tag().to_string()).unwrap_or_else(|| "-".into()),
            reason
        )?;
    }
    Ok(ExitStatus::Success)
}

fn witness_json(w: &ProjectionWitness, tol: f64) -> Value {
    json!({
        "parallelogram": w.is_parallelogram(tol),
        "equal_opposite_edges": w.confirms_equal_opposite_edges(tol),
        "midpoint_gap": w.midpoint_gap,
        "a_proj": w.a_proj,
        "b_proj": w.b_proj,
        "plane_normal": w.plane_normal,
        "c_to_ab_proj": w.c_to_ab_proj,
        "d_to_ab_proj": w.d_to_ab_proj,
        "a_proj_to_cd": w.a_proj_to_cd,
        "b_proj_to_cd": w.b_proj_to_cd,
        "side_residuals": w.side_residuals,
        "edge_residuals": w.edge_residuals,
        "foot_distances": w.foot_distances,
        "diameter": w.diameter,
    })
}

/// Prints canonical coordinates for six edge values (or one JSON record),
/// optionally followed by the projection witness.
pub fn cmd_realize(values: &[String], out: &mut dyn Write, err: &mut dyn Write, opts: &Options) -> io::Result<ExitStatus> {
    let edges = match values {
        [single] if single.trim_start().starts_with('{') => TetRecord::parse(single).and_then(|rec| match rec.geometry {
            Geometry::Edges(v) => edges_from_decimals(&v, opts.squared),
            Geometry::Coords(_) => Err(RecordError::Invalid("realize needs edge lengths, not coordinates".into())),
        }),
        _ => edges_from_decimals(values, opts.squared),
    };
    let edges = match edges {
        Ok(e) => e,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(ExitStatus::Usage);
        }
    };
    let emb = match realize(&edges, &opts.tolerances) {
        Ok(emb) => emb,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(ExitStatus::RecordError);
        }
    };
    let tol = opts.tolerances.witness;
    let witness = opts.witness.then(|| projection_witness(&emb, tol));
    if opts.json {
        let names = ["A", "B", "C", "D"];
        let mut v = json!({
            "points": names.iter().zip(emb.points.iter()).map(|(n, p)| (n.to_string(), json!(p))).collect::<serde_json::Map<_, _>>(),
            "max_relative_residual": emb.max_relative_residual(&edges),
        });
        if let Some(w) = &witness {
            v["witness"] = match w {
                Ok(w) => witness_json(w, tol),
                Err(e) => json!({"skipped": e.to_string()}),
            };
        }
        writeln!(out, "{v}")?;
        return Ok(ExitStatus::Success);
    }
    for v in Vertex::ALL {
        let p = emb.point(v);
        writeln!(out, "{v:?} = ({:.17}, {:.17}, {:.17})", p[0], p[1], p[2])?;
    }
    writeln!(out, "max relative residual: {:e}", emb.max_relative_residual(&edges))?;
    match &witness {
        None => {}
        Some(Ok(w)) => {
            let verdict = if w.confirms_equal_opposite_edges(tol) { "pass" } else { "FAIL" };
            writeln!(out, "projection witness: {verdict}")?;
            writeln!(out, "  midpoint gap: {:e} (diameter {:e})", w.midpoint_gap, w.diameter)?;
            writeln!(out, "  |A⊥C| − |B⊥D| = {:e}, |B⊥C| − |A⊥D| = {:e}", w.side_residuals[0], w.side_residuals[1])?;
            writeln!(out, "  |AC| − |BD| = {:e}, |BC| − |AD| = {:e}", w.edge_residuals[0], w.edge_residuals[1])?;
            writeln!(out, "  dist(C, A⊥B⊥) = {:e}, dist(D, A⊥B⊥) = {:e}", w.c_to_ab_proj, w.d_to_ab_proj)?;
        }
        Some(Err(e)) => writeln!(out, "projection witness skipped: {e}")?,
    }
    Ok(ExitStatus::Success)
}

/// Outcome of one property suite in `check`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exact Heron identity on random rational triples.
pub fn heron_identity_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counterexample = (0..cases).find_map(|_| {
        let [p, q, r] = sampling::positive_triple(&mut rng);
        (heron_16s2(&p, &q, &r) != heron_16s2_factored(&p, &q, &r)).then(|| format!("({p}, {q}, {r})"))
    });
    SuiteResult {
        name: "heron identity",
        cases,
        counterexample,
    }
}

/// The three row-8 factor products never vanish together.
pub fn solution8_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let counterexample = (0..cases).find_map(|_| {
        let [a2, b2, c2] = sampling::positive_triple(&mut rng);
        solution8_witness(&a2, &b2, &c2)
            .all_zero()
            .then(|| format!("({a2}, {b2}, {c2})"))
    });
    SuiteResult {
        name: "solution 8 witness",
        cases,
        counterexample,
    }
}

pub fn oracle_suite(trials: usize, seed: u64, grid: usize, tolerance: f64, enumerate: Enumerator) -> SuiteResult {
    let config = FuzzConfig {
        trials,
        seed,
        grid,
        tolerance,
    };
    let report = oracle::oracle_uniqueness_fuzz_with(&config, enumerate);
    let counterexample = report.mismatches.first().map(|m| {
        format!(
            "trial {} face ({}, {}, {}): {}",
            m.trial, m.face[0], m.face[1], m.face[2], m.kind
        )
    });
    SuiteResult {
        name: "oracle uniqueness",
        cases: trials,
        counterexample,
    }
}

/// Realize random Type 1 tetrahedra and confirm the projection witness.
pub fn projection_suite(cases: usize, seed: u64, tol: &Tolerances) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let counterexample = (0..cases).find_map(|_| {
        let e = sampling::type1(&mut rng);
        let outcome = realize(&e, tol).map_err(|x| x.to_string()).and_then(|emb| {
            projection_witness(&emb, tol.witness).map_err(|x| x.to_string())
        });
        match outcome {
            Ok(w) if w.confirms_equal_opposite_edges(tol.witness) => None,
            Ok(w) => Some(format!("{e}: witness measurements {w:?}")),
            Err(x) => Some(format!("{e}: {x}")),
        }
    });
    SuiteResult {
        name: "projection witness",
        cases,
        counterexample,
    }
}

/// All property suites. Algebraic suites run `100 × trials` cases, the
/// oracle and projection suites `trials`.
pub fn run_checks(opts: &Options, enumerate: Enumerator) -> Vec<SuiteResult> {
    let n = opts.trials;
    vec![
        heron_identity_suite(100 * n, opts.seed),
        solution8_suite(100 * n, opts.seed),
        oracle_suite(n, opts.seed, opts.grid, oracle::DEFAULT_MATCH_TOLERANCE, enumerate),
        projection_suite(n, opts.seed, &opts.tolerances),
    ]
}

pub fn cmd_check(out: &mut dyn Write, err: &mut dyn Write, opts: &Options) -> io::Result<ExitStatus> {
    cmd_check_with(out, err, opts, enumerate_completions)
}

pub fn cmd_check_with(out: &mut dyn Write, err: &mut dyn Write, opts: &Options, enumerate: Enumerator) -> io::Result<ExitStatus> {
    if opts.trials == 0 {
        writeln!(err, "warning: --trials 0 runs no cases; every suite passes vacuously")?;
    }
    let results = run_checks(opts, enumerate);
    for r in &results {
        if opts.json {
            let v = json!({"suite": r.name, "cases": r.cases, "passed": r.passed(), "counterexample": r.counterexample});
            writeln!(out, "{v}")?;
        } else {
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {} ({} cases)", r.name, r.cases)?;
            if let Some(c) = &r.counterexample {
                writeln!(out, "  counterexample: {c}")?;
            }
        }
    }
    Ok(if results.iter().all(SuiteResult::passed) {
        ExitStatus::Success
    } else {
        ExitStatus::PropertyFailure
    })
}

/// With a face: lists oracle hits and whether each matches a feasible row.
/// Without: runs the random uniqueness fuzz.
pub fn cmd_oracle(face: &[String], out: &mut dyn Write, err: &mut dyn Write, opts: &Options) -> io::Result<ExitStatus> {
    if face.is_empty() {
        let report = oracle::oracle_uniqueness_fuzz_with(
            &FuzzConfig {
                trials: opts.trials,
                seed: opts.seed,
                grid: opts.grid,
                tolerance: oracle::DEFAULT_MATCH_TOLERANCE,
            },
            enumerate_completions,
        );
        if opts.json {
            for m in &report.mismatches {
                let v = json!({"trial": m.trial, "face2": m.face.iter().map(Scalar::to_string).collect::<Vec<_>>(), "mismatch": m.kind.to_string()});
                writeln!(out, "{v}")?;
            }
            writeln!(out, "{}", json!({"trials": report.trials, "mismatches": report.mismatches.len()}))?;
        } else {
            for m in &report.mismatches {
                writeln!(out, "trial {}: face ({}, {}, {}): {}", m.trial, m.face[0], m.face[1], m.face[2], m.kind)?;
            }
            writeln!(out, "{} trials, {} mismatches", report.trials, report.mismatches.len())?;
        }
        return Ok(if report.passed() { ExitStatus::Success } else { ExitStatus::PropertyFailure });
    }

    let parsed: Result<Vec<Scalar>, ScalarError> = face.iter().map(|s| Scalar::parse_decimal(s)).collect();
    let squares: Vec<Scalar> = match parsed {
        Ok(v) if v.len() == 3 => {
            if opts.squared {
                v
            } else {
                v.iter().map(Scalar::square).collect()
            }
        }
        Ok(_) => {
            writeln!(err, "error: expected 3 face values or none")?;
            return Ok(ExitStatus::Usage);
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(ExitStatus::Usage);
        }
    };
    let rows = match enumerate_completions(&squares[0], &squares[1], &squares[2]) {
        Ok(rows) => rows,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(ExitStatus::RecordError);
        }
    };
    let hits = oracle_completions(squares[0].to_f64(), squares[1].to_f64(), squares[2].to_f64(), opts.grid);
    let tol = oracle::DEFAULT_MATCH_TOLERANCE;
    for h in &hits {
        let matched: Vec<u8> = rows
            .iter()
            .filter(|r| r.is_feasible())
            .filter(|r| {
                r.triple()
                    .iter()
                    .zip(h.triple().iter())
                    .all(|(s, v)| (s.to_f64() - v).abs() <= tol * s.to_f64().abs().max(v.abs()))
            })
            .map(|r| r.row_id)
            .collect();
        if opts.json {
            let v = json!({"x2": h.x2, "y2": h.y2, "z2": h.z2, "residual": h.residual, "branch": h.branch.to_string(), "realizable": h.realizable, "rows": matched});
            writeln!(out, "{v}")?;
        } else {
            writeln!(
                out,
                "(x², y², z²) = ({:.12}, {:.12}, {:.12})  branch {}  residual {:.1e}  {}  rows {:?}",
                h.x2,
                h.y2,
                h.z2,
                h.branch,
                h.residual,
                if h.realizable { "realizable" } else { "not realizable" },
                matched
            )?;
        }
    }
    let mismatches = compare_face(&squares[0], &squares[1], &squares[2], opts.grid, tol, enumerate_completions);
    for m in &mismatches {
        writeln!(err, "mismatch: {m}")?;
    }
    Ok(if mismatches.is_empty() {
        ExitStatus::Success
    } else {
        ExitStatus::PropertyFailure
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_classify(input: &str, opts: &Options) -> (String, ExitStatus) {
        let mut out = Vec::new();
        let status = cmd_classify(&mut input.as_bytes(), &mut out, opts).unwrap();
        (String::from_utf8(out).unwrap(), status)
    }

    #[test]
    fn parses_both_record_shapes() {
        let r = TetRecord::parse(r#"{"id":"t","edges":[3,4,5,"3","4","5"]}"#).unwrap();
        assert_eq!(r.id, "t");
        assert!(matches!(r.geometry, Geometry::Edges(ref v) if v[0] == "3" && v[5] == "5"));
        let r = TetRecord::parse(r#"{"id":7,"coords":[[0,0,0],[1,0,0],[0,1,0],[0,0,1.5]]}"#).unwrap();
        assert_eq!(r.id, "7");
        assert!(matches!(r.geometry, Geometry::Coords(ref p) if p[3][2] == "1.5"));
        assert!(TetRecord::parse(r#"{"id":"x"}"#).is_err());
        assert!(TetRecord::parse(r#"{"id":"x","edges":[1,2,3]}"#).is_err());
        assert!(TetRecord::parse("not json").is_err());
    }

    #[test]
    fn classify_examples() {
        let opts = Options {
            json: true,
            ..Options::default()
        };
        let input = concat!(
            r#"{"id":"rect","edges":[3,4,5,3,4,5]}"#,
            "\n",
            r#"{"id":"iso","edges":[7,8,9,7,8,9]}"#,
            "\n",
            r#"{"id":"skew","edges":[1,1,1,1,1,1.5]}"#,
            "\n"
        );
        let (out, status) = run_classify(input, &opts);
        assert_eq!(status, ExitStatus::Success);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines[0]["class"], "Type2");
        assert_eq!(lines[0]["parallelogram"]["diagonals"], "c,z");
        assert_eq!(lines[0]["parallelogram"]["diagonals2"], json!(["25", "25"]));
        assert_eq!(lines[0]["parallelogram"]["sides2"], json!(["16", "9", "16", "9"]));
        assert_eq!(lines[1]["class"], "Type1");
        assert_eq!(lines[2]["class"], "NotEquiareal");
        assert_eq!(lines[2]["areas16"][1], "63/16");
    }

    #[test]
    fn bad_records_are_isolated() {
        let opts = Options {
            json: true,
            ..Options::default()
        };
        let input = "{\"id\":\"ok\",\"edges\":[1,1,1,1,1,1]}\n{\"id\":\"bad\",\"edges\":[1,1,\"x\",1,1,1]}\n\n{\"id\":\"ok2\",\"edges\":[1,1,1,1,1,1]}\n";
        let (out, status) = run_classify(input, &opts);
        assert_eq!(status, ExitStatus::RecordError);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1]["id"], "bad");
        assert!(lines[1]["error"].as_str().unwrap().contains("position 0"));
        assert_eq!(lines[2]["class"], "Type1");
    }

    #[test]
    fn coordinates_path_needs_approx_for_non_decimals() {
        let line = r#"{"id":"c","coords":[[0,0,0],[1e0,0,0],[0,1,0],[0,0,1]]}"#;
        let (out, status) = run_classify(line, &Options { json: true, ..Options::default() });
        assert_eq!(status, ExitStatus::RecordError);
        assert!(out.contains("--approx"));
        let (out, status) = run_classify(
            line,
            &Options {
                json: true,
                approx: true,
                ..Options::default()
            },
        );
        assert_eq!(status, ExitStatus::Success);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["approx"], true);
        assert_eq!(v["class"], "NotEquiareal");
    }

    #[test]
    fn squared_flag_skips_squaring() {
        let opts = Options {
            json: true,
            squared: true,
            ..Options::default()
        };
        let (out, _) = run_classify(r#"{"id":"r","edges":[1,1,1,1,1,3]}"#, &opts);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["class"], "Type2");
    }

    #[test]
    fn pretty_roots() {
        assert_eq!(pretty_root(&Scalar::from_integer(25)), "5");
        assert_eq!(pretty_root(&Scalar::from_integer(52)), "√52");
        assert_eq!(pretty_root(&Scalar::from_ratio(9, 4).unwrap()), "3/2");
        assert_eq!(pretty_root(&Scalar::from_ratio(1, 2).unwrap()), "√(1/2)");
    }
}
