//! A brute-force floating-point search for equal-area completions.
//!
//! The solver in [`crate::solve`] reads its candidates off a closed-form
//! table. This module finds them a different way: it walks the real branches
//! of the three pairwise area equations
//!
//! ```text
//! y² = x² + c² ± sqrt(4c²x² − 16S²)     (faces I and IV)
//! z² = x² + b² ± sqrt(4b²x² − 16S²)     (faces I and III)
//! 0  = 4a²y² − 16S² − (z² − y² − a²)²   (faces I and II)
//! ```
//!
//! over a grid in `x²`, and root-finds the last equation by bisection. The
//! two searches share nothing but Heron's formula, so agreement between them
//! is a genuine cross-check of the table.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::heron_16s2;
use crate::scalar::Scalar;
use crate::solve::{enumerate_completions, SolutionRow, SolveError};

/// Smallest grid the scan will use.
pub const MIN_GRID: usize = 1000;
/// Default grid for fuzzing and the CLI.
pub const DEFAULT_GRID: usize = 2000;
/// Default relative tolerance when matching oracle hits against table rows.
pub const DEFAULT_MATCH_TOLERANCE: f64 = 1e-6;

const BISECTION_TOLERANCE: f64 = 1e-12;
const DEDUP_RADIUS: f64 = 1e-8;
const MAX_RESIDUAL: f64 = 1e-9;
const TANGENCY_TOLERANCE: f64 = 1e-12;
const VOLUME_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    /// The square root vanished (branches meet).
    Zero,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
            Sign::Zero => 0.0,
        }
    }

    fn of(v: f64, eps: f64) -> Sign {
        if v.abs() <= eps {
            Sign::Zero
        } else if v > 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Zero => "0",
        })
    }
}

/// Which `±` branch of each area equation produced a hit. `eq3` is the branch
/// of `z² = y² + a² ± sqrt(4a²y² − 16S²)`, `eq4` that of `z²` in terms of
/// `x²`, and `eq5` that of `y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchSignature {
    pub eq3: Sign,
    pub eq4: Sign,
    pub eq5: Sign,
}

impl fmt::Display for BranchSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.eq3, self.eq4, self.eq5)
    }
}

/// One numerically found completion `(x², y², z²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleHit {
    pub x2: f64,
    pub y2: f64,
    pub z2: f64,
    /// Largest relative mismatch between a face's `16S²` and face I's.
    pub residual: f64,
    pub branch: BranchSignature,
    /// The completed edges pass a floating Gram-determinant check.
    pub realizable: bool,
}

impl OracleHit {
    pub fn triple(&self) -> [f64; 3] {
        [self.x2, self.y2, self.z2]
    }
}

fn heron_f64(p: f64, q: f64, r: f64) -> f64 {
    4.0 * p * r - (p - q + r) * (p - q + r)
}

/// `288V²` as eight times the Gram determinant at `A`.
fn volume_288v2(a2: f64, b2: f64, c2: f64, x2: f64, y2: f64, z2: f64) -> f64 {
    let g12 = 0.5 * (c2 + b2 - a2);
    let g13 = 0.5 * (c2 + x2 - y2);
    let g23 = 0.5 * (b2 + x2 - z2);
    let det = c2 * (b2 * x2 - g23 * g23) - g12 * (g12 * x2 - g23 * g13) + g13 * (g12 * g23 - b2 * g13);
    8.0 * det
}

/// A face scaled to unit diameter, with the scan domain of one branch pair.
struct Scan {
    a: f64,
    b: f64,
    c: f64,
    s16: f64,
    x_start: f64,
    t_end: f64,
}

struct Sample {
    x: f64,
    y: f64,
    z: f64,
    g: f64,
}

impl Scan {
    fn new(a: f64, b: f64, c: f64) -> Self {
        let s16 = heron_f64(a, b, c);
        // Below x_start one of the square roots is imaginary.
        let x_start = (s16 / (4.0 * c)).max(s16 / (4.0 * b));
        let x_end = 4.0 * (a + b + c);
        Scan {
            a,
            b,
            c,
            s16,
            x_start,
            t_end: (x_end - x_start).sqrt(),
        }
    }

    /// `x² = x_start + t²` removes the square-root singularity at the start.
    fn sample(&self, t: f64, eq5: Sign, eq4: Sign) -> Sample {
        let x = self.x_start + t * t;
        let root5 = (4.0 * self.c * x - self.s16).max(0.0).sqrt();
        let root4 = (4.0 * self.b * x - self.s16).max(0.0).sqrt();
        let y = x + self.c + eq5.factor() * root5;
        let z = x + self.b + eq4.factor() * root4;
        let w = z - y - self.a;
        Sample {
            x,
            y,
            z,
            g: 4.0 * self.a * y - self.s16 - w * w,
        }
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, eq5: Sign, eq4: Sign) -> f64 {
        let mut g_lo = self.sample(lo, eq5, eq4).g;
        if g_lo == 0.0 {
            return lo;
        }
        while hi - lo > BISECTION_TOLERANCE * self.t_end.max(1.0) {
            let mid = 0.5 * (lo + hi);
            let g_mid = self.sample(mid, eq5, eq4).g;
            if g_mid == 0.0 {
                return mid;
            }
            if (g_mid < 0.0) == (g_lo < 0.0) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Golden-section search for the extremum of `g` on `[lo, hi]`.
    fn extremum(&self, mut lo: f64, mut hi: f64, maximize: bool, eq5: Sign, eq4: Sign) -> f64 {
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let value = |t: f64| {
            let g = self.sample(t, eq5, eq4).g;
            if maximize {
                -g
            } else {
                g
            }
        };
        let mut p = hi - ratio * (hi - lo);
        let mut q = lo + ratio * (hi - lo);
        let (mut fp, mut fq) = (value(p), value(q));
        for _ in 0..200 {
            if hi - lo <= BISECTION_TOLERANCE * self.t_end.max(1.0) {
                break;
            }
            if fp < fq {
                hi = q;
                q = p;
                fq = fp;
                p = hi - ratio * (hi - lo);
                fp = value(p);
            } else {
                lo = p;
                p = q;
                fp = fq;
                q = lo + ratio * (hi - lo);
                fq = value(q);
            }
        }
        0.5 * (lo + hi)
    }

    /// Roots of `g` along one branch pair, as parameters `t`.
    fn roots(&self, grid: usize, eq5: Sign, eq4: Sign) -> Vec<f64> {
        let ts: Vec<f64> = (0..=grid).map(|i| self.t_end * i as f64 / grid as f64).collect();
        let gs: Vec<f64> = ts.iter().map(|&t| self.sample(t, eq5, eq4).g).collect();
        let mut roots = Vec::new();
        // The domain ends are where the branches meet; roots there need not
        // produce a sign change.
        let at_end = |i: usize| (i == 0 || i == grid) && gs[i].abs() <= TANGENCY_TOLERANCE;
        for i in 0..grid {
            if gs[i] == 0.0 || at_end(i) {
                roots.push(ts[i]);
            } else if gs[i] * gs[i + 1] < 0.0 {
                roots.push(self.bisect(ts[i], ts[i + 1], eq5, eq4));
            }
        }
        if gs[grid] == 0.0 || at_end(grid) {
            roots.push(ts[grid]);
        }
        // Pairs of close roots inside one cell, and tangential roots, leave no
        // sign change on the grid; look at every local extremum instead.
        for i in 1..grid {
            let rising = gs[i] - gs[i - 1];
            let falling = gs[i + 1] - gs[i];
            if rising * falling > 0.0 {
                continue;
            }
            if gs[i - 1] * gs[i] <= 0.0 || gs[i] * gs[i + 1] <= 0.0 {
                continue;
            }
            let maximize = rising > 0.0 || (rising == 0.0 && falling < 0.0);
            let t_ext = self.extremum(ts[i - 1], ts[i + 1], maximize, eq5, eq4);
            let g_ext = self.sample(t_ext, eq5, eq4).g;
            if g_ext.abs() <= TANGENCY_TOLERANCE {
                roots.push(t_ext);
            } else if (g_ext < 0.0) != (gs[i] < 0.0) {
                roots.push(self.bisect(ts[i - 1], t_ext, eq5, eq4));
                roots.push(self.bisect(t_ext, ts[i + 1], eq5, eq4));
            }
        }
        roots
    }
}

/// Numerically found completions of the face `(a², b², c²)`.
///
/// The face is scaled to unit diameter, `x²` is scanned on `grid` cells over
/// `[x²_min, 4(a² + b² + c²)]` for each of the four branch pairs, roots are
/// bisected to `1e-12`, and hits closer than `1e-8` (in unit-diameter
/// squared lengths) are merged. Hits with a relative area residual of
/// `1e-9` or more are discarded. Returns hits sorted by `(x², y², z²)` in the
/// caller's units. `grid` is raised to [`MIN_GRID`] if smaller.
pub fn oracle_completions(a2: f64, b2: f64, c2: f64, grid: usize) -> Vec<OracleHit> {
    let grid = grid.max(MIN_GRID);
    let unit = a2.max(b2).max(c2);
    if !(unit > 0.0) || a2 <= 0.0 || b2 <= 0.0 || c2 <= 0.0 {
        return Vec::new();
    }
    let scan = Scan::new(a2 / unit, b2 / unit, c2 / unit);
    if !(scan.s16 > 0.0) {
        return Vec::new();
    }

    let mut hits: Vec<OracleHit> = Vec::new();
    for eq5 in [Sign::Plus, Sign::Minus] {
        for eq4 in [Sign::Plus, Sign::Minus] {
            for t in scan.roots(grid, eq5, eq4) {
                let s = scan.sample(t, eq5, eq4);
                if !(s.y > 0.0 && s.z > 0.0) {
                    continue;
                }
                let faces = [
                    heron_f64(scan.a, s.y, s.z),
                    heron_f64(scan.b, s.x, s.z),
                    heron_f64(scan.c, s.x, s.y),
                ];
                let residual = faces
                    .iter()
                    .map(|f| (f - scan.s16).abs() / scan.s16)
                    .fold(0.0, f64::max);
                if !(residual < MAX_RESIDUAL) {
                    continue;
                }
                let at_start = t == 0.0;
                let branch = BranchSignature {
                    eq3: Sign::of(s.z - s.y - scan.a, MAX_RESIDUAL),
                    eq4: if at_start && scan.b * s.x * 4.0 - scan.s16 <= MAX_RESIDUAL { Sign::Zero } else { eq4 },
                    eq5: if at_start && scan.c * s.x * 4.0 - scan.s16 <= MAX_RESIDUAL { Sign::Zero } else { eq5 },
                };
                let volume = volume_288v2(scan.a, scan.b, scan.c, s.x, s.y, s.z);
                let hit = OracleHit {
                    x2: s.x,
                    y2: s.y,
                    z2: s.z,
                    residual,
                    branch,
                    realizable: volume >= -VOLUME_SLACK,
                };
                match hits.iter_mut().find(|h| {
                    h.triple()
                        .iter()
                        .zip(hit.triple().iter())
                        .all(|(u, v)| (u - v).abs() <= DEDUP_RADIUS)
                }) {
                    Some(existing) if existing.residual > hit.residual => *existing = hit,
                    Some(_) => {}
                    None => hits.push(hit),
                }
            }
        }
    }
    for h in &mut hits {
        h.x2 *= unit;
        h.y2 *= unit;
        h.z2 *= unit;
    }
    hits.sort_by(|p, q| p.triple().partial_cmp(&q.triple()).expect("finite"));
    hits
}

/// Signature of a completion enumerator, so fuzzing can run against a
/// deliberately broken solver in tests.
pub type Enumerator = fn(&Scalar, &Scalar, &Scalar) -> Result<Vec<SolutionRow>, SolveError>;

#[derive(Debug, Clone, PartialEq)]
pub enum MismatchKind {
    /// A realizable oracle hit with no matching feasible row.
    MissedBySolver { triple: [f64; 3], branch: BranchSignature },
    /// A feasible row the oracle did not find.
    MissedByOracle { row_id: u8, triple: [Scalar; 3] },
    SolverError(String),
}

impl fmt::Display for MismatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MismatchKind::MissedBySolver { triple, branch } => write!(
                f,
                "oracle hit (x², y², z²) = ({}, {}, {}) on branch {branch} matches no feasible row",
                triple[0], triple[1], triple[2]
            ),
            MismatchKind::MissedByOracle { row_id, triple } => write!(
                f,
                "feasible row {row_id} (x², y², z²) = ({}, {}, {}) not found by the oracle",
                triple[0], triple[1], triple[2]
            ),
            MismatchKind::SolverError(e) => write!(f, "solver error: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub trial: usize,
    pub face: [Scalar; 3],
    pub kind: MismatchKind,
}

/// Compares solver and oracle on one face.
pub fn compare_face(
    a2: &Scalar,
    b2: &Scalar,
    c2: &Scalar,
    grid: usize,
    tolerance: f64,
    enumerate: Enumerator,
) -> Vec<MismatchKind> {
    let rows = match enumerate(a2, b2, c2) {
        Ok(rows) => rows,
        Err(e) => return vec![MismatchKind::SolverError(e.to_string())],
    };
    let feasible: Vec<(&SolutionRow, [f64; 3])> = rows
        .iter()
        .filter(|r| r.is_feasible() && r.is_primary())
        .map(|r| (r, r.triple().map(Scalar::to_f64)))
        .collect();
    let hits: Vec<OracleHit> = oracle_completions(a2.to_f64(), b2.to_f64(), c2.to_f64(), grid)
        .into_iter()
        .filter(|h| h.realizable)
        .collect();
    let matches = |p: &[f64; 3], q: &[f64; 3]| {
        p.iter()
            .zip(q.iter())
            .all(|(u, v)| (u - v).abs() <= tolerance * u.abs().max(v.abs()))
    };

    let mut out = Vec::new();
    for h in &hits {
        if !feasible.iter().any(|(_, t)| matches(t, &h.triple())) {
            out.push(MismatchKind::MissedBySolver {
                triple: h.triple(),
                branch: h.branch,
            });
        }
    }
    for (row, t) in &feasible {
        if !hits.iter().any(|h| matches(t, &h.triple())) {
            out.push(MismatchKind::MissedByOracle {
                row_id: row.row_id,
                triple: [row.x2.clone(), row.y2.clone(), row.z2.clone()],
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub grid: usize,
    pub tolerance: f64,
}

impl FuzzConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        FuzzConfig {
            trials,
            seed,
            grid: DEFAULT_GRID,
            tolerance: DEFAULT_MATCH_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzReport {
    pub trials: usize,
    /// The faces drawn, in trial order.
    pub faces: Vec<[Scalar; 3]>,
    /// Sorted by trial index.
    pub mismatches: Vec<Mismatch>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// A random non-degenerate face with squared sides `p/q`, `p ≤ 400`, `q ≤ 20`.
pub fn random_face<R: Rng>(rng: &mut R) -> [Scalar; 3] {
    loop {
        let face: [Scalar; 3] = std::array::from_fn(|_| {
            let num = rng.gen_range(1..=400);
            let den = rng.gen_range(1..=20);
            Scalar::from_ratio(num, den).expect("nonzero denominator")
        });
        if heron_16s2(&face[0], &face[1], &face[2]).is_positive() {
            return face;
        }
    }
}

/// Draws `trials` random faces and reports every disagreement between the
/// table solver and the oracle.
pub fn oracle_uniqueness_fuzz(trials: usize, seed: u64) -> FuzzReport {
    oracle_uniqueness_fuzz_with(&FuzzConfig::new(trials, seed), enumerate_completions)
}

pub fn oracle_uniqueness_fuzz_with(config: &FuzzConfig, enumerate: Enumerator) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut faces = Vec::with_capacity(config.trials);
    let mut mismatches = Vec::new();
    for trial in 0..config.trials {
        let face = random_face(&mut rng);
        let [a2, b2, c2] = &face;
        for kind in compare_face(a2, b2, c2, config.grid, config.tolerance, enumerate) {
            mismatches.push(Mismatch {
                trial,
                face: face.clone(),
                kind,
            });
        }
        faces.push(face);
    }
    FuzzReport {
        trials: config.trials,
        faces,
        mismatches,
    }
}
