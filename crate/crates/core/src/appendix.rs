//! Numerical checks of the five calculus lemmas behind the density
//! theorems, plus the standalone numeric bounds used inside the proofs.
//!
//! Each lemma is an inequality on a box in `(d, a, x)`, with `y` solved
//! from the lemma's constraint. A check evaluates the margin at every grid
//! node, repeats at twice the resolution, and replays the proof's
//! derivative-sign claims with finite differences.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub const D_LO: f64 = 17.0 / 50.0;
pub const D_HI: f64 = 7.0 / 20.0;
const FIFTH: f64 = 1.0 / 5.0;

/// Radicands in `[-RADICAND_SLACK, 0)` are clamped to zero.
pub const RADICAND_SLACK: f64 = 1e-12;
/// Finite-difference step.
pub const FD_STEP: f64 = 1e-5;
/// A derivative counts as negative only below `-SIGN_BAND`.
pub const SIGN_BAND: f64 = 1e-7;
/// Allowed constraint residual after solving for `y`.
pub const RESIDUAL_TOL: f64 = 1e-12;
/// Margins at the lemmas' own boundary maximizers are exactly zero in
/// exact arithmetic; this absorbs the rounding there.
pub const EQUALITY_SLACK: f64 = 1e-12;

/// Stated lower bound on the A4 margin over `x ∈ [0, 1/4]`.
pub const A4_REGION_BOUND: f64 = 0.002232;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AppendixError {
    #[error("{lemma}: negative radicand {value} at d = {d}, a = {a}, x = {x}")]
    Domain {
        lemma: &'static str,
        value: f64,
        d: f64,
        a: f64,
        x: f64,
    },
    #[error("{lemma}: point d = {d}, a = {a}, x = {x} lies outside the lemma's box")]
    OutOfBox {
        lemma: &'static str,
        d: f64,
        a: f64,
        x: f64,
    },
    #[error("need at least 10 grid steps per axis, got {0}")]
    TooFewSteps(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, clap::ValueEnum)]
pub enum Lemma {
    /// `a ∈ [17/100, 23/100]`: the two-branch comparison at `β = α`.
    A1,
    /// `f₁(x) <= f₁(a)` on `x ∈ [0, a]`.
    A2,
    /// `f₂(x) <= a³ + (2d−a²)√(2d+a²)` on `x ∈ [0, y − 1/5]`.
    A3,
    /// `f₃(x) <= f₃(a)` on `x ∈ [0, a]`.
    A4,
    /// `f₄(x) < a³ + (2d−a²)√(2d+a²)` on the `x`-interval fixed by `a, d`.
    A5,
}

impl Lemma {
    pub const ALL: [Lemma; 5] = [Lemma::A1, Lemma::A2, Lemma::A3, Lemma::A4, Lemma::A5];

    pub fn label(self) -> &'static str {
        match self {
            Lemma::A1 => "A1",
            Lemma::A2 => "A2",
            Lemma::A3 => "A3",
            Lemma::A4 => "A4",
            Lemma::A5 => "A5",
        }
    }

    pub fn a_range(self) -> (f64, f64) {
        match self {
            Lemma::A1 | Lemma::A2 => (17.0 / 100.0, 23.0 / 100.0),
            _ => (1.0 / 3.0, 2.0 / 5.0),
        }
    }

    /// The `x`-interval at `(d, a)`; `None` for A1, which has no `x`.
    pub fn x_range(self, d: f64, a: f64) -> Option<(f64, f64)> {
        match self {
            Lemma::A1 => None,
            Lemma::A2 | Lemma::A4 => Some((0.0, a)),
            Lemma::A3 => Some((0.0, theta(a, d))),
            Lemma::A5 => Some((1.0 - a / 2.0 - (1.0 - 2.0 * d) / (2.0 * a), 2.0 * d - 0.25)),
        }
    }

    /// Whether the lemma claims a strict inequality everywhere. The others
    /// reach equality at a boundary maximizer.
    pub fn strict(self) -> bool {
        matches!(self, Lemma::A1 | Lemma::A5)
    }
}

/// `θ(a, d) = √(a² + 2d) − a − 1/5`: the right end of the A3 interval.
pub fn theta(a: f64, d: f64) -> f64 {
    (a * a + 2.0 * d).sqrt() - a - FIFTH
}

fn root(lemma: Lemma, value: f64, d: f64, a: f64, x: f64) -> Result<f64, AppendixError> {
    if value >= 0.0 {
        Ok(value.sqrt())
    } else if value >= -RADICAND_SLACK {
        Ok(0.0)
    } else {
        Err(AppendixError::Domain {
            lemma: lemma.label(),
            value,
            d,
            a,
            x,
        })
    }
}

/// `a³ + (2d−a²)√(2d+a²)`, the common right-hand side.
pub fn upper(d: f64, a: f64) -> f64 {
    a * a * a + (2.0 * d - a * a) * (2.0 * d + a * a).sqrt()
}

/// `4d − 1 + (1−2d)^{3/2}`, the quasi-star side of A1.
pub fn quasi_star_side(d: f64) -> f64 {
    4.0 * d - 1.0 + (1.0 - 2.0 * d) * (1.0 - 2.0 * d).sqrt()
}

/// Solves the lemma's constraint for `y`. A5 takes the root with `y >= x`.
pub fn solve_y(lemma: Lemma, d: f64, a: f64, x: f64) -> Result<f64, AppendixError> {
    let r = |v: f64| root(lemma, v, d, a, x);
    match lemma {
        Lemma::A1 => Ok(0.0),
        Lemma::A2 => Ok(-x + r(x * x + 2.0 * a * x + 2.0 * d - 2.0 * a * a)?),
        Lemma::A3 => r(2.0 * (d - a * x - a / 5.0)),
        Lemma::A4 => Ok(r(25.0 * x * x + 10.0 * x + 50.0 * d - 10.0 * a)? / 5.0 - x),
        Lemma::A5 => Ok(x + r(x * x - 2.0 * x + 2.0 * d)?),
    }
}

/// Left side minus right side of the lemma's constraint.
pub fn residual(lemma: Lemma, pt: &AppendixPoint) -> f64 {
    let AppendixPoint { d, a, x, y } = *pt;
    match lemma {
        Lemma::A1 => 0.0,
        Lemma::A2 => y * y / 2.0 + x * y + a * a - a * x - d,
        Lemma::A3 => y * y / 2.0 + a * x + a / 5.0 - d,
        Lemma::A4 => y * y / 2.0 + x * y + a / 5.0 - x / 5.0 - d,
        Lemma::A5 => y * y / 2.0 + (1.0 - y) * x - d,
    }
}

/// A point of a lemma's box with `y` already solved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AppendixPoint {
    pub d: f64,
    pub a: f64,
    pub x: f64,
    pub y: f64,
}

fn inside(v: f64, lo: f64, hi: f64) -> bool {
    lo - 1e-12 <= v && v <= hi + 1e-12
}

impl AppendixPoint {
    /// Checks `(d, a, x)` against the lemma's box and solves for `y`.
    pub fn solve(lemma: Lemma, d: f64, a: f64, x: f64) -> Result<Self, AppendixError> {
        let (alo, ahi) = lemma.a_range();
        let x_ok = lemma.x_range(d, a).is_none_or(|(lo, hi)| inside(x, lo, hi));
        if !inside(d, D_LO, D_HI) || !inside(a, alo, ahi) || !x_ok {
            return Err(AppendixError::OutOfBox {
                lemma: lemma.label(),
                d,
                a,
                x,
            });
        }
        Ok(Self {
            d,
            a,
            x,
            y: solve_y(lemma, d, a, x)?,
        })
    }
}

/// `f₁ … f₄` by direct substitution of the solved point. A1 has no
/// function of `x`; its "value" is the right-hand side `upper(d, a)`.
pub fn eval_f(lemma: Lemma, pt: &AppendixPoint) -> f64 {
    let AppendixPoint { d, a, x, y } = *pt;
    match lemma {
        Lemma::A1 => upper(d, a),
        Lemma::A2 => {
            x * y * y + (a - x) * a * a + a * (a + y) * (a + y) + (y - a) * (x + y) * (x + y)
        }
        Lemma::A3 => {
            (x + FIFTH) * (y + a) * (y + a)
                + (y - x - FIFTH) * y * y
                + a * (x + FIFTH) * (x + FIFTH)
        }
        Lemma::A4 => {
            FIFTH * (y + a) * (y + a)
                + (y - FIFTH) * (x + y) * (x + y)
                + x * y * y
                + (a - x) * FIFTH * FIFTH
        }
        Lemma::A5 => x + (y - x) * y * y + (1.0 - y) * x * x,
    }
}

/// `f₁` after eliminating `y`:
/// `x³ + ax² + (2d−x²)√(x²+2ax+2d−2a²) − 3a²x + 2a³`.
pub fn f1_closed_form(d: f64, a: f64, x: f64) -> Result<f64, AppendixError> {
    let s = root(
        Lemma::A2,
        x * x + 2.0 * a * x + 2.0 * d - 2.0 * a * a,
        d,
        a,
        x,
    )?;
    Ok(x * x * x + a * x * x + (2.0 * d - x * x) * s - 3.0 * a * a * x + 2.0 * a * a * a)
}

/// `f` at `x` with no box check, for finite differences near edges.
fn f_at(lemma: Lemma, d: f64, a: f64, x: f64) -> Result<f64, AppendixError> {
    let y = solve_y(lemma, d, a, x)?;
    Ok(eval_f(lemma, &AppendixPoint { d, a, x, y }))
}

/// Claimed bound minus value at one node (nonnegative when the lemma holds).
pub fn margin(lemma: Lemma, d: f64, a: f64, x: f64) -> Result<f64, AppendixError> {
    match lemma {
        Lemma::A1 => Ok(upper(d, a) - quasi_star_side(d)),
        Lemma::A4 => Ok(f_at(lemma, d, a, a)? - f_at(lemma, d, a, x)?),
        _ => Ok(upper(d, a) - f_at(lemma, d, a, x)?),
    }
}

fn node(lo: f64, hi: f64, i: usize, steps: usize) -> f64 {
    if i == steps {
        hi
    } else {
        lo + (hi - lo) * i as f64 / steps as f64
    }
}

/// Location of a grid node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Location {
    pub d: f64,
    pub a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
struct Extreme {
    value: f64,
    index: (usize, usize, usize),
    at: Location,
}

/// Smaller value wins; equal values go to the lexicographically first
/// node, so the reduction does not depend on the thread schedule.
fn lower(p: Option<Extreme>, q: Option<Extreme>) -> Option<Extreme> {
    match (p, q) {
        (Some(p), Some(q)) => {
            let key = |e: &Extreme| (e.value, e.index);
            Some(
                if key(&q).partial_cmp(&key(&p)) == Some(std::cmp::Ordering::Less) {
                    q
                } else {
                    p
                },
            )
        }
        (p, None) => p,
        (None, q) => q,
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct GridStats {
    min: Option<Extreme>,
    nodes: u64,
    invalid: u64,
    max_residual: f64,
}

impl GridStats {
    fn join(self, o: Self) -> Self {
        Self {
            min: lower(self.min, o.min),
            nodes: self.nodes + o.nodes,
            invalid: self.invalid + o.invalid,
            max_residual: self.max_residual.max(o.max_residual),
        }
    }
}

/// Box grid with `steps + 1` nodes per axis, `x` spanning its interval at
/// each `(d, a)`.
fn margin_grid(lemma: Lemma, steps: usize) -> GridStats {
    let (alo, ahi) = lemma.a_range();
    (0..=steps)
        .into_par_iter()
        .flat_map_iter(|i| (0..=steps).map(move |j| (i, j)))
        .map(|(i, j)| {
            let d = node(D_LO, D_HI, i, steps);
            let a = node(alo, ahi, j, steps);
            let xs: Vec<(usize, Option<f64>)> = match lemma.x_range(d, a) {
                None => vec![(0, None)],
                Some((lo, hi)) => (0..=steps)
                    .map(|k| (k, Some(node(lo, hi, k, steps))))
                    .collect(),
            };
            let mut stats = GridStats::default();
            for (k, x) in xs {
                stats.nodes += 1;
                let xv = x.unwrap_or(0.0);
                let value = margin(lemma, d, a, xv);
                let res = solve_y(lemma, d, a, xv)
                    .map(|y| residual(lemma, &AppendixPoint { d, a, x: xv, y }).abs());
                match (value, res) {
                    (Ok(value), Ok(res)) if value.is_finite() => {
                        stats.max_residual = stats.max_residual.max(res);
                        let e = Extreme {
                            value,
                            index: (i, j, k),
                            at: Location { d, a, x },
                        };
                        stats.min = lower(stats.min, Some(e));
                    }
                    _ => stats.invalid += 1,
                }
            }
            stats
        })
        .reduce(GridStats::default, GridStats::join)
}

/// One derivative-sign claim from a lemma's proof.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeClaim {
    pub lemma: Lemma,
    /// 1 or 2.
    pub order: u8,
    /// Fixed `x`-interval, or `None` for `[0, a]`.
    pub interval: Option<(f64, f64)>,
}

impl DerivativeClaim {
    pub fn for_lemma(lemma: Lemma) -> Vec<Self> {
        let c = |order, interval| Self {
            lemma,
            order,
            interval,
        };
        match lemma {
            Lemma::A1 => vec![],
            Lemma::A2 => vec![c(1, None)],
            Lemma::A3 => vec![c(2, Some((0.0, 0.3))), c(1, Some((0.3, 0.37)))],
            Lemma::A4 => vec![c(1, Some((0.25, 0.4)))],
            Lemma::A5 => vec![c(2, Some((1.0 / 3.0, 0.45)))],
        }
    }

    pub fn describe(&self) -> String {
        let primes = if self.order == 1 { "'" } else { "''" };
        let f = match self.lemma {
            Lemma::A2 => "f1",
            Lemma::A3 => "f2",
            Lemma::A4 => "f3",
            _ => "f4",
        };
        match self.interval {
            None => format!("{f}{primes} >= 0 on [0, a]"),
            Some((lo, hi)) => format!("{f}{primes} >= 0 on [{lo}, {hi}]"),
        }
    }

    /// Finite difference at `x`: central inside, one-sided at the ends.
    fn estimate(&self, d: f64, a: f64, x: f64, edge: Edge) -> Result<f64, AppendixError> {
        let h = FD_STEP;
        let f = |t: f64| f_at(self.lemma, d, a, t);
        Ok(match (self.order, edge) {
            (1, Edge::Low) => (f(x + h)? - f(x)?) / h,
            (1, Edge::High) => (f(x)? - f(x - h)?) / h,
            (1, Edge::Inner) => (f(x + h)? - f(x - h)?) / (2.0 * h),
            (_, Edge::Low) => (f(x)? - 2.0 * f(x + h)? + f(x + 2.0 * h)?) / (h * h),
            (_, Edge::High) => (f(x)? - 2.0 * f(x - h)? + f(x - 2.0 * h)?) / (h * h),
            (_, Edge::Inner) => (f(x + h)? - 2.0 * f(x)? + f(x - h)?) / (h * h),
        })
    }
}

#[derive(Clone, Copy)]
enum Edge {
    Low,
    Inner,
    High,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub claim: String,
    pub nodes: u64,
    pub passed: u64,
    pub failed: u64,
    /// Nodes where `y` is not real (the radicand is negative), so the
    /// function is undefined there.
    pub skipped: u64,
    pub min_value: Option<f64>,
    pub min_location: Option<Location>,
}

fn check_derivative(claim: DerivativeClaim, steps: usize) -> DerivativeCheck {
    #[derive(Default, Clone, Copy)]
    struct Tally {
        nodes: u64,
        passed: u64,
        failed: u64,
        skipped: u64,
        min: Option<Extreme>,
    }
    let (alo, ahi) = claim.lemma.a_range();
    let t = (0..=steps)
        .into_par_iter()
        .flat_map_iter(|i| (0..=steps).map(move |j| (i, j)))
        .map(|(i, j)| {
            let d = node(D_LO, D_HI, i, steps);
            let a = node(alo, ahi, j, steps);
            let (lo, hi) = claim.interval.unwrap_or((0.0, a));
            let mut t = Tally::default();
            for k in 0..=steps {
                let x = node(lo, hi, k, steps);
                let edge = match k {
                    0 => Edge::Low,
                    k if k == steps => Edge::High,
                    _ => Edge::Inner,
                };
                t.nodes += 1;
                match claim.estimate(d, a, x, edge) {
                    Err(_) => t.skipped += 1,
                    Ok(v) => {
                        if v >= -SIGN_BAND {
                            t.passed += 1;
                        } else {
                            t.failed += 1;
                        }
                        let e = Extreme {
                            value: v,
                            index: (i, j, k),
                            at: Location { d, a, x: Some(x) },
                        };
                        t.min = lower(t.min, Some(e));
                    }
                }
            }
            t
        })
        .reduce(Tally::default, |p, q| Tally {
            nodes: p.nodes + q.nodes,
            passed: p.passed + q.passed,
            failed: p.failed + q.failed,
            skipped: p.skipped + q.skipped,
            min: lower(p.min, q.min),
        });
    DerivativeCheck {
        claim: claim.describe(),
        nodes: t.nodes,
        passed: t.passed,
        failed: t.failed,
        skipped: t.skipped,
        min_value: t.min.map(|e| e.value),
        min_location: t.min.map(|e| e.at),
    }
}

/// The A1 margin at `(a, d) = (23/100, 17/50)` against its decomposition
/// `(6271√7329 − 347833)/10⁶ − 16√2/125`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCheck {
    pub location: Location,
    pub margin: f64,
    pub reference: f64,
    pub difference: f64,
    pub passed: bool,
}

pub fn lemma_a1_point() -> PointCheck {
    let (a, d) = (23.0 / 100.0, 17.0 / 50.0);
    let margin = upper(d, a) - quasi_star_side(d);
    let reference = (6271.0 * 7329f64.sqrt() - 347833.0) / 1e6 - 16.0 * 2f64.sqrt() / 125.0;
    let difference = (margin - reference).abs();
    PointCheck {
        location: Location { d, a, x: None },
        margin,
        reference,
        difference,
        passed: difference <= 1e-9 && margin > 0.0,
    }
}

/// Minimum of `f₃(a) − f₃(x)` over `[0, 1/4] × [1/3, 2/5] × [17/50, 7/20]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionCheck {
    /// Steps along `x`, `a`, `d`.
    pub steps: [usize; 3],
    pub max_step: f64,
    pub min_margin: f64,
    pub argmin: Location,
    pub bound: f64,
    pub passed: bool,
}

/// Grid minimum of the A4 margin on the proof's sub-region, with every
/// axis step at most `max_step`. Passes at `bound − 1e−4`.
pub fn lemma_a4_region(max_step: f64) -> RegionCheck {
    let count = |len: f64| ((len / max_step) - 1e-9).ceil().max(1.0) as usize;
    let (alo, ahi) = Lemma::A4.a_range();
    let (nx, na, nd) = (count(0.25), count(ahi - alo), count(D_HI - D_LO));
    let min = (0..=nd)
        .into_par_iter()
        .flat_map_iter(|i| (0..=na).flat_map(move |j| (0..=nx).map(move |k| (i, j, k))))
        .map(|(i, j, k)| {
            let (d, a, x) = (
                node(D_LO, D_HI, i, nd),
                node(alo, ahi, j, na),
                node(0.0, 0.25, k, nx),
            );
            margin(Lemma::A4, d, a, x).ok().map(|value| Extreme {
                value,
                index: (i, j, k),
                at: Location { d, a, x: Some(x) },
            })
        })
        .reduce(|| None, lower)
        .expect("the region has nodes and every node is in the domain");
    RegionCheck {
        steps: [nx, na, nd],
        max_step,
        min_margin: min.value,
        argmin: min.at,
        bound: A4_REGION_BOUND,
        passed: min.value >= A4_REGION_BOUND - 1e-4,
    }
}

/// Largest gap between [`f1_closed_form`] and direct substitution over
/// `samples` seeded random points of the A2 box.
pub fn a2_closed_form_discrepancy(seed: u64, samples: usize) -> Result<f64, AppendixError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (alo, ahi) = Lemma::A2.a_range();
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let d = rng.gen_range(D_LO..=D_HI);
        let a = rng.gen_range(alo..=ahi);
        let x = rng.gen_range(0.0..=a);
        let pt = AppendixPoint::solve(Lemma::A2, d, a, x)?;
        worst = worst.max((eval_f(Lemma::A2, &pt) - f1_closed_form(d, a, x)?).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaCheckReport {
    pub lemma: Lemma,
    pub steps: usize,
    pub nodes: u64,
    /// Nodes where the margin could not be evaluated.
    pub invalid_nodes: u64,
    pub min_margin: f64,
    pub argmin: Location,
    pub strict: bool,
    pub refined_steps: usize,
    pub refined_min_margin: f64,
    /// `refined_min_margin − min_margin`.
    pub refinement_change: f64,
    pub max_residual: f64,
    pub derivative_checks: Vec<DerivativeCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_check: Option<PointCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region_check: Option<RegionCheck>,
    pub passed: bool,
    /// Not part of the deterministic payload.
    pub wall_time_ms: u128,
}

fn margin_ok(lemma: Lemma, m: f64) -> bool {
    if lemma.strict() {
        m > 0.0
    } else {
        m >= -EQUALITY_SLACK
    }
}

/// Full check of one lemma at `steps` per axis (and at `2·steps` for the
/// refinement figure).
pub fn check_lemma(lemma: Lemma, steps: usize) -> Result<LemmaCheckReport, AppendixError> {
    if steps < 10 {
        return Err(AppendixError::TooFewSteps(steps));
    }
    let started = Instant::now();
    let coarse = margin_grid(lemma, steps);
    let fine = margin_grid(lemma, 2 * steps);
    let min = coarse.min.expect("grids have nodes");
    let fine_min = fine.min.expect("grids have nodes");
    let derivative_checks: Vec<DerivativeCheck> = DerivativeClaim::for_lemma(lemma)
        .into_iter()
        .map(|c| check_derivative(c, steps))
        .collect();
    let point_check = (lemma == Lemma::A1).then(lemma_a1_point);
    let region_check = (lemma == Lemma::A4).then(|| lemma_a4_region(0.002));

    let passed = coarse.invalid == 0
        && fine.invalid == 0
        && margin_ok(lemma, min.value)
        && margin_ok(lemma, fine_min.value)
        && coarse.max_residual.max(fine.max_residual) <= RESIDUAL_TOL
        && derivative_checks.iter().all(|c| c.failed == 0)
        && point_check.as_ref().is_none_or(|p| p.passed)
        && region_check.as_ref().is_none_or(|r| r.passed);
    Ok(LemmaCheckReport {
        lemma,
        steps,
        nodes: coarse.nodes,
        invalid_nodes: coarse.invalid,
        min_margin: min.value,
        argmin: min.at,
        strict: lemma.strict(),
        refined_steps: 2 * steps,
        refined_min_margin: fine_min.value,
        refinement_change: fine_min.value - min.value,
        max_residual: coarse.max_residual,
        derivative_checks,
        point_check,
        region_check,
        passed,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

/// One standalone numeric inequality from the proofs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantCheck {
    pub name: &'static str,
    pub value: f64,
    /// Closed form the value must reproduce to 1e−12, when one is quoted.
    pub reference: Option<f64>,
    pub relation: &'static str,
    pub bound: f64,
    /// Signed distance from the bound in the direction of the relation.
    pub margin: f64,
    pub passed: bool,
}

fn constant(
    name: &'static str,
    value: f64,
    reference: Option<f64>,
    relation: &'static str,
    bound: f64,
) -> ConstantCheck {
    let margin = match relation {
        "<" | "<=" => bound - value,
        _ => value - bound,
    };
    let holds = match relation {
        ">" | "<" => margin > 0.0,
        _ => margin >= -EQUALITY_SLACK,
    };
    let reproduced = reference.is_none_or(|r| (value - r).abs() <= 1e-12);
    ConstantCheck {
        name,
        value,
        reference,
        relation,
        bound,
        margin,
        passed: holds && reproduced,
    }
}

fn grid_min(lo: (f64, f64), hi: (f64, f64), steps: usize, f: impl Fn(f64, f64) -> f64) -> f64 {
    (0..=steps)
        .flat_map(|i| (0..=steps).map(move |j| (i, j)))
        .map(|(i, j)| f(node(lo.0, hi.0, i, steps), node(lo.1, hi.1, j, steps)))
        .fold(f64::INFINITY, f64::min)
}

/// Re-evaluates the numeric bounds quoted inside the density proofs.
pub fn interior_bounds_check() -> Vec<ConstantCheck> {
    let gap = |rho: f64, alpha: f64| 1.0 - 2.0 * alpha - (1.0 - rho - alpha * alpha).sqrt();
    let fifth = |alpha: f64| 1.0 - alpha - (1.0 - 17.0 / 25.0 - alpha * alpha).sqrt();
    let a5_lo = |a: f64, d: f64| 1.0 - a / 2.0 - (1.0 - 2.0 * d) / (2.0 * a);
    let thirds = 1.0 / 3.0;
    vec![
        constant(
            "omega gap at (rho, alpha) = (17/25, 23/100)",
            gap(17.0 / 25.0, 23.0 / 100.0),
            Some((54.0 - 2671f64.sqrt()) / 100.0),
            ">",
            1.0 / 50.0,
        ),
        constant(
            "omega gap, grid minimum over rho in [17/25, 7/10], alpha in [17/100, 23/100]",
            grid_min((0.68, 0.17), (0.7, 0.23), 400, gap),
            None,
            ">",
            1.0 / 50.0,
        ),
        constant(
            "1 - alpha - sqrt(1 - 17/25 - alpha^2), grid minimum over alpha in [1/3, 2/5]",
            grid_min((thirds, 0.0), (0.4, 0.0), 2000, |a, _| fifth(a)),
            None,
            ">=",
            1.0 / 5.0,
        ),
        constant(
            "A5 lower x-end at (a, d) = (1/3, 17/50)",
            a5_lo(thirds, D_LO),
            Some(53.0 / 150.0),
            ">",
            thirds,
        ),
        constant(
            "A5 lower x-end, grid minimum over the (a, d) box",
            grid_min((thirds, D_LO), (0.4, D_HI), 400, a5_lo),
            None,
            ">=",
            53.0 / 150.0,
        ),
        constant(
            "A5 upper x-end at d = 7/20",
            2.0 * D_HI - 0.25,
            Some(9.0 / 20.0),
            "<=",
            9.0 / 20.0,
        ),
        constant(
            "(1 - 2d)^(3/2) at d = 17/50",
            (1.0 - 2.0 * D_LO) * (1.0 - 2.0 * D_LO).sqrt(),
            Some(16.0 * 2f64.sqrt() / 125.0),
            ">",
            0.0,
        ),
        constant(
            "theta lower bound at (a, d) = (2/5, 17/50)",
            theta(0.4, D_LO),
            None,
            ">",
            0.3,
        ),
        constant(
            "theta upper bound at (a, d) = (1/3, 7/20)",
            theta(thirds, D_HI),
            None,
            "<",
            0.37,
        ),
        constant(
            "theta, grid minimum over the A3 box",
            grid_min((thirds, D_LO), (0.4, D_HI), 400, theta),
            None,
            ">",
            0.3,
        ),
        constant(
            "theta, grid maximum over the A3 box",
            -grid_min((thirds, D_LO), (0.4, D_HI), 400, |a, d| -theta(a, d)),
            None,
            "<",
            0.37,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_at_x_equals_a_hits_the_bound() {
        for (d, a) in [(D_LO, 0.17), (D_HI, 0.23), (0.345, 0.2)] {
            let pt = AppendixPoint::solve(Lemma::A2, d, a, a).unwrap();
            assert!((eval_f(Lemma::A2, &pt) - upper(d, a)).abs() < 1e-14);
            assert!(margin(Lemma::A2, d, a, a).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn a4_at_x_equals_a_hits_the_bound() {
        let pt = AppendixPoint::solve(Lemma::A4, 0.345, 0.35, 0.35).unwrap();
        assert!((eval_f(Lemma::A4, &pt) - upper(0.345, 0.35)).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_substitution() {
        assert!(a2_closed_form_discrepancy(0, 1000).unwrap() <= 1e-12);
    }

    #[test]
    fn a5_solve_picks_the_upper_root() {
        let pt = AppendixPoint::solve(Lemma::A5, 0.345, 0.36, 0.42).unwrap();
        assert!(pt.y >= pt.x);
        assert!(residual(Lemma::A5, &pt).abs() <= 1e-12);
    }

    #[test]
    fn out_of_box_is_rejected() {
        assert!(matches!(
            AppendixPoint::solve(Lemma::A2, 0.3, 0.2, 0.1),
            Err(AppendixError::OutOfBox { .. })
        ));
        assert!(matches!(
            AppendixPoint::solve(Lemma::A4, D_LO, 0.35, 0.5),
            Err(AppendixError::OutOfBox { .. })
        ));
    }

    #[test]
    fn a1_point_matches_its_decomposition() {
        let p = lemma_a1_point();
        assert!(p.passed, "{p:?}");
    }

    #[test]
    fn every_lemma_passes_at_coarse_resolution() {
        for lemma in Lemma::ALL {
            let r = check_lemma(lemma, 20).unwrap();
            assert!(r.passed, "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn interior_constants_hold() {
        for c in interior_bounds_check() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn too_few_steps() {
        assert_eq!(
            check_lemma(Lemma::A1, 5).unwrap_err(),
            AppendixError::TooFewSteps(5)
        );
    }
}
