//! Asymptotic cherry densities: the closed-form lower bounds, the two
//! theorem values, and finite-`n` convergence of the constructions.
//!
//! Closed forms are evaluated in `f64`, left to right as written in each
//! function. Finite-`n` densities come from the constructions' degree runs
//! in exact integer arithmetic; only the final ratio is converted.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{ConstructionError, DegreeLayout, G1Layout, G2Layout, QuasiStarLayout};
use crate::graph::binom2;

/// Values closer than this are reported as a tie.
pub const TIE_BAND: f64 = 1e-9;

/// Radicands in `[-RADICAND_SLACK, 0)` are treated as zero.
pub const RADICAND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityError {
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("negative radicand {value} in {expr}")]
    Domain { expr: &'static str, value: f64 },
    #[error("n = {n} is too small for a cherry density")]
    TooSmall { n: usize },
    #[error("bad grid axis '{0}': expected start:end:step or a single value")]
    Grid(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// `√x` with boundary rounding clamped to zero.
pub fn sqrt_clamped(x: f64, expr: &'static str) -> Result<f64, DensityError> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -RADICAND_SLACK {
        Ok(0.0)
    } else {
        Err(DensityError::Domain { expr, value: x })
    }
}

/// Edge density `ρ`, independent-set fraction `α`, degree-floor fraction `β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityPoint {
    pub rho: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl DensityPoint {
    pub fn new(rho: f64, alpha: f64, beta: f64) -> Result<Self, DensityError> {
        for (name, value) in [("rho", rho), ("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(DensityError::OutOfRange { name, value });
            }
        }
        Ok(Self { rho, alpha, beta })
    }

    /// The middle bound needs room for the `k × ℓ` block and a clique:
    /// `ρ >= 2αβ + β²`.
    pub fn g1_feasible(&self) -> bool {
        let (r, a, b) = (self.rho, self.alpha, self.beta);
        r >= 2.0 * a * b + b * b - RADICAND_SLACK
    }
}

/// `2ρ − 1 + (1−ρ)^{3/2}`, the quasi-star density.
pub fn quasi_star_value(rho: f64) -> Result<f64, DensityError> {
    let s = sqrt_clamped(1.0 - rho, "1 - rho")?;
    Ok(2.0 * rho - 1.0 + (1.0 - rho) * s)
}

/// `α²β + β²α + ρ√(ρ−2αβ)`, or `None` below `ρ = 2αβ + β²`.
pub fn g1_value(p: DensityPoint) -> Result<Option<f64>, DensityError> {
    if !p.g1_feasible() {
        return Ok(None);
    }
    let (r, a, b) = (p.rho, p.alpha, p.beta);
    let s = sqrt_clamped(r - 2.0 * a * b, "rho - 2 alpha beta")?;
    Ok(Some(a * a * b + b * b * a + r * s))
}

/// `α³ + (ρ−α²)√(ρ+α²)`.
pub fn g2_value(rho: f64, alpha: f64) -> Result<f64, DensityError> {
    let s = sqrt_clamped(rho + alpha * alpha, "rho + alpha^2")?;
    Ok(alpha * alpha * alpha + (rho - alpha * alpha) * s)
}

/// Label of the largest entry, or `tie:x+y` when several are within
/// [`TIE_BAND`] of it.
fn argmax(entries: &[(&'static str, Option<f64>)]) -> (f64, String) {
    let max = entries
        .iter()
        .filter_map(|e| e.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let top: Vec<&str> = entries
        .iter()
        .filter(|e| e.1.is_some_and(|v| max - v <= TIE_BAND))
        .map(|e| e.0)
        .collect();
    let label = match top.as_slice() {
        [one] => one.to_string(),
        many => format!("tie:{}", many.join("+")),
    };
    (max, label)
}

/// The three construction lower bounds at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundBundle {
    pub quasi_star: f64,
    /// `None` when the point is infeasible for the middle construction.
    pub g1: Option<f64>,
    pub g2: f64,
    /// Maximum over the defined entries.
    pub max: f64,
    pub argmax: String,
}

pub fn fact13_bounds(p: DensityPoint) -> Result<BoundBundle, DensityError> {
    let quasi_star = quasi_star_value(p.rho)?;
    let g1 = g1_value(p)?;
    let g2 = g2_value(p.rho, p.alpha)?;
    let (max, argmax) = argmax(&[
        ("quasi_star", Some(quasi_star)),
        ("g1", g1),
        ("g2", Some(g2)),
    ]);
    Ok(BoundBundle {
        quasi_star,
        g1,
        g2,
        max,
        argmax,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
pub enum DensityTheorem {
    /// `β = α`, `ρ ∈ [17/25, 7/10]`, `α ∈ [17/100, 23/100]`.
    #[value(name = "1.4")]
    #[serde(rename = "1.4")]
    EqualFloor,
    /// `β = 1/5`, `ρ ∈ [17/25, 7/10]`, `α ∈ [1/3, 2/5]`.
    #[value(name = "1.5")]
    #[serde(rename = "1.5")]
    FifthFloor,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremValue {
    pub value: f64,
    /// Whether the point lies in the theorem's stated range. The formula is
    /// evaluated either way.
    pub in_range: bool,
    /// For the two-branch maximum: `quasi_star`, `g2` or a tie.
    pub winner: Option<String>,
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    lo - 1e-12 <= x && x <= hi + 1e-12
}

pub fn thm_value(p: DensityPoint, which: DensityTheorem) -> Result<TheoremValue, DensityError> {
    let rho_ok = within(p.rho, 17.0 / 25.0, 7.0 / 10.0);
    match which {
        DensityTheorem::EqualFloor => Ok(TheoremValue {
            value: g2_value(p.rho, p.alpha)?,
            in_range: rho_ok && within(p.alpha, 0.17, 0.23) && (p.beta - p.alpha).abs() <= 1e-12,
            winner: None,
        }),
        DensityTheorem::FifthFloor => {
            let qs = quasi_star_value(p.rho)?;
            let g2 = g2_value(p.rho, p.alpha)?;
            let (value, winner) = argmax(&[("quasi_star", Some(qs)), ("g2", Some(g2))]);
            Ok(TheoremValue {
                value,
                in_range: rho_ok
                    && within(p.alpha, 1.0 / 3.0, 0.4)
                    && (p.beta - 0.2).abs() <= 1e-12,
                winner: Some(winner),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionFamily {
    #[value(name = "quasi_star", alias = "quasi-star")]
    QuasiStar,
    G1,
    G2,
}

impl ConstructionFamily {
    pub fn label(self) -> &'static str {
        match self {
            ConstructionFamily::QuasiStar => "quasi_star",
            ConstructionFamily::G1 => "g1",
            ConstructionFamily::G2 => "g2",
        }
    }

    /// The family's closed-form limit; `None` where it is undefined.
    pub fn formula(self, p: DensityPoint) -> Result<Option<f64>, DensityError> {
        match self {
            ConstructionFamily::QuasiStar => quasi_star_value(p.rho).map(Some),
            ConstructionFamily::G1 => g1_value(p),
            ConstructionFamily::G2 => g2_value(p.rho, p.alpha).map(Some),
        }
    }
}

/// Integer parameters obtained from a density point at a given `n`.
///
/// `m = round(ρ·C(n,2))`, `ℓ = round(αn)`, `k = round(βn)`, each with
/// [`f64::round`] (half away from zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoundedParams {
    pub n: usize,
    pub m: u64,
    pub ell: usize,
    pub k: usize,
}

impl RoundedParams {
    pub fn new(n: usize, p: DensityPoint) -> Self {
        let pairs = binom2(n as u64);
        let m = ((p.rho * pairs as f64).round() as u64).min(pairs);
        let ell = ((p.alpha * n as f64).round() as usize).min(n);
        let k = ((p.beta * n as f64).round() as usize).min(n);
        Self { n, m, ell, k }
    }
}

/// Densities achieved by one construction at a finite `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionDensity {
    pub family: ConstructionFamily,
    #[serde(flatten)]
    pub params: RoundedParams,
    pub cherries: u128,
    #[serde(skip)]
    pub edge_ratio: Ratio<u128>,
    #[serde(skip)]
    pub cherry_ratio: Ratio<u128>,
    pub edge_density: f64,
    pub cherry_density: f64,
}

fn layout_cherries<L: DegreeLayout>(layout: &L) -> u128 {
    layout
        .degree_runs()
        .into_iter()
        .map(|(d, count)| count as u128 * binom2(d as u64) as u128)
        .sum()
}

/// Builds the construction at `n` from the rounded parameters and returns
/// its exact densities, computed from degree runs (no edge set is built).
pub fn construction_density(
    n: usize,
    p: DensityPoint,
    family: ConstructionFamily,
) -> Result<ConstructionDensity, DensityError> {
    if n < 3 {
        return Err(DensityError::TooSmall { n });
    }
    let params = RoundedParams::new(n, p);
    let RoundedParams { m, ell, k, .. } = params;
    let cherries = match family {
        ConstructionFamily::QuasiStar => layout_cherries(&QuasiStarLayout::new(n, m)?),
        ConstructionFamily::G1 => layout_cherries(&G1Layout::new(n, m, ell, k)?),
        ConstructionFamily::G2 => layout_cherries(&G2Layout::new(n, m, ell, k)?),
    };
    let n128 = n as u128;
    let triples = n128 * (n128 - 1) * (n128 - 2) / 2;
    let edge_ratio = Ratio::new(m as u128, binom2(n as u64) as u128);
    let cherry_ratio = Ratio::new(cherries, triples);
    Ok(ConstructionDensity {
        family,
        params,
        cherries,
        edge_density: edge_ratio.to_f64().unwrap_or(f64::NAN),
        cherry_density: cherry_ratio.to_f64().unwrap_or(f64::NAN),
        edge_ratio,
        cherry_ratio,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub m: u64,
    pub l: usize,
    pub k: usize,
    pub density: f64,
    pub formula: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub family: ConstructionFamily,
    pub point: DensityPoint,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares `C` in `error ≈ C/n`.
    pub fitted_c: f64,
    /// Each error is at most 1.1 times the previous one.
    pub monotone: bool,
}

/// Convergence of a construction's finite-`n` density to its closed form.
pub fn convergence(
    family: ConstructionFamily,
    p: DensityPoint,
    ns: &[usize],
) -> Result<ConvergenceReport, DensityError> {
    let formula = family.formula(p)?.ok_or_else(|| {
        ConstructionError::InvalidParams(format!("{} is undefined at {p:?}", family.label()))
    })?;
    let rows = ns
        .iter()
        .map(|&n| {
            let c = construction_density(n, p, family)?;
            Ok(ConvergenceRow {
                n,
                m: c.params.m,
                l: c.params.ell,
                k: c.params.k,
                density: c.cherry_density,
                formula,
                error: (c.cherry_density - formula).abs(),
            })
        })
        .collect::<Result<Vec<_>, DensityError>>()?;
    let num: f64 = rows.iter().map(|r| r.error / r.n as f64).sum();
    let den: f64 = rows.iter().map(|r| 1.0 / (r.n as f64 * r.n as f64)).sum();
    let monotone = rows.windows(2).all(|w| w[1].error <= 1.1 * w[0].error);
    Ok(ConvergenceReport {
        family,
        point: p,
        rows,
        fitted_c: if den > 0.0 { num / den } else { 0.0 },
        monotone,
    })
}

/// One axis of a scan grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Axis {
    pub fn single(value: f64) -> Self {
        Self {
            start: value,
            end: value,
            step: 1.0,
        }
    }

    /// Nodes `start + i·step` up to `end` (with a small tolerance so the
    /// end point survives rounding).
    pub fn points(&self) -> Vec<f64> {
        if self.step <= 0.0 || self.end < self.start {
            return vec![self.start];
        }
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

impl std::str::FromStr for Axis {
    type Err = DensityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DensityError::Grid(s.to_string());
        let parts: Vec<f64> = s
            .split(':')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [v] => Ok(Axis::single(*v)),
            [start, end, step] if *step > 0.0 && end >= start => Ok(Axis {
                start: *start,
                end: *end,
                step: *step,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rho: Axis,
    pub alpha: Axis,
    /// `None` ties `β` to `α`.
    pub beta: Option<Axis>,
}

/// One scan row. Options serialize as empty CSV cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub rho: f64,
    pub alpha: f64,
    pub beta: f64,
    pub quasi_star: f64,
    pub g1: Option<f64>,
    pub g2: f64,
    pub max: f64,
    pub argmax: String,
    pub thm14: f64,
    pub thm14_in_range: bool,
    pub thm15: f64,
    pub thm15_in_range: bool,
    pub thm15_winner: String,
}

/// Evaluates every bound on the grid, ordered by `(ρ, α, β)` index.
pub fn scan(grid: &GridSpec) -> Result<Vec<ScanRow>, DensityError> {
    let mut rows = Vec::new();
    for &rho in &grid.rho.points() {
        for &alpha in &grid.alpha.points() {
            let betas = grid.beta.map_or_else(|| vec![alpha], |b| b.points());
            for &beta in &betas {
                let p = DensityPoint::new(rho, alpha, beta)?;
                let b = fact13_bounds(p)?;
                let t14 = thm_value(p, DensityTheorem::EqualFloor)?;
                let t15 = thm_value(p, DensityTheorem::FifthFloor)?;
                rows.push(ScanRow {
                    rho,
                    alpha,
                    beta,
                    quasi_star: b.quasi_star,
                    g1: b.g1,
                    g2: b.g2,
                    max: b.max,
                    argmax: b.argmax,
                    thm14: t14.value,
                    thm14_in_range: t14.in_range,
                    thm15: t15.value,
                    thm15_in_range: t15.in_range,
                    thm15_winner: t15.winner.unwrap_or_default(),
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{g1_family, g2_family, quasi_star};

    fn pt(rho: f64, alpha: f64, beta: f64) -> DensityPoint {
        DensityPoint::new(rho, alpha, beta).unwrap()
    }

    #[test]
    fn beta_zero_collapses_middle_term() {
        let b = fact13_bounds(pt(0.6, 0.3, 0.0)).unwrap();
        assert!((b.g1.unwrap() - 0.6f64.powf(1.5)).abs() < 1e-15);
        assert!((b.quasi_star - (0.2 + 0.4f64.powf(1.5))).abs() < 1e-15);
    }

    #[test]
    fn full_density_is_one_everywhere() {
        let b = fact13_bounds(pt(1.0, 0.0, 0.3)).unwrap();
        assert_eq!((b.quasi_star, b.g1, b.g2), (1.0, Some(1.0), 1.0));
        assert_eq!(b.argmax, "tie:quasi_star+g1+g2");
    }

    #[test]
    fn lemma_point_favours_g2() {
        let b = fact13_bounds(pt(0.68, 0.23, 0.23)).unwrap();
        let expect = (6271.0 * 7329f64.sqrt() - 347833.0) / 1e6 - 16.0 * 2f64.sqrt() / 125.0;
        assert!((b.g2 - b.quasi_star - expect).abs() < 1e-12);
        assert!(expect > 0.0);
    }

    #[test]
    fn infeasible_middle_term_is_flagged() {
        let b = fact13_bounds(pt(0.1, 0.5, 0.3)).unwrap();
        assert_eq!(b.g1, None);
        assert!(b.max >= b.quasi_star && b.max >= b.g2);
    }

    #[test]
    fn theorem_values() {
        let t = thm_value(pt(0.68, 0.2, 0.2), DensityTheorem::EqualFloor).unwrap();
        assert!((t.value - (0.008 + 0.64 * 0.72f64.sqrt())).abs() < 1e-15);
        assert!(t.in_range);
        let t = thm_value(pt(0.5, 0.2, 0.2), DensityTheorem::EqualFloor).unwrap();
        assert!(!t.in_range);
        for alpha in [1.0 / 3.0, 0.4] {
            let t = thm_value(pt(0.69, alpha, 0.2), DensityTheorem::FifthFloor).unwrap();
            assert!(t.in_range);
            assert!(t.winner.is_some());
        }
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        // αn = 2.5 rounds up
        let r = RoundedParams::new(5, pt(0.5, 0.5, 0.1));
        assert_eq!((r.m, r.ell, r.k), (5, 3, 1));
    }

    #[test]
    fn layout_densities_match_built_graphs() {
        for n in [6usize, 9, 14, 25] {
            for (rho, alpha, beta) in [(0.68, 0.2, 0.2), (0.5, 0.1, 0.1), (0.3, 0.2, 0.0)] {
                let p = pt(rho, alpha, beta);
                let r = RoundedParams::new(n, p);
                let qs = construction_density(n, p, ConstructionFamily::QuasiStar).unwrap();
                let g = quasi_star(n, r.m).unwrap();
                assert_eq!(qs.cherries, g.count_cherries() as u128);
                if let Ok(g) = g1_family(n, r.m, r.ell, r.k) {
                    let c = construction_density(n, p, ConstructionFamily::G1).unwrap();
                    assert_eq!(c.cherries, g.graph.count_cherries() as u128);
                    let d = g.graph.densities().unwrap();
                    assert_eq!(
                        c.cherry_ratio,
                        Ratio::new(*d.cherry.numer() as u128, *d.cherry.denom() as u128)
                    );
                }
                if let Ok(g) = g2_family(n, r.m, r.ell, r.k) {
                    let c = construction_density(n, p, ConstructionFamily::G2).unwrap();
                    assert_eq!(c.cherries, g.graph.count_cherries() as u128);
                }
            }
        }
    }

    #[test]
    fn g1_converges_where_blocks_fit() {
        // √(ρ−2αβ) = 0.6 <= 1 − α, so the clique and the block are disjoint
        let p = pt(0.44, 0.2, 0.2);
        let rep = convergence(ConstructionFamily::G1, p, &[100, 500, 2000]).unwrap();
        assert!(rep.monotone, "{rep:?}");
        assert!(rep.rows[2].error < 5e-3, "{rep:?}");
    }

    #[test]
    fn large_n_is_cheap() {
        let c =
            construction_density(1_000_000, pt(0.68, 0.2, 0.0), ConstructionFamily::G2).unwrap();
        let f = g2_value(0.68, 0.2).unwrap();
        assert!((c.cherry_density - f).abs() < 1e-5);
    }

    #[test]
    fn axis_parsing() {
        let a: Axis = "0.68:0.70:0.005".parse().unwrap();
        assert_eq!(a.points().len(), 5);
        let a: Axis = "0.2".parse().unwrap();
        assert_eq!(a.points(), vec![0.2]);
        assert!("1:0:0.1".parse::<Axis>().is_err());
        assert!("x".parse::<Axis>().is_err());
    }

    #[test]
    fn scan_on_equal_floor_rectangle_prefers_g2() {
        let grid = GridSpec {
            rho: "0.68:0.70:0.005".parse().unwrap(),
            alpha: "0.17:0.23:0.005".parse().unwrap(),
            beta: None,
        };
        let rows = scan(&grid).unwrap();
        assert_eq!(rows.len(), 5 * 13);
        for row in rows {
            assert!(row.g2 > row.quasi_star, "{row:?}");
            assert_eq!(row.argmax, "g2", "{row:?}");
            assert!(row.thm14_in_range);
        }
    }
}
