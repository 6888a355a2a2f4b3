use std::collections::BTreeMap;

use super::enumerate::{best_by_size, best_subset, merge, Best};
use super::{check_cap, cherries_from_z1, Family, Mode, OracleError, OracleReport, TheoremRow};
use crate::constructions::{ak_bipartite, predicted_extremal, BipartiteFamilyParams, Branch};
use crate::graph::{AnyGraphJson, BipartiteGraph};

/// Slot `i·s + j` is edge `(i, j)`, so slot order is lexicographic.
struct Layout {
    r: usize,
    s: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl Layout {
    fn new(r: usize, s: usize) -> Self {
        let row = if s == 0 { 0 } else { u64::MAX >> (64 - s) };
        let rows = (0..r).map(|i| row << (i * s)).collect();
        let cols = (0..s)
            .map(|j| (0..r).fold(0, |acc, i| acc | 1 << (i * s + j)))
            .collect();
        Self { r, s, rows, cols }
    }

    fn left(&self, mask: u64) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(move |&m| (mask & m).count_ones())
    }

    fn right(&self, mask: u64) -> impl Iterator<Item = u32> + '_ {
        self.cols.iter().map(move |&m| (mask & m).count_ones())
    }

    fn z1(&self, mask: u64) -> u64 {
        self.left(mask)
            .chain(self.right(mask))
            .map(|d| (d as u64) * (d as u64))
            .sum()
    }

    fn graph(&self, mask: u64) -> BipartiteGraph {
        let s = self.s;
        let edges = (0..self.r * s)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b / s, b % s));
        BipartiteGraph::new(self.r, self.s, edges).expect("mask decodes to a valid graph")
    }

    /// Masks whose rows are prefixes of nonincreasing length summing to `m`.
    fn ferrers(&self, m: usize) -> Vec<u64> {
        fn go(layout: &Layout, row: usize, left: usize, cap: usize, mask: u64, out: &mut Vec<u64>) {
            if row == layout.r {
                if left == 0 {
                    out.push(mask);
                }
                return;
            }
            let rows_left = layout.r - row;
            for d in (0..=cap.min(left)).rev() {
                if d * rows_left < left {
                    break;
                }
                let bits = if d == 0 {
                    0
                } else {
                    (u64::MAX >> (64 - d)) << (row * layout.s)
                };
                go(layout, row + 1, left - d, d, mask | bits, out);
            }
        }
        let mut out = Vec::new();
        go(self, 0, m, self.s, 0, &mut out);
        out
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

impl Side {
    /// Left: at least `ℓ` rows of degree `>= k`. Right: at least `k`
    /// columns of degree `>= ℓ`.
    fn admits(self, layout: &Layout, mask: u64, ell: usize, k: usize) -> bool {
        match self {
            Side::Left => layout.left(mask).filter(|&d| d as usize >= k).count() >= ell,
            Side::Right => layout.right(mask).filter(|&d| d as usize >= ell).count() >= k,
        }
    }

    fn witness_set(self, b: &BipartiteGraph, ell: usize, k: usize) -> Vec<usize> {
        match self {
            Side::Left => (0..b.r())
                .filter(|&i| b.left_degree(i) >= k)
                .take(ell)
                .collect(),
            Side::Right => (0..b.s())
                .filter(|&j| b.right_degree(j) >= ell)
                .take(k)
                .collect(),
        }
    }
}

/// φ(r, s, ℓ, k, m): the maximum Z₁ over `r × s` bipartite graphs with `m`
/// edges and `ℓ` left vertices of degree at least `k`.
pub fn phi_bipartite(
    params: &BipartiteFamilyParams,
    mode: Mode,
    cap: u32,
) -> Result<OracleReport, OracleError> {
    phi(params, mode, cap, Side::Left)
}

/// As [`phi_bipartite`] with the witness on the right: `k` right vertices
/// of degree at least `ℓ`.
pub fn phi_bipartite_right(
    params: &BipartiteFamilyParams,
    mode: Mode,
    cap: u32,
) -> Result<OracleReport, OracleError> {
    phi(params, mode, cap, Side::Right)
}

fn phi(
    p: &BipartiteFamilyParams,
    mode: Mode,
    cap: u32,
    side: Side,
) -> Result<OracleReport, OracleError> {
    let BipartiteFamilyParams { r, s, m, ell, k } = *p;
    let slots = check_cap((r * s) as u64, cap)?;
    let layout = Layout::new(r, s);
    let eval = |mask: u64| side.admits(&layout, mask, ell, k).then(|| layout.z1(mask));

    let (best, enumerated) = match mode {
        Mode::Full => best_subset(slots, m as u32, eval),
        Mode::Shifted => {
            let shapes = layout.ferrers(m);
            let best = shapes.iter().fold(None, |acc, &mask| {
                merge(
                    acc,
                    eval(mask).map(|score| Best {
                        score,
                        count: 1,
                        mask,
                    }),
                )
            });
            (best, shapes.len() as u64)
        }
    };

    let branch = p.branch();
    let predicted = predicted_extremal(p, branch)?;
    let predicted_z1 = predicted.z1_index();
    let boundary_agreement = match p.lower_branch() {
        Some(lower) if p.on_boundary() => {
            Some(predicted_extremal(p, lower)?.z1_index() == predicted_z1)
        }
        _ => None,
    };
    let feasible = match side {
        Side::Left => predicted.left_degrees().iter().filter(|&&d| d >= k).count() >= ell,
        Side::Right => {
            predicted
                .right_degrees()
                .iter()
                .filter(|&&d| d >= ell)
                .count()
                >= k
        }
    };

    let witness_graph = best.map(|b| layout.graph(b.mask));
    let params = BTreeMap::from([
        ("r", r as u64),
        ("s", s as u64),
        ("m", m as u64),
        ("l", ell as u64),
        ("k", k as u64),
    ]);
    Ok(OracleReport {
        family: match side {
            Side::Left => Family::BipartiteLeft,
            Side::Right => Family::BipartiteRight,
        },
        params,
        mode,
        optimum_z1: best.map(|b| b.score),
        optimum_cherries: best.map(|b| cherries_from_z1(b.score, m as u64)),
        optimal_count: best.map_or(0, |b| b.count),
        witness_set: witness_graph.as_ref().map(|g| side.witness_set(g, ell, k)),
        witness: witness_graph.map(|g| AnyGraphJson::Bipartite(g.to_json())),
        predicted_z1: Some(predicted_z1),
        branch: Some(branch.label().to_string()),
        boundary_agreement,
        prediction_feasible: Some(feasible),
        matches: best.map(|b| b.score == predicted_z1),
        candidates: Vec::new(),
        enumerated,
    })
}

/// Unconstrained bipartite check: for every `r >= s` with `r·s <= max_rs`
/// and every `m`, the brute-force maximum equals Z₁ of B(r, s, m).
pub fn verify_ak_bipartite(max_rs: usize, cap: u32) -> Result<Vec<TheoremRow>, OracleError> {
    check_cap(max_rs as u64, cap)?;
    let mut rows = Vec::new();
    for s in 1..=max_rs {
        for r in s..=max_rs / s {
            let layout = Layout::new(r, s);
            let best = best_by_size((r * s) as u32, |mask| Some(layout.z1(mask)));
            for (m, b) in best.iter().enumerate() {
                let optimum = b.expect("every size has subsets").score;
                let predicted = ak_bipartite(r, s, m as u64)?.z1_index();
                rows.push(TheoremRow {
                    theorem: "1.6",
                    n: None,
                    r: Some(r),
                    s: Some(s),
                    l: None,
                    k: None,
                    m,
                    optimum_z1: Some(optimum),
                    predicted_z1: predicted,
                    branch: Branch::Ak.label().to_string(),
                    matches: optimum == predicted,
                });
            }
        }
    }
    Ok(rows)
}
