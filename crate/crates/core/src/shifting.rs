//! Z₁-nondecreasing edge moves and the shifted normal forms they reach.
//!
//! A move deletes one edge and inserts one non-edge. Every move applied
//! here has a strictly positive Z₁ delta, which is what makes the loops
//! terminate: Z₁ is bounded for a fixed edge count.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{BipartiteGraph, ConstraintWitness, Graph, WitnessError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("invalid witness: {0}")]
    Witness(#[from] WitnessError),
    #[error("input is not shifted: {0}")]
    NotShifted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("postcondition violated: {0}")]
    ContractViolated(String),
}

/// Delete `remove`, insert `add`. For bipartite graphs the pairs are
/// `(row, column)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SwapMove {
    pub remove: (usize, usize),
    pub add: (usize, usize),
}

impl SwapMove {
    pub fn new(remove: (usize, usize), add: (usize, usize)) -> Self {
        Self { remove, add }
    }
}

/// A move as applied, with its Z₁ change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LoggedMove {
    #[serde(flatten)]
    pub mv: SwapMove,
    pub delta: i64,
}

/// Z₁(Ĝ) − Z₁(G) for Ĝ = G − uv + xy:
/// `2(d(x) + d(y) − d(u) − d(v)) + 4` when the two pairs are disjoint,
/// `+ 2` instead of `+ 4` when they share a vertex.
pub fn swap_delta(g: &Graph, mv: &SwapMove) -> Result<i64, ShiftError> {
    let (u, v) = mv.remove;
    let (x, y) = mv.add;
    if [u, v, x, y].iter().any(|&w| w >= g.n()) {
        return Err(ShiftError::InvalidMove(format!(
            "vertex outside 0..{}",
            g.n()
        )));
    }
    if x == y {
        return Err(ShiftError::InvalidMove(format!(
            "added pair {{{x}, {y}}} is a loop"
        )));
    }
    if !g.has_edge(u, v) {
        return Err(ShiftError::InvalidMove(format!(
            "{{{u}, {v}}} is not an edge"
        )));
    }
    if g.has_edge(x, y) {
        return Err(ShiftError::InvalidMove(format!(
            "{{{x}, {y}}} is already an edge"
        )));
    }
    let d = |w: usize| g.degree(w) as i64;
    let shared = [x, y].iter().any(|w| *w == u || *w == v);
    let base = 2 * (d(x) + d(y) - d(u) - d(v));
    Ok(base + if shared { 2 } else { 4 })
}

/// Bipartite version of [`swap_delta`]. Rows and columns are different
/// vertices, so the pairs overlap exactly when they share a row or a column.
pub fn swap_delta_bipartite(b: &BipartiteGraph, mv: &SwapMove) -> Result<i64, ShiftError> {
    let (i, j) = mv.remove;
    let (i2, j2) = mv.add;
    if i >= b.r() || i2 >= b.r() || j >= b.s() || j2 >= b.s() {
        return Err(ShiftError::InvalidMove(format!(
            "pair outside {}×{}",
            b.r(),
            b.s()
        )));
    }
    if !b.has_edge(i, j) {
        return Err(ShiftError::InvalidMove(format!(
            "({i}, {j}) is not an edge"
        )));
    }
    if b.has_edge(i2, j2) {
        return Err(ShiftError::InvalidMove(format!(
            "({i2}, {j2}) is already an edge"
        )));
    }
    let dl = |w: usize| b.left_degree(w) as i64;
    let dr = |w: usize| b.right_degree(w) as i64;
    let base = 2 * (dl(i2) + dr(j2) - dl(i) - dr(j));
    Ok(base + if i == i2 || j == j2 { 2 } else { 4 })
}

/// Indices sorted by descending value, ties by ascending index.
fn descending_order(values: &[usize], indices: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut order: Vec<usize> = indices.into_iter().collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));
    order
}

/// Output of [`left_compress`]. `moves` are in the input's labels; `graph`
/// and `witness` are in the sorted labels, where new row `i` is input row
/// `rows[i]` and new column `j` is input column `cols[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteCompression {
    pub graph: BipartiteGraph,
    pub witness: ConstraintWitness,
    pub moves: Vec<LoggedMove>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Moves every row's edges onto the highest-degree columns.
///
/// Rows are ordered by descending degree once (moves never change row
/// degrees); columns are re-sorted before each scan, so each move
/// `(i, j) → (i, j')` with `j'` ahead of `j` gains `2(d(w_j') − d(w_j)) + 2 >= 2`.
pub fn left_compress(
    b: &BipartiteGraph,
    witness: &ConstraintWitness,
) -> Result<BipartiteCompression, ShiftError> {
    witness.verify_left(b)?;
    let rows = descending_order(b.left_degrees(), 0..b.r());
    let mut g = b.clone();
    let mut moves = Vec::new();
    loop {
        let cols = descending_order(g.right_degrees(), 0..g.s());
        let Some(mv) = first_bipartite_violation(&g, &rows, &cols) else {
            break;
        };
        let delta = swap_delta_bipartite(&g, &mv)?;
        debug_assert!(delta >= 2);
        g = g.swapped(mv.remove, mv.add);
        moves.push(LoggedMove { mv, delta });
    }
    let cols = descending_order(g.right_degrees(), 0..g.s());
    let graph = g.relabel(&rows, &cols);
    let witness = remap_witness(witness, &rows);
    witness.verify_left(&graph)?;
    Ok(BipartiteCompression {
        graph,
        witness,
        moves,
        rows,
        cols,
    })
}

fn first_bipartite_violation(
    g: &BipartiteGraph,
    rows: &[usize],
    cols: &[usize],
) -> Option<SwapMove> {
    for &i in rows {
        let mut gap = None;
        for &j in cols {
            if !g.has_edge(i, j) {
                gap.get_or_insert(j);
            } else if let Some(j2) = gap {
                return Some(SwapMove::new((i, j), (i, j2)));
            }
        }
    }
    None
}

fn remap_witness(witness: &ConstraintWitness, order: &[usize]) -> ConstraintWitness {
    let mut new_of = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let mut vertices: Vec<usize> = witness.vertices.iter().map(|&v| new_of[v]).collect();
    vertices.sort_unstable();
    ConstraintWitness::new(vertices, witness.size, witness.floor)
}

/// Rows sorted by nonincreasing degree and every row adjacent to exactly
/// the first `d(u_i)` columns. Column degrees are then nonincreasing too.
pub fn is_left_compressed(b: &BipartiteGraph) -> bool {
    b.left_degrees().windows(2).all(|w| w[0] >= w[1])
        && (0..b.r()).all(|i| (0..b.s()).all(|j| b.has_edge(i, j) == (j < b.left_degree(i))))
}

/// Which construction [`swap_sides`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum SwapBranch {
    /// Δ_right already at least Δ_left.
    Identity,
    /// `d(u_k) >= ℓ`: the parts trade places.
    Relabel,
    /// `d(u_k) <= ℓ − 1`: degree pairs exchanged below `t` and above `T`.
    /// Both are 1-based, as in the argument.
    DegreeExchange { t: usize, big_t: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapSides {
    pub graph: BipartiteGraph,
    pub witness: ConstraintWitness,
    pub branch: SwapBranch,
}

/// Produces a graph with the same edge count, Z₁ and degree multiset whose
/// right maximum degree is at least its left maximum degree, keeping a
/// left witness of size `ℓ` and floor `k`.
///
/// Needs a left-compressed input with `r >= s` and `1 <= k <= ℓ`. The
/// returned witness is always the first `ℓ` rows.
pub fn swap_sides(
    b: &BipartiteGraph,
    witness: &ConstraintWitness,
) -> Result<SwapSides, ShiftError> {
    let (r, s) = (b.r(), b.s());
    let (ell, k) = (witness.size, witness.floor);
    if !is_left_compressed(b) {
        return Err(ShiftError::NotShifted(
            "rows are not degree-sorted column prefixes".into(),
        ));
    }
    if r < s {
        return Err(ShiftError::Precondition(format!(
            "need r >= s, got {r} < {s}"
        )));
    }
    if k == 0 || k > ell {
        return Err(ShiftError::Precondition(format!(
            "need 1 <= k <= ell, got k = {k}, ell = {ell}"
        )));
    }
    witness.verify_left(b)?;
    // in shifted form the top ℓ rows carry a witness whenever any ℓ rows do
    let top = ConstraintWitness::new((0..ell).collect(), ell, k);
    top.verify_left(b)?;

    if b.max_right_degree() >= b.max_left_degree() {
        return Ok(SwapSides {
            graph: b.clone(),
            witness: top,
            branch: SwapBranch::Identity,
        });
    }
    let du = |i: usize| b.left_degree(i - 1);
    let dw = |j: usize| if j <= s { b.right_degree(j - 1) } else { 0 };

    let (graph, branch) = if du(k) >= ell {
        // columns become rows 0..s, padded with r − s isolated rows; the
        // old rows 1..s become the columns
        if (s..r).any(|i| b.left_degree(i) != 0) {
            return Err(ShiftError::ContractViolated(
                "rows past s are not isolated".into(),
            ));
        }
        let edges = b.edges().map(|(i, j)| (j, i));
        let g = BipartiteGraph::new(r, s, edges)
            .map_err(|e| ShiftError::ContractViolated(e.to_string()))?;
        (g, SwapBranch::Relabel)
    } else {
        let t = (1..=k)
            .find(|&t| dw(t) >= du(t))
            .ok_or_else(|| ShiftError::ContractViolated("no t with d(w_t) >= d(u_t)".into()))?;
        let big_t = dw(t);
        // 1-based (row, column) pairs
        let mut edges: std::collections::BTreeSet<(usize, usize)> =
            b.edges().map(|(i, j)| (i + 1, j + 1)).collect();
        for j in 1..t {
            for i in big_t + 1..=dw(j) {
                edges.remove(&(i, j));
            }
            for i in big_t + 1..=du(j) {
                edges.remove(&(j, i));
            }
        }
        for j in 1..t {
            for i in big_t + 1..=du(j) {
                edges.insert((i, j));
            }
            for i in big_t + 1..=dw(j) {
                edges.insert((j, i));
            }
        }
        let g = BipartiteGraph::new(r, s, edges.into_iter().map(|(i, j)| (i - 1, j - 1)))
            .map_err(|e| ShiftError::ContractViolated(e.to_string()))?;
        (g, SwapBranch::DegreeExchange { t, big_t })
    };

    if graph.edge_count() != b.edge_count()
        || graph.z1_index() != b.z1_index()
        || graph.degree_multiset() != b.degree_multiset()
    {
        return Err(ShiftError::ContractViolated(
            "degree multiset changed".into(),
        ));
    }
    if graph.max_right_degree() < graph.max_left_degree() {
        return Err(ShiftError::ContractViolated(
            "right maximum still below left maximum".into(),
        ));
    }
    top.verify_left(&graph)
        .map_err(|e| ShiftError::ContractViolated(format!("witness lost: {e}")))?;
    Ok(SwapSides {
        graph,
        witness: top,
        branch,
    })
}

/// Output of [`shift_general`]: `graph` is relabeled so that vertex `i`
/// is input vertex `order[i]`, with the witness first. `moves` use input
/// labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralShift {
    pub graph: Graph,
    pub witness: ConstraintWitness,
    pub moves: Vec<LoggedMove>,
    pub order: Vec<usize>,
}

/// Shifts a graph around an independent witness set `I` until
///
/// * each `u ∈ I` is adjacent to a prefix `v_1..v_d` of the remaining
///   vertices, and
/// * edges inside `V` are down-closed: `v_a v_b ∈ G` implies
///   `v_a' v_b ∈ G` for every `a' < a`, `a' ≠ b`.
///
/// `I` is ordered once by descending degree (no move changes those
/// degrees); `V` is re-sorted by current degree before every scan.
pub fn shift_general(g: &Graph, witness: &ConstraintWitness) -> Result<GeneralShift, ShiftError> {
    witness.verify(g)?;
    let in_i: Vec<bool> = (0..g.n()).map(|v| witness.vertices.contains(&v)).collect();
    let i_order = descending_order(g.degrees(), witness.vertices.iter().copied());
    let mut h = g.clone();
    let mut moves = Vec::new();
    loop {
        let v_order = descending_order(h.degrees(), (0..h.n()).filter(|&v| !in_i[v]));
        let Some(mv) = first_general_violation(&h, &i_order, &v_order) else {
            break;
        };
        let delta = swap_delta(&h, &mv)?;
        debug_assert!(delta >= 2);
        h = h.swapped(mv.remove, mv.add);
        moves.push(LoggedMove { mv, delta });
    }
    let v_order = descending_order(h.degrees(), (0..h.n()).filter(|&v| !in_i[v]));
    let order: Vec<usize> = i_order.iter().chain(&v_order).copied().collect();
    let graph = h.relabel(&order);
    let witness = ConstraintWitness::new((0..i_order.len()).collect(), witness.size, witness.floor);
    witness.verify(&graph)?;
    Ok(GeneralShift {
        graph,
        witness,
        moves,
        order,
    })
}

fn first_general_violation(g: &Graph, i_order: &[usize], v_order: &[usize]) -> Option<SwapMove> {
    for &u in i_order {
        let mut gap = None;
        for &v in v_order {
            if !g.has_edge(u, v) {
                gap.get_or_insert(v);
            } else if let Some(v2) = gap {
                return Some(SwapMove::new((u, v), (u, v2)));
            }
        }
    }
    for (a, &va) in v_order.iter().enumerate() {
        for &vb in v_order {
            if va == vb || !g.has_edge(va, vb) {
                continue;
            }
            if let Some(&va2) = v_order[..a]
                .iter()
                .find(|&&w| w != vb && !g.has_edge(w, vb))
            {
                return Some(SwapMove::new((va, vb), (va2, vb)));
            }
        }
    }
    None
}

/// Whether `g`, with the witness as its first `|I|` vertices, satisfies
/// both shifted properties in its current labeling.
pub fn is_general_shifted(g: &Graph, witness_len: usize) -> bool {
    let i_order: Vec<usize> = (0..witness_len).collect();
    let v_order: Vec<usize> = (witness_len..g.n()).collect();
    first_general_violation(g, &i_order, &v_order).is_none()
}

/// Clique prefix of the non-witness vertices of a shifted graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftAnalysis {
    /// Largest 1-based `i` with `v_{i−1} v_i ∈ G`, or 1 if there is none
    /// (0 when `V` is empty).
    pub omega: usize,
    /// `v_1..v_ω`, which induce a clique.
    pub v1: Vec<usize>,
    /// The rest of `V`, which is independent.
    pub v2: Vec<usize>,
}

/// Computes ω for a shifted graph. `V` is the complement of the witness in
/// ascending label order, which is the degree order after [`shift_general`].
pub fn analyze_omega(g: &Graph, witness: &ConstraintWitness) -> Result<ShiftAnalysis, ShiftError> {
    witness.verify(g)?;
    let v: Vec<usize> = (0..g.n())
        .filter(|x| !witness.vertices.contains(x))
        .collect();
    let omega = if v.is_empty() {
        0
    } else {
        (2..=v.len())
            .rev()
            .find(|&i| g.has_edge(v[i - 2], v[i - 1]))
            .unwrap_or(1)
    };
    let (v1, v2) = v.split_at(omega);
    for (a, &x) in v1.iter().enumerate() {
        if let Some(&y) = v1[a + 1..].iter().find(|&&y| !g.has_edge(x, y)) {
            return Err(ShiftError::NotShifted(format!(
                "{{{x}, {y}}} missing from the clique prefix"
            )));
        }
    }
    for (a, &x) in v2.iter().enumerate() {
        if let Some(&y) = v2[a + 1..].iter().find(|&&y| g.has_edge(x, y)) {
            return Err(ShiftError::NotShifted(format!(
                "{{{x}, {y}}} present after the clique prefix"
            )));
        }
    }
    Ok(ShiftAnalysis {
        omega,
        v1: v1.to_vec(),
        v2: v2.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ak_bipartite, g2_family};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_examples() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            swap_delta(&path, &SwapMove::new((0, 1), (0, 2))).unwrap(),
            0
        );

        let k3 = Graph::new(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let mv = SwapMove::new((0, 1), (0, 3));
        assert_eq!(swap_delta(&k3, &mv).unwrap(), -2);
        assert_eq!(k3.z1_index(), 12);
        assert_eq!(k3.swapped(mv.remove, mv.add).z1_index(), 10);

        let two = Graph::new(6, [(0, 1), (2, 3)]).unwrap();
        let mv = SwapMove::new((0, 1), (4, 5));
        let after = two.swapped(mv.remove, mv.add);
        assert_eq!(
            swap_delta(&two, &mv).unwrap(),
            after.z1_index() as i64 - two.z1_index() as i64
        );
    }

    #[test]
    fn delta_rejects_bad_moves() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(swap_delta(&path, &SwapMove::new((0, 2), (0, 1))).is_err());
        assert!(swap_delta(&path, &SwapMove::new((0, 1), (1, 2))).is_err());
        assert!(swap_delta(&path, &SwapMove::new((0, 1), (2, 2))).is_err());
        assert!(swap_delta(&path, &SwapMove::new((0, 1), (0, 7))).is_err());
    }

    #[test]
    fn delta_matches_recount_on_random_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(4..9);
            let g = random_graph(&mut rng, n, 0.4);
            let edges: Vec<_> = g.edges().collect();
            let non: Vec<_> = g.complement().edges().collect();
            if edges.is_empty() || non.is_empty() {
                continue;
            }
            let mv = SwapMove::new(
                edges[rng.gen_range(0..edges.len())],
                non[rng.gen_range(0..non.len())],
            );
            let after = g.swapped(mv.remove, mv.add);
            assert_eq!(
                swap_delta(&g, &mv).unwrap(),
                after.z1_index() as i64 - g.z1_index() as i64
            );
        }
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn compress_fixed_point() {
        let b = ak_bipartite(3, 2, 4).unwrap();
        let w = ConstraintWitness::new(vec![0], 1, 1);
        let c = left_compress(&b, &w).unwrap();
        assert!(c.moves.is_empty());
        assert_eq!(c.graph, b);
    }

    #[test]
    fn compress_two_by_two() {
        let b = BipartiteGraph::new(2, 2, [(0, 1), (1, 0)]).unwrap();
        let w = ConstraintWitness::new(vec![0], 1, 1);
        let c = left_compress(&b, &w).unwrap();
        assert_eq!(c.graph.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 0)]);
        assert_eq!((b.z1_index(), c.graph.z1_index()), (4, 6));
        assert_eq!(c.moves.len(), 1);
        assert_eq!(c.moves[0].delta, 2);
    }

    #[test]
    fn swap_sides_identity_when_right_dominates() {
        let b = ak_bipartite(3, 3, 4).unwrap();
        let w = ConstraintWitness::new(vec![0], 1, 1);
        let s = swap_sides(&b, &w).unwrap();
        assert_eq!(s.branch, SwapBranch::Identity);
        assert_eq!(s.graph, b);
    }

    #[test]
    fn swap_sides_relabel_branch() {
        // rows of degree 3, 3 on a 4×3 grid: Δ_left = 3 > Δ_right = 2
        let b =
            BipartiteGraph::new(4, 3, (0..2).flat_map(|i| (0..3).map(move |j| (i, j)))).unwrap();
        let w = ConstraintWitness::new(vec![0, 1], 2, 1);
        let s = swap_sides(&b, &w).unwrap();
        assert_eq!(s.branch, SwapBranch::Relabel);
        assert_eq!(s.graph.z1_index(), b.z1_index());
        assert_eq!(s.graph.left_degrees(), &[2, 2, 2, 0]);
        assert_eq!(s.graph.right_degrees(), &[3, 3, 0]);
    }

    #[test]
    fn swap_sides_degree_exchange_branch() {
        // rows (4,2,2,0,0), columns (3,3,1,1); ℓ = 3, k = 2 so d(u_k) = 2 < ℓ
        let b = shifted(5, 4, &[4, 2, 2, 0, 0]);
        assert!(b.max_right_degree() < b.max_left_degree());
        let w = ConstraintWitness::new(vec![0, 1, 2], 3, 2);
        let s = swap_sides(&b, &w).unwrap();
        let SwapBranch::DegreeExchange { t, big_t } = s.branch else {
            panic!("expected the degree-exchange branch, got {:?}", s.branch);
        };
        assert_eq!((t, big_t), (2, 3));
        check_exchange_items(&b, &s.graph, t, big_t);
    }

    fn shifted(r: usize, s: usize, rows: &[usize]) -> BipartiteGraph {
        BipartiteGraph::new(
            r,
            s,
            rows.iter()
                .enumerate()
                .flat_map(|(i, &d)| (0..d).map(move |j| (i, j))),
        )
        .unwrap()
    }

    fn check_exchange_items(
        before: &BipartiteGraph,
        after: &BipartiteGraph,
        t: usize,
        big_t: usize,
    ) {
        let pair = |g: &BipartiteGraph, i: usize| {
            let u = if i <= g.r() { g.left_degree(i - 1) } else { 0 };
            let w = if i <= g.s() { g.right_degree(i - 1) } else { 0 };
            (u, w)
        };
        for i in 1..=before.r() {
            let (u, w) = pair(before, i);
            let expect = if i < t || i > big_t { (w, u) } else { (u, w) };
            assert_eq!(pair(after, i), expect, "index {i}, t = {t}, T = {big_t}");
        }
    }

    #[test]
    fn swap_sides_random_degree_exchange() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut exchanged = 0;
        for _ in 0..2000 {
            let (r, s) = (5, 4);
            let mut rows: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=s)).collect();
            rows.sort_unstable_by(|a, b| b.cmp(a));
            let b = shifted(r, s, &rows);
            let ell = rng.gen_range(1..=r);
            let k = rng.gen_range(1..=ell.min(s));
            if rows[ell - 1] < k {
                continue;
            }
            let w = ConstraintWitness::new((0..ell).collect(), ell, k);
            let out = swap_sides(&b, &w).unwrap();
            assert_eq!(out.graph.degree_multiset(), b.degree_multiset());
            if let SwapBranch::DegreeExchange { t, big_t } = out.branch {
                exchanged += 1;
                check_exchange_items(&b, &out.graph, t, big_t);
            }
        }
        assert!(exchanged > 0);
    }

    #[test]
    fn swap_sides_rejects_unshifted() {
        let b = BipartiteGraph::new(2, 2, [(0, 1)]).unwrap();
        let w = ConstraintWitness::new(vec![0], 1, 1);
        assert!(matches!(swap_sides(&b, &w), Err(ShiftError::NotShifted(_))));
    }

    #[test]
    fn general_fixed_point_on_g2() {
        let c = g2_family(6, 5, 2, 2).unwrap();
        let s = shift_general(&c.graph, &c.witness).unwrap();
        assert!(s.moves.is_empty());
        let again = shift_general(&s.graph, &s.witness).unwrap();
        assert!(again.moves.is_empty());
        assert_eq!(again.graph, s.graph);
    }

    #[test]
    fn general_moves_witness_edge_to_top_vertex() {
        // I = {0}; V path 1–2–3 plus isolated 4; 0 adjacent to 3
        let g = Graph::new(5, [(1, 2), (2, 3), (0, 3)]).unwrap();
        let w = ConstraintWitness::new(vec![0], 1, 1);
        let s = shift_general(&g, &w).unwrap();
        assert!(s.graph.z1_index() >= g.z1_index());
        assert_eq!(s.graph.edge_count(), 3);
        assert!(s.graph.has_edge(0, 1));
        assert!(is_general_shifted(&s.graph, 1));
    }

    #[test]
    fn omega_examples() {
        let c = g2_family(6, 5, 2, 2).unwrap();
        let a = analyze_omega(&c.graph, &c.witness).unwrap();
        assert_eq!(
            a,
            ShiftAnalysis {
                omega: 2,
                v1: vec![0, 1],
                v2: vec![4, 5]
            }
        );

        let empty = Graph::empty(4).unwrap();
        let a = analyze_omega(&empty, &ConstraintWitness::new(vec![0], 1, 0)).unwrap();
        assert_eq!((a.omega, a.v1.len()), (1, 1));

        // clique on V = {1,2,3}, vertex 4 isolated
        let g = Graph::new(5, [(1, 2), (1, 3), (2, 3)]).unwrap();
        let a = analyze_omega(&g, &ConstraintWitness::new(vec![0], 1, 0)).unwrap();
        assert_eq!(a.omega, 3);

        let bad = Graph::new(5, [(1, 2), (3, 4)]).unwrap();
        assert!(analyze_omega(&bad, &ConstraintWitness::new(vec![0], 1, 0)).is_err());
    }
}
