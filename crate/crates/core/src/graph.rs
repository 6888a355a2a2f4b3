//! Graph value types and the exact counters everything else is built on.
//!
//! Vertices are `0..n`. Both graph types are immutable once built; every
//! transformation elsewhere in the crate returns a fresh value.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of candidate sets examined by
/// [`Graph::find_constraint_witness`].
pub const DEFAULT_WITNESS_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {{{0}, {1}}} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("endpoint {vertex} outside vertex range 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{n} vertices is too many for exact 64-bit counting")]
    TooLarge { n: usize },
    #[error("density undefined on {n} vertices (need at least {needed})")]
    UndefinedDensity { n: usize, needed: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("witness search exceeded the cap of {cap} candidate sets")]
    SearchCapExceeded { cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("witness has {found} vertices, needs at least {needed}")]
    TooSmall { found: usize, needed: usize },
    #[error("witness vertex {0} is outside the graph")]
    OutOfRange(usize),
    #[error("witness vertex {0} listed twice")]
    Repeated(usize),
    #[error("witness vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("witness vertex {vertex} has degree {degree} < {floor}")]
    DegreeTooLow {
        vertex: usize,
        degree: usize,
        floor: usize,
    },
}

pub(crate) fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn binom3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

fn check_size(n: usize) -> Result<(), GraphError> {
    let pairs = binom2(n as u64);
    if pairs.checked_mul(pairs).is_none() {
        return Err(GraphError::TooLarge { n });
    }
    Ok(())
}

/// Edge density and cherry density as exact fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Densities {
    pub edge: Ratio<u64>,
    pub cherry: Ratio<u64>,
}

/// A simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    degrees: Vec<usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_size(n)?;
        let mut set = BTreeSet::new();
        let mut degrees = vec![0; n];
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            degrees[u] += 1;
            degrees[v] += 1;
        }
        Ok(Self {
            n,
            edges: set,
            degrees,
        })
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `|G|`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| w != v && self.has_edge(v, w))
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::new(self.n, edges).expect("complement of a valid graph is valid")
    }

    /// Relabels vertices so that new vertex `i` is old vertex `order[i]`.
    pub fn relabel(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.n, "relabeling must be a permutation");
        let mut new_of = vec![usize::MAX; self.n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        Graph::new(self.n, self.edges().map(|(u, v)| (new_of[u], new_of[v])))
            .expect("relabeling preserves validity")
    }

    /// Removes `remove` and adds `add`. Both must be valid for the move.
    pub(crate) fn swapped(&self, remove: (usize, usize), add: (usize, usize)) -> Graph {
        let mut g = self.clone();
        let r = (remove.0.min(remove.1), remove.0.max(remove.1));
        let a = (add.0.min(add.1), add.0.max(add.1));
        assert!(g.edges.remove(&r), "removed edge must be present");
        assert!(g.edges.insert(a), "added edge must be absent");
        g.degrees[r.0] -= 1;
        g.degrees[r.1] -= 1;
        g.degrees[a.0] += 1;
        g.degrees[a.1] += 1;
        g
    }

    /// N(S₂, G) = Σ_v C(d(v), 2).
    pub fn count_cherries(&self) -> u64 {
        self.degrees.iter().map(|&d| binom2(d as u64)).sum()
    }

    /// First Zagreb index Σ_v d(v)².
    pub fn z1_index(&self) -> u64 {
        self.degrees.iter().map(|&d| (d as u64) * (d as u64)).sum()
    }

    /// |G| / C(n,2); needs `n >= 2`.
    pub fn edge_density(&self) -> Result<Ratio<u64>, GraphError> {
        if self.n < 2 {
            return Err(GraphError::UndefinedDensity {
                n: self.n,
                needed: 2,
            });
        }
        Ok(Ratio::new(self.edge_count() as u64, binom2(self.n as u64)))
    }

    /// N(S₂, G) / (3·C(n,3)); needs `n >= 3`.
    pub fn cherry_density(&self) -> Result<Ratio<u64>, GraphError> {
        if self.n < 3 {
            return Err(GraphError::UndefinedDensity {
                n: self.n,
                needed: 3,
            });
        }
        Ok(Ratio::new(self.count_cherries(), 3 * binom3(self.n as u64)))
    }

    pub fn densities(&self) -> Result<Densities, GraphError> {
        Ok(Densities {
            edge: self.edge_density()?,
            cherry: self.cherry_density()?,
        })
    }

    /// δ_G(S) = min over `set` of the degree.
    pub fn min_degree_over_set(&self, set: &[usize]) -> Result<usize, GraphError> {
        set.iter()
            .map(|&v| {
                if v >= self.n {
                    Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        n: self.n,
                    })
                } else {
                    Ok(self.degrees[v])
                }
            })
            .try_fold(None, |acc: Option<usize>, d| {
                let d = d?;
                Ok(Some(acc.map_or(d, |a| a.min(d))))
            })?
            .ok_or(GraphError::EmptySet)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Looks for an independent set of size `ell` whose vertices all have
    /// degree at least `k`, using the default candidate cap.
    pub fn find_constraint_witness(
        &self,
        ell: usize,
        k: usize,
    ) -> Result<Option<ConstraintWitness>, GraphError> {
        self.find_constraint_witness_capped(ell, k, DEFAULT_WITNESS_CAP)
    }

    /// Enumerates `ell`-subsets of the degree-`>= k` vertices in
    /// colexicographic order and returns the first independent one.
    /// Exceeding `cap` examined subsets is an error, never a silent `None`.
    pub fn find_constraint_witness_capped(
        &self,
        ell: usize,
        k: usize,
        cap: u64,
    ) -> Result<Option<ConstraintWitness>, GraphError> {
        let candidates: Vec<usize> = (0..self.n).filter(|&v| self.degrees[v] >= k).collect();
        let mut examined = 0u64;
        for combo in Combinations::new(candidates.len(), ell) {
            examined += 1;
            if examined > cap {
                return Err(GraphError::SearchCapExceeded { cap });
            }
            let set: Vec<usize> = combo.iter().map(|&i| candidates[i]).collect();
            if self.is_independent(&set) {
                return Ok(Some(ConstraintWitness {
                    vertices: set,
                    size: ell,
                    floor: k,
                }));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

/// `k`-subsets of `0..n` as index vectors, in colexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // smallest position that can move up without colliding
        let pos = (0..k).find(|&i| {
            let limit = if i + 1 < k { next[i + 1] } else { self.n };
            next[i] + 1 < limit
        });
        if let Some(i) = pos {
            next[i] += 1;
            for (j, slot) in next.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// An explicit independent set certifying membership in the constrained
/// family: `vertices` is independent, has at least `size` elements, and each
/// has degree at least `floor`.
///
/// For bipartite hosts the vertices index one side (left rows or right
/// columns), which is independent by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintWitness {
    pub vertices: Vec<usize>,
    pub size: usize,
    pub floor: usize,
}

impl ConstraintWitness {
    pub fn new(vertices: Vec<usize>, size: usize, floor: usize) -> Self {
        Self {
            vertices,
            size,
            floor,
        }
    }

    fn check_shape(&self, n: usize) -> Result<(), WitnessError> {
        if self.vertices.len() < self.size {
            return Err(WitnessError::TooSmall {
                found: self.vertices.len(),
                needed: self.size,
            });
        }
        let mut seen = BTreeSet::new();
        for &v in &self.vertices {
            if v >= n {
                return Err(WitnessError::OutOfRange(v));
            }
            if !seen.insert(v) {
                return Err(WitnessError::Repeated(v));
            }
        }
        Ok(())
    }

    fn check_degrees(&self, degree: impl Fn(usize) -> usize) -> Result<(), WitnessError> {
        for &v in &self.vertices {
            let d = degree(v);
            if d < self.floor {
                return Err(WitnessError::DegreeTooLow {
                    vertex: v,
                    degree: d,
                    floor: self.floor,
                });
            }
        }
        Ok(())
    }

    pub fn verify(&self, g: &Graph) -> Result<(), WitnessError> {
        self.check_shape(g.n())?;
        for (i, &u) in self.vertices.iter().enumerate() {
            if let Some(&v) = self.vertices[i + 1..].iter().find(|&&v| g.has_edge(u, v)) {
                return Err(WitnessError::NotIndependent(u, v));
            }
        }
        self.check_degrees(|v| g.degree(v))
    }

    /// Witness on the left part `U`.
    pub fn verify_left(&self, b: &BipartiteGraph) -> Result<(), WitnessError> {
        self.check_shape(b.r())?;
        self.check_degrees(|i| b.left_degree(i))
    }

    /// Witness on the right part `W`.
    pub fn verify_right(&self, b: &BipartiteGraph) -> Result<(), WitnessError> {
        self.check_shape(b.s())?;
        self.check_degrees(|j| b.right_degree(j))
    }
}

/// An `r × s` bipartite graph; edges are `(left, right)` index pairs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    r: usize,
    s: usize,
    edges: BTreeSet<(usize, usize)>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("r", &self.r)
            .field("s", &self.s)
            .field("edges", &self.edges)
            .finish()
    }
}

impl BipartiteGraph {
    pub fn new<I>(r: usize, s: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_size(r + s)?;
        let mut set = BTreeSet::new();
        let mut left = vec![0; r];
        let mut right = vec![0; s];
        for (i, j) in edges {
            if i >= r {
                return Err(GraphError::VertexOutOfRange { vertex: i, n: r });
            }
            if j >= s {
                return Err(GraphError::VertexOutOfRange { vertex: j, n: s });
            }
            if !set.insert((i, j)) {
                return Err(GraphError::DuplicateEdge(i, j));
            }
            left[i] += 1;
            right[j] += 1;
        }
        Ok(Self {
            r,
            s,
            edges: set,
            left,
            right,
        })
    }

    pub fn complete(r: usize, s: usize) -> Result<Self, GraphError> {
        Self::new(r, s, (0..r).flat_map(|i| (0..s).map(move |j| (i, j))))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn left_degree(&self, i: usize) -> usize {
        self.left[i]
    }

    pub fn right_degree(&self, j: usize) -> usize {
        self.right[j]
    }

    pub fn left_degrees(&self) -> &[usize] {
        &self.left
    }

    pub fn right_degrees(&self) -> &[usize] {
        &self.right
    }

    /// Δ_left; zero when the left part is empty.
    pub fn max_left_degree(&self) -> usize {
        self.left.iter().copied().max().unwrap_or(0)
    }

    /// Δ_right; zero when the right part is empty.
    pub fn max_right_degree(&self) -> usize {
        self.right.iter().copied().max().unwrap_or(0)
    }

    pub fn z1_index(&self) -> u64 {
        self.left
            .iter()
            .chain(&self.right)
            .map(|&d| (d as u64) * (d as u64))
            .sum()
    }

    pub fn count_cherries(&self) -> u64 {
        self.left
            .iter()
            .chain(&self.right)
            .map(|&d| binom2(d as u64))
            .sum()
    }

    /// All degrees, left part then right part, sorted descending.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.left.iter().chain(&self.right).copied().collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }

    /// The same graph with the parts exchanged.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph::new(self.s, self.r, self.edges().map(|(i, j)| (j, i)))
            .expect("transpose of a valid graph is valid")
    }

    /// Relabels rows and columns: new row `i` is old row `rows[i]`, likewise
    /// for columns.
    pub fn relabel(&self, rows: &[usize], cols: &[usize]) -> BipartiteGraph {
        assert_eq!(rows.len(), self.r);
        assert_eq!(cols.len(), self.s);
        let mut row_of = vec![0; self.r];
        let mut col_of = vec![0; self.s];
        for (new, &old) in rows.iter().enumerate() {
            row_of[old] = new;
        }
        for (new, &old) in cols.iter().enumerate() {
            col_of[old] = new;
        }
        BipartiteGraph::new(
            self.r,
            self.s,
            self.edges().map(|(i, j)| (row_of[i], col_of[j])),
        )
        .expect("relabeling preserves validity")
    }

    pub(crate) fn swapped(&self, remove: (usize, usize), add: (usize, usize)) -> BipartiteGraph {
        let mut b = self.clone();
        assert!(b.edges.remove(&remove), "removed edge must be present");
        assert!(b.edges.insert(add), "added edge must be absent");
        b.left[remove.0] -= 1;
        b.right[remove.1] -= 1;
        b.left[add.0] += 1;
        b.right[add.1] += 1;
        b
    }

    /// The same graph on `r + s` vertices: left `i` is `i`, right `j` is `r + j`.
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.r + self.s, self.edges().map(|(i, j)| (i, self.r + j)))
            .expect("bipartite graph embeds as a simple graph")
    }

    pub fn to_json(&self) -> BipartiteJson {
        BipartiteJson {
            r: self.r,
            s: self.s,
            edges: self.edges().map(|(i, j)| [i, j]).collect(),
        }
    }
}

/// `{"n": int, "edges": [[u, v], ...]}` with `u < v`, lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// `{"r": int, "s": int, "edges": [[i, j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteJson {
    pub r: usize,
    pub s: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl TryFrom<BipartiteJson> for BipartiteGraph {
    type Error = GraphError;

    fn try_from(j: BipartiteJson) -> Result<Self, GraphError> {
        BipartiteGraph::new(j.r, j.s, j.edges.into_iter().map(|[i, j]| (i, j)))
    }
}

/// Either interchange shape; the field names decide which.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyGraphJson {
    General(GraphJson),
    Bipartite(BipartiteJson),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn cherry_counts() {
        assert_eq!(Graph::complete(3).unwrap().count_cherries(), 3);
        assert_eq!(star(4).count_cherries(), 6);
        assert_eq!(Graph::empty(10).unwrap().count_cherries(), 0);
    }

    #[test]
    fn zagreb_values() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.z1_index(), 12);
        assert_eq!(
            k3.z1_index(),
            2 * k3.count_cherries() + 2 * k3.edge_count() as u64
        );
        assert_eq!(path3().z1_index(), 6);
    }

    #[test]
    fn densities_of_small_graphs() {
        for n in 3..8 {
            let d = Graph::complete(n).unwrap().densities().unwrap();
            assert_eq!(d.edge, Ratio::from_integer(1));
            assert_eq!(d.cherry, Ratio::from_integer(1));
        }
        let d = Graph::empty(6).unwrap().densities().unwrap();
        assert_eq!(d.edge, Ratio::from_integer(0));
        assert_eq!(d.cherry, Ratio::from_integer(0));

        let k3_plus = Graph::new(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let d = k3_plus.densities().unwrap();
        assert_eq!(d.edge, Ratio::new(1, 2));
        assert_eq!(d.cherry, Ratio::new(3, 12));
    }

    #[test]
    fn densities_need_enough_vertices() {
        let g = Graph::complete(2).unwrap();
        assert_eq!(g.edge_density().unwrap(), Ratio::from_integer(1));
        assert_eq!(
            g.cherry_density(),
            Err(GraphError::UndefinedDensity { n: 2, needed: 3 })
        );
        assert!(Graph::empty(1).unwrap().edge_density().is_err());
    }

    #[test]
    fn min_degree() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.min_degree_over_set(&[0, 1, 2, 3]).unwrap(), 3);
        assert_eq!(star(4).min_degree_over_set(&[1, 2, 3, 4]).unwrap(), 1);
        assert_eq!(k4.min_degree_over_set(&[]), Err(GraphError::EmptySet));
        assert!(matches!(
            k4.min_degree_over_set(&[7]),
            Err(GraphError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn invalid_graphs_rejected() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::empty(200_000),
            Err(GraphError::TooLarge { .. })
        ));
        assert!(Graph::empty(90_000).is_ok());
    }

    #[test]
    fn witness_search() {
        let k5 = Graph::complete(5).unwrap();
        for k in 1..4 {
            assert_eq!(k5.find_constraint_witness(2, k).unwrap(), None);
        }
        let empty = Graph::empty(6).unwrap();
        let w = empty.find_constraint_witness(3, 0).unwrap().unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2]);
        w.verify(&empty).unwrap();
        // the leaves of a star are the only independent pair with degree 1
        let w = star(2).find_constraint_witness(2, 1).unwrap().unwrap();
        assert_eq!(w.vertices, vec![1, 2]);
    }

    #[test]
    fn witness_search_cap_is_loud() {
        let k8 = Graph::complete(8).unwrap();
        assert_eq!(
            k8.find_constraint_witness_capped(3, 0, 5),
            Err(GraphError::SearchCapExceeded { cap: 5 })
        );
    }

    #[test]
    fn witness_verification_errors() {
        let g = path3();
        let w = ConstraintWitness::new(vec![0, 1], 2, 1);
        assert_eq!(w.verify(&g), Err(WitnessError::NotIndependent(0, 1)));
        let w = ConstraintWitness::new(vec![0, 2], 2, 2);
        assert!(matches!(
            w.verify(&g),
            Err(WitnessError::DegreeTooLow { .. })
        ));
        let w = ConstraintWitness::new(vec![0], 2, 0);
        assert!(matches!(w.verify(&g), Err(WitnessError::TooSmall { .. })));
        ConstraintWitness::new(vec![0, 2], 2, 1).verify(&g).unwrap();
    }

    #[test]
    fn colex_combinations() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(7, 3).count(), 35);
    }

    #[test]
    fn bipartite_basics() {
        // B(3,2,4): column 0 full, plus (0,1)
        let b = BipartiteGraph::new(3, 2, [(0, 0), (1, 0), (2, 0), (0, 1)]).unwrap();
        assert_eq!(b.left_degrees(), &[2, 1, 1]);
        assert_eq!(b.right_degrees(), &[3, 1]);
        assert_eq!(b.z1_index(), 16);
        assert_eq!(b.to_graph().z1_index(), 16);
        assert_eq!(b.to_graph().min_degree_over_set(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(b.max_left_degree(), 2);
        assert_eq!(b.max_right_degree(), 3);
        assert_eq!(b.transpose().transpose(), b);
    }

    #[test]
    fn json_shapes() {
        let g = Graph::new(3, [(2, 1), (0, 1)]).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(text, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let parsed: AnyGraphJson = serde_json::from_str(&text).unwrap();
        assert!(matches!(parsed, AnyGraphJson::General(_)));
        let parsed: AnyGraphJson =
            serde_json::from_str(r#"{"r":2,"s":1,"edges":[[1,0]]}"#).unwrap();
        let AnyGraphJson::Bipartite(b) = parsed else {
            panic!("expected bipartite")
        };
        assert_eq!(BipartiteGraph::try_from(b).unwrap().edge_count(), 1);
    }
}
