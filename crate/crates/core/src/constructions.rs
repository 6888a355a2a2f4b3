//! Generators for the named extremal constructions.
//!
//! Definitions are stated on 1-based vertex sets; everything here emits
//! 0-based graphs, so "vertex `i`" in a comment means index `i - 1`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{binom2, BipartiteGraph, ConstraintWitness, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("edge count {m} outside 0..={max}")]
    EdgeCountOutOfRange { m: u64, max: u64 },
    #[error("need r >= s, got r = {r}, s = {s}")]
    PartsOutOfOrder { r: usize, s: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("branch condition violated: {0}")]
    BranchViolation(String),
    #[error("index collision: {0}")]
    IndexCollision(String),
    #[error("witness degree a = {a} is below the floor k = {k}")]
    ConstraintUnmet { a: u64, k: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `m = C(a,2) + b` with `0 <= b <= a - 1` (and `a >= 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangularDecomposition {
    pub m: u64,
    pub a: u64,
    pub b: u64,
}

impl TriangularDecomposition {
    /// Largest `a` with `C(a,2) <= m`, by integer search.
    pub fn of(m: u64) -> Self {
        let mut a = 1u64;
        while binom2(a + 1) <= m {
            a += 1;
        }
        Self {
            m,
            a,
            b: m - binom2(a),
        }
    }
}

/// `m = p·r + q` with `0 <= q <= r - 1`. With `r = 0` only `m = 0` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearDecomposition {
    pub m: u64,
    pub r: u64,
    pub p: u64,
    pub q: u64,
}

impl LinearDecomposition {
    pub fn of(m: u64, r: u64) -> Option<Self> {
        match r {
            0 if m == 0 => Some(Self { m, r, p: 0, q: 0 }),
            0 => None,
            _ => Some(Self {
                m,
                r,
                p: m / r,
                q: m % r,
            }),
        }
    }
}

/// Which bound applies to a constrained bipartite instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// `m <= rk` and `k + ℓ <= r`
    B1,
    /// `m <= rk` and `k + ℓ > r`
    B2,
    /// `m >= rk`
    Ak,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::B1 => "B1",
            Branch::B2 => "B2",
            Branch::Ak => "B",
        }
    }
}

/// Parameters `(r, s, m, ℓ, k)` of the constrained bipartite family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BipartiteFamilyParams {
    pub r: usize,
    pub s: usize,
    pub m: usize,
    pub ell: usize,
    pub k: usize,
}

impl BipartiteFamilyParams {
    /// Checks `r >= s`, `ℓ >= k`, `r >= ℓ`, `s >= k` and `kℓ <= m <= rs`.
    pub fn new(
        r: usize,
        s: usize,
        m: usize,
        ell: usize,
        k: usize,
    ) -> Result<Self, ConstructionError> {
        let fail = |what: &str| {
            Err(ConstructionError::InvalidParams(format!(
                "{what} (r={r}, s={s}, m={m}, ell={ell}, k={k})"
            )))
        };
        if r < s {
            return fail("r < s");
        }
        if ell < k {
            return fail("ell < k");
        }
        if r < ell {
            return fail("r < ell");
        }
        if s < k {
            return fail("s < k");
        }
        if k * ell > m {
            return fail("k*ell > m");
        }
        if m > r * s {
            return fail("m > r*s");
        }
        Ok(Self { r, s, m, ell, k })
    }

    /// Every valid tuple with `1 <= s <= r` and `r·s <= max_rs`.
    pub fn enumerate(max_rs: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for r in 1..=max_rs {
            for s in 1..=r {
                if r * s > max_rs {
                    break;
                }
                for ell in 0..=r {
                    for k in 0..=ell.min(s) {
                        for m in k * ell..=r * s {
                            out.push(Self { r, s, m, ell, k });
                        }
                    }
                }
            }
        }
        out
    }

    /// The applicable case of the bound. At `m = rk` the `Ak` case is
    /// reported; see [`Self::on_boundary`].
    pub fn branch(&self) -> Branch {
        if self.m >= self.r * self.k {
            Branch::Ak
        } else if self.k + self.ell <= self.r {
            Branch::B1
        } else {
            Branch::B2
        }
    }

    /// The lower case (`B1` or `B2`) when `m <= rk`.
    pub fn lower_branch(&self) -> Option<Branch> {
        (self.m <= self.r * self.k).then(|| {
            if self.k + self.ell <= self.r {
                Branch::B1
            } else {
                Branch::B2
            }
        })
    }

    /// `m = rk`, where both case statements apply.
    pub fn on_boundary(&self) -> bool {
        self.m == self.r * self.k
    }
}

/// A construction together with the independent set it was built around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnessed<G> {
    pub graph: G,
    pub witness: ConstraintWitness,
}

fn check_m(m: u64, max: u64) -> Result<(), ConstructionError> {
    if m > max {
        return Err(ConstructionError::EdgeCountOutOfRange { m, max });
    }
    Ok(())
}

/// C(n, m): clique on the first `a` vertices plus `b` edges from vertex
/// `a + 1` to `[b]`, where `m = C(a,2) + b`.
pub fn quasi_clique(n: usize, m: u64) -> Result<Graph, ConstructionError> {
    check_m(m, binom2(n as u64))?;
    let TriangularDecomposition { a, b, .. } = TriangularDecomposition::of(m);
    let (a, b) = (a as usize, b as usize);
    let clique = (0..a).flat_map(|u| (u + 1..a).map(move |v| (u, v)));
    let tail = (0..b).map(|i| (i, a));
    Ok(Graph::new(n, clique.chain(tail))?)
}

/// S(n, m): the complement of C(n, C(n,2) − m).
pub fn quasi_star(n: usize, m: u64) -> Result<Graph, ConstructionError> {
    let total = binom2(n as u64);
    check_m(m, total)?;
    Ok(quasi_clique(n, total - m)?.complement())
}

/// B(r, s, m): `p` full columns plus `q` edges into column `p + 1`,
/// where `m = p·r + q`.
pub fn ak_bipartite(r: usize, s: usize, m: u64) -> Result<BipartiteGraph, ConstructionError> {
    if r < s {
        return Err(ConstructionError::PartsOutOfOrder { r, s });
    }
    check_m(m, (r * s) as u64)?;
    let d = LinearDecomposition::of(m, r as u64).expect("r = 0 forces m = 0");
    let (p, q) = (d.p as usize, d.q as usize);
    let full = (0..r).flat_map(|i| (0..p).map(move |j| (i, j)));
    let partial = (0..q).map(|i| (i, p));
    Ok(BipartiteGraph::new(r, s, full.chain(partial))?)
}

fn left_block_witness(ell: usize, k: usize) -> ConstraintWitness {
    ConstraintWitness::new((0..ell).collect(), ell, k)
}

/// B₁(r, s, m, ℓ, k) for `m <= rk` and `k + ℓ <= r`.
///
/// With `m = kℓ + p(r − ℓ) + q`, `0 <= q <= r − ℓ − 1`, the edges are
/// `[r]×[p]`, then `[ℓ+q]×{p+1}`, then `[ℓ]×[p+2, k]`. When `m = rk` the
/// decomposition gives `p = k`, and the graph is `[r]×[k]`.
pub fn b1_family(
    params: &BipartiteFamilyParams,
) -> Result<Witnessed<BipartiteGraph>, ConstructionError> {
    let BipartiteFamilyParams { r, s, m, ell, k } = *params;
    if m > r * k || k + ell > r {
        return Err(ConstructionError::BranchViolation(format!(
            "B1 needs m <= rk and k + ell <= r (r={r}, m={m}, ell={ell}, k={k})"
        )));
    }
    let d = LinearDecomposition::of((m - k * ell) as u64, (r - ell) as u64)
        .expect("r = ell forces k = 0 and m = 0");
    let (p, q) = (d.p as usize, d.q as usize);
    let mut edges: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (0..p.min(k)).map(move |j| (i, j)))
        .collect();
    if p < k {
        edges.extend((0..ell + q).map(|i| (i, p)));
        edges.extend((0..ell).flat_map(|i| (p + 1..k).map(move |j| (i, j))));
    } else {
        debug_assert_eq!((p, q), (k, 0));
    }
    let graph = BipartiteGraph::new(r, s, edges)?;
    debug_assert_eq!(graph.edge_count(), m);
    Ok(Witnessed {
        graph,
        witness: left_block_witness(ell, k),
    })
}

/// B₂(r, s, m, ℓ, k) for `m <= rk` and `k + ℓ > r`: the block
/// `[ℓ+p]×[k]` plus `q` edges from row `ℓ+p+1`, where `m = kℓ + pk + q`.
pub fn b2_family(
    params: &BipartiteFamilyParams,
) -> Result<Witnessed<BipartiteGraph>, ConstructionError> {
    let BipartiteFamilyParams { r, s, m, ell, k } = *params;
    if m > r * k || k + ell <= r {
        return Err(ConstructionError::BranchViolation(format!(
            "B2 needs m <= rk and k + ell > r (r={r}, m={m}, ell={ell}, k={k})"
        )));
    }
    let d = LinearDecomposition::of((m - k * ell) as u64, k as u64).expect("k >= 1 here");
    let (p, q) = (d.p as usize, d.q as usize);
    let block = (0..ell + p).flat_map(|i| (0..k).map(move |j| (i, j)));
    let tail = (0..q).map(|j| (ell + p, j));
    let graph = BipartiteGraph::new(r, s, block.chain(tail))?;
    debug_assert_eq!(graph.edge_count(), m);
    Ok(Witnessed {
        graph,
        witness: left_block_witness(ell, k),
    })
}

/// The graph the bound predicts for `params`, in the case `branch`.
pub fn predicted_extremal(
    params: &BipartiteFamilyParams,
    branch: Branch,
) -> Result<BipartiteGraph, ConstructionError> {
    Ok(match branch {
        Branch::B1 => b1_family(params)?.graph,
        Branch::B2 => b2_family(params)?.graph,
        Branch::Ak => ak_bipartite(params.r, params.s, params.m as u64)?,
    })
}

/// Right-hand side of the block decomposition of Z₁ for B₁/B₂:
/// `ℓk² + 2mℓ − kℓ² + Z₁(B(r−ℓ, k, m−kℓ))` in the B₁ case and the same
/// with `B(k, r−ℓ, m−kℓ)` in the B₂ case. Computed independently of
/// [`b1_family`] / [`b2_family`].
pub fn block_decomposition_z1(params: &BipartiteFamilyParams) -> Result<u64, ConstructionError> {
    let BipartiteFamilyParams { r, m, ell, k, .. } = *params;
    let rest = (m - k * ell) as u64;
    let inner = match params.lower_branch() {
        Some(Branch::B1) => ak_bipartite(r - ell, k, rest)?,
        Some(Branch::B2) => ak_bipartite(k, r - ell, rest)?,
        _ => {
            return Err(ConstructionError::BranchViolation(format!(
                "decomposition needs m <= rk (r={r}, m={m}, k={k})"
            )))
        }
    };
    let (ell, k, m) = (ell as u64, k as u64, m as u64);
    Ok(ell * k * k + 2 * m * ell - k * ell * ell + inner.z1_index())
}

/// Vertex degrees of a construction as a function of the (0-based) vertex
/// index, constant between consecutive breakpoints. Lets densities be
/// evaluated without materializing the edge set.
pub trait DegreeLayout {
    fn vertex_count(&self) -> usize;

    fn degree(&self, v: usize) -> usize;

    /// Sorted, deduplicated indices in `0..=n` where the degree may change;
    /// starts at 0 and ends at `n`.
    fn breakpoints(&self) -> Vec<usize>;

    /// `(degree, multiplicity)` for every constant run.
    fn degree_runs(&self) -> Vec<(usize, usize)> {
        let cuts = self.breakpoints();
        cuts.windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| (self.degree(w[0]), w[1] - w[0]))
            .collect()
    }
}

fn cuts(n: usize, points: &[usize]) -> Vec<usize> {
    let mut c: Vec<usize> = points.iter().map(|&p| p.min(n)).chain([0, n]).collect();
    c.sort_unstable();
    c.dedup();
    c
}

/// Index layout of C(n, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuasiCliqueLayout {
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

impl QuasiCliqueLayout {
    pub fn new(n: usize, m: u64) -> Result<Self, ConstructionError> {
        check_m(m, binom2(n as u64))?;
        let TriangularDecomposition { a, b, .. } = TriangularDecomposition::of(m);
        Ok(Self {
            n,
            a: a as usize,
            b: b as usize,
        })
    }
}

impl DegreeLayout for QuasiCliqueLayout {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn degree(&self, v: usize) -> usize {
        let Self { a, b, .. } = *self;
        match v {
            v if v < a => a - 1 + usize::from(v < b),
            v if v == a => b,
            _ => 0,
        }
    }

    fn breakpoints(&self) -> Vec<usize> {
        cuts(self.n, &[self.b, self.a, self.a + 1])
    }
}

/// Index layout of S(n, m): degrees are `n − 1` minus those of the
/// complementary quasi-clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuasiStarLayout {
    pub complement: QuasiCliqueLayout,
}

impl QuasiStarLayout {
    pub fn new(n: usize, m: u64) -> Result<Self, ConstructionError> {
        let total = binom2(n as u64);
        check_m(m, total)?;
        Ok(Self {
            complement: QuasiCliqueLayout::new(n, total - m)?,
        })
    }
}

impl DegreeLayout for QuasiStarLayout {
    fn vertex_count(&self) -> usize {
        self.complement.n
    }

    fn degree(&self, v: usize) -> usize {
        self.complement.n - 1 - self.complement.degree(v)
    }

    fn breakpoints(&self) -> Vec<usize> {
        self.complement.breakpoints()
    }
}

/// Validated index layout of G₁(n, m, ℓ, k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct G1Layout {
    pub n: usize,
    pub ell: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
}

impl G1Layout {
    /// Decomposes `m = kℓ + C(a,2) + b` and checks that the clique part
    /// (including vertex `a + 1` when `b > 0`) and the side `[k]` both fit
    /// before the independent block `[n−ℓ+1, n]`.
    pub fn new(n: usize, m: u64, ell: usize, k: usize) -> Result<Self, ConstructionError> {
        check_m(m, binom2(n as u64))?;
        let block = (k as u64) * (ell as u64);
        if block > m {
            return Err(ConstructionError::InvalidParams(format!(
                "k*ell = {block} exceeds m = {m}"
            )));
        }
        if ell > n {
            return Err(ConstructionError::InvalidParams(format!(
                "ell = {ell} exceeds n = {n}"
            )));
        }
        let TriangularDecomposition { a, b, .. } = TriangularDecomposition::of(m - block);
        let (a, b) = (a as usize, b as usize);
        let free = n - ell;
        let needed = if b > 0 { a + 1 } else { a };
        if needed > free {
            return Err(ConstructionError::IndexCollision(format!(
                "clique part needs {needed} vertices but only {free} precede the independent block"
            )));
        }
        if k > free {
            return Err(ConstructionError::IndexCollision(format!(
                "bipartite side [k] = [{k}] overlaps the independent block [{}, {n}]",
                free + 1
            )));
        }
        Ok(Self { n, ell, k, a, b })
    }

    pub fn build(&self) -> Witnessed<Graph> {
        let Self { n, ell, k, a, b } = *self;
        let free = n - ell;
        let clique = (0..a).flat_map(|u| (u + 1..a).map(move |v| (u, v)));
        let bip = (0..k).flat_map(|u| (free..n).map(move |v| (u, v)));
        let tail = (0..b).map(|i| (i, a));
        let graph = Graph::new(n, clique.chain(bip).chain(tail)).expect("layout was validated");
        Witnessed {
            graph,
            witness: ConstraintWitness::new((free..n).collect(), ell, k),
        }
    }
}

impl DegreeLayout for G1Layout {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn degree(&self, v: usize) -> usize {
        let Self { n, ell, k, a, b } = *self;
        if v >= n - ell {
            return k;
        }
        let clique = if v < a {
            a - 1 + usize::from(v < b)
        } else if v == a {
            b
        } else {
            0
        };
        clique + if v < k { ell } else { 0 }
    }

    fn breakpoints(&self) -> Vec<usize> {
        let Self { n, ell, k, a, b } = *self;
        cuts(n, &[b, a, a + 1, k, n - ell])
    }
}

/// G₁(n, m, ℓ, k): clique on `[a]`, complete bipartite `[k] × [n−ℓ+1, n]`,
/// and vertex `a + 1` joined to `[b]`, where `m = kℓ + C(a,2) + b`.
/// The last `ℓ` vertices are the witness.
pub fn g1_family(
    n: usize,
    m: u64,
    ell: usize,
    k: usize,
) -> Result<Witnessed<Graph>, ConstructionError> {
    Ok(G1Layout::new(n, m, ell, k)?.build())
}

/// `m = aℓ + C(a,2) + b` with `0 <= b <= a + ℓ − 1`, `a` maximal. With
/// `ℓ >= 1` this can give `a = 0`.
pub fn g2_decomposition(m: u64, ell: u64) -> (u64, u64) {
    let used = |a: u64| a * ell + binom2(a);
    let mut a = 0u64;
    while used(a + 1) <= m {
        a += 1;
    }
    (a, m - used(a))
}

/// Validated index layout of G₂(n, m, ℓ, k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct G2Layout {
    pub n: usize,
    pub ell: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
}

impl G2Layout {
    pub fn new(n: usize, m: u64, ell: usize, k: usize) -> Result<Self, ConstructionError> {
        check_m(m, binom2(n as u64))?;
        let (a, b) = g2_decomposition(m, ell as u64);
        if a < k as u64 {
            return Err(ConstructionError::ConstraintUnmet { a, k: k as u64 });
        }
        let (a, b) = (a as usize, b as usize);
        let needed = if b > 0 { a + ell + 1 } else { a + ell };
        if needed > n {
            return Err(ConstructionError::IndexCollision(format!(
                "construction needs {needed} vertices, only {n} available"
            )));
        }
        Ok(Self { n, ell, k, a, b })
    }

    pub fn build(&self) -> Witnessed<Graph> {
        let Self { n, ell, k, a, b } = *self;
        let clique = (0..a).flat_map(|u| (u + 1..a).map(move |v| (u, v)));
        let bip = (0..a).flat_map(|u| (a..a + ell).map(move |v| (u, v)));
        let tail = (0..b).map(|i| (i, a + ell));
        let graph = Graph::new(n, clique.chain(bip).chain(tail)).expect("layout was validated");
        Witnessed {
            graph,
            witness: ConstraintWitness::new((a..a + ell).collect(), ell, k),
        }
    }
}

impl DegreeLayout for G2Layout {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn degree(&self, v: usize) -> usize {
        let Self { ell, a, b, .. } = *self;
        let tail = usize::from(v < b);
        match v {
            v if v < a => a - 1 + ell + tail,
            v if v < a + ell => a + tail,
            v if v == a + ell => b,
            _ => 0,
        }
    }

    fn breakpoints(&self) -> Vec<usize> {
        let Self { n, ell, a, b, .. } = *self;
        cuts(n, &[b, a, a + ell, a + ell + 1])
    }
}

/// G₂(n, m, ℓ, k): clique on `[a]`, complete bipartite `[a] × [a+1, a+ℓ]`,
/// and vertex `a + ℓ + 1` joined to `[b]`, where `m = aℓ + C(a,2) + b`.
///
/// The witness is `[a+1, a+ℓ]` with degree at least `a`, so `a >= k` is
/// required. When `b > a` the extra vertex touches part of the witness; the
/// witness stays independent because that vertex lies outside it.
pub fn g2_family(
    n: usize,
    m: u64,
    ell: usize,
    k: usize,
) -> Result<Witnessed<Graph>, ConstructionError> {
    Ok(G2Layout::new(n, m, ell, k)?.build())
}
