use std::collections::BTreeMap;

use rayon::prelude::*;

use super::enumerate::{best_by_size, best_subset, merge, Best};
use super::{
    check_cap, cherries_from_z1, CandidateValue, Family, Mode, OracleError, OracleReport,
    TheoremRow,
};
use crate::constructions::{g1_family, g2_family, quasi_clique, quasi_star};
use crate::graph::{binom2, AnyGraphJson, Graph};

/// Largest `n` the per-graph independent-set sweep supports.
const MAX_PROFILE_N: usize = 8;

/// Slots are the pairs `u < v` in lexicographic order.
pub(crate) struct PairLayout {
    n: usize,
    pairs: Vec<(usize, usize)>,
    incident: Vec<u64>,
    /// Pairs inside each vertex subset, indexed by the subset's bitmask.
    inside: Vec<u64>,
}

impl PairLayout {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n <= 11, "pair layout needs C(n,2) < 64");
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut incident = vec![0u64; n];
        for (b, &(u, v)) in pairs.iter().enumerate() {
            incident[u] |= 1 << b;
            incident[v] |= 1 << b;
        }
        let inside = (0..1u64 << n)
            .map(|set| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(u, v))| set >> u & 1 == 1 && set >> v & 1 == 1)
                    .fold(0, |acc, (b, _)| acc | 1 << b)
            })
            .collect();
        Self {
            n,
            pairs,
            incident,
            inside,
        }
    }

    pub(crate) fn slots(&self) -> u32 {
        self.pairs.len() as u32
    }

    fn degrees(&self, mask: u64) -> [u32; 11] {
        let mut d = [0; 11];
        for (v, &inc) in self.incident.iter().enumerate() {
            d[v] = (mask & inc).count_ones();
        }
        d
    }

    fn z1(&self, mask: u64) -> u64 {
        self.incident
            .iter()
            .map(|&inc| (mask & inc).count_ones() as u64)
            .map(|d| d * d)
            .sum()
    }

    pub(crate) fn graph(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(self.n, edges).expect("mask decodes to a valid graph")
    }

    /// Vertex sets of size `ell`.
    fn sets_of_size(&self, ell: usize) -> Vec<u64> {
        (0..1u64 << self.n)
            .filter(|s| s.count_ones() as usize == ell)
            .collect()
    }

    /// For each size `l`, the largest `k` such that some independent
    /// `l`-set has all degrees `>= k`; `None` if there is no independent
    /// `l`-set. The empty set gets `n − 1`, so it admits every `k < n`.
    fn floors(&self, mask: u64) -> [Option<u32>; MAX_PROFILE_N + 1] {
        assert!(self.n <= MAX_PROFILE_N);
        let d = self.degrees(mask);
        let full = 1usize << self.n;
        let mut independent = [false; 1 << MAX_PROFILE_N];
        let mut min_deg = [u32::MAX; 1 << MAX_PROFILE_N];
        let mut out = [None; MAX_PROFILE_N + 1];
        independent[0] = true;
        out[0] = Some(self.n.saturating_sub(1) as u32);
        for set in 1..full {
            let low = set.trailing_zeros() as usize;
            let rest = set & (set - 1);
            independent[set] =
                independent[rest] && mask & self.incident[low] & self.inside[set] == 0;
            if !independent[set] {
                continue;
            }
            min_deg[set] = min_deg[rest].min(d[low]);
            let size = set.count_ones() as usize;
            out[size] = Some(out[size].map_or(min_deg[set], |f: u32| f.max(min_deg[set])));
        }
        out
    }
}

/// Best Z₁ for every `(m, ℓ, k)` on `n` vertices, from one sweep over all
/// graphs. `k` runs over `0..n`.
#[derive(Debug, Clone)]
pub struct GeneralProfile {
    pub n: usize,
    entries: Vec<Option<Best>>,
}

impl GeneralProfile {
    fn index(n: usize, m: usize, ell: usize, k: usize) -> usize {
        (m * (n + 1) + ell) * n.max(1) + k
    }

    /// The optimum over 𝒢(n, m, ℓ, k), or `None` if that family is empty
    /// or the tuple is out of range.
    pub fn get(&self, m: usize, ell: usize, k: usize) -> Option<Best> {
        let n = self.n;
        if m > binom2(n as u64) as usize || ell > n || k >= n.max(1) {
            return None;
        }
        self.entries[Self::index(n, m, ell, k)]
    }
}

/// Sweeps every graph on `n` vertices once and tabulates the optimum for
/// all `(m, ℓ, k)` simultaneously.
pub fn general_profile(n: usize, cap: u32) -> Result<GeneralProfile, OracleError> {
    let slots = check_cap(binom2(n as u64), cap)?;
    let layout = PairLayout::new(n);
    let size = (slots as usize + 1) * (n + 1) * n.max(1);
    let total = 1u64 << slots;
    let chunk = (total / 512).max(1 << 10);
    let mut entries = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut acc: Vec<Option<Best>> = vec![None; size];
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                let m = mask.count_ones() as usize;
                let score = layout.z1(mask);
                for (ell, floor) in layout.floors(mask).iter().enumerate().take(n + 1) {
                    if let Some(f) = floor {
                        let slot = &mut acc[GeneralProfile::index(n, m, ell, *f as usize)];
                        *slot = merge(
                            *slot,
                            Some(Best {
                                score,
                                count: 1,
                                mask,
                            }),
                        );
                    }
                }
            }
            acc
        })
        .reduce(
            || vec![None; size],
            |a, b| a.into_iter().zip(b).map(|(x, y)| merge(x, y)).collect(),
        );
    // a graph whose best floor is f lies in every family with k <= f
    for m in 0..=slots as usize {
        for ell in 0..=n {
            for k in (0..n.max(1).saturating_sub(1)).rev() {
                let above = entries[GeneralProfile::index(n, m, ell, k + 1)];
                let here = &mut entries[GeneralProfile::index(n, m, ell, k)];
                *here = merge(*here, above);
            }
        }
    }
    Ok(GeneralProfile { n, entries })
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees().to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

fn candidate(name: &'static str, built: Result<(Graph, bool), String>) -> CandidateValue {
    match built {
        Ok((g, feasible)) => CandidateValue {
            name,
            feasible,
            z1: Some(g.z1_index()),
            note: (!feasible).then(|| "no independent set meeting the degree floor".into()),
            degrees: Some(sorted_degrees(&g)),
        },
        Err(e) => CandidateValue {
            name,
            feasible: false,
            z1: None,
            note: Some(e),
            degrees: None,
        },
    }
}

/// Decodes a profile or oracle mask on `n` vertices.
pub(crate) fn mask_graph(n: usize, mask: u64) -> Graph {
    PairLayout::new(n).graph(mask)
}

pub(crate) fn degree_sequence(g: &Graph) -> Vec<usize> {
    sorted_degrees(g)
}

/// The four named constructions on `(n, m, ℓ, k)`. Quasi-star and
/// quasi-clique count as feasible only if a witness exists in them; G₁
/// and G₂ carry their own witness but may not be constructible.
pub fn construction_candidates(n: usize, m: u64, ell: usize, k: usize) -> Vec<CandidateValue> {
    let with_search = |g: Result<Graph, _>| -> Result<(Graph, bool), String> {
        let g = g.map_err(|e: crate::constructions::ConstructionError| e.to_string())?;
        let ok = g
            .find_constraint_witness(ell, k)
            .map_err(|e| e.to_string())?
            .is_some();
        Ok((g, ok))
    };
    let carried =
        |w: Result<crate::constructions::Witnessed<Graph>, _>| -> Result<(Graph, bool), String> {
            let w = w.map_err(|e: crate::constructions::ConstructionError| e.to_string())?;
            let ok = w.witness.verify(&w.graph).is_ok();
            Ok((w.graph, ok))
        };
    vec![
        candidate("quasi-star", with_search(quasi_star(n, m))),
        candidate("quasi-clique", with_search(quasi_clique(n, m))),
        candidate("G1", carried(g1_family(n, m, ell, k))),
        candidate("G2", carried(g2_family(n, m, ell, k))),
    ]
}

/// Names of the feasible candidates with the largest Z₁, joined by `+`.
pub(crate) fn best_candidates(cands: &[CandidateValue]) -> Option<(u64, String)> {
    let best = cands
        .iter()
        .filter(|c| c.feasible)
        .filter_map(|c| c.z1)
        .max()?;
    let names: Vec<&str> = cands
        .iter()
        .filter(|c| c.feasible && c.z1 == Some(best))
        .map(|c| c.name)
        .collect();
    Some((best, names.join("+")))
}

/// Exact maximum of Z₁ (and so of N(S₂)) over m-edge graphs on `n`
/// vertices with an independent `ℓ`-set of minimum degree at least `k`,
/// compared with the best feasible construction.
pub fn max_cherries_general(
    n: usize,
    m: usize,
    ell: usize,
    k: usize,
    cap: u32,
) -> Result<OracleReport, OracleError> {
    let pairs = binom2(n as u64) as usize;
    if m > pairs {
        return Err(OracleError::Infeasible(format!(
            "m = {m} exceeds C({n},2) = {pairs}"
        )));
    }
    if k * ell > m {
        return Err(OracleError::Infeasible(format!(
            "k*ell = {} exceeds m = {m}",
            k * ell
        )));
    }
    if ell > n {
        return Err(OracleError::Infeasible(format!(
            "ell = {ell} exceeds n = {n}"
        )));
    }
    let slots = check_cap(pairs as u64, cap)?;
    let layout = PairLayout::new(n);
    let sets: Vec<(u64, u64)> = layout
        .sets_of_size(ell)
        .into_iter()
        .map(|s| (s, layout.inside[s as usize]))
        .collect();
    let eval = |mask: u64| {
        let d = layout.degrees(mask);
        let high = (0..n)
            .filter(|&v| d[v] as usize >= k)
            .fold(0u64, |acc, v| acc | 1 << v);
        sets.iter()
            .any(|&(set, inside)| set & !high == 0 && mask & inside == 0)
            .then(|| layout.z1(mask))
    };
    let (best, enumerated) = best_subset(slots, m as u32, eval);

    let candidates = construction_candidates(n, m as u64, ell, k);
    let predicted = best_candidates(&candidates);
    let witness_graph = best.map(|b| layout.graph(b.mask));
    let witness_set = match &witness_graph {
        Some(g) => g
            .find_constraint_witness(ell, k)
            .ok()
            .flatten()
            .map(|w| w.vertices),
        None => None,
    };
    let params = BTreeMap::from([
        ("n", n as u64),
        ("m", m as u64),
        ("l", ell as u64),
        ("k", k as u64),
    ]);
    Ok(OracleReport {
        family: Family::General,
        params,
        mode: Mode::Full,
        optimum_z1: best.map(|b| b.score),
        optimum_cherries: best.map(|b| cherries_from_z1(b.score, m as u64)),
        optimal_count: best.map_or(0, |b| b.count),
        witness: witness_graph.map(|g| AnyGraphJson::General(g.to_json())),
        witness_set,
        predicted_z1: predicted.as_ref().map(|p| p.0),
        branch: predicted.as_ref().map(|p| p.1.clone()),
        boundary_agreement: None,
        prediction_feasible: Some(predicted.is_some()),
        matches: best.zip(predicted.as_ref()).map(|(b, p)| b.score == p.0),
        candidates,
        enumerated,
    })
}

/// Unconstrained check on `1..=n_max` vertices: for every `m`, the
/// brute-force maximum equals the larger of the quasi-star and the
/// quasi-clique.
pub fn verify_ak_general(n_max: usize, cap: u32) -> Result<Vec<TheoremRow>, OracleError> {
    check_cap(binom2(n_max as u64), cap)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let layout = PairLayout::new(n);
        let best = best_by_size(layout.slots(), |mask| Some(layout.z1(mask)));
        for (m, b) in best.iter().enumerate() {
            let optimum = b.expect("every size has subsets").score;
            let star = quasi_star(n, m as u64)?.z1_index();
            let clique = quasi_clique(n, m as u64)?.z1_index();
            let branch = match star.cmp(&clique) {
                std::cmp::Ordering::Greater => "quasi-star",
                std::cmp::Ordering::Less => "quasi-clique",
                std::cmp::Ordering::Equal => "tie",
            };
            let predicted = star.max(clique);
            rows.push(TheoremRow {
                theorem: "1.1",
                n: Some(n),
                r: None,
                s: None,
                l: None,
                k: None,
                m,
                optimum_z1: Some(optimum),
                predicted_z1: predicted,
                branch: branch.to_string(),
                matches: optimum == predicted,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_EDGE_CAP;

    #[test]
    fn three_edges_on_four_vertices() {
        let rep = max_cherries_general(4, 3, 0, 0, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(rep.optimum_cherries, Some(3));
        // K₃ + isolated vertex (4 labelings) and K_{1,3} (4 centres)
        assert_eq!(rep.optimal_count, 8);
        let star = rep
            .candidates
            .iter()
            .find(|c| c.name == "quasi-star")
            .unwrap();
        let clique = rep
            .candidates
            .iter()
            .find(|c| c.name == "quasi-clique")
            .unwrap();
        assert_eq!((star.z1, clique.z1), (Some(12), Some(12)));
    }

    #[test]
    fn complete_graph_small_witness() {
        for n in 3..=6 {
            let m = binom2(n as u64) as usize;
            let rep = max_cherries_general(n, m, 1, 1, DEFAULT_EDGE_CAP).unwrap();
            assert_eq!(
                rep.optimum_cherries,
                Some(3 * crate::graph::binom3(n as u64))
            );
            assert_eq!(rep.optimal_count, 1);
        }
    }

    #[test]
    fn six_vertices_eight_edges() {
        let rep = max_cherries_general(6, 8, 2, 2, DEFAULT_EDGE_CAP).unwrap();
        let opt = rep.optimum_z1.unwrap();
        for c in rep.candidates.iter().filter(|c| c.feasible) {
            assert!(c.z1.unwrap() <= opt, "{} beats the optimum", c.name);
        }
        let g = Graph::try_from(match rep.witness.unwrap() {
            AnyGraphJson::General(j) => j,
            other => panic!("unexpected witness {other:?}"),
        })
        .unwrap();
        assert_eq!(g.z1_index(), opt);
        assert!(g.find_constraint_witness(2, 2).unwrap().is_some());
    }

    #[test]
    fn profile_agrees_with_single_searches() {
        let profile = general_profile(5, DEFAULT_EDGE_CAP).unwrap();
        for m in 0..=10 {
            for ell in 0..=5 {
                for k in 0..5 {
                    if k * ell > m {
                        continue;
                    }
                    let single = max_cherries_general(5, m, ell, k, DEFAULT_EDGE_CAP).unwrap();
                    let entry = profile.get(m, ell, k);
                    assert_eq!(
                        entry.map(|b| b.score),
                        single.optimum_z1,
                        "m={m} ell={ell} k={k}"
                    );
                    assert_eq!(entry.map_or(0, |b| b.count), single.optimal_count);
                }
            }
        }
    }

    #[test]
    fn unconstrained_small_n() {
        let rows = verify_ak_general(5, DEFAULT_EDGE_CAP).unwrap();
        assert!(rows.iter().all(|r| r.matches));
        assert_eq!(rows.iter().filter(|r| r.n == Some(4)).count(), 7);
    }
}
