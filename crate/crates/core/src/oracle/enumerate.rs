//! Exhaustive edge-subset enumeration with a deterministic max-reduction.
//!
//! Subsets are `u64` bitmasks over "edge slots". Callers order the slots so
//! that ascending slot index is the lexicographic order of the edges; then
//! the lexicographically smallest edge list among two masks of equal size is
//! the one owning their lowest differing bit.

use rayon::prelude::*;

/// Best score seen so far, how many subsets attain it, and the
/// lexicographically smallest attaining subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Best {
    pub score: u64,
    pub count: u64,
    pub mask: u64,
}

/// `a` comes before `b` as a sorted edge list. Both must have the same
/// number of bits.
pub fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

/// Associative and commutative merge, so the result does not depend on how
/// the search space was split.
pub fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(match a.score.cmp(&b.score) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => Best {
                score: a.score,
                count: a.count + b.count,
                mask: if lex_less(a.mask, b.mask) {
                    a.mask
                } else {
                    b.mask
                },
            },
        }),
    }
}

fn offer(best: &mut Option<Best>, mask: u64, score: u64) {
    *best = merge(
        *best,
        Some(Best {
            score,
            count: 1,
            mask,
        }),
    );
}

/// Next mask with the same popcount (Gosper's hack). `x` must be nonzero.
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Calls `f` on every `size`-subset of `0..bits` in increasing numeric
/// order, which is colexicographic order of the subsets.
pub fn for_each_subset(bits: u32, size: u32, mut f: impl FnMut(u64)) {
    if size > bits {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << bits;
    let mut x = (1u64 << size) - 1;
    while x < limit {
        f(x);
        x = next_same_popcount(x);
    }
}

/// Maximizes `eval` over all `size`-subsets of `0..bits`; `eval` returns
/// `None` for subsets outside the family. Work is split by the highest set
/// bit. Returns the best entry and the number of subsets examined.
pub fn best_subset<F>(bits: u32, size: u32, eval: F) -> (Option<Best>, u64)
where
    F: Fn(u64) -> Option<u64> + Sync,
{
    assert!(bits < 64);
    if size == 0 || size > bits {
        let mut best = None;
        let mut seen = 0;
        for_each_subset(bits, size, |mask| {
            seen += 1;
            if let Some(score) = eval(mask) {
                offer(&mut best, mask, score);
            }
        });
        return (best, seen);
    }
    (size - 1..bits)
        .into_par_iter()
        .map(|top| {
            let high = 1u64 << top;
            let mut best = None;
            let mut seen = 0u64;
            for_each_subset(top, size - 1, |low| {
                seen += 1;
                let mask = high | low;
                if let Some(score) = eval(mask) {
                    offer(&mut best, mask, score);
                }
            });
            (best, seen)
        })
        .reduce(|| (None, 0), |a, b| (merge(a.0, b.0), a.1 + b.1))
}

/// For every subset size, the best `eval` over all subsets of `0..bits`
/// of that size. Runs over the whole power set once, in parallel chunks.
pub fn best_by_size<F>(bits: u32, eval: F) -> Vec<Option<Best>>
where
    F: Fn(u64) -> Option<u64> + Sync,
{
    assert!(
        bits < 40,
        "power-set sweep over {bits} slots is not desk scale"
    );
    let total = 1u64 << bits;
    let chunk = (total / 256).max(1 << 12);
    let empty = || vec![None; bits as usize + 1];
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut best = empty();
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                if let Some(score) = eval(mask) {
                    offer(&mut best[mask.count_ones() as usize], mask, score);
                }
            }
            best
        })
        .reduce(empty, |a, b| {
            a.into_iter().zip(b).map(|(x, y)| merge(x, y)).collect()
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn subset_counts_and_order() {
        for bits in 0..10u32 {
            for size in 0..=bits {
                let mut all = Vec::new();
                for_each_subset(bits, size, |m| all.push(m));
                assert_eq!(all.len() as u64, binom(bits as u64, size as u64));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|m| m.count_ones() == size));
            }
        }
    }

    #[test]
    fn lex_order_matches_sorted_lists() {
        let list = |m: u64| (0..64).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>();
        let mut masks = Vec::new();
        for_each_subset(8, 3, |m| masks.push(m));
        for &a in &masks {
            for &b in &masks {
                assert_eq!(lex_less(a, b), list(a) < list(b), "{a:b} vs {b:b}");
            }
        }
    }

    #[test]
    fn split_search_matches_serial_scan() {
        let eval = |m: u64| (m % 7 != 3).then(|| (m.wrapping_mul(0x9e37_79b9) >> 7) % 13);
        for size in 0..=12 {
            let (best, seen) = best_subset(12, size, eval);
            let mut serial = None;
            for_each_subset(12, size, |m| {
                if let Some(s) = eval(m) {
                    offer(&mut serial, m, s);
                }
            });
            assert_eq!(best, serial);
            assert_eq!(seen, binom(12, size as u64));
        }
        let by_size = best_by_size(12, eval);
        for size in 0..=12 {
            assert_eq!(by_size[size as usize], best_subset(12, size, eval).0);
        }
    }

    #[test]
    fn result_independent_of_thread_count() {
        let eval = |m: u64| Some((m.count_ones() as u64 * 31 + m % 5) % 11);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| best_subset(16, 6, eval))
        };
        assert_eq!(run(1), run(4));
    }
}
