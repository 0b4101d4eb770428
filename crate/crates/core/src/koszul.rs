//! Graded Betti numbers of `S/M`, `M` a squarefree monomial ideal, computed
//! as the homology of the Koszul complex `K(x_1..x_N) ⊗ S/M`.
//!
//! The complex splits into strands indexed by multidegrees `a ∈ N^N`. In
//! multidegree `a` the `i`-th chain group has basis `e_F ⊗ x^(a-F)` for
//! `F ⊆ supp(a)`, `|F| = i`, with `x^(a-F) ∉ M`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::linalg;

/// Largest number of variables the oracle accepts at all.
pub const HARD_LIMIT: usize = 20;

/// `dim_K Tor_i(K, S/M)_a` for every `i`, in one multidegree.
///
/// `gen_masks` are the supports of the generators of `M` as bitmasks over
/// `0..nvars`.
pub fn multidegree_betti(gen_masks: &[u64], exponents: &[u8]) -> Vec<u64> {
    let support: Vec<usize> = (0..exponents.len()).filter(|&v| exponents[v] > 0).collect();
    let s = support.len();
    let full: u64 = support.iter().fold(0, |acc, &v| acc | 1 << v);
    let saturated: u64 = support
        .iter()
        .filter(|&&v| exponents[v] > 1)
        .fold(0, |acc, &v| acc | 1 << v);
    // the support of x^(a - F) is supp(a) minus the variables of F with exponent 1
    let in_ideal = |f: u64| {
        let rest = (full & !f) | saturated;
        gen_masks.iter().any(|&g| g & rest == g)
    };

    // chains[i]: subsets F (as masks) of size i that survive in S/M
    let mut chains: Vec<Vec<u64>> = vec![Vec::new(); s + 1];
    for sub in 0u64..(1 << s) {
        let f = support
            .iter()
            .enumerate()
            .filter(|(k, _)| sub >> k & 1 == 1)
            .fold(0u64, |acc, (_, &v)| acc | 1 << v);
        if !in_ideal(f) {
            chains[f.count_ones() as usize].push(f);
        }
    }

    // rank of the differential C_i -> C_{i-1}
    let ranks: Vec<usize> = (0..=s + 1)
        .map(|i| {
            if i == 0 || i > s || chains[i].is_empty() || chains[i - 1].is_empty() {
                return 0;
            }
            let index: BTreeMap<u64, usize> =
                chains[i - 1].iter().enumerate().map(|(k, &f)| (f, k)).collect();
            let rows: Vec<Vec<i64>> = chains[i]
                .iter()
                .map(|&f| {
                    let mut row = vec![0i64; chains[i - 1].len()];
                    let mut below = 0;
                    for v in 0..exponents.len() {
                        if f >> v & 1 == 0 {
                            continue;
                        }
                        if let Some(&col) = index.get(&(f & !(1 << v))) {
                            row[col] = if below % 2 == 0 { 1 } else { -1 };
                        }
                        below += 1;
                    }
                    row
                })
                .collect();
            linalg::rank(&rows)
        })
        .collect();

    (0..=s)
        .map(|i| (chains[i].len() - ranks[i] - ranks[i + 1]) as u64)
        .collect()
}

/// Graded Betti numbers `β_{i,j}(S/M)` collected over all squarefree
/// multidegrees.
pub fn quotient_betti(nvars: usize, gen_masks: &[u64]) -> BTreeMap<(usize, usize), u64> {
    assert!(nvars <= HARD_LIMIT, "too many variables for the Koszul oracle");
    (0u64..1 << nvars)
        .into_par_iter()
        .map(|w| {
            let a: Vec<u8> = (0..nvars).map(|v| (w >> v & 1) as u8).collect();
            let j = w.count_ones() as usize;
            multidegree_betti(gen_masks, &a)
                .into_iter()
                .enumerate()
                .filter(|(_, b)| *b > 0)
                .map(|(i, b)| ((i, j), b))
                .collect::<Vec<_>>()
        })
        .flatten()
        .fold(BTreeMap::new, |mut acc, (key, b)| {
            *acc.entry(key).or_insert(0) += b;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}
