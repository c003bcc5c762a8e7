//! Connected graphs on a few vertices, optionally one per isomorphism class.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted by the enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 9;

#[inline]
fn pair_bit(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

/// Upper-triangle bitmask of `g` (see [`Graph::from_upper_mask`]).
pub fn upper_mask(g: &Graph) -> u64 {
    g.edges().iter().fold(0, |m, &(u, v)| m | 1 << pair_bit(u, v))
}

/// Colour refinement starting from degrees. Colours are renumbered by the
/// sorted order of their signatures at every round, so the final colouring
/// is an isomorphism invariant.
fn refined_colors(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(Vec::len).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = adj[v].iter().map(|&w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        let before = colors.iter().collect::<BTreeSet<_>>().len();
        if distinct.len() == before {
            return next;
        }
        colors = next;
    }
}

/// Canonical code: the least upper-triangle bitmask, read from bit 0
/// upward as a bit string, over all relabelings that place colour classes
/// (after refinement) in increasing colour order. Two graphs are isomorphic
/// iff their codes agree.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes are limited to 11 vertices");
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let colors = refined_colors(&adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    for v in order {
        match cells.last_mut() {
            Some(cell) if colors[cell[0]] == colors[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut labeling: Vec<usize> = Vec::with_capacity(n);
    search(&adj, &cells, 0, &mut vec![false; n], &mut labeling, 0, &mut best);
    best
}

/// Bit-string order with bit 0 most significant.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) == 0
}

/// Assigns positions cell by cell; `labeling[pos] = vertex`. Prunes when the
/// partial code already exceeds the best complete one on its fixed bits.
fn search(
    adj: &[Vec<usize>],
    cells: &[Vec<usize>],
    cell_idx: usize,
    used: &mut Vec<bool>,
    labeling: &mut Vec<usize>,
    partial: u64,
    best: &mut u64,
) {
    let pos = labeling.len();
    if pos == adj.len() {
        if *best == u64::MAX || lex_less(partial, *best) {
            *best = partial;
        }
        return;
    }
    // bits below pos*(pos-1)/2 are final; compare that prefix
    let fixed_bits = pos * pos.saturating_sub(1) / 2;
    let prefix_mask = if fixed_bits >= 64 { u64::MAX } else { (1u64 << fixed_bits) - 1 };
    if *best != u64::MAX && lex_less(*best & prefix_mask, partial & prefix_mask) {
        return;
    }
    let cell = &cells[cell_idx];
    let placed_in_cell = labeling.iter().filter(|&&v| cell.contains(&v)).count();
    let (cell_idx, cell) =
        if placed_in_cell == cell.len() { (cell_idx + 1, &cells[cell_idx + 1]) } else { (cell_idx, cell) };
    for &v in cell {
        if used[v] {
            continue;
        }
        let mut code = partial;
        for (q, &w) in labeling.iter().enumerate() {
            if adj[v].contains(&w) {
                code |= 1 << pair_bit(q, pos);
            }
        }
        used[v] = true;
        labeling.push(v);
        search(adj, cells, cell_idx, used, labeling, code, best);
        labeling.pop();
        used[v] = false;
    }
}

/// Connected graphs on `n` labeled vertices in ascending mask order.
pub fn connected_labeled(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_order(n)?;
    let pairs = n * n.saturating_sub(1) / 2;
    Ok((0..1u64 << pairs).map(move |m| Graph::from_upper_mask(n, m)).filter(Graph::is_connected))
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, sorted by canonical code. Built by extending each class on
/// `n - 1` vertices with a new vertex; every connected graph has a
/// non-cut vertex, so nothing is missed.
pub fn connected_classes(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    let mut reps = vec![Graph::new(1)];
    for m in 2..=n {
        let codes: BTreeSet<u64> = reps
            .par_iter()
            .flat_map_iter(|rep| {
                let base = m - 1;
                (1u64..1 << base).map(move |nbrs| {
                    let mut g = Graph::new(m);
                    for (u, v) in rep.edges() {
                        g.add_edge(u, v);
                    }
                    for u in 0..base {
                        if nbrs >> u & 1 == 1 {
                            g.add_edge(u, base);
                        }
                    }
                    canonical_code(&g)
                })
            })
            .collect();
        reps = codes.into_iter().map(|c| Graph::from_upper_mask(m, c)).collect();
    }
    Ok(reps)
}

/// Either enumerator, materialized.
pub fn enumerate_connected(n: usize, dedup: bool) -> Result<Vec<Graph>> {
    if dedup {
        connected_classes(n)
    } else {
        Ok(connected_labeled(n)?.collect())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidArgument(format!(
            "enumeration order must be in 1..={MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: minimum mask over all n! permutations.
    fn brute_canonical(g: &Graph) -> u64 {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, k - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(g.n()).iter().map(|p| upper_mask(&g.permute(p))).min().unwrap()
    }

    fn brute_classes(n: usize) -> usize {
        let pairs = n * (n - 1) / 2;
        let codes: BTreeSet<u64> = (0..1u64 << pairs)
            .map(|m| Graph::from_upper_mask(n, m))
            .filter(Graph::is_connected)
            .map(|g| brute_canonical(&g))
            .collect();
        codes.len()
    }

    #[test]
    fn class_counts_match_brute_force() {
        // frozen from brute_classes: 1, 1, 2, 6, 21
        let expected = [1, 1, 2, 6, 21];
        for n in 1..=5 {
            assert_eq!(brute_classes(n), expected[n - 1]);
            assert_eq!(connected_classes(n).unwrap().len(), expected[n - 1], "n = {n}");
        }
    }

    #[test]
    fn larger_class_counts() {
        // brute force over 2^15 masks and 720 permutations each
        assert_eq!(brute_classes(6), 112);
        assert_eq!(connected_classes(6).unwrap().len(), 112);
        assert_eq!(connected_classes(7).unwrap().len(), 853);
    }

    #[test]
    fn canonical_code_is_invariant() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let c = canonical_code(&g);
        for p in [[5, 4, 3, 2, 1, 0], [1, 0, 3, 2, 5, 4], [2, 4, 0, 5, 1, 3]] {
            assert_eq!(canonical_code(&g.permute(&p)), c);
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_connected(1, false).unwrap().len(), 1);
        let three = enumerate_connected(3, true).unwrap();
        assert_eq!(three.len(), 2);
        assert_eq!(three.iter().map(Graph::edge_count).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(enumerate_connected(3, false).unwrap().len(), 4);
        assert_eq!(enumerate_connected(4, true).unwrap().len(), 6);
        assert_eq!(enumerate_connected(4, false).unwrap().len(), 38);
        assert!(enumerate_connected(0, true).is_err());
        assert!(enumerate_connected(10, true).is_err());
    }
}
