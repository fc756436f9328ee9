//! The honeycomb graph `G(T)`: bi-adjacency matrix, perfect matchings
//! (= lozenge tilings) and the perfect-matching sign.
//!
//! Rows of `Z(T)` are the down triangles and columns the up triangles, both
//! listed in descending lexicographic order (`x > y > z`).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use crate::matrix::IntMatrix;
use crate::monomial::{Monomial, Var};
use crate::permutation;
use crate::region::TriangularRegion;
use crate::tiling::{Lozenge, Tiling};

fn lex_desc(set: &BTreeSet<Monomial>) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = set.iter().copied().collect();
    v.sort_by(|p, q| q.lex_cmp(p));
    v
}

/// Row labels of `Z(T)`.
pub fn row_labels(region: &TriangularRegion) -> Vec<Monomial> {
    lex_desc(region.down())
}

/// Column labels of `Z(T)`.
pub fn column_labels(region: &TriangularRegion) -> Vec<Monomial> {
    lex_desc(region.up())
}

/// `Z(T)`: entry `(i, j)` is 1 iff up triangle `j` is adjacent to down triangle `i`.
pub fn biadjacency(region: &TriangularRegion) -> IntMatrix {
    let rows = row_labels(region);
    let cols = column_labels(region);
    let mut z = IntMatrix::zeros(rows.len(), cols.len());
    for (i, b) in rows.iter().enumerate() {
        for (j, w) in cols.iter().enumerate() {
            if Lozenge::new(*b, *w).is_some() {
                z.set(i, j, BigInt::from(1));
            }
        }
    }
    z
}

/// The permutation `π` with `π(i) = j` iff the tiling pairs row `i` with column `j`.
pub fn matching_permutation(region: &TriangularRegion, tiling: &Tiling) -> Vec<usize> {
    let cols = column_labels(region);
    let index: BTreeMap<Monomial, usize> = cols.iter().enumerate().map(|(j, w)| (*w, j)).collect();
    row_labels(region)
        .iter()
        .map(|b| index[&tiling.up_of(b).expect("tiling covers every down triangle")])
        .collect()
}

/// Perfect-matching sign of a tiling.
pub fn msgn(region: &TriangularRegion, tiling: &Tiling) -> i8 {
    permutation::sign(&matching_permutation(region, tiling))
}

/// Present up neighbours of a down triangle, in the order `x·, y·, z·`.
fn up_neighbours(region: &TriangularRegion, down: &Monomial) -> Vec<Monomial> {
    Var::ALL
        .iter()
        .map(|&v| down.times(v))
        .filter(|u| region.up().contains(u))
        .collect()
}

/// Every tiling of a region exactly once, in a fixed order: down triangles are
/// matched in descending grevlex order, trying `x·`, `y·`, `z·` in turn.
pub struct Tilings<'a> {
    region: &'a TriangularRegion,
    downs: Vec<Monomial>,
    options: Vec<Vec<Monomial>>,
    cursor: Vec<usize>,
    used: BTreeSet<Monomial>,
    done: bool,
}

impl<'a> Tilings<'a> {
    fn new(region: &'a TriangularRegion) -> Self {
        let downs = region.down_desc();
        let options = downs.iter().map(|b| up_neighbours(region, b)).collect();
        Tilings {
            region,
            downs,
            options,
            cursor: Vec::new(),
            used: BTreeSet::new(),
            done: !region.is_balanced(),
        }
    }

    fn current(&self) -> Tiling {
        let pairs = self
            .cursor
            .iter()
            .enumerate()
            .map(|(i, &k)| (self.downs[i], self.options[i][k]))
            .collect();
        Tiling::from_pairs_unchecked(pairs)
    }

    /// Try option `start..` at the next level; returns false if none fits.
    fn descend(&mut self, level: usize, start: usize) -> bool {
        for k in start..self.options[level].len() {
            let u = self.options[level][k];
            if !self.used.contains(&u) {
                self.used.insert(u);
                self.cursor.push(k);
                return true;
            }
        }
        false
    }

    /// Drop the deepest choice and advance it; false when the search is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(k) = self.cursor.pop() {
            let level = self.cursor.len();
            self.used.remove(&self.options[level][k]);
            if self.descend(level, k + 1) {
                return true;
            }
        }
        false
    }
}

impl Iterator for Tilings<'_> {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        if self.done {
            return None;
        }
        if self.downs.is_empty() {
            self.done = true;
            return Some(Tiling::from_pairs_unchecked(BTreeMap::new()));
        }
        // resume after the previously reported tiling
        if self.cursor.len() == self.downs.len() && !self.backtrack() {
            self.done = true;
            return None;
        }
        loop {
            if self.cursor.len() == self.downs.len() {
                debug_assert_eq!(self.used.len(), self.region.up().len());
                return Some(self.current());
            }
            let level = self.cursor.len();
            if !self.descend(level, 0) && !self.backtrack() {
                self.done = true;
                return None;
            }
        }
    }
}

/// All tilings in deterministic order; empty for unbalanced regions.
pub fn enumerate_tilings(region: &TriangularRegion) -> Tilings<'_> {
    Tilings::new(region)
}

/// Number of tilings, by a fail-first search that always branches on the
/// most constrained triangle.
pub fn count_tilings(region: &TriangularRegion) -> u128 {
    count_tilings_with(region, &[])
}

/// Number of tilings that contain every lozenge of `fixed`.
pub fn count_tilings_with(region: &TriangularRegion, fixed: &[Lozenge]) -> u128 {
    if !region.is_balanced() {
        return 0;
    }
    let mut state = Search::new(region);
    for l in fixed {
        if !state.free_down.contains(&l.down) || !state.free_up.contains(&l.up) {
            return 0;
        }
        state.take(l);
    }
    state.count()
}

/// Lozenges available to the most constrained down triangle, or to the most
/// constrained up triangle if that is tighter.  Every tiling contains exactly
/// one of them; this is the natural split for parallel counting.
pub fn first_branch(region: &TriangularRegion) -> Vec<Lozenge> {
    Search::new(region).branch()
}

struct Search {
    free_down: BTreeSet<Monomial>,
    free_up: BTreeSet<Monomial>,
}

impl Search {
    fn new(region: &TriangularRegion) -> Search {
        Search {
            free_down: region.down().clone(),
            free_up: region.up().clone(),
        }
    }

    fn take(&mut self, l: &Lozenge) {
        self.free_down.remove(&l.down);
        self.free_up.remove(&l.up);
    }

    fn give(&mut self, l: &Lozenge) {
        self.free_down.insert(l.down);
        self.free_up.insert(l.up);
    }

    fn down_options(&self, d: &Monomial) -> Vec<Lozenge> {
        Var::ALL
            .iter()
            .map(|&v| d.times(v))
            .filter(|u| self.free_up.contains(u))
            .map(|up| Lozenge { down: *d, up })
            .collect()
    }

    fn up_options(&self, u: &Monomial) -> Vec<Lozenge> {
        Var::ALL
            .iter()
            .filter_map(|&v| u.div_var(v))
            .filter(|d| self.free_down.contains(d))
            .map(|down| Lozenge { down, up: *u })
            .collect()
    }

    fn branch(&self) -> Vec<Lozenge> {
        let mut best: Option<Vec<Lozenge>> = None;
        let candidates = self
            .free_down
            .iter()
            .map(|d| self.down_options(d))
            .chain(self.free_up.iter().map(|u| self.up_options(u)));
        for opts in candidates {
            let better = best
                .as_ref()
                .is_none_or(|b| opts.len().cmp(&b.len()) == Ordering::Less);
            if better {
                let stop = opts.len() <= 1;
                best = Some(opts);
                if stop {
                    break;
                }
            }
        }
        best.unwrap_or_default()
    }

    fn count(&mut self) -> u128 {
        if self.free_down.is_empty() {
            return u128::from(self.free_up.is_empty());
        }
        let mut total = 0;
        for l in self.branch() {
            self.take(&l);
            total += self.count();
            self.give(&l);
        }
        total
    }
}

/// `Σ msgn(τ)` over all tilings.
pub fn signed_tiling_sum(region: &TriangularRegion) -> i128 {
    enumerate_tilings(region)
        .map(|t| i128::from(msgn(region, &t)))
        .sum()
}

/// Size of a maximum matching of `G(T)` by augmenting paths.  Independent of
/// the tiling search and of the tileability criterion.
pub fn maximum_matching_size(region: &TriangularRegion) -> usize {
    let downs: Vec<Monomial> = region.down().iter().copied().collect();
    let ups: Vec<Monomial> = region.up().iter().copied().collect();
    let up_index: BTreeMap<Monomial, usize> =
        ups.iter().enumerate().map(|(j, u)| (*u, j)).collect();
    let adj: Vec<Vec<usize>> = downs
        .iter()
        .map(|d| {
            Var::ALL
                .iter()
                .filter_map(|&v| up_index.get(&d.times(v)).copied())
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; ups.len()];

    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    let mut size = 0;
    for i in 0..downs.len() {
        let mut seen = vec![false; ups.len()];
        if augment(i, &adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

/// Does `G(T)` have a perfect matching?
pub fn has_perfect_matching(region: &TriangularRegion) -> bool {
    region.is_balanced() && maximum_matching_size(region) == region.down().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::Ideal;

    fn region(d: u32, gens: &[&str]) -> TriangularRegion {
        TriangularRegion::new(
            d,
            Ideal::minimalize(gens.iter().map(|s| s.parse().unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn counts() {
        let t = region(6, &["x^3", "y^4", "z^5"]);
        assert_eq!(enumerate_tilings(&t).count(), 10);
        assert_eq!(count_tilings(&t), 10);
        let t = region(3, &["x^2", "y^2", "z^2"]);
        assert_eq!(enumerate_tilings(&t).count(), 2);
        assert_eq!(count_tilings(&t), 2);
        assert_eq!(enumerate_tilings(&region(3, &[])).count(), 0);
        assert_eq!(enumerate_tilings(&region(3, &["1"])).count(), 1);
    }

    #[test]
    fn full_triangle_rows() {
        let t = region(3, &[]);
        let z = biadjacency(&t);
        assert_eq!((z.rows(), z.cols()), (3, 6));
        for i in 0..3 {
            assert_eq!(
                z.row(i).iter().filter(|v| **v == BigInt::from(1)).count(),
                3
            );
        }
    }

    #[test]
    fn matching_oracle() {
        assert!(has_perfect_matching(&region(6, &["x^3", "y^4", "z^5"])));
        assert!(!has_perfect_matching(&region(3, &[])));
        assert_eq!(maximum_matching_size(&region(3, &[])), 3);
    }

    #[test]
    fn enumeration_is_valid_and_distinct() {
        let t = region(8, &["x^7", "y^7", "z^6", "xy^4z^2", "x^3yz^2", "x^4yz"]);
        let all: Vec<Tiling> = enumerate_tilings(&t).collect();
        assert_eq!(all.len(), 13);
        let distinct: BTreeSet<&Tiling> = all.iter().collect();
        assert_eq!(distinct.len(), 13);
        for tau in &all {
            assert!(Tiling::new(&t, tau.lozenges()).is_ok());
        }
        let total: u128 = first_branch(&t)
            .iter()
            .map(|l| count_tilings_with(&t, &[*l]))
            .sum();
        assert_eq!(total, 13);
    }
}
