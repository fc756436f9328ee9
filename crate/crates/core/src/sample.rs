//! Random triangular regions for property sweeps.

use alloc::vec::Vec;

use rand::Rng;

use crate::monomial::{monomials_below_degree, Monomial, Var};
use crate::region::{Ideal, TriangularRegion};
use crate::tileability::is_tileable;

/// A random ideal for side `d`.  Generators are drawn until their puncture
/// sides add up to `d` (the balance condition when no two overlap), with up
/// to `extra` further generators on top to create overlaps and touches.
pub fn random_ideal<R: Rng + ?Sized>(rng: &mut R, d: u32, extra: usize) -> Ideal {
    let pool = monomials_below_degree(d);
    let mut gens: Vec<Monomial> = Vec::new();
    let mut budget = d;
    while budget > 0 {
        let fitting: Vec<&Monomial> = pool.iter().filter(|g| d - g.degree() <= budget).collect();
        let g = *fitting[rng.random_range(0..fitting.len())];
        budget -= d - g.degree();
        gens.push(g);
    }
    if rng.random_bool(0.5) {
        let v = Var::ALL[rng.random_range(0..3)];
        gens.push(Monomial::power(v, rng.random_range(1..=d)));
    }
    for _ in 0..rng.random_range(0..=extra) {
        gens.push(pool[rng.random_range(0..pool.len())]);
    }
    Ideal::minimalize(gens)
}

/// Draw regions until one is balanced, nonempty, has at most `max_down` down
/// triangles and (optionally) is tileable.  Gives up after `attempts` draws.
pub fn random_balanced_region<R: Rng + ?Sized>(
    rng: &mut R,
    max_d: u32,
    max_down: usize,
    tileable: bool,
    attempts: usize,
) -> Option<TriangularRegion> {
    for _ in 0..attempts {
        let d = rng.random_range(3..=max_d.max(3));
        let ideal = random_ideal(rng, d, 1);
        let t = TriangularRegion::new(d, ideal).expect("d >= 2");
        if t.is_empty() || !t.is_balanced() || t.down().len() > max_down {
            continue;
        }
        if tileable && !is_tileable(&t) {
            continue;
        }
        return Some(t);
    }
    None
}
