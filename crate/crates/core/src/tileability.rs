//! Tileability via down-heavy monomial subregions, and the recursive
//! canonical tiling.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matching::enumerate_tilings;
use crate::monomial::{monomials_below_degree, Monomial, Var};
use crate::region::TriangularRegion;
use crate::tiling::Tiling;

/// The first monomial (descending grevlex) of degree below `d` whose monomial
/// subregion has more down than up triangles.
pub fn heavy_subregion(region: &TriangularRegion) -> Option<Monomial> {
    monomials_below_degree(region.d())
        .into_iter()
        .find(|m| region.monomial_subregion(m).is_down_heavy())
}

/// A region is tileable iff it is balanced and has no down-heavy monomial
/// subregion.  The empty region is tileable.
pub fn is_tileable(region: &TriangularRegion) -> bool {
    region.is_empty() || (region.is_balanced() && heavy_subregion(region).is_none())
}

/// The deterministic tiling produced by peeling bottom rows.
///
/// Balanced monomial subregions are split off first and tiled on their own;
/// what remains has its bottom row closed off by vertical lozenges right of
/// every gap but the rightmost, and the rows above are handled recursively.
pub fn canonical_tiling(region: &TriangularRegion) -> Result<Tiling> {
    if region.is_empty() {
        return Tiling::new(region, []);
    }
    if !region.is_balanced() {
        return Err(Error::NotTileable);
    }
    if heavy_subregion(region).is_some() {
        return Err(Error::NotTileable);
    }
    let tiling = build(region)?;
    Tiling::new(region, tiling.lozenges())
        .map_err(|e| Error::Internal(alloc::format!("canonical tiling is invalid: {e}")))
}

/// Precondition: `region` is tileable.
fn build(region: &TriangularRegion) -> Result<Tiling> {
    if region.is_empty() {
        return Ok(Tiling::from_pairs_unchecked(BTreeMap::new()));
    }
    if let Some(m) = split_candidate(region) {
        let inner = build(&region.subregion_region(&m)?)?.scaled(&m);
        let outer = build(&region.without(&m)?)?;
        return Ok(inner.union(&outer));
    }
    let d = region.d();
    if d <= 2 {
        return enumerate_tilings(region).next().ok_or(Error::NotTileable);
    }

    // bottom row, left to right: up (0,b,c) at 2c, down (0,b,c) at 2c + 1
    let slot = |i: u32| -> (bool, Monomial) {
        let c = i / 2;
        if i.is_multiple_of(2) {
            (true, Monomial::new(0, d - 1 - c, c))
        } else {
            (false, Monomial::new(0, d - 2 - c, c))
        }
    };
    let present = |i: u32| {
        let (up, m) = slot(i);
        if up {
            region.up().contains(&m)
        } else {
            region.down().contains(&m)
        }
    };
    let width = 2 * d - 1;
    let mut gap_ends = Vec::new();
    let mut i = 0;
    while i < width {
        if present(i) {
            i += 1;
            continue;
        }
        while i < width && !present(i) {
            i += 1;
        }
        gap_ends.push(i);
    }
    let mut pairs = BTreeMap::new();
    let mut vertical = Vec::new();
    let mut taken = alloc::collections::BTreeSet::new();
    if let Some((_, rest)) = gap_ends.split_last() {
        for &j in rest {
            let (_, down) = slot(j);
            pairs.insert(down, down.times(Var::X));
            vertical.push(down);
            taken.insert(j);
        }
    }
    // pair what is left of the bottom row within each run of present triangles
    let mut pending: Option<u32> = None;
    for i in 0..width {
        if !present(i) {
            if pending.is_some() {
                return Err(Error::NotTileable);
            }
            continue;
        }
        if taken.contains(&i) {
            continue;
        }
        match pending.take() {
            None => pending = Some(i),
            Some(p) => {
                let (p_up, pm) = slot(p);
                let (_, im) = slot(i);
                if p_up {
                    pairs.insert(im, pm);
                } else {
                    pairs.insert(pm, im);
                }
            }
        }
    }
    if pending.is_some() {
        return Err(Error::NotTileable);
    }
    let upper_ideal = region
        .ideal()
        .colon(&Monomial::power(Var::X, 1))
        .with(vertical);
    let upper = TriangularRegion::new(d - 1, upper_ideal)?;
    let rest = build(&upper)?.scaled(&Monomial::power(Var::X, 1));
    Ok(Tiling::from_pairs_unchecked(pairs).union(&rest))
}

/// The first `m ≠ 1` (descending grevlex) whose monomial subregion is
/// nonempty and balanced.
fn split_candidate(region: &TriangularRegion) -> Option<Monomial> {
    monomials_below_degree(region.d())
        .into_iter()
        .filter(|m| *m != Monomial::ONE)
        .find(|m| {
            let sub = region.monomial_subregion(m);
            !sub.is_empty() && sub.is_balanced()
        })
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
    fn examples() {
        let t = region(6, &["x^3", "y^4", "z^5"]);
        assert_eq!(heavy_subregion(&t), None);
        assert!(is_tileable(&t));
        let tau = canonical_tiling(&t).unwrap();
        assert!(enumerate_tilings(&t).any(|s| s == tau));

        assert!(is_tileable(&region(3, &["1"])));
        assert!(!is_tileable(&region(3, &[])));
        assert_eq!(heavy_subregion(&region(2, &[])), None);
        assert!(canonical_tiling(&region(3, &[])).is_err());
    }

    #[test]
    fn small_canonical_tilings() {
        let hex = region(3, &["x^2", "y^2", "z^2"]);
        let tau = canonical_tiling(&hex).unwrap();
        assert_eq!(tau.len(), 3);
        assert_eq!(canonical_tiling(&hex).unwrap(), tau);
        let single = region(2, &["x", "z"]);
        assert_eq!(canonical_tiling(&single).unwrap().len(), 1);
        let big = region(8, &["x^7", "y^7", "z^6", "xy^4z^2", "x^3yz^2", "x^4yz"]);
        assert_eq!(canonical_tiling(&big).unwrap().len(), big.down().len());
    }
}
