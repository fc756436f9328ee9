//! Lozenges and lozenge tilings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;

use crate::error::{Error, Result};
use crate::geometry::{Edge, Triangle};
use crate::monomial::{Monomial, Var};
use crate::region::TriangularRegion;

/// An upward and a downward unit triangle sharing an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lozenge {
    pub down: Monomial,
    pub up: Monomial,
}

impl Lozenge {
    /// `None` unless `up` is `down` times a variable.
    pub fn new(down: Monomial, up: Monomial) -> Option<Lozenge> {
        Var::ALL
            .iter()
            .any(|&v| down.times(v) == up)
            .then_some(Lozenge { down, up })
    }

    /// The variable `v` with `up = v · down`.  `X` is the vertical lozenge
    /// (down below up), `Y` leans right and `Z` leans left.
    pub fn orientation(&self) -> Var {
        let q = self.up.checked_div(&self.down).expect("lozenge invariant");
        Var::ALL
            .into_iter()
            .find(|&v| q.exponent(v) == 1)
            .expect("lozenge invariant")
    }

    pub fn shared_edge(&self) -> Edge {
        Triangle::Up(self.up)
            .shared_edge(&Triangle::Down(self.down))
            .expect("lozenge invariant")
    }

    /// The four corners, in cyclic order starting at the vertex of the up
    /// triangle opposite the shared edge.
    pub fn corners(&self) -> [Monomial; 4] {
        let Edge(p, q) = self.shared_edge();
        let apart = |t: Triangle| {
            t.vertices()
                .into_iter()
                .find(|v| *v != p && *v != q)
                .expect("lozenge invariant")
        };
        [
            apart(Triangle::Up(self.up)),
            p,
            apart(Triangle::Down(self.down)),
            q,
        ]
    }
}

/// A set of lozenges covering every triangle of a region exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tiling {
    /// Keyed by the down triangle.
    pairs: BTreeMap<Monomial, Monomial>,
}

impl Tiling {
    /// Validate `lozenges` as a tiling of `region`.
    pub fn new<I: IntoIterator<Item = Lozenge>>(
        region: &TriangularRegion,
        lozenges: I,
    ) -> Result<Tiling> {
        let mut pairs = BTreeMap::new();
        let mut ups = BTreeSet::new();
        for l in lozenges {
            if Lozenge::new(l.down, l.up).is_none() {
                return Err(Error::InvalidTiling(format!(
                    "{} and {} are not adjacent",
                    l.down, l.up
                )));
            }
            if !region.down().contains(&l.down) {
                return Err(Error::InvalidTiling(format!(
                    "down triangle {} is not in the region",
                    l.down
                )));
            }
            if !region.up().contains(&l.up) {
                return Err(Error::InvalidTiling(format!(
                    "up triangle {} is not in the region",
                    l.up
                )));
            }
            if pairs.insert(l.down, l.up).is_some() {
                return Err(Error::InvalidTiling(format!(
                    "down triangle {} is covered twice",
                    l.down
                )));
            }
            if !ups.insert(l.up) {
                return Err(Error::InvalidTiling(format!(
                    "up triangle {} is covered twice",
                    l.up
                )));
            }
        }
        if pairs.len() != region.down().len() || ups.len() != region.up().len() {
            return Err(Error::InvalidTiling(format!(
                "{} lozenges do not cover {} up and {} down triangles",
                pairs.len(),
                region.up().len(),
                region.down().len()
            )));
        }
        Ok(Tiling { pairs })
    }

    /// Build without checking coverage; callers must guarantee validity.
    pub(crate) fn from_pairs_unchecked(pairs: BTreeMap<Monomial, Monomial>) -> Tiling {
        Tiling { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Lozenges in ascending grevlex order of their down triangles.
    pub fn lozenges(&self) -> impl Iterator<Item = Lozenge> + '_ {
        self.pairs.iter().map(|(&down, &up)| Lozenge { down, up })
    }

    pub fn up_of(&self, down: &Monomial) -> Option<Monomial> {
        self.pairs.get(down).copied()
    }

    pub fn down_of(&self, up: &Monomial) -> Option<Monomial> {
        self.pairs.iter().find(|(_, u)| *u == up).map(|(d, _)| *d)
    }

    /// Inverse map up -> down.
    pub fn by_up(&self) -> BTreeMap<Monomial, Monomial> {
        self.pairs.iter().map(|(&d, &u)| (u, d)).collect()
    }

    /// The lozenge containing `t`, if any.
    pub fn lozenge_of(&self, t: &Triangle) -> Option<Lozenge> {
        match *t {
            Triangle::Down(d) => self.up_of(&d).map(|up| Lozenge { down: d, up }),
            Triangle::Up(u) => self.down_of(&u).map(|down| Lozenge { down, up: u }),
        }
    }

    pub fn contains(&self, l: &Lozenge) -> bool {
        self.pairs.get(&l.down) == Some(&l.up)
    }

    /// Relabel every triangle by multiplying with `m`.
    pub fn scaled(&self, m: &Monomial) -> Tiling {
        Tiling {
            pairs: self
                .pairs
                .iter()
                .map(|(d, u)| (d.mul(m), u.mul(m)))
                .collect(),
        }
    }

    /// Union of two tilings of disjoint regions.
    pub fn union(&self, other: &Tiling) -> Tiling {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().map(|(d, u)| (*d, *u)));
        Tiling { pairs }
    }

    /// The lozenges whose triangles both lie in `keep`.
    pub fn restricted<F: Fn(&Lozenge) -> bool>(&self, keep: F) -> Tiling {
        Tiling {
            pairs: self
                .pairs
                .iter()
                .filter(|(&down, &up)| keep(&Lozenge { down, up }))
                .map(|(d, u)| (*d, *u))
                .collect(),
        }
    }

    /// Is the edge the internal (shared) edge of one of the lozenges?
    pub fn is_internal_edge(&self, e: &Edge) -> bool {
        match e.triangles() {
            (Triangle::Up(u), Some(Triangle::Down(d))) => self.up_of(&d) == Some(u),
            _ => false,
        }
    }
}
