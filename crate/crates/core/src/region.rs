//! Monomial ideals and the triangular regions `T_d(I)` they cut out.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::geometry::Triangle;
use crate::monomial::{monomials_of_degree, Monomial, Var};

/// A monomial ideal given by its minimal generators, sorted descending in
/// grevlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ideal {
    generators: Vec<Monomial>,
}

impl Ideal {
    /// Canonical minimal generating set of the ideal generated by `gens`.
    pub fn minimalize<I: IntoIterator<Item = Monomial>>(gens: I) -> Ideal {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        let minimal: Vec<Monomial> = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && h.divides(g)))
            .copied()
            .rev()
            .collect();
        Ideal {
            generators: minimal,
        }
    }

    pub fn zero() -> Ideal {
        Ideal::default()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// The colon ideal `(I : m)`.
    pub fn colon(&self, m: &Monomial) -> Ideal {
        Ideal::minimalize(
            self.generators
                .iter()
                .map(|g| g.checked_div(&g.gcd(m)).expect("gcd divides")),
        )
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Monomial>) -> Ideal {
        Ideal::minimalize(self.generators.iter().copied().chain(extra))
    }

    pub fn rotated(&self) -> Ideal {
        Ideal::minimalize(self.generators.iter().map(Monomial::rotated))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// The upward triangle removed by a generator of degree below `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Puncture {
    pub generator: Monomial,
    pub side: u32,
}

impl Puncture {
    pub fn new(generator: Monomial, d: u32) -> Option<Puncture> {
        (generator.degree() < d).then(|| Puncture {
            generator,
            side: d - generator.degree(),
        })
    }

    /// Does the puncture sit in a corner of the ambient triangle?
    pub fn is_corner(&self) -> bool {
        self.generator.is_pure_power()
    }

    /// Does the puncture share an edge with the boundary of the ambient triangle?
    pub fn touches_boundary(&self) -> bool {
        let g = self.generator;
        g.a == 0 || g.b == 0 || g.c == 0
    }

    /// Lattice vertices (degree `d`) of the closed footprint.
    pub fn footprint_vertices(&self) -> BTreeSet<Monomial> {
        monomials_of_degree(self.side)
            .into_iter()
            .map(|m| m.mul(&self.generator))
            .collect()
    }

    /// Corners `(lower-left, lower-right, top)`.
    pub fn corners(&self) -> (Monomial, Monomial, Monomial) {
        let g = self.generator;
        let s = self.side;
        (
            g.mul(&Monomial::power(Var::Y, s)),
            g.mul(&Monomial::power(Var::Z, s)),
            g.mul(&Monomial::power(Var::X, s)),
        )
    }

    /// The grevlex-least upward unit triangle it covers.
    pub fn least_up_label(&self) -> Monomial {
        self.generator.mul(&Monomial::power(Var::Z, self.side - 1))
    }
}

/// How two punctures meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// They share at least a unit edge.
    Overlap,
    /// They share exactly one vertex.
    Touch,
    Disjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PunctureRelation {
    pub first: Puncture,
    pub second: Puncture,
    pub relation: Relation,
    /// Generator of the minimal covering region (monomial gcd).
    pub covering: Monomial,
}

/// Classify two punctures by the vertices and unit edges their closed
/// footprints share.
pub fn relate(p: &Puncture, q: &Puncture) -> Relation {
    let vp = p.footprint_vertices();
    let vq = q.footprint_vertices();
    let common: Vec<&Monomial> = vp.intersection(&vq).collect();
    let shares_edge = common.iter().enumerate().any(|(i, u)| {
        common[i + 1..]
            .iter()
            .any(|w| crate::geometry::Direction::between(u, w).is_some())
    });
    if shares_edge {
        Relation::Overlap
    } else if !common.is_empty() {
        Relation::Touch
    } else {
        Relation::Disjoint
    }
}

/// A set of unit triangles of some ambient triangle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subregion {
    pub up: BTreeSet<Monomial>,
    pub down: BTreeSet<Monomial>,
}

impl Subregion {
    pub fn balance(&self) -> (usize, usize) {
        (self.up.len(), self.down.len())
    }

    pub fn is_balanced(&self) -> bool {
        self.up.len() == self.down.len()
    }

    pub fn is_down_heavy(&self) -> bool {
        self.down.len() > self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty() && self.down.is_empty()
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        match t {
            Triangle::Up(m) => self.up.contains(m),
            Triangle::Down(m) => self.down.contains(m),
        }
    }
}

/// The region `T_d(I)`: the side-`d` triangle with every unit triangle whose
/// label lies in `I` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularRegion {
    d: u32,
    ideal: Ideal,
    up: BTreeSet<Monomial>,
    down: BTreeSet<Monomial>,
    punctures: Vec<Puncture>,
}

impl TriangularRegion {
    pub fn new(d: u32, ideal: Ideal) -> Result<TriangularRegion> {
        if d == 0 {
            return Err(Error::ZeroSide);
        }
        let keep = |m: &Monomial| !ideal.contains(m);
        let up = monomials_of_degree(d - 1)
            .into_iter()
            .filter(keep)
            .collect();
        let down = if d >= 2 {
            monomials_of_degree(d - 2)
                .into_iter()
                .filter(keep)
                .collect()
        } else {
            BTreeSet::new()
        };
        let punctures = ideal
            .generators()
            .iter()
            .filter_map(|g| Puncture::new(*g, d))
            .collect();
        Ok(TriangularRegion {
            d,
            ideal,
            up,
            down,
            punctures,
        })
    }

    /// The unpunctured triangle of side `d`.
    pub fn full(d: u32) -> Result<TriangularRegion> {
        TriangularRegion::new(d, Ideal::zero())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn up(&self) -> &BTreeSet<Monomial> {
        &self.up
    }

    pub fn down(&self) -> &BTreeSet<Monomial> {
        &self.down
    }

    pub fn punctures(&self) -> &[Puncture] {
        &self.punctures
    }

    pub fn puncture(&self, generator: &Monomial) -> Option<Puncture> {
        self.punctures
            .iter()
            .find(|p| p.generator == *generator)
            .copied()
    }

    /// Present upward triangles, descending grevlex.
    pub fn up_desc(&self) -> Vec<Monomial> {
        self.up.iter().rev().copied().collect()
    }

    /// Present downward triangles, descending grevlex.
    pub fn down_desc(&self) -> Vec<Monomial> {
        self.down.iter().rev().copied().collect()
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        match t {
            Triangle::Up(m) => m.degree() + 1 == self.d && self.up.contains(m),
            Triangle::Down(m) => m.degree() + 2 == self.d && self.down.contains(m),
        }
    }

    /// Is `t` a unit triangle of the ambient triangle (present or not)?
    pub fn in_ambient(&self, t: &Triangle) -> bool {
        match t {
            Triangle::Up(m) => m.degree() + 1 == self.d,
            Triangle::Down(m) => m.degree() + 2 == self.d,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty() && self.down.is_empty()
    }

    /// `(#up, #down)`.
    pub fn balance(&self) -> (usize, usize) {
        (self.up.len(), self.down.len())
    }

    pub fn is_balanced(&self) -> bool {
        self.up.len() == self.down.len()
    }

    /// The triangles of the region whose labels are divisible by `m`.
    pub fn monomial_subregion(&self, m: &Monomial) -> Subregion {
        Subregion {
            up: self.up.iter().filter(|u| m.divides(u)).copied().collect(),
            down: self.down.iter().filter(|u| m.divides(u)).copied().collect(),
        }
    }

    /// The monomial subregion at `m` as a region in its own right:
    /// `T_{d - deg m}(I : m)`, labels divided by `m`.
    pub fn subregion_region(&self, m: &Monomial) -> Result<TriangularRegion> {
        TriangularRegion::new(self.d - m.degree(), self.ideal.colon(m))
    }

    /// The region with the monomial subregion at `m` punctured out.
    pub fn without(&self, m: &Monomial) -> Result<TriangularRegion> {
        TriangularRegion::new(self.d, self.ideal.with([*m]))
    }

    /// Rotation by `k · 120°`; every label goes through `(a, b, c) -> (c, a, b)` `k` times.
    pub fn rotate(&self, k: u32) -> TriangularRegion {
        let mut ideal = self.ideal.clone();
        for _ in 0..k % 3 {
            ideal = ideal.rotated();
        }
        TriangularRegion::new(self.d, ideal).expect("d is positive")
    }

    /// Every unordered pair of distinct punctures with its relation and
    /// covering generator.
    pub fn puncture_relations(&self) -> Vec<PunctureRelation> {
        let mut out = Vec::new();
        for (i, p) in self.punctures.iter().enumerate() {
            for q in &self.punctures[i + 1..] {
                out.push(PunctureRelation {
                    first: *p,
                    second: *q,
                    relation: relate(p, q),
                    covering: p.generator.gcd(&q.generator),
                });
            }
        }
        out
    }

    /// The puncture overlapping `p`, if any.
    pub fn overlapping_partner(&self, p: &Puncture) -> Option<Puncture> {
        self.punctures
            .iter()
            .find(|q| q.generator != p.generator && relate(p, q) == Relation::Overlap)
            .copied()
    }

    /// All unit triangles of the ambient triangle.
    pub fn ambient_triangles(&self) -> Vec<Triangle> {
        let mut out: Vec<Triangle> = monomials_of_degree(self.d - 1)
            .into_iter()
            .map(Triangle::Up)
            .collect();
        if self.d >= 2 {
            out.extend(
                monomials_of_degree(self.d - 2)
                    .into_iter()
                    .map(Triangle::Down),
            );
        }
        out
    }

    /// Present triangles adjacent to `t`.
    pub fn neighbours(&self, t: &Triangle) -> Vec<Triangle> {
        match *t {
            Triangle::Up(m) => Var::ALL
                .iter()
                .filter_map(|&v| m.div_var(v))
                .map(Triangle::Down)
                .filter(|n| self.contains(n))
                .collect(),
            Triangle::Down(m) => Var::ALL
                .iter()
                .map(|&v| Triangle::Up(m.times(v)))
                .filter(|n| self.contains(n))
                .collect(),
        }
    }
}
