//! Cycles of lozenges, twists, E-counts, floating punctures and shadows.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{winding_number, Point, Triangle};
use crate::monomial::{Monomial, Var};
use crate::region::{relate, Puncture, Relation, Subregion, TriangularRegion};
use crate::tiling::{Lozenge, Tiling};

/// Lozenges `ℓ_1, …, ℓ_n` (`n ≥ 3`, distinct) such that the down triangle of
/// `ℓ_i` is adjacent to the up triangle of `ℓ_{i+1}`, indices taken cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LozengeCycle {
    lozenges: Vec<Lozenge>,
}

impl LozengeCycle {
    /// Validate and rotate so the cycle starts at its least lozenge.
    pub fn new(lozenges: Vec<Lozenge>) -> Result<LozengeCycle> {
        let n = lozenges.len();
        if n < 3 {
            return Err(Error::InvalidCycle(format!(
                "{n} lozenges; a cycle needs at least 3"
            )));
        }
        let distinct: BTreeSet<&Lozenge> = lozenges.iter().collect();
        let downs: BTreeSet<Monomial> = lozenges.iter().map(|l| l.down).collect();
        let ups: BTreeSet<Monomial> = lozenges.iter().map(|l| l.up).collect();
        if distinct.len() != n || downs.len() != n || ups.len() != n {
            return Err(Error::InvalidCycle("repeated triangle".into()));
        }
        for (i, l) in lozenges.iter().enumerate() {
            if Lozenge::new(l.down, l.up).is_none() {
                return Err(Error::InvalidCycle(format!(
                    "{} and {} are not adjacent",
                    l.down, l.up
                )));
            }
            let next = &lozenges[(i + 1) % n];
            if Lozenge::new(l.down, next.up).is_none() {
                return Err(Error::InvalidCycle(format!(
                    "down {} of lozenge {} is not adjacent to up {} of the next",
                    l.down, i, next.up
                )));
            }
        }
        let start = (0..n).min_by_key(|&i| lozenges[i]).expect("nonempty");
        let mut lozenges = lozenges;
        lozenges.rotate_left(start);
        Ok(LozengeCycle { lozenges })
    }

    pub fn lozenges(&self) -> &[Lozenge] {
        &self.lozenges
    }

    pub fn len(&self) -> usize {
        self.lozenges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lozenges.is_empty()
    }

    /// Closed polygon through the centroids of `up(ℓ_1), down(ℓ_1), up(ℓ_2), …`
    /// in the three-times-scaled affine frame.
    pub fn core_polygon(&self) -> Vec<Point> {
        self.lozenges
            .iter()
            .flat_map(|l| {
                [
                    Triangle::Up(l.up).centroid3(),
                    Triangle::Down(l.down).centroid3(),
                ]
            })
            .collect()
    }

    /// Is the (three-times-scaled) point enclosed by the cycle?
    pub fn encloses(&self, p3: Point) -> bool {
        winding_number(&self.core_polygon(), p3) != 0
    }
}

/// Re-pair `down(ℓ_i)` with `up(ℓ_{i+1})` along the cycle.
pub fn twist(region: &TriangularRegion, tiling: &Tiling, cycle: &LozengeCycle) -> Result<Tiling> {
    if let Some(l) = cycle.lozenges().iter().find(|l| !tiling.contains(l)) {
        return Err(Error::InvalidCycle(format!(
            "lozenge ({}, {}) is not in the tiling",
            l.down, l.up
        )));
    }
    let ls = cycle.lozenges();
    let n = ls.len();
    let moved: BTreeSet<Monomial> = ls.iter().map(|l| l.down).collect();
    let kept = tiling.lozenges().filter(|l| !moved.contains(&l.down));
    let twisted = (0..n).map(|i| Lozenge {
        down: ls[i].down,
        up: ls[(i + 1) % n].up,
    });
    Tiling::new(region, kept.chain(twisted))
}

/// The cycles along which `second` differs from `first`, as cycles of
/// lozenges of `first`.  Twisting `first` along all of them gives `second`.
pub fn difference_cycles(first: &Tiling, second: &Tiling) -> Vec<LozengeCycle> {
    let by_up = first.by_up();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for l in first.lozenges() {
        if seen.contains(&l.down) || second.up_of(&l.down) == Some(l.up) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = l;
        while seen.insert(cur.down) {
            cycle.push(cur);
            let target = second.up_of(&cur.down).expect("same region");
            let down = by_up[&target];
            cur = Lozenge { down, up: target };
        }
        out.push(LozengeCycle::new(cycle).expect("difference cycles are lozenge cycles"));
    }
    out.sort();
    out
}

/// A puncture, or the minimal covering region of a group of overlapping
/// punctures.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit {
    pub generator: Monomial,
    pub side: u32,
    pub members: Vec<Puncture>,
}

impl Unit {
    /// Three times the centroid of the unit's triangle.
    pub fn centroid3(&self) -> Point {
        let s = self.side;
        let corners = [Var::X, Var::Y, Var::Z].map(|v| self.generator.mul(&Monomial::power(v, s)));
        let mut p = Point { x: 0, y: 0 };
        for c in corners {
            let q = Point::of_vertex(&c);
            p.x += q.x;
            p.y += q.y;
        }
        p
    }
}

/// Group punctures into overlap components.
pub fn units_of(region: &TriangularRegion, punctures: &[Puncture]) -> Vec<Unit> {
    let n = punctures.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if relate(&punctures[i], &punctures[j]) == Relation::Overlap {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut out = Vec::new();
    for root in 0..n {
        let members: Vec<Puncture> = (0..n)
            .filter(|&i| find(&mut comp, i) == root)
            .map(|i| punctures[i])
            .collect();
        if members.is_empty() {
            continue;
        }
        let generator = members
            .iter()
            .skip(1)
            .fold(members[0].generator, |g, p| g.gcd(&p.generator));
        out.push(Unit {
            generator,
            side: region.d() - generator.degree(),
            members,
        });
    }
    out.sort();
    out
}

/// All punctures grouped into units.
pub fn units(region: &TriangularRegion) -> Vec<Unit> {
    units_of(region, region.punctures())
}

/// Units whose centroid the cycle encloses.
pub fn enclosed_units(region: &TriangularRegion, cycle: &LozengeCycle) -> Vec<Unit> {
    units(region)
        .into_iter()
        .filter(|u| cycle.encloses(u.centroid3()))
        .collect()
}

/// Total side length of the enclosed punctures and covering regions.
pub fn e_count(region: &TriangularRegion, cycle: &LozengeCycle) -> u32 {
    enclosed_units(region, cycle).iter().map(|u| u.side).sum()
}

/// `(floating, non-floating)`.  Non-floating punctures touch the boundary or,
/// recursively, touch or overlap a non-floating puncture.
pub fn floating_punctures(region: &TriangularRegion) -> (Vec<Puncture>, Vec<Puncture>) {
    let ps = region.punctures();
    let mut anchored: Vec<bool> = ps.iter().map(Puncture::touches_boundary).collect();
    loop {
        let mut changed = false;
        for i in 0..ps.len() {
            if anchored[i] {
                continue;
            }
            if (0..ps.len()).any(|j| anchored[j] && relate(&ps[i], &ps[j]) != Relation::Disjoint) {
                anchored[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let floating = ps
        .iter()
        .zip(&anchored)
        .filter(|(_, a)| !**a)
        .map(|(p, _)| *p)
        .collect();
    let fixed = ps
        .iter()
        .zip(&anchored)
        .filter(|(_, a)| **a)
        .map(|(p, _)| *p)
        .collect();
    (floating, fixed)
}

/// Floating punctures grouped into units.
pub fn floating_units(region: &TriangularRegion) -> Vec<Unit> {
    units_of(region, &floating_punctures(region).0)
}

/// Present triangles below the unit generated by `g` and right of the line
/// through its upper-right edge.
pub fn shadow(region: &TriangularRegion, g: &Monomial) -> Subregion {
    let keep = |m: &&Monomial| m.a < g.a && m.b < g.b;
    Subregion {
        up: region.up().iter().filter(keep).copied().collect(),
        down: region.down().iter().filter(keep).copied().collect(),
    }
}

/// Punctures other than those of the unit that meet its shadow.
pub fn punctures_in_shadow(region: &TriangularRegion, unit: &Unit) -> Vec<Puncture> {
    let g = unit.generator;
    region
        .punctures()
        .iter()
        .filter(|p| !unit.members.contains(p))
        .filter(|p| p.generator.a < g.a && p.generator.b < g.b)
        .copied()
        .collect()
}

/// Which sufficient condition for all tilings having the same sign holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SameSign {
    /// Every floating puncture and covering region has even side.
    EvenFloating,
    /// Every floating unit with another puncture in its shadow has even side.
    ShadowCriterion,
    None,
}

impl SameSign {
    pub fn as_str(self) -> &'static str {
        match self {
            SameSign::EvenFloating => "even-floating",
            SameSign::ShadowCriterion => "shadow-criterion",
            SameSign::None => "none",
        }
    }

    pub fn guaranteed(self) -> bool {
        self != SameSign::None
    }
}

pub fn same_sign_guarantee(region: &TriangularRegion) -> SameSign {
    let units = floating_units(region);
    if units.iter().all(|u| u.side % 2 == 0) {
        SameSign::EvenFloating
    } else if units
        .iter()
        .filter(|u| !punctures_in_shadow(region, u).is_empty())
        .all(|u| u.side % 2 == 0)
    {
        SameSign::ShadowCriterion
    } else {
        SameSign::None
    }
}
