//! Resolution of a puncture relative to a tiling.
//!
//! Three splitting chains run from the corners `A`, `B`, `C` of the puncture
//! (lower-left, lower-right, top) to the corners `O`, `P`, `Q` of the
//! ambient triangle.  Together with the puncture's edges they cut the
//! triangle into a left, a right and a bottom part.  In the triangle of side
//! `d + 2k` the parts are moved apart by the multipliers `x^k y^k`, `x^k z^k`
//! and `y^k z^k`; each chain opens into a corridor of width `k` and the
//! puncture becomes a hexagon of side `k`, both tiled in the forced way.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cycles::{floating_units, LozengeCycle, Unit};
use crate::error::{Error, Result};
use crate::geometry::{
    segment, triangle_with_vertices, winding_number, Direction, Edge, Point, Triangle,
};
use crate::monomial::{Monomial, Var};
use crate::region::{relate, Ideal, Puncture, Relation, TriangularRegion};
use crate::tiling::{Lozenge, Tiling};

/// Which splitting chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainKind {
    /// From `A` to the lower-left corner `O`.
    LowerLeft,
    /// From `B` to the lower-right corner `P`.
    LowerRight,
    /// From `C` to the top corner `Q`.
    Top,
}

impl ChainKind {
    pub const ALL: [ChainKind; 3] = [ChainKind::LowerLeft, ChainKind::LowerRight, ChainKind::Top];

    pub fn name(self) -> &'static str {
        match self {
            ChainKind::LowerLeft => "lower-left",
            ChainKind::LowerRight => "lower-right",
            ChainKind::Top => "top",
        }
    }

    pub fn preferred(self) -> [Direction; 2] {
        match self {
            ChainKind::LowerLeft => [Direction::SouthWest, Direction::West],
            ChainKind::LowerRight => [Direction::SouthEast, Direction::East],
            ChainKind::Top => [Direction::NorthEast, Direction::NorthWest],
        }
    }

    pub fn acceptable(self) -> [Direction; 2] {
        match self {
            ChainKind::LowerLeft => [Direction::NorthWest, Direction::SouthEast],
            ChainKind::LowerRight => [Direction::NorthEast, Direction::SouthWest],
            ChainKind::Top => [Direction::East, Direction::West],
        }
    }

    pub fn allows(self, dir: Direction) -> bool {
        self.preferred().contains(&dir) || self.acceptable().contains(&dir)
    }

    /// The part on the inner side of an outer-boundary edge walked by this
    /// chain, keyed by the boundary's zero exponent.
    fn part_beside_boundary(self, side: Var) -> Option<Part> {
        match (self, side) {
            (ChainKind::LowerLeft, Var::X) => Some(Part::Left),
            (ChainKind::LowerLeft, Var::Z) => Some(Part::Bottom),
            (ChainKind::LowerRight, Var::X) => Some(Part::Right),
            (ChainKind::LowerRight, Var::Y) => Some(Part::Bottom),
            (ChainKind::Top, Var::Z) => Some(Part::Right),
            (ChainKind::Top, Var::Y) => Some(Part::Left),
            _ => None,
        }
    }
}

/// One of the three pieces the chains cut the ambient triangle into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Left,
    Right,
    Bottom,
}

impl Part {
    pub fn multiplier(self, k: u32) -> Monomial {
        match self {
            Part::Left => Monomial::new(k, k, 0),
            Part::Right => Monomial::new(k, 0, k),
            Part::Bottom => Monomial::new(0, k, k),
        }
    }

    /// The boundary side (zero exponent) that survives the move.
    fn kept_side(self) -> Var {
        match self {
            Part::Left => Var::Z,
            Part::Right => Var::Y,
            Part::Bottom => Var::X,
        }
    }
}

/// Vertex sequences of the three splitting chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingChains {
    /// `A, …, O`.
    pub lower_left: Vec<Monomial>,
    /// `B, …, P`.
    pub lower_right: Vec<Monomial>,
    /// `C, …, Q`.
    pub top: Vec<Monomial>,
}

impl SplittingChains {
    pub fn chain(&self, kind: ChainKind) -> &[Monomial] {
        match kind {
            ChainKind::LowerLeft => &self.lower_left,
            ChainKind::LowerRight => &self.lower_right,
            ChainKind::Top => &self.top,
        }
    }

    fn chain_mut(&mut self, kind: ChainKind) -> &mut Vec<Monomial> {
        match kind {
            ChainKind::LowerLeft => &mut self.lower_left,
            ChainKind::LowerRight => &mut self.lower_right,
            ChainKind::Top => &mut self.top,
        }
    }

    /// Every unit edge on a chain.
    pub fn edges(&self) -> BTreeSet<Edge> {
        ChainKind::ALL
            .iter()
            .flat_map(|&k| self.chain(k).windows(2).map(|w| Edge::new(w[0], w[1])))
            .collect()
    }

    /// Number of moves in an acceptable (non-preferred) direction.
    pub fn acceptable_moves(&self, kind: ChainKind) -> usize {
        self.chain(kind)
            .windows(2)
            .filter(|w| {
                Direction::between(&w[0], &w[1]).is_some_and(|d| kind.acceptable().contains(&d))
            })
            .count()
    }
}

/// What to resolve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// A puncture, by generator, that no other puncture overlaps.
    Puncture(Monomial),
    /// The minimal covering region of two overlapping punctures.
    Covering(Monomial, Monomial),
}

/// The region and tiling actually being resolved, plus the resolved triangle.
#[derive(Clone, Debug)]
struct Prepared {
    region: TriangularRegion,
    tiling: Tiling,
    puncture: Puncture,
}

fn prepare(region: &TriangularRegion, tiling: &Tiling, target: Target) -> Result<Prepared> {
    match target {
        Target::Puncture(g) => {
            let p = region.puncture(&g).ok_or(Error::UnknownPuncture(g))?;
            if p.is_corner() {
                return Err(Error::CornerPuncture(g));
            }
            if let Some(q) = region.overlapping_partner(&p) {
                return Err(Error::Overlapped(g, q.generator));
            }
            Ok(Prepared {
                region: region.clone(),
                tiling: tiling.clone(),
                puncture: p,
            })
        }
        Target::Covering(g1, g2) => {
            let p1 = region.puncture(&g1).ok_or(Error::UnknownPuncture(g1))?;
            let p2 = region.puncture(&g2).ok_or(Error::UnknownPuncture(g2))?;
            if relate(&p1, &p2) != Relation::Overlap {
                return Err(Error::NotOverlapping(g1, g2));
            }
            // grow the covering region until nothing else overlaps it
            let mut u = g1.gcd(&g2);
            let (hat, p) = loop {
                if u.is_pure_power() {
                    return Err(Error::CornerPuncture(u));
                }
                let hat = region.without(&u)?;
                let p = hat
                    .puncture(&u)
                    .ok_or_else(|| Error::Internal(format!("{u} is not a puncture")))?;
                match hat.overlapping_partner(&p) {
                    Some(q) => u = u.gcd(&q.generator),
                    None => break (hat, p),
                }
            };
            let kept = tiling.restricted(|l| !u.divides(&l.down) && !u.divides(&l.up));
            let hat_tiling = Tiling::new(&hat, kept.lozenges()).map_err(|e| {
                Error::Internal(format!(
                    "tiling does not respect the covering region {u}: {e}"
                ))
            })?;
            Ok(Prepared {
                region: hat,
                tiling: hat_tiling,
                puncture: p,
            })
        }
    }
}

/// Search rules for splitting chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rules {
    /// Avoid touch points of anchored punctures and boundary edges whose
    /// puncture would lose its boundary contact.
    Strict,
    Relaxed,
}

struct ChainContext<'a> {
    region: &'a TriangularRegion,
    tiling: &'a Tiling,
    footprint: BTreeSet<Monomial>,
    touch_points: BTreeSet<Monomial>,
}

impl<'a> ChainContext<'a> {
    fn new(region: &'a TriangularRegion, tiling: &'a Tiling, p: &Puncture) -> Self {
        let (floating, _) = crate::cycles::floating_punctures(region);
        let anchored: Vec<&Puncture> = region
            .punctures()
            .iter()
            .filter(|q| !floating.contains(q))
            .collect();
        let mut touch_points = BTreeSet::new();
        for (i, a) in anchored.iter().enumerate() {
            for b in &anchored[i + 1..] {
                if relate(a, b) == Relation::Touch {
                    let va = a.footprint_vertices();
                    touch_points.extend(va.intersection(&b.footprint_vertices()).copied());
                }
            }
        }
        ChainContext {
            region,
            tiling,
            footprint: p.footprint_vertices(),
            touch_points,
        }
    }

    fn boundary_side(&self, e: &Edge) -> Option<Var> {
        Var::ALL
            .into_iter()
            .find(|&v| e.0.exponent(v) == 0 && e.1.exponent(v) == 0)
    }

    fn edge_ok(&self, kind: ChainKind, v: &Monomial, w: &Monomial, rules: Rules) -> bool {
        let Some(dir) = Direction::between(v, w) else {
            return false;
        };
        if !kind.allows(dir) {
            return false;
        }
        let e = Edge::new(*v, *w);
        if self.tiling.is_internal_edge(&e) {
            return false;
        }
        let (up, down) = e.triangles();
        let present = self.region.contains(&up) || down.is_some_and(|t| self.region.contains(&t));
        let side = self.boundary_side(&e);
        if !present && side.is_none() {
            return false;
        }
        if rules == Rules::Strict {
            if self.touch_points.contains(w) {
                return false;
            }
            if let Some(side) = side {
                if !self.region.contains(&up) {
                    let Some(part) = kind.part_beside_boundary(side) else {
                        return false;
                    };
                    let kept = part.kept_side();
                    let owners = self
                        .region
                        .punctures()
                        .iter()
                        .filter(|q| q.generator.divides(&up.label()));
                    for q in owners {
                        if q.generator.exponent(kept) != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Depth-first search with permanently marked vertices; moves are tried
/// preferred-first, repeating the previous direction first.
fn find_chain<R: Rng + ?Sized>(
    ctx: &ChainContext<'_>,
    kind: ChainKind,
    start: Monomial,
    goal: Monomial,
    blocked: &BTreeSet<Monomial>,
    rules: Rules,
    rng: &mut Option<&mut R>,
) -> Option<Vec<Monomial>> {
    let mut visited = BTreeSet::new();
    visited.insert(start);
    let mut path = vec![start];
    if dfs(
        ctx,
        kind,
        goal,
        blocked,
        rules,
        rng,
        &mut visited,
        &mut path,
        None,
    ) {
        Some(path)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs<R: Rng + ?Sized>(
    ctx: &ChainContext<'_>,
    kind: ChainKind,
    goal: Monomial,
    blocked: &BTreeSet<Monomial>,
    rules: Rules,
    rng: &mut Option<&mut R>,
    visited: &mut BTreeSet<Monomial>,
    path: &mut Vec<Monomial>,
    previous: Option<Direction>,
) -> bool {
    let v = *path.last().expect("nonempty path");
    if v == goal {
        return true;
    }
    let mut order: Vec<Direction> = kind
        .preferred()
        .into_iter()
        .chain(kind.acceptable())
        .collect();
    match rng {
        Some(r) => order.shuffle(*r),
        None => {
            if let Some(p) = previous {
                if let Some(i) = order[..2].iter().position(|d| *d == p) {
                    order.swap(0, i);
                } else if let Some(i) = order[2..].iter().position(|d| *d == p) {
                    order.swap(2, 2 + i);
                }
            }
        }
    }
    for dir in order {
        let Some(w) = dir.step(&v) else { continue };
        if visited.contains(&w) || blocked.contains(&w) || (ctx.footprint.contains(&w) && w != goal)
        {
            continue;
        }
        if !ctx.edge_ok(kind, &v, &w, rules) {
            continue;
        }
        visited.insert(w);
        path.push(w);
        if dfs(
            ctx,
            kind,
            goal,
            blocked,
            rules,
            rng,
            visited,
            path,
            Some(dir),
        ) {
            return true;
        }
        path.pop();
    }
    false
}

fn endpoints(d: u32, p: &Puncture, kind: ChainKind) -> (Monomial, Monomial) {
    let (a, b, c) = p.corners();
    match kind {
        ChainKind::LowerLeft => (a, Monomial::power(Var::Y, d)),
        ChainKind::LowerRight => (b, Monomial::power(Var::Z, d)),
        ChainKind::Top => (c, Monomial::power(Var::X, d)),
    }
}

const ORDERS: [[ChainKind; 3]; 6] = [
    [ChainKind::LowerLeft, ChainKind::LowerRight, ChainKind::Top],
    [ChainKind::LowerLeft, ChainKind::Top, ChainKind::LowerRight],
    [ChainKind::LowerRight, ChainKind::LowerLeft, ChainKind::Top],
    [ChainKind::LowerRight, ChainKind::Top, ChainKind::LowerLeft],
    [ChainKind::Top, ChainKind::LowerLeft, ChainKind::LowerRight],
    [ChainKind::Top, ChainKind::LowerRight, ChainKind::LowerLeft],
];

fn chains_in_order<R: Rng + ?Sized>(
    ctx: &ChainContext<'_>,
    p: &Puncture,
    order: &[ChainKind; 3],
    rules: Rules,
    rng: &mut Option<&mut R>,
) -> Option<SplittingChains> {
    let d = ctx.region.d();
    let mut blocked: BTreeSet<Monomial> = ChainKind::ALL
        .iter()
        .map(|&k| endpoints(d, p, k).0)
        .collect();
    let mut chains = SplittingChains {
        lower_left: Vec::new(),
        lower_right: Vec::new(),
        top: Vec::new(),
    };
    for &kind in order {
        let (start, goal) = endpoints(d, p, kind);
        blocked.remove(&start);
        let path = find_chain(ctx, kind, start, goal, &blocked, rules, rng)?;
        blocked.extend(path.iter().copied());
        *chains.chain_mut(kind) = path;
    }
    Some(chains)
}

/// Candidate chain triples in order of preference.
fn candidate_chains<R: Rng + ?Sized>(
    region: &TriangularRegion,
    tiling: &Tiling,
    p: &Puncture,
    rng: &mut Option<&mut R>,
) -> Vec<SplittingChains> {
    let ctx = ChainContext::new(region, tiling, p);
    let mut out: Vec<SplittingChains> = Vec::new();
    let mut orders: Vec<[ChainKind; 3]> = ORDERS.to_vec();
    if let Some(r) = rng {
        orders.shuffle(*r);
    }
    for rules in [Rules::Strict, Rules::Relaxed] {
        for order in &orders {
            if let Some(c) = chains_in_order(&ctx, p, order, rules, rng) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Deterministic splitting chains for the puncture with generator `g`; the
/// first candidate whose resolution succeeds.
pub fn splitting_chains(
    region: &TriangularRegion,
    tiling: &Tiling,
    g: &Monomial,
) -> Result<SplittingChains> {
    resolve(region, tiling, Target::Puncture(*g)).map(|r| r.chains)
}

/// A resolved region with its induced tiling and the data needed to follow
/// cycles through the resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// The region the construction ran on (`T`, or `T` minus the covering region).
    pub base: TriangularRegion,
    pub base_tiling: Tiling,
    /// The resolved puncture or covering region.
    pub puncture: Puncture,
    pub chains: SplittingChains,
    /// `T' ⊆ 𝒯_{d+2k}`.
    pub region: TriangularRegion,
    /// `τ'`.
    pub tiling: Tiling,
    parts: BTreeMap<Triangle, Part>,
    /// Corridor lozenges opened at each chain edge, keyed by the edge in `T`.
    corridor: BTreeMap<Edge, Vec<Lozenge>>,
}

/// A cycle followed through a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleImage {
    pub cycle: LozengeCycle,
    /// Number of times the cycle crosses a splitting chain.
    pub crossings: usize,
}

impl Resolution {
    pub fn side(&self) -> u32 {
        self.puncture.side
    }

    /// The part a present triangle of the base region belongs to.
    pub fn part_of(&self, t: &Triangle) -> Option<Part> {
        self.parts.get(t).copied()
    }

    /// Where a present triangle of the base region lands in `T'`.
    pub fn image(&self, t: &Triangle) -> Option<Triangle> {
        let m = self.part_of(t)?.multiplier(self.side());
        Some(match t {
            Triangle::Up(u) => Triangle::Up(u.mul(&m)),
            Triangle::Down(u) => Triangle::Down(u.mul(&m)),
        })
    }

    fn lozenge_image(&self, l: &Lozenge) -> Result<Lozenge> {
        match (
            self.image(&Triangle::Down(l.down)),
            self.image(&Triangle::Up(l.up)),
        ) {
            (Some(Triangle::Down(d)), Some(Triangle::Up(u))) => Lozenge::new(d, u)
                .ok_or_else(|| Error::Internal("lozenge torn apart by the chains".into())),
            _ => Err(Error::InvalidCycle(format!(
                "lozenge ({}, {}) is not in the region",
                l.down, l.up
            ))),
        }
    }

    /// Chain edges crossed by the cycle: the edges shared by the down
    /// triangle of one lozenge and the up triangle of the next.
    pub fn crossing_edges(&self, cycle: &LozengeCycle) -> Vec<Edge> {
        let edges = self.chains.edges();
        let ls = cycle.lozenges();
        (0..ls.len())
            .filter_map(|i| {
                let next = &ls[(i + 1) % ls.len()];
                Triangle::Down(ls[i].down).shared_edge(&Triangle::Up(next.up))
            })
            .filter(|e| edges.contains(e))
            .collect()
    }

    /// The cycle of `τ'` obtained by moving the lozenges of `cycle` and
    /// threading `k` corridor lozenges through every chain crossing.  A
    /// crossing at a chain step parallel to its corridor is threaded through
    /// the neighbouring corridor lozenges and counts once per `k` of them.
    pub fn cycle_image(&self, cycle: &LozengeCycle) -> Result<CycleImage> {
        let ls = cycle.lozenges();
        let n = ls.len();
        let mut out = Vec::with_capacity(n);
        let mut crossings = 0;
        for i in 0..n {
            let here = self.lozenge_image(&ls[i])?;
            out.push(here);
            let next = &ls[(i + 1) % n];
            let next_image = self.lozenge_image(next)?;
            let edge = Triangle::Down(ls[i].down)
                .shared_edge(&Triangle::Up(next.up))
                .ok_or_else(|| {
                    Error::InvalidCycle("consecutive lozenges are not adjacent".into())
                })?;
            if let Some(stack) = self.corridor.get(&edge) {
                crossings += 1;
                let mut pool: Vec<Lozenge> = stack.clone();
                let mut current = here.down;
                while !pool.is_empty() {
                    let j = pool
                        .iter()
                        .position(|c| Lozenge::new(current, c.up).is_some())
                        .ok_or_else(|| Error::Internal("corridor lozenges do not chain".into()))?;
                    let c = pool.remove(j);
                    out.push(c);
                    current = c.down;
                }
                if Lozenge::new(current, next_image.up).is_none() {
                    return Err(Error::Internal(
                        "corridor does not reconnect the cycle".into(),
                    ));
                }
            } else if Lozenge::new(here.down, next_image.up).is_none() {
                // a chain step parallel to the sweep: thread through the
                // neighbouring corridor lozenges
                let path = self.corridor_path(here.down, next_image.up)?;
                let k = self.side() as usize;
                if path.len() % k != 0 {
                    return Err(Error::Internal(
                        "corridor detour is not a whole number of passes".into(),
                    ));
                }
                crossings += path.len() / k;
                out.extend(path);
            }
        }
        let cycle = LozengeCycle::new(out)?;
        Ok(CycleImage { cycle, crossings })
    }

    /// Shortest run of corridor lozenges of `τ'` leading from the down
    /// triangle `from` to a down triangle adjacent to the up triangle `to`.
    fn corridor_path(&self, from: Monomial, to: Monomial) -> Result<Vec<Lozenge>> {
        let moved: BTreeSet<Lozenge> = self
            .base_tiling
            .lozenges()
            .filter_map(|l| self.lozenge_image(&l).ok())
            .collect();
        // down triangle -> (previous down triangle, lozenge reached through)
        let mut prev: BTreeMap<Monomial, Option<(Monomial, Lozenge)>> = BTreeMap::new();
        prev.insert(from, None);
        let mut queue = VecDeque::from([from]);
        while let Some(down) = queue.pop_front() {
            if Lozenge::new(down, to).is_some() {
                let mut path = Vec::new();
                let mut at = down;
                while let Some(Some((back, l))) = prev.get(&at) {
                    path.push(*l);
                    at = *back;
                }
                path.reverse();
                return Ok(path);
            }
            for v in Var::ALL {
                let up = down.times(v);
                let Some(partner) = self.tiling.down_of(&up) else {
                    continue;
                };
                let Some(l) = Lozenge::new(partner, up) else {
                    continue;
                };
                if moved.contains(&l) || prev.contains_key(&partner) {
                    continue;
                }
                prev.insert(partner, Some((down, l)));
                queue.push_back(partner);
            }
        }
        Err(Error::Internal(
            "corridor does not reconnect the cycle".into(),
        ))
    }

    /// Chains for resolving the twist of `cycle`: every crossed chain edge is
    /// replaced by an acceptable move followed by a preferred move around one
    /// of the two triangles meeting at it.  Fails when a crossed step has no
    /// such detour, which happens for steps parallel to their corridor.
    pub fn twist_adjusted_chains(&self, cycle: &LozengeCycle) -> Result<SplittingChains> {
        let ls = cycle.lozenges();
        let n = ls.len();
        let mut crossing: BTreeMap<Edge, [Triangle; 2]> = BTreeMap::new();
        for i in 0..n {
            let a = Triangle::Down(ls[i].down);
            let b = Triangle::Up(ls[(i + 1) % n].up);
            if let Some(e) = a.shared_edge(&b) {
                crossing.insert(e, [a, b]);
            }
        }
        let mut chains = self.chains.clone();
        for kind in ChainKind::ALL {
            let old = self.chains.chain(kind);
            let mut new = vec![old[0]];
            for w in old.windows(2) {
                let (v, u) = (w[0], w[1]);
                if let Some(tris) = crossing.get(&Edge::new(v, u)) {
                    let detour = tris.iter().find_map(|t| {
                        let x = t.vertices().into_iter().find(|x| *x != v && *x != u)?;
                        let d1 = Direction::between(&v, &x)?;
                        let d2 = Direction::between(&x, &u)?;
                        (kind.acceptable().contains(&d1) && kind.preferred().contains(&d2))
                            .then_some(x)
                    });
                    let x = detour.ok_or_else(|| {
                        Error::Internal(format!(
                            "no acceptable-then-preferred detour on the {} chain",
                            kind.name()
                        ))
                    })?;
                    new.push(x);
                }
                new.push(u);
            }
            *chains.chain_mut(kind) = new;
        }
        Ok(chains)
    }
}

/// Resolve with deterministically chosen splitting chains.
pub fn resolve(region: &TriangularRegion, tiling: &Tiling, target: Target) -> Result<Resolution> {
    resolve_inner::<dyn rand::RngCore>(region, tiling, target, None)
}

/// Resolve with splitting chains drawn by a randomized admissible search.
pub fn resolve_random<R: Rng + ?Sized>(
    region: &TriangularRegion,
    tiling: &Tiling,
    target: Target,
    rng: &mut R,
) -> Result<Resolution> {
    resolve_inner(region, tiling, target, Some(rng))
}

fn resolve_inner<R: Rng + ?Sized>(
    region: &TriangularRegion,
    tiling: &Tiling,
    target: Target,
    mut rng: Option<&mut R>,
) -> Result<Resolution> {
    let prep = prepare(region, tiling, target)?;
    let candidates = candidate_chains(&prep.region, &prep.tiling, &prep.puncture, &mut rng);
    if candidates.is_empty() {
        return Err(Error::NoChain("splitting"));
    }
    let mut last = None;
    for chains in candidates {
        match build(&prep, chains) {
            Ok(r) => return Ok(r),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::NoChain("splitting")))
}

/// Resolve along the given chains, which are checked against the relaxed
/// admissibility rules.
pub fn resolve_with_chains(
    region: &TriangularRegion,
    tiling: &Tiling,
    target: Target,
    chains: SplittingChains,
) -> Result<Resolution> {
    let prep = prepare(region, tiling, target)?;
    check_chains(&prep, &chains)?;
    build(&prep, chains)
}

fn check_chains(prep: &Prepared, chains: &SplittingChains) -> Result<()> {
    let ctx = ChainContext::new(&prep.region, &prep.tiling, &prep.puncture);
    let d = prep.region.d();
    let mut all = BTreeSet::new();
    for kind in ChainKind::ALL {
        let c = chains.chain(kind);
        let (start, goal) = endpoints(d, &prep.puncture, kind);
        if c.first() != Some(&start) || c.last() != Some(&goal) {
            return Err(Error::NoChain(kind.name()));
        }
        for (i, v) in c.iter().enumerate() {
            if !all.insert(*v) || (i > 0 && ctx.footprint.contains(v) && *v != goal) {
                return Err(Error::NoChain(kind.name()));
            }
        }
        if !c
            .windows(2)
            .all(|w| ctx.edge_ok(kind, &w[0], &w[1], Rules::Relaxed))
        {
            return Err(Error::NoChain(kind.name()));
        }
    }
    Ok(())
}

fn join(pieces: &[&[Monomial]]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for piece in pieces {
        for v in *piece {
            if out.last() != Some(v) {
                out.push(*v);
            }
        }
    }
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn polygon(vertices: &[Monomial]) -> Vec<Point> {
    vertices.iter().map(Point::of_vertex3).collect()
}

fn rev(v: &[Monomial]) -> Vec<Monomial> {
    v.iter().rev().copied().collect()
}

fn seg(from: &Monomial, dir: Direction, k: u32) -> Result<Vec<Monomial>> {
    segment(from, dir, k).ok_or_else(|| Error::Internal("segment leaves the lattice".into()))
}

fn scale(v: &[Monomial], m: &Monomial) -> Vec<Monomial> {
    v.iter().map(|x| x.mul(m)).collect()
}

/// Unit lozenge spanned by the edge `v w` and the unit translation `dir`.
fn rhombus(v: &Monomial, w: &Monomial, dir: Direction) -> Result<Lozenge> {
    let bad = || Error::Internal(String::from("corridor rhombus leaves the lattice"));
    let v1 = dir.step(v).ok_or_else(bad)?;
    let w1 = dir.step(w).ok_or_else(bad)?;
    let (t1, t2) = if Direction::between(w, &v1).is_some() {
        (
            triangle_with_vertices(v, w, &v1),
            triangle_with_vertices(w, &w1, &v1),
        )
    } else {
        (
            triangle_with_vertices(v, w, &w1),
            triangle_with_vertices(v, &w1, &v1),
        )
    };
    match (t1.ok_or_else(bad)?, t2.ok_or_else(bad)?) {
        (Triangle::Up(u), Triangle::Down(d)) | (Triangle::Down(d), Triangle::Up(u)) => {
            Lozenge::new(d, u).ok_or_else(bad)
        }
        _ => Err(bad()),
    }
}

/// Sweep the polyline `chain` by `k` unit steps in `dir`.  Returns, for each
/// edge not parallel to `dir`, its `k` lozenges.
fn sweep(chain: &[Monomial], dir: Direction, k: u32) -> Result<Vec<(usize, Vec<Lozenge>)>> {
    let mut out = Vec::new();
    for (i, w) in chain.windows(2).enumerate() {
        let step = Direction::between(&w[0], &w[1])
            .ok_or_else(|| Error::Internal("chain is not connected".into()))?;
        if step == dir || step == dir.opposite() {
            continue;
        }
        let mut stack = Vec::with_capacity(k as usize);
        for j in 0..k {
            let v = dir
                .step_by(&w[0], j)
                .ok_or_else(|| Error::Internal("sweep leaves the lattice".into()))?;
            let u = dir
                .step_by(&w[1], j)
                .ok_or_else(|| Error::Internal("sweep leaves the lattice".into()))?;
            stack.push(rhombus(&v, &u, dir)?);
        }
        out.push((i, stack));
    }
    Ok(out)
}

fn build(prep: &Prepared, chains: SplittingChains) -> Result<Resolution> {
    let region = &prep.region;
    let tiling = &prep.tiling;
    let p = prep.puncture;
    let d = region.d();
    let k = p.side;
    let (_, b, c) = p.corners();
    let o = Monomial::power(Var::Y, d);
    let pp = Monomial::power(Var::Z, d);

    let left = join(&[
        &seg(&o, Direction::NorthEast, d)?,
        &rev(&chains.top),
        &seg(&c, Direction::SouthWest, k)?,
        &chains.lower_left,
    ]);
    let right = join(&[
        &seg(&pp, Direction::NorthWest, d)?,
        &rev(&chains.top),
        &seg(&c, Direction::SouthEast, k)?,
        &chains.lower_right,
    ]);
    let bottom = join(&[
        &seg(&o, Direction::East, d)?,
        &rev(&chains.lower_right),
        &seg(&b, Direction::West, k)?,
        &chains.lower_left,
    ]);
    let polys = [
        (Part::Left, polygon(&left)),
        (Part::Right, polygon(&right)),
        (Part::Bottom, polygon(&bottom)),
    ];
    let locate = |p3: Point| -> Result<Part> {
        let inside: Vec<Part> = polys
            .iter()
            .filter(|(_, poly)| winding_number(poly, p3) != 0)
            .map(|(part, _)| *part)
            .collect();
        match inside.as_slice() {
            [part] => Ok(*part),
            _ => Err(Error::Internal(format!(
                "point {p3:?} lies in {} parts",
                inside.len()
            ))),
        }
    };

    let mut parts = BTreeMap::new();
    for t in region
        .up()
        .iter()
        .map(|m| Triangle::Up(*m))
        .chain(region.down().iter().map(|m| Triangle::Down(*m)))
    {
        parts.insert(t, locate(t.centroid3())?);
    }

    let mut lozenges: Vec<Lozenge> = Vec::new();
    for l in tiling.lozenges() {
        let pd = parts[&Triangle::Down(l.down)];
        let pu = parts[&Triangle::Up(l.up)];
        if pd != pu {
            return Err(Error::Internal(
                "a lozenge straddles a splitting chain".into(),
            ));
        }
        let m = pd.multiplier(k);
        lozenges.push(Lozenge {
            down: l.down.mul(&m),
            up: l.up.mul(&m),
        });
    }

    let mut gens: Vec<Monomial> = Vec::new();
    for h in region
        .punctures()
        .iter()
        .filter(|h| h.generator != p.generator)
    {
        let unit = Unit {
            generator: h.generator,
            side: h.side,
            members: vec![*h],
        };
        let part = locate(unit.centroid3())?;
        gens.push(h.generator.mul(&part.multiplier(k)));
    }
    // generators of degree >= d never cut anything; keep them out of sight
    let big = d + 2 * k;
    for v in Var::ALL {
        gens.push(Monomial::power(v, d + k));
    }

    let lift = Part::Left.multiplier(k);
    let right_lift = Part::Right.multiplier(k);
    let mut corridor: BTreeMap<Edge, Vec<Lozenge>> = BTreeMap::new();

    // top: P's right edge then the top chain, swept East
    let top_path = join(&[&seg(&b, Direction::NorthWest, k)?, &chains.top]);
    let top_edges_offset = k as usize;
    for (i, stack) in sweep(&scale(&top_path, &lift), Direction::East, k)? {
        if i >= top_edges_offset {
            let j = i - top_edges_offset;
            corridor.insert(Edge::new(chains.top[j], chains.top[j + 1]), stack.clone());
        }
        lozenges.extend(stack);
    }
    // lower-left: P's left edge then the lower-left chain, swept Southeast
    let ll_path = join(&[&seg(&c, Direction::SouthWest, k)?, &chains.lower_left]);
    for (i, stack) in sweep(&scale(&ll_path, &lift), Direction::SouthEast, k)? {
        if i >= k as usize {
            let j = i - k as usize;
            corridor.insert(
                Edge::new(chains.lower_left[j], chains.lower_left[j + 1]),
                stack.clone(),
            );
        }
        lozenges.extend(stack);
    }
    // lower-right: from B (left copy) East to B' (right copy), then the
    // lower-right chain, swept Southwest
    let b_left = b.mul(&lift);
    let lr_path = join(&[
        &seg(&b_left, Direction::East, k)?,
        &scale(&chains.lower_right, &right_lift),
    ]);
    for (i, stack) in sweep(&lr_path, Direction::SouthWest, k)? {
        if i >= k as usize {
            let j = i - k as usize;
            corridor.insert(
                Edge::new(chains.lower_right[j], chains.lower_right[j + 1]),
                stack.clone(),
            );
        }
        lozenges.extend(stack);
    }

    let new_region = TriangularRegion::new(big, Ideal::minimalize(gens))?;
    let new_tiling = Tiling::new(&new_region, lozenges).map_err(|e| {
        Error::Internal(format!("resolution does not tile a triangular region: {e}"))
    })?;
    Ok(Resolution {
        base: region.clone(),
        base_tiling: tiling.clone(),
        puncture: p,
        chains,
        region: new_region,
        tiling: new_tiling,
        parts,
        corridor,
    })
}

/// Resolve floating punctures one at a time until none is left.  Each step
/// picks the floating puncture or covering region covering the least up
/// triangle.
pub fn resolve_floating(region: &TriangularRegion, tiling: &Tiling) -> Result<Vec<Resolution>> {
    let mut steps = Vec::new();
    let mut current = (region.clone(), tiling.clone());
    loop {
        let units = floating_units(&current.0);
        let before: usize = units.iter().map(|u| u.members.len()).sum();
        let Some(unit) = units
            .iter()
            .min_by_key(|u| u.generator.mul(&Monomial::power(Var::Z, u.side - 1)))
        else {
            return Ok(steps);
        };
        let target = match unit.members.as_slice() {
            [p] => Target::Puncture(p.generator),
            [p, q] => Target::Covering(p.generator, q.generator),
            _ => {
                return Err(Error::Internal(
                    "more than two overlapping floating punctures".into(),
                ))
            }
        };
        let r = resolve(&current.0, &current.1, target)?;
        let after: usize = floating_units(&r.region)
            .iter()
            .map(|u| u.members.len())
            .sum();
        if after >= before {
            return Err(Error::Internal(
                "resolution did not reduce the floating punctures".into(),
            ));
        }
        current = (r.region.clone(), r.tiling.clone());
        steps.push(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_tilings;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn region(d: u32, gens: &[&str]) -> TriangularRegion {
        TriangularRegion::new(d, Ideal::minimalize(gens.iter().map(|s| m(s)))).unwrap()
    }

    #[test]
    fn resolve_interior_unit_puncture() {
        let t = region(8, &["x^7", "y^7", "z^6", "xy^4z^2", "x^3yz^2", "x^4yz"]);
        let tau = enumerate_tilings(&t).next().unwrap();
        let r = resolve(&t, &tau, Target::Puncture(m("xy^4z^2"))).unwrap();
        assert_eq!(r.region.d(), 10);
        for g in ["x^9", "y^9", "z^9"] {
            assert!(r.region.ideal().contains(&m(g)));
        }
        assert!(r.region.is_balanced());
    }

    #[test]
    fn resolve_covering_region() {
        let t = region(8, &["x^7", "y^7", "z^6", "xy^4z^2", "x^3yz^2", "x^4yz"]);
        let tau = enumerate_tilings(&t).next().unwrap();
        let r = resolve(&t, &tau, Target::Covering(m("x^3yz^2"), m("x^4yz"))).unwrap();
        assert_eq!(r.region.d(), 14);
        assert_eq!(r.side(), 3);
    }

    #[test]
    fn contract_errors() {
        let t = region(8, &["x^7", "y^7", "z^6", "xy^4z^2", "x^3yz^2", "x^4yz"]);
        let tau = enumerate_tilings(&t).next().unwrap();
        assert_eq!(
            resolve(&t, &tau, Target::Puncture(m("x^7"))).unwrap_err(),
            Error::CornerPuncture(m("x^7"))
        );
        assert!(matches!(
            resolve(&t, &tau, Target::Puncture(m("x^3yz^2"))),
            Err(Error::Overlapped(..))
        ));
        assert!(matches!(
            resolve(&t, &tau, Target::Puncture(m("xyz"))),
            Err(Error::UnknownPuncture(_))
        ));
    }

    #[test]
    fn unobstructed_chains_are_straight() {
        let t = region(5, &["xyz"]);
        // not balanced, but chains do not care; use a tileable cousin instead
        let t2 = region(5, &["x^4", "y^4", "xyz"]);
        let _ = t;
        if let Some(tau) = enumerate_tilings(&t2).next() {
            let r = resolve(&t2, &tau, Target::Puncture(m("xyz"))).unwrap();
            for kind in ChainKind::ALL {
                assert_eq!(r.chains.acceptable_moves(kind), 0);
            }
        }
    }
}
