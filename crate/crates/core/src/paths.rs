//! The lattice `L(T)`, its start and end points, the path matrix `N(T)` and
//! the non-intersecting path family attached to a tiling.
//!
//! The vertex `v(m)` of `L(T)` sits on the upper-left edge of the up triangle
//! `m` (degree `d - 1`); the same edge is the right edge of the down triangle
//! `m / z` when `z | m`.  In plane coordinates `v(m) = (d - 1 - b, a)` and
//! every path step goes East `(+1, 0)` or South `(0, -1)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::monomial::{monomials_of_degree, Monomial, Var};
use crate::permutation;
use crate::region::TriangularRegion;
use crate::tiling::Tiling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub label: Monomial,
    pub u: i64,
    pub v: i64,
}

impl LatticePoint {
    pub fn of_label(d: u32, label: Monomial) -> LatticePoint {
        LatticePoint {
            label,
            u: i64::from(d - 1 - label.b),
            v: i64::from(label.a),
        }
    }

    pub fn coords(&self) -> (i64, i64) {
        (self.u, self.v)
    }
}

fn on_up(region: &TriangularRegion, m: &Monomial) -> bool {
    region.up().contains(m)
}

fn on_down(region: &TriangularRegion, m: &Monomial) -> bool {
    m.div_var(Var::Z)
        .is_some_and(|w| region.down().contains(&w))
}

/// Start points (on an up triangle only) and end points (on a down triangle
/// only), each sorted ascending in grevlex.
pub fn lattice_points(region: &TriangularRegion) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    let d = region.d();
    let mut labels = monomials_of_degree(d - 1);
    labels.reverse();
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    for m in labels {
        match (on_up(region, &m), on_down(region, &m)) {
            (true, false) => starts.push(LatticePoint::of_label(d, m)),
            (false, true) => ends.push(LatticePoint::of_label(d, m)),
            _ => {}
        }
    }
    (starts, ends)
}

/// All vertices of `L(T)`.
pub fn lattice_vertices(region: &TriangularRegion) -> BTreeSet<(i64, i64)> {
    let d = region.d();
    monomials_of_degree(d - 1)
        .into_iter()
        .filter(|m| on_up(region, m) || on_down(region, m))
        .map(|m| LatticePoint::of_label(d, m).coords())
        .collect()
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of East/South lattice paths from `from` to `to` in `Z^2`.
pub fn path_count(from: (i64, i64), to: (i64, i64)) -> BigInt {
    let (u, v) = from;
    let (x, y) = to;
    if x < u || v < y {
        return BigInt::zero();
    }
    let east = (x - u) as u64;
    let south = (v - y) as u64;
    binomial(east + south, east)
}

/// `N(T)`: entry `(i, j)` counts paths from `A_i` to `E_j`.
pub fn path_matrix(region: &TriangularRegion) -> IntMatrix {
    let (starts, ends) = lattice_points(region);
    let mut n = IntMatrix::zeros(starts.len(), ends.len());
    for (i, a) in starts.iter().enumerate() {
        for (j, e) in ends.iter().enumerate() {
            n.set(i, j, path_count(a.coords(), e.coords()));
        }
    }
    n
}

/// Vertex-disjoint paths with `paths[i]` running from `A_i` to `E_{lambda[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathFamily {
    pub paths: Vec<Vec<(i64, i64)>>,
    pub lambda: Vec<usize>,
}

impl PathFamily {
    pub fn sign(&self) -> i8 {
        permutation::sign(&self.lambda)
    }

    /// Every path takes all of its South steps before any East step.
    pub fn is_minimal(&self) -> bool {
        self.paths.iter().all(|p| {
            let mut seen_east = false;
            p.windows(2).all(|w| {
                let east = w[1].0 > w[0].0;
                if !east && seen_east {
                    return false;
                }
                seen_east |= east;
                true
            })
        })
    }
}

/// Connect the two lattice vertices of every lozenge that is not glued along
/// an upper-left edge, and read off the resulting paths.
pub fn tiling_to_paths(region: &TriangularRegion, tiling: &Tiling) -> Result<PathFamily> {
    let d = region.d();
    let (starts, ends) = lattice_points(region);
    let mut next: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    for l in tiling.lozenges() {
        let zd = l.down.times(Var::Z);
        if zd == l.up {
            continue;
        }
        let from = LatticePoint::of_label(d, l.up).coords();
        let to = LatticePoint::of_label(d, zd).coords();
        if next.insert(from, to).is_some() {
            return Err(Error::MalformedTiling(format!(
                "two segments leave {from:?}"
            )));
        }
    }
    let end_index: BTreeMap<(i64, i64), usize> = ends
        .iter()
        .enumerate()
        .map(|(j, e)| (e.coords(), j))
        .collect();
    let mut seen = BTreeSet::new();
    let mut paths = Vec::with_capacity(starts.len());
    let mut lambda = Vec::with_capacity(starts.len());
    let mut used_segments = 0;
    for a in &starts {
        let mut p = a.coords();
        let mut path = vec![p];
        if !seen.insert(p) {
            return Err(Error::MalformedTiling(format!(
                "vertex {p:?} is visited twice"
            )));
        }
        while let Some(&q) = next.get(&p) {
            used_segments += 1;
            if !seen.insert(q) {
                return Err(Error::MalformedTiling(format!(
                    "vertex {q:?} is visited twice"
                )));
            }
            path.push(q);
            p = q;
        }
        let j = *end_index.get(&p).ok_or_else(|| {
            Error::MalformedTiling(format!("path from {:?} stops at {p:?}", a.coords()))
        })?;
        paths.push(path);
        lambda.push(j);
    }
    if used_segments != next.len()
        || !permutation::is_permutation(&lambda)
        || lambda.len() != ends.len()
    {
        return Err(Error::MalformedTiling(
            "segments do not assemble into start-to-end paths".into(),
        ));
    }
    Ok(PathFamily { paths, lambda })
}

/// Lattice-path sign of a tiling.
pub fn lpsgn(region: &TriangularRegion, tiling: &Tiling) -> Result<i8> {
    tiling_to_paths(region, tiling).map(|f| f.sign())
}

/// Every family of pairwise vertex-disjoint East/South paths from the start
/// points to the end points.  With `within = Some(set)` paths may only use
/// vertices in `set`; otherwise they range over all of `Z^2`.
///
/// Exhaustive; intended for small instances.
pub fn non_intersecting_families(
    starts: &[(i64, i64)],
    ends: &[(i64, i64)],
    within: Option<&BTreeSet<(i64, i64)>>,
) -> Vec<PathFamily> {
    let mut out = Vec::new();
    if starts.len() != ends.len() {
        return out;
    }
    let mut used = BTreeSet::new();
    let mut taken = vec![false; ends.len()];
    let mut current: Vec<Vec<(i64, i64)>> = Vec::new();
    let mut lambda = Vec::new();
    families_rec(
        starts,
        ends,
        within,
        0,
        &mut used,
        &mut taken,
        &mut current,
        &mut lambda,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn families_rec(
    starts: &[(i64, i64)],
    ends: &[(i64, i64)],
    within: Option<&BTreeSet<(i64, i64)>>,
    i: usize,
    used: &mut BTreeSet<(i64, i64)>,
    taken: &mut Vec<bool>,
    current: &mut Vec<Vec<(i64, i64)>>,
    lambda: &mut Vec<usize>,
    out: &mut Vec<PathFamily>,
) {
    if i == starts.len() {
        out.push(PathFamily {
            paths: current.clone(),
            lambda: lambda.clone(),
        });
        return;
    }
    for j in 0..ends.len() {
        if taken[j] {
            continue;
        }
        let (a, e) = (starts[i], ends[j]);
        if e.0 < a.0 || e.1 > a.1 {
            continue;
        }
        let mut paths = Vec::new();
        let mut path = vec![a];
        simple_paths(a, e, within, used, &mut path, &mut paths);
        for p in paths {
            for q in &p {
                used.insert(*q);
            }
            taken[j] = true;
            current.push(p);
            lambda.push(j);
            families_rec(
                starts,
                ends,
                within,
                i + 1,
                used,
                taken,
                current,
                lambda,
                out,
            );
            lambda.pop();
            let p = current.pop().expect("pushed above");
            taken[j] = false;
            for q in &p {
                used.remove(q);
            }
        }
    }
}

fn simple_paths(
    at: (i64, i64),
    to: (i64, i64),
    within: Option<&BTreeSet<(i64, i64)>>,
    used: &BTreeSet<(i64, i64)>,
    path: &mut Vec<(i64, i64)>,
    out: &mut Vec<Vec<(i64, i64)>>,
) {
    let allowed = |p: &(i64, i64)| !used.contains(p) && within.is_none_or(|s| s.contains(p));
    if !allowed(&at) {
        return;
    }
    if at == to {
        out.push(path.clone());
        return;
    }
    for step in [(1, 0), (0, -1)] {
        let q = (at.0 + step.0, at.1 + step.1);
        if q.0 > to.0 || q.1 < to.1 {
            continue;
        }
        path.push(q);
        simple_paths(q, to, within, used, path, out);
        path.pop();
    }
}

/// `Σ sgn(λ)` over the non-intersecting families of [`non_intersecting_families`].
pub fn signed_family_count(
    starts: &[(i64, i64)],
    ends: &[(i64, i64)],
    within: Option<&BTreeSet<(i64, i64)>>,
) -> BigInt {
    non_intersecting_families(starts, ends, within)
        .iter()
        .map(|f| BigInt::from(f.sign()))
        .sum()
}
