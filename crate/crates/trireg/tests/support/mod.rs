//! Independent oracles.  Everything here works on raw exponent triples and
//! generator lists; nothing is taken from the library beyond the inputs.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

pub type Mono = (u32, u32, u32);

pub fn mono(m: &trireg_core::Monomial) -> Mono {
    (m.a, m.b, m.c)
}

pub fn divides(g: Mono, m: Mono) -> bool {
    g.0 <= m.0 && g.1 <= m.1 && g.2 <= m.2
}

pub fn of_degree(deg: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg - a {
            out.push((a, b, deg - a - b));
        }
    }
    out
}

/// Present up and down triangles of `T_d(gens)`.
pub fn triangles(d: u32, gens: &[Mono]) -> (BTreeSet<Mono>, BTreeSet<Mono>) {
    let keep = |m: &Mono| !gens.iter().any(|g| divides(*g, *m));
    let up = of_degree(d - 1).into_iter().filter(keep).collect();
    let down = if d >= 2 {
        of_degree(d - 2).into_iter().filter(keep).collect()
    } else {
        BTreeSet::new()
    };
    (up, down)
}

pub fn neighbours(m: Mono) -> [Mono; 3] {
    [
        (m.0 + 1, m.1, m.2),
        (m.0, m.1 + 1, m.2),
        (m.0, m.1, m.2 + 1),
    ]
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(p: Mono, q: Mono) -> Ordering {
    let (dp, dq) = (p.0 + p.1 + p.2, q.0 + q.1 + q.2);
    if dp != dq {
        return dp.cmp(&dq);
    }
    for (x, y) in [(p.2, q.2), (p.1, q.1), (p.0, q.0)] {
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

/// Z(T): rows are down triangles, columns up triangles, both in descending
/// lexicographic order.
pub fn z_matrix(d: u32, gens: &[Mono]) -> (Vec<Mono>, Vec<Mono>, Vec<Vec<i128>>) {
    let (up, down) = triangles(d, gens);
    let mut rows: Vec<Mono> = down.into_iter().collect();
    let mut cols: Vec<Mono> = up.into_iter().collect();
    rows.sort_by(|a, b| b.cmp(a));
    cols.sort_by(|a, b| b.cmp(a));
    let m = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| i128::from(neighbours(*r).contains(c)))
                .collect()
        })
        .collect();
    (rows, cols, m)
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

pub type Points = Vec<(i64, i64)>;

/// Start points, end points (lattice coordinates) and N(T).
pub fn n_matrix(d: u32, gens: &[Mono]) -> (Points, Points, Vec<Vec<i128>>) {
    let (up, down) = triangles(d, gens);
    let mut a = Vec::new();
    let mut e = Vec::new();
    for m in of_degree(d - 1) {
        let on_up = up.contains(&m);
        let on_down = m.2 > 0 && down.contains(&(m.0, m.1, m.2 - 1));
        if on_up && !on_down {
            a.push(m);
        }
        if on_down && !on_up {
            e.push(m);
        }
    }
    a.sort_by(|p, q| grevlex(*p, *q));
    e.sort_by(|p, q| grevlex(*p, *q));
    let co = |m: &Mono| (i64::from(d - 1 - m.1), i64::from(m.0));
    let starts: Vec<_> = a.iter().map(co).collect();
    let ends: Vec<_> = e.iter().map(co).collect();
    let m = starts
        .iter()
        .map(|&(u, v)| {
            ends.iter()
                .map(|&(x, y)| {
                    if x >= u && v >= y {
                        binom(x - u + v - y, x - u)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    (starts, ends, m)
}

/// Fraction-free elimination over `i128`.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn perm_sign(p: &[usize]) -> i8 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All tilings as maps down → up, by plain backtracking over downs.
pub fn tilings(d: u32, gens: &[Mono]) -> Vec<BTreeMap<Mono, Mono>> {
    let (up, down) = triangles(d, gens);
    if up.len() != down.len() {
        return Vec::new();
    }
    let downs: Vec<Mono> = down.into_iter().collect();
    let mut out = Vec::new();
    let mut used = BTreeSet::new();
    let mut cur = BTreeMap::new();
    fn rec(
        i: usize,
        downs: &[Mono],
        up: &BTreeSet<Mono>,
        used: &mut BTreeSet<Mono>,
        cur: &mut BTreeMap<Mono, Mono>,
        out: &mut Vec<BTreeMap<Mono, Mono>>,
    ) {
        if i == downs.len() {
            out.push(cur.clone());
            return;
        }
        for w in neighbours(downs[i]) {
            if up.contains(&w) && used.insert(w) {
                cur.insert(downs[i], w);
                rec(i + 1, downs, up, used, cur, out);
                cur.remove(&downs[i]);
                used.remove(&w);
            }
        }
    }
    rec(0, &downs, &up, &mut used, &mut cur, &mut out);
    out
}

/// Size of a maximum matching of G(T) by augmenting paths.
pub fn max_matching(d: u32, gens: &[Mono]) -> usize {
    let (up, down) = triangles(d, gens);
    let downs: Vec<Mono> = down.into_iter().collect();
    let mut owner: BTreeMap<Mono, usize> = BTreeMap::new();
    fn augment(
        i: usize,
        downs: &[Mono],
        up: &BTreeSet<Mono>,
        seen: &mut BTreeSet<Mono>,
        owner: &mut BTreeMap<Mono, usize>,
    ) -> bool {
        for w in neighbours(downs[i]) {
            if !up.contains(&w) || !seen.insert(w) {
                continue;
            }
            let free = match owner.get(&w) {
                None => true,
                Some(&j) => augment(j, downs, up, seen, owner),
            };
            if free {
                owner.insert(w, i);
                return true;
            }
        }
        false
    }
    (0..downs.len())
        .filter(|&i| augment(i, &downs, &up, &mut BTreeSet::new(), &mut owner))
        .count()
}

/// `Σ sgn(λ)` over vertex-disjoint East/South path families in `Z²`.
pub fn lgv_signed_count(starts: &[(i64, i64)], ends: &[(i64, i64)]) -> i128 {
    fn paths(
        from: (i64, i64),
        to: (i64, i64),
        used: &BTreeSet<(i64, i64)>,
        cur: &mut Vec<(i64, i64)>,
        out: &mut Vec<Vec<(i64, i64)>>,
    ) {
        if used.contains(&from) {
            return;
        }
        cur.push(from);
        if from == to {
            out.push(cur.clone());
        } else {
            if from.0 < to.0 {
                paths((from.0 + 1, from.1), to, used, cur, out);
            }
            if from.1 > to.1 {
                paths((from.0, from.1 - 1), to, used, cur, out);
            }
        }
        cur.pop();
    }
    fn rec(
        i: usize,
        starts: &[(i64, i64)],
        ends: &[(i64, i64)],
        used: &mut BTreeSet<(i64, i64)>,
        lambda: &mut Vec<usize>,
        total: &mut i128,
    ) {
        if i == starts.len() {
            *total += i128::from(perm_sign(lambda));
            return;
        }
        for j in 0..ends.len() {
            if lambda.contains(&j) {
                continue;
            }
            let mut found = Vec::new();
            paths(starts[i], ends[j], used, &mut Vec::new(), &mut found);
            for p in found {
                for v in &p {
                    used.insert(*v);
                }
                lambda.push(j);
                rec(i + 1, starts, ends, used, lambda, total);
                lambda.pop();
                for v in &p {
                    used.remove(v);
                }
            }
        }
    }
    if starts.len() != ends.len() {
        return 0;
    }
    let mut total = 0;
    rec(
        0,
        starts,
        ends,
        &mut BTreeSet::new(),
        &mut Vec::new(),
        &mut total,
    );
    total
}

/// Plane partitions in an `a × b × c` box.
pub fn macmahon(a: u32, b: u32, c: u32) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= u128::from(i + j + k - 1);
                den *= u128::from(i + j + k - 2);
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
    }
    assert_eq!(den, 1);
    num
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Twice-scaled planar position (x, y) of a lattice vertex.
fn point(v: Mono) -> (i64, i64) {
    (2 * i64::from(v.2) + i64::from(v.0), i64::from(v.0))
}

/// Centroid of the up triangle `m` (scaled by 3), or the down triangle if `down`.
pub fn centroid3(m: Mono, down: bool) -> (i64, i64) {
    let verts: [Mono; 3] = if down {
        [
            (m.0 + 1, m.1 + 1, m.2),
            (m.0 + 1, m.1, m.2 + 1),
            (m.0, m.1 + 1, m.2 + 1),
        ]
    } else {
        [
            (m.0 + 1, m.1, m.2),
            (m.0, m.1 + 1, m.2),
            (m.0, m.1, m.2 + 1),
        ]
    };
    verts
        .iter()
        .map(|v| point(*v))
        .fold((0, 0), |acc, p| (acc.0 + p.0, acc.1 + p.1))
}

/// Even-odd ray casting; `poly` and `p` share one scale.
pub fn inside(poly: &[(i64, i64)], p: (i64, i64)) -> bool {
    // shift the probe off lattice lines by working at doubled scale plus one
    let (px, py) = (2 * p.0 + 1, 2 * p.1 + 1);
    let mut c = false;
    for i in 0..poly.len() {
        let (x1, y1) = (2 * poly[i].0, 2 * poly[i].1);
        let j = (i + 1) % poly.len();
        let (x2, y2) = (2 * poly[j].0, 2 * poly[j].1);
        if (y1 > py) != (y2 > py) {
            // x-coordinate of the crossing compared with px, without division
            let lhs = (px - x1) * (y2 - y1);
            let rhs = (x2 - x1) * (py - y1);
            if (y2 > y1 && lhs < rhs) || (y2 < y1 && lhs > rhs) {
                c = !c;
            }
        }
    }
    c
}
