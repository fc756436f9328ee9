//! Lattice geometry of the ambient triangle.
//!
//! A lattice vertex of the side-`d` triangle is a monomial of degree `d`; its
//! exponents `(a, b, c)` are its distances from the bottom edge, the
//! upper-right edge and the upper-left edge.  For orientation-only questions
//! (winding numbers, rendering) a vertex is mapped to the affine point
//! `(2c + a, a)`, which is the Euclidean point `(c + a/2, a·√3/2)` with the
//! axes stretched by `2` and `2/√3`.

use alloc::vec::Vec;

use crate::monomial::{Monomial, Var};

/// A unit triangle, identified by its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Triangle {
    Up(Monomial),
    Down(Monomial),
}

impl Triangle {
    pub fn label(&self) -> Monomial {
        match *self {
            Triangle::Up(m) | Triangle::Down(m) => m,
        }
    }

    pub fn is_up(&self) -> bool {
        matches!(self, Triangle::Up(_))
    }

    /// Corner vertices; they have degree `deg(label) + 1` (up) or `+ 2` (down).
    pub fn vertices(&self) -> [Monomial; 3] {
        match *self {
            Triangle::Up(m) => [m.times(Var::X), m.times(Var::Y), m.times(Var::Z)],
            Triangle::Down(m) => [
                m.times(Var::X).times(Var::Y),
                m.times(Var::X).times(Var::Z),
                m.times(Var::Y).times(Var::Z),
            ],
        }
    }

    /// Three times the centroid in affine coordinates.
    pub fn centroid3(&self) -> Point {
        let mut p = Point { x: 0, y: 0 };
        for v in self.vertices() {
            let q = Point::of_vertex(&v);
            p.x += q.x;
            p.y += q.y;
        }
        p
    }

    /// Whether `self` and `other` share an edge.
    pub fn adjacent(&self, other: &Triangle) -> bool {
        match (*self, *other) {
            (Triangle::Up(u), Triangle::Down(d)) | (Triangle::Down(d), Triangle::Up(u)) => {
                Var::ALL.iter().any(|&v| d.times(v) == u)
            }
            _ => false,
        }
    }

    /// The shared edge of two adjacent triangles.
    pub fn shared_edge(&self, other: &Triangle) -> Option<Edge> {
        if !self.adjacent(other) {
            return None;
        }
        let mine = self.vertices();
        let theirs = other.vertices();
        let mut common = mine.iter().filter(|v| theirs.contains(v));
        let p = *common.next()?;
        let q = *common.next()?;
        Some(Edge::new(p, q))
    }
}

/// An undirected unit edge between two lattice vertices (stored sorted).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub Monomial, pub Monomial);

impl Edge {
    pub fn new(p: Monomial, q: Monomial) -> Self {
        if p <= q {
            Edge(p, q)
        } else {
            Edge(q, p)
        }
    }

    /// The up and (if it exists) down triangle of the full lattice that contain
    /// this edge.
    pub fn triangles(&self) -> (Triangle, Option<Triangle>) {
        let g = self.0.gcd(&self.1);
        let missing = Var::ALL
            .into_iter()
            .find(|&v| self.0.exponent(v) == g.exponent(v) && self.1.exponent(v) == g.exponent(v))
            .expect("unit edge spans two variables");
        (Triangle::Up(g), g.div_var(missing).map(Triangle::Down))
    }
}

/// The six lattice directions, as seen on the page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    East,
    West,
    NorthEast,
    SouthWest,
    NorthWest,
    SouthEast,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::East,
        Direction::NorthEast,
        Direction::NorthWest,
        Direction::West,
        Direction::SouthWest,
        Direction::SouthEast,
    ];

    /// Exponent change `(da, db, dc)` of a unit step.
    pub fn delta(self) -> [i64; 3] {
        match self {
            Direction::East => [0, -1, 1],
            Direction::West => [0, 1, -1],
            Direction::NorthEast => [1, -1, 0],
            Direction::SouthWest => [-1, 1, 0],
            Direction::NorthWest => [1, 0, -1],
            Direction::SouthEast => [-1, 0, 1],
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::East => Direction::West,
            Direction::West => Direction::East,
            Direction::NorthEast => Direction::SouthWest,
            Direction::SouthWest => Direction::NorthEast,
            Direction::NorthWest => Direction::SouthEast,
            Direction::SouthEast => Direction::NorthWest,
        }
    }

    /// Direction of the unit step `from -> to`, if they are neighbours.
    pub fn between(from: &Monomial, to: &Monomial) -> Option<Direction> {
        let d = [
            i64::from(to.a) - i64::from(from.a),
            i64::from(to.b) - i64::from(from.b),
            i64::from(to.c) - i64::from(from.c),
        ];
        Direction::ALL.into_iter().find(|dir| dir.delta() == d)
    }

    pub fn step(self, v: &Monomial) -> Option<Monomial> {
        v.shifted(self.delta())
    }

    pub fn step_by(self, v: &Monomial, k: u32) -> Option<Monomial> {
        let [a, b, c] = self.delta();
        let k = i64::from(k);
        v.shifted([a * k, b * k, c * k])
    }
}

/// Affine point; see the module docs for the coordinate convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn of_vertex(v: &Monomial) -> Point {
        Point {
            x: 2 * i64::from(v.c) + i64::from(v.a),
            y: i64::from(v.a),
        }
    }

    /// Vertex position scaled by three, comparable with [`Triangle::centroid3`].
    pub fn of_vertex3(v: &Monomial) -> Point {
        let p = Point::of_vertex(v);
        Point {
            x: 3 * p.x,
            y: 3 * p.y,
        }
    }
}

/// Winding number of the closed polygon around `p`.  `p` must not lie on the
/// polygon.
pub fn winding_number(polygon: &[Point], p: Point) -> i64 {
    let n = polygon.len();
    let mut wn = 0;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        let cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
        if a.y <= p.y {
            if b.y > p.y && cross > 0 {
                wn += 1;
            }
        } else if b.y <= p.y && cross < 0 {
            wn -= 1;
        }
    }
    wn
}

/// The unit triangle with exactly these three corners, if there is one.
pub fn triangle_with_vertices(p: &Monomial, q: &Monomial, r: &Monomial) -> Option<Triangle> {
    let g = p.gcd(q).gcd(r);
    let deg = p.degree();
    if q.degree() != deg || r.degree() != deg || p == q || q == r || p == r {
        return None;
    }
    let mut set = [*p, *q, *r];
    set.sort();
    if g.degree() + 1 == deg {
        let mut expect = Triangle::Up(g).vertices();
        expect.sort();
        return (expect == set).then_some(Triangle::Up(g));
    }
    if deg >= 2 && g.degree() + 2 == deg {
        let mut expect = Triangle::Down(g).vertices();
        expect.sort();
        return (expect == set).then_some(Triangle::Down(g));
    }
    None
}

/// Lattice vertices on the segment `from -> from + k·dir`, inclusive.
pub fn segment(from: &Monomial, dir: Direction, k: u32) -> Option<Vec<Monomial>> {
    (0..=k).map(|i| dir.step_by(from, i)).collect()
}
