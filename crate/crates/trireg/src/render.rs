//! SVG and ASCII pictures of regions, tilings, lattice paths and matchings.
//!
//! SVG geometry: the bottom edge is horizontal, unit edges are 24px, and the
//! two lattice directions are 0° and 60°.  Coordinates are printed with two
//! decimals so output is byte-for-byte reproducible.

use std::fmt::Write;

use trireg_core::paths::PathFamily;
use trireg_core::{Lozenge, Monomial, Point, Tiling, Triangle, TriangularRegion, Var};

const EDGE: f64 = 24.0;
const MARGIN: f64 = 12.0;
const ROW: f64 = EDGE * 0.866_025_403_784_438_6;

const PUNCTURE_FILL: &str = "#8c8c8c";
const GRID: &str = "#c8c8c8";

fn lozenge_fill(v: Var) -> &'static str {
    match v {
        Var::X => "#f2c14e",
        Var::Y => "#5fa8d3",
        Var::Z => "#9bc53d",
    }
}

struct Canvas {
    d: u32,
    out: String,
}

impl Canvas {
    fn new(d: u32) -> Canvas {
        let w = f64::from(d) * EDGE + 2.0 * MARGIN;
        let h = f64::from(d) * ROW + 2.0 * MARGIN;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        let _ = writeln!(
            out,
            r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
        );
        Canvas { d, out }
    }

    /// Pixel position of a point given in thirds of the half-unit lattice.
    fn px3(&self, p: Point) -> (f64, f64) {
        let x = MARGIN + p.x as f64 * EDGE / 6.0;
        let y = MARGIN + (3.0 * f64::from(self.d) - p.y as f64) * ROW / 3.0;
        (x, y)
    }

    fn vertex(&self, v: &Monomial) -> (f64, f64) {
        self.px3(Point::of_vertex3(v))
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, stroke: &str, width: f64) {
        let mut s = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.2},{y:.2}");
        }
        let _ = writeln!(
            self.out,
            r#"<polygon points="{s}" fill="{fill}" stroke="{stroke}" stroke-width="{width}" stroke-linejoin="round"/>"#
        );
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64) {
        let _ = writeln!(
            self.out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}" stroke-width="{width}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    fn circle(&mut self, c: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(
            self.out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}" stroke="#000000" stroke-width="1"/>"##,
            c.0, c.1
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        let s: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.out,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}" stroke-linecap="round" stroke-linejoin="round"/>"#,
            s.join(" ")
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn grid(canvas: &mut Canvas, region: &TriangularRegion) {
    for t in region.ambient_triangles() {
        let pts: Vec<(f64, f64)> = t.vertices().iter().map(|v| canvas.vertex(v)).collect();
        let fill = if region.contains(&t) {
            "#ffffff"
        } else {
            PUNCTURE_FILL
        };
        canvas.polygon(&pts, fill, GRID, 0.5);
    }
}

fn lozenges(canvas: &mut Canvas, tiling: &Tiling) {
    for l in tiling.lozenges() {
        let pts: Vec<(f64, f64)> = l.corners().iter().map(|v| canvas.vertex(v)).collect();
        canvas.polygon(&pts, lozenge_fill(l.orientation()), "#222222", 1.0);
    }
}

pub fn svg_region(region: &TriangularRegion) -> String {
    let mut c = Canvas::new(region.d());
    grid(&mut c, region);
    c.finish()
}

pub fn svg_tiling(region: &TriangularRegion, tiling: &Tiling) -> String {
    let mut c = Canvas::new(region.d());
    grid(&mut c, region);
    lozenges(&mut c, tiling);
    c.finish()
}

/// Centre of the up triangle at lattice point `(u, v)`.
fn lattice_centre((u, v): (i64, i64)) -> Point {
    // (u, v) = (d - 1 - b, a)
    let a = v;
    let c = u - v;
    let x = 6 * c + 3 * a + 3;
    let y = 3 * a + 1;
    Point { x, y }
}

pub fn svg_paths(region: &TriangularRegion, tiling: &Tiling, family: &PathFamily) -> String {
    let mut c = Canvas::new(region.d());
    grid(&mut c, region);
    lozenges(&mut c, tiling);
    for path in &family.paths {
        let pts: Vec<(f64, f64)> = path.iter().map(|&p| c.px3(lattice_centre(p))).collect();
        c.polyline(&pts, "#c0392b", 2.5);
        if let (Some(first), Some(last)) = (pts.first(), pts.last()) {
            c.circle(*first, 3.0, "#c0392b");
            c.circle(*last, 3.0, "#ffffff");
        }
    }
    c.finish()
}

pub fn svg_matching(region: &TriangularRegion, tiling: &Tiling) -> String {
    let mut c = Canvas::new(region.d());
    grid(&mut c, region);
    let centre = |c: &Canvas, t: Triangle| c.px3(t.centroid3());
    for d in region.down() {
        for v in Var::ALL {
            let u = d.times(v);
            if region.up().contains(&u) {
                let matched = tiling.up_of(d) == Some(u);
                let (stroke, width) = if matched {
                    ("#000000", 3.0)
                } else {
                    ("#9a9a9a", 0.75)
                };
                let a = centre(&c, Triangle::Down(*d));
                let b = centre(&c, Triangle::Up(u));
                c.line(a, b, stroke, width);
            }
        }
    }
    for u in region.up() {
        let p = centre(&c, Triangle::Up(*u));
        c.circle(p, 2.5, "#000000");
    }
    for d in region.down() {
        let p = centre(&c, Triangle::Down(*d));
        c.circle(p, 2.5, "#ffffff");
    }
    c.finish()
}

fn lozenge_char(l: &Lozenge) -> char {
    match l.orientation() {
        Var::X => '|',
        Var::Y => '\\',
        Var::Z => '/',
    }
}

/// One text row per triangle row, top row first.  Up triangles sit in even
/// slots and down triangles in odd slots.  `#` marks punctured triangles;
/// with a tiling, each triangle shows the direction of its lozenge.
pub fn ascii(region: &TriangularRegion, tiling: Option<&Tiling>) -> String {
    let d = region.d();
    let mut out = String::new();
    for a in (0..d).rev() {
        out.push_str(&" ".repeat(a as usize));
        let width = 2 * (d - a) - 1;
        for slot in 0..width {
            let c = slot / 2;
            let t = if slot % 2 == 0 {
                Triangle::Up(Monomial::new(a, d - 1 - a - c, c))
            } else {
                Triangle::Down(Monomial::new(a, d - 2 - a - c, c))
            };
            let ch = if !region.contains(&t) {
                '#'
            } else {
                match tiling {
                    Some(tau) => tau.lozenge_of(&t).map_or('?', |l| lozenge_char(&l)),
                    None if matches!(t, Triangle::Up(_)) => '^',
                    None => 'v',
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}
