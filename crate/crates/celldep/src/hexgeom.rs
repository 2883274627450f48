//! Computational geometry for regular hexagons and convex polygons.
//!
//! All lengths are in units of the cell radius. Hexagons share a single global
//! orientation: vertex k sits at angle k*60 degrees from the center, so the
//! vertex-to-center distance is `radius` and the edge-to-center distance
//! (apothem) is `radius * sqrt(3)/2`. Cells and interference regions are both
//! hexagons in this orientation, which keeps every containment and clipping
//! operation exact polygon arithmetic.

use rand::Rng;

/// Tolerance for boundary and collinearity tests, in cell-radius units.
/// Boundary points count as contained; clip outputs thinner than this
/// collapse to the empty polygon.
pub const GEOM_EPS: f64 = 1e-9;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Area of a regular hexagon with unit vertex radius.
pub const UNIT_HEX_AREA: f64 = 3.0 * SQRT3 / 2.0;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Self { x, y }
    }

    pub fn distance(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Regular hexagon, vertex k at angle k*60 degrees from `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hexagon {
    center: Point,
    radius: f64,
}

impl Hexagon {
    /// Panics if `radius` is not strictly positive and finite.
    pub fn new(center: Point, radius: f64) -> Self {
        assert!(
            radius.is_finite() && radius > 0.0,
            "hexagon radius must be positive and finite, got {radius}"
        );
        Self { center, radius }
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Edge-to-center distance, `radius * sqrt(3)/2`.
    pub fn apothem(&self) -> f64 {
        self.radius * SQRT3 / 2.0
    }

    pub fn vertices(&self) -> [Point; 6] {
        let mut v = [Point::default(); 6];
        for (k, p) in v.iter_mut().enumerate() {
            let a = k as f64 * std::f64::consts::FRAC_PI_3;
            *p = Point::new(
                self.center.x + self.radius * a.cos(),
                self.center.y + self.radius * a.sin(),
            );
        }
        v
    }

    /// True iff `p` is inside or on the boundary (within [`GEOM_EPS`]).
    ///
    /// The hexagon is centrally symmetric, so three absolute half-plane tests
    /// against the edge normals at 30, 90 and 150 degrees suffice. Using
    /// absolute values makes mutual containment of two equal co-oriented
    /// hexagons an exactly symmetric relation.
    pub fn contains(&self, p: Point) -> bool {
        let dx = p.x - self.center.x;
        let dy = p.y - self.center.y;
        let bound = self.apothem() + GEOM_EPS;
        // normals: (cos30, sin30), (0, 1), (cos150, sin150)
        (dx * (SQRT3 / 2.0) + dy * 0.5).abs() <= bound
            && dy.abs() <= bound
            && (dx * (-SQRT3 / 2.0) + dy * 0.5).abs() <= bound
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bounding_box(&self) -> (Point, Point) {
        let half_h = self.apothem();
        (
            Point::new(self.center.x - self.radius, self.center.y - half_h),
            Point::new(self.center.x + self.radius, self.center.y + half_h),
        )
    }

    pub fn area(&self) -> f64 {
        UNIT_HEX_AREA * self.radius * self.radius
    }

    /// Counter-clockwise 6-gon with the same vertices.
    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.vertices().to_vec())
    }
}

/// Convex polygon with counter-clockwise vertices; the empty polygon is the
/// identity for union-like operations and has area zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a polygon from vertices, normalizing orientation to CCW.
    /// Fewer than three vertices yields the empty polygon.
    pub fn new(vertices: Vec<Point>) -> Self {
        if vertices.len() < 3 {
            return Self::empty();
        }
        let mut poly = Self { vertices };
        if signed_area(&poly.vertices) < 0.0 {
            poly.vertices.reverse();
        }
        poly
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Shoelace area; zero for the empty polygon.
    pub fn area(&self) -> f64 {
        signed_area(&self.vertices).max(0.0)
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(p.x + dx, p.y + dy))
                .collect(),
        }
    }
}

fn signed_area(vertices: &[Point]) -> f64 {
    if vertices.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for (i, a) in vertices.iter().enumerate() {
        let b = vertices[(i + 1) % vertices.len()];
        acc += a.x * b.y - b.x * a.y;
    }
    acc / 2.0
}

/// Intersection of two convex polygons (Sutherland-Hodgman against the clip
/// polygon's half-planes). Returns the empty polygon when disjoint; slivers
/// thinner than [`GEOM_EPS`] collapse to empty.
pub fn clip_convex(subject: &ConvexPolygon, clip: &ConvexPolygon) -> ConvexPolygon {
    if subject.is_empty() || clip.is_empty() {
        return ConvexPolygon::empty();
    }
    let mut current = subject.vertices.clone();
    let mut next: Vec<Point> = Vec::with_capacity(current.len() + 6);
    let cv = &clip.vertices;
    for i in 0..cv.len() {
        let a = cv[i];
        let b = cv[(i + 1) % cv.len()];
        clip_half_plane(&current, a, b, &mut next);
        std::mem::swap(&mut current, &mut next);
        if current.len() < 3 {
            return ConvexPolygon::empty();
        }
    }
    dedupe_consecutive(&mut current);
    if current.len() < 3 || signed_area(&current).abs() < GEOM_EPS {
        return ConvexPolygon::empty();
    }
    ConvexPolygon { vertices: current }
}

/// Keeps the part of `poly` on the left of the directed edge a->b.
fn clip_half_plane(poly: &[Point], a: Point, b: Point, out: &mut Vec<Point>) {
    out.clear();
    let ex = b.x - a.x;
    let ey = b.y - a.y;
    let edge_len = ex.hypot(ey);
    let tol = -GEOM_EPS * edge_len;
    let side = |p: Point| ex * (p.y - a.y) - ey * (p.x - a.x);

    let mut prev = *poly.last().expect("non-empty polygon");
    let mut prev_d = side(prev);
    for &p in poly {
        let d = side(p);
        let inside = d >= tol;
        let prev_inside = prev_d >= tol;
        if inside != prev_inside {
            // crossing point of segment prev->p with the edge line
            let t = prev_d / (prev_d - d);
            out.push(Point::new(
                prev.x + t * (p.x - prev.x),
                prev.y + t * (p.y - prev.y),
            ));
        }
        if inside {
            out.push(p);
        }
        prev = p;
        prev_d = d;
    }
}

fn dedupe_consecutive(vertices: &mut Vec<Point>) {
    if vertices.len() < 2 {
        return;
    }
    let mut kept: Vec<Point> = Vec::with_capacity(vertices.len());
    for &p in vertices.iter() {
        if kept.last().is_none_or(|q| p.distance(*q) > GEOM_EPS) {
            kept.push(p);
        }
    }
    if kept.len() >= 2 && kept[0].distance(*kept.last().unwrap()) <= GEOM_EPS {
        kept.pop();
    }
    *vertices = kept;
}

/// Uniform sample from a hexagon via its six-triangle decomposition: pick a
/// sextant, then a uniform point of that triangle. Exactly three RNG draws
/// per sample, never rejected.
pub fn sample_uniform<R: Rng + ?Sized>(hex: &Hexagon, rng: &mut R) -> Point {
    let k = rng.gen_range(0..6u32);
    let mut u: f64 = rng.gen();
    let mut v: f64 = rng.gen();
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    let a0 = k as f64 * std::f64::consts::FRAC_PI_3;
    let a1 = (k + 1) as f64 * std::f64::consts::FRAC_PI_3;
    let r = hex.radius();
    let c = hex.center();
    Point::new(
        c.x + r * (u * a0.cos() + v * a1.cos()),
        c.y + r * (u * a0.sin() + v * a1.sin()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_hex() -> Hexagon {
        Hexagon::new(Point::new(0.0, 0.0), 1.0)
    }

    #[test]
    fn hex_to_polygon_vertices() {
        let poly = unit_hex().to_polygon();
        let v = poly.vertices();
        assert_eq!(v.len(), 6);
        assert!((v[0].x - 1.0).abs() < 1e-15 && v[0].y.abs() < 1e-15);
        assert!((v[3].x + 1.0).abs() < 1e-12 && v[3].y.abs() < 1e-12);
    }

    #[test]
    fn hex_polygon_area_scaling() {
        let poly = Hexagon::new(Point::new(0.0, 0.0), 2.0).to_polygon();
        assert!((poly.area() - UNIT_HEX_AREA * 4.0).abs() < 1e-12);
        // regular hexagon area formula: 3*sqrt(3)/2 * r^2
        assert!((unit_hex().to_polygon().area() - 2.598076211353316).abs() < 1e-12);
        for r in [0.3, 1.7, 5.0] {
            let h = Hexagon::new(Point::new(1.0, -2.0), r);
            assert!((h.to_polygon().area() - UNIT_HEX_AREA * r * r).abs() < 1e-9);
        }
    }

    #[test]
    fn hex_translation() {
        let shifted = Hexagon::new(Point::new(3.0, 0.0), 1.0).to_polygon();
        let base = unit_hex().to_polygon();
        for (a, b) in shifted.vertices().iter().zip(base.vertices()) {
            assert!((a.x - (b.x + 3.0)).abs() < 1e-15);
            assert!((a.y - b.y).abs() < 1e-15);
        }
    }

    #[test]
    fn contains_center_vertex_and_apothem() {
        let h = unit_hex();
        assert!(h.contains(Point::new(0.0, 0.0)));
        assert!(h.contains(Point::new(1.0, 0.0))); // vertex is on the boundary
        assert!(h.contains(Point::new(0.0, 0.866)));
        // just beyond the apothem sqrt(3)/2 ~ 0.8660 along an edge normal
        assert!(!h.contains(Point::new(0.0, 0.8661)));
        assert!(!h.contains(Point::new(1.0001, 0.0)));
    }

    #[test]
    fn unit_square_area() {
        let square = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ]);
        assert!((square.area() - 1.0).abs() < 1e-15);
        // clockwise input is normalized to CCW
        let cw = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ]);
        assert!((cw.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn clip_self_is_identity_area() {
        let p = unit_hex().to_polygon();
        let c = clip_convex(&p, &p);
        assert!((c.area() - p.area()).abs() < 1e-12);
    }

    #[test]
    fn clip_disjoint_is_empty() {
        let a = unit_hex().to_polygon();
        let b = Hexagon::new(Point::new(10.0, 0.0), 1.0).to_polygon();
        let c = clip_convex(&a, &b);
        assert!(c.is_empty());
        assert_eq!(c.area(), 0.0);
    }

    #[test]
    fn clip_offset_hexagons_matches_hit_count_oracle() {
        // Two unit hexagons 1.5 apart overlap in the rhombus between their
        // facing vertex wedges; check the clipped area against an independent
        // Monte Carlo hit count over the pair's bounding box.
        let a = unit_hex();
        let b = Hexagon::new(Point::new(1.5, 0.0), 1.0);
        let area = clip_convex(&a.to_polygon(), &b.to_polygon()).area();

        fn uniform<R: rand::Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
            lo + rng.gen::<f64>() * (hi - lo)
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xC11F);
        let (lo, hi) = (Point::new(-1.0, -0.9), Point::new(2.5, 0.9));
        let box_area = (hi.x - lo.x) * (hi.y - lo.y);
        let n = 1_000_000u32;
        let mut hits = 0u32;
        for _ in 0..n {
            let p = Point::new(uniform(&mut rng, lo.x, hi.x), uniform(&mut rng, lo.y, hi.y));
            if a.contains(p) && b.contains(p) {
                hits += 1;
            }
        }
        let p_hat = hits as f64 / n as f64;
        let est = p_hat * box_area;
        let sigma = box_area * (p_hat * (1.0 - p_hat) / n as f64).sqrt();
        assert!(
            (est - area).abs() <= 3.0 * sigma,
            "clip area {area} vs MC estimate {est} (3 sigma = {})",
            3.0 * sigma
        );
        // exact value for this configuration is sqrt(3)/8
        assert!((area - 0.21650635094610965).abs() < 1e-12);
    }

    #[test]
    fn sample_uniform_stays_inside_and_centers() {
        let h = Hexagon::new(Point::new(2.0, -1.0), 1.5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let (mut sx, mut sy) = (0.0, 0.0);
        for _ in 0..n {
            let p = sample_uniform(&h, &mut rng);
            assert!(h.contains(p));
            sx += p.x;
            sy += p.y;
        }
        // mean within 4 sigma of the center; per-axis sigma is bounded by
        // radius / sqrt(n) (the exact variance is smaller)
        let bound = 4.0 * 1.5 / (n as f64).sqrt();
        assert!((sx / n as f64 - 2.0).abs() < bound);
        assert!((sy / n as f64 + 1.0).abs() < bound);
    }

    #[test]
    fn sample_uniform_sextants_balanced() {
        let h = unit_hex();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let n = 1_000_000u32;
        let mut counts = [0u32; 6];
        for _ in 0..n {
            let p = sample_uniform(&h, &mut rng);
            let mut ang = p.y.atan2(p.x);
            if ang < 0.0 {
                ang += std::f64::consts::TAU;
            }
            let k = ((ang / std::f64::consts::FRAC_PI_3) as usize).min(5);
            counts[k] += 1;
        }
        let expect = n as f64 / 6.0;
        let stderr = (expect * (1.0 - 1.0 / 6.0)).sqrt();
        for c in counts {
            assert!(
                (c as f64 - expect).abs() < 4.0 * stderr,
                "sextant count {c} vs expected {expect}"
            );
        }
    }

    /// Random convex polygon: affine image of a regular n-gon (affine maps
    /// preserve convexity; positive determinant keeps CCW orientation).
    fn convex_poly(n: usize, m: [f64; 4], t: [f64; 2]) -> ConvexPolygon {
        let det = m[0] * m[3] - m[1] * m[2];
        let (a, b, c, d) = if det >= 0.0 {
            (m[0], m[1], m[2], m[3])
        } else {
            (m[1], m[0], m[3], m[2])
        };
        let verts = (0..n)
            .map(|k| {
                let ang = k as f64 / n as f64 * std::f64::consts::TAU;
                let (x, y) = (ang.cos(), ang.sin());
                Point::new(a * x + b * y + t[0], c * x + d * y + t[1])
            })
            .collect();
        ConvexPolygon::new(verts)
    }

    fn matrix_strategy() -> impl Strategy<Value = [f64; 4]> {
        prop::array::uniform4(-2.0f64..2.0).prop_filter("non-degenerate", |m| {
            (m[0] * m[3] - m[1] * m[2]).abs() > 0.05
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn clip_commutes_and_is_bounded(
            na in 3usize..8, nb in 3usize..8,
            ma in matrix_strategy(), mb in matrix_strategy(),
            ta in prop::array::uniform2(-2.0f64..2.0),
            tb in prop::array::uniform2(-2.0f64..2.0),
        ) {
            let a = convex_poly(na, ma, ta);
            let b = convex_poly(nb, mb, tb);
            let ab = clip_convex(&a, &b).area();
            let ba = clip_convex(&b, &a).area();
            let max_area = a.area().max(b.area());
            prop_assert!((ab - ba).abs() <= 1e-12 * max_area.max(1.0));
            prop_assert!(ab <= a.area().min(b.area()) + 1e-9);
        }

        #[test]
        fn clip_translation_invariant(
            na in 3usize..8, nb in 3usize..8,
            ma in matrix_strategy(), mb in matrix_strategy(),
            shift in prop::array::uniform2(-5.0f64..5.0),
        ) {
            let a = convex_poly(na, ma, [0.0, 0.0]);
            let b = convex_poly(nb, mb, [0.5, -0.3]);
            let base = clip_convex(&a, &b).area();
            let moved = clip_convex(
                &a.translate(shift[0], shift[1]),
                &b.translate(shift[0], shift[1]),
            ).area();
            prop_assert!((base - moved).abs() <= 1e-10);
        }

        #[test]
        fn contains_agrees_with_half_plane_clipping(
            x in -2.0f64..2.0, y in -2.0f64..2.0,
            cx in -1.0f64..1.0, cy in -1.0f64..1.0,
            r in 0.3f64..2.0,
        ) {
            let h = Hexagon::new(Point::new(cx, cy), r);
            let p = Point::new(x, y);
            // a point survives clipping against the hexagon's half-planes iff
            // it lies on the inner side of every edge
            let poly = h.to_polygon();
            let v = poly.vertices();
            let mut survives = true;
            for i in 0..6 {
                let a = v[i];
                let b = v[(i + 1) % 6];
                let e = (b.x - a.x).hypot(b.y - a.y);
                let d = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
                if d < -GEOM_EPS * e {
                    survives = false;
                }
            }
            prop_assert_eq!(h.contains(p), survives);
        }
    }
}
