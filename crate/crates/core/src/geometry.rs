//! Planar convex-polygon helpers on complex numbers.
//!
//! Polygons are vertex lists in counter-clockwise order. Degenerate
//! polygons (a point or a segment) are allowed everywhere.

use num_complex::Complex64;

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull by Andrew's monotone chain, counter-clockwise, without
/// repeated or collinear vertices.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.is_empty() {
        // all points collinear and identical after dedup
        hull.push(pts[0]);
    }
    hull
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// True when `p` is inside the convex polygon or on its boundary.
pub fn contains(poly: &[Complex64], p: Complex64) -> bool {
    match poly.len() {
        0 => false,
        1 | 2 => distance_to_boundary(poly, p) == 0.0,
        n => (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= 0.0),
    }
}

fn distance_to_boundary(poly: &[Complex64], p: Complex64) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => (p - poly[0]).norm(),
        n => (0..n)
            .map(|i| segment_distance(p, poly[i], poly[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Distance from `p` to the convex polygon (zero inside).
pub fn distance(poly: &[Complex64], p: Complex64) -> f64 {
    if poly.len() >= 3 && contains(poly, p) {
        0.0
    } else {
        distance_to_boundary(poly, p)
    }
}

/// Hausdorff distance between two convex polygons. For convex sets the
/// supremum of `d(·, Q)` over `P` is attained at a vertex of `P`.
pub fn hausdorff(p: &[Complex64], q: &[Complex64]) -> f64 {
    let one = p.iter().map(|&v| distance(q, v)).fold(0.0, f64::max);
    let two = q.iter().map(|&v| distance(p, v)).fold(0.0, f64::max);
    one.max(two)
}

/// Clips a convex polygon to the half-plane `Re(conj(u) · w) ≤ h`.
pub fn clip_half_plane(poly: &[Complex64], u: Complex64, h: f64) -> Vec<Complex64> {
    let side = |w: Complex64| (u.conj() * w).re - h;
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let (sa, sb) = (side(a), side(b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let t = sa / (sa - sb);
            out.push(a + (b - a) * t);
        }
    }
    out
}
