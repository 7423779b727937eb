//! Lattice polygons: interior point counts via a gcd-corrected shoelace
//! formula, with a direct enumeration oracle.

use crate::error::{Error, Result};

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A simple lattice polygon. Vertices are stored counterclockwise starting
/// from the lexicographically smallest vertex; a polygon whose vertices are
/// collinear is kept with `degenerate = true` and has no interior points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<(i64, i64)>,
    degenerate: bool,
}

impl LatticePolygon {
    pub fn new(vertices: &[(i64, i64)]) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::domain("polygon needs at least 3 vertices"));
        }
        let mut vs: Vec<(i64, i64)> = vertices.to_vec();
        // Drop consecutive duplicates (wrapping).
        vs.dedup();
        if vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(Error::domain("polygon needs at least 3 distinct vertices"));
        }
        let area2 = shoelace2(&vs);
        let degenerate = area2 == 0;
        if degenerate {
            if !all_collinear(&vs) {
                return Err(Error::domain("zero-area polygon is not simple"));
            }
        } else {
            if area2 < 0 {
                vs.reverse();
            }
            if !is_simple(&vs) {
                return Err(Error::domain("polygon edges intersect"));
            }
        }
        // Canonical starting vertex for deterministic output.
        let start = vs
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        vs.rotate_left(start);
        Ok(LatticePolygon {
            vertices: vs,
            degenerate,
        })
    }

    /// Convex hull of a point set (used for Newton polygons). Collinear
    /// input degenerates to a flat polygon rather than erroring.
    pub fn convex_hull(points: &[(i64, i64)]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::domain("hull needs at least 3 points"));
        }
        let mut ps: Vec<(i64, i64)> = points.to_vec();
        ps.sort();
        ps.dedup();
        if ps.len() < 3 {
            return Err(Error::domain("hull needs at least 3 distinct points"));
        }
        let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
            (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
        };
        // Monotone chain; collinear boundary points are dropped.
        let mut lower: Vec<(i64, i64)> = Vec::new();
        for &p in &ps {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(i64, i64)> = Vec::new();
        for &p in ps.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            // All points collinear: keep the extreme segment as a flat
            // triangle so downstream code can report zero interior points.
            let a = *ps.first().unwrap();
            let b = *ps.last().unwrap();
            let mid = ps[1];
            return Ok(LatticePolygon {
                vertices: vec![a, mid, b],
                degenerate: true,
            });
        }
        LatticePolygon::new(&lower)
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Twice the (positive) enclosed area.
    pub fn area2(&self) -> i64 {
        shoelace2(&self.vertices).abs()
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_points(&self) -> u64 {
        if self.degenerate {
            // Points on the extreme segment.
            let n = self.vertices.len();
            let (a, b) = extreme_pair(&self.vertices);
            let _ = n;
            return gcd_i64(b.0 - a.0, b.1 - a.1) as u64 + 1;
        }
        let mut total = 0u64;
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            total += gcd_i64(b.0 - a.0, b.1 - a.1) as u64;
        }
        total
    }

    /// Number of interior lattice points, by the gcd-corrected shoelace sum:
    /// 1 + (1/2) * sum_i (a_i b_{i+1} - a_{i+1} b_i - gcd(a_i - a_{i+1}, b_i - b_{i+1}))
    /// over counterclockwise edges. Degenerate polygons have none.
    pub fn interior_points(&self) -> u64 {
        if self.degenerate {
            return 0;
        }
        let n = self.vertices.len();
        let mut sum = 0i64;
        for i in 0..n {
            let (a1, b1) = self.vertices[i];
            let (a2, b2) = self.vertices[(i + 1) % n];
            sum += a1 * b2 - a2 * b1 - gcd_i64(a1 - a2, b1 - b2);
        }
        debug_assert!(sum % 2 == 0, "interior formula sum must be even");
        let i = sum / 2 + 1;
        debug_assert!(i >= 0, "interior count must be nonnegative");
        i as u64
    }

    /// Direct enumeration of interior lattice points over the bounding box.
    pub fn interior_points_enumerated(&self) -> u64 {
        if self.degenerate {
            return 0;
        }
        let xs: Vec<i64> = self.vertices.iter().map(|v| v.0).collect();
        let ys: Vec<i64> = self.vertices.iter().map(|v| v.1).collect();
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let mut count = 0u64;
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.strictly_contains((x, y)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Exact point-in-polygon test (strict interior), integer arithmetic only.
    fn strictly_contains(&self, p: (i64, i64)) -> bool {
        let n = self.vertices.len();
        // On-boundary check first.
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross == 0
                && p.0 >= a.0.min(b.0)
                && p.0 <= a.0.max(b.0)
                && p.1 >= a.1.min(b.1)
                && p.1 <= a.1.max(b.1)
            {
                return false;
            }
        }
        // Crossing-number ray cast toward +x with the half-open edge rule.
        let mut inside = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (a.1 > p.1) != (b.1 > p.1) {
                // x-coordinate where the edge crosses the horizontal line:
                // a.0 + (p.1 - a.1)(b.0 - a.0)/(b.1 - a.1), compared to p.0
                // by sign-safe cross multiplication.
                let num = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
                let den = b.1 - a.1;
                if (num > 0 && den > 0) || (num < 0 && den < 0) {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

fn shoelace2(vs: &[(i64, i64)]) -> i64 {
    let n = vs.len();
    let mut s = 0i64;
    for i in 0..n {
        let (x1, y1) = vs[i];
        let (x2, y2) = vs[(i + 1) % n];
        s += x1 * y2 - x2 * y1;
    }
    s
}

fn extreme_pair(vs: &[(i64, i64)]) -> ((i64, i64), (i64, i64)) {
    let a = *vs.iter().min().unwrap();
    let b = *vs.iter().max().unwrap();
    (a, b)
}

fn all_collinear(vs: &[(i64, i64)]) -> bool {
    let (a, b) = (vs[0], vs[1]);
    vs.iter()
        .all(|&c| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) == 0)
}

/// Segment-intersection based simplicity check; adequate for the small
/// vertex counts used here.
fn is_simple(vs: &[(i64, i64)]) -> bool {
    let n = vs.len();
    if n == 3 {
        return true;
    }
    let seg = |i: usize| (vs[i], vs[(i + 1) % n]);
    for i in 0..n {
        for j in i + 1..n {
            // Adjacent edges share a vertex by construction.
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (p1, p2) = seg(i);
            let (p3, p4) = seg(j);
            if segments_intersect(p1, p2, p3, p4) {
                return false;
            }
        }
    }
    true
}

fn segments_intersect(p1: (i64, i64), p2: (i64, i64), p3: (i64, i64), p4: (i64, i64)) -> bool {
    let d = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
        ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
    };
    let d1 = d(p3, p4, p1);
    let d2 = d(p3, p4, p2);
    let d3 = d(p1, p2, p3);
    let d4 = d(p1, p2, p4);
    if d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        return true;
    }
    let on = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
        d(a, b, c) == 0
            && c.0 >= a.0.min(b.0)
            && c.0 <= a.0.max(b.0)
            && c.1 >= a.1.min(b.1)
            && c.1 <= a.1.max(b.1)
    };
    on(p1, p2, p3) || on(p1, p2, p4) || on(p3, p4, p1) || on(p3, p4, p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_triangles() {
        let t = LatticePolygon::new(&[(0, 0), (3, 0), (0, 3)]).unwrap();
        assert_eq!(t.interior_points(), 1);
        assert_eq!(t.boundary_points(), 9);
        let t = LatticePolygon::new(&[(1, 5), (2, 3), (0, 0)]).unwrap();
        assert_eq!(t.interior_points(), 3);
        // Newton triangle with vertices (1,3), (3,0), (0,1).
        let t = LatticePolygon::new(&[(1, 3), (3, 0), (0, 1)]).unwrap();
        assert_eq!(t.interior_points(), 3);
    }

    #[test]
    fn degenerate_collinear() {
        let t = LatticePolygon::new(&[(0, 0), (2, 0), (4, 0)]).unwrap();
        assert!(t.is_degenerate());
        assert_eq!(t.interior_points(), 0);
        assert_eq!(t.interior_points_enumerated(), 0);
    }

    #[test]
    fn orientation_is_normalized() {
        let ccw = LatticePolygon::new(&[(0, 0), (3, 0), (0, 3)]).unwrap();
        let cw = LatticePolygon::new(&[(0, 0), (0, 3), (3, 0)]).unwrap();
        assert_eq!(ccw, cw);
        assert!(shoelace2(ccw.vertices()) > 0);
    }

    #[test]
    fn self_intersecting_rejected() {
        // Bowtie.
        assert!(LatticePolygon::new(&[(0, 0), (2, 2), (2, 0), (0, 2)]).is_err());
    }

    #[test]
    fn pick_formula_consistency() {
        // Interior formula agrees with area and boundary via A = i + b/2 - 1.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9017);
        let mut done = 0;
        while done < 200 {
            let v: Vec<(i64, i64)> = (0..3)
                .map(|_| (rng.gen_range(0..=30), rng.gen_range(0..=30)))
                .collect();
            let poly = match LatticePolygon::new(&v) {
                Ok(p) => p,
                Err(_) => continue,
            };
            if poly.is_degenerate() {
                continue;
            }
            let i = poly.interior_points();
            let ie = poly.interior_points_enumerated();
            assert_eq!(i, ie, "triangle {v:?}");
            let a2 = poly.area2() as i64;
            let b = poly.boundary_points() as i64;
            assert_eq!(a2, 2 * i as i64 + b - 2, "Pick identity for {v:?}");
            done += 1;
        }
    }

    #[test]
    fn convex_hull_of_support() {
        let hull = LatticePolygon::convex_hull(&[(1, 3), (3, 0), (0, 1)]).unwrap();
        assert_eq!(hull.interior_points(), 3);
        // Collinear support degenerates.
        let flat = LatticePolygon::convex_hull(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(flat.is_degenerate());
        assert_eq!(flat.interior_points(), 0);
        // Interior points of hulls with interior supports are unaffected.
        let square = LatticePolygon::convex_hull(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
            .unwrap();
        assert_eq!(square.vertices().len(), 4);
        assert_eq!(square.interior_points(), 1);
    }
}
