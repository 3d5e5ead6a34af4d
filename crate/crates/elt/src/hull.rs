//! Upper concave hull of lifted points `(exponent, tangible)`.
//!
//! For a univariate polynomial the tangible value is `max_k (t_k + k*x)`.
//! A monomial attains the maximum somewhere iff its lifted point lies on the
//! upper hull; it dominates strictly on an open interval iff the point is a
//! hull vertex. Breakpoints between consecutive vertices are the corner
//! roots.

use crate::scalar::Rational;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullPosition {
    Vertex,
    OnEdge,
    Below,
}

#[derive(Debug, Clone)]
pub struct UpperHull {
    /// All lifted points, sorted by exponent (exponents unique).
    points: Vec<(u32, Rational)>,
    /// Indices into `points` forming the hull chain, left to right.
    vertices: Vec<usize>,
}

fn cross(o: &(u32, Rational), a: &(u32, Rational), b: &(u32, Rational)) -> Rational {
    let ox = Rational::from_integer(o.0.into());
    let ax = Rational::from_integer(a.0.into());
    let bx = Rational::from_integer(b.0.into());
    (&ax - &ox) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&bx - &ox)
}

impl UpperHull {
    /// Builds the hull from `(exponent, tangible)` pairs with distinct
    /// exponents, in any order.
    pub fn new(mut points: Vec<(u32, Rational)>) -> Self {
        points.sort_by_key(|p| p.0);
        let mut vertices: Vec<usize> = Vec::new();
        for i in 0..points.len() {
            while vertices.len() >= 2 {
                let o = vertices[vertices.len() - 2];
                let a = vertices[vertices.len() - 1];
                // pop non-clockwise turns so only strict vertices remain
                if cross(&points[o], &points[a], &points[i]) >= Rational::zero() {
                    vertices.pop();
                } else {
                    break;
                }
            }
            vertices.push(i);
        }
        UpperHull { points, vertices }
    }

    pub fn vertex_exponents(&self) -> Vec<u32> {
        self.vertices.iter().map(|&i| self.points[i].0).collect()
    }

    /// Corner roots, ascending.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for w in self.vertices.windows(2) {
            let (l, tl) = &self.points[w[0]];
            let (r, tr) = &self.points[w[1]];
            let dx = Rational::from_integer((r - l).into());
            out.push((tl - tr) / dx);
        }
        out
    }

    pub fn position(&self, exp: u32) -> HullPosition {
        let idx = match self.points.binary_search_by_key(&exp, |p| p.0) {
            Ok(i) => i,
            Err(_) => return HullPosition::Below,
        };
        if self.vertices.binary_search(&idx).is_ok() {
            return HullPosition::Vertex;
        }
        // locate the bracketing vertices
        let pos = self.vertices.partition_point(|&v| v < idx);
        if pos == 0 || pos == self.vertices.len() {
            return HullPosition::Below;
        }
        let v1 = &self.points[self.vertices[pos - 1]];
        let v2 = &self.points[self.vertices[pos]];
        if cross(v1, &self.points[idx], v2).is_zero() {
            HullPosition::OnEdge
        } else {
            HullPosition::Below
        }
    }

    /// The breakpoints at which the monomial of the given exponent ties the
    /// maximum: two for an interior vertex, one for an edge point or an
    /// extreme vertex, none for a point below the hull.
    pub fn tie_roots(&self, exp: u32) -> Vec<Rational> {
        let idx = match self.points.binary_search_by_key(&exp, |p| p.0) {
            Ok(i) => i,
            Err(_) => return Vec::new(),
        };
        let breaks = self.breakpoints();
        match self.position(exp) {
            HullPosition::Below => Vec::new(),
            HullPosition::Vertex => {
                let vpos = self.vertices.binary_search(&idx).unwrap();
                let mut out = Vec::new();
                if vpos > 0 {
                    out.push(breaks[vpos - 1].clone());
                }
                if vpos < breaks.len() {
                    out.push(breaks[vpos].clone());
                }
                out
            }
            HullPosition::OnEdge => {
                let pos = self.vertices.partition_point(|&v| v < idx);
                vec![breaks[pos - 1].clone()]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn hull(pts: &[(u32, i64)]) -> UpperHull {
        UpperHull::new(pts.iter().map(|&(e, t)| (e, rat_int(t))).collect())
    }

    #[test]
    fn middle_vertex() {
        // x^2 + <1:_>x + <0:_>: lifted (0,0),(1,1),(2,0)
        let h = hull(&[(0, 0), (1, 1), (2, 0)]);
        assert_eq!(h.vertex_exponents(), vec![0, 1, 2]);
        assert_eq!(h.breakpoints(), vec![rat_int(-1), rat_int(1)]);
        assert_eq!(h.position(1), HullPosition::Vertex);
    }

    #[test]
    fn collinear_middle_is_on_edge() {
        let h = hull(&[(0, 2), (1, 1), (2, 0)]);
        assert_eq!(h.vertex_exponents(), vec![0, 2]);
        assert_eq!(h.position(1), HullPosition::OnEdge);
        assert_eq!(h.breakpoints(), vec![rat_int(1)]);
        assert_eq!(h.tie_roots(1), vec![rat_int(1)]);
    }

    #[test]
    fn below_hull() {
        let h = hull(&[(0, 2), (1, 0), (2, 0)]);
        assert_eq!(h.position(1), HullPosition::Below);
        assert!(h.tie_roots(1).is_empty());
    }

    #[test]
    fn tie_roots_of_interior_vertex() {
        let h = hull(&[(0, 5), (3, 5), (5, 3), (7, -1), (8, -4), (10, -10)]);
        assert_eq!(h.vertex_exponents(), vec![0, 3, 5, 7, 10]);
        assert_eq!(
            h.breakpoints(),
            vec![rat_int(0), rat_int(1), rat_int(2), rat_int(3)]
        );
        assert_eq!(h.position(8), HullPosition::OnEdge);
        assert_eq!(h.tie_roots(3), vec![rat_int(0), rat_int(1)]);
        assert_eq!(h.tie_roots(8), vec![rat_int(3)]);
        assert_eq!(h.tie_roots(0), vec![rat_int(0)]);
        assert_eq!(h.tie_roots(10), vec![rat_int(3)]);
    }

    #[test]
    fn single_point() {
        let h = hull(&[(3, 5)]);
        assert_eq!(h.vertex_exponents(), vec![3]);
        assert!(h.breakpoints().is_empty());
        assert_eq!(h.position(3), HullPosition::Vertex);
        assert!(h.tie_roots(3).is_empty());
    }
}
