//! Stratification of the bivariate corner locus.
//!
//! The tie set of a polynomial in two variables is a union of line segments
//! and rays plus the points where they meet. Each maximal piece on which the
//! set of monomials attaining the tangible maximum is constant becomes one
//! stratum. Everything is computed in exact rational arithmetic; the window
//! only clips unbounded pieces.

use crate::poly::{EltPoly, MultiIndex, PolyError};
use crate::scalar::Rational;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeSet;

pub type Point = (Rational, Rational);

/// Rational axis-aligned window `[x_min, x_max] x [y_min, y_max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub x_min: Rational,
    pub x_max: Rational,
    pub y_min: Rational,
    pub y_max: Rational,
}

impl Window {
    pub fn new(x_min: Rational, x_max: Rational, y_min: Rational, y_max: Rational) -> Self {
        Window { x_min, x_max, y_min, y_max }
    }

    pub fn square(half_side: i64) -> Self {
        use crate::scalar::rat_int;
        Window::new(
            rat_int(-half_side),
            rat_int(half_side),
            rat_int(-half_side),
            rat_int(half_side),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.x_min >= self.x_max || self.y_min >= self.y_max
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.0 >= self.x_min && p.0 <= self.x_max && p.1 >= self.y_min && p.1 <= self.y_max
    }
}

/// The line `a*x + b*y = c` with `(a, b)` primitive integers, sign-normalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line2 {
    pub a: i64,
    pub b: i64,
    pub c: Rational,
}

impl Line2 {
    pub fn new(a: i64, b: i64, c: Rational) -> Self {
        debug_assert!(a != 0 || b != 0);
        let g = a.abs().gcd(&b.abs()).max(1);
        let (mut a, mut b) = (a / g, b / g);
        let mut c = c / Rational::from_integer(g.into());
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
            c = -c;
        }
        Line2 { a, b, c }
    }

    pub fn contains(&self, p: &Point) -> bool {
        Rational::from_integer(self.a.into()) * &p.0
            + Rational::from_integer(self.b.into()) * &p.1
            == self.c
    }

    /// Direction vector along the line.
    fn direction(&self) -> (i64, i64) {
        (-self.b, self.a)
    }

    /// Parameter of a point on the line along `direction`.
    fn param(&self, p: &Point) -> Rational {
        let (dx, dy) = self.direction();
        &p.0 * Rational::from_integer(dx.into()) + &p.1 * Rational::from_integer(dy.into())
    }

    /// Point on the line with the given parameter.
    pub(crate) fn at_param(&self, t: &Rational) -> Point {
        // solve a*x + b*y = c together with -b*x + a*y = t
        let (a, b) = (
            Rational::from_integer(self.a.into()),
            Rational::from_integer(self.b.into()),
        );
        let n2 = &a * &a + &b * &b;
        let x = (&a * &self.c - &b * t) / &n2;
        let y = (&b * &self.c + &a * t) / &n2;
        (x, y)
    }

    fn intersect(&self, other: &Line2) -> Option<Point> {
        let det = self.a * other.b - self.b * other.a;
        if det == 0 {
            return None;
        }
        let det = Rational::from_integer(det.into());
        let x = (&self.c * Rational::from_integer(other.b.into())
            - &other.c * Rational::from_integer(self.b.into()))
            / &det;
        let y = (&other.c * Rational::from_integer(self.a.into())
            - &self.c * Rational::from_integer(other.a.into()))
            / &det;
        Some((x, y))
    }

    /// Parameter interval of the part inside the window, if nonempty.
    pub(crate) fn clip(&self, w: &Window) -> Option<(Rational, Rational)> {
        let (dx, dy) = self.direction();
        let p0 = self.at_param(&Rational::zero());
        let n2 = Rational::from_integer((dx * dx + dy * dy).into());
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let halfplanes = [
            (dx, p0.0.clone(), w.x_min.clone(), w.x_max.clone()),
            (dy, p0.1.clone(), w.y_min.clone(), w.y_max.clone()),
        ];
        for (d, base, min, max) in halfplanes {
            if d == 0 {
                if base < min || base > max {
                    return None;
                }
                continue;
            }
            // the coordinate is affine in the parameter with slope d/n2
            let slope = Rational::from_integer(d.into()) / &n2;
            let t1 = (&min - &base) / &slope;
            let t2 = (&max - &base) / &slope;
            let (a, b) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            lo = Some(match lo {
                None => a,
                Some(prev) => prev.max(a),
            });
            hi = Some(match hi {
                None => b,
                Some(prev) => prev.min(b),
            });
        }
        match (lo, hi) {
            (Some(a), Some(b)) if a < b => Some((a, b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StratumGeometry {
    Vertex {
        point: Point,
    },
    /// Open segment or ray on a carrier line. A missing endpoint means the
    /// stratum leaves the window.
    Edge {
        line: Line2,
        start: Option<Point>,
        end: Option<Point>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum2D {
    pub geometry: StratumGeometry,
    pub dominating: BTreeSet<MultiIndex>,
}

fn dominating_set(support: &[(MultiIndex, Rational)], p: &Point) -> BTreeSet<MultiIndex> {
    let point = [p.0.clone(), p.1.clone()];
    let mut best: Option<Rational> = None;
    let mut set = BTreeSet::new();
    for (idx, t) in support {
        let v = t + idx.dot(&point);
        match &best {
            None => {
                best = Some(v);
                set.insert(idx.clone());
            }
            Some(b) => {
                if v > *b {
                    best = Some(v);
                    set.clear();
                    set.insert(idx.clone());
                } else if v == *b {
                    set.insert(idx.clone());
                }
            }
        }
    }
    set
}

/// Computes the maximal strata of the corner locus clipped to the window:
/// vertices plus open segments/rays, each carrying the exact set of indices
/// that attain the tangible maximum there.
pub fn corner_locus_strata(f: &EltPoly, window: &Window) -> Result<Vec<Stratum2D>, PolyError> {
    if f.arity() != 2 {
        return Err(PolyError::ArityMismatch { expected: 2, found: f.arity() });
    }
    let canon = f.canonicalize();
    let support: Vec<(MultiIndex, Rational)> = canon
        .terms()
        .iter()
        .map(|(i, c)| (i.clone(), c.tangible().unwrap().clone()))
        .collect();
    if support.len() < 2 {
        return Ok(Vec::new());
    }

    // candidate tie lines from all pairs of monomials
    let mut lines: BTreeSet<Line2> = BTreeSet::new();
    for i in 0..support.len() {
        for j in (i + 1)..support.len() {
            let (ii, ti) = &support[i];
            let (jj, tj) = &support[j];
            let a = i64::from(ii.0[0]) - i64::from(jj.0[0]);
            let b = i64::from(ii.0[1]) - i64::from(jj.0[1]);
            if a == 0 && b == 0 {
                continue;
            }
            lines.insert(Line2::new(a, b, tj - ti));
        }
    }
    let lines: Vec<Line2> = lines.into_iter().collect();

    // all pairwise intersection points inside the window
    let mut points: BTreeSet<Point> = BTreeSet::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if let Some(p) = lines[i].intersect(&lines[j]) {
                if window.contains(&p) {
                    points.insert(p);
                }
            }
        }
    }

    let mut strata: Vec<Stratum2D> = Vec::new();
    // cut points swallowed by an edge run are not vertex strata
    let mut interior_points: BTreeSet<Point> = BTreeSet::new();

    for line in &lines {
        let Some((t_lo, t_hi)) = line.clip(window) else {
            continue;
        };
        let mut cuts: Vec<(Rational, Point)> = points
            .iter()
            .filter(|p| line.contains(p))
            .map(|p| (line.param(p), p.clone()))
            .filter(|(t, _)| *t > t_lo && *t < t_hi)
            .collect();
        cuts.sort_by(|a, b| a.0.cmp(&b.0));

        let two = Rational::from_integer(2.into());
        let mut bounds: Vec<Rational> = vec![t_lo.clone()];
        bounds.extend(cuts.iter().map(|(t, _)| t.clone()));
        bounds.push(t_hi.clone());

        #[derive(Clone)]
        struct Cell {
            dom: BTreeSet<MultiIndex>,
            start: Option<Point>, // None = clipped at the window
            end: Option<Point>,
        }
        let mut cells: Vec<Cell> = Vec::new();
        for k in 0..bounds.len() - 1 {
            let mid = (&bounds[k] + &bounds[k + 1]) / &two;
            let sample = line.at_param(&mid);
            let dom = dominating_set(&support, &sample);
            let start = if k == 0 { None } else { Some(cuts[k - 1].1.clone()) };
            let end = if k + 1 == bounds.len() - 1 { None } else { Some(cuts[k].1.clone()) };
            cells.push(Cell { dom, start, end });
        }

        // merge consecutive cells when the cut between them carries the same
        // dominating set
        let mut flush = |cell: Option<Cell>, strata: &mut Vec<Stratum2D>| {
            if let Some(cell) = cell {
                if cell.dom.len() >= 2 {
                    strata.push(Stratum2D {
                        geometry: StratumGeometry::Edge {
                            line: line.clone(),
                            start: cell.start,
                            end: cell.end,
                        },
                        dominating: cell.dom,
                    });
                }
            }
        };
        let mut run: Option<Cell> = None;
        for cell in cells {
            match run.as_mut() {
                None => run = Some(cell),
                Some(current) => {
                    let cut_point = cell.start.clone().unwrap();
                    let cut_dom = dominating_set(&support, &cut_point);
                    if current.dom == cell.dom && cut_dom == cell.dom {
                        current.end = cell.end;
                        interior_points.insert(cut_point);
                    } else {
                        flush(run.take(), &mut strata);
                        run = Some(cell);
                    }
                }
            }
        }
        flush(run.take(), &mut strata);
    }

    // vertex strata: candidate points on the locus not interior to any run
    for p in &points {
        if interior_points.contains(p) {
            continue;
        }
        let dom = dominating_set(&support, p);
        if dom.len() >= 2 {
            strata.push(Stratum2D {
                geometry: StratumGeometry::Vertex { point: p.clone() },
                dominating: dom,
            });
        }
    }

    strata.sort_by(|a, b| stratum_key(a).cmp(&stratum_key(b)));
    Ok(strata)
}

type Key = (u8, Option<Point>, Option<Line2>, Option<Point>, Option<Point>);

fn stratum_key(s: &Stratum2D) -> Key {
    match &s.geometry {
        StratumGeometry::Vertex { point } => (0, Some(point.clone()), None, None, None),
        StratumGeometry::Edge { line, start, end } => {
            (1, None, Some(line.clone()), start.clone(), end.clone())
        }
    }
}
