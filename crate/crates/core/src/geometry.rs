//! Exact segment arrangements and their intersection graphs.
//!
//! Coordinates are arbitrary-precision rationals. Segments are closed, so
//! touching at an endpoint and collinear overlap both count as intersecting.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HomError, Result};
use crate::graph::Graph;

pub type Rational = BigRational;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn frac(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }
}

/// A closed segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    p: Point,
    q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Result<Self> {
        if p == q {
            return Err(HomError::Malformed("degenerate segment with equal endpoints".into()));
        }
        Ok(Segment { p, q })
    }

    pub fn from_ints(x1: i64, y1: i64, x2: i64, y2: i64) -> Result<Self> {
        Segment::new(Point::int(x1, y1), Point::int(x2, y2))
    }

    pub fn p(&self) -> &Point {
        &self.p
    }

    pub fn q(&self) -> &Point {
        &self.q
    }

    pub fn direction(&self) -> Slope {
        let dx = &self.q.x - &self.p.x;
        let dy = &self.q.y - &self.p.y;
        if dx.is_zero() {
            Slope::Vertical
        } else {
            Slope::Finite(dy / dx)
        }
    }

    fn bbox_disjoint(&self, o: &Segment) -> bool {
        let (ax0, ax1) = minmax(&self.p.x, &self.q.x);
        let (bx0, bx1) = minmax(&o.p.x, &o.q.x);
        if ax1 < bx0 || bx1 < ax0 {
            return true;
        }
        let (ay0, ay1) = minmax(&self.p.y, &self.q.y);
        let (by0, by1) = minmax(&o.p.y, &o.q.y);
        ay1 < by0 || by1 < ay0
    }
}

fn minmax<'a>(a: &'a Rational, b: &'a Rational) -> (&'a Rational, &'a Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Direction class of a segment; two segments are parallel iff their slopes agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Vertical,
    Finite(Rational),
}

fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// For `c` collinear with `a, b`: whether `c` lies within the closed segment.
fn within(a: &Point, b: &Point, c: &Point) -> bool {
    let (x0, x1) = minmax(&a.x, &b.x);
    let (y0, y1) = minmax(&a.y, &b.y);
    x0 <= &c.x && &c.x <= x1 && y0 <= &c.y && &c.y <= y1
}

pub fn segments_intersect(s: &Segment, t: &Segment) -> bool {
    if s.bbox_disjoint(t) {
        return false;
    }
    let o1 = orient(&s.p, &s.q, &t.p);
    let o2 = orient(&s.p, &s.q, &t.q);
    let o3 = orient(&t.p, &t.q, &s.p);
    let o4 = orient(&t.p, &t.q, &s.q);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within(&s.p, &s.q, &t.p))
        || (o2 == 0 && within(&s.p, &s.q, &t.q))
        || (o3 == 0 && within(&t.p, &t.q, &s.p))
        || (o4 == 0 && within(&t.p, &t.q, &s.q))
}

/// Segments with optional labels; segment `i` becomes vertex `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Arrangement {
    pub segments: Vec<Segment>,
    pub labels: Vec<Option<String>>,
}

impl Arrangement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: Segment) -> usize {
        self.segments.push(s);
        self.labels.push(None);
        self.segments.len() - 1
    }

    pub fn push_labeled(&mut self, s: Segment, label: impl Into<String>) -> usize {
        self.segments.push(s);
        self.labels.push(Some(label.into()));
        self.segments.len() - 1
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn intersection_graph(&self) -> Graph {
        intersection_graph(&self.segments)
    }

    pub fn slope_count(&self) -> usize {
        slope_count(&self.segments)
    }

    /// Parses `s <x1> <y1> <x2> <y2> [label]` records; coordinates are
    /// integers or fractions `p/q`.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut arr = Arrangement::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok[0] != "s" {
                return Err(HomError::parse(line_no, format!("unknown record `{}`", tok[0])));
            }
            if tok.len() != 5 && tok.len() != 6 {
                return Err(HomError::parse(
                    line_no,
                    "expected four coordinates and an optional label",
                ));
            }
            let c: Vec<Rational> = tok[1..5]
                .iter()
                .map(|t| parse_rational(t).map_err(|e| HomError::parse(line_no, e.to_string())))
                .collect::<Result<_>>()?;
            let seg = Segment::new(
                Point::new(c[0].clone(), c[1].clone()),
                Point::new(c[2].clone(), c[3].clone()),
            )
            .map_err(|e| HomError::parse(line_no, e.to_string()))?;
            match tok.get(5) {
                Some(l) => arr.push_labeled(seg, *l),
                None => arr.push(seg),
            };
        }
        Ok(arr)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, l) in self.segments.iter().zip(&self.labels) {
            write!(
                out,
                "s {} {} {} {}",
                RatText(&s.p.x),
                RatText(&s.p.y),
                RatText(&s.q.x),
                RatText(&s.q.y)
            )
            .unwrap();
            if let Some(l) = l {
                write!(out, " {l}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

struct RatText<'a>(&'a Rational);

impl fmt::Display for RatText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn parse_rational(t: &str) -> Result<Rational> {
    let bad = || HomError::Malformed(format!("bad coordinate `{t}`"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Pairwise intersection test over all segment pairs.
pub fn intersection_graph(segments: &[Segment]) -> Graph {
    let n = segments.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if segments_intersect(&segments[i], &segments[j]) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Number of distinct directions among the segments.
pub fn slope_count(segments: &[Segment]) -> usize {
    segments.iter().map(Segment::direction).collect::<BTreeSet<_>>().len()
}
