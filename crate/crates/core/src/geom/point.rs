use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::{qcmp, to_f64, Rational};

/// A point of the range plane with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    pub fn midpoint(&self, other: &RPoint) -> RPoint {
        let two = Rational::from_integer(2.into());
        RPoint::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }

    /// Lexicographic order by `(y, x)`; used for deterministic sweeps.
    pub fn cmp_yx(&self, other: &RPoint) -> Ordering {
        self.y.cmp(&other.y).then_with(|| self.x.cmp(&other.x))
    }
}

impl fmt::Debug for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of triangle `abc`.
pub fn cross(a: &RPoint, b: &RPoint, c: &RPoint) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// `p - q` as an unreduced fraction with positive denominator.
fn diff(p: &Rational, q: &Rational) -> (BigInt, BigInt) {
    if p.denom() == q.denom() {
        (p.numer() - q.numer(), p.denom().clone())
    } else {
        (p.numer() * q.denom() - q.numer() * p.denom(), p.denom() * q.denom())
    }
}

/// Orientation of `c` relative to the directed line `ab`:
/// `Greater` = left turn, `Less` = right turn, `Equal` = collinear.
pub fn orient(a: &RPoint, b: &RPoint, c: &RPoint) -> Ordering {
    // Fraction-free: gcd reductions dominate otherwise.
    let (n1, d1) = diff(&b.x, &a.x);
    let (n2, d2) = diff(&c.y, &a.y);
    let (n3, d3) = diff(&b.y, &a.y);
    let (n4, d4) = diff(&c.x, &a.x);
    let lhs = n1 * n2;
    let rhs = n3 * n4;
    if d1 == d3 && d2 == d4 || d1 == d4 && d2 == d3 {
        return lhs.cmp(&rhs);
    }
    (lhs * d3 * d4).cmp(&(rhs * d1 * d2))
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(a: &RPoint, b: &RPoint, p: &RPoint) -> bool {
    orient(a, b, p) == Ordering::Equal && in_box(a, b, p)
}

fn in_box(a: &RPoint, b: &RPoint, p: &RPoint) -> bool {
    let within = |u: &Rational, v: &Rational, w: &Rational| {
        let (lo, hi) = if qcmp(u, v).is_le() { (u, v) } else { (v, u) };
        qcmp(lo, w).is_le() && qcmp(w, hi).is_le()
    };
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

/// Intersection of two closed segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentHit {
    None,
    Point(RPoint),
    /// Collinear overlap of positive length, given by its endpoints.
    Overlap(RPoint, RPoint),
}

pub fn segment_intersection(a: &RPoint, b: &RPoint, c: &RPoint, d: &RPoint) -> SegmentHit {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    if d1 == Ordering::Equal && d2 == Ordering::Equal {
        // Collinear: overlap along the dominant axis.
        let key = |p: &RPoint| -> (Rational, Rational) {
            if a.x != b.x {
                (p.x.clone(), p.y.clone())
            } else {
                (p.y.clone(), p.x.clone())
            }
        };
        let (mut s0, mut s1) = (a.clone(), b.clone());
        if key(&s0) > key(&s1) {
            std::mem::swap(&mut s0, &mut s1);
        }
        let (mut t0, mut t1) = (c.clone(), d.clone());
        if key(&t0) > key(&t1) {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = if key(&s0) >= key(&t0) { s0 } else { t0 };
        let hi = if key(&s1) <= key(&t1) { s1 } else { t1 };
        return match key(&lo).cmp(&key(&hi)) {
            Ordering::Less => SegmentHit::Overlap(lo, hi),
            Ordering::Equal => SegmentHit::Point(lo),
            Ordering::Greater => SegmentHit::None,
        };
    }
    if d1 != d2 && d3 != d4 {
        if d1 == Ordering::Equal {
            return SegmentHit::Point(c.clone());
        }
        if d2 == Ordering::Equal {
            return SegmentHit::Point(d.clone());
        }
        if d3 == Ordering::Equal {
            return SegmentHit::Point(a.clone());
        }
        if d4 == Ordering::Equal {
            return SegmentHit::Point(b.clone());
        }
        // Proper crossing.
        let t = cross(c, d, a) / (cross(c, d, a) - cross(c, d, b));
        let x = &a.x + (&b.x - &a.x) * &t;
        let y = &a.y + (&b.y - &a.y) * &t;
        return SegmentHit::Point(RPoint::new(x, y));
    }
    SegmentHit::None
}

pub fn segments_touch(a: &RPoint, b: &RPoint, c: &RPoint, d: &RPoint) -> bool {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    if d1 == Ordering::Equal && d2 == Ordering::Equal {
        return !matches!(segment_intersection(a, b, c, d), SegmentHit::None);
    }
    d1 != d2 && orient(c, d, a) != orient(c, d, b)
}

/// Twice the signed area of a closed ring.
pub fn ring_area2(ring: &[RPoint]) -> Rational {
    let n = ring.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let p = &ring[i];
        let q = &ring[(i + 1) % n];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Location of a point relative to a closed ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSide {
    Inside,
    Outside,
    Boundary,
}

/// Even-odd ray casting towards `+x`. Vertices lying exactly on the ray
/// are treated as lying infinitesimally above it, which makes the crossing
/// count well defined without special cases.
pub fn ring_side(ring: &[RPoint], p: &RPoint) -> RingSide {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        let (ay, by) = (qcmp(&a.y, &p.y), qcmp(&b.y, &p.y));
        if ay == by && ay != Ordering::Equal {
            continue;
        }
        if qcmp(&a.x, &p.x).is_lt() && qcmp(&b.x, &p.x).is_lt() {
            continue;
        }
        if on_segment(a, b, p) {
            return RingSide::Boundary;
        }
        if ay.is_gt() != by.is_gt() {
            // The crossing is right of p when p is left of the upward edge.
            let want = if by.is_gt() { Ordering::Greater } else { Ordering::Less };
            if orient(a, b, p) == want {
                inside = !inside;
            }
        }
    }
    if inside {
        RingSide::Inside
    } else {
        RingSide::Outside
    }
}

/// Winding number of a closed ring around `p` (p not on the ring).
pub fn winding_number(ring: &[RPoint], p: &RPoint) -> i64 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) == Ordering::Greater {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) == Ordering::Less {
            w -= 1;
        }
    }
    w
}

/// Floating bounding box, padded so that exact containment implies
/// containment of the rounded values.
#[derive(Debug, Clone, Copy)]
pub struct BBox {
    pub min: (f64, f64),
    pub max: (f64, f64),
}

impl BBox {
    pub fn of<'a>(pts: impl IntoIterator<Item = &'a RPoint>) -> BBox {
        let mut b = BBox {
            min: (f64::INFINITY, f64::INFINITY),
            max: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        };
        for p in pts {
            let (x, y) = p.to_f64();
            b.min.0 = b.min.0.min(x);
            b.min.1 = b.min.1.min(y);
            b.max.0 = b.max.0.max(x);
            b.max.1 = b.max.1.max(y);
        }
        let pad = |v: f64| v.abs() * 1e-9 + 1e-12;
        b.min.0 -= pad(b.min.0);
        b.min.1 -= pad(b.min.1);
        b.max.0 += pad(b.max.0);
        b.max.1 += pad(b.max.1);
        b
    }

    pub fn overlaps(&self, o: &BBox) -> bool {
        self.min.0 <= o.max.0 && o.min.0 <= self.max.0 && self.min.1 <= o.max.1 && o.min.1 <= self.max.1
    }

    pub fn contains(&self, p: (f64, f64)) -> bool {
        self.min.0 <= p.0 && p.0 <= self.max.0 && self.min.1 <= p.1 && p.1 <= self.max.1
    }
}

pub fn abs_cross_is_zero(a: &RPoint, b: &RPoint, c: &RPoint) -> bool {
    orient(a, b, c) == Ordering::Equal
}
