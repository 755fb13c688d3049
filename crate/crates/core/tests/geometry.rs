//! Exact polygon algebra and predicates on random small inputs.

use proptest::prelude::*;
use reeb_complement::geom::rational::int;
use reeb_complement::geom::{convex_hull, orient, ring_side, winding_number, Bounds, PolygonSet, RPoint, RingSide};

fn pt(x: i64, y: i64) -> RPoint {
    RPoint::new(int(x), int(y))
}

fn rect() -> impl Strategy<Value = PolygonSet> {
    (-6i64..6, -6i64..6, 1i64..6, 1i64..6)
        .prop_map(|(x, y, w, h)| PolygonSet::rectangle(&Bounds::new((int(x), int(x + w)), (int(y), int(y + h)))))
}

fn points(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<RPoint>> {
    proptest::collection::vec((-8i64..8, -8i64..8).prop_map(|(x, y)| pt(x, y)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inclusion_exclusion(a in rect(), b in rect()) {
        let union = a.union(&b).area();
        let inter = a.intersect(&b).area();
        prop_assert_eq!(union.clone() + inter.clone(), a.area() + b.area());
        prop_assert_eq!(a.subtract(&b).area(), a.area() - inter);
    }

    #[test]
    fn union_of_three_is_order_free(a in rect(), b in rect(), c in rect()) {
        let left = a.union(&b).union(&c);
        let right = a.union(&c.union(&b));
        prop_assert_eq!(left.area(), right.area());
        prop_assert_eq!(left.closed_components(), right.closed_components());
    }

    #[test]
    fn hull_contains_its_points(ps in points(3..12)) {
        let hull = convex_hull(&ps);
        for p in &ps {
            prop_assert!(hull.contains(p));
        }
        let moved: Vec<RPoint> = ps.iter().map(|p| RPoint::new(&p.x + int(5), &p.y - int(3))).collect();
        prop_assert_eq!(convex_hull(&moved).area(), hull.area());
    }

    #[test]
    fn orientation_is_antisymmetric(ps in points(3..4)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(orient(a, b, c), orient(a, c, b).reverse());
        prop_assert_eq!(orient(a, b, c), orient(b, c, a));
    }

    #[test]
    fn ring_side_agrees_with_winding(ring in points(3..4), p in points(1..2)) {
        let p = &p[0];
        let inside = match ring_side(&ring, p) {
            RingSide::Inside => Some(true),
            RingSide::Outside => Some(false),
            RingSide::Boundary => None,
        };
        if let Some(inside) = inside {
            prop_assert_eq!(inside, winding_number(&ring, p) != 0);
        }
    }
}

#[test]
fn annulus_and_slit() {
    let outer = PolygonSet::rectangle(&Bounds::new((int(0), int(4)), (int(0), int(4))));
    let inner = PolygonSet::rectangle(&Bounds::new((int(1), int(3)), (int(1), int(3))));
    let ring = outer.subtract(&inner);
    assert_eq!(ring.area(), int(12));
    assert_eq!(ring.faces.len(), 1);
    assert_eq!(ring.faces[0].holes.len(), 1);
    assert!(!ring.contains(&pt(2, 2)));

    let slit = PolygonSet::rectangle(&Bounds::new((int(2), int(2)), (int(-1), int(5))));
    let cut = outer.subtract(&slit);
    assert_eq!(cut.area(), int(16));
    assert_eq!(cut.faces.len(), 2);
}
