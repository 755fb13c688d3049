//! Exact polygon-set algebra: boolean operations on rectangles and hulls,
//! with areas kept as rationals.
//!
//! Usage: `cargo run --example polygon_booleans`

use reeb_complement::geom::rational::{int, ratio};
use reeb_complement::geom::{convex_hull, Bounds, Location, PolygonSet, RPoint};

fn pt(x: i64, y: i64) -> RPoint {
    RPoint::new(int(x), int(y))
}

fn show(name: &str, s: &PolygonSet) {
    let holes: usize = s.faces.iter().map(|f| f.holes.len()).sum();
    println!(
        "{name:<28} area {:<8} faces {}  holes {}  loose segments {}  loose points {}  components {}",
        s.area().to_string(),
        s.faces.len(),
        holes,
        s.segments.len(),
        s.points.len(),
        s.closed_components()
    );
}

fn main() {
    let square = PolygonSet::rectangle(&Bounds::new((int(0), int(4)), (int(0), int(4))));
    let inner = PolygonSet::rectangle(&Bounds::new((int(1), int(3)), (int(1), int(3))));
    let shifted = PolygonSet::rectangle(&Bounds::new((int(2), int(6)), (int(2), int(6))));
    let far = PolygonSet::rectangle(&Bounds::new((int(10), int(11)), (int(0), int(1))));
    let diamond = convex_hull(&[pt(2, -1), pt(5, 2), pt(2, 5), pt(-1, 2)]);
    let sliver = PolygonSet::rectangle(&Bounds::new((int(4), int(4)), (int(0), int(4))));

    show("square", &square);
    show("diamond", &diamond);
    show("square - inner (annulus)", &square.subtract(&inner));
    show("square | shifted", &square.union(&shifted));
    show("square & shifted", &square.intersect(&shifted));
    show("square | far", &square.union(&far));
    show("square & diamond", &square.intersect(&diamond));
    show("diamond - square", &diamond.subtract(&square));
    show("square & right side", &square.intersect(&sliver));

    let annulus = square.subtract(&inner);
    for p in [RPoint::new(ratio(1, 2), ratio(1, 2)), RPoint::new(int(2), int(2)), RPoint::new(int(1), int(2))] {
        let at = match annulus.locate(&p) {
            Location::Face(i) => format!("face {i}"),
            Location::LowerDim => "boundary".into(),
            Location::Outside => "outside".into(),
        };
        println!("annulus at ({}, {}): {at}", p.x, p.y);
    }
    assert_eq!(annulus.area(), int(12));
    assert_eq!(square.intersect(&diamond).area(), diamond.area() - int(4));
}
