//! Exact 2D geometry for the range plane of a bivariate field.

pub mod arrangement;
pub mod point;
pub mod polygon;
pub mod rational;
pub mod svg;

pub use arrangement::{Arrangement, Segment};
pub use point::{orient, ring_side, winding_number, RPoint, RingSide};
pub use polygon::{convex_hull, interior_points, Avoid, Bounds, Face, Hull, HullCover, Location, PolygonSet};
pub use rational::{parse_rational, Rational};
