//! Rectangle stabbing with axis-parallel lines.

pub mod approx;
pub mod exact;
pub mod generators;
pub mod geometry;
pub mod greedy1d;
pub mod io;
pub mod reduction;
pub mod twosat;

pub use geometry::{verify, Axis, Instance, Line, Rect, Solution, Strip};
