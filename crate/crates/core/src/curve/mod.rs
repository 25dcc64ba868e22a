//! Weierstrass models, the group law over towers, coordinate changes,
//! quadratic twists and Tate normal forms.

mod iso;
mod model;
mod point;
mod tate;

pub use iso::{quadratic_twist, short_form, to_b_form, twist_point_to_curve, Isomorphism};
pub use model::Curve;
pub use point::Point;
pub use tate::{tate_curve, tate_curve_from_parameter, tate_normal_form, tate_parameter, TateForm};

/// Multiplication bound for orders of rational points.
pub const MAZUR_BOUND: u32 = 12;
