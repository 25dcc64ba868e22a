//! Division polynomials, point halving and torsion subgroups over the
//! rationals, quadratic fields and multiquadratic towers.

mod compute;
mod divpoly;
mod group;
mod halving;

pub use compute::{
    torsion_over_q, torsion_over_quadratic, torsion_over_tower, OddPart, TorsionContext, TorsionData,
};
pub use divpoly::{division_polynomial, division_polynomials};
pub use group::GroupStructure;
pub use halving::{halve_point, halving_fields, halving_quartic};
