//! Exact arithmetic over the rationals and multiquadratic towers, plus the
//! polynomial root finding needed for torsion computations.

mod lifting;
mod poly;
mod quartic;
mod rational;
mod tower;

pub use lifting::{rational_roots, roots_in_quadratic_field};
pub use poly::Poly;
pub use quartic::{factor_quartic_over_q, roots_in_tower, QuarticFactorization};
pub use rational::{
    int, is_square, rat, rational_sqrt, squarefree_part, SquarefreeLabel,
};
pub use tower::{is_square_with_witness, Embedding, TowerElement, TowerField, MAX_GENERATORS};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
