//! Power series of `p`, `h` and `p_ℓ`, their exact compositional inverses,
//! the continuation of `p` past `x = 1`, and the derived constants.

pub mod constants;
pub mod continued;
pub mod exact;
pub mod qseries;

pub use constants::{solve_constants, Constants};
pub use continued::{haagerup_tail_bound, landmarks, ContinuedP, Jet, Landmarks, TailBound, Which};
pub use exact::{
    coefficient_signs, h_coeffs, lambda, p_coeffs, p_ell_coeffs, revert_series, ExactOddSeries,
    SignReport,
};
pub use qseries::QSeries;
