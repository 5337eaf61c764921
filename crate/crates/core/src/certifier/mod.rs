//! Exact-arithmetic certification of sign conditions on truncated series.
//!
//! Polynomials have `BigRational` coefficients; root counts on intervals come
//! from Sturm chains and, independently, from Descartes bisection.

pub mod descartes;
pub mod phi;
pub mod poly;
pub mod props;
pub mod ratfn;
pub mod sturm;

pub use descartes::{descartes_count, RootCount};
pub use phi::{build_phi, build_phi_u, Truncation, UExpr};
pub use poly::{IntPoly, Poly};
pub use props::{
    certify_mu, certify_omega_p7, certify_omega_tau, pi_enclosure, product_bound, Certificate,
    Expr, RootCounter, SignCheck,
};
pub use ratfn::RationalFunction;
pub use sturm::{sturm_count, sturm_count_detail, RootCountDetail, SturmChain};
