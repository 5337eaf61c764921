//! Quaternionic Grothendieck-type inequalities: quaternion linear algebra,
//! the (∞,1)/Grothendieck/θ/γ norm families with ascent lower bounds and
//! SDP upper bounds, quaternion Gaussian rounding, exact series reversion
//! and the derived constants, and exact Sturm-type certificates.

pub mod certifier;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod norms;
pub mod quad;
pub mod quat;
pub mod random;
pub mod sdp;
pub mod series;

pub use error::{Error, Result};
pub use linalg::{QuatMatrix, QuatVector, SelfAdjointQuatMatrix};
pub use quat::{Complex, Quaternion, SignConvention};
