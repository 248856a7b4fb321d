//! Exact computation of the degree-one Hecke module of the sharbly complex
//! for GL2 over Q(zeta_12) at level Gamma_0(n), together with elliptic-curve
//! local data and the trace-comparison / parity protocols used to match the
//! two sides.
//!
//! All accepted results use exact arithmetic (rationals, the field
//! Q(zeta_12), and the real quadratic field Q(sqrt 3)); floating point is
//! used only to seed searches that are then certified exactly.

pub mod cyclotomic;
pub mod gf;
pub mod ideals;
pub mod mat2;

pub use cyclotomic::{CycNum, Embedding, Int, Rat, RealQuad};
pub use ideals::PrimeIdealRecord;
pub use mat2::Mat2;
