//! Independent brute-force verifiers.
//!
//! Nothing in here calls back into the closed forms of the other modules; the
//! tests of those modules compare against these routines.

pub mod density;
pub mod grid;
pub mod quadrature;
pub mod roots;
pub mod series;

pub use density::quadrature_lengths;
pub use grid::{brute_force_spread, GridWavefunction};
pub use quadrature::{integrate, QuadratureSpec};
pub use roots::{find_sign_change, find_sign_change_among, steffensen};
pub use series::partial_zeta2;
