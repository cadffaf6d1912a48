//! Quantum lengths of particles in a box.
//!
//! The length of an object is taken to be `sqrt(12)` times the position spread of its
//! probability density. For a uniform rod this is its geometric length; for electrons
//! in an infinite well it is shorter than the well and approaches it as the number
//! of electrons grows. On top of that estimator the crate builds
//!
//! * [`moments`]: the second- and fourth-moment length functionals,
//! * [`manybody`]: fermion and boson fillings of a box, their lengths and densities,
//! * [`ruler`]: rulers cut into segments, cutting energies and the optimal ruling,
//! * [`entangle`]: object and ruler sharing electrons through Fermi-level alignment,
//! * [`oracle`]: brute-force quadrature, series and grid-wavefunction checks,
//! * [`units`]: conversion of natural-unit results to SI.
//!
//! All internal quantities use natural units `hbar = m = 1`.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entangle;
pub mod error;
pub mod manybody;
pub mod moments;
pub mod oracle;
pub mod ruler;
pub mod units;

pub use error::{Error, Result};

/// Exchange statistics of identical particles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Fermion,
    Boson,
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/moments.md")]
    mod moments {}
    #[doc = include_str!("../../../book/src/many-body.md")]
    mod many_body {}
    #[doc = include_str!("../../../book/src/rulers.md")]
    mod rulers {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
}
