//! Exact computation of spectral invariants for commuting operator tuples.
//!
//! Everything here runs over arbitrary-precision rationals: joint eigenspaces
//! of commuting matrices, Gröbner bases of polynomial ideals and modules,
//! Koszul homology of finitely presented modules, Hilbert–Samuel
//! multiplicities, local indexes of spectral components, cycle push-forwards,
//! and the graded Hilbert-function shadow of row-contraction degree theory.
//! Results are exact integers and rationals; no floating point appears
//! anywhere.
//!
//! Homological indexing is used throughout: for a tuple of r commuting
//! actions, `H_0` is the cokernel stage and `H_r` the joint kernel. Reports
//! carry a convention note translating to the cochain labelling used in the
//! operator-theory literature (cochain `H_n` corresponds to `H_0` here).

pub mod arveson;
pub mod cycles;
pub mod defaults;
pub mod error;
pub mod fpmodule;
pub mod groebner;
pub mod matrix;
pub mod poly;
pub mod problem;
pub mod report;
pub mod runner;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Scalar;
