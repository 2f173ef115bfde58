//! Finite free convolutions of polynomials, hypergeometric and Kampé de Fériet
//! constructors, multiple orthogonal polynomial families and the asymptotic
//! pipeline from rational S-transforms to limit densities.

pub mod conv;
pub mod asymptotics;
pub mod error;
pub mod field;
pub mod io;
pub mod hypergeom;
pub mod kdf;
pub mod mop;
pub mod mp;
pub mod partitions;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use poly::{FloatPoly, Poly};
