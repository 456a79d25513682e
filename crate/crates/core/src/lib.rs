//! Explicit integral lattices inside the middle rigid cohomology of a smooth
//! hypersurface minus a smooth hyperplane section, and the precision
//! bookkeeping that goes with them.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! the command line or threads lives in the `crislat` companion crate.
//!
//! Layout:
//!
//! * [`arith`]: prime fields, small extension fields, `Z_(p)` rationals,
//!   residues modulo `p^N` with an explicit cap.
//! * [`poly`]: sparse multivariate polynomials.
//! * [`linalg`]: sparse matrices, unit-pivot elimination, `p`-saturated
//!   lattice quotients and division-free characteristic polynomials.
//! * [`variety`]: the input pair (hypersurface, hyperplane), affine charts,
//!   weighted covers and a brute-force smoothness probe.
//! * [`logdr`]: section spaces of the twisted log de Rham complex and the
//!   lattice basis extraction.
//! * [`hodge`]: primitive Hodge numbers from Jacobian-ring Hilbert series and
//!   the Hodge polygon of the pair.
//! * [`precision`]: torsion exponents, coefficient precisions, required
//!   Frobenius precision and the char-poly loss harness.
//! * [`zeta`]: point counting and zeta-function ground truth.
//! * [`fixtures`]: the two worked examples (degree 7 plane curve over `F_5`,
//!   weighted elliptic surface over `F_11`) and a handful of smooth pairs.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod error;
pub mod fixtures;
pub mod hodge;
pub mod linalg;
pub mod logdr;
pub mod poly;
pub mod precision;
pub mod upoly;
pub mod variety;
pub mod zeta;

pub use error::{Error, Result};
