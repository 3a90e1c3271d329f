//! Exact noncommutative computer algebra for quantum cluster X-tori.
//!
//! The crate provides
//! * [`qtorus`]: quantum tori `X_Q^{1/n}` with canonical normal forms;
//! * [`ncmat`]: square matrices over any kernel ring, triangular inversion and
//!   the Killing factorization of pseudo-reflection triples;
//! * [`transport`]: Fock–Goncharov snake calculus (quivers, transport
//!   matrices, amalgamation, path composition);
//! * [`gdaha`]: D4 and E6 generalized double affine Hecke generators and their
//!   relation checks;
//! * [`mconv`]: the quantum middle convolution pipeline from D4 to E6;
//! * [`cluster`]: localized tori, quantum mutation, quiver seizure and the
//!   mutation/seizure match;
//! * [`basicrep`]: the basic representation on Laurent polynomials.

pub mod basicrep;
pub mod cluster;
pub mod error;
pub mod ncmat;
pub mod gdaha;
pub mod mconv;
pub mod qtorus;
pub mod report;
pub mod transport;

pub use error::{Error, Result};
