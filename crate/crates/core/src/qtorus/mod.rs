//! Quantum X-tori driven by a quiver.
//!
//! Generators satisfy `Z_β Z_α = q^{-2w_{αβ}} Z_α Z_β`, where `w_{αβ}` counts
//! arrows `α → β` (dashed arrows count ½). Elements are kept in a normal form
//! whose monomials list variables in the quiver's (lexicographic) vertex
//! order, with every reordering factor absorbed into a [`QPowerPoly`]
//! coefficient. Exponents may be fractional, which realizes the root
//! extensions `X_Q^{1/n}`.

mod coeff;
mod element;
mod hom;
mod json;
mod parse;
mod quiver;

pub use coeff::{cint, crat, fmt_coeff, fmt_rat, parse_coeff, parse_rat, rat, rint, Coeff, QPowerPoly, Rat};
pub use element::{
    commutation_exponent, join, root_extend, weyl_monomial, weyl_order, weyl_quantize, Monomial, Torus, TorusElement,
};
pub use hom::{substitute, MonomialHom};
pub use json::{element_from_json, element_to_json};
pub use parse::parse_element;
pub use quiver::{Quiver, QuiverBuilder};

#[cfg(test)]
mod tests;
