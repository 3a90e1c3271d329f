//! Snake calculus on tessellated triangles: Fock–Goncharov quivers, classical
//! and quantum transport matrices, amalgamation of glued triangles and path
//! composition over a fat graph.

mod blocks;
mod chart;
mod dims;
mod surface;
mod verify;

pub use blocks::{block_h, block_l, block_s, block_s_quantum, quantum_correction};
pub use chart::{rotate, transport_sides, transport_word, Block, Label, Side, Tessellation, TriangleChart, TripleKind};
pub use dims::moduli_dimensions;
pub use verify::{golden_diff, verify_dims, verify_transport, verify_transport_with, TransportGolden, TRANSPORT_GOLDEN};
pub use surface::{amalgamate, ConjugatorSpec, Gluing, Mode, PathSpec, Step, Surface, SurfaceSpec};

#[cfg(test)]
mod tests;
