//! Worked model families: the generalized Swanson oscillators, the spiked
//! harmonic oscillator and the real-line image of the `−x⁴` potential,
//! plus a finite-difference spectrum solver for their Hermitian partners.

mod grid;
mod spiked;
mod swanson;
mod x4;

pub use grid::{
    canonical_swap, grid_dot, hermitian_spectrum, hermitian_spectrum_refined, EigenSystem, GridHamiltonian,
    GridSpec, HermitianModel,
};
pub use spiked::{
    spiked_energy, spiked_matrix_element, spiked_overlap, spiked_wavefunction, spiked_wavefunction_derivative,
    MatrixElementKind, SpikedHOModel, SpikedVariant,
};
pub use swanson::{swanson_pair, SwansonFamily};
pub use x4::{
    inverted_quartic_partner, minus_x4_chain, x4_generator, x4_h0, x4_hermitian, x4_non_hermitian, X4Chain,
};
