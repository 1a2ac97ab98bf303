//! Oscillation-model dynamics on weighted digraphs.
//!
//! The crate builds the Laplacian family of a graph, diagonalizes it, forms
//! the doubled-state Hamiltonian, and evaluates closed-form propagators whose
//! projections solve the graph wave equation `ẍ = −L x`. On top of that sits
//! a fragmentation model of network polarization: weak links are cut, the
//! surviving groups become complete graphs, and the report tracks the new
//! zero modes and whether the square-root dynamics become admissible.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`graph`] | digraphs, `A`, `D`, `L`, `H`, `N`, components, fragmentation, file formats |
//! | [`spectral`] | `P`, `Λ`, `Ω`, `℧`, `√L`, sparsity-pattern checks |
//! | [`hamiltonian`] | `Ĥ`, generator algebra, closed-form powers |
//! | [`dynamics`] | fermionic and bosonic propagators, RK4 wave oracle, residuals |
//! | [`polarization`] | potential, spring chain, zero modes, scenario pipeline |
//! | [`export`] | CSV and text dumps |

pub mod error;
pub mod export;
pub mod graph;
pub mod hamiltonian;
pub mod dynamics;
pub mod polarization;
pub mod spectral;

pub use error::{Error, ErrorClass, Result};
