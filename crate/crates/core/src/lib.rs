//! Exact two-point resistances on structured resistor networks.
//!
//! Rectangular lattices (free, cylindrical, toroidal), cobweb and fan networks,
//! and the globe are handled by Laplacian spectral methods: the full Laplacian,
//! its first minor (hub deleted) and its second minor (both globe poles
//! deleted), each of which factors into 1D chain spectra. Every closed form is
//! cross-checked against a dense Kirchhoff solve in [`oracle`].
//!
//! ```
//! use latres::{LatticeSpec, LatticeTopology, NodeRef, Solver, Strategy};
//!
//! let spec = LatticeSpec::new(LatticeTopology::Globe, 1, 3, 1.0, 1.0).unwrap();
//! let solver = Solver::new(spec).unwrap();
//! let r = solver.resistance(NodeRef::PoleSouth, NodeRef::PoleNorth, Strategy::Fast).unwrap();
//! assert!((r.ohms - 2.0 / 3.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod engines;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod spectra1d;

pub use engines::{Method, ResistanceResult, Solver, Strategy};
pub use error::{Error, Result};
pub use lattice::{build_network, node_at, node_index, LatticeSpec, LatticeTopology, NodeRef, ResistorNetwork};
pub use spectra1d::{laplacian_matrix, spectrum, BoundaryKind, Spectrum1D};
