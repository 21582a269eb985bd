//! Verification lab for the linearized relativistic Euler equations near a
//! physical vacuum boundary.
//!
//! The crate is organised around the quantities the energy method needs:
//! thermodynamic variables ([`thermo`]), pointwise tensors ([`geometry`]),
//! weighted norms on degenerate grids ([`grid_norms`]), the evolution
//! equations and their time-derivative elimination ([`dynamics`]), vorticity
//! ([`vorticity`]), the elliptic operators ([`elliptic`]), the symbolic order
//! calculus ([`order_calculus`]) and the scenario runner ([`verify`]).

pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod geometry;
pub mod grid_norms;
pub mod jet;
pub mod order_calculus;
pub mod thermo;
pub mod verify;
pub mod vorticity;

pub use error::{Error, Result};
pub use jet::{Jet, Scalar, XJet, JET_LEN};
