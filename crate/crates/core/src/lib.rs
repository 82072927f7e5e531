//! Exact computation in the mod-p Steenrod group scheme and the dual
//! Steenrod algebra: graded-commutative coefficient algebras, truncated
//! composition groups, Hopf-algebra presentations and Milnor-basis
//! bookkeeping.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod group;
pub mod grouptheory;
pub mod hopf;
pub mod milnor;
pub mod partitions;
pub mod sample;
pub mod verify;
pub mod wire;

pub use algebra::{Element, Generator, Monomial, Presentation};
pub use error::{Error, Result};
pub use group::{Filtration, Flavor, GroupElement, LeadingCase};
