//! Lee-metric linear codes over integer residue rings Z/p^sZ.
//!
//! The crate covers the working algebra of such codes at desk scale:
//!
//! - exact ring arithmetic, Lee weights and valuations ([`ring`]);
//! - generator-matrix normal forms and canonical span forms ([`matrix`]);
//! - codes, subtypes, filtration/torsion subcodes, isometries and a JSON
//!   interchange format ([`code`]);
//! - exact distance oracles and the generalized weight hierarchies built
//!   from join, meet and column supports as well as filtrations
//!   ([`weights`]);
//! - every Singleton-like upper bound on the minimum Lee distance that
//!   these structures support, as inspectable reports ([`bounds`]);
//! - random-code sampling, exact closed-form probabilities and exhaustive
//!   censuses for optimality experiments ([`density`]).
//!
//! Minima are computed by explicit enumeration or exhaustive pruned
//! search and are exact; nothing here is heuristic. Moduli are capped at
//! 2^31 so all arithmetic stays in 64-bit integers.

pub mod bounds;
pub mod code;
pub mod density;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod ring;
pub mod weights;

pub use code::{CodeFile, Isometry, LinearCode};
pub use error::{Error, Result};
pub use matrix::GeneratorMatrix;
pub use ring::{Modulus, Residue};
pub use weights::Limits;
