//! Torsors under abelian groups with a finite group action: exact abelian
//! group arithmetic, G-modules, degree-one cohomology, cycle models and
//! their descent, elliptic-curve test modules and formal class relations.

pub mod cohom;
pub mod cycles;
pub mod ellcurve;
pub mod error;
pub mod fgab;
pub mod generate;
pub mod gmod;
pub mod rationality;
pub mod torsor;

pub use error::{Error, Result};
