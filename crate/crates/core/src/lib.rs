//! Triply graded link homology of braid closures from Soergel bimodules,
//! with a Hecke-algebra HOMFLY-PT oracle and a Hilbert-scheme localization
//! oracle.

pub mod exactalg;
pub mod braid;
pub mod soergel;
pub mod hochschild;
pub mod complexes;
pub mod pipeline;
pub mod hilb;
pub mod hecke;
