//! Borsuk partitions of the Leech lattice's minimal vectors.
//!
//! The crate enumerates the 196560 minimal vectors of the (unscaled) Leech
//! lattice from the extended Golay code, cuts out the laminated sections
//! `M_1 … M_24`, turns "divide into parts of smaller diameter" into graph
//! coloring, and searches for small colorings with DSATUR and TABUCOL.
//! Antipodal selections (one vector from each `±x` pair) and their packed
//! 6-byte record format are handled in [`hset`].

pub mod confgraph;
pub mod golay;
pub mod laminated;
pub mod leech;
pub mod cli;
pub mod coloring;
pub mod hset;
