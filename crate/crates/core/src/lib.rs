//! Verification engine for a collection of coffin problems: exact algebraic
//! certificates, replayed straightedge-and-compass constructions with exact
//! incidence checks, and numeric oracles.

pub mod euclid;
pub mod exactnum;
pub mod problems;
pub mod sketch;
