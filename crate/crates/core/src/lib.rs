//! Verification toolkit for the Pontryagin–Chas–Sullivan algebra of the path
//! space of (CP^n, RP^n) over F2.
//!
//! * [`algebra`]: words and F2 polynomials in the generators H, T, S, Y.
//! * [`rewrite`]: oriented relations, bounded completion, Hilbert functions
//!   and the repair search.
//! * [`homology`]: closed-form homology tables used as the independent oracle.
//! * [`generators`]: named generators by degree and level.
//! * [`geometry`]: Fubini–Study geometry, concatenation and broken-geodesic
//!   index computations.

pub mod algebra;
pub mod generators;
pub mod geometry;
pub mod homology;
pub mod report;
pub mod rewrite;
pub mod table;
