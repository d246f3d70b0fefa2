//! Cross-checks between Igusa zeta functions of the prehomogeneous spaces of binary cubic
//! forms and pairs of ternary quadratic forms, brute-force orbit densities over truncated
//! power series rings, and the invariant cohomology of the Nichols algebras `B_3`, `B_4`.

pub mod braidhur;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod localzeta;
pub mod nichols;
pub mod perm;
pub mod prehomog;
pub mod qseries;
pub mod report;
pub mod table;

pub use error::{Error, Result};
