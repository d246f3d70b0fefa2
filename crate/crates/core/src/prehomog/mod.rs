//! The prehomogeneous representations `(G_3, V_3)` and `(G_4, V_4)` over small rings.

pub mod forms;
pub mod check;
pub mod group;
pub(crate) mod resolvent_table;
pub mod ring;

pub use check::equivariance_failures;
pub use forms::{disc3, disc4, quad_index, resolvent_cubic, BinaryCubic, TernaryQuadPair};
pub use group::{act3, act4, GroupElem3, GroupElem4};
pub use ring::{CoeffRing, Fp, Ring, Trunc, TruncRing};
