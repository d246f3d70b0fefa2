//! Exact bivariate generating functions `I_d(q, t)` and the tables extracted from them.

pub mod conjecture;
pub mod io;
pub mod laurent;
pub mod rational;
pub mod secondary;
pub mod series;
pub mod tables;

pub use conjecture::{conjecture5_check, conjecture5_violation, Strength};
pub use io::{PolyMap, SeriesRow, SeriesTable};
pub use laurent::LaurentQPoly;
pub use rational::{igusa_rational, DenFactor, RationalQT};
pub use secondary::{secondary_structure, secondary_term_check, SecondaryReport};
pub use series::{QTPoly, TruncatedTSeries};
pub use tables::{
    betti_numbers, cohomology_series, cohomology_table, degree_profile, denominator_slopes,
    duality_failure, first_non_count, global_table, local_table, recurrence_check, slopes_of,
};

/// Default expansion order for tables.
pub const DEFAULT_ORDER: usize = 64;

/// The substitution `(q, t) ↦ (q^e, q^f t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubstitutionSpec {
    pub q_exponent: i64,
    pub t_q_shift: i64,
}

impl SubstitutionSpec {
    pub const IDENTITY: Self = Self::new(1, 0);
    /// `I_d(q⁻¹, qt)`: global counts over `F_q[t]`.
    pub const GLOBAL: Self = Self::new(-1, 1);
    /// `I_d(q⁻², qt)`: invariant cohomology of the Nichols algebra.
    pub const COHOMOLOGY: Self = Self::new(-2, 1);

    pub const fn new(q_exponent: i64, t_q_shift: i64) -> Self {
        Self {
            q_exponent,
            t_q_shift,
        }
    }
}
