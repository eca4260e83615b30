//! Euler's difference table, higher-order log-concavity of its normalised rows,
//! and exact verification of the inequalities behind it.
//!
//! The algorithms are generic over an exact integer scalar ([`ExactInt`]);
//! the aliases below fix it to [`BigInt`], which is what real sweeps need
//! (row 300 of the e-table has over 600 digits).

pub mod concavity;
pub mod interval;
pub mod perm;
pub mod probe;
pub mod report;
pub mod scalar;
pub mod sweep;
pub mod table;
pub mod verdict;
pub mod verify;

pub use num_bigint::BigInt;

pub use concavity::{check_property, l_operator, ConcavityError, Convention, Property};
pub use perm::{count_d_oracle, count_e_oracle, OracleError, PermSpec};
pub use probe::{probe, probe_infinite, ProbeMode, ProbeOptions};
pub use report::{emit_report, emit_table, Format, GridReport};
pub use scalar::ExactInt;
pub use sweep::{Grid, Suite, SweepError};
pub use table::{build_d, build_e, cross_validate, ratio, BuildMethod, TableError, TableKind};
pub use verdict::{Outcome, Verdict, Violation};
pub use verify::{
    verify_cubic_machinery, verify_ratio_bounds, verify_reverse_ultra_machinery,
    verify_substitutions,
};

/// Exact rational `d(n+1,k)/d(n,k)` and interval endpoints, always in lowest terms.
pub type ExactRatio = num_rational::Ratio<BigInt>;
pub type Table = table::TriangleTable<BigInt>;
pub type IntSequence = concavity::Sequence<BigInt>;
pub type LReport = probe::LReport<BigInt>;
pub type CubicCoeffs = verify::CubicCoeffs<BigInt>;
pub type ReverseUltraQuadratic = verify::ReverseUltraQuadratic<BigInt>;
