//! Unramified Brauer groups (2-torsion) of simple involution surface bundles
//! over rational surfaces, computed from combinatorial degeneration data by
//! linear algebra over GF(2).
//!
//! The crate also verifies a toric resolution of the `uv = xyz` singularity.
//!
//! ```
//! let cfg = isbrauer::dsl::builtin("hpt").unwrap();
//! let report = isbrauer::brauer::unramified_brauer(&cfg).unwrap();
//! assert_eq!(report.h2nr_dim, 1);
//! ```

pub mod brauer;
pub mod cli;
pub mod dsl;
pub mod f2;
pub mod model;
pub mod report;
pub mod toric;

pub use brauer::{brute_force_unramified, ramification_lift, unramified_brauer, BrauerReport};
pub use dsl::{emit, parse};
pub use f2::{F2Matrix, F2Vector, Subspace};
pub use model::{validate, Configuration, ValidationReport};

/// Lattice vector with machine-word coordinates.
pub type LatticeVector = toric::LatticeVector<i64>;
/// Cone with machine-word coordinates.
pub type Cone = toric::Cone<i64>;
/// Fan with machine-word coordinates.
pub type Fan = toric::Fan<i64>;
pub type HilbertBasis = toric::HilbertBasis<i64>;
pub type SmoothnessCertificate = toric::SmoothnessCertificate<i64>;
pub type DemoReport = toric::DemoReport<i64>;
