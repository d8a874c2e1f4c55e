//! Canonical triangulated discs in which every interior vertex has the same
//! degree `t`, together with the exact integer machinery that describes them:
//! sphere lengths as Lucas-sequence terms, ring and cumulative areas, and
//! isoperimetric ratios with their quadratic-irrational limits.
//!
//! Everything numerical is exact. Sequence terms are arbitrary-precision
//! integers produced by the defining recurrences; ratios are fractions in
//! lowest terms; comparisons against square roots are settled by squaring and
//! cross-multiplication. Floating point never decides anything.
//!
//! Module map:
//!
//! - [`exact`] — fractions, square-root comparisons, exact decimal strings
//! - [`lucas`] — Lucas sequences `U`/`V`, partial sums, ratio limits
//! - [`disc`] — canonical layered disc construction and validation
//! - [`metrics`] — breadth-first measurement of spheres, rings, and areas
//! - [`verify`] — executable checks tying the disc counts to the sequences
//! - [`tables`] — table rendering (markdown, CSV, JSON)
//! - [`oeis`] — offline cross-checks against recorded sequence prefixes
//! - [`svg`] — deterministic concentric drawings of discs

pub mod disc;
pub mod exact;
pub mod lucas;
pub mod metrics;
pub mod oeis;
pub mod svg;
pub mod tables;
pub mod verify;

pub use disc::{BuildLimits, DiscError, TriangulatedDisc, VertexTag};
pub use exact::{ExactRatio, SqrtVal};
pub use lucas::{LucasError, LucasParams, RootClass, SumRatioLimit};
pub use metrics::{MetricsError, SphereMetrics, SphereReport};
pub use verify::{CheckStatus, VerificationResult};
