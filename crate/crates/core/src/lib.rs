//! Exact triangles of the polynomial families defined by
//!
//! ```text
//! P_0(x) = 1,    P_n(x) = x / h(n) * sum_{k=1..n} g(k) P_{n-k}(x)
//! ```
//!
//! together with independent oracles (generating series, Euler products,
//! hook-length sums, closed forms) and horizontal / vertical log-concavity
//! scans over the resulting coefficient triangles.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals,
//! stored internally as integer rows over a per-row scale.

pub mod arith;
pub mod concavity;
pub mod error;
pub mod partitions;
pub mod poly;
pub mod polyfam;
pub mod report;
pub mod series;
pub mod stirling;

pub use arith::{harmonic, ArithFn, Rational};
pub use concavity::{ConcavityReport, HZCoefficients, Mode};
pub use error::{Error, Result};
pub use partitions::{HookMultiset, Partition};
pub use poly::Poly;
pub use polyfam::{build_triangle, HFn, Triangle};
pub use report::{CheckReport, Mismatch};
pub use series::Series;
pub use stirling::StirlingColumnTable;
