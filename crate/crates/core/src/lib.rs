//! Gromov-Witten invariants of the Lagrangian Grassmannian `LG(n)`,
//! intersection numbers on Lagrangian Quot schemes, and counts of maximal
//! Lagrangian subbundles, evaluated by root-of-unity sums.
//!
//! The sums run over exact cyclotomic arithmetic by default; a floating
//! backend is available for cross-checks. An independent path through the
//! quantum cohomology ring lives in [`oracle`].

pub mod arith;
pub mod combinatorics;
pub mod error;
pub mod expr;
pub mod gw;
pub mod oracle;
pub mod suites;
pub mod symfun;

pub use arith::{Backend, CyclotomicField, CyclotomicNumber, FloatBackend};
pub use combinatorics::{IndexTuple, Partition, StrictPartition};
pub use error::{Error, Result};
pub use expr::{SchubertExpression, Term};
pub use gw::{Engine, MaximalCount};
pub use oracle::QHAlgebra;
