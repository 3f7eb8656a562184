//! Combinatorial calculus of surface cusp singularities over exact integers.
//!
//! Cycles are cyclic words of negative self-intersection numbers. Everything
//! here is exact: matrices and surds carry arbitrary-precision integers.

pub mod arith;
pub mod blowup;
pub mod covers;
pub mod cycle;
pub mod error;
pub mod ia;
pub mod lci;

pub use cycle::{AnticanSeq, CuspCycle};
pub use error::{CuspError, Result};
