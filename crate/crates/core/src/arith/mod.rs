//! Exact integer and real quadratic arithmetic.

pub mod hj;
pub mod intmat;
pub mod module;
pub mod snf;
pub mod surd;

pub use hj::{hj_expansion, surd_from_cycle, HjExpansion};
pub use intmat::IntMat2;
pub use module::{mult_matrix, QuadModule};
pub use snf::{elementary_divisors, smith_normal_form, AbelianInvariants};
pub use surd::{eigen_unit, QuadSurd};
