//! Support code for the `cuspcalc` binary: the golden-value corpus and the
//! cycle diagram writer.

pub mod corpus;
pub mod diagram;
