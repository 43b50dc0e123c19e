//! Exact q-series, three-colored partitions and initial ideals for arc spaces
//! of `A_{r−1}` surface singularities.

pub mod arc;
pub mod colored;
pub mod identity;
pub mod monomial;
pub mod partition;
pub mod series;
