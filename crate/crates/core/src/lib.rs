//! Certified lower bounds for linear forms in two logarithms.
pub mod algebraic;
pub mod certificate;
pub mod cli;
pub mod laurent;
pub mod numerics;
pub mod optimizer;
pub mod theorem2;
