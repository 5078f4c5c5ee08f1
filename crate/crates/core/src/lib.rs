//! Exact computation of the linear and circular crossing statistics on set
//! partitions: distributions, moments, asymptotic approximations, extremal
//! values and uniform sampling.

pub mod asymptotics;
pub mod crossings;
pub mod distribution;
pub mod error;
pub mod extremal;
pub mod moments;
pub mod exactnum;
pub mod partitions;
pub mod qpoly;
pub mod sampling;
pub mod verify;

pub use crossings::{cr_circular, cr_linear, Statistic};
pub use error::{Error, Result};
pub use exactnum::{BigInt, BigRational};
pub use partitions::{IntegerPartition, SetPartition};
pub use qpoly::{LaurentPoly, RationalFn, TruncatedSeries};
