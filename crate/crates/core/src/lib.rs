//! Numerical toolkit for the Neil algebra `{f in H^inf : f'(0) = 0}`.
//!
//! The crate computes constrained Szego distances for positive weights on
//! the circle, builds the family of Hardy spaces `H^2_alpha` together with
//! their kernels, projections and Toeplitz operators, and runs
//! invertibility scans with primal/dual distance brackets.

pub mod error;
pub mod hardy_alpha;
pub mod io;
pub mod linalg;
pub mod report;
pub mod szego;
pub mod toeplitz_alpha;
pub mod trig_core;
pub mod weights;
pub mod widom;

pub use error::{Error, Result};
pub use hardy_alpha::Alpha;
pub use num_complex::Complex64;
pub use trig_core::{GridFn, TrigPoly, Window};
pub use weights::{Weight, WeightAnalysis};
pub use report::{Record, Report, Table, ToeplitzReport};
pub use szego::SzegoReport;
pub use widom::{MElement, Symbol, WidomReport};
