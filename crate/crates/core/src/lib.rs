//! Area imbalance of a disc cut by `2n` equiangular rays through an
//! off-centre point.
//!
//! For odd `n` the even- and odd-numbered slices do not have equal area. This
//! crate evaluates that difference two ways: directly from the slice
//! geometry ([`geometry`]) and from its Fourier expansion in the cut angle
//! ([`fourier`]), whose truncation error is bounded rigorously. [`bounds`]
//! locates and certifies the extremum over the cut angle, and [`verify`]
//! cross-checks everything on parameter grids.

pub mod bounds;
pub mod error;
pub mod fourier;
pub mod geometry;
pub mod quadrature;
pub mod summation;
pub mod verify;

pub use error::{PizzaError, Result};
pub use geometry::{InequityMethod, PizzaConfig, SliceAreaReport};
pub use fourier::{SeriesResult, TruncationPolicy};
