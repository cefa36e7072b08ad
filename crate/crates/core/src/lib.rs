//! Relative interval Betti numbers of persistence modules over finite posets.

#![allow(clippy::needless_range_loop)]

pub mod approx;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod koszul;
pub mod poset;
pub mod random;
pub mod repmod;
pub mod resolve;
pub mod tda;

pub use error::{Error, Result};
pub use exactla::{Field, Mat, Scalar};
pub use poset::{BoundQuiver, Interval, IntervalPoset, Poset};
pub use repmod::{ModMorphism, ModRef, PersModule};
