// SPDX-License-Identifier: Apache-2.0

//! Scale-indexed distance families `d_r` and the structures built on them:
//! exact 1-D tiling spaces, piecewise-linear mapping spaces, finite-sample
//! entourages, the chain metrization, and numeric plot checks.

pub mod diffeology;
pub mod distance;
pub mod error;
pub mod exec;
pub mod family;
pub mod number;
pub mod report;
pub mod sampling;
pub mod mapping_space;
pub mod metrization;
pub mod tiling;
pub mod uniformity;

pub use distance::{ArithmeticMode, ExtendedDistance, Scale};
pub use error::{Error, Result};
pub use number::{Scalar, Q};
