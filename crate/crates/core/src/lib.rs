//! Harmonic analysis on bounded Vilenkin groups at finite resolution:
//! mixed-radix group arithmetic, fast character transforms, Dirichlet and
//! Fejér kernels with exact and floating-point constructions, Fejér means
//! with truncated maximal operators, and martingale Hardy-space quasinorms.
//!
//! The crate is `no_std`-compatible (with `alloc`); the companion CLI crate
//! carries IO and file formats.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod exact;
pub mod group;
pub mod hardy;
pub mod kernels;
pub mod means;
pub mod transform;

pub use error::Error;
pub use group::{parse_radices, Coset, CosetFamily, GroupSpec, Index, Point, DEFAULT_ORDER_CAP};
pub use num_complex::Complex64;
pub use transform::{GroupFunction, Spectrum, Transform};
