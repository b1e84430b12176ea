//! Exact-arithmetic bounds for codes and designs.
//!
//! The crate computes linear-programming bounds (codes, designs, energy),
//! the closed-form universal bounds (Singleton, Rao/Hamming, Levenshtein,
//! universal energy lower bounds) and their spherical analogues, and
//! analyzes explicit codes and point sets for attainment. Hamming-side
//! arithmetic is exact rational throughout; the spherical side works with
//! rational kernels behind a floating-point surface.

pub mod bounds;
pub mod code;
pub mod delsarte;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod jacobi;
pub mod kraw;
pub mod lp;
pub mod potential;
pub mod ratpoly;
pub mod report;
pub mod space;

pub use error::{Error, Result};
pub use exact::Rat;
pub use space::HammingSpace;
