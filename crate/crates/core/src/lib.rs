//! Exact invariants of lens spaces and small Seifert fibered spaces, and a
//! certificate-producing classifier for distance-one surgeries between
//! lens spaces of the form L(n,1).

pub mod conemodel;
pub mod error;
pub mod exactmath;
pub mod lens;
pub mod obstruct;
pub mod seifert;
pub mod surgery;

pub use error::{Error, Result};
pub use exactmath::{q, Rational};
