//! Numerical laboratory for semigroups of weighted composition operators
//! `T_t f = φ_t' · (f ∘ φ_t)` acting on Hardy, Bergman, mixed norm and
//! weighted Banach spaces of analytic functions on the unit disk.
//!
//! Functions are carried as truncated Taylor series ([`series::PowerSeries`])
//! with an explicit validity radius and truncation bound. Norms are computed
//! from integral means on circles ([`means`]), semigroups are integrated from
//! their generator ([`semiflow`]), the operators act on series
//! ([`operators`]) and the characterization results are exposed as
//! three-valued numerical classifiers ([`criteria`]). The [`cli`] module holds
//! the experiment registry driven by the `semilab` binary.

pub mod cli;
pub mod criteria;
mod error;
pub mod means;
pub mod operators;
pub mod semiflow;
pub mod series;

pub use error::{LabError, Result};
pub use num_complex::Complex64;

/// Shorthand for building a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
