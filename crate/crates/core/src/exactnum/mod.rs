//! Exact rational and cyclotomic arithmetic.
//!
//! Every equality decision downstream goes through these types; the complex
//! float embedding exists only for display and cross-checks.

mod cyclopoly;
mod cyclotomic;
mod rational;

pub use cyclotomic::{cos_pi, cyc_root, sin_pi, sin_pi_inverse, Cyclotomic};
pub use rational::Rational;
