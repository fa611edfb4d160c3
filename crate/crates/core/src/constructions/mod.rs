//! Goldbach-type decompositions, Chinese remaindering, and rational
//! functions with prescribed reducible fibres.

mod crt;
mod goldbach;
mod spectrum;

pub use crt::{bezout_witness, poly_crt};
pub use goldbach::{goldbach_decompose, GoldbachDecomposition, GoldbachOptions, GoldbachOutcome};
pub use spectrum::{
    spectrum_construct, verify_spectrum, SpectrumChecks, SpectrumOptions, SpectrumOutcome,
    SpectrumResult, SpectrumSpec,
};
