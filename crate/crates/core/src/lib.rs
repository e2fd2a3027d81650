//! Exact and interval-rigorous continued-fraction arithmetic for computations
//! on the Markov and Lagrange spectra: lambda-values of bi-infinite sequences,
//! mechanical verification of inequality ledgers over symbolic windows,
//! forcing/replication searches, covering-argument dimension bounds and
//! transfer-operator estimates for Gauss-Cantor sets.

pub mod cf;
pub mod cover;
pub mod digits;
pub mod dim;
pub mod forcing;
pub mod interval;
pub mod prover;
pub mod sets;
pub mod seq;
pub mod surd;

pub use digits::{Alphabet, Digit, Word};
pub use interval::{RInterval, Rat};
pub use seq::{BiSeq, OneSidedSeq, SeqLiteral};
