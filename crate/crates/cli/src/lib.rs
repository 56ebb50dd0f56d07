//! Reports, sweeps and the JSON document format behind the `fusionlab` binary.

pub mod document;
pub mod suite;

pub use document::{CyclotomicRecord, Kind, LabelRecord, ModularDataDocument, Verdicts};
pub use suite::{run_pair, sweep, verify, CheckOutcome, PairRange, SweepCell, VerifyReport};
