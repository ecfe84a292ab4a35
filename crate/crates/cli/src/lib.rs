//! Library half of the `hankel-spectra` command line: configuration, symbol input,
//! the report builders behind each subcommand and the verification suites.

pub mod approx;
pub mod boundary;
pub mod config;
pub mod exact;
pub mod input;
pub mod output;
pub mod verify;

pub use config::{Format, RunConfig};
pub use input::{parse_symbol, UsageError};
