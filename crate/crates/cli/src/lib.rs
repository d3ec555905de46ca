//! Library surface of the CLI: argument types, table IO, and the
//! dispatcher, kept importable for the integration tests.

pub mod cli;
pub mod io;
pub mod run;
