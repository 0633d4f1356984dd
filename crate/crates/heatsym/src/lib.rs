//! Numeric oracles, file formats and checks around the exact engine in
//! `heatsym_core`.

pub mod oracle;
pub mod io;
pub mod report;
pub mod verify;
pub mod run;
