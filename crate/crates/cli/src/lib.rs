//! Reporting pipeline over the `k3g2-core` classification: tables in CSV,
//! JSON and Markdown, literature comparison and the verification suite.

pub mod artifact;
pub mod commands;
pub mod data;
pub mod error;
pub mod published;
pub mod verify;
