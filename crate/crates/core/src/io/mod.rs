//! Caches, reports, plots and the command pipeline.

pub mod cache;
pub mod xray;
pub mod pipeline;
pub mod report;
