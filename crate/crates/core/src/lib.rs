pub mod analytics;
pub mod config;
pub mod ingest;
pub mod kgraph;
pub mod pipeline;
pub mod query;
pub mod svo;
