pub mod budget;
pub mod cli;
pub mod diagnosis;
pub mod error;
pub mod export;
pub mod fault;
pub mod graph;
pub mod iso;
pub mod label;
pub mod props;
pub mod structure;
pub mod topology;
