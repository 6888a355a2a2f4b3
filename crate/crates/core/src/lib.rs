pub mod appendix;
pub mod cli;
pub mod constructions;
pub mod density;
pub mod graph;
pub mod oracle;
pub mod shifting;
