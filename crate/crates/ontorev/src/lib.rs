//! File formats, corpus generation, benchmarks and the command-line
//! front end for [`ontorev_core`].

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod files;
pub mod report;
pub mod run;
