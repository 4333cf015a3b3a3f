//! File formats, report writers, parallel counting and the command-line
//! front end built on `intlat-core`.

pub mod cli;
pub mod corpus;
pub mod descriptor;
pub mod parallel;
pub mod report;

pub use descriptor::{descriptor_to_json, load_descriptor, parse_descriptor, DescriptorError};
pub use parallel::count_by_norm_parallel;
