//! Command-line front end: edge-list and DOT formats, verification reports,
//! and the `maxline` command tree.

pub mod app;
pub mod format;
pub mod report;

pub use app::run;
pub use format::{emit, parse_edge_list, Format, FormatError};
