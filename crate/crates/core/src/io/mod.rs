//! Text formats: monoid files and JSON system documents.

pub mod monoid_file;
pub mod system_doc;

pub use monoid_file::{emit_monoid_file, parse_monoid_file, parse_monoid_file_with, MonoidFile};
pub use system_doc::{emit_system, parse_system, ParsedSystem, SystemDoc, FORMAT_VERSION};
