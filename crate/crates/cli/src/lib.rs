//! Library surface of the `seqea` command-line tool: the JSON document
//! format and the deterministic report renderers, kept apart from `main`
//! so integration tests can drive them directly.

pub mod doc;
pub mod render;
