//! Library surface of the CLI: the CSV record schema, shared with the
//! integration tests that verify round-tripping and determinism.

pub mod records;
