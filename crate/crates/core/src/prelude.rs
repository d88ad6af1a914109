// Shared alloc re-exports so modules read the same with or without std.
pub(crate) use alloc::{
    boxed::Box,
    collections::{BTreeMap, BTreeSet},
    format,
    string::{String, ToString},
    vec,
    vec::Vec,
};
