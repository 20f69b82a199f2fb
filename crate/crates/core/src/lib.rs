//! Classification of graphs by the rank of their adjacency matrix.

pub mod canon;
pub mod codec;
pub mod enumerate;
pub mod error;
pub mod extension;
pub mod friendship;
pub mod generate;
pub mod graph;
pub mod linalg;
pub mod trees;

pub use canon::{canonical_form, CanonicalForm};
pub use enumerate::{EnumerationOptions, Strategy};
pub use error::{Error, Result};
pub use graph::Graph;
