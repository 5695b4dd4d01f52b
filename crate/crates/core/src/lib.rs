//! Count matroids, matroid union, cofactor rank certificates and
//! reconstruction of graphs from their matroids.
//!
//! The crate is `no_std` and needs only `alloc`. Graph I/O, sampling and
//! the command line live in the `graphmat` companion crate.

#![no_std]

extern crate alloc;

pub mod bitset;
pub mod cofactor;
pub mod connectivity;
pub mod construct;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod graph;
pub mod iso;
pub mod matroid;
pub mod oracle;
pub mod orientation;
pub mod reconstruct;

pub use bitset::{BitSet, EdgeSet, VertexSet};
pub use error::{Error, Result};
pub use graph::{Edge, MultiGraph, Orientation, UnionFind};
