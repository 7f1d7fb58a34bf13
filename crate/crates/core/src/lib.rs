//! Toric bases of toric ideals of graphs.
//!
//! Two independent engines compute circuits, Markov bases, universal Gröbner
//! bases and Graver bases:
//!
//! * the graph engine ([`enumerate`]) builds them from the block structure of
//!   even closed walks;
//! * the lattice oracle ([`oracle`]) works on any integer matrix via kernel
//!   lattices, completion, fibers and exact linear feasibility.
//!
//! [`families`] generates the extremal graph families, [`nonpointed`] handles
//! the configuration `{1, -1}`, and [`report`] / [`experiments`] tie the
//! engines together into reports and reproducible experiments.

pub mod binomial;
pub mod blocks;
pub mod budget;
pub mod classify;
pub mod cycles;
pub mod enumerate;
pub mod error;
pub mod experiments;
pub mod families;
pub mod graph;
pub mod nonpointed;
pub mod oracle;
pub mod report;
pub mod walk;

pub use binomial::Binomial;
pub use blocks::{block_decomposition, block_tree, internal_block_distance, BlockDecomposition, BlockKind, BlockTree};
pub use budget::Budget;
pub use error::{Result, ToricError};
pub use graph::Graph;
pub use walk::{binomial_of_walk, chords_of, sinks, Chord, ChordKind, EvenClosedWalk, SinkSet};
