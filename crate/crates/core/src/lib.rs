//! Enumerating and counting numerical semigroups by genus.
//!
//! Each semigroup of the tree is represented by the bit chain of its
//! right-generators descendant (see [`RgdChain`]). Children are derived from
//! the parent chain by clearing and setting single bits, which makes a full
//! depth-first walk cheap. On top of the walk, [`counter`] adds the closed
//! forms and the level cutoff used to compute a single `n_g`, split into
//! independent tasks that run in parallel.
//!
//! ```
//! use rgd_core::{count_genus, ExploreConfig};
//! assert_eq!(count_genus(&ExploreConfig::new(10)).unwrap(), 204);
//! ```

pub mod chain;
pub mod counter;
pub mod error;
pub mod explorer;
pub mod gapset;
pub mod node;
pub mod oracle;

pub use chain::RgdChain;
pub use counter::{
    boundary_subtree_counts, count_all, count_genus, pseudo_grandchildren, subtree_count,
    CountMode, CountTable, ExploreConfig, MAX_GENUS,
};
pub use error::{Error, Result};
pub use explorer::{
    expand, has_new_right_generator, ordinary_children, CheckLoop, CheckOrder, Collector, Explorer,
    Handler, LevelCounter, Node, Task,
};
pub use gapset::GapSet;
pub use node::{chain_capacity, Classification, NodeState};
