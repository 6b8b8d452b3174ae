//! Combinatorics of Schubert classes on partial flag varieties of types A,
//! B and D: index validation and enumeration, one-line Weyl windows,
//! root-system data, pushforward and fiber classes under the canonical
//! projections, multi-rigidity classification, and a Littlewood-Richardson
//! oracle used for self-verification.

pub mod flow;
pub mod index;
pub mod rigidity;
pub mod roots;
pub mod window;

pub use index::{
    check_restriction_sequence, enumerate, parse_shape, Component, Entry, Family, FlagShape,
    IndexError, InvariantKind, RestrictionReport, RestrictionSequence, SchubertIndex,
};
pub use window::{index_to_window, is_minimal_rep, length, window_to_index, WeylWindow};
