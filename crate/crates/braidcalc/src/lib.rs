//! Braid calculus: braid words and their defining relations, Markov moves,
//! L-moves in algebraic form, Morse link diagrams with Reidemeister
//! rewrites, diagram-to-braid conversion, and independent bracket/Jones
//! oracles that certify every move preserves the closure's isotopy class.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here is freely shareable across threads.

pub mod braid;
pub mod braiding;
pub mod diagram;
pub mod gen;
pub mod laurent;
pub mod oracle;

pub use braid::{BraidWord, Direction, Letter, Permutation, RelationKind, Side, Sign};
pub use braiding::{closure, to_braid, Algorithm, UpArc};
pub use diagram::{DiagramFile, Event, MorseDiagram, Orientation};
pub use laurent::{JonesPoly, LaurentPoly};
