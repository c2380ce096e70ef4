//! Exact graph-density invariants, edge-rooted products, colour-forced
//! structures and a two-round Ramsey game simulator on random graphs.

pub mod error;
pub mod density;
pub mod graph;
pub mod product;
pub mod colouring;
pub mod forcing;
pub mod game;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
