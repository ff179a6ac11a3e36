//! Covering edge-coloured graphs by monochromatic components, and the
//! r-partite hypergraph cover problems that control it.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: coloured graphs, monochromatic components, exact cover
//!   numbers, seeded `G(n, p)` sampling and random-graph property audits.
//! * [`hypergraph`]: r-partite r-uniform hypergraphs, exact vertex cover,
//!   matchings, critical subgraphs and isomorph-free enumeration.
//! * [`auxiliary`]: the auxiliary hypergraph `H(G, W, c)` with its `ed` and
//!   `vt` maps, and the certificate translations between the two worlds.
//! * [`adversarial`]: colourings built from edge assignments, which turn a
//!   hypergraph with large cover number into a lower bound for a graph.
//! * [`coverability`]: intersecting k-covers, (k, m)-coverable chains and
//!   bounded extremal searches.
//! * [`lab`]: seeded experiment drivers with CSV/JSON output.

pub mod adversarial;
pub mod auxiliary;
pub mod coverability;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod lab;
pub mod rng;

pub use error::{Error, Result};

/// Crate version embedded into experiment outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
