//! Exact computation of the subgraph component polynomial Q(G;x,y), the
//! bivariate generating function counting vertex induced subgraphs by size
//! and number of connected components, together with the invariants,
//! reliability distributions, reconstruction and polynomial bridges that
//! can be read off it.
//!
//! The `parallel` feature (on by default) backs the heavy inner loops —
//! subset expansion, census sweeps, Monte Carlo — with rayon; without it
//! every code path falls back to sequential loops with identical results.

pub mod bridges;
pub mod derived;
pub mod error;
pub mod graph;
pub mod poly;
pub mod q;
pub mod selftest;
pub mod tw;

pub use error::{Error, Result};
pub use graph::Graph;
pub use poly::{BiPoly, TriPoly, UniPoly};
pub use q::{q_brute_force, q_recursive, Method, QCache, QResult};
