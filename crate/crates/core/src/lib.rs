//! Finite-scale machinery for labeled Schreier graphs: rooted colored
//! balls with a canonical form and the 2^{-r} ball-agreement metric,
//! nonrepetitive-coloring checkers with a constructive resampling engine
//! and the associated avoidance constants, root-change dynamics with
//! colored-labeled automorphisms, and exact empirical statistics of sofic
//! approximation stages.

pub mod builders;
pub mod coloring;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod io;
pub mod measures;
pub mod pattern;

pub use error::{Error, Result};
pub use graph::{Coloring, GeneratorSet, GraphBuilder, Rooted, SchreierGraph, Violation};
pub use pattern::{BallDistance, BallPattern};
