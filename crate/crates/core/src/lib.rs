//! Genus of oriented chord diagrams.
//!
//! A diagram of order `n` pairs the `2n` dots of a circle into `n` ordered
//! pairs. Gluing the squares around paired dots of an annulus gives an
//! oriented surface whose boundary components are read off by walking the
//! `4n` annulus edges ([`walk`]); the genus is `(n + 2 - d) / 2`.
//!
//! The crate also provides the incremental uniform sampler ([`procedure`]),
//! plug detection ([`plugs`]), exhaustive and Monte Carlo statistics with
//! bound checks ([`stats`]), and CSV/JSON reports ([`io`]).

pub mod cli;
pub mod diagram;
pub mod error;
mod fenwick;
pub mod io;
pub mod oracle;
pub mod plugs;
pub mod procedure;
pub mod stats;
pub mod walk;

pub use diagram::{
    diagram_count, edge_order, format_diagram, parse_diagram, Chord, Diagram, Dot, EdgeRef,
    PartialDiagram, Role, Sign,
};
pub use error::{Error, Result};
pub use oracle::gluing_oracle_d;
pub use plugs::{find_plugs, neighbors, return_verdict, Plug, ReturnVerdict};
pub use procedure::{choice_tree, run_procedure, Choice, Closure, ProcedureState, StepEvent};
pub use walk::{boundary_count, decompose, genus, successor, Loop, Segment, WalkDecomposition, WalkStep};
