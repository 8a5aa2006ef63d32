//! Level planarity testing and embedding.
//!
//! This crate contains a brute-force level planarity oracle, the pair-order
//! 2-SAT formulation with its greedy embedder, the vertex exchange graph with
//! the component-swap and two-pass embedders, and a differential fuzzer that
//! finds, shrinks and replays instances on which the embedders fail.
//!
//! All algorithms work on a [`ProperLevelGraph`], obtained from a
//! [`LevelGraph`] with [`make_proper`].

pub mod drawing;
pub mod format;
pub mod graph;
pub mod greedy;
pub mod lab;
pub mod oracle;
pub mod pairs;
pub mod pairsat;
pub mod render;
pub mod vegraph;

pub use drawing::{count_crossings, is_planar_drawing, Drawing, DrawingError};
pub use format::{Algo, FormatError, Replay};
pub use graph::{make_proper, Edge, GraphError, LevelGraph, ProperLevelGraph, Vertex, Violation};
pub use greedy::{EmbedError, EmbedOutcome, GreedyPolicy, Trace};
pub use oracle::{brute_force_test, GeneratorConfig, OracleError, OracleVerdict};
pub use pairs::PairLiteral;
pub use pairsat::{build_constraints, greedy_embed, satisfiable, ConstraintSystem};
pub use render::{render_svg, RenderOptions};
pub use vegraph::{
    build_ve_graph, harrigan_healy_embed, healy_kuusik_embed, label_ve_graph, odd_cycle_test,
    CycleVerdict, HHChoices,
};
