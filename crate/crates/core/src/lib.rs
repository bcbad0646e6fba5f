pub mod basecase;
pub mod construct;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod solver;
pub mod system;

pub use error::{Error, Result};
pub use graph::{gen_graph, BareSpider, Graph, GraphDoc, GraphSpec, TreeStats};
pub use system::{check_path, separation_check, ColoredPath, Mode, Palette, PathSystem, SeparationReport};
