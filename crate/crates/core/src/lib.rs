//! Exact solving and reduction engineering for path puzzles.
//!
//! The crate implements the parsimonious reduction chain
//!
//! ```text
//! Positive 1-in-3-SAT -> 3DM -> Numerical 4DM -> Numerical 3DM -> Length Offsets -> Path Puzzle
//! ```
//!
//! together with brute-force counting oracles for every problem on the
//! chain, an exact path-puzzle counter, and a harness that checks that each
//! stage preserves the number of solutions.
//!
//! Modules:
//! - [`instances`]: domain types, validation, and the line-oriented text formats.
//! - [`oracles`]: naive exact counters/enumerators used as ground truth.
//! - [`reductions`]: the first four reductions plus solution lift/project.
//! - [`pathpuzzle`]: the path-puzzle engine and the final reduction.
//! - [`harness`]: instance generators, parsimony reports, and chain runner.

pub mod error;
pub mod harness;
pub mod instances;
pub mod oracles;
pub mod pathpuzzle;
pub mod reductions;
pub mod runs;

pub use error::{Error, Result};
pub use instances::{
    Assignment, Cell, Cnf1in3, Door, GridPath, Int, Label, LengthOffsetsInstance,
    LengthOffsetsSolution, NumericalMatchingInstance, NumericalMatchingSolution, PathPuzzle, Side,
    SolutionCount, TextFormat, ThreeDmSolution, Tripartite3dm, Violation,
};
pub use runs::Runs;
