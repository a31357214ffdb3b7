//! Path puzzles: verification, exact counting, and the reduction from
//! Length Offsets.

mod construct;
mod frontier;
mod search;
mod verify;

pub use construct::{
    complete_row_labels, reduce_lo_to_pp, EndpointEvidence, EvidenceSource, LoToPp, MAX_PATH_CELLS,
};
pub use search::{
    count_paths, enumerate_paths, search_paths, Engine, SearchOptions, SearchOutcome,
    MAX_SEARCH_CELLS,
};
pub use verify::verify_path;
