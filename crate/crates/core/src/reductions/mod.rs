//! The reductions of the chain and their solution maps.
//!
//! Each stage is a struct holding the source instance, the constructed
//! target instance, and the bookkeeping needed to map solutions both ways
//! without re-deriving the construction. `lift` maps a source solution to
//! the corresponding target solution, `project` maps back; the two are
//! mutually inverse on solution sets.
//!
//! The final stage (Length Offsets to Path Puzzle) lives in
//! [`crate::pathpuzzle`] but implements the same [`Reduction`] trait.

mod n3dm_to_lo;
mod n4dm_to_n3dm;
mod normalize;
mod sat_to_3dm;
mod tdm_to_n4dm;

use std::fmt;
use std::str::FromStr;

pub use n3dm_to_lo::{check_endpoint_disjoint, reduce_n3dm_to_lo, N3dmToLo};
pub use n4dm_to_n3dm::{reduce_n4dm_to_n3dm, N3Element, N4dmToN3dm};
pub use normalize::{in_window, normalize_nkdm, Normalized};
pub use sat_to_3dm::{reduce_sat_to_3dm, EdgeKind, SatTo3dm, VertexKind};
pub use tdm_to_n4dm::{reduce_3dm_to_n4dm, N4Element, TdmToN4dm};

use crate::error::{Error, Result};
use crate::instances::Violation;

/// The five stages of the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    SatTo3dm,
    TdmToN4dm,
    N4dmToN3dm,
    N3dmToLo,
    LoToPp,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::SatTo3dm,
        Stage::TdmToN4dm,
        Stage::N4dmToN3dm,
        Stage::N3dmToLo,
        Stage::LoToPp,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Stage::SatTo3dm => "sat-3dm",
            Stage::TdmToN4dm => "3dm-n4dm",
            Stage::N4dmToN3dm => "n4dm-n3dm",
            Stage::N3dmToLo => "n3dm-lo",
            Stage::LoToPp => "lo-pp",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.tag() == s)
            .ok_or_else(|| {
                let tags: Vec<_> = Stage::ALL.iter().map(|s| s.tag()).collect();
                format!("unknown stage `{s}` (expected one of {})", tags.join(", "))
            })
    }
}

/// A constructed stage with its solution correspondence.
pub trait Reduction {
    type Source;
    type Target;
    type SourceSolution;
    type TargetSolution;

    const STAGE: Stage;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn lift(&self, solution: &Self::SourceSolution) -> Result<Self::TargetSolution>;
    fn project(&self, solution: &Self::TargetSolution) -> Result<Self::SourceSolution>;
    /// Bookkeeping tables in a line-oriented text form.
    fn trace(&self) -> String;
}

pub(crate) fn require_valid_solution(violations: Vec<Violation>) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSolution(violations))
    }
}

pub(crate) fn require_valid_instance(violations: Vec<Violation>) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidInstance(violations))
    }
}

/// Guard used after lifting/projecting: the produced solution must check out
/// against its instance, otherwise the bookkeeping is inconsistent.
pub(crate) fn require_consistent(violations: Vec<Violation>, what: &str) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Construction(format!(
            "{what} produced an invalid solution: {}",
            violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_tags_round_trip() {
        for s in Stage::ALL {
            assert_eq!(s.tag().parse::<Stage>().unwrap(), s);
        }
        assert!("nope".parse::<Stage>().is_err());
    }
}
