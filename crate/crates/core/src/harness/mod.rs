//! Instance generators, parsimony reports, and the end-to-end chain runner.

mod chain;
mod generate;
mod report;

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

pub use chain::{build_stage, run_chain, ChainRun, ChainStep};
pub use generate::{gen_instance, GenSpec};
pub use report::{check_parsimony, check_reduction, ParsimonyReport, RoundTrip, Verdict};

use crate::error::{Error, Result};
use crate::instances::{
    Assignment, Cnf1in3, GridPath, LengthOffsetsInstance, LengthOffsetsSolution,
    NumericalMatchingInstance, NumericalMatchingSolution, PathPuzzle, SolutionCount, TextFormat,
    ThreeDmSolution, Tripartite3dm,
};
use crate::oracles::{self, OracleCaps};
use crate::pathpuzzle::{self, SearchOptions};

/// Oracle caps and search limits shared by everything that counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Context {
    pub caps: OracleCaps,
    pub search: SearchOptions,
}

/// The problems on the chain. Numerical matching is split by arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    OneInThree,
    Tdm,
    N4dm,
    N3dm,
    Lo,
    Pp,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::OneInThree,
        ProblemKind::Tdm,
        ProblemKind::N4dm,
        ProblemKind::N3dm,
        ProblemKind::Lo,
        ProblemKind::Pp,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::OneInThree => "1in3",
            ProblemKind::Tdm => "3dm",
            ProblemKind::N4dm => "n4dm",
            ProblemKind::N3dm => "n3dm",
            ProblemKind::Lo => "lo",
            ProblemKind::Pp => "pp",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| {
                format!("unknown problem `{s}` (expected 1in3, 3dm, n4dm, n3dm, lo or pp)")
            })
    }
}

/// An instance of any problem on the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    OneInThree(Cnf1in3),
    Tdm(Tripartite3dm),
    Numerical(NumericalMatchingInstance),
    Lo(LengthOffsetsInstance),
    Pp(PathPuzzle),
}

impl Instance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::OneInThree(_) => ProblemKind::OneInThree,
            Instance::Tdm(_) => ProblemKind::Tdm,
            Instance::Numerical(i) if i.arity() == 4 => ProblemKind::N4dm,
            Instance::Numerical(_) => ProblemKind::N3dm,
            Instance::Lo(_) => ProblemKind::Lo,
            Instance::Pp(_) => ProblemKind::Pp,
        }
    }

    /// Parses any instance format, dispatching on the header keyword.
    pub fn parse_text(text: &str) -> Result<Self> {
        let keyword = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .and_then(|l| l.split_whitespace().next())
            .ok_or_else(|| Error::parse(1, 1, "empty input"))?;
        Ok(match keyword {
            "p1in3" => Instance::OneInThree(Cnf1in3::parse_text(text)?),
            "3dm" => Instance::Tdm(Tripartite3dm::parse_text(text)?),
            "nkdm" => Instance::Numerical(NumericalMatchingInstance::parse_text(text)?),
            "lo" => Instance::Lo(LengthOffsetsInstance::parse_text(text)?),
            "pp" => Instance::Pp(PathPuzzle::parse_text(text)?),
            other => {
                return Err(Error::parse(
                    1,
                    1,
                    format!("unknown instance header `{other}`"),
                ))
            }
        })
    }

    pub fn to_text(&self) -> String {
        match self {
            Instance::OneInThree(i) => i.to_text(),
            Instance::Tdm(i) => i.to_text(),
            Instance::Numerical(i) => i.to_text(),
            Instance::Lo(i) => i.to_text(),
            Instance::Pp(i) => i.to_text(),
        }
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn digest(&self) -> String {
        digest_text(&self.to_text())
    }

    pub fn count(&self, ctx: &Context) -> Result<SolutionCount> {
        match self {
            Instance::OneInThree(i) => i.count(ctx),
            Instance::Tdm(i) => i.count(ctx),
            Instance::Numerical(i) => i.count(ctx),
            Instance::Lo(i) => i.count(ctx),
            Instance::Pp(i) => i.count(ctx),
        }
    }

    /// Every solution in its text form, sorted.
    pub fn solve_text(&self, ctx: &Context) -> Result<Vec<String>> {
        fn all<P: Problem>(p: &P, ctx: &Context) -> Result<Vec<String>>
        where
            P::Solution: TextFormat,
        {
            Ok(p.enumerate(ctx)?.iter().map(TextFormat::to_text).collect())
        }
        match self {
            Instance::OneInThree(i) => all(i, ctx),
            Instance::Tdm(i) => all(i, ctx),
            Instance::Numerical(i) => all(i, ctx),
            Instance::Lo(i) => all(i, ctx),
            Instance::Pp(i) => all(i, ctx),
        }
    }

    /// Parses `solution` in the format matching this instance and checks it.
    pub fn verify_text(&self, solution: &str) -> Result<Vec<crate::instances::Violation>> {
        Ok(match self {
            Instance::OneInThree(i) => i.check_solution(&Assignment::parse_text(solution)?),
            Instance::Tdm(i) => i.check_solution(&ThreeDmSolution::parse_text(solution)?),
            Instance::Numerical(i) => {
                i.check_solution(&NumericalMatchingSolution::parse_text(solution)?)
            }
            Instance::Lo(i) => i.check_solution(&LengthOffsetsSolution::parse_text(solution)?),
            Instance::Pp(i) => pathpuzzle::verify_path(i, &GridPath::parse_text(solution)?),
        })
    }
}

pub(crate) fn digest_text(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// A problem with an exact solver: the brute-force oracles, or the path
/// engine for puzzles.
pub trait Problem: TextFormat + Clone {
    type Solution: Clone + PartialEq + fmt::Debug;

    fn count(&self, ctx: &Context) -> Result<SolutionCount>;
    fn enumerate(&self, ctx: &Context) -> Result<Vec<Self::Solution>>;
}

impl Problem for Cnf1in3 {
    type Solution = Assignment;

    fn count(&self, ctx: &Context) -> Result<SolutionCount> {
        oracles::count_1in3(self, &ctx.caps)
    }

    fn enumerate(&self, ctx: &Context) -> Result<Vec<Assignment>> {
        oracles::enumerate_1in3(self, &ctx.caps)
    }
}

impl Problem for Tripartite3dm {
    type Solution = ThreeDmSolution;

    fn count(&self, ctx: &Context) -> Result<SolutionCount> {
        oracles::count_3dm(self, &ctx.caps)
    }

    fn enumerate(&self, ctx: &Context) -> Result<Vec<ThreeDmSolution>> {
        oracles::enumerate_3dm(self, &ctx.caps)
    }
}

impl Problem for NumericalMatchingInstance {
    type Solution = NumericalMatchingSolution;

    fn count(&self, ctx: &Context) -> Result<SolutionCount> {
        oracles::count_nkdm(self, &ctx.caps)
    }

    fn enumerate(&self, ctx: &Context) -> Result<Vec<NumericalMatchingSolution>> {
        oracles::enumerate_nkdm(self, &ctx.caps)
    }
}

impl Problem for LengthOffsetsInstance {
    type Solution = LengthOffsetsSolution;

    fn count(&self, ctx: &Context) -> Result<SolutionCount> {
        oracles::count_lo(self, &ctx.caps)
    }

    fn enumerate(&self, ctx: &Context) -> Result<Vec<LengthOffsetsSolution>> {
        oracles::enumerate_lo(self, &ctx.caps)
    }
}

impl Problem for PathPuzzle {
    type Solution = GridPath;

    fn count(&self, ctx: &Context) -> Result<SolutionCount> {
        pathpuzzle::count_paths(self, &ctx.search)
    }

    fn enumerate(&self, ctx: &Context) -> Result<Vec<GridPath>> {
        pathpuzzle::enumerate_paths(self, &ctx.search)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_dispatch() {
        let i = Instance::parse_text("# c\np1in3 3 1\n1 2 3\n").unwrap();
        assert_eq!(i.kind(), ProblemKind::OneInThree);
        assert_eq!(Instance::parse_text(&i.to_text()).unwrap(), i);
        assert!(Instance::parse_text("bogus 1\n").is_err());
        assert!(Instance::parse_text("").is_err());
    }

    #[test]
    fn digest_is_stable() {
        let i = Instance::OneInThree(Cnf1in3::new(3, vec![[1, 2, 3]]));
        assert_eq!(i.digest(), i.clone().digest());
        assert_eq!(i.digest().len(), 64);
    }

    #[test]
    fn kind_tags_round_trip() {
        for k in ProblemKind::ALL {
            assert_eq!(k.tag().parse::<ProblemKind>().unwrap(), k);
        }
    }
}
