use std::fmt::{self, Write};
use std::time::{Duration, Instant};

use super::{digest_text, Context, Instance, Problem};
use crate::error::{Error, Result};
use crate::instances::{SolutionCount, TextFormat};
use crate::pathpuzzle::reduce_lo_to_pp;
use crate::reductions::{
    reduce_3dm_to_n4dm, reduce_n3dm_to_lo, reduce_n4dm_to_n3dm, reduce_sat_to_3dm, Reduction, Stage,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    Mismatch,
    OracleCap,
    SearchBudget,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::Mismatch => "mismatch",
            Verdict::OracleCap => "oracle-cap",
            Verdict::SearchBudget => "search-budget",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Outcome of mapping every enumerated solution across a stage and back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundTrip {
    Passed,
    Failed(String),
    /// Not attempted because a side could not be enumerated.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsimonyReport {
    pub stage: Stage,
    pub source_digest: String,
    pub source_count: Option<SolutionCount>,
    pub target_count: Option<SolutionCount>,
    pub round_trip: RoundTrip,
    pub verdict: Verdict,
    pub source_elapsed: Duration,
    pub target_elapsed: Duration,
}

impl ParsimonyReport {
    /// Line-oriented text with a fixed field order. Timings come last so
    /// the lines before them are reproducible from the source digest.
    pub fn to_text(&self) -> String {
        let mut out = self.outcome_text();
        let _ = writeln!(
            out,
            "source-seconds {:.6}",
            self.source_elapsed.as_secs_f64()
        );
        let _ = writeln!(
            out,
            "target-seconds {:.6}",
            self.target_elapsed.as_secs_f64()
        );
        out
    }

    /// The report without timings.
    pub fn outcome_text(&self) -> String {
        let count =
            |c: &Option<SolutionCount>| c.as_ref().map_or("-".to_string(), ToString::to_string);
        let mut out = String::new();
        let _ = writeln!(out, "stage {}", self.stage);
        let _ = writeln!(out, "source-digest {}", self.source_digest);
        let _ = writeln!(out, "source-count {}", count(&self.source_count));
        let _ = writeln!(out, "target-count {}", count(&self.target_count));
        let rt = match &self.round_trip {
            RoundTrip::Passed => "passed".to_string(),
            RoundTrip::Failed(m) => format!("failed {m}"),
            RoundTrip::Skipped => "skipped".to_string(),
        };
        let _ = writeln!(out, "round-trip {rt}");
        let _ = writeln!(out, "verdict {}", self.verdict);
        out
    }
}

enum Side<T> {
    Solved(Vec<T>),
    Stopped(Verdict),
}

fn solve<P: Problem>(p: &P, ctx: &Context) -> Result<(Side<P::Solution>, Duration)> {
    let t0 = Instant::now();
    let side = match p.enumerate(ctx) {
        Ok(v) => Side::Solved(v),
        Err(Error::OracleCap(_)) => Side::Stopped(Verdict::OracleCap),
        Err(Error::SearchBudget(_)) => Side::Stopped(Verdict::SearchBudget),
        Err(e) => return Err(e),
    };
    Ok((side, t0.elapsed()))
}

fn round_trip<R>(r: &R, sources: &[R::SourceSolution], targets: &[R::TargetSolution]) -> RoundTrip
where
    R: Reduction,
    R::SourceSolution: PartialEq + fmt::Debug,
    R::TargetSolution: PartialEq + fmt::Debug,
{
    for s in sources {
        let lifted = match r.lift(s) {
            Ok(l) => l,
            Err(e) => return RoundTrip::Failed(format!("lift of {s:?} failed: {e}")),
        };
        if !targets.contains(&lifted) {
            return RoundTrip::Failed(format!(
                "lift of {s:?} is not an enumerated target solution"
            ));
        }
        match r.project(&lifted) {
            Ok(p) if p == *s => {}
            Ok(p) => return RoundTrip::Failed(format!("project(lift({s:?})) = {p:?}")),
            Err(e) => return RoundTrip::Failed(format!("project after lift failed: {e}")),
        }
    }
    for (k, t) in targets.iter().enumerate() {
        let projected = match r.project(t) {
            Ok(p) => p,
            Err(e) => {
                return RoundTrip::Failed(format!(
                    "project of target solution {} failed: {e}",
                    k + 1
                ))
            }
        };
        match r.lift(&projected) {
            Ok(l) if l == *t => {}
            Ok(_) => {
                return RoundTrip::Failed(format!(
                    "lift(project(target solution {})) is a different solution",
                    k + 1
                ))
            }
            Err(e) => return RoundTrip::Failed(format!("lift after project failed: {e}")),
        }
    }
    RoundTrip::Passed
}

/// Counts both sides of a constructed stage and round-trips every solution.
/// Cap and budget signals become verdicts; other errors propagate.
pub fn check_reduction<R>(r: &R, ctx: &Context) -> Result<ParsimonyReport>
where
    R: Reduction,
    R::Source: Problem<Solution = R::SourceSolution>,
    R::Target: Problem<Solution = R::TargetSolution>,
    R::SourceSolution: PartialEq + fmt::Debug,
    R::TargetSolution: PartialEq + fmt::Debug,
{
    let source_digest = digest_text(&r.source().to_text());
    let (src, source_elapsed) = solve(r.source(), ctx)?;
    let (tgt, target_elapsed) = match src {
        Side::Solved(_) => solve(r.target(), ctx)?,
        Side::Stopped(_) => (Side::Stopped(Verdict::OracleCap), Duration::ZERO),
    };
    let mut report = ParsimonyReport {
        stage: R::STAGE,
        source_digest,
        source_count: None,
        target_count: None,
        round_trip: RoundTrip::Skipped,
        verdict: Verdict::OracleCap,
        source_elapsed,
        target_elapsed,
    };
    match (&src, &tgt) {
        (Side::Solved(s), Side::Solved(t)) => {
            report.source_count = Some(s.len().into());
            report.target_count = Some(t.len().into());
            report.round_trip = round_trip(r, s, t);
            report.verdict = if s.len() == t.len() && report.round_trip == RoundTrip::Passed {
                Verdict::Equal
            } else {
                Verdict::Mismatch
            };
        }
        (Side::Stopped(v), _) => report.verdict = *v,
        (Side::Solved(s), Side::Stopped(v)) => {
            report.source_count = Some(s.len().into());
            report.verdict = *v;
        }
    }
    Ok(report)
}

/// Builds `stage` from `source` and checks it; see [`check_reduction`].
pub fn check_parsimony(stage: Stage, source: &Instance, ctx: &Context) -> Result<ParsimonyReport> {
    match (stage, source) {
        (Stage::SatTo3dm, Instance::OneInThree(f)) => check_reduction(&reduce_sat_to_3dm(f)?, ctx),
        (Stage::TdmToN4dm, Instance::Tdm(t)) => check_reduction(&reduce_3dm_to_n4dm(t)?, ctx),
        (Stage::N4dmToN3dm, Instance::Numerical(n)) => {
            check_reduction(&reduce_n4dm_to_n3dm(n)?, ctx)
        }
        (Stage::N3dmToLo, Instance::Numerical(n)) => check_reduction(&reduce_n3dm_to_lo(n)?, ctx),
        (Stage::LoToPp, Instance::Lo(l)) => check_reduction(&reduce_lo_to_pp(l)?, ctx),
        (stage, other) => Err(Error::Precondition(format!(
            "stage {stage} cannot start from a {} instance",
            other.kind()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Cnf1in3, LengthOffsetsInstance, NumericalMatchingInstance};
    use crate::oracles::OracleCaps;

    #[test]
    fn single_clause_sat_stage() {
        let f = Instance::OneInThree(Cnf1in3::new(3, vec![[1, 2, 3]]));
        let r = check_parsimony(Stage::SatTo3dm, &f, &Context::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Equal);
        assert_eq!(r.source_count, Some(3u64.into()));
        assert_eq!(r.target_count, Some(3u64.into()));
        let text = r.to_text();
        assert!(text.starts_with("stage sat-3dm\nsource-digest "));
        assert!(text.contains("verdict equal\n"));
    }

    #[test]
    fn three_set_instance_to_offsets() {
        let n =
            NumericalMatchingInstance::new(vec![vec![5, 6, 7], vec![4, 5, 5], vec![4, 4, 5]], 15);
        let r = check_parsimony(
            Stage::N3dmToLo,
            &Instance::Numerical(n),
            &Context::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Equal);
        assert_eq!(r.source_count, Some(1u64.into()));
    }

    #[test]
    fn cap_becomes_verdict() {
        let ctx = Context {
            caps: OracleCaps {
                sat_variables: 2,
                ..OracleCaps::default()
            },
            ..Context::default()
        };
        let f = Instance::OneInThree(Cnf1in3::new(3, vec![[1, 2, 3]]));
        let r = check_parsimony(Stage::SatTo3dm, &f, &ctx).unwrap();
        assert_eq!(r.verdict, Verdict::OracleCap);
        assert_eq!(r.round_trip, RoundTrip::Skipped);
    }

    #[test]
    fn stage_and_instance_must_agree() {
        let lo = Instance::Lo(LengthOffsetsInstance::new(vec![1], vec![1]));
        assert!(matches!(
            check_parsimony(Stage::SatTo3dm, &lo, &Context::default()),
            Err(Error::Precondition(_))
        ));
    }
}
