use super::report::check_reduction;
use super::{Context, Instance, ParsimonyReport};
use crate::error::{Error, Result};
use crate::instances::{NumericalMatchingSolution, TextFormat};
use crate::pathpuzzle::{reduce_lo_to_pp, LoToPp};
use crate::reductions::{
    in_window, normalize_nkdm, reduce_3dm_to_n4dm, reduce_n3dm_to_lo, reduce_n4dm_to_n3dm,
    reduce_sat_to_3dm, N3dmToLo, N4dmToN3dm, Normalized, Reduction, SatTo3dm, Stage, TdmToN4dm,
};

/// One applied step of the chain.
#[derive(Clone, Debug)]
pub enum ChainStep {
    SatTo3dm(SatTo3dm),
    TdmToN4dm(TdmToN4dm),
    /// Shift into the window before a numerical stage.
    Normalize(Normalized),
    N4dmToN3dm(N4dmToN3dm),
    N3dmToLo(N3dmToLo),
    LoToPp(LoToPp),
}

impl ChainStep {
    pub fn stage(&self) -> Option<Stage> {
        match self {
            ChainStep::SatTo3dm(_) => Some(Stage::SatTo3dm),
            ChainStep::TdmToN4dm(_) => Some(Stage::TdmToN4dm),
            ChainStep::Normalize(_) => None,
            ChainStep::N4dmToN3dm(_) => Some(Stage::N4dmToN3dm),
            ChainStep::N3dmToLo(_) => Some(Stage::N3dmToLo),
            ChainStep::LoToPp(_) => Some(Stage::LoToPp),
        }
    }

    pub fn name(&self) -> &'static str {
        self.stage().map_or("normalize", Stage::tag)
    }

    /// The instance this step produces.
    pub fn target_instance(&self) -> Instance {
        match self {
            ChainStep::SatTo3dm(r) => Instance::Tdm(r.target().clone()),
            ChainStep::TdmToN4dm(r) => Instance::Numerical(r.target().clone()),
            ChainStep::Normalize(n) => Instance::Numerical(n.instance.clone()),
            ChainStep::N4dmToN3dm(r) => Instance::Numerical(r.target().clone()),
            ChainStep::N3dmToLo(r) => Instance::Lo(r.target().clone()),
            ChainStep::LoToPp(r) => Instance::Pp(r.target().clone()),
        }
    }

    /// Bookkeeping tables in line-oriented text.
    pub fn trace(&self) -> String {
        match self {
            ChainStep::SatTo3dm(r) => r.trace(),
            ChainStep::TdmToN4dm(r) => r.trace(),
            ChainStep::Normalize(n) => format!("shift {}\n", n.shift),
            ChainStep::N4dmToN3dm(r) => r.trace(),
            ChainStep::N3dmToLo(r) => r.trace(),
            ChainStep::LoToPp(r) => r.trace(),
        }
    }

    /// Maps a source solution in text form to the target solution text.
    pub fn lift_text(&self, solution: &str) -> Result<String> {
        match self {
            ChainStep::SatTo3dm(r) => lift_with(r, solution),
            ChainStep::TdmToN4dm(r) => lift_with(r, solution),
            ChainStep::Normalize(n) => Ok(n
                .lift(&NumericalMatchingSolution::parse_text(solution)?)?
                .to_text()),
            ChainStep::N4dmToN3dm(r) => lift_with(r, solution),
            ChainStep::N3dmToLo(r) => lift_with(r, solution),
            ChainStep::LoToPp(r) => lift_with(r, solution),
        }
    }

    /// Maps a target solution in text form back to the source solution text.
    pub fn project_text(&self, solution: &str) -> Result<String> {
        match self {
            ChainStep::SatTo3dm(r) => project_with(r, solution),
            ChainStep::TdmToN4dm(r) => project_with(r, solution),
            ChainStep::Normalize(n) => Ok(n
                .project(&NumericalMatchingSolution::parse_text(solution)?)?
                .to_text()),
            ChainStep::N4dmToN3dm(r) => project_with(r, solution),
            ChainStep::N3dmToLo(r) => project_with(r, solution),
            ChainStep::LoToPp(r) => project_with(r, solution),
        }
    }
}

fn lift_with<R>(r: &R, solution: &str) -> Result<String>
where
    R: Reduction,
    R::SourceSolution: TextFormat,
    R::TargetSolution: TextFormat,
{
    Ok(r.lift(&R::SourceSolution::parse_text(solution)?)?.to_text())
}

fn project_with<R>(r: &R, solution: &str) -> Result<String>
where
    R: Reduction,
    R::SourceSolution: TextFormat,
    R::TargetSolution: TextFormat,
{
    Ok(r.project(&R::TargetSolution::parse_text(solution)?)?
        .to_text())
}

/// Constructs one stage from `source` without normalizing.
pub fn build_stage(stage: Stage, source: &Instance) -> Result<ChainStep> {
    Ok(match (stage, source) {
        (Stage::SatTo3dm, Instance::OneInThree(f)) => ChainStep::SatTo3dm(reduce_sat_to_3dm(f)?),
        (Stage::TdmToN4dm, Instance::Tdm(t)) => ChainStep::TdmToN4dm(reduce_3dm_to_n4dm(t)?),
        (Stage::N4dmToN3dm, Instance::Numerical(n)) => {
            ChainStep::N4dmToN3dm(reduce_n4dm_to_n3dm(n)?)
        }
        (Stage::N3dmToLo, Instance::Numerical(n)) => ChainStep::N3dmToLo(reduce_n3dm_to_lo(n)?),
        (Stage::LoToPp, Instance::Lo(l)) => ChainStep::LoToPp(reduce_lo_to_pp(l)?),
        (stage, other) => {
            return Err(Error::Precondition(format!(
                "stage {stage} cannot start from a {} instance",
                other.kind()
            )))
        }
    })
}

#[derive(Clone, Debug)]
pub struct ChainRun {
    /// The starting instance followed by the output of every step.
    pub instances: Vec<Instance>,
    pub steps: Vec<ChainStep>,
    /// One report per reduction stage, in order.
    pub reports: Vec<ParsimonyReport>,
}

/// Applies the stages in order from whatever problem `start` is, stopping
/// after `stop` (or at the path puzzle). Every stage is constructed; its
/// report carries an oracle-cap verdict when the solvers would be too slow.
pub fn run_chain(start: Instance, stop: Option<Stage>, ctx: &Context) -> Result<ChainRun> {
    let mut run = ChainRun {
        instances: vec![start.clone()],
        steps: Vec::new(),
        reports: Vec::new(),
    };
    let mut cur = start;
    loop {
        let stage = match &cur {
            Instance::OneInThree(f) => {
                let r = reduce_sat_to_3dm(f)?;
                run.reports.push(check_reduction(&r, ctx)?);
                let next = Instance::Tdm(r.target().clone());
                run.steps.push(ChainStep::SatTo3dm(r));
                cur = next;
                Stage::SatTo3dm
            }
            Instance::Tdm(t) => {
                let r = reduce_3dm_to_n4dm(t)?;
                run.reports.push(check_reduction(&r, ctx)?);
                let next = Instance::Numerical(r.target().clone());
                run.steps.push(ChainStep::TdmToN4dm(r));
                cur = next;
                Stage::TdmToN4dm
            }
            Instance::Numerical(n) if !in_window(n) => {
                let norm = normalize_nkdm(n)?;
                let next = Instance::Numerical(norm.instance.clone());
                run.steps.push(ChainStep::Normalize(norm));
                run.instances.push(next.clone());
                cur = next;
                continue;
            }
            Instance::Numerical(n) if n.arity() == 4 => {
                let r = reduce_n4dm_to_n3dm(n)?;
                run.reports.push(check_reduction(&r, ctx)?);
                let next = Instance::Numerical(r.target().clone());
                run.steps.push(ChainStep::N4dmToN3dm(r));
                cur = next;
                Stage::N4dmToN3dm
            }
            Instance::Numerical(n) if n.arity() == 3 => {
                let r = reduce_n3dm_to_lo(n)?;
                run.reports.push(check_reduction(&r, ctx)?);
                let next = Instance::Lo(r.target().clone());
                run.steps.push(ChainStep::N3dmToLo(r));
                cur = next;
                Stage::N3dmToLo
            }
            Instance::Numerical(n) => {
                return Err(Error::Precondition(format!(
                    "no stage starts from a {}-set numerical instance",
                    n.arity()
                )))
            }
            Instance::Lo(l) => {
                let r = reduce_lo_to_pp(l)?;
                run.reports.push(check_reduction(&r, ctx)?);
                let next = Instance::Pp(r.target().clone());
                run.steps.push(ChainStep::LoToPp(r));
                cur = next;
                Stage::LoToPp
            }
            Instance::Pp(_) => break,
        };
        run.instances.push(cur.clone());
        if stop == Some(stage) {
            break;
        }
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Verdict;
    use crate::instances::Cnf1in3;

    #[test]
    fn single_clause_stops_after_matching() {
        let f = Instance::OneInThree(Cnf1in3::new(3, vec![[1, 2, 3]]));
        let run = run_chain(f, Some(Stage::SatTo3dm), &Context::default()).unwrap();
        assert_eq!(run.instances.len(), 2);
        assert_eq!(run.reports.len(), 1);
        assert_eq!(run.reports[0].verdict, Verdict::Equal);
        assert_eq!(run.reports[0].target_count, Some(3u64.into()));
    }

    #[test]
    fn stage_text_round_trip() {
        let f = Instance::OneInThree(Cnf1in3::new(3, vec![[1, 2, 3]]));
        let step = build_stage(Stage::SatTo3dm, &f).unwrap();
        let lifted = step.lift_text("assign 3\n1 0 0\n").unwrap();
        assert_eq!(step.project_text(&lifted).unwrap(), "assign 3\n1 0 0\n");
        assert!(matches!(step.target_instance(), Instance::Tdm(_)));
        assert!(!step.trace().is_empty());
        assert!(build_stage(Stage::LoToPp, &f).is_err());
    }

    #[test]
    fn single_clause_full_chain_is_constructed() {
        let f = Instance::OneInThree(Cnf1in3::new(3, vec![[1, 2, 3]]));
        let run = run_chain(f, None, &Context::default()).unwrap();
        let stages: Vec<_> = run.reports.iter().map(|r| r.stage).collect();
        assert_eq!(stages, Stage::ALL.to_vec());
        assert!(run
            .steps
            .iter()
            .any(|s| matches!(s, ChainStep::Normalize(_))));
        assert_eq!(run.reports[0].verdict, Verdict::Equal);
        for r in &run.reports[1..] {
            assert_eq!(r.verdict, Verdict::OracleCap);
        }
        let Some(Instance::Lo(lo)) = run.instances.iter().rev().nth(1) else {
            panic!("missing length offsets instance")
        };
        assert_eq!(lo.lengths.len(), 992);
    }
}
