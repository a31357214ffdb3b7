//! Numerical 3DM to Length Offsets.
//!
//! Each `x` becomes an interval length, and a triple `(x, y, z)` places the
//! interval at `[y, t - z)`. The density at position `i` is the number of
//! intervals that would cover it if every `y` were a start and every `t - z`
//! an end, which is `n - #{y > i} - #{z : t - z <= i}`. Because all numbers
//! lie strictly between `t/4` and `t/2`, starts fall below `t/2` and ends
//! above it, so no solution has an interval starting where another ends.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::{
    in_window, require_consistent, require_valid_instance, require_valid_solution, Reduction, Stage,
};
use crate::error::{Error, Result};
use crate::instances::{
    Int, LengthOffsetsInstance, LengthOffsetsSolution, NumericalMatchingInstance,
    NumericalMatchingSolution,
};
use crate::runs::RunsBuilder;

#[derive(Clone, Debug)]
pub struct N3dmToLo {
    source: NumericalMatchingInstance,
    target: LengthOffsetsInstance,
}

impl N3dmToLo {
    /// Every solution of the target has pairwise distinct start and end
    /// points; guaranteed by the window on the source numbers.
    pub fn endpoints_disjoint(&self) -> bool {
        true
    }
}

pub fn reduce_n3dm_to_lo(inst: &NumericalMatchingInstance) -> Result<N3dmToLo> {
    require_valid_instance(inst.validate())?;
    if inst.arity() != 3 {
        return Err(Error::Precondition(format!(
            "expected 3 sets, got {}",
            inst.arity()
        )));
    }
    if !inst.is_set(0) {
        return Err(Error::Precondition("first set has duplicates".into()));
    }
    if !in_window(inst) {
        return Err(Error::Precondition(
            "elements must lie strictly between t/4 and t/2".into(),
        ));
    }
    let t = inst.target;
    let n = inst.size();
    let mut starts: Vec<Int> = inst.sets[1].clone();
    let mut ends: Vec<Int> = inst.sets[2].iter().map(|&z| t - z).collect();
    starts.sort_unstable();
    ends.sort_unstable();

    let mut breaks: BTreeSet<Int> = starts.iter().chain(&ends).copied().collect();
    breaks.insert(0);
    breaks.insert(t);
    let density = |i: Int| {
        let later_starts = n - starts.partition_point(|&y| y <= i);
        let past_ends = ends.partition_point(|&e| e <= i);
        n - later_starts - past_ends
    };
    let mut b = RunsBuilder::new();
    let points: Vec<Int> = breaks.into_iter().filter(|&p| p <= t).collect();
    for w in points.windows(2) {
        b.push_repeat(density(w[0]), w[1] - w[0]);
    }
    let target = LengthOffsetsInstance {
        lengths: inst.sets[0].clone(),
        horizon: t,
        densities: b.finish(),
    };
    require_consistent(target.validate(), "n3dm-lo construction")?;
    Ok(N3dmToLo {
        source: inst.clone(),
        target,
    })
}

/// Whether no interval of `s` starts where another one ends.
pub fn check_endpoint_disjoint(inst: &LengthOffsetsInstance, s: &LengthOffsetsSolution) -> bool {
    let starts: BTreeSet<Int> = s.offsets.iter().copied().collect();
    !inst
        .lengths
        .iter()
        .zip(&s.offsets)
        .any(|(&a, &b)| a.checked_add(b).is_some_and(|e| starts.contains(&e)))
}

impl Reduction for N3dmToLo {
    type Source = NumericalMatchingInstance;
    type Target = LengthOffsetsInstance;
    type SourceSolution = NumericalMatchingSolution;
    type TargetSolution = LengthOffsetsSolution;

    const STAGE: Stage = Stage::N3dmToLo;

    fn source(&self) -> &NumericalMatchingInstance {
        &self.source
    }

    fn target(&self) -> &LengthOffsetsInstance {
        &self.target
    }

    fn lift(&self, s: &NumericalMatchingSolution) -> Result<LengthOffsetsSolution> {
        require_valid_solution(self.source.check_solution(s))?;
        let offset: HashMap<Int, Int> = s.tuples().iter().map(|t| (t[0], t[1])).collect();
        let offsets = self.target.lengths.iter().map(|a| offset[a]).collect();
        let out = LengthOffsetsSolution::new(offsets);
        require_consistent(self.target.check_solution(&out), "lift")?;
        Ok(out)
    }

    fn project(&self, s: &LengthOffsetsSolution) -> Result<NumericalMatchingSolution> {
        require_valid_solution(self.target.check_solution(s))?;
        let t = self.source.target;
        let tuples = self
            .target
            .lengths
            .iter()
            .zip(&s.offsets)
            .map(|(&a, &b)| vec![a, b, t - a - b])
            .collect();
        let out = NumericalMatchingSolution::new(tuples);
        require_consistent(self.source.check_solution(&out), "project")?;
        Ok(out)
    }

    fn trace(&self) -> String {
        let mut out = String::new();
        for (j, a) in self.target.lengths.iter().enumerate() {
            let _ = writeln!(out, "length {} {a}", j + 1);
        }
        let _ = writeln!(out, "densities {}", self.target.densities.to_text());
        out
    }
}
