//! Pairwise-sparse tripartite 3DM to Numerical 4-Dimensional Matching.
//!
//! Numbers are written in base `B = 100 n` with six digits, most significant
//! first; the target is `(40, 0, 0, 0, 0, 0)`. Digit sums never reach `B`,
//! so every matching quadruple sums digit by digit. Three quadruple shapes
//! exist: for a chosen triple, one quadruple built from the element "heads"
//! and one built from the link elements; for an unchosen triple, one built
//! from the spare copies.

use std::collections::HashMap;
use std::fmt::Write;

use super::{require_consistent, require_valid_instance, require_valid_solution, Reduction, Stage};
use crate::error::{Error, Result};
use crate::instances::{
    Int, NumericalMatchingInstance, NumericalMatchingSolution, ThreeDmSolution, Tripartite3dm,
};

/// Where a number of the target instance comes from. Element indices are
/// 1-based; `triple` indexes the source triple list from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum N4Element {
    /// `(10, i, 0, 0, 0, 0)` in the first set.
    XHead { x: usize },
    /// `(10, i, -i, 0, 0, 0)` in the first set.
    XSpare { x: usize },
    /// `(12, 0, 0, 0, -j, 0)` in the first set.
    YLink { y: usize },
    /// `(10, 0, 0, j, 0, 0)` in the second set.
    YHead { y: usize },
    /// `(10, 0, 0, j, -j, 0)` in the second set.
    YSpare { y: usize },
    /// `(7, 0, 0, 0, 0, -k)` in the second set.
    ZLink { z: usize },
    /// `(10, 0, 0, 0, 0, k)` in the third set.
    ZHead { z: usize },
    /// `(10, 0, i, 0, j, k)` in the third set.
    TripleUp { triple: usize },
    /// `(11, 0, -i, 0, 0, 0)` in the fourth set.
    XLink { x: usize },
    /// `(10, -i, 0, -j, 0, -k)` in the fourth set.
    TripleDown { triple: usize },
}

#[derive(Clone, Debug)]
pub struct TdmToN4dm {
    source: Tripartite3dm,
    target: NumericalMatchingInstance,
    base: Int,
    /// Provenance of each number, parallel to `target.sets`.
    origin: [Vec<N4Element>; 4],
    third_kind: HashMap<Int, N4Element>,
    fourth_kind: HashMap<Int, N4Element>,
}

impl TdmToN4dm {
    pub fn base(&self) -> Int {
        self.base
    }

    pub fn origin(&self) -> &[Vec<N4Element>; 4] {
        &self.origin
    }

    fn value(&self, e: N4Element) -> Result<Int> {
        let t = |k: usize| self.source.triples[k];
        let d = |i: usize| i as i128;
        let digits: [i128; 6] = match e {
            N4Element::XHead { x } => [10, d(x), 0, 0, 0, 0],
            N4Element::XSpare { x } => [10, d(x), -d(x), 0, 0, 0],
            N4Element::YLink { y } => [12, 0, 0, 0, -d(y), 0],
            N4Element::YHead { y } => [10, 0, 0, d(y), 0, 0],
            N4Element::YSpare { y } => [10, 0, 0, d(y), -d(y), 0],
            N4Element::ZLink { z } => [7, 0, 0, 0, 0, -d(z)],
            N4Element::ZHead { z } => [10, 0, 0, 0, 0, d(z)],
            N4Element::TripleUp { triple } => {
                let [i, j, k] = t(triple);
                [10, 0, d(i), 0, d(j), d(k)]
            }
            N4Element::XLink { x } => [11, 0, -d(x), 0, 0, 0],
            N4Element::TripleDown { triple } => {
                let [i, j, k] = t(triple);
                [10, -d(i), 0, -d(j), 0, -d(k)]
            }
        };
        from_digits(&digits, self.base)
    }
}

fn from_digits(digits: &[i128; 6], base: Int) -> Result<Int> {
    let b = i128::try_from(base).map_err(|_| Error::Overflow("base"))?;
    let mut acc: i128 = 0;
    for &d in digits {
        acc = acc
            .checked_mul(b)
            .and_then(|a| a.checked_add(d))
            .ok_or(Error::Overflow("3dm-n4dm number"))?;
    }
    Int::try_from(acc).map_err(|_| Error::Construction("negative number".into()))
}

pub fn reduce_3dm_to_n4dm(inst: &Tripartite3dm) -> Result<TdmToN4dm> {
    require_valid_instance(inst.validate())?;
    if !inst.is_pairwise_sparse() {
        return Err(Error::Precondition(
            "two triples agree on more than one coordinate".into(),
        ));
    }
    let n = inst.part_size;
    let mult = inst.multiplicities();
    for (axis, ms) in mult.iter().enumerate() {
        if let Some(e) = ms.iter().position(|&m| m == 0) {
            return Err(Error::Precondition(format!(
                "{} element {} lies in no triple",
                ["x", "y", "z"][axis],
                e + 1
            )));
        }
    }

    let base = (n as Int).checked_mul(100).ok_or(Error::Overflow("base"))?;
    let mut origin: [Vec<N4Element>; 4] = Default::default();
    for x in 1..=n {
        origin[0].push(N4Element::XHead { x });
        origin[0].extend((1..mult[0][x - 1]).map(|_| N4Element::XSpare { x }));
        origin[3].push(N4Element::XLink { x });
    }
    for y in 1..=n {
        origin[1].push(N4Element::YHead { y });
        origin[1].extend((1..mult[1][y - 1]).map(|_| N4Element::YSpare { y }));
        origin[0].push(N4Element::YLink { y });
    }
    for z in 1..=n {
        origin[2].push(N4Element::ZHead { z });
        origin[1].push(N4Element::ZLink { z });
    }
    for triple in 0..inst.triples.len() {
        origin[3].push(N4Element::TripleDown { triple });
        origin[2].push(N4Element::TripleUp { triple });
    }

    let mut r = TdmToN4dm {
        source: inst.clone(),
        target: NumericalMatchingInstance::new(Vec::new(), 0),
        base,
        origin,
        third_kind: HashMap::new(),
        fourth_kind: HashMap::new(),
    };
    let mut sets = Vec::with_capacity(4);
    for s in 0..4 {
        let vals = r.origin[s]
            .iter()
            .map(|&e| r.value(e))
            .collect::<Result<Vec<_>>>()?;
        sets.push(vals);
    }
    let target = from_digits(&[40, 0, 0, 0, 0, 0], base)?;
    for (v, &e) in sets[2].iter().zip(&r.origin[2]) {
        r.third_kind.insert(*v, e);
    }
    for (v, &e) in sets[3].iter().zip(&r.origin[3]) {
        r.fourth_kind.insert(*v, e);
    }
    r.target = NumericalMatchingInstance::new(sets, target);
    require_consistent(r.target.validate(), "3dm-n4dm construction")?;
    if !r.target.union_with_sums_is_set(2, 3) {
        return Err(Error::Construction(
            "third set together with its sums against the fourth is not a set".into(),
        ));
    }
    Ok(r)
}

impl Reduction for TdmToN4dm {
    type Source = Tripartite3dm;
    type Target = NumericalMatchingInstance;
    type SourceSolution = ThreeDmSolution;
    type TargetSolution = NumericalMatchingSolution;

    const STAGE: Stage = Stage::TdmToN4dm;

    fn source(&self) -> &Tripartite3dm {
        &self.source
    }

    fn target(&self) -> &NumericalMatchingInstance {
        &self.target
    }

    fn lift(&self, s: &ThreeDmSolution) -> Result<NumericalMatchingSolution> {
        require_valid_solution(self.source.check_solution(s))?;
        let chosen: std::collections::HashSet<&[usize; 3]> = s.triples().iter().collect();
        let mut tuples = Vec::new();
        for (triple, t) in self.source.triples.iter().enumerate() {
            let [x, y, z] = *t;
            let quads: Vec<[N4Element; 4]> = if chosen.contains(t) {
                vec![
                    [
                        N4Element::XHead { x },
                        N4Element::YHead { y },
                        N4Element::ZHead { z },
                        N4Element::TripleDown { triple },
                    ],
                    [
                        N4Element::YLink { y },
                        N4Element::ZLink { z },
                        N4Element::TripleUp { triple },
                        N4Element::XLink { x },
                    ],
                ]
            } else {
                vec![[
                    N4Element::XSpare { x },
                    N4Element::YSpare { y },
                    N4Element::TripleUp { triple },
                    N4Element::TripleDown { triple },
                ]]
            };
            for q in quads {
                tuples.push(
                    q.iter()
                        .map(|&e| self.value(e))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
        }
        let out = NumericalMatchingSolution::new(tuples);
        require_consistent(self.target.check_solution(&out), "lift")?;
        Ok(out)
    }

    fn project(&self, s: &NumericalMatchingSolution) -> Result<ThreeDmSolution> {
        require_valid_solution(self.target.check_solution(s))?;
        let mut triples = Vec::new();
        for q in s.tuples() {
            if let (Some(N4Element::TripleUp { triple }), Some(N4Element::XLink { .. })) =
                (self.third_kind.get(&q[2]), self.fourth_kind.get(&q[3]))
            {
                triples.push(self.source.triples[*triple]);
            }
        }
        let out = ThreeDmSolution::new(triples);
        require_consistent(self.source.check_solution(&out), "project")?;
        Ok(out)
    }

    fn trace(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "base {}", self.base);
        for (s, (vals, kinds)) in self.target.sets.iter().zip(&self.origin).enumerate() {
            for (v, k) in vals.iter().zip(kinds) {
                let _ = writeln!(out, "set {} {v} {k:?}", s + 1);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{count_3dm, count_nkdm, enumerate_3dm, OracleCaps};

    fn small() -> Tripartite3dm {
        // Cyclic Latin square of order 3: sparse, three transversals.
        let mut t = Vec::new();
        for x in 1..=3 {
            for y in 1..=3 {
                t.push([x, y, (x + y) % 3 + 1]);
            }
        }
        Tripartite3dm::new(3, t)
    }

    #[test]
    fn digits_and_sizes() {
        let inst = Tripartite3dm::new(1, vec![[1, 1, 1]]);
        let r = reduce_3dm_to_n4dm(&inst).unwrap();
        assert_eq!(r.base(), 100);
        let b: Int = 100;
        assert_eq!(r.target().target, 40 * b.pow(5));
        assert_eq!(r.target().size(), 2);
        assert!(r.target().sets[0].contains(&(10 * b.pow(5) + b.pow(4))));
        assert!(r.target().sets[1].contains(&(7 * b.pow(5) - 1)));
    }

    #[test]
    fn rejects_dense_and_missing() {
        let dense = Tripartite3dm::new(2, vec![[1, 1, 1], [1, 1, 2], [2, 2, 2]]);
        assert!(matches!(
            reduce_3dm_to_n4dm(&dense),
            Err(Error::Precondition(_))
        ));
        let gap = Tripartite3dm::new(2, vec![[1, 1, 1]]);
        assert!(matches!(
            reduce_3dm_to_n4dm(&gap),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn counts_match_on_small_instance() {
        let caps = OracleCaps::default();
        let inst = small();
        assert!(inst.is_pairwise_sparse());
        let r = reduce_3dm_to_n4dm(&inst).unwrap();
        assert_eq!(count_3dm(&inst, &caps).unwrap(), 3u64);
        assert_eq!(count_nkdm(r.target(), &caps).unwrap(), 3u64);
        for m in enumerate_3dm(&inst, &caps).unwrap() {
            let lifted = r.lift(&m).unwrap();
            assert_eq!(r.project(&lifted).unwrap(), m);
        }
    }
}
