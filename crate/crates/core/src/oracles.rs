//! Naive exact counters and enumerators used as ground truth.
//!
//! Every oracle refuses work above a configurable size cap instead of
//! running for an unbounded time.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instances::*;

/// Size caps for the brute-force oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub sat_variables: usize,
    pub tdm_part_size: usize,
    pub nkdm_size: usize,
    pub lo_lengths: usize,
    pub lo_horizon: Int,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            sat_variables: 24,
            tdm_part_size: 40,
            nkdm_size: 20,
            lo_lengths: 8,
            lo_horizon: 4096,
        }
    }
}

fn ensure_valid(violations: Vec<Violation>) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidInstance(violations))
    }
}

// ---------------------------------------------------------------------------
// Positive 1-in-3-SAT

fn one_in_three_masks(f: &Cnf1in3, caps: &OracleCaps) -> Result<Vec<u64>> {
    ensure_valid(f.validate())?;
    if f.variable_count > caps.sat_variables {
        return Err(Error::OracleCap(format!(
            "{} variables > cap {}",
            f.variable_count, caps.sat_variables
        )));
    }
    let clauses: Vec<[usize; 3]> = f.clauses.iter().map(|c| c.map(|v| v - 1)).collect();
    Ok((0u64..1 << f.variable_count)
        .filter(|&mask| {
            clauses
                .iter()
                .all(|c| c.iter().filter(|&&v| mask >> v & 1 == 1).count() == 1)
        })
        .collect())
}

pub fn count_1in3(f: &Cnf1in3, caps: &OracleCaps) -> Result<SolutionCount> {
    Ok(one_in_three_masks(f, caps)?.len().into())
}

pub fn enumerate_1in3(f: &Cnf1in3, caps: &OracleCaps) -> Result<Vec<Assignment>> {
    let n = f.variable_count;
    Ok(one_in_three_masks(f, caps)?
        .into_iter()
        .map(|mask| Assignment::new((0..n).map(|v| mask >> v & 1 == 1).collect()))
        .collect())
}

// ---------------------------------------------------------------------------
// 3-Dimensional Matching

struct ExactCover<'a> {
    // element -> triples covering it
    by_element: Vec<Vec<usize>>,
    elements_of: Vec<[usize; 3]>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    sink: &'a mut dyn FnMut(&[usize]),
}

impl ExactCover<'_> {
    fn available(&self, t: usize) -> bool {
        self.elements_of[t].iter().all(|&e| !self.covered[e])
    }

    fn search(&mut self) {
        // Most constrained uncovered element first.
        let mut best: Option<(usize, usize)> = None;
        for e in 0..self.covered.len() {
            if self.covered[e] {
                continue;
            }
            let options = self.by_element[e]
                .iter()
                .filter(|&&t| self.available(t))
                .count();
            if best.is_none_or(|(_, n)| options < n) {
                best = Some((e, options));
                if options == 0 {
                    return;
                }
            }
        }
        let Some((e, _)) = best else {
            (self.sink)(&self.chosen);
            return;
        };
        for i in 0..self.by_element[e].len() {
            let t = self.by_element[e][i];
            if !self.available(t) {
                continue;
            }
            let els = self.elements_of[t];
            for &x in &els {
                self.covered[x] = true;
            }
            self.chosen.push(t);
            self.search();
            self.chosen.pop();
            for &x in &els {
                self.covered[x] = false;
            }
        }
    }
}

fn exact_covers(
    g: &Tripartite3dm,
    caps: &OracleCaps,
    sink: &mut dyn FnMut(&[usize]),
) -> Result<()> {
    ensure_valid(g.validate())?;
    if g.part_size > caps.tdm_part_size {
        return Err(Error::OracleCap(format!(
            "part size {} > cap {}",
            g.part_size, caps.tdm_part_size
        )));
    }
    let n = g.part_size;
    let elements_of: Vec<[usize; 3]> = g
        .triples
        .iter()
        .map(|&[x, y, z]| [x - 1, n + y - 1, 2 * n + z - 1])
        .collect();
    let mut by_element = vec![Vec::new(); 3 * n];
    for (t, els) in elements_of.iter().enumerate() {
        for &e in els {
            by_element[e].push(t);
        }
    }
    let mut ec = ExactCover {
        by_element,
        elements_of,
        covered: vec![false; 3 * n],
        chosen: Vec::new(),
        sink,
    };
    ec.search();
    Ok(())
}

pub fn count_3dm(g: &Tripartite3dm, caps: &OracleCaps) -> Result<SolutionCount> {
    let mut count = 0u64;
    exact_covers(g, caps, &mut |_| count += 1)?;
    Ok(count.into())
}

pub fn enumerate_3dm(g: &Tripartite3dm, caps: &OracleCaps) -> Result<Vec<ThreeDmSolution>> {
    let mut out = Vec::new();
    exact_covers(g, caps, &mut |chosen| {
        out.push(ThreeDmSolution::new(
            chosen.iter().map(|&t| g.triples[t]).collect(),
        ));
    })?;
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Numerical k-DM

/// Remaining values of one coordinate as `value -> multiplicity`.
type Pool = BTreeMap<Int, usize>;

fn take(pool: &mut Pool, v: Int) {
    let c = pool.get_mut(&v).expect("value present");
    *c -= 1;
    if *c == 0 {
        pool.remove(&v);
    }
}

fn give(pool: &mut Pool, v: Int) {
    *pool.entry(v).or_default() += 1;
}

struct NkdmSearch<'a> {
    pools: Vec<Pool>,
    target: Int,
    tuples: Vec<Vec<Int>>,
    sink: &'a mut dyn FnMut(&[Vec<Int>]),
}

impl NkdmSearch<'_> {
    /// Candidate completions `(c_1, .., c_{k-1})` of a tuple whose first
    /// coordinate is `x`, one distinct value per choice point.
    fn completions(&self, x: Int) -> Vec<Vec<Int>> {
        let k = self.pools.len();
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(k - 1);
        self.extend(1, self.target.checked_sub(x), &mut prefix, &mut out);
        out
    }

    fn extend(
        &self,
        coord: usize,
        rest: Option<Int>,
        prefix: &mut Vec<Int>,
        out: &mut Vec<Vec<Int>>,
    ) {
        let Some(rest) = rest else { return };
        let k = self.pools.len();
        if coord == k - 1 {
            if self.pools[coord].contains_key(&rest) {
                let mut t = prefix.clone();
                t.push(rest);
                out.push(t);
            }
            return;
        }
        for &v in self.pools[coord].keys() {
            if v >= rest {
                break;
            }
            prefix.push(v);
            self.extend(coord + 1, Some(rest - v), prefix, out);
            prefix.pop();
        }
    }

    fn search(&mut self) {
        let Some(&x) = self.pools[0].keys().next() else {
            (self.sink)(&self.tuples);
            return;
        };
        let lower: Option<Vec<Int>> = self
            .tuples
            .last()
            .filter(|t| t[0] == x)
            .map(|t| t[1..].to_vec());
        for rest in self.completions(x) {
            if lower.as_ref().is_some_and(|lo| rest < *lo) {
                continue;
            }
            take(&mut self.pools[0], x);
            for (c, &v) in rest.iter().enumerate() {
                take(&mut self.pools[c + 1], v);
            }
            let mut tuple = vec![x];
            tuple.extend_from_slice(&rest);
            self.tuples.push(tuple);
            self.search();
            self.tuples.pop();
            give(&mut self.pools[0], x);
            for (c, &v) in rest.iter().enumerate() {
                give(&mut self.pools[c + 1], v);
            }
        }
    }
}

/// Enumerates value-level solutions: each multiset of tuples is produced
/// exactly once, with tuples in nondecreasing lexicographic order.
fn nkdm_solutions(
    inst: &NumericalMatchingInstance,
    caps: &OracleCaps,
    sink: &mut dyn FnMut(&[Vec<Int>]),
) -> Result<()> {
    ensure_valid(inst.validate())?;
    let n = inst.size();
    if n > caps.nkdm_size {
        return Err(Error::OracleCap(format!(
            "size {n} > cap {}",
            caps.nkdm_size
        )));
    }
    let total = inst
        .sets
        .iter()
        .flatten()
        .try_fold(0u128, |a, &v| a.checked_add(v));
    if total != (n as Int).checked_mul(inst.target) {
        return Ok(());
    }
    let pools = inst
        .sets
        .iter()
        .map(|s| {
            let mut p = Pool::new();
            for &v in s {
                give(&mut p, v);
            }
            p
        })
        .collect();
    let mut search = NkdmSearch {
        pools,
        target: inst.target,
        tuples: Vec::with_capacity(n),
        sink,
    };
    search.search();
    Ok(())
}

pub fn count_nkdm(inst: &NumericalMatchingInstance, caps: &OracleCaps) -> Result<SolutionCount> {
    let mut count = 0u64;
    nkdm_solutions(inst, caps, &mut |_| count += 1)?;
    Ok(count.into())
}

pub fn enumerate_nkdm(
    inst: &NumericalMatchingInstance,
    caps: &OracleCaps,
) -> Result<Vec<NumericalMatchingSolution>> {
    let mut out = Vec::new();
    nkdm_solutions(inst, caps, &mut |t| {
        out.push(NumericalMatchingSolution::new(t.to_vec()))
    })?;
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Length Offsets

struct LoSweep<'a> {
    lengths: &'a [Int],
    densities: Vec<usize>,
    offsets: Vec<Option<Int>>,
    // ends[p] = number of placed intervals ending at p
    ends: Vec<usize>,
    sink: &'a mut dyn FnMut(&[Option<Int>]),
}

impl LoSweep<'_> {
    fn at(&mut self, pos: usize, active: usize) {
        let m = self.densities.len();
        let active = active - self.ends[pos];
        if pos == m {
            if active == 0 && self.offsets.iter().all(Option::is_some) {
                (self.sink)(&self.offsets);
            }
            return;
        }
        // Every unplaced interval must still fit.
        if self
            .offsets
            .iter()
            .zip(self.lengths)
            .any(|(b, &a)| b.is_none() && a > (m - pos) as Int)
        {
            return;
        }
        let Some(starts) = self.densities[pos].checked_sub(active) else {
            return;
        };
        let candidates: Vec<usize> = (0..self.lengths.len())
            .filter(|&j| self.offsets[j].is_none() && self.lengths[j] <= (m - pos) as Int)
            .collect();
        if candidates.len() < starts {
            return;
        }
        self.choose(pos, active, &candidates, 0, starts);
    }

    fn choose(&mut self, pos: usize, active: usize, cand: &[usize], from: usize, left: usize) {
        if left == 0 {
            self.at(pos + 1, active);
            return;
        }
        for i in from..cand.len() {
            if cand.len() - i < left {
                break;
            }
            let j = cand[i];
            let end = pos + self.lengths[j] as usize;
            self.offsets[j] = Some(pos as Int);
            self.ends[end] += 1;
            self.choose(pos, active + 1, cand, i + 1, left - 1);
            self.ends[end] -= 1;
            self.offsets[j] = None;
        }
    }
}

fn lo_solutions(
    inst: &LengthOffsetsInstance,
    caps: &OracleCaps,
    sink: &mut dyn FnMut(&[Option<Int>]),
) -> Result<()> {
    ensure_valid(inst.validate())?;
    if inst.lengths.len() > caps.lo_lengths || inst.horizon > caps.lo_horizon {
        return Err(Error::OracleCap(format!(
            "n = {}, m = {} exceeds cap n <= {}, m <= {}",
            inst.lengths.len(),
            inst.horizon,
            caps.lo_lengths,
            caps.lo_horizon
        )));
    }
    let densities = inst.densities.to_vec().expect("horizon within cap");
    let m = densities.len();
    let mut sweep = LoSweep {
        lengths: &inst.lengths,
        densities,
        offsets: vec![None; inst.lengths.len()],
        ends: vec![0; m + 1],
        sink,
    };
    sweep.at(0, 0);
    Ok(())
}

pub fn count_lo(inst: &LengthOffsetsInstance, caps: &OracleCaps) -> Result<SolutionCount> {
    let mut count = 0u64;
    lo_solutions(inst, caps, &mut |_| count += 1)?;
    Ok(count.into())
}

/// All solutions, in lexicographic order of the offset vector.
pub fn enumerate_lo(
    inst: &LengthOffsetsInstance,
    caps: &OracleCaps,
) -> Result<Vec<LengthOffsetsSolution>> {
    let mut out = Vec::new();
    lo_solutions(inst, caps, &mut |b| {
        out.push(LengthOffsetsSolution::new(
            b.iter().map(|o| o.unwrap()).collect(),
        ));
    })?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> OracleCaps {
        OracleCaps::default()
    }

    #[test]
    fn one_in_three_examples() {
        assert_eq!(
            count_1in3(&Cnf1in3::new(3, vec![[1, 2, 3]]), &caps()).unwrap(),
            3
        );
        assert_eq!(
            count_1in3(&Cnf1in3::new(1, vec![[1, 1, 1]]), &caps()).unwrap(),
            0
        );
        // Brute force over 16 assignments: x1 true forces x2..x4 false (1);
        // x1 false needs exactly one of x2, x3 and one of x2, x4:
        // x2 alone, or x3 and x4 together (2).
        assert_eq!(
            count_1in3(&Cnf1in3::new(4, vec![[1, 2, 3], [1, 2, 4]]), &caps()).unwrap(),
            3
        );
        // A doubled literal counts twice: (1,1,2) needs x1 false, x2 true.
        let sols = enumerate_1in3(&Cnf1in3::new(2, vec![[1, 1, 2]]), &caps()).unwrap();
        assert_eq!(sols, vec![Assignment::new(vec![false, true])]);
    }

    #[test]
    fn one_in_three_cap() {
        let f = Cnf1in3::new(30, vec![[1, 2, 3]]);
        assert!(matches!(count_1in3(&f, &caps()), Err(Error::OracleCap(_))));
    }

    #[test]
    fn three_dm_examples() {
        assert_eq!(
            count_3dm(&Tripartite3dm::new(1, vec![[1, 1, 1]]), &caps()).unwrap(),
            1
        );
        assert_eq!(
            count_3dm(&Tripartite3dm::new(1, vec![]), &caps()).unwrap(),
            0
        );
        let g = Tripartite3dm::new(2, vec![[1, 1, 1], [2, 2, 2], [1, 2, 2], [2, 1, 1]]);
        assert_eq!(count_3dm(&g, &caps()).unwrap(), 2);
        let sols = enumerate_3dm(&g, &caps()).unwrap();
        assert_eq!(
            sols,
            vec![
                ThreeDmSolution::new(vec![[1, 1, 1], [2, 2, 2]]),
                ThreeDmSolution::new(vec![[1, 2, 2], [2, 1, 1]]),
            ]
        );
    }

    #[test]
    fn nkdm_examples() {
        let one = NumericalMatchingInstance::new(vec![vec![1], vec![1], vec![1]], 3);
        assert_eq!(count_nkdm(&one, &caps()).unwrap(), 1);

        let fig =
            NumericalMatchingInstance::new(vec![vec![5, 6, 7], vec![4, 5, 5], vec![4, 4, 5]], 15);
        let sols = enumerate_nkdm(&fig, &caps()).unwrap();
        assert_eq!(
            sols,
            vec![NumericalMatchingSolution::new(vec![
                vec![5, 5, 5],
                vec![6, 5, 4],
                vec![7, 4, 4]
            ])]
        );

        let small = NumericalMatchingInstance::new(vec![vec![1, 2], vec![1, 2], vec![3, 3]], 6);
        assert_eq!(count_nkdm(&small, &caps()).unwrap(), 1);
    }

    #[test]
    fn nkdm_value_level_deduplication() {
        // Two identical copies in every coordinate: one value-level solution,
        // not 2! * 2! slot assignments.
        let inst = NumericalMatchingInstance::new(vec![vec![1, 1], vec![2, 2], vec![3, 3]], 6);
        assert_eq!(count_nkdm(&inst, &caps()).unwrap(), 1);
        // {1,1} x {1,2} x {2,3}: (1,1,3)+(1,2,2) is the only pairing.
        let inst = NumericalMatchingInstance::new(vec![vec![1, 1], vec![1, 2], vec![2, 3]], 5);
        assert_eq!(count_nkdm(&inst, &caps()).unwrap(), 1);
    }

    #[test]
    fn lo_examples() {
        let a = LengthOffsetsInstance::new(vec![2], vec![0, 1, 1]);
        assert_eq!(
            enumerate_lo(&a, &caps()).unwrap(),
            vec![LengthOffsetsSolution::new(vec![1])]
        );
        let b = LengthOffsetsInstance::new(vec![1], vec![1, 1]);
        assert_eq!(count_lo(&b, &caps()).unwrap(), 0);
        let fig = LengthOffsetsInstance::new(
            vec![5, 6, 7],
            vec![0, 0, 0, 0, 1, 3, 3, 3, 3, 3, 2, 0, 0, 0, 0],
        );
        assert_eq!(
            enumerate_lo(&fig, &caps()).unwrap(),
            vec![LengthOffsetsSolution::new(vec![5, 5, 4])]
        );
    }

    #[test]
    fn lo_cap() {
        let inst = LengthOffsetsInstance::new(vec![1], vec![0; 5000]);
        assert!(matches!(count_lo(&inst, &caps()), Err(Error::OracleCap(_))));
    }
}
