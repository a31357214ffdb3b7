//! Length Offsets to Path Puzzle.
//!
//! Interval `j` becomes a block of `12n + 5` columns: two full-height
//! columns on each side, `6n` columns visited once on either side of a
//! middle column whose label `2 a_j + 1` is the interval length in odd rows.
//! Blocks are separated by a single column visited once, at the top row.
//! Even rows `2i + 2` carry `4n + t_i`: the four full columns of every block
//! plus one middle-column visit per interval covering position `i`. Odd rows
//! are left blank, or filled in by [`complete_row_labels`] once interval
//! endpoints are known to be disjoint.
//!
//! Rows are numbered bottom-up. The path enters at the top-left cell and
//! leaves at the top-right cell.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::instances::{
    Cell, Door, GridPath, Int, Label, LengthOffsetsInstance, LengthOffsetsSolution, PathPuzzle,
    Side,
};
use crate::oracles::{enumerate_lo, OracleCaps};
use crate::reductions::{
    check_endpoint_disjoint, require_consistent, require_valid_instance, require_valid_solution,
    N3dmToLo, Reduction, Stage,
};
use crate::runs::RunsBuilder;

use super::verify_path;

/// Longest path [`LoToPp::lift`] will materialise.
pub const MAX_PATH_CELLS: u128 = 1 << 24;

/// Proof that no solution of a Length Offsets instance has one interval
/// starting where another ends. Required before odd rows can be labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointEvidence {
    instance: LengthOffsetsInstance,
    source: EvidenceSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceSource {
    /// The instance was produced from a window-conforming Numerical 3DM
    /// instance, which forces starts below `t/2` and ends above it.
    WindowReduction,
    /// Every solution was enumerated and checked.
    Enumeration,
}

impl EndpointEvidence {
    pub fn from_window_reduction(r: &N3dmToLo) -> Self {
        EndpointEvidence {
            instance: r.target().clone(),
            source: EvidenceSource::WindowReduction,
        }
    }

    /// Enumerates all solutions with the brute-force oracle and checks each.
    pub fn by_enumeration(lo: &LengthOffsetsInstance, caps: &OracleCaps) -> Result<Self> {
        for s in enumerate_lo(lo, caps)? {
            if !check_endpoint_disjoint(lo, &s) {
                return Err(Error::Precondition(format!(
                    "solution {:?} has an interval starting where another ends",
                    s.offsets
                )));
            }
        }
        Ok(EndpointEvidence {
            instance: lo.clone(),
            source: EvidenceSource::Enumeration,
        })
    }

    pub fn source(&self) -> EvidenceSource {
        self.source
    }
}

#[derive(Clone, Debug)]
pub struct LoToPp {
    source: LengthOffsetsInstance,
    target: PathPuzzle,
    completed: bool,
}

/// Column layout of one block.
#[derive(Clone, Copy, Debug)]
struct Block {
    start: Int,
    middle: Int,
}

impl LoToPp {
    /// Whether the odd rows carry labels.
    pub fn is_completed(&self) -> bool {
        self.completed
    }

    fn n(&self) -> Int {
        self.source.lengths.len() as Int
    }

    fn block(&self, j: usize) -> Block {
        let n = self.n();
        let start = (12 * n + 6) * j as Int + 1;
        Block {
            start,
            middle: start + 6 * n + 2,
        }
    }

    /// Column of the single-visit separator after block `j` (0-based).
    pub fn separator_column(&self, j: usize) -> Option<Int> {
        let n = self.n();
        ((j as Int) + 1 < n).then(|| (12 * n + 6) * (j as Int + 1))
    }

    /// Column of the middle column of block `j` (0-based).
    pub fn middle_column(&self, j: usize) -> Int {
        self.block(j).middle
    }

    fn path_cells_estimate(&self) -> Option<Int> {
        let n = self.n();
        let rows = self.target.rows;
        n.checked_mul(rows.checked_mul(4)?.checked_add(12 * n + 2 * rows)?)
    }
}

pub fn reduce_lo_to_pp(lo: &LengthOffsetsInstance) -> Result<LoToPp> {
    build(lo, None)
}

/// Rebuilds the puzzle with every odd row labelled as well. Row `2i + 1`
/// gets `4n + max(t_i, t_{i-1}) + 6n |t_i - t_{i-1}|` (with `t_{-1} = t_m = 0`),
/// which is exact when no interval starts where another ends.
pub fn complete_row_labels(r: &LoToPp, evidence: &EndpointEvidence) -> Result<LoToPp> {
    if evidence.instance != r.source {
        return Err(Error::Precondition(
            "endpoint evidence belongs to a different instance".into(),
        ));
    }
    build(&r.source, Some(evidence.source))
}

fn build(lo: &LengthOffsetsInstance, completion: Option<EvidenceSource>) -> Result<LoToPp> {
    require_valid_instance(lo.validate())?;
    if lo.lengths.is_empty() {
        return Err(Error::Precondition("no intervals".into()));
    }
    let ov = || Error::Overflow("lo-pp dimensions");
    let n = lo.lengths.len() as Int;
    let m = lo.horizon;
    let rows = m
        .checked_mul(2)
        .and_then(|v| v.checked_add(3))
        .ok_or_else(ov)?;
    let cols = (12 * n + 6).checked_mul(n).ok_or_else(ov)? - 1;

    let count = |v: Int| Label::Count(v);
    let odd = |prev: usize, cur: usize| -> Result<Label> {
        if completion.is_none() {
            return Ok(Label::Blank);
        }
        let (prev, cur) = (prev as Int, cur as Int);
        let jump = (6 * n).checked_mul(prev.abs_diff(cur)).ok_or_else(ov)?;
        Ok(count(4 * n + prev.max(cur) + jump))
    };

    let mut rb = RunsBuilder::new();
    let mut prev = 0usize;
    for (t, len) in lo.densities.constant_runs() {
        let even = count(4 * n + t as Int);
        rb.push(odd(prev, t)?);
        rb.push(even);
        if len > 1 {
            rb.push_pattern(vec![odd(t, t)?, even], len - 1);
        }
        prev = t;
    }
    rb.push(odd(prev, 0)?);
    rb.push(count(4 * n));
    rb.push(count(5 * n - 1));
    let row_labels = rb.finish();

    let mut cb = RunsBuilder::new();
    for (j, &a) in lo.lengths.iter().enumerate() {
        cb.push_repeat(count(rows), 2);
        cb.push_repeat(count(1), 6 * n);
        cb.push(count(a.checked_mul(2).ok_or_else(ov)? + 1));
        cb.push_repeat(count(1), 6 * n);
        cb.push_repeat(count(rows), 2);
        if (j as Int) + 1 < n {
            cb.push(count(1));
        }
    }
    let col_labels = cb.finish();

    let target = PathPuzzle {
        rows,
        cols,
        doors: [
            Door::new(rows, 1, Side::Left),
            Door::new(rows, cols, Side::Right),
        ],
        row_labels,
        col_labels,
    };
    require_consistent(target.validate(), "lo-pp construction")?;
    Ok(LoToPp {
        source: lo.clone(),
        target,
        completed: completion.is_some(),
    })
}

impl Reduction for LoToPp {
    type Source = LengthOffsetsInstance;
    type Target = PathPuzzle;
    type SourceSolution = LengthOffsetsSolution;
    type TargetSolution = GridPath;

    const STAGE: Stage = Stage::LoToPp;

    fn source(&self) -> &LengthOffsetsInstance {
        &self.source
    }

    fn target(&self) -> &PathPuzzle {
        &self.target
    }

    /// The canonical path: in every block the horizontal run left of the
    /// middle column sits at the interval start and the right run at its end.
    fn lift(&self, s: &LengthOffsetsSolution) -> Result<GridPath> {
        require_valid_solution(self.source.check_solution(s))?;
        if self
            .path_cells_estimate()
            .is_none_or(|c| c > MAX_PATH_CELLS)
        {
            return Err(Error::Precondition(format!(
                "a {}x{} path is too large to materialise",
                self.target.rows, self.target.cols
            )));
        }
        let n = self.n();
        let top = self.target.rows;
        let mut cells = Vec::new();
        for (j, (&a, &b)) in self.source.lengths.iter().zip(&s.offsets).enumerate() {
            let Block { start: c0, middle } = self.block(j);
            let low = 2 * b + 1;
            let high = 2 * (a + b) + 1;

            // Left pair: zigzag down to just above `low`, then a U below it.
            for (k, r) in (low + 1..=top).rev().enumerate() {
                let (x, y) = if k % 2 == 0 {
                    (c0, c0 + 1)
                } else {
                    (c0 + 1, c0)
                };
                cells.push(Cell::new(r, x));
                cells.push(Cell::new(r, y));
            }
            cells.extend((1..=low).rev().map(|r| Cell::new(r, c0)));
            cells.extend((1..=low).map(|r| Cell::new(r, c0 + 1)));
            // Run to the middle column, climb it, run to the right pair.
            cells.extend((c0 + 2..middle).map(|c| Cell::new(low, c)));
            cells.extend((low..=high).map(|r| Cell::new(r, middle)));
            cells.extend((middle + 1..=middle + 6 * n).map(|c| Cell::new(high, c)));
            // Right pair: a U below `high`, then zigzag up to the top row.
            let (inner, outer) = (middle + 6 * n + 1, middle + 6 * n + 2);
            cells.extend((1..=high).rev().map(|r| Cell::new(r, inner)));
            cells.extend((1..=high).map(|r| Cell::new(r, outer)));
            for (k, r) in (high + 1..=top).enumerate() {
                let (x, y) = if k % 2 == 0 {
                    (outer, inner)
                } else {
                    (inner, outer)
                };
                cells.push(Cell::new(r, x));
                cells.push(Cell::new(r, y));
            }
            if let Some(sep) = self.separator_column(j) {
                cells.push(Cell::new(top, sep));
            }
        }
        let path = GridPath::new(cells);
        require_consistent(verify_path(&self.target, &path), "lift")?;
        Ok(path)
    }

    /// Reads each offset off the lowest visited cell of its middle column.
    fn project(&self, path: &GridPath) -> Result<LengthOffsetsSolution> {
        require_valid_solution(verify_path(&self.target, path))?;
        let middles: BTreeMap<Int, usize> = (0..self.source.lengths.len())
            .map(|j| (self.block(j).middle, j))
            .collect();
        let mut lowest: Vec<Option<Int>> = vec![None; middles.len()];
        for c in path.cells() {
            if let Some(&j) = middles.get(&c.col) {
                let e = &mut lowest[j];
                *e = Some(e.map_or(c.row, |r: Int| r.min(c.row)));
            }
        }
        let offsets = lowest
            .into_iter()
            .enumerate()
            .map(|(j, r)| match r {
                Some(r) if r % 2 == 1 => Ok((r - 1) / 2),
                _ => Err(Error::Construction(format!(
                    "middle column of block {} has no odd lowest row",
                    j + 1
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let out = LengthOffsetsSolution::new(offsets);
        require_consistent(self.source.check_solution(&out), "project")?;
        Ok(out)
    }

    fn trace(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "grid {} {}", self.target.rows, self.target.cols);
        let _ = writeln!(out, "completed {}", self.completed);
        for (j, a) in self.source.lengths.iter().enumerate() {
            let b = self.block(j);
            let _ = writeln!(
                out,
                "block {} start {} middle {} length {a}",
                j + 1,
                b.start,
                b.middle
            );
        }
        out
    }
}
