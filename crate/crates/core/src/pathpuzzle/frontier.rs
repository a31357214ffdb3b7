//! Exact counting by a row-major sweep over plug states.
//!
//! After each cell the state records, for every column, whether the path
//! crosses from the processed part into the rest through that column, plus
//! one horizontal crossing into the next cell. Each crossing carries a
//! strand label: two crossings with the same label are joined by a path
//! segment, and a dangling strand leads back to a door. Column counters and
//! the current row's count ride along so labels can be checked exactly.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instances::{Cell, GridPath, PathPuzzle, SolutionCount};

use super::search::{needs, NONE};
use super::{SearchOptions, SearchOutcome};

const DANGLING: u32 = 1 << 31;
const FRESH: u32 = DANGLING - 1;

/// Largest number of distinct states kept between two cells.
pub const MAX_STATES: usize = 1 << 20;

const VISIT: u8 = 1;
const DOWN: u8 = 2;
const RIGHT: u8 = 4;

struct Sweep {
    rows: usize,
    cols: usize,
    doors: [usize; 2],
    row_need: Vec<u32>,
    col_need: Vec<u32>,
    // counter slot for each labelled column
    slot: Vec<Option<usize>>,
    labelled_cols: Vec<usize>,
    // rows after `r` whose label is positive
    later_rows_need: Vec<bool>,
}

impl Sweep {
    fn h_at(&self) -> usize {
        self.cols
    }
    fn done_at(&self) -> usize {
        self.cols + 1
    }
    fn row_at(&self) -> usize {
        self.cols + 2
    }
    fn count_at(&self, slot: usize) -> usize {
        self.cols + 3 + slot
    }
    fn key_len(&self) -> usize {
        self.cols + 3 + self.labelled_cols.len()
    }

    fn plugs_clear(&self, key: &[u32]) -> bool {
        key[..=self.cols].iter().all(|&p| p == 0)
    }

    /// Once the path is closed nothing more may be visited, so every label
    /// has to be met already.
    fn closed_ok(&self, key: &[u32], r: usize) -> bool {
        let row_ok = self.row_need[r] == NONE || key[self.row_at()] == self.row_need[r];
        row_ok
            && !self.later_rows_need[r]
            && self
                .labelled_cols
                .iter()
                .enumerate()
                .all(|(s, &c)| key[self.count_at(s)] == self.col_need[c])
    }

    fn successors(&self, key: &[u32], r: usize, c: usize, out: &mut Vec<(Vec<u32>, u8)>) {
        let i = r * self.cols + c;
        let up = key[c];
        let left = key[self.h_at()];
        let door = self.doors.contains(&i);
        if up == 0 && left == 0 && !door {
            out.push((key.to_vec(), 0));
        }
        if key[self.done_at()] == 1 {
            return;
        }
        let row_need = self.row_need[r];
        if row_need != NONE && key[self.row_at()] >= row_need {
            return;
        }
        let slot = self.slot[c];
        if let Some(s) = slot {
            if key[self.count_at(s)] >= self.col_need[c] {
                return;
            }
        }
        let mut base = key.to_vec();
        if row_need != NONE {
            base[self.row_at()] += 1;
        }
        if let Some(s) = slot {
            base[self.count_at(s)] += 1;
        }
        base[c] = 0;
        base[self.h_at()] = 0;
        // An edge down or right adds another visit to this column or row.
        let room = |have: u32, need: u32| need == NONE || have < need;
        let can_down = r + 1 < self.rows
            && slot.is_none_or(|s| room(base[self.count_at(s)], self.col_need[c]));
        let can_right = c + 1 < self.cols && room(base[self.row_at()], row_need);
        let h = self.h_at();
        match (up, left) {
            (0, 0) if door => {
                if can_down {
                    let mut k = base.clone();
                    k[c] = FRESH | DANGLING;
                    out.push((k, VISIT | DOWN));
                }
                if can_right {
                    let mut k = base;
                    k[h] = FRESH | DANGLING;
                    out.push((k, VISIT | RIGHT));
                }
            }
            (0, 0) => {
                if can_down && can_right {
                    base[c] = FRESH;
                    base[h] = FRESH;
                    out.push((base, VISIT | DOWN | RIGHT));
                }
            }
            (p, 0) | (0, p) if !door => {
                if can_down {
                    let mut k = base.clone();
                    k[c] = p;
                    out.push((k, VISIT | DOWN));
                }
                if can_right {
                    let mut k = base;
                    k[h] = p;
                    out.push((k, VISIT | RIGHT));
                }
            }
            (p, 0) | (0, p) => {
                // The strand ends at this door.
                if p & DANGLING != 0 {
                    self.close(base, r, out);
                } else {
                    relabel(&mut base[..=h], p, p | DANGLING);
                    out.push((base, VISIT));
                }
            }
            _ if door => {}
            (p, q) => {
                if p == q {
                    return;
                }
                match (p & DANGLING != 0, q & DANGLING != 0) {
                    (true, true) => self.close(base, r, out),
                    (false, true) => {
                        relabel(&mut base[..=h], p, q);
                        out.push((base, VISIT));
                    }
                    _ => {
                        relabel(&mut base[..=h], q, p);
                        out.push((base, VISIT));
                    }
                }
            }
        }
    }

    fn close(&self, mut key: Vec<u32>, r: usize, out: &mut Vec<(Vec<u32>, u8)>) {
        if self.plugs_clear(&key) && self.closed_ok(&key, r) {
            key[self.done_at()] = 1;
            out.push((key, VISIT));
        }
    }

    /// Checks that can only fail for good once cell `(r, c)` is behind us.
    fn keep(&self, key: &mut [u32], r: usize, c: usize) -> bool {
        let row_need = self.row_need[r];
        if row_need != NONE && key[self.row_at()] + ((self.cols - 1 - c) as u32) < row_need {
            return false;
        }
        if let Some(s) = self.slot[c] {
            if key[self.count_at(s)] + ((self.rows - 1 - r) as u32) < self.col_need[c] {
                return false;
            }
        }
        if c + 1 == self.cols {
            key[self.row_at()] = 0;
        }
        true
    }
}

fn relabel(plugs: &mut [u32], from: u32, to: u32) {
    for p in plugs {
        if *p == from {
            *p = to;
        }
    }
}

/// Renumbers strand labels by first appearance so equal states compare equal.
fn normalize(plugs: &mut [u32], map: &mut Vec<(u32, u32)>) {
    map.clear();
    for p in plugs {
        if *p == 0 {
            continue;
        }
        let id = *p & !DANGLING;
        let new = match map.iter().find(|(old, _)| *old == id) {
            Some(&(_, n)) => n,
            None => {
                let n = map.len() as u32 + 1;
                map.push((id, n));
                n
            }
        };
        *p = new | (*p & DANGLING);
    }
}

type Transitions = Vec<(u32, u32, u8)>;

pub(super) fn sweep(
    puzzle: &PathPuzzle,
    opts: &SearchOptions,
    collect: bool,
) -> Result<SearchOutcome> {
    let rows = puzzle.rows as usize;
    let cols = puzzle.cols as usize;
    let row_need = needs(&puzzle.row_labels, rows);
    let col_need = needs(&puzzle.col_labels, cols);
    let mut slot = vec![None; cols];
    let mut labelled_cols = Vec::new();
    for (c, &n) in col_need.iter().enumerate() {
        if n != NONE {
            slot[c] = Some(labelled_cols.len());
            labelled_cols.push(c);
        }
    }
    let mut later_rows_need = vec![false; rows];
    for r in (0..rows.saturating_sub(1)).rev() {
        let next = row_need[r + 1];
        later_rows_need[r] = later_rows_need[r + 1] || (next != NONE && next > 0);
    }
    let index = |c: Cell| (c.row as usize - 1) * cols + (c.col as usize - 1);
    let s = Sweep {
        rows,
        cols,
        doors: puzzle.doors.map(|d| index(d.cell)),
        row_need,
        col_need,
        slot,
        labelled_cols,
        later_rows_need,
    };

    let mut states: Vec<Vec<u32>> = vec![vec![0; s.key_len()]];
    let mut counts: Vec<u128> = vec![1];
    let mut layers: Vec<Transitions> = Vec::new();
    let mut nodes = 0u64;
    let mut succ = Vec::new();
    let mut map = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next_states = Vec::new();
            let mut next_counts: Vec<u128> = Vec::new();
            let mut moves = Vec::new();
            for (from, key) in states.iter().enumerate() {
                succ.clear();
                s.successors(key, r, c, &mut succ);
                for (mut k, decision) in succ.drain(..) {
                    nodes += 1;
                    if nodes > opts.budget {
                        return Err(Error::SearchBudget(opts.budget));
                    }
                    if !s.keep(&mut k, r, c) {
                        continue;
                    }
                    normalize(&mut k[..=cols], &mut map);
                    let to = match index.get(&k) {
                        Some(&t) => t,
                        None => {
                            let t = next_states.len() as u32;
                            index.insert(k.clone(), t);
                            next_states.push(k);
                            next_counts.push(0);
                            t
                        }
                    };
                    let slot = &mut next_counts[to as usize];
                    *slot = slot
                        .checked_add(counts[from])
                        .ok_or(Error::Overflow("path count"))?;
                    if collect {
                        moves.push((from as u32, to, decision));
                    }
                }
            }
            states = next_states;
            counts = next_counts;
            if states.len() > MAX_STATES {
                return Err(Error::OracleCap(format!(
                    "more than {MAX_STATES} frontier states after cell ({}, {})",
                    r + 1,
                    c + 1
                )));
            }
            if collect {
                layers.push(moves);
            }
        }
    }

    let done_at = s.done_at();
    let accepted: Vec<usize> = (0..states.len())
        .filter(|&k| states[k][done_at] == 1)
        .collect();
    let total = accepted
        .iter()
        .try_fold(0u128, |a, &k| a.checked_add(counts[k]))
        .ok_or(Error::Overflow("path count"))?;
    let paths = if collect {
        trace_back(&s, &layers, &accepted)
    } else {
        Vec::new()
    };
    Ok(SearchOutcome {
        count: SolutionCount(BigUint::from(total)),
        paths,
        nodes,
    })
}

/// Follows transitions backwards from every accepting state. Each backward
/// walk to the initial state is one solution.
fn trace_back(s: &Sweep, layers: &[Transitions], accepted: &[usize]) -> Vec<GridPath> {
    let mut by_target: Vec<HashMap<u32, Vec<(u32, u8)>>> = Vec::with_capacity(layers.len());
    for layer in layers {
        let mut m: HashMap<u32, Vec<(u32, u8)>> = HashMap::new();
        for &(from, to, d) in layer {
            m.entry(to).or_default().push((from, d));
        }
        by_target.push(m);
    }
    let cells = layers.len();
    let mut decisions = vec![0u8; cells];
    let mut out = Vec::new();
    // (layer, state, next choice)
    for &end in accepted {
        let mut stack: Vec<(usize, u32, usize)> = vec![(cells, end as u32, 0)];
        while let Some(&mut (layer, state, ref mut choice)) = stack.last_mut() {
            if layer == 0 {
                out.push(walk(s, &decisions));
                stack.pop();
                continue;
            }
            let preds = &by_target[layer - 1][&state];
            if *choice == preds.len() {
                stack.pop();
                continue;
            }
            let (from, d) = preds[*choice];
            *choice += 1;
            decisions[layer - 1] = d;
            stack.push((layer - 1, from, 0));
        }
    }
    out
}

fn walk(s: &Sweep, decisions: &[u8]) -> GridPath {
    let cols = s.cols;
    let linked = |a: usize, b: usize| {
        let (lo, hi) = (a.min(b), a.max(b));
        if hi == lo + cols {
            decisions[lo] & DOWN != 0
        } else {
            hi == lo + 1 && decisions[lo] & RIGHT != 0
        }
    };
    let start = s.doors[0].min(s.doors[1]);
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let (r, c) = (cur / cols, cur % cols);
        let mut nbrs = [usize::MAX; 4];
        if r + 1 < s.rows {
            nbrs[0] = cur + cols;
        }
        if c + 1 < cols {
            nbrs[1] = cur + 1;
        }
        if r > 0 {
            nbrs[2] = cur - cols;
        }
        if c > 0 {
            nbrs[3] = cur - 1;
        }
        let Some(next) = nbrs
            .into_iter()
            .find(|&n| n != usize::MAX && n != prev && linked(cur, n))
        else {
            break;
        };
        path.push(next);
        prev = cur;
        cur = next;
    }
    GridPath::new(
        path.into_iter()
            .map(|i| Cell::new((i / cols + 1) as u128, (i % cols + 1) as u128))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{gen_instance, GenSpec, Instance};
    use crate::instances::{Door, Label, Side};
    use crate::pathpuzzle::{reduce_lo_to_pp, search_paths, Engine};
    use crate::reductions::Reduction;
    use crate::runs::Runs;

    fn both(p: &PathPuzzle) -> (SearchOutcome, SearchOutcome) {
        let dfs = SearchOptions {
            engine: Engine::Dfs,
            ..Default::default()
        };
        let mut a = search_paths(p, &SearchOptions::default(), true).unwrap();
        let mut b = search_paths(p, &dfs, true).unwrap();
        a.paths.sort();
        b.paths.sort();
        (a, b)
    }

    #[test]
    fn blank_three_by_three() {
        let p = PathPuzzle {
            rows: 3,
            cols: 3,
            doors: [Door::new(1, 1, Side::Left), Door::new(3, 3, Side::Right)],
            row_labels: Runs::repeat(Label::Blank, 3),
            col_labels: Runs::repeat(Label::Blank, 3),
        };
        let (a, b) = both(&p);
        assert_eq!(a.count, 12u64);
        assert_eq!(a.paths, b.paths);
    }

    #[test]
    fn agrees_with_depth_first_search_on_random_puzzles() {
        for seed in 0..60 {
            let rows = 1 + seed as u128 % 5;
            let cols = 1 + (seed as u128 / 5) % 6;
            let Instance::Pp(p) = gen_instance(GenSpec::Pp { rows, cols }, seed).unwrap() else {
                unreachable!()
            };
            let (a, b) = both(&p);
            assert_eq!(a.count, b.count, "seed {seed}");
            assert_eq!(a.paths, b.paths, "seed {seed}");
        }
    }

    #[test]
    fn agrees_on_reduced_offsets() {
        for (n, m, seed) in [(1, 3, 0), (1, 5, 1), (2, 4, 2)] {
            let Instance::Lo(l) = gen_instance(
                GenSpec::Lo {
                    intervals: n,
                    horizon: m,
                },
                seed,
            )
            .unwrap() else {
                unreachable!()
            };
            let r = reduce_lo_to_pp(&l).unwrap();
            let (a, b) = both(r.target());
            assert_eq!(a.count, b.count);
            assert_eq!(a.paths, b.paths);
            for path in &a.paths {
                assert!(crate::pathpuzzle::verify_path(r.target(), path).is_empty());
            }
        }
    }
}
