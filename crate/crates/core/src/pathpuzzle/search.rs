use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instances::{Cell, GridPath, Label, PathPuzzle, SolutionCount};
use crate::reductions::require_valid_instance;

use super::verify_path;

/// Largest grid the exact search accepts.
pub const MAX_SEARCH_CELLS: u128 = 1 << 16;

/// How solutions are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Row-major sweep over plug states; handles tall, highly constrained
    /// grids whose depth-first search tree is exponential.
    #[default]
    Frontier,
    /// Depth-first extension from one door with reachability pruning.
    Dfs,
}

impl Engine {
    pub fn tag(self) -> &'static str {
        match self {
            Engine::Frontier => "frontier",
            Engine::Dfs => "dfs",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "frontier" => Ok(Engine::Frontier),
            "dfs" => Ok(Engine::Dfs),
            _ => Err(format!("unknown engine `{s}` (expected frontier or dfs)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes (frontier transitions for the sweep)
    /// before giving up.
    pub budget: u64,
    pub engine: Engine,
    /// Plain depth-first search with every pruning rule off except "never
    /// exceed a label". Overrides `engine`.
    pub paranoid: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1_000_000_000,
            engine: Engine::default(),
            paranoid: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub count: SolutionCount,
    /// Solutions in discovery order; empty unless enumeration was requested.
    pub paths: Vec<GridPath>,
    pub nodes: u64,
}

/// Number of solutions of `puzzle`.
pub fn count_paths(puzzle: &PathPuzzle, opts: &SearchOptions) -> Result<SolutionCount> {
    search_paths(puzzle, opts, false).map(|o| o.count)
}

/// Every solution of `puzzle`, sorted.
pub fn enumerate_paths(puzzle: &PathPuzzle, opts: &SearchOptions) -> Result<Vec<GridPath>> {
    let mut paths = search_paths(puzzle, opts, true)?.paths;
    paths.sort();
    Ok(paths)
}

/// Exact search over simple door-to-door paths with the engine chosen in
/// `opts`. Each undirected solution is found exactly once.
pub fn search_paths(
    puzzle: &PathPuzzle,
    opts: &SearchOptions,
    collect: bool,
) -> Result<SearchOutcome> {
    require_valid_instance(puzzle.validate())?;
    let cells = puzzle.rows.checked_mul(puzzle.cols);
    if cells.is_none_or(|c| c > MAX_SEARCH_CELLS) {
        return Err(Error::OracleCap(format!(
            "grid {}x{} exceeds {MAX_SEARCH_CELLS} cells",
            puzzle.rows, puzzle.cols
        )));
    }
    let [a, b] = puzzle.doors.map(|d| d.cell);
    let (start, end) = if a <= b { (a, b) } else { (b, a) };
    if start == end {
        let p = GridPath::new(vec![start]);
        let ok = verify_path(puzzle, &p).is_empty();
        return Ok(SearchOutcome {
            count: SolutionCount::from(ok as u64),
            paths: if ok && collect { vec![p] } else { Vec::new() },
            nodes: 1,
        });
    }
    if opts.engine == Engine::Frontier && !opts.paranoid {
        return super::frontier::sweep(puzzle, opts, collect);
    }
    let mut s = Search::new(puzzle, opts, collect);
    s.run(s.index(start), s.index(end))?;
    Ok(SearchOutcome {
        count: SolutionCount(BigUint::from(s.found)),
        paths: s.paths,
        nodes: s.nodes,
    })
}

pub(super) const NONE: u32 = u32::MAX;

struct Search {
    cols: usize,
    row_need: Vec<u32>,
    col_need: Vec<u32>,
    row_have: Vec<u32>,
    col_have: Vec<u32>,
    visited: Vec<bool>,
    paranoid: bool,
    budget: u64,
    nodes: u64,
    found: u128,
    collect: bool,
    paths: Vec<GridPath>,
    adj: Vec<[u32; 4]>,
    // scratch space for the reachability pass
    mark: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
    degree: Vec<u8>,
    peel: Vec<usize>,
    row_reach: Vec<u32>,
    col_reach: Vec<u32>,
}

/// Per-line label as a number; `NONE` for blank lines.
pub(super) fn needs(labels: &crate::runs::Runs<Label>, len: usize) -> Vec<u32> {
    (0..len as u128)
        .map(|i| match labels.get(i) {
            Some(Label::Count(c)) => u32::try_from(*c).unwrap_or(NONE - 1),
            _ => NONE,
        })
        .collect()
}

fn adjacent(rows: usize, cols: usize, i: usize) -> [u32; 4] {
    let (r, c) = (i / cols, i % cols);
    let pick = |ok: bool, j: usize| if ok { j as u32 } else { NONE };
    [
        pick(r + 1 < rows, i + cols),
        pick(c + 1 < cols, i + 1),
        pick(r > 0, i.wrapping_sub(cols)),
        pick(c > 0, i.wrapping_sub(1)),
    ]
}

impl Search {
    fn new(p: &PathPuzzle, opts: &SearchOptions, collect: bool) -> Self {
        let rows = p.rows as usize;
        let cols = p.cols as usize;
        Search {
            cols,
            row_need: needs(&p.row_labels, rows),
            col_need: needs(&p.col_labels, cols),
            row_have: vec![0; rows],
            col_have: vec![0; cols],
            visited: vec![false; rows * cols],
            paranoid: opts.paranoid,
            budget: opts.budget,
            nodes: 0,
            found: 0,
            collect,
            paths: Vec::new(),
            adj: (0..rows * cols).map(|i| adjacent(rows, cols, i)).collect(),
            mark: vec![0; rows * cols],
            epoch: 0,
            queue: Vec::new(),
            degree: vec![0; rows * cols],
            peel: Vec::new(),
            row_reach: vec![0; rows],
            col_reach: vec![0; cols],
        }
    }

    fn index(&self, c: Cell) -> usize {
        (c.row as usize - 1) * self.cols + (c.col as usize - 1)
    }

    fn cell(&self, i: usize) -> Cell {
        Cell::new((i / self.cols + 1) as u128, (i % self.cols + 1) as u128)
    }

    fn neighbour(&self, i: usize, dir: u8) -> Option<usize> {
        let n = self.adj[i][dir as usize];
        (n != NONE).then_some(n as usize)
    }

    fn can_enter(&self, i: usize) -> bool {
        let (r, c) = (i / self.cols, i % self.cols);
        !self.visited[i]
            && self.row_have[r] < self.row_need[r]
            && self.col_have[c] < self.col_need[c]
    }

    fn enter(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget(self.budget));
        }
        self.visited[i] = true;
        self.row_have[i / self.cols] += 1;
        self.col_have[i % self.cols] += 1;
        Ok(())
    }

    fn leave(&mut self, i: usize) {
        self.visited[i] = false;
        self.row_have[i / self.cols] -= 1;
        self.col_have[i % self.cols] -= 1;
    }

    fn complete(&self) -> bool {
        let done =
            |need: &[u32], have: &[u32]| need.iter().zip(have).all(|(&n, &h)| n == NONE || n == h);
        done(&self.row_need, &self.row_have) && done(&self.col_need, &self.col_have)
    }

    /// Whether the end can still be reached and every labelled line can
    /// still collect its missing visits. Cells reachable from `cur` count
    /// toward a line only if they could sit inside a path: any cell other
    /// than the end needs two usable neighbours, and cells that fail this
    /// are peeled away repeatedly.
    fn feasible(&mut self, cur: usize, end: usize) -> bool {
        if self.paranoid {
            return true;
        }
        // Live cells carry the stamp `epoch`, peeled ones `epoch + 1`.
        self.epoch += 2;
        let (live, dead) = (self.epoch, self.epoch + 1);
        self.queue.clear();
        self.mark[cur] = live;
        self.queue.push(cur);
        let mut head = 0;
        while head < self.queue.len() {
            let i = self.queue[head];
            head += 1;
            if i == end {
                continue;
            }
            for n in self.adj[i] {
                let n = n as usize;
                if n != NONE as usize && self.mark[n] != live && self.can_enter(n) {
                    self.mark[n] = live;
                    self.queue.push(n);
                }
            }
        }
        if self.mark[end] != live {
            return false;
        }

        self.peel.clear();
        for k in 1..self.queue.len() {
            let i = self.queue[k];
            let deg = self.adj[i]
                .iter()
                .filter(|&&n| n != NONE && self.mark[n as usize] == live)
                .count() as u8;
            self.degree[i] = deg;
            if i != end && deg < 2 {
                self.peel.push(i);
            }
        }
        while let Some(i) = self.peel.pop() {
            if self.mark[i] != live {
                continue;
            }
            self.mark[i] = dead;
            for n in self.adj[i] {
                let n = n as usize;
                if n != NONE as usize && n != cur && self.mark[n] == live {
                    self.degree[n] -= 1;
                    if n != end && self.degree[n] < 2 {
                        self.peel.push(n);
                    }
                }
            }
        }
        if self.mark[end] != live {
            return false;
        }

        self.row_reach.iter_mut().for_each(|v| *v = 0);
        self.col_reach.iter_mut().for_each(|v| *v = 0);
        for k in 1..self.queue.len() {
            let i = self.queue[k];
            if self.mark[i] == live {
                self.row_reach[i / self.cols] += 1;
                self.col_reach[i % self.cols] += 1;
            }
        }
        let short = |need: &[u32], have: &[u32], reach: &[u32]| {
            need.iter()
                .zip(have)
                .zip(reach)
                .any(|((&n, &h), &r)| n != NONE && n - h > r)
        };
        !short(&self.row_need, &self.row_have, &self.row_reach)
            && !short(&self.col_need, &self.col_have, &self.col_reach)
    }

    fn record(&mut self, stack: &[(usize, u8)]) {
        self.found += 1;
        if self.collect {
            let cells = stack.iter().map(|&(i, _)| self.cell(i)).collect();
            self.paths.push(GridPath::new(cells));
        }
    }

    fn run(&mut self, start: usize, end: usize) -> Result<()> {
        if !self.can_enter(start) {
            return Ok(());
        }
        let mut stack: Vec<(usize, u8)> = Vec::new();
        self.enter(start)?;
        stack.push((start, if self.feasible(start, end) { 0 } else { 4 }));
        while let Some(&mut (cur, ref mut next)) = stack.last_mut() {
            if *next >= 4 {
                self.leave(cur);
                stack.pop();
                continue;
            }
            let dir = *next;
            *next += 1;
            let Some(n) = self.neighbour(cur, dir) else {
                continue;
            };
            if !self.can_enter(n) {
                continue;
            }
            self.enter(n)?;
            if n == end {
                stack.push((n, 4));
                if self.complete() {
                    self.record(&stack);
                }
            } else {
                let ok = self.feasible(n, end);
                stack.push((n, if ok { 0 } else { 4 }));
            }
        }
        Ok(())
    }
}
