//! Domain types for the six problems on the chain and their solutions.
//!
//! Values are immutable once built; every type exposes a `validate` that
//! returns all violated invariants as data instead of failing on the first.
//! Rows of path puzzles are indexed bottom-up starting at 1, columns
//! left-to-right starting at 1.

mod text;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;

use crate::runs::Runs;

pub use text::TextFormat;

/// Magnitude type for numbers, horizons, and grid dimensions.
pub type Int = u128;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub locus: String,
    pub message: String,
}

impl Violation {
    pub fn new(locus: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            locus: locus.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.locus, self.message)
    }
}

/// Exact solution count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolutionCount(pub BigUint);

impl SolutionCount {
    pub fn zero() -> Self {
        SolutionCount(BigUint::default())
    }
}

impl From<u64> for SolutionCount {
    fn from(v: u64) -> Self {
        SolutionCount(BigUint::from(v))
    }
}

impl From<usize> for SolutionCount {
    fn from(v: usize) -> Self {
        SolutionCount(BigUint::from(v))
    }
}

impl fmt::Display for SolutionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq<u64> for SolutionCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

// ---------------------------------------------------------------------------
// Positive 1-in-3-SAT

/// A positive 3-CNF formula. Clauses hold 1-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cnf1in3 {
    pub variable_count: usize,
    pub clauses: Vec<[usize; 3]>,
}

impl Cnf1in3 {
    pub fn new(variable_count: usize, clauses: Vec<[usize; 3]>) -> Self {
        Cnf1in3 {
            variable_count,
            clauses,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.variable_count == 0 {
            out.push(Violation::new("variable_count", "must be positive"));
        }
        for (ci, clause) in self.clauses.iter().enumerate() {
            for &v in clause {
                if v == 0 || v > self.variable_count {
                    out.push(Violation::new(
                        format!("clause {}", ci + 1),
                        format!("index {v} outside [1, {}]", self.variable_count),
                    ));
                }
            }
        }
        out
    }

    /// Number of occurrences of each variable (index 0 is variable 1).
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.variable_count];
        for c in &self.clauses {
            for &v in c {
                if (1..=self.variable_count).contains(&v) {
                    occ[v - 1] += 1;
                }
            }
        }
        occ
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.check_solution(a).is_empty()
    }

    pub fn check_solution(&self, a: &Assignment) -> Vec<Violation> {
        let mut out = Vec::new();
        if a.values.len() != self.variable_count {
            out.push(Violation::new(
                "assignment",
                format!(
                    "has {} values, expected {}",
                    a.values.len(),
                    self.variable_count
                ),
            ));
            return out;
        }
        for (ci, clause) in self.clauses.iter().enumerate() {
            let trues = clause.iter().filter(|&&v| a.values[v - 1]).count();
            if trues != 1 {
                out.push(Violation::new(
                    format!("clause {}", ci + 1),
                    format!("{trues} true literals, expected exactly 1"),
                ));
            }
        }
        out
    }
}

/// Truth assignment; index 0 is variable 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }
}

// ---------------------------------------------------------------------------
// 3-Dimensional Matching

/// Tripartite 3DM instance; parts X, Y, Z each hold elements `1..=part_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tripartite3dm {
    pub part_size: usize,
    pub triples: Vec<[usize; 3]>,
}

impl Tripartite3dm {
    pub fn new(part_size: usize, triples: Vec<[usize; 3]>) -> Self {
        Tripartite3dm { part_size, triples }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for (ti, t) in self.triples.iter().enumerate() {
            for (axis, &e) in t.iter().enumerate() {
                if e == 0 || e > self.part_size {
                    out.push(Violation::new(
                        format!("triple {}", ti + 1),
                        format!(
                            "{} index {e} outside [1, {}]",
                            ["x", "y", "z"][axis],
                            self.part_size
                        ),
                    ));
                }
            }
            if !seen.insert(*t) {
                out.push(Violation::new(
                    format!("triple {}", ti + 1),
                    "duplicate triple",
                ));
            }
        }
        out
    }

    /// No two triples agree on more than one coordinate.
    pub fn is_pairwise_sparse(&self) -> bool {
        let mut xy = HashSet::new();
        let mut xz = HashSet::new();
        let mut yz = HashSet::new();
        self.triples
            .iter()
            .all(|&[x, y, z]| xy.insert((x, y)) && xz.insert((x, z)) && yz.insert((y, z)))
    }

    /// Occurrence counts `m_T` per part; entry `e - 1` is element `e`.
    pub fn multiplicities(&self) -> [Vec<usize>; 3] {
        let mut m = [
            vec![0; self.part_size],
            vec![0; self.part_size],
            vec![0; self.part_size],
        ];
        for t in &self.triples {
            for axis in 0..3 {
                if (1..=self.part_size).contains(&t[axis]) {
                    m[axis][t[axis] - 1] += 1;
                }
            }
        }
        m
    }

    pub fn check_solution(&self, s: &ThreeDmSolution) -> Vec<Violation> {
        let mut out = Vec::new();
        let known: HashSet<_> = self.triples.iter().collect();
        let mut cover = [
            vec![0usize; self.part_size],
            vec![0usize; self.part_size],
            vec![0usize; self.part_size],
        ];
        for t in &s.triples {
            if !known.contains(t) {
                out.push(Violation::new(
                    "matching",
                    format!("triple ({}, {}, {}) not in instance", t[0], t[1], t[2]),
                ));
                continue;
            }
            for axis in 0..3 {
                cover[axis][t[axis] - 1] += 1;
            }
        }
        for (axis, counts) in cover.iter().enumerate() {
            for (e, &c) in counts.iter().enumerate() {
                if c != 1 {
                    out.push(Violation::new(
                        format!("{} element {}", ["x", "y", "z"][axis], e + 1),
                        format!("covered {c} times"),
                    ));
                }
            }
        }
        out
    }
}

/// A matching, stored as the chosen triples in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeDmSolution {
    triples: Vec<[usize; 3]>,
}

impl ThreeDmSolution {
    pub fn new(mut triples: Vec<[usize; 3]>) -> Self {
        triples.sort_unstable();
        ThreeDmSolution { triples }
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }
}

// ---------------------------------------------------------------------------
// Numerical k-DM

/// `k` multisets of positive integers and a target sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalMatchingInstance {
    pub sets: Vec<Vec<Int>>,
    pub target: Int,
}

impl NumericalMatchingInstance {
    pub fn new(sets: Vec<Vec<Int>>, target: Int) -> Self {
        NumericalMatchingInstance { sets, target }
    }

    pub fn arity(&self) -> usize {
        self.sets.len()
    }

    pub fn size(&self) -> usize {
        self.sets.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !(3..=4).contains(&self.arity()) {
            out.push(Violation::new(
                "k",
                format!("arity {} not in {{3, 4}}", self.arity()),
            ));
        }
        if self.target == 0 {
            out.push(Violation::new("target", "must be positive"));
        }
        let n = self.size();
        for (si, set) in self.sets.iter().enumerate() {
            if set.len() != n {
                out.push(Violation::new(
                    format!("set {}", si + 1),
                    format!("has {} elements, expected {n}", set.len()),
                ));
            }
            for (ei, &v) in set.iter().enumerate() {
                if v == 0 {
                    out.push(Violation::new(
                        format!("set {}, element {}", si + 1, ei + 1),
                        "must be positive",
                    ));
                }
            }
        }
        out
    }

    /// Whether multiset `index` is duplicate-free.
    pub fn is_set(&self, index: usize) -> bool {
        let mut seen = HashSet::new();
        self.sets[index].iter().all(|v| seen.insert(*v))
    }

    /// Whether `S_a ∪ (S_a + S_b)` is a set, where `S_a + S_b` is the
    /// multiset of all pairwise sums.
    pub fn union_with_sums_is_set(&self, a: usize, b: usize) -> bool {
        let mut seen = HashSet::new();
        for &v in &self.sets[a] {
            if !seen.insert(v) {
                return false;
            }
        }
        for &v in &self.sets[a] {
            for &w in &self.sets[b] {
                if !seen.insert(v + w) {
                    return false;
                }
            }
        }
        true
    }

    pub fn check_solution(&self, s: &NumericalMatchingSolution) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.arity();
        for (ti, t) in s.tuples.iter().enumerate() {
            if t.len() != k {
                out.push(Violation::new(
                    format!("tuple {}", ti + 1),
                    format!("has {} coordinates, expected {k}", t.len()),
                ));
                return out;
            }
            let sum = t.iter().try_fold(0u128, |acc, &v| acc.checked_add(v));
            if sum != Some(self.target) {
                out.push(Violation::new(
                    format!("tuple {}", ti + 1),
                    format!("sums to {:?}, expected {}", sum, self.target),
                ));
            }
        }
        for (axis, set) in self.sets.iter().enumerate() {
            let mut want = set.clone();
            want.sort_unstable();
            let mut got: Vec<Int> = s
                .tuples
                .iter()
                .filter_map(|t| t.get(axis).copied())
                .collect();
            got.sort_unstable();
            if want != got {
                out.push(Violation::new(
                    format!("coordinate {}", axis + 1),
                    "values do not match the input multiset",
                ));
            }
        }
        out
    }
}

/// Value-level solution: the multiset of chosen tuples, kept sorted so that
/// equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumericalMatchingSolution {
    tuples: Vec<Vec<Int>>,
}

impl NumericalMatchingSolution {
    pub fn new(mut tuples: Vec<Vec<Int>>) -> Self {
        tuples.sort_unstable();
        NumericalMatchingSolution { tuples }
    }

    pub fn tuples(&self) -> &[Vec<Int>] {
        &self.tuples
    }
}

// ---------------------------------------------------------------------------
// Length Offsets

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LengthOffsetsInstance {
    pub lengths: Vec<Int>,
    pub horizon: Int,
    pub densities: Runs<usize>,
}

impl LengthOffsetsInstance {
    pub fn new(lengths: Vec<Int>, densities: Vec<usize>) -> Self {
        LengthOffsetsInstance {
            lengths,
            horizon: densities.len() as Int,
            densities: Runs::from_vec(densities),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.lengths.len();
        let mut seen = HashSet::new();
        for (j, &a) in self.lengths.iter().enumerate() {
            if a == 0 {
                out.push(Violation::new(
                    format!("length {}", j + 1),
                    "must be positive",
                ));
            }
            if a > self.horizon {
                out.push(Violation::new(
                    format!("length {}", j + 1),
                    format!("{a} exceeds horizon {}", self.horizon),
                ));
            }
            if !seen.insert(a) {
                out.push(Violation::new(
                    format!("length {}", j + 1),
                    format!("{a} repeated"),
                ));
            }
        }
        if self.densities.len() != self.horizon {
            out.push(Violation::new(
                "densities",
                format!(
                    "has {} entries, expected {}",
                    self.densities.len(),
                    self.horizon
                ),
            ));
        }
        if let Some(&t) = self.densities.entries().find(|&&t| t > n) {
            out.push(Violation::new(
                "densities",
                format!("entry {t} exceeds n = {n}"),
            ));
        }
        out
    }

    pub fn check_solution(&self, s: &LengthOffsetsSolution) -> Vec<Violation> {
        let mut out = Vec::new();
        if s.offsets.len() != self.lengths.len() {
            out.push(Violation::new(
                "offsets",
                format!(
                    "has {} entries, expected {}",
                    s.offsets.len(),
                    self.lengths.len()
                ),
            ));
            return out;
        }
        // Coverage changes only at interval endpoints, so compare piecewise.
        let mut events: BTreeMap<Int, i64> = BTreeMap::new();
        for (j, (&a, &b)) in self.lengths.iter().zip(&s.offsets).enumerate() {
            match a.checked_add(b) {
                Some(end) if end <= self.horizon => {
                    *events.entry(b).or_default() += 1;
                    *events.entry(end).or_default() -= 1;
                }
                _ => out.push(Violation::new(
                    format!("offset {}", j + 1),
                    format!("interval [{b}, {b}+{a}) leaves [0, {}]", self.horizon),
                )),
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut pos: Int = 0;
        let mut ev = events.into_iter().peekable();
        let mut cover: i64 = 0;
        for (t, count) in self.densities.constant_runs() {
            let end = pos + count;
            while pos < end {
                while let Some(&(p, d)) = ev.peek() {
                    if p <= pos {
                        cover += d;
                        ev.next();
                    } else {
                        break;
                    }
                }
                let next = ev.peek().map_or(end, |&(p, _)| p.min(end));
                if cover != t as i64 {
                    out.push(Violation::new(
                        format!("density {pos}"),
                        format!("covered {cover} times, expected {t}"),
                    ));
                    return out;
                }
                pos = next;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthOffsetsSolution {
    pub offsets: Vec<Int>,
}

impl LengthOffsetsSolution {
    pub fn new(offsets: Vec<Int>) -> Self {
        LengthOffsetsSolution { offsets }
    }
}

// ---------------------------------------------------------------------------
// Path Puzzle

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
            Side::Top => 'T',
            Side::Bottom => 'B',
        }
    }

    pub fn from_letter(c: &str) -> Option<Side> {
        match c {
            "L" => Some(Side::Left),
            "R" => Some(Side::Right),
            "T" => Some(Side::Top),
            "B" => Some(Side::Bottom),
            _ => None,
        }
    }
}

/// Grid cell, 1-based; rows count up from the bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: Int,
    pub col: Int,
}

impl Cell {
    pub fn new(row: Int, col: Int) -> Self {
        Cell { row, col }
    }

    pub fn is_adjacent(&self, other: &Cell) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }
}

/// A door is a boundary edge: a cell plus the side of it that faces outward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Door {
    pub cell: Cell,
    pub side: Side,
}

impl Door {
    pub fn new(row: Int, col: Int, side: Side) -> Self {
        Door {
            cell: Cell::new(row, col),
            side,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Blank,
    Count(Int),
}

impl Label {
    pub fn count(self) -> Option<Int> {
        match self {
            Label::Blank => None,
            Label::Count(c) => Some(c),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Blank => f.write_str("-"),
            Label::Count(c) => write!(f, "{c}"),
        }
    }
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        if s == "-" {
            Some(Label::Blank)
        } else {
            s.parse().ok().map(Label::Count)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathPuzzle {
    pub rows: Int,
    pub cols: Int,
    pub doors: [Door; 2],
    /// Entry `i` labels row `i + 1`, counting from the bottom.
    pub row_labels: Runs<Label>,
    pub col_labels: Runs<Label>,
}

impl PathPuzzle {
    pub fn row_label(&self, row: Int) -> Label {
        *self.row_labels.get(row - 1).unwrap_or(&Label::Blank)
    }

    pub fn col_label(&self, col: Int) -> Label {
        *self.col_labels.get(col - 1).unwrap_or(&Label::Blank)
    }

    pub fn contains(&self, c: &Cell) -> bool {
        (1..=self.rows).contains(&c.row) && (1..=self.cols).contains(&c.col)
    }

    fn door_faces_out(&self, d: &Door) -> bool {
        match d.side {
            Side::Left => d.cell.col == 1,
            Side::Right => d.cell.col == self.cols,
            Side::Bottom => d.cell.row == 1,
            Side::Top => d.cell.row == self.rows,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.rows == 0 {
            out.push(Violation::new("rows", "must be positive"));
        }
        if self.cols == 0 {
            out.push(Violation::new("cols", "must be positive"));
        }
        for (i, d) in self.doors.iter().enumerate() {
            if !self.contains(&d.cell) {
                out.push(Violation::new(
                    format!("door {}", i + 1),
                    "cell outside the grid",
                ));
            } else if !self.door_faces_out(d) {
                out.push(Violation::new(
                    format!("door {}", i + 1),
                    format!("side {} is not on the boundary", d.side.letter()),
                ));
            }
        }
        if self.doors[0] == self.doors[1] {
            out.push(Violation::new("doors", "the two doors coincide"));
        }
        if self.row_labels.len() != self.rows {
            out.push(Violation::new(
                "row labels",
                format!("{} entries, expected {}", self.row_labels.len(), self.rows),
            ));
        }
        if self.col_labels.len() != self.cols {
            out.push(Violation::new(
                "column labels",
                format!("{} entries, expected {}", self.col_labels.len(), self.cols),
            ));
        }
        check_label_bounds(&self.row_labels, self.cols, "row", &mut out);
        check_label_bounds(&self.col_labels, self.rows, "column", &mut out);
        out
    }
}

fn check_label_bounds(labels: &Runs<Label>, bound: Int, what: &str, out: &mut Vec<Violation>) {
    if labels.is_expanded() {
        for (i, l) in labels.iter().enumerate() {
            if let Label::Count(c) = l {
                if *c > bound {
                    out.push(Violation::new(
                        format!("{what} {}", i + 1),
                        format!("label {c} exceeds {bound}"),
                    ));
                }
            }
        }
    } else if let Some(c) = labels
        .entries()
        .filter_map(|l| l.count())
        .find(|&c| c > bound)
    {
        out.push(Violation::new(
            format!("{what} labels"),
            format!("label {c} exceeds {bound}"),
        ));
    }
}

/// A simple orthogonal path of cells.
///
/// Paths are undirected solutions: [`GridPath::new`] stores them starting
/// from the lexicographically smaller endpoint (row, then column), so a path
/// and its reversal compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPath {
    cells: Vec<Cell>,
}

impl GridPath {
    pub fn new(mut cells: Vec<Cell>) -> Self {
        if let (Some(first), Some(last)) = (cells.first(), cells.last()) {
            if last < first {
                cells.reverse();
            }
        }
        GridPath { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Shape checks independent of any puzzle: non-empty, simple, connected.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.cells.is_empty() {
            out.push(Violation::new("path", "empty"));
        }
        let mut seen = HashSet::new();
        for (i, c) in self.cells.iter().enumerate() {
            if !seen.insert(*c) {
                out.push(Violation::new(
                    format!("cell {}", i + 1),
                    format!("({}, {}) repeated", c.row, c.col),
                ));
            }
            if i > 0 && !self.cells[i - 1].is_adjacent(c) {
                out.push(Violation::new(
                    format!("cell {}", i + 1),
                    "not orthogonally adjacent to its predecessor",
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnf_out_of_range_index() {
        let f = Cnf1in3::new(3, vec![[1, 2, 4]]);
        let v = f.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].locus, "clause 1");
        assert!(v[0].message.contains("index 4"));
    }

    #[test]
    fn fig4_length_offsets_instance_is_valid() {
        let lo = LengthOffsetsInstance::new(
            vec![5, 6, 7],
            vec![0, 0, 0, 0, 1, 3, 3, 3, 3, 3, 2, 0, 0, 0, 0],
        );
        assert!(lo.validate().is_empty());
        assert!(lo
            .check_solution(&LengthOffsetsSolution::new(vec![5, 5, 4]))
            .is_empty());
        assert!(!lo
            .check_solution(&LengthOffsetsSolution::new(vec![5, 4, 5]))
            .is_empty());
    }

    #[test]
    fn label_exceeding_width() {
        let p = PathPuzzle {
            rows: 2,
            cols: 2,
            doors: [Door::new(2, 1, Side::Top), Door::new(2, 2, Side::Top)],
            row_labels: Runs::from_vec(vec![Label::Count(3), Label::Blank]),
            col_labels: Runs::from_vec(vec![Label::Blank, Label::Blank]),
        };
        let v = p.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].message.contains("exceeds 2"));
    }

    #[test]
    fn door_must_face_outward() {
        let p = PathPuzzle {
            rows: 2,
            cols: 2,
            doors: [Door::new(2, 1, Side::Right), Door::new(1, 2, Side::Bottom)],
            row_labels: Runs::from_vec(vec![Label::Blank; 2]),
            col_labels: Runs::from_vec(vec![Label::Blank; 2]),
        };
        assert_eq!(p.validate().len(), 1);
    }

    #[test]
    fn sparse_detection() {
        let g = Tripartite3dm::new(2, vec![[1, 1, 1], [2, 2, 2], [1, 2, 2], [2, 1, 1]]);
        assert!(!g.is_pairwise_sparse());
        assert!(!Tripartite3dm::new(2, vec![[1, 1, 1], [1, 2, 1]]).is_pairwise_sparse());
        assert!(!Tripartite3dm::new(2, vec![[1, 1, 1], [2, 2, 2], [1, 2, 2]]).is_pairwise_sparse());
        assert!(Tripartite3dm::new(3, vec![[1, 1, 1], [2, 2, 2], [1, 2, 3]]).is_pairwise_sparse());
    }

    #[test]
    fn nkdm_solution_multiset_check() {
        let inst =
            NumericalMatchingInstance::new(vec![vec![5, 6, 7], vec![4, 5, 5], vec![4, 4, 5]], 15);
        let good =
            NumericalMatchingSolution::new(vec![vec![6, 5, 4], vec![5, 5, 5], vec![7, 4, 4]]);
        assert!(inst.check_solution(&good).is_empty());
        let bad = NumericalMatchingSolution::new(vec![vec![6, 4, 5], vec![5, 5, 5], vec![7, 4, 4]]);
        assert!(!inst.check_solution(&bad).is_empty());
    }

    #[test]
    fn path_canonical_orientation() {
        let a = GridPath::new(vec![Cell::new(1, 2), Cell::new(1, 1)]);
        let b = GridPath::new(vec![Cell::new(1, 1), Cell::new(1, 2)]);
        assert_eq!(a, b);
        assert_eq!(a.cells()[0], Cell::new(1, 1));
    }
}
