use std::collections::BTreeMap;

use crate::instances::{Cell, GridPath, Int, Label, PathPuzzle, Violation};
use crate::runs::Runs;

/// Checks `path` against `puzzle` and returns every violated rule.
///
/// The path must be simple and orthogonally connected, stay inside the grid,
/// start at one door cell and end at the other, and visit every labelled
/// line exactly as many times as its label says. Labels may be stored
/// compressed; lines that the path never touches are checked run by run.
pub fn verify_path(puzzle: &PathPuzzle, path: &GridPath) -> Vec<Violation> {
    let mut out = path.validate();
    if path.is_empty() {
        return out;
    }
    let mut outside = false;
    for (i, c) in path.cells().iter().enumerate() {
        if !puzzle.contains(c) {
            outside = true;
            out.push(Violation::new(
                format!("cell {}", i + 1),
                format!(
                    "({}, {}) outside the {}x{} grid",
                    c.row, c.col, puzzle.rows, puzzle.cols
                ),
            ));
        }
    }
    if outside {
        return out;
    }

    let first = path.cells()[0];
    let last = *path.cells().last().unwrap();
    let [d1, d2] = puzzle.doors.map(|d| d.cell);
    let ends_ok = (first == d1 && last == d2) || (first == d2 && last == d1);
    if !ends_ok {
        out.push(Violation::new(
            "endpoints",
            format!(
                "path runs ({}, {})..({}, {}) but the doors are at ({}, {}) and ({}, {})",
                first.row, first.col, last.row, last.col, d1.row, d1.col, d2.row, d2.col
            ),
        ));
    }

    let mut rows: BTreeMap<Int, Int> = BTreeMap::new();
    let mut cols: BTreeMap<Int, Int> = BTreeMap::new();
    for &Cell { row, col } in path.cells() {
        *rows.entry(row).or_default() += 1;
        *cols.entry(col).or_default() += 1;
    }
    check_lines(&puzzle.row_labels, &rows, "row", &mut out);
    check_lines(&puzzle.col_labels, &cols, "column", &mut out);
    out
}

fn check_lines(
    labels: &Runs<Label>,
    visits: &BTreeMap<Int, Int>,
    what: &str,
    out: &mut Vec<Violation>,
) {
    let mut start: Int = 1;
    for (label, len) in labels.constant_runs() {
        let end = start + len;
        if let Label::Count(want) = label {
            let touched = visits.range(start..end);
            if want > 0 {
                let seen = visits.range(start..end).count() as Int;
                if seen < len {
                    // Some line in this run is never visited.
                    let missing = (start..end).find(|l| !visits.contains_key(l)).unwrap();
                    out.push(Violation::new(
                        format!("{what} {missing}"),
                        format!("visited 0 times, label {want}"),
                    ));
                }
            }
            for (&line, &got) in touched {
                if got != want {
                    out.push(Violation::new(
                        format!("{what} {line}"),
                        format!("visited {got} times, label {want}"),
                    ));
                }
            }
        }
        start = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Door, Side};

    fn two_by_two() -> PathPuzzle {
        PathPuzzle {
            rows: 2,
            cols: 2,
            doors: [Door::new(1, 1, Side::Left), Door::new(1, 2, Side::Right)],
            row_labels: Runs::from_vec(vec![Label::Count(2), Label::Count(2)]),
            col_labels: Runs::from_vec(vec![Label::Count(2), Label::Count(2)]),
        }
    }

    fn cells(v: &[(Int, Int)]) -> GridPath {
        GridPath::new(v.iter().map(|&(r, c)| Cell::new(r, c)).collect())
    }

    #[test]
    fn u_path_is_accepted() {
        let p = cells(&[(1, 1), (2, 1), (2, 2), (1, 2)]);
        assert!(verify_path(&two_by_two(), &p).is_empty());
    }

    #[test]
    fn straight_path_breaks_labels() {
        let p = cells(&[(1, 1), (1, 2)]);
        let v = verify_path(&two_by_two(), &p);
        assert!(v.iter().any(|v| v.locus == "row 2"));
        assert!(v.iter().any(|v| v.locus == "column 1"));
    }

    #[test]
    fn wrong_endpoint_and_gap() {
        let p = cells(&[(1, 1), (2, 2)]);
        let v = verify_path(&two_by_two(), &p);
        assert!(v.iter().any(|v| v.message.contains("adjacent")));
        assert!(v.iter().any(|v| v.locus == "endpoints"));
    }

    #[test]
    fn huge_blank_runs_are_cheap() {
        let p = PathPuzzle {
            rows: 1 << 70,
            cols: 2,
            doors: [Door::new(1, 1, Side::Left), Door::new(1, 2, Side::Right)],
            row_labels: Runs::repeat(Label::Blank, 1 << 70),
            col_labels: Runs::from_vec(vec![Label::Count(1), Label::Count(1)]),
        };
        assert!(verify_path(&p, &cells(&[(1, 1), (1, 2)])).is_empty());
        let mut q = p.clone();
        q.row_labels = Runs::repeat(Label::Count(2), 1 << 70);
        assert_eq!(verify_path(&q, &cells(&[(1, 1), (1, 2)])).len(), 1);
    }
}
