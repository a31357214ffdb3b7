//! Line-oriented text formats, one value per file.
//!
//! ```text
//! p1in3 <vars> <clauses>            then `<i> <j> <k>` per clause
//! 3dm <n> <num_triples>             then `<x> <y> <z>` per triple
//! nkdm <k> <n> <t>                  then k lines of n integers
//! lo <n> <m>                        then a line of n lengths, a line of m densities
//! pp <rows> <cols>
//! doors <r1> <c1> <s1> <r2> <c2> <s2>      sides are L, R, T, B
//! rows(bottom-up): <labels>                 `-` is a blank label
//! cols: <labels>
//! path <len>                        then `<r> <c>` per cell
//! assign <vars>                     then a line of 0/1 values
//! matching <count>                  then `<x> <y> <z>` per chosen triple
//! nkdm-sol <k> <n>                  then n lines of k values
//! offsets <n>                       then a line of n offsets
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Long density and label
//! lists may use the compressed `v*k` / `[a b]*k` forms of [`crate::runs`].

use std::fmt::Write as _;
use std::str::FromStr;

use super::*;
use crate::error::{Error, Result};
use crate::runs::parse_runs;

/// Parse/serialize pair for a value type.
pub trait TextFormat: Sized {
    fn parse_text(text: &str) -> Result<Self>;
    fn to_text(&self) -> String;
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (ci, ch) in body.char_indices() {
                if ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        tokens.push((s + 1, &body[s..ci]));
                    }
                } else if start.is_none() {
                    start = Some(ci);
                }
            }
            if let Some(s) = start {
                tokens.push((s + 1, &body[s..]));
            }
            if !tokens.is_empty() {
                lines.push(Line {
                    number: i + 1,
                    tokens,
                });
            }
        }
        Cursor {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<&Line<'a>> {
        if self.pos >= self.lines.len() {
            let line = if self.lines.is_empty() {
                1
            } else {
                self.last_line + 1
            };
            return Err(Error::parse(
                line,
                1,
                format!("expected {what}, found end of input"),
            ));
        }
        self.pos += 1;
        Ok(&self.lines[self.pos - 1])
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(l) => Err(Error::parse(
                l.number,
                l.tokens[0].0,
                "unexpected trailing content",
            )),
            None => Ok(()),
        }
    }
}

fn num<T: FromStr>(line: &Line<'_>, idx: usize, what: &str) -> Result<T> {
    let end_col = line.tokens.last().map_or(1, |(c, t)| c + t.len());
    let (col, tok) = line
        .tokens
        .get(idx)
        .ok_or_else(|| Error::parse(line.number, end_col, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line.number, *col, format!("bad {what} `{tok}`")))
}

fn expect_len(line: &Line<'_>, n: usize, what: &str) -> Result<()> {
    if line.tokens.len() > n {
        let (col, tok) = line.tokens[n];
        return Err(Error::parse(
            line.number,
            col,
            format!("unexpected `{tok}` after {what}"),
        ));
    }
    if line.tokens.len() < n {
        let end_col = line.tokens.last().map_or(1, |(c, t)| c + t.len());
        return Err(Error::parse(
            line.number,
            end_col,
            format!("{what}: expected {n} fields, found {}", line.tokens.len()),
        ));
    }
    Ok(())
}

fn header<'c>(cur: &'c mut Cursor<'_>, keyword: &str, fields: usize) -> Result<&'c Line<'c>> {
    let line = cur.next_line(&format!("`{keyword}` header"))?;
    let (col, tok) = line.tokens[0];
    if tok != keyword {
        return Err(Error::parse(
            line.number,
            col,
            format!("expected `{keyword}`, found `{tok}`"),
        ));
    }
    expect_len(line, fields + 1, keyword)?;
    Ok(line)
}

fn numbers<T: FromStr>(line: &Line<'_>, n: usize, what: &str) -> Result<Vec<T>> {
    expect_len(line, n, what)?;
    (0..n).map(|i| num(line, i, what)).collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn runs_from_line<T: Clone + PartialEq>(
    line: &Line<'_>,
    tokens: &[(usize, &str)],
    elem: impl FnMut(&str) -> Option<T>,
) -> Result<Runs<T>> {
    parse_runs(tokens, elem).map_err(|(col, msg)| Error::parse(line.number, col, msg))
}

// ---------------------------------------------------------------------------

impl TextFormat for Cnf1in3 {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "p1in3", 2)?;
        let vars: usize = num(h, 1, "variable count")?;
        let count: usize = num(h, 2, "clause count")?;
        let mut clauses = Vec::with_capacity(count);
        for _ in 0..count {
            let l = cur.next_line("clause")?;
            let v: Vec<usize> = numbers(l, 3, "clause")?;
            clauses.push([v[0], v[1], v[2]]);
        }
        cur.finish()?;
        Ok(Cnf1in3::new(vars, clauses))
    }

    fn to_text(&self) -> String {
        let mut s = format!("p1in3 {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(s, "{}", join(c));
        }
        s
    }
}

impl TextFormat for Tripartite3dm {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "3dm", 2)?;
        let n: usize = num(h, 1, "part size")?;
        let count: usize = num(h, 2, "triple count")?;
        let mut triples = Vec::with_capacity(count);
        for _ in 0..count {
            let l = cur.next_line("triple")?;
            let v: Vec<usize> = numbers(l, 3, "triple")?;
            triples.push([v[0], v[1], v[2]]);
        }
        cur.finish()?;
        Ok(Tripartite3dm::new(n, triples))
    }

    fn to_text(&self) -> String {
        let mut s = format!("3dm {} {}\n", self.part_size, self.triples.len());
        for t in &self.triples {
            let _ = writeln!(s, "{}", join(t));
        }
        s
    }
}

impl TextFormat for NumericalMatchingInstance {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "nkdm", 3)?;
        let k: usize = num(h, 1, "arity")?;
        let n: usize = num(h, 2, "size")?;
        let t: Int = num(h, 3, "target")?;
        let mut sets = Vec::with_capacity(k);
        for _ in 0..k {
            if n == 0 {
                sets.push(Vec::new());
                continue;
            }
            let l = cur.next_line("multiset")?;
            sets.push(numbers(l, n, "multiset")?);
        }
        cur.finish()?;
        Ok(NumericalMatchingInstance::new(sets, t))
    }

    fn to_text(&self) -> String {
        let mut s = format!("nkdm {} {} {}\n", self.arity(), self.size(), self.target);
        for set in &self.sets {
            let _ = writeln!(s, "{}", join(set));
        }
        s
    }
}

impl TextFormat for LengthOffsetsInstance {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "lo", 2)?;
        let n: usize = num(h, 1, "length count")?;
        let m: Int = num(h, 2, "horizon")?;
        let lengths = if n == 0 {
            Vec::new()
        } else {
            numbers(cur.next_line("lengths")?, n, "lengths")?
        };
        let densities = if m == 0 {
            Runs::default()
        } else {
            let l = cur.next_line("densities")?;
            let d = runs_from_line(l, &l.tokens, |s| s.parse::<usize>().ok())?;
            if d.len() != m {
                return Err(Error::parse(
                    l.number,
                    1,
                    format!("expected {m} densities, found {}", d.len()),
                ));
            }
            d
        };
        cur.finish()?;
        Ok(LengthOffsetsInstance {
            lengths,
            horizon: m,
            densities,
        })
    }

    fn to_text(&self) -> String {
        let mut s = format!("lo {} {}\n", self.lengths.len(), self.horizon);
        if !self.lengths.is_empty() {
            let _ = writeln!(s, "{}", join(&self.lengths));
        }
        if !self.densities.is_empty() {
            let _ = writeln!(s, "{}", self.densities.to_text());
        }
        s
    }
}

const ROWS_KEY: &str = "rows(bottom-up):";
const COLS_KEY: &str = "cols:";

fn label_line(cur: &mut Cursor<'_>, key: &str, expected: Int) -> Result<Runs<Label>> {
    let l = cur.next_line(key)?;
    let (col, tok) = l.tokens[0];
    if tok != key {
        return Err(Error::parse(
            l.number,
            col,
            format!("expected `{key}`, found `{tok}`"),
        ));
    }
    let r = runs_from_line(l, &l.tokens[1..], Label::parse)?;
    if r.len() != expected {
        return Err(Error::parse(
            l.number,
            col,
            format!("expected {expected} labels, found {}", r.len()),
        ));
    }
    Ok(r)
}

impl TextFormat for PathPuzzle {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "pp", 2)?;
        let rows: Int = num(h, 1, "row count")?;
        let cols: Int = num(h, 2, "column count")?;
        let d = header(&mut cur, "doors", 6)?;
        let mut doors = Vec::with_capacity(2);
        for k in 0..2 {
            let r: Int = num(d, 1 + 3 * k, "door row")?;
            let c: Int = num(d, 2 + 3 * k, "door column")?;
            let (scol, stok) = d.tokens[3 + 3 * k];
            let side = Side::from_letter(stok)
                .ok_or_else(|| Error::parse(d.number, scol, format!("bad side `{stok}`")))?;
            doors.push(Door::new(r, c, side));
        }
        let row_labels = label_line(&mut cur, ROWS_KEY, rows)?;
        let col_labels = label_line(&mut cur, COLS_KEY, cols)?;
        cur.finish()?;
        Ok(PathPuzzle {
            rows,
            cols,
            doors: [doors[0], doors[1]],
            row_labels,
            col_labels,
        })
    }

    fn to_text(&self) -> String {
        let [a, b] = self.doors;
        format!(
            "pp {} {}\ndoors {} {} {} {} {} {}\n{} {}\n{} {}\n",
            self.rows,
            self.cols,
            a.cell.row,
            a.cell.col,
            a.side.letter(),
            b.cell.row,
            b.cell.col,
            b.side.letter(),
            ROWS_KEY,
            self.row_labels.to_text(),
            COLS_KEY,
            self.col_labels.to_text(),
        )
    }
}

impl TextFormat for GridPath {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "path", 1)?;
        let len: usize = num(h, 1, "path length")?;
        let mut cells = Vec::with_capacity(len);
        for _ in 0..len {
            let l = cur.next_line("cell")?;
            let v: Vec<Int> = numbers(l, 2, "cell")?;
            cells.push(Cell::new(v[0], v[1]));
        }
        cur.finish()?;
        Ok(GridPath::new(cells))
    }

    fn to_text(&self) -> String {
        let mut s = format!("path {}\n", self.len());
        for c in self.cells() {
            let _ = writeln!(s, "{} {}", c.row, c.col);
        }
        s
    }
}

impl TextFormat for Assignment {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "assign", 1)?;
        let n: usize = num(h, 1, "variable count")?;
        let values = if n == 0 {
            Vec::new()
        } else {
            let l = cur.next_line("values")?;
            expect_len(l, n, "values")?;
            l.tokens
                .iter()
                .map(|&(col, t)| match t {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    _ => Err(Error::parse(
                        l.number,
                        col,
                        format!("bad truth value `{t}`"),
                    )),
                })
                .collect::<Result<_>>()?
        };
        cur.finish()?;
        Ok(Assignment::new(values))
    }

    fn to_text(&self) -> String {
        let bits: Vec<&str> = self
            .values
            .iter()
            .map(|&b| if b { "1" } else { "0" })
            .collect();
        format!("assign {}\n{}\n", self.values.len(), bits.join(" "))
    }
}

impl TextFormat for ThreeDmSolution {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "matching", 1)?;
        let n: usize = num(h, 1, "triple count")?;
        let mut triples = Vec::with_capacity(n);
        for _ in 0..n {
            let l = cur.next_line("triple")?;
            let v: Vec<usize> = numbers(l, 3, "triple")?;
            triples.push([v[0], v[1], v[2]]);
        }
        cur.finish()?;
        Ok(ThreeDmSolution::new(triples))
    }

    fn to_text(&self) -> String {
        let mut s = format!("matching {}\n", self.triples().len());
        for t in self.triples() {
            let _ = writeln!(s, "{}", join(t));
        }
        s
    }
}

impl TextFormat for NumericalMatchingSolution {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "nkdm-sol", 2)?;
        let k: usize = num(h, 1, "arity")?;
        let n: usize = num(h, 2, "tuple count")?;
        let mut tuples = Vec::with_capacity(n);
        for _ in 0..n {
            tuples.push(numbers(cur.next_line("tuple")?, k, "tuple")?);
        }
        cur.finish()?;
        Ok(NumericalMatchingSolution::new(tuples))
    }

    fn to_text(&self) -> String {
        let k = self.tuples().first().map_or(0, Vec::len);
        let mut s = format!("nkdm-sol {} {}\n", k, self.tuples().len());
        for t in self.tuples() {
            let _ = writeln!(s, "{}", join(t));
        }
        s
    }
}

impl TextFormat for LengthOffsetsSolution {
    fn parse_text(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let h = header(&mut cur, "offsets", 1)?;
        let n: usize = num(h, 1, "offset count")?;
        let offsets = if n == 0 {
            Vec::new()
        } else {
            numbers(cur.next_line("offsets")?, n, "offsets")?
        };
        cur.finish()?;
        Ok(LengthOffsetsSolution::new(offsets))
    }

    fn to_text(&self) -> String {
        format!("offsets {}\n{}\n", self.offsets.len(), join(&self.offsets))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_fails_at_line_one() {
        match Cnf1in3::parse_text("") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match PathPuzzle::parse_text("# only a comment\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cnf_round_trip() {
        let f = Cnf1in3::new(4, vec![[1, 2, 3], [1, 2, 4]]);
        let text = f.to_text();
        assert_eq!(text, "p1in3 4 2\n1 2 3\n1 2 4\n");
        assert_eq!(Cnf1in3::parse_text(&text).unwrap(), f);
    }

    #[test]
    fn malformed_token_position() {
        let err = Cnf1in3::parse_text("p1in3 3 1\n# c\n1  x 3\n").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (3, 4)),
            other => panic!("{other:?}"),
        }
        let err = Tripartite3dm::parse_text("3dm 1 1\n1 1 1\n1 1 1\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 3,
                column: 1,
                ..
            }
        ));
    }

    #[test]
    fn puzzle_text_layout() {
        let p = PathPuzzle {
            rows: 2,
            cols: 2,
            doors: [Door::new(2, 1, Side::Top), Door::new(2, 2, Side::Top)],
            row_labels: Runs::from_vec(vec![Label::Count(2), Label::Blank]),
            col_labels: Runs::from_vec(vec![Label::Count(0), Label::Count(2)]),
        };
        let text = p.to_text();
        assert_eq!(
            text,
            "pp 2 2\ndoors 2 1 T 2 2 T\nrows(bottom-up): 2 -\ncols: 0 2\n"
        );
        assert_eq!(PathPuzzle::parse_text(&text).unwrap(), p);
    }

    #[test]
    fn label_count_mismatch() {
        let err =
            PathPuzzle::parse_text("pp 2 2\ndoors 2 1 T 2 2 T\nrows(bottom-up): 2\ncols: 0 2\n");
        assert!(matches!(err, Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn solution_formats() {
        let a = Assignment::new(vec![true, false, false]);
        assert_eq!(Assignment::parse_text(&a.to_text()).unwrap(), a);
        let m = ThreeDmSolution::new(vec![[2, 2, 2], [1, 1, 1]]);
        assert_eq!(ThreeDmSolution::parse_text(&m.to_text()).unwrap(), m);
        let s = NumericalMatchingSolution::new(vec![vec![5, 5, 5], vec![7, 4, 4]]);
        assert_eq!(
            NumericalMatchingSolution::parse_text(&s.to_text()).unwrap(),
            s
        );
        let o = LengthOffsetsSolution::new(vec![5, 5, 4]);
        assert_eq!(LengthOffsetsSolution::parse_text(&o.to_text()).unwrap(), o);
        let p = GridPath::new(vec![Cell::new(1, 1), Cell::new(1, 2)]);
        assert_eq!(GridPath::parse_text(&p.to_text()).unwrap(), p);
    }
}
