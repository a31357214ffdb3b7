//! Compressed sequences for densities and line labels.
//!
//! Instances deep in the reduction chain have horizons around `10^19`, so a
//! density vector or a row-label list cannot be materialized. [`Runs`] stores
//! a sequence as a list of segments, each a short pattern repeated some
//! number of times.
//!
//! Representation is canonical: sequences of at most [`EXPAND_LIMIT`]
//! entries are kept fully expanded in a single literal segment, longer ones
//! keep their segments with adjacent equal patterns merged. Derived equality
//! is therefore value equality for short sequences, and structural equality
//! for long ones.

use std::fmt;

/// Sequences up to this length are stored (and printed) expanded.
pub const EXPAND_LIMIT: u128 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment<T> {
    pub pattern: Vec<T>,
    pub repeat: u128,
}

impl<T> Segment<T> {
    pub fn len(&self) -> u128 {
        self.pattern.len() as u128 * self.repeat
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Runs<T> {
    segments: Vec<Segment<T>>,
    // starts[i] = offset of segments[i]
    starts: Vec<u128>,
    len: u128,
}

impl<T: fmt::Debug> fmt::Debug for Runs<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_expanded() {
            f.debug_list().entries(self.iter()).finish()
        } else {
            f.debug_list().entries(&self.segments).finish()
        }
    }
}

impl<T: Clone + PartialEq> Default for Runs<T> {
    fn default() -> Self {
        Runs::from_vec(Vec::new())
    }
}

impl<T: Clone + PartialEq> Runs<T> {
    pub fn from_vec(values: Vec<T>) -> Self {
        let mut b = RunsBuilder::new();
        b.push_pattern(values, 1);
        b.finish()
    }

    pub fn repeat(value: T, count: u128) -> Self {
        let mut b = RunsBuilder::new();
        b.push_repeat(value, count);
        b.finish()
    }

    fn from_segments(segments: Vec<Segment<T>>) -> Self {
        let len: u128 = segments.iter().map(Segment::len).sum();
        let segments = if len <= EXPAND_LIMIT {
            let mut flat = Vec::with_capacity(len as usize);
            for s in &segments {
                for _ in 0..s.repeat {
                    flat.extend(s.pattern.iter().cloned());
                }
            }
            if flat.is_empty() {
                Vec::new()
            } else {
                vec![Segment {
                    pattern: flat,
                    repeat: 1,
                }]
            }
        } else {
            let mut merged: Vec<Segment<T>> = Vec::with_capacity(segments.len());
            for s in segments {
                if s.is_empty() {
                    continue;
                }
                match merged.last_mut() {
                    Some(last) if last.pattern == s.pattern => last.repeat += s.repeat,
                    _ => merged.push(s),
                }
            }
            merged
        };
        let mut starts = Vec::with_capacity(segments.len());
        let mut acc = 0u128;
        for s in &segments {
            starts.push(acc);
            acc += s.len();
        }
        Runs {
            segments,
            starts,
            len,
        }
    }
}

impl<T> Runs<T> {
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// True when the sequence is stored as one literal segment.
    pub fn is_expanded(&self) -> bool {
        self.len <= EXPAND_LIMIT
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    pub fn get(&self, index: u128) -> Option<&T> {
        if index >= self.len {
            return None;
        }
        let seg = match self.starts.binary_search(&index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let s = &self.segments[seg];
        let off = (index - self.starts[seg]) % s.pattern.len() as u128;
        Some(&s.pattern[off as usize])
    }

    /// Iterates over every entry. Only sensible for sequences that fit in memory.
    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.segments
            .iter()
            .flat_map(|s| (0..s.repeat).flat_map(move |_| s.pattern.iter()))
    }

    /// Every distinct entry that occurs somewhere (possibly with duplicates),
    /// without expanding repeats.
    pub fn entries(&self) -> impl Iterator<Item = &T> + '_ {
        self.segments.iter().flat_map(|s| s.pattern.iter())
    }

    /// Returns the expanded entries, or `None` when the sequence is too long.
    pub fn to_vec(&self) -> Option<Vec<T>>
    where
        T: Clone,
    {
        if self.len > EXPAND_LIMIT {
            return None;
        }
        Some(self.iter().cloned().collect())
    }
}

impl<T: Clone + PartialEq> Runs<T> {
    /// Maximal constant runs `(value, count)` in order.
    pub fn constant_runs(&self) -> Vec<(T, u128)> {
        let mut out: Vec<(T, u128)> = Vec::new();
        let mut push = |v: &T, c: u128| match out.last_mut() {
            Some((last, n)) if last == v => *n += c,
            _ => out.push((v.clone(), c)),
        };
        for s in &self.segments {
            if s.pattern.len() == 1 {
                push(&s.pattern[0], s.repeat);
            } else if s.pattern.iter().all(|v| *v == s.pattern[0]) {
                push(&s.pattern[0], s.len());
            } else {
                for _ in 0..s.repeat {
                    for v in &s.pattern {
                        push(v, 1);
                    }
                }
            }
        }
        out
    }
}

impl<T: Clone + PartialEq> FromIterator<T> for Runs<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Runs::from_vec(iter.into_iter().collect())
    }
}

/// Incremental construction of a [`Runs`].
#[derive(Debug)]
pub struct RunsBuilder<T> {
    segments: Vec<Segment<T>>,
    literal: Vec<T>,
}

impl<T: Clone + PartialEq> Default for RunsBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Clone + PartialEq> RunsBuilder<T> {
    pub fn new() -> Self {
        RunsBuilder {
            segments: Vec::new(),
            literal: Vec::new(),
        }
    }

    fn flush(&mut self) {
        if !self.literal.is_empty() {
            self.segments.push(Segment {
                pattern: std::mem::take(&mut self.literal),
                repeat: 1,
            });
        }
    }

    pub fn push(&mut self, value: T) {
        self.literal.push(value);
        if self.literal.len() >= 1024 {
            self.flush();
        }
    }

    pub fn push_repeat(&mut self, value: T, count: u128) {
        if count == 0 {
            return;
        }
        if count <= 4 {
            for _ in 0..count {
                self.push(value.clone());
            }
        } else {
            self.flush();
            self.segments.push(Segment {
                pattern: vec![value],
                repeat: count,
            });
        }
    }

    pub fn push_pattern(&mut self, pattern: Vec<T>, count: u128) {
        if count == 0 || pattern.is_empty() {
            return;
        }
        if count == 1 {
            for v in pattern {
                self.push(v);
            }
        } else {
            self.flush();
            self.segments.push(Segment {
                pattern,
                repeat: count,
            });
        }
    }

    pub fn finish(mut self) -> Runs<T> {
        self.flush();
        Runs::from_segments(self.segments)
    }
}

impl<T: fmt::Display> Runs<T> {
    /// Space-separated text form. Expanded sequences print every entry;
    /// compressed ones print `v*k` and `[a b c]*k` groups.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.is_expanded() {
            parts.extend(self.iter().map(ToString::to_string));
        } else {
            for s in &self.segments {
                let body = if s.pattern.len() == 1 {
                    s.pattern[0].to_string()
                } else {
                    let inner: Vec<String> = s.pattern.iter().map(ToString::to_string).collect();
                    format!("[{}]", inner.join(" "))
                };
                if s.repeat == 1 {
                    parts.push(body);
                } else {
                    parts.push(format!("{body}*{}", s.repeat));
                }
            }
        }
        parts.join(" ")
    }
}

/// Parses the text form written by [`Runs::to_text`]. Tokens are given with
/// their column numbers so errors can point at them; the error is
/// `(column, message)`.
pub fn parse_runs<T, F>(tokens: &[(usize, &str)], mut elem: F) -> Result<Runs<T>, (usize, String)>
where
    T: Clone + PartialEq,
    F: FnMut(&str) -> Option<T>,
{
    let mut b = RunsBuilder::new();
    let mut group: Option<(usize, Vec<T>)> = None;

    let parse_repeat = |col: usize, s: &str| -> Result<u128, (usize, String)> {
        match s.strip_prefix('*') {
            None if s.is_empty() => Ok(1),
            Some(k) => k
                .parse::<u128>()
                .ok()
                .filter(|&k| k > 0)
                .ok_or((col, format!("bad repeat count `{s}`"))),
            None => Err((col, format!("unexpected `{s}`"))),
        }
    };

    for &(col, tok) in tokens {
        let mut rest = tok;
        if let Some(r) = rest.strip_prefix('[') {
            if group.is_some() {
                return Err((col, "nested group".into()));
            }
            group = Some((col, Vec::new()));
            rest = r;
        }
        if let Some((_, pat)) = group.as_mut() {
            if let Some(close) = rest.find(']') {
                let (inner, suffix) = (&rest[..close], &rest[close + 1..]);
                if !inner.is_empty() {
                    pat.push(elem(inner).ok_or((col, format!("bad entry `{inner}`")))?);
                }
                let repeat = parse_repeat(col, suffix)?;
                let (_, pat) = group.take().unwrap();
                if pat.is_empty() {
                    return Err((col, "empty group".into()));
                }
                b.push_pattern(pat, repeat);
            } else if !rest.is_empty() {
                pat.push(elem(rest).ok_or((col, format!("bad entry `{rest}`")))?);
            }
            continue;
        }
        let (body, suffix) = match rest.find('*') {
            Some(p) => (&rest[..p], &rest[p..]),
            None => (rest, ""),
        };
        let v = elem(body).ok_or((col, format!("bad entry `{body}`")))?;
        let repeat = parse_repeat(col, suffix)?;
        b.push_repeat(v, repeat);
    }
    if let Some((col, _)) = group {
        return Err((col, "unterminated group".into()));
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<(usize, &str)> {
        s.split_whitespace().map(|t| (1, t)).collect()
    }

    #[test]
    fn short_sequences_are_expanded() {
        let mut b = RunsBuilder::new();
        b.push_repeat(3u32, 10);
        b.push_pattern(vec![1, 2], 3);
        let r = b.finish();
        assert!(r.is_expanded());
        assert_eq!(
            r.to_vec().unwrap(),
            vec![3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 1, 2, 1, 2, 1, 2]
        );
        assert_eq!(r, Runs::from_vec(r.to_vec().unwrap()));
    }

    #[test]
    fn long_sequences_index_without_expanding() {
        let mut b = RunsBuilder::new();
        b.push(7u32);
        b.push_pattern(vec![0, 5], 1u128 << 70);
        b.push(9);
        let r = b.finish();
        assert_eq!(r.len(), 2 + (1u128 << 71));
        assert_eq!(r.get(0), Some(&7));
        assert_eq!(r.get(1), Some(&0));
        assert_eq!(r.get(2), Some(&5));
        assert_eq!(r.get(1 << 40), Some(&5));
        assert_eq!(r.get(r.len() - 1), Some(&9));
        assert_eq!(r.get(r.len()), None);
        assert!(r.to_vec().is_none());
    }

    #[test]
    fn text_round_trip_compressed() {
        let mut b = RunsBuilder::new();
        b.push_repeat(4u64, 1 << 20);
        b.push_pattern(vec![1, 2, 3], 1 << 30);
        let r = b.finish();
        let text = r.to_text();
        assert_eq!(text, "4*1048576 [1 2 3]*1073741824");
        let back = parse_runs(&toks(&text), |s| s.parse::<u64>().ok()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn constant_runs_merge() {
        let r = Runs::from_vec(vec![0u8, 0, 1, 1, 1, 0]);
        assert_eq!(r.constant_runs(), vec![(0, 2), (1, 3), (0, 1)]);
    }

    #[test]
    fn parse_errors() {
        let p = |s: &str| parse_runs(&toks(s), |t| t.parse::<u8>().ok());
        assert!(p("1 2 x").is_err());
        assert!(p("[1 2").is_err());
        assert!(p("1*0").is_err());
        assert!(p("[]*2").is_err());
        assert_eq!(
            p("[1 2]*2 3").unwrap().to_vec().unwrap(),
            vec![1, 2, 1, 2, 3]
        );
    }
}
