//! Seeded generators that build instances satisfying each stage's
//! preconditions directly. Where it is cheap, a solution is planted so the
//! generated instances are not trivially unsolvable.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Instance;
use crate::error::{Error, Result};
use crate::instances::{
    Cell, Cnf1in3, Door, Int, Label, LengthOffsetsInstance, NumericalMatchingInstance, PathPuzzle,
    Side, Tripartite3dm,
};
use crate::runs::Runs;

/// What to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenSpec {
    /// Every variable occurs; a 1-in-3 assignment is planted.
    OneInThree { variables: usize, clauses: usize },
    /// Pairwise sparse, every element covered; a perfect matching is planted.
    Tdm {
        part_size: usize,
        extra_triples: usize,
    },
    /// Four sets strictly inside `(t/5, t/3)` with `W ∪ (W + X)` a set.
    N4dm { size: usize },
    /// Three sets strictly inside `(t/4, t/2)` with the first set duplicate-free.
    N3dm { size: usize, target: Int },
    /// Distinct lengths with planted offsets.
    Lo { intervals: usize, horizon: Int },
    /// Labels read off a random door-to-door path, about a third left blank.
    Pp { rows: Int, cols: Int },
}

fn refuse(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub fn gen_instance(spec: GenSpec, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match spec {
        GenSpec::OneInThree { variables, clauses } => {
            Instance::OneInThree(gen_1in3(&mut rng, variables, clauses)?)
        }
        GenSpec::Tdm {
            part_size,
            extra_triples,
        } => Instance::Tdm(gen_3dm(&mut rng, part_size, extra_triples)?),
        GenSpec::N4dm { size } => Instance::Numerical(gen_n4dm(&mut rng, size)?),
        GenSpec::N3dm { size, target } => Instance::Numerical(gen_n3dm(&mut rng, size, target)?),
        GenSpec::Lo { intervals, horizon } => Instance::Lo(gen_lo(&mut rng, intervals, horizon)?),
        GenSpec::Pp { rows, cols } => Instance::Pp(gen_pp(&mut rng, rows, cols)?),
    })
}

fn gen_1in3(rng: &mut ChaCha8Rng, v: usize, c: usize) -> Result<Cnf1in3> {
    if v < 3 || c == 0 || v > 3 * c {
        return Err(refuse(format!(
            "need 3 <= variables <= 3 * clauses, got {v} variables and {c} clauses"
        )));
    }
    let lo = 1.max(v.saturating_sub(2 * c));
    let hi = c.min(v - 2);
    let k = rng.gen_range(lo..=hi);
    let mut vars: Vec<usize> = (1..=v).collect();
    vars.shuffle(rng);
    let (trues, falses) = vars.split_at(k);
    let mut clauses = Vec::with_capacity(c);
    for i in 0..c {
        let t = trues
            .get(i)
            .copied()
            .unwrap_or_else(|| *trues.choose(rng).unwrap());
        let f1 = falses.get(2 * i).copied();
        let f2 = falses.get(2 * i + 1).copied();
        let (f1, f2) = match (f1, f2) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => {
                let others: Vec<usize> = falses.iter().copied().filter(|&f| f != a).collect();
                (a, *others.choose(rng).unwrap())
            }
            _ => {
                let two: Vec<usize> = falses.choose_multiple(rng, 2).copied().collect();
                (two[0], two[1])
            }
        };
        let mut clause = [t, f1, f2];
        clause.shuffle(rng);
        clauses.push(clause);
    }
    Ok(Cnf1in3::new(v, clauses))
}

fn gen_3dm(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Result<Tripartite3dm> {
    if n == 0 || extra > n * n - n {
        return Err(refuse(format!(
            "a sparse instance on {n} elements holds at most {} triples",
            n * n
        )));
    }
    let mut ys: Vec<usize> = (1..=n).collect();
    let mut zs: Vec<usize> = (1..=n).collect();
    ys.shuffle(rng);
    zs.shuffle(rng);
    let mut triples: Vec<[usize; 3]> = (0..n).map(|i| [i + 1, ys[i], zs[i]]).collect();
    let mut pairs: [HashSet<(usize, usize)>; 3] = Default::default();
    let key = |t: &[usize; 3]| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
    for t in &triples {
        for (p, k) in pairs.iter_mut().zip(key(t)) {
            p.insert(k);
        }
    }
    let mut candidates: Vec<[usize; 3]> = (1..=n)
        .flat_map(|x| (1..=n).flat_map(move |y| (1..=n).map(move |z| [x, y, z])))
        .collect();
    candidates.shuffle(rng);
    let mut added = 0;
    for c in candidates {
        if added == extra {
            break;
        }
        let k = key(&c);
        if pairs.iter().zip(k).all(|(p, k)| !p.contains(&k)) {
            for (p, k) in pairs.iter_mut().zip(k) {
                p.insert(k);
            }
            triples.push(c);
            added += 1;
        }
    }
    if added < extra {
        return Err(refuse(format!(
            "only {added} of {extra} extra triples fit without breaking sparsity"
        )));
    }
    triples.shuffle(rng);
    Ok(Tripartite3dm::new(n, triples))
}

/// Splits `r` into two numbers in `[lo, hi]`, uniformly over the first.
fn split(rng: &mut ChaCha8Rng, r: Int, lo: Int, hi: Int) -> Result<(Int, Int)> {
    let a = lo.max(r.saturating_sub(hi));
    let b = hi.min(r.saturating_sub(lo));
    if a > b {
        return Err(Error::Construction(format!(
            "cannot split {r} inside [{lo}, {hi}]"
        )));
    }
    let y = rng.gen_range(a..=b);
    Ok((y, r - y))
}

fn gen_n4dm(rng: &mut ChaCha8Rng, n: usize) -> Result<NumericalMatchingInstance> {
    if n == 0 {
        return Err(refuse("size must be positive"));
    }
    let nn = n as Int;
    let t = 10 * (nn * nn + nn + 5) + 2 * rng.gen_range(0..5);
    let lo = t / 5 + 1;
    let hi = (t - 1) / 3;
    // Keeping both w and x at most `cap` leaves room for y + z.
    let cap = (t - 2 * lo) / 2;
    let slack_w = cap - lo - (nn - 1) * nn;
    let slack_x = cap - lo - (nn - 1);
    let c0 = rng.gen_range(0..=slack_w);
    let c1 = rng.gen_range(0..=slack_x);
    let w: Vec<Int> = (0..nn).map(|i| lo + c0 + i * nn).collect();
    let mut x: Vec<Int> = (0..nn).map(|j| lo + c1 + j).collect();
    x.shuffle(rng);
    let mut sets = vec![w, x, Vec::new(), Vec::new()];
    for i in 0..n {
        let (y, z) = split(rng, t - sets[0][i] - sets[1][i], lo, hi)?;
        sets[2].push(y);
        sets[3].push(z);
    }
    for s in &mut sets {
        s.shuffle(rng);
    }
    Ok(NumericalMatchingInstance::new(sets, t))
}

fn gen_n3dm(rng: &mut ChaCha8Rng, n: usize, t: Int) -> Result<NumericalMatchingInstance> {
    let lo = t / 4 + 1;
    let hi = t.saturating_sub(1) / 2;
    let xcap = hi.min(t.saturating_sub(2 * lo));
    if n == 0 || xcap < lo || xcap - lo + 1 < n as Int {
        return Err(refuse(format!(
            "target {t} leaves room for fewer than {n} distinct first-set values"
        )));
    }
    let pool: Vec<Int> = (lo..=xcap).collect();
    let x: Vec<Int> = pool.choose_multiple(rng, n).copied().collect();
    let mut sets = vec![x, Vec::new(), Vec::new()];
    for i in 0..n {
        let (y, z) = split(rng, t - sets[0][i], lo, hi)?;
        sets[1].push(y);
        sets[2].push(z);
    }
    for s in &mut sets {
        s.shuffle(rng);
    }
    Ok(NumericalMatchingInstance::new(sets, t))
}

fn gen_lo(rng: &mut ChaCha8Rng, n: usize, m: Int) -> Result<LengthOffsetsInstance> {
    if n == 0 || n as Int > m || m > 1 << 20 {
        return Err(refuse(format!(
            "need 1 <= intervals <= horizon <= 2^20, got {n} and {m}"
        )));
    }
    let lengths: Vec<Int> = (1..=m)
        .collect::<Vec<_>>()
        .choose_multiple(rng, n)
        .copied()
        .collect();
    let mut diff = vec![0i64; m as usize + 1];
    for &a in &lengths {
        let b = rng.gen_range(0..=m - a) as usize;
        diff[b] += 1;
        diff[b + a as usize] -= 1;
    }
    let mut acc = 0i64;
    let densities = diff[..m as usize]
        .iter()
        .map(|d| {
            acc += d;
            acc as usize
        })
        .collect();
    Ok(LengthOffsetsInstance::new(lengths, densities))
}

fn gen_pp(rng: &mut ChaCha8Rng, rows: Int, cols: Int) -> Result<PathPuzzle> {
    if rows == 0 || cols == 0 || rows * cols > 4096 {
        return Err(refuse("puzzle generator needs 1..=4096 cells"));
    }
    let (r, c) = (rows as usize, cols as usize);
    let start = (rng.gen_range(0..r), 0usize);
    let end = (rng.gen_range(0..r), c - 1);
    // Randomised depth-first search; the stack is a simple path.
    let mut seen = vec![false; r * c];
    let mut stack = vec![start];
    seen[start.0 * c + start.1] = true;
    while let Some(&(y, x)) = stack.last() {
        if (y, x) == end {
            break;
        }
        let mut next: Vec<(usize, usize)> = [(0i64, 1i64), (1, 0), (0, -1), (-1, 0)]
            .iter()
            .filter_map(|&(dy, dx)| {
                let ny = y as i64 + dy;
                let nx = x as i64 + dx;
                (ny >= 0 && nx >= 0 && (ny as usize) < r && (nx as usize) < c)
                    .then_some((ny as usize, nx as usize))
            })
            .filter(|&(ny, nx)| !seen[ny * c + nx])
            .collect();
        next.shuffle(rng);
        match next.first() {
            Some(&(ny, nx)) => {
                seen[ny * c + nx] = true;
                stack.push((ny, nx));
            }
            None => {
                stack.pop();
            }
        }
    }
    let path: Vec<Cell> = stack
        .iter()
        .map(|&(y, x)| Cell::new(y as Int + 1, x as Int + 1))
        .collect();
    let mut row_count = vec![0 as Int; r];
    let mut col_count = vec![0 as Int; c];
    for cell in &path {
        row_count[cell.row as usize - 1] += 1;
        col_count[cell.col as usize - 1] += 1;
    }
    let mut label = |v: Int| {
        if rng.gen_range(0..3) == 0 {
            Label::Blank
        } else {
            Label::Count(v)
        }
    };
    let row_labels = Runs::from_vec(row_count.into_iter().map(&mut label).collect());
    let col_labels = Runs::from_vec(col_count.into_iter().map(&mut label).collect());
    let first = path[0];
    let last = *path.last().unwrap();
    Ok(PathPuzzle {
        rows,
        cols,
        doors: [
            Door::new(first.row, first.col, Side::Left),
            Door::new(last.row, last.col, Side::Right),
        ],
        row_labels,
        col_labels,
    })
}
