//! Numerical 4DM to Numerical 3DM.
//!
//! Writing numbers as `hi·B + lo` with `B = t`, every pair `(w_i, x_j)` gets
//! a pair-sum element in each of the first and third sets. A matching triple
//! either consumes `w_i, x_j` and the pair's closer `u`, or consumes the
//! pair's opener `ū` together with some `y`, `z`, or is a filler triple
//! `(ū, C, u)` for pairs that are not used. The low digits are offset so
//! that openers are `2 mod 4` and `w` numbers are `1 mod 4`, which keeps the
//! first set duplicate-free.
//!
//! The construction needs `W ∪ (W + X)` to be a set. The coordinate pair
//! playing the roles of `W` and `X` is chosen automatically as the first
//! ordered pair of input sets with that property; the chosen order is kept
//! so solutions can be mapped back.

use std::collections::HashMap;
use std::fmt::Write;

use super::{
    in_window, require_consistent, require_valid_instance, require_valid_solution, Reduction, Stage,
};
use crate::error::{Error, Result};
use crate::instances::{Int, NumericalMatchingInstance, NumericalMatchingSolution};

/// Where a number of the three-set instance comes from. Indices are 0-based
/// positions in the permuted source sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum N3Element {
    W { i: usize },
    Opener { i: usize, j: usize },
    X { j: usize },
    Z { l: usize },
    Filler,
    Closer { i: usize, j: usize },
    Y { k: usize },
}

#[derive(Clone, Debug)]
pub struct N4dmToN3dm {
    source: NumericalMatchingInstance,
    target: NumericalMatchingInstance,
    /// Source coordinates playing the roles `W, X, Y, Z`.
    roles: [usize; 4],
    base: Int,
    origin: [Vec<N3Element>; 3],
    first_kind: HashMap<Int, N3Element>,
    third_kind: HashMap<Int, N3Element>,
}

impl N4dmToN3dm {
    /// Source coordinates used as `W, X, Y, Z`.
    pub fn roles(&self) -> [usize; 4] {
        self.roles
    }

    pub fn origin(&self) -> &[Vec<N3Element>; 3] {
        &self.origin
    }

    fn role(&self, r: usize) -> &[Int] {
        &self.source.sets[self.roles[r]]
    }

    fn enc(&self, hi: Int, lo: Int) -> Result<Int> {
        hi.checked_mul(self.base)
            .and_then(|v| v.checked_add(lo))
            .ok_or(Error::Overflow("n4dm-n3dm number"))
    }

    fn value(&self, e: N3Element) -> Result<Int> {
        let (w, x, y, z) = (self.role(0), self.role(1), self.role(2), self.role(3));
        let ov = Error::Overflow("n4dm-n3dm number");
        match e {
            N3Element::W { i } => self.enc(21, 4 * w[i] + 1),
            N3Element::X { j } => self.enc(19, 4 * x[j] + 1),
            N3Element::Y { k } => self.enc(19, 4 * y[k] + 1),
            N3Element::Z { l } => self.enc(21, 4 * z[l] + 1),
            N3Element::Opener { i, j } => self.enc(20, 4 * (w[i] + x[j]) + 2),
            N3Element::Closer { i, j } => self.enc(24, 2)?.checked_sub(4 * (w[i] + x[j])).ok_or(ov),
            N3Element::Filler => self.enc(20, 0),
        }
    }
}

pub fn reduce_n4dm_to_n3dm(inst: &NumericalMatchingInstance) -> Result<N4dmToN3dm> {
    require_valid_instance(inst.validate())?;
    if inst.arity() != 4 {
        return Err(Error::Precondition(format!(
            "expected 4 sets, got {}",
            inst.arity()
        )));
    }
    if !in_window(inst) {
        return Err(Error::Precondition(
            "elements must lie strictly between t/5 and t/3".into(),
        ));
    }
    let mut last = None;
    for (a, b) in (0..4).flat_map(|a| (0..4).map(move |b| (a, b))) {
        if a == b || !inst.union_with_sums_is_set(a, b) {
            continue;
        }
        let mut rest = (0..4).filter(|&c| c != a && c != b);
        let roles = [a, b, rest.next().unwrap(), rest.next().unwrap()];
        match build(inst, roles) {
            Ok(r) => return Ok(r),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| {
        Error::Precondition("no pair of sets S, T has S ∪ (S + T) duplicate-free".into())
    }))
}

fn build(inst: &NumericalMatchingInstance, roles: [usize; 4]) -> Result<N4dmToN3dm> {
    let n = inst.size();
    let mut origin: [Vec<N3Element>; 3] = Default::default();
    origin[0].extend((0..n).map(|i| N3Element::W { i }));
    origin[1].extend((0..n).map(|j| N3Element::X { j }));
    origin[1].extend((0..n).map(|l| N3Element::Z { l }));
    origin[1].extend((0..n * n - n).map(|_| N3Element::Filler));
    for i in 0..n {
        for j in 0..n {
            origin[0].push(N3Element::Opener { i, j });
            origin[2].push(N3Element::Closer { i, j });
        }
    }
    origin[2].extend((0..n).map(|k| N3Element::Y { k }));

    let mut r = N4dmToN3dm {
        source: inst.clone(),
        target: NumericalMatchingInstance::new(Vec::new(), 0),
        roles,
        base: inst.target,
        origin,
        first_kind: HashMap::new(),
        third_kind: HashMap::new(),
    };
    let mut sets = Vec::with_capacity(3);
    for s in 0..3 {
        sets.push(
            r.origin[s]
                .iter()
                .map(|&e| r.value(e))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    for (v, &e) in sets[0].iter().zip(&r.origin[0]) {
        r.first_kind.insert(*v, e);
    }
    for (v, &e) in sets[2].iter().zip(&r.origin[2]) {
        r.third_kind.insert(*v, e);
    }
    let target = r.enc(64, 4)?;
    r.target = NumericalMatchingInstance::new(sets, target);
    require_consistent(r.target.validate(), "n4dm-n3dm construction")?;
    if !r.target.is_set(0) {
        return Err(Error::Precondition(
            "first constructed set has duplicates under every usable role order".into(),
        ));
    }
    Ok(r)
}

impl Reduction for N4dmToN3dm {
    type Source = NumericalMatchingInstance;
    type Target = NumericalMatchingInstance;
    type SourceSolution = NumericalMatchingSolution;
    type TargetSolution = NumericalMatchingSolution;

    const STAGE: Stage = Stage::N4dmToN3dm;

    fn source(&self) -> &NumericalMatchingInstance {
        &self.source
    }

    fn target(&self) -> &NumericalMatchingInstance {
        &self.target
    }

    fn lift(&self, s: &NumericalMatchingSolution) -> Result<NumericalMatchingSolution> {
        require_valid_solution(self.source.check_solution(s))?;
        let index = |role: usize| -> HashMap<Int, usize> {
            self.role(role)
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i))
                .collect()
        };
        let (w_index, x_index) = (index(0), index(1));
        let n = self.source.size();
        let mut used = vec![vec![false; n]; n];
        let mut triples = Vec::new();
        for q in s.tuples() {
            let [w, x, y, z] = self.roles.map(|c| q[c]);
            let (i, j) = (w_index[&w], x_index[&x]);
            used[i][j] = true;
            let ys = self.enc(19, 4 * y + 1)?;
            let zs = self.enc(21, 4 * z + 1)?;
            triples.push(vec![self.value(N3Element::Opener { i, j })?, zs, ys]);
            triples.push(vec![
                self.value(N3Element::W { i })?,
                self.value(N3Element::X { j })?,
                self.value(N3Element::Closer { i, j })?,
            ]);
        }
        let filler = self.value(N3Element::Filler)?;
        for (i, row) in used.iter().enumerate() {
            for (j, &u) in row.iter().enumerate() {
                if !u {
                    triples.push(vec![
                        self.value(N3Element::Opener { i, j })?,
                        filler,
                        self.value(N3Element::Closer { i, j })?,
                    ]);
                }
            }
        }
        let out = NumericalMatchingSolution::new(triples);
        require_consistent(self.target.check_solution(&out), "lift")?;
        Ok(out)
    }

    fn project(&self, s: &NumericalMatchingSolution) -> Result<NumericalMatchingSolution> {
        require_valid_solution(self.target.check_solution(s))?;
        let b = self.base;
        let mut tuples = Vec::new();
        for t in s.tuples() {
            let opener = self.first_kind.get(&t[0]);
            let closes_with_y = matches!(self.third_kind.get(&t[2]), Some(N3Element::Y { .. }));
            if let (Some(&N3Element::Opener { i, j }), true) = (opener, closes_with_y) {
                let z = (t[1] - 21 * b - 1) / 4;
                let y = (t[2] - 19 * b - 1) / 4;
                let vals = [self.role(0)[i], self.role(1)[j], y, z];
                let mut q = vec![0; 4];
                for (r, &c) in self.roles.iter().enumerate() {
                    q[c] = vals[r];
                }
                tuples.push(q);
            }
        }
        let out = NumericalMatchingSolution::new(tuples);
        require_consistent(self.source.check_solution(&out), "project")?;
        Ok(out)
    }

    fn trace(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "base {}", self.base);
        let _ = writeln!(
            out,
            "roles {} {} {} {}",
            self.roles[0] + 1,
            self.roles[1] + 1,
            self.roles[2] + 1,
            self.roles[3] + 1
        );
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
    use crate::oracles::{count_nkdm, enumerate_nkdm, OracleCaps};

    fn micro() -> NumericalMatchingInstance {
        NumericalMatchingInstance::new(vec![vec![1], vec![1], vec![1], vec![1]], 4)
    }

    #[test]
    fn micro_instance_numbers() {
        let r = reduce_n4dm_to_n3dm(&micro()).unwrap();
        let mut sets = r.target().sets.clone();
        for s in &mut sets {
            s.sort_unstable();
        }
        assert_eq!(sets, vec![vec![89, 90], vec![81, 89], vec![81, 90]]);
        assert_eq!(r.target().target, 260);
        assert_eq!(r.roles(), [0, 1, 2, 3]);
    }

    #[test]
    fn micro_round_trip() {
        let caps = OracleCaps::default();
        let r = reduce_n4dm_to_n3dm(&micro()).unwrap();
        assert_eq!(count_nkdm(r.target(), &caps).unwrap(), 1u64);
        let s = NumericalMatchingSolution::new(vec![vec![1, 1, 1, 1]]);
        let lifted = r.lift(&s).unwrap();
        assert_eq!(
            lifted,
            NumericalMatchingSolution::new(vec![vec![90, 89, 81], vec![89, 81, 90]])
        );
        assert_eq!(r.project(&lifted).unwrap(), s);
    }

    #[test]
    fn first_set_keeps_residues_apart() {
        let inst = NumericalMatchingInstance::new(
            vec![vec![11, 12], vec![13, 15], vec![12, 11], vec![14, 12]],
            50,
        );
        let r = reduce_n4dm_to_n3dm(&inst).unwrap();
        let b = 50;
        for (v, k) in r.target().sets[0].iter().zip(&r.origin()[0]) {
            let lo = match k {
                N3Element::W { .. } => v - 21 * b,
                N3Element::Opener { .. } => v - 20 * b,
                _ => unreachable!(),
            };
            let want = if matches!(k, N3Element::W { .. }) {
                1
            } else {
                2
            };
            assert_eq!(lo % 4, want);
        }
        let caps = OracleCaps::default();
        assert_eq!(
            count_nkdm(&inst, &caps).unwrap(),
            count_nkdm(r.target(), &caps).unwrap()
        );
        for s in enumerate_nkdm(&inst, &caps).unwrap() {
            assert_eq!(r.project(&r.lift(&s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn picks_another_pair_when_first_fails() {
        // W + X collides (11+14 = 12+13), but the second and third sets work.
        let inst = NumericalMatchingInstance::new(
            vec![vec![11, 12], vec![13, 14], vec![11, 15], vec![15, 11]],
            50,
        );
        assert!(!inst.union_with_sums_is_set(0, 1));
        let r = reduce_n4dm_to_n3dm(&inst).unwrap();
        assert_ne!(&r.roles()[..2], &[0, 1]);
        assert!(inst.union_with_sums_is_set(r.roles()[0], r.roles()[1]));
    }

    #[test]
    fn rejects_out_of_window() {
        let inst = NumericalMatchingInstance::new(vec![vec![1], vec![1], vec![1], vec![7]], 10);
        assert!(matches!(
            reduce_n4dm_to_n3dm(&inst),
            Err(Error::Precondition(_))
        ));
    }
}
