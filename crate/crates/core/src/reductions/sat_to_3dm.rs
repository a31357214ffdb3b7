//! Positive 1-in-3-SAT to tripartite 3DM.
//!
//! Every variable `x` gets a ring of `2 n_x` auxiliary vertices, where `n_x`
//! is its occurrence count in three copies of the formula. Positive and
//! negative edges alternate around the ring so a matching must take all
//! positive edges or all negative ones. Negative vertices left free by a
//! true variable are mopped up by garbage edges. Each clause copy merges one
//! positive vertex from each of its three variables into a single clause
//! vertex, so exactly one literal can claim it.

use std::collections::HashSet;
use std::fmt::Write;

use super::{require_consistent, require_valid_instance, require_valid_solution, Reduction, Stage};
use crate::error::{Error, Result};
use crate::instances::{Assignment, Cnf1in3, ThreeDmSolution, Tripartite3dm};

/// What a vertex of the 3DM instance stands for. Variables are 1-based,
/// ring positions 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Negative {
        var: usize,
        index: usize,
    },
    Auxiliary {
        var: usize,
        index: usize,
    },
    /// Copy `copy` (also its colour) of clause `clause` (1-based).
    Clause {
        clause: usize,
        copy: usize,
    },
}

/// What a triple of the 3DM instance stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Positive { var: usize, index: usize },
    Negative { var: usize, index: usize },
    Garbage { var: usize, index: usize },
}

#[derive(Clone, Debug)]
pub struct SatTo3dm {
    source: Cnf1in3,
    target: Tripartite3dm,
    /// `vertices[c][i]` is element `i + 1` of part `c`.
    vertices: [Vec<VertexKind>; 3],
    /// `edges[k]` describes `target.triples[k]`.
    edges: Vec<EdgeKind>,
    /// Triple index of each variable's positive edge 0.
    first_positive: Vec<usize>,
}

impl SatTo3dm {
    pub fn vertices(&self) -> &[Vec<VertexKind>; 3] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeKind] {
        &self.edges
    }
}

fn positive_colour(i: usize) -> usize {
    (2 * i + 2) % 3
}

fn negative_colour(i: usize) -> usize {
    (2 * i) % 3
}

#[allow(clippy::needless_range_loop)]
pub fn reduce_sat_to_3dm(f: &Cnf1in3) -> Result<SatTo3dm> {
    require_valid_instance(f.validate())?;
    if f.clauses.is_empty() {
        return Err(Error::EmptyFormula);
    }
    let occ = f.occurrences();
    let unused: Vec<String> = occ
        .iter()
        .enumerate()
        .filter(|(_, &o)| o == 0)
        .map(|(v, _)| (v + 1).to_string())
        .collect();
    if !unused.is_empty() {
        return Err(Error::Precondition(format!(
            "variables {} occur in no clause",
            unused.join(", ")
        )));
    }

    let mut vertices: [Vec<VertexKind>; 3] = Default::default();
    let add = |colour: usize, kind: VertexKind, vs: &mut [Vec<VertexKind>; 3]| {
        vs[colour].push(kind);
        vs[colour].len()
    };

    // Per variable: ids (colour, 1-based index) of negatives and auxiliaries.
    let mut negative_ids = Vec::with_capacity(f.variable_count);
    let mut aux_ids = Vec::with_capacity(f.variable_count);
    for var in 1..=f.variable_count {
        let nx = 3 * occ[var - 1];
        let neg: Vec<usize> = (0..nx)
            .map(|i| {
                add(
                    negative_colour(i),
                    VertexKind::Negative { var, index: i },
                    &mut vertices,
                )
            })
            .collect();
        let aux: Vec<usize> = (0..2 * nx)
            .map(|d| {
                add(
                    d % 3,
                    VertexKind::Auxiliary { var, index: d },
                    &mut vertices,
                )
            })
            .collect();
        negative_ids.push(neg);
        aux_ids.push(aux);
    }

    // Positive vertex i of variable x is merged into a clause vertex; the
    // pool for colour c hands out positive indices of that colour in order.
    let mut positive_ids: Vec<Vec<usize>> = occ.iter().map(|&o| vec![0; 3 * o]).collect();
    let mut pools: Vec<[std::vec::IntoIter<usize>; 3]> = occ
        .iter()
        .map(|&o| {
            let nx = 3 * o;
            [0, 1, 2].map(|c| {
                (0..nx)
                    .filter(|&i| positive_colour(i) == c)
                    .collect::<Vec<_>>()
                    .into_iter()
            })
        })
        .collect();
    for copy in 0..3 {
        for (k, clause) in f.clauses.iter().enumerate() {
            let id = add(
                copy,
                VertexKind::Clause {
                    clause: k + 1,
                    copy,
                },
                &mut vertices,
            );
            for &var in clause {
                let i = pools[var - 1][copy].next().ok_or_else(|| {
                    Error::Construction(format!("pool of variable {var} ran dry"))
                })?;
                positive_ids[var - 1][i] = id;
            }
        }
    }

    let part_size = vertices[0].len();
    if vertices.iter().any(|v| v.len() != part_size) {
        return Err(Error::Construction("colour classes differ in size".into()));
    }

    let mut triples = Vec::new();
    let mut edges = Vec::new();
    let mut first_positive = Vec::with_capacity(f.variable_count);
    let mut push = |members: [(usize, usize); 3], kind: EdgeKind| {
        let mut t = [0usize; 3];
        for (colour, id) in members {
            t[colour] = id;
        }
        triples.push(t);
        edges.push(kind);
        triples.len() - 1
    };
    for var in 1..=f.variable_count {
        let nx = 3 * occ[var - 1];
        let aux = |d: usize| (d % 3, aux_ids[var - 1][d]);
        for i in 0..nx {
            let p = (positive_colour(i), positive_ids[var - 1][i]);
            let k = push(
                [p, aux(2 * i), aux(2 * i + 1)],
                EdgeKind::Positive { var, index: i },
            );
            if i == 0 {
                first_positive.push(k);
            }
        }
        for i in 0..nx {
            let q = (negative_colour(i), negative_ids[var - 1][i]);
            push(
                [q, aux(2 * i + 1), aux((2 * i + 2) % (2 * nx))],
                EdgeKind::Negative { var, index: i },
            );
        }
        for i in 0..nx / 3 {
            let neg = |j: usize| (negative_colour(j), negative_ids[var - 1][j]);
            push(
                [neg(3 * i), neg(3 * i + 1), neg(3 * i + 2)],
                EdgeKind::Garbage { var, index: i },
            );
        }
    }

    let target = Tripartite3dm::new(part_size, triples);
    let problems = target.validate();
    if !problems.is_empty() || !target.is_pairwise_sparse() {
        return Err(Error::Construction(format!(
            "constructed 3DM instance is malformed or not sparse: {problems:?}"
        )));
    }
    Ok(SatTo3dm {
        source: f.clone(),
        target,
        vertices,
        edges,
        first_positive,
    })
}

impl Reduction for SatTo3dm {
    type Source = Cnf1in3;
    type Target = Tripartite3dm;
    type SourceSolution = Assignment;
    type TargetSolution = ThreeDmSolution;

    const STAGE: Stage = Stage::SatTo3dm;

    fn source(&self) -> &Cnf1in3 {
        &self.source
    }

    fn target(&self) -> &Tripartite3dm {
        &self.target
    }

    fn lift(&self, a: &Assignment) -> Result<ThreeDmSolution> {
        require_valid_solution(self.source.check_solution(a))?;
        let chosen = self
            .edges
            .iter()
            .zip(&self.target.triples)
            .filter(|(e, _)| match **e {
                EdgeKind::Positive { var, .. } | EdgeKind::Garbage { var, .. } => a.values[var - 1],
                EdgeKind::Negative { var, .. } => !a.values[var - 1],
            })
            .map(|(_, t)| *t)
            .collect();
        let s = ThreeDmSolution::new(chosen);
        require_consistent(self.target.check_solution(&s), "lift")?;
        Ok(s)
    }

    fn project(&self, s: &ThreeDmSolution) -> Result<Assignment> {
        require_valid_solution(self.target.check_solution(s))?;
        let chosen: HashSet<&[usize; 3]> = s.triples().iter().collect();
        let values = self
            .first_positive
            .iter()
            .map(|&k| chosen.contains(&self.target.triples[k]))
            .collect();
        let a = Assignment::new(values);
        require_consistent(self.source.check_solution(&a), "project")?;
        Ok(a)
    }

    fn trace(&self) -> String {
        let mut out = String::new();
        for (colour, vs) in self.vertices.iter().enumerate() {
            for (i, v) in vs.iter().enumerate() {
                let what = match v {
                    VertexKind::Negative { var, index } => format!("neg {var} {index}"),
                    VertexKind::Auxiliary { var, index } => format!("aux {var} {index}"),
                    VertexKind::Clause { clause, copy } => format!("clause {clause} {copy}"),
                };
                let _ = writeln!(out, "vertex {colour} {} {what}", i + 1);
            }
        }
        for (t, e) in self.target.triples.iter().zip(&self.edges) {
            let what = match e {
                EdgeKind::Positive { var, index } => format!("pos {var} {index}"),
                EdgeKind::Negative { var, index } => format!("neg {var} {index}"),
                EdgeKind::Garbage { var, index } => format!("garbage {var} {index}"),
            };
            let _ = writeln!(out, "triple {} {} {} {what}", t[0], t[1], t[2]);
        }
        out
    }
}

/// Variables whose positive vertices were merged into each clause vertex.
#[cfg(test)]
fn clause_members(r: &SatTo3dm) -> std::collections::HashMap<(usize, usize), Vec<usize>> {
    use std::collections::HashMap;

    let mut out: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (t, e) in r.target.triples.iter().zip(&r.edges) {
        if let EdgeKind::Positive { var, index } = *e {
            let colour = positive_colour(index);
            if let VertexKind::Clause { clause, copy } = r.vertices[colour][t[colour] - 1] {
                out.entry((clause, copy)).or_default().push(var);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{count_1in3, count_3dm, enumerate_1in3, OracleCaps};

    fn single() -> Cnf1in3 {
        Cnf1in3::new(3, vec![[1, 2, 3]])
    }

    #[test]
    fn single_clause_sizes() {
        let r = reduce_sat_to_3dm(&single()).unwrap();
        assert_eq!(r.target().part_size, 10);
        assert_eq!(r.target().triples.len(), 21);
        assert!(r.target().is_pairwise_sparse());
    }

    #[test]
    fn single_clause_is_parsimonious() {
        let caps = OracleCaps::default();
        let r = reduce_sat_to_3dm(&single()).unwrap();
        assert_eq!(count_1in3(&single(), &caps).unwrap(), 3u64);
        assert_eq!(count_3dm(r.target(), &caps).unwrap(), 3u64);
    }

    #[test]
    fn clause_vertices_take_one_literal_per_variable() {
        let f = Cnf1in3::new(4, vec![[1, 2, 3], [1, 2, 4]]);
        let r = reduce_sat_to_3dm(&f).unwrap();
        let members = clause_members(&r);
        assert_eq!(members.len(), 6);
        for ((clause, _), mut vars) in members {
            vars.sort_unstable();
            let mut want = f.clauses[clause - 1].to_vec();
            want.sort_unstable();
            assert_eq!(vars, want);
        }
    }

    #[test]
    fn lift_project_round_trip() {
        let f = Cnf1in3::new(4, vec![[1, 2, 3], [1, 2, 4]]);
        let r = reduce_sat_to_3dm(&f).unwrap();
        for a in enumerate_1in3(&f, &OracleCaps::default()).unwrap() {
            let m = r.lift(&a).unwrap();
            assert_eq!(r.project(&m).unwrap(), a);
        }
    }

    #[test]
    fn rejects_empty_and_unused() {
        assert!(matches!(
            reduce_sat_to_3dm(&Cnf1in3::new(2, vec![])),
            Err(Error::EmptyFormula)
        ));
        assert!(matches!(
            reduce_sat_to_3dm(&Cnf1in3::new(4, vec![[1, 2, 3]])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn repeated_literal_clause() {
        // (x1 ∨ x1 ∨ x2): only x1 = false, x2 = true works.
        let f = Cnf1in3::new(2, vec![[1, 1, 2]]);
        let caps = OracleCaps::default();
        let r = reduce_sat_to_3dm(&f).unwrap();
        assert_eq!(count_1in3(&f, &caps).unwrap(), 1u64);
        assert_eq!(count_3dm(r.target(), &caps).unwrap(), 1u64);
    }
}
