//! Shifting a numerical matching instance into the strict window
//! `t/(k+1) < v < t/(k-1)` expected by the next stage.
//!
//! Adding `c` to every element and `k c` to the target preserves solutions
//! one for one. With `c = 2t` (k = 4) or `c = t` (k = 3) and all elements
//! below `t`, the shifted elements land strictly inside the window.

use super::require_valid_instance;
use crate::error::{Error, Result};
use crate::instances::{Int, NumericalMatchingInstance, NumericalMatchingSolution};

/// Whether every element satisfies `t/(k+1) < v < t/(k-1)`.
pub fn in_window(inst: &NumericalMatchingInstance) -> bool {
    let k = inst.arity() as Int;
    if k < 2 {
        return false;
    }
    let t = inst.target;
    inst.sets.iter().flatten().all(|&v| {
        v.checked_mul(k + 1).is_none_or(|lhs| lhs > t)
            && v.checked_mul(k - 1).is_some_and(|lhs| lhs < t)
    })
}

/// An instance brought into the window together with the applied shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub instance: NumericalMatchingInstance,
    pub shift: Int,
}

impl Normalized {
    pub fn is_identity(&self) -> bool {
        self.shift == 0
    }

    /// Solution of the original instance to solution of the shifted one.
    pub fn lift(&self, s: &NumericalMatchingSolution) -> Result<NumericalMatchingSolution> {
        let tuples = s
            .tuples()
            .iter()
            .map(|t| {
                t.iter()
                    .map(|v| v.checked_add(self.shift).ok_or(Error::Overflow("shift")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NumericalMatchingSolution::new(tuples))
    }

    /// Solution of the shifted instance back to the original.
    pub fn project(&self, s: &NumericalMatchingSolution) -> Result<NumericalMatchingSolution> {
        let tuples = s
            .tuples()
            .iter()
            .map(|t| {
                t.iter()
                    .map(|v| {
                        v.checked_sub(self.shift)
                            .ok_or_else(|| Error::Construction(format!("{v} below shift")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NumericalMatchingSolution::new(tuples))
    }
}

/// Shifts `inst` into the window, or returns it unchanged when it already
/// conforms. Only arities 3 and 4 are supported.
pub fn normalize_nkdm(inst: &NumericalMatchingInstance) -> Result<Normalized> {
    require_valid_instance(inst.validate())?;
    let k = inst.arity();
    if k != 3 && k != 4 {
        return Err(Error::Precondition(format!(
            "normalization needs arity 3 or 4, got {k}"
        )));
    }
    if in_window(inst) {
        return Ok(Normalized {
            instance: inst.clone(),
            shift: 0,
        });
    }
    let t = inst.target;
    if let Some(&v) = inst.sets.iter().flatten().find(|&&v| v >= t) {
        return Err(Error::TriviallyUnsolvable(format!(
            "element {v} is not below the target {t}"
        )));
    }
    let (shift, target) = if k == 4 {
        (t.checked_mul(2), t.checked_mul(9))
    } else {
        (Some(t), t.checked_mul(4))
    };
    let shift = shift.ok_or(Error::Overflow("shift"))?;
    let target = target.ok_or(Error::Overflow("shifted target"))?;
    let sets = inst
        .sets
        .iter()
        .map(|s| {
            s.iter()
                .map(|v| {
                    v.checked_add(shift)
                        .ok_or(Error::Overflow("shifted element"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let out = NumericalMatchingInstance::new(sets, target);
    if !in_window(&out) {
        return Err(Error::Construction(
            "shifted instance misses the window".into(),
        ));
    }
    Ok(Normalized {
        instance: out,
        shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{count_nkdm, OracleCaps};

    #[test]
    fn conforming_instance_passes_through() {
        let inst = NumericalMatchingInstance::new(vec![vec![1], vec![1], vec![1], vec![1]], 4);
        let n = normalize_nkdm(&inst).unwrap();
        assert!(n.is_identity());
        assert_eq!(n.instance, inst);
    }

    #[test]
    fn shift_for_four_sets() {
        let inst =
            NumericalMatchingInstance::new(vec![vec![1, 2], vec![1, 3], vec![2, 1], vec![3, 1]], 7);
        assert!(!in_window(&inst));
        let n = normalize_nkdm(&inst).unwrap();
        assert_eq!(n.shift, 14);
        assert_eq!(n.instance.target, 63);
        assert!(in_window(&n.instance));
        let caps = OracleCaps::default();
        assert_eq!(
            count_nkdm(&inst, &caps).unwrap(),
            count_nkdm(&n.instance, &caps).unwrap()
        );
    }

    #[test]
    fn shift_for_three_sets() {
        let inst = NumericalMatchingInstance::new(vec![vec![1], vec![2], vec![3]], 6);
        let n = normalize_nkdm(&inst).unwrap();
        assert_eq!((n.shift, n.instance.target), (6, 24));
        assert_eq!(n.instance.sets, vec![vec![7], vec![8], vec![9]]);
        let s = NumericalMatchingSolution::new(vec![vec![1, 2, 3]]);
        assert_eq!(n.project(&n.lift(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn large_element_is_trivially_unsolvable() {
        let inst = NumericalMatchingInstance::new(vec![vec![9], vec![1], vec![1]], 9);
        assert!(matches!(
            normalize_nkdm(&inst),
            Err(Error::TriviallyUnsolvable(_))
        ));
    }
}
