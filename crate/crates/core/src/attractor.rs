//! Attractors of finite semiautomata.
//!
//! The attractor components of a left action of a free monoid are its
//! minimal nonempty forward-invariant subsets, which are exactly the bottom
//! strongly connected components of the transition graph. The basin is the
//! largest set of states from which every component can be reached.

use crate::action::{EquivariantMap, FiniteBiAction};
use crate::error::{Error, Result, Side};
use crate::homotopy::find_isomorphism;
use crate::inverse::{invert, reversible_core};
use crate::monoid::MonoidKind;

/// How basin states must reach the components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReachMode {
    /// Every component is reachable.
    #[default]
    All,
    /// Some component is reachable.
    Any,
}

#[derive(Clone, Debug)]
pub struct AttractorDecomposition {
    pub components: Vec<Vec<usize>>,
    pub basin: Vec<usize>,
    pub component_actions: Vec<FiniteBiAction>,
    pub periodic_flags: Vec<bool>,
    /// For periodic components, an isomorphism onto the double inverse.
    pub certificates: Vec<Option<EquivariantMap>>,
}

/// States reachable from `x` by words of length at least `min_len` (0 or 1).
fn reachable(a: &FiniteBiAction, x: usize, min_len: usize) -> Vec<bool> {
    let mut seen = vec![false; a.len()];
    let mut stack = Vec::new();
    if min_len == 0 {
        seen[x] = true;
        stack.push(x);
    } else {
        for t in a.left_family() {
            let y = t.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    while let Some(y) = stack.pop() {
        for t in a.left_family() {
            let z = t.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

pub fn attractor_decomposition(a: &FiniteBiAction) -> Result<AttractorDecomposition> {
    attractor_decomposition_with(a, ReachMode::All)
}

pub fn attractor_decomposition_with(
    a: &FiniteBiAction,
    mode: ReachMode,
) -> Result<AttractorDecomposition> {
    if a.monoid().kind() != MonoidKind::Free {
        return Err(Error::WrongMonoidKind {
            op: "attractor decomposition",
            expected: "free",
        });
    }
    if !a.is_side_trivial(Side::Right) {
        return Err(Error::NotOneSided {
            op: "attractor decomposition",
            side: Side::Right,
        });
    }
    let n = a.len();
    let closure: Vec<Vec<bool>> = (0..n).map(|x| reachable(a, x, 0)).collect();
    // x lies in a bottom component iff everything it reaches reaches it back
    let mut assigned = vec![false; n];
    let mut components = Vec::new();
    for x in 0..n {
        if assigned[x] || !(0..n).all(|y| !closure[x][y] || closure[y][x]) {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&y| closure[x][y]).collect();
        for &y in &comp {
            assigned[y] = true;
        }
        components.push(comp);
    }

    let min_len = usize::from(!a.monoid().has_unit());
    let basin = (0..n)
        .filter(|&b| {
            let reach = if min_len == 0 {
                closure[b].clone()
            } else {
                reachable(a, b, 1)
            };
            let hits = |c: &Vec<usize>| c.iter().any(|&y| reach[y]);
            match mode {
                ReachMode::All => components.iter().all(hits),
                ReachMode::Any => components.iter().any(hits),
            }
        })
        .collect();

    let component_actions = components
        .iter()
        .map(|c| a.restrict(c))
        .collect::<Result<Vec<_>>>()?;
    let mut periodic_flags = Vec::new();
    let mut certificates = Vec::new();
    for c in &component_actions {
        let flag = is_periodic(c)?;
        let witness = periodicity_witness(c)?;
        if flag != witness.is_some() {
            return Err(Error::Internal(
                "core criterion and double-inverse isomorphism disagree".into(),
            ));
        }
        periodic_flags.push(flag);
        certificates.push(witness);
    }
    Ok(AttractorDecomposition {
        components,
        basin,
        component_actions,
        periodic_flags,
        certificates,
    })
}

/// Whether the reversible core of the component is all of it.
pub fn is_periodic(component: &FiniteBiAction) -> Result<bool> {
    Ok(reversible_core(component, Side::Left)?.len() == component.len())
}

/// An isomorphism from the component to its double inverse, inverting the
/// left action into a right one and back.
pub fn periodicity_witness(component: &FiniteBiAction) -> Result<Option<EquivariantMap>> {
    let once = invert(component, Side::Left)?;
    let twice = invert(once.action(), Side::Right)?;
    find_isomorphism(component, twice.action())
}
